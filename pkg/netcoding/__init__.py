"""Random linear packet coding over lossy wireline and wireless networks."""

__version__ = '1.0.0'
