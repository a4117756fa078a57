"""
Application settings.

Values come from ``settings.NETCODING`` with ``DEFAULTS`` filling in any key
the project leaves out. Settings are read at call time so tests can use
``override_settings``.
"""
from django.conf import settings

DEFAULTS = {
    'DEFAULT_FIELD': 256,
    'DEFAULT_PAYLOAD_LENGTH': 16,
    'HEADROOM': 0.25,
    'RATE_TOLERANCE': 1e-9,
    'MAX_ENUMERATION_NODES': 20,
    'MAX_ALOHA_HYPERARCS': 20,
    'MAX_LP_CONSTRAINTS': 100_000,
    'REPLICATION_WORKERS': 4,
    'FLOAT_DIGITS': 9,
    'RECORD_RUNS': True,
    'RATELESS_HORIZON_FACTOR': 10,
    'SIMPLEX_MAX_ITERATIONS': 50_000,
}


def get_setting(name):
    """Return the NETCODING setting ``name``, falling back to DEFAULTS."""
    if name not in DEFAULTS:
        raise KeyError(f"Unknown NETCODING setting: {name}")
    overrides = getattr(settings, 'NETCODING', None) or {}
    return overrides.get(name, DEFAULTS[name])
