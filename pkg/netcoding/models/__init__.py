"""
Models package initializer.
Exports all model classes for clean imports throughout the application.
"""
from .base import TimeStampedModel
from .run import ExperimentRun

__all__ = [
    'TimeStampedModel',
    'ExperimentRun',
]
