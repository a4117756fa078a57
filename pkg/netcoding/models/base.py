"""
Abstract base models shared by the run registry.
"""
from django.db import models


class TimeStampedModel(models.Model):
    """
    Abstract base model with automatic creation and update timestamps.

    Meta:
        abstract = True  # No database table created
        ordering = ['-created_at']  # Newest first by default
    """
    created_at = models.DateTimeField(
        auto_now_add=True,
        help_text="Timestamp when this record was created. Automatically set on creation."
    )
    updated_at = models.DateTimeField(
        auto_now=True,
        help_text="Timestamp when this record was last updated. Automatically updated on save."
    )

    class Meta:
        abstract = True
        ordering = ['-created_at']

    def get_age_display(self):
        """Human-readable age of the record, e.g. "Created 2 days ago"."""
        from django.utils.timesince import timesince
        return f"Created {timesince(self.created_at)} ago"
