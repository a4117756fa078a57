"""
Experiment-run registry.

Every management command invocation leaves one ExperimentRun behind: which
command ran, on which network, with which seed and config hash, where its
table went and how it exited. The registry is an audit trail only; no
experiment reads it back, and an unavailable database never fails a run.
"""
import logging

from django.db import DatabaseError, models

from ..conf import get_setting
from .base import TimeStampedModel

logger = logging.getLogger(__name__)


class ExperimentRun(TimeStampedModel):
    """A single invocation of one of the experiment commands."""

    # ========================================================================
    # CHOICES
    # ========================================================================
    COMMAND_CHOICES = [
        ('capacity', 'Capacity'),
        ('simulate', 'Simulate'),
        ('sweep', 'Sweep'),
        ('exponent', 'Exponent'),
        ('fluidcheck', 'Fluid check'),
    ]

    # ========================================================================
    # CORE FIELDS
    # ========================================================================
    command = models.CharField(
        max_length=20,
        choices=COMMAND_CHOICES,
        db_index=True,
        help_text="Management command that produced this run."
    )

    network = models.CharField(
        max_length=255,
        help_text="Network argument as given (file path, bundled:<name> or tandem:<rates>)."
    )

    config_hash = models.CharField(
        max_length=16,
        db_index=True,
        help_text="Hash of the full command configuration; equal hashes mean equal tables."
    )

    seed = models.BigIntegerField(
        null=True,
        blank=True,
        help_text="Base seed of the run. Replication i uses seed XOR i."
    )

    # ========================================================================
    # OUTCOME
    # ========================================================================
    output_path = models.CharField(
        max_length=500,
        blank=True,
        default='',
        help_text="Where the CSV table was written ('-' for standard output)."
    )

    row_count = models.PositiveIntegerField(
        default=0,
        help_text="Number of data rows in the table."
    )

    exit_code = models.PositiveSmallIntegerField(
        default=0,
        help_text="0 success, 2 configuration error, 3 guard refusal, 4 statistical no-fit."
    )

    summary = models.JSONField(
        default=dict,
        blank=True,
        help_text="Headline numbers of the run (success rate, fitted slope, ...)."
    )

    class Meta(TimeStampedModel.Meta):
        verbose_name = 'experiment run'
        indexes = [
            models.Index(fields=['command', 'created_at'], name='netcoding_run_cmd_created_idx'),
        ]
        get_latest_by = 'created_at'

    def __str__(self):
        return f"{self.command} #{self.pk} ({self.network}, seed {self.seed})"

    @property
    def succeeded(self):
        return self.exit_code == 0

    @classmethod
    def record(cls, **fields):
        """
        Store a run if RECORD_RUNS is on; returns the instance or None.

        Database problems are logged and swallowed.
        """
        if not get_setting('RECORD_RUNS'):
            return None
        try:
            return cls.objects.create(**fields)
        except DatabaseError:
            logger.warning("could not record %s run in the registry", fields.get('command'), exc_info=True)
            return None
