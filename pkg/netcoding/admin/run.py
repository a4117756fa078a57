"""
Experiment-run admin.
Runs are written by the management commands only, so the admin is a
read-only browser with filters and CSV export.
"""
from django.contrib import admin
from django.utils.html import format_html

from .base import ExportCSVMixin, TimestampedAdminMixin


class ExperimentRunAdmin(ExportCSVMixin, TimestampedAdminMixin, admin.ModelAdmin):

    # ========================================================================
    # LIST VIEW CONFIGURATION
    # ========================================================================

    list_display = [
        'id',
        'command',
        'network',
        'seed',
        'config_hash',
        'row_count',
        'exit_badge',
        'age',
    ]
    list_filter = ['command', 'exit_code', ('created_at', admin.DateFieldListFilter)]
    search_fields = ['network', 'config_hash', 'output_path']
    date_hierarchy = 'created_at'
    list_per_page = 50

    readonly_fields = [
        'command', 'network', 'config_hash', 'seed',
        'output_path', 'row_count', 'exit_code', 'summary',
    ]

    # ========================================================================
    # ACTIONS
    # ========================================================================

    actions = ['export_as_csv']
    export_fields = [
        'id', 'command', 'network', 'seed', 'config_hash',
        'output_path', 'row_count', 'exit_code', 'created_at',
    ]
    export_filename = 'experiment_runs.csv'

    @admin.display(description='Exit', ordering='exit_code')
    def exit_badge(self, obj):
        colour = 'green' if obj.succeeded else 'red'
        return format_html('<span style="color: {};">{}</span>', colour, obj.exit_code)

    @admin.display(description='Age', ordering='created_at')
    def age(self, obj):
        return obj.get_age_display()

    def has_add_permission(self, request):
        return False
