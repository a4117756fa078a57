"""
Admin package: registers the run registry with the admin site.
"""
from django.contrib import admin

from ..models import ExperimentRun
from .run import ExperimentRunAdmin

admin.site.register(ExperimentRun, ExperimentRunAdmin)

admin.site.site_header = 'lossynet experiment registry'
admin.site.site_title = 'lossynet admin'

__all__ = ['ExperimentRunAdmin']
