"""
Base admin mixins shared by the registry admin classes.
"""
import csv

from django.http import HttpResponse


class ExportCSVMixin:
    """
    Adds an "export as CSV" action to a ModelAdmin.

    Usage:
        class MyAdmin(ExportCSVMixin, admin.ModelAdmin):
            export_fields = ['field1', 'field2']
    """

    export_fields = None
    export_filename = 'export.csv'

    def export_as_csv(self, request, queryset):
        if not self.export_fields:
            self.message_user(request, "Please define export_fields in your ModelAdmin", level='ERROR')
            return None

        response = HttpResponse(content_type='text/csv')
        response['Content-Disposition'] = f'attachment; filename="{self.export_filename}"'

        writer = csv.writer(response)
        writer.writerow(self.export_fields)
        for obj in queryset:
            row = []
            for field in self.export_fields:
                # dotted paths such as 'summary__success_rate' walk attributes and dict keys
                value = obj
                for part in field.split('__'):
                    value = value.get(part, '') if isinstance(value, dict) else getattr(value, part, '')
                    if callable(value):
                        value = value()
                row.append(value)
            writer.writerow(row)
        return response

    export_as_csv.short_description = "Export selected items as CSV"


class TimestampedAdminMixin:
    """Keeps created_at / updated_at read-only wherever the model has them."""

    def get_readonly_fields(self, request, obj=None):
        readonly_fields = tuple(super().get_readonly_fields(request, obj))
        existing = tuple(f for f in ('created_at', 'updated_at') if hasattr(self.model, f))
        return readonly_fields + tuple(f for f in existing if f not in readonly_fields)
