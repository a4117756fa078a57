from django.apps import AppConfig


class NetcodingConfig(AppConfig):
    name = 'netcoding'
    verbose_name = 'Network coding experiments'
    default_auto_field = 'django.db.models.BigAutoField'
