"""lossynet URL Configuration

Only the admin site is served; it lists recorded experiment runs.
"""
from django.contrib import admin
from django.urls import path

urlpatterns = [
    path('admin/', admin.site.urls),
]
