from django.apps import AppConfig


class EdgefieldsConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "edgefields"
