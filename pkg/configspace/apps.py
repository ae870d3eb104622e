from django.apps import AppConfig


class ConfigspaceConfig(AppConfig):
    default_auto_field = "django.db.models.BigAutoField"
    name = "configspace"
