from django.apps import AppConfig


class ContextualityConfig(AppConfig):
    name = 'magic_arrangements.apps.contextuality'
    verbose_name = 'Contextuality analyses'
