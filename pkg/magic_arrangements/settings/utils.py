import sys
from os import environ

from django.core.exceptions import ImproperlyConfigured


def get_env_setting(setting):
    """ Get the environment setting or raise exception """
    try:
        return environ[setting]
    except KeyError:
        error_msg = "Set the [%s] env variable!" % setting
        raise ImproperlyConfigured(error_msg)


def get_int_env_setting(setting, default):
    """
    Read an integer from the environment, falling back to ``default`` when unset.

    Raises ImproperlyConfigured when the variable is set but is not a positive integer.
    """
    raw = environ.get(setting)
    if raw is None or raw == '':
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ImproperlyConfigured("[%s] must be an integer, got %r" % (setting, raw))
    if value <= 0:
        raise ImproperlyConfigured("[%s] must be positive, got %d" % (setting, value))
    return value


def get_logger_config(debug=False, service_variant='magic-arrangements'):
    """
    Return the appropriate logging config dictionary. You should assign the
    result of this to the LOGGING var in your settings.

    Reports go to stdout from the management commands, so log records are
    written to stderr to keep the JSON output clean.
    """
    standard_format = (
        '%(asctime)s %(levelname)s %(process)d '
        '[{service_variant}] [%(name)s] %(filename)s:%(lineno)d - %(message)s'
    ).format(service_variant=service_variant)

    handlers = ['console']

    logger_config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'standard': {'format': standard_format},
        },
        'handlers': {
            'console': {
                'level': 'DEBUG' if debug else 'INFO',
                'class': 'logging.StreamHandler',
                'formatter': 'standard',
                'stream': sys.stderr,
            },
        },
        'loggers': {
            'django': {
                'handlers': handlers,
                'propagate': True,
                'level': 'INFO'
            },
            'factory': {
                'handlers': handlers,
                'propagate': True,
                'level': 'WARNING'
            },
            'magic_arrangements': {
                'handlers': handlers,
                'propagate': False,
                'level': 'DEBUG' if debug else 'INFO',
            },
            '': {
                'handlers': handlers,
                'level': 'WARNING',
                'propagate': False
            },
        }
    }

    return logger_config
