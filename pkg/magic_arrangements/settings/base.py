import os
from os.path import abspath, dirname, join

from magic_arrangements.settings.utils import (
    get_int_env_setting,
    get_logger_config,
)


# PATH vars
here = lambda *x: join(abspath(dirname(__file__)), *x)
PROJECT_ROOT = here("..")
root = lambda *x: join(abspath(PROJECT_ROOT), *x)


# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = os.environ.get('MAGIC_ARRANGEMENTS_SECRET_KEY', 'insecure-secret-key')

DEFAULT_AUTO_FIELD = "django.db.models.AutoField"

DEBUG = False

ALLOWED_HOSTS = []

# Application definition

INSTALLED_APPS = ()

THIRD_PARTY_APPS = (
    'rest_framework',
)

PROJECT_APPS = (
    'magic_arrangements.apps.contextuality',
)

INSTALLED_APPS += THIRD_PARTY_APPS
INSTALLED_APPS += PROJECT_APPS

# Database
# The analyses are pure computations; nothing is persisted.
DATABASES = {}

# Internationalization
LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True

# Set up logging for development use (logging to stderr)
LOGGING = get_logger_config(debug=DEBUG)

"""######################### BEGIN ANALYSIS LIMITS ##############################"""

# Exhaustive classical oracle: d^|L| candidates are enumerated only up to this cap.
ORACLE_CAP = get_int_env_setting('MAGIC_ORACLE_CAP', 4096)

# Todd-Coxeter coset enumeration gives up past this many rows.
COSET_TABLE_MAX_ROWS = get_int_env_setting('MAGIC_COSET_TABLE_MAX_ROWS', 10 ** 6)

# Knuth-Bendix completion budget.
KNUTH_BENDIX_MAX_RULES = get_int_env_setting('MAGIC_KNUTH_BENDIX_MAX_RULES', 5 * 10 ** 4)
KNUTH_BENDIX_MAX_STEPS = get_int_env_setting('MAGIC_KNUTH_BENDIX_MAX_STEPS', 10 ** 6)

"""########################## END ANALYSIS LIMITS ###############################"""

# Bumped whenever a key in the JSON reports changes meaning.
REPORT_SCHEMA_VERSION = '1.0'
