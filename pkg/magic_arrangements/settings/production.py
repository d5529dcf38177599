import yaml

from magic_arrangements.settings.base import *
from magic_arrangements.settings.utils import get_env_setting, get_logger_config


DEBUG = False

LOGGING = get_logger_config()

SECRET_KEY = get_env_setting('MAGIC_ARRANGEMENTS_SECRET_KEY')

# Optional YAML overrides, e.g. larger limits on a batch host:
#   KNUTH_BENDIX_MAX_RULES: 200000
CONFIG_FILE = os.environ.get('MAGIC_ARRANGEMENTS_CFG')
if CONFIG_FILE:
    with open(CONFIG_FILE, encoding='utf-8') as f:
        config_from_yaml = yaml.safe_load(f) or {}

    vars().update(config_from_yaml)
