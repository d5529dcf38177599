from magic_arrangements.settings.base import *


# Every test is a SimpleTestCase, so no test database is configured.

LOGGING = get_logger_config(debug=True)
