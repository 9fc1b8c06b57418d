import logging
from functools import wraps

import component.parameter as param
from component.message import cm

from .errors import ConfigError, NumericError

__all__ = ["report_errors"]

logger = logging.getLogger(__name__)


def report_errors(debug=False):
    """Decorator to turn the exceptions of a scenario into a process exit code.

    The wrapped function returns param.EXIT_OK when it completes. ConfigError
    and NumericError are logged with their message and mapped to
    param.EXIT_CONFIG and param.EXIT_NUMERIC.

    Args:
        debug (bool): re-raise the exception after logging it
    """

    def decorator_report(func):
        @wraps(func)
        def wrapper_report(*args, **kwargs):

            try:
                func(*args, **kwargs)
                code = param.EXIT_OK

            except ConfigError as e:
                logger.error(cm.cli.config_failure.format(e))
                code = param.EXIT_CONFIG
                if debug:
                    raise e

            except NumericError as e:
                logger.error(cm.cli.numeric_failure.format(e))
                code = param.EXIT_NUMERIC
                if debug:
                    raise e

            return code

        return wrapper_report

    return decorator_report
