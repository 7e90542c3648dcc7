"""
Logging setup for opk

Modules log through ``logging.getLogger(__name__)``; this installs the single
stderr handler on the package logger.
"""
import logging
import sys

LOG_FORMAT = "[%(name)s] %(levelname)s %(message)s"

_LEVELS = {0: logging.WARNING, 1: logging.INFO}

_warned = set()


def setup_logging(verbosity: int = 0) -> logging.Logger:
    """
    Configure the ``opk`` logger.

    Args:
        verbosity: 0 for warnings, 1 for info, 2 or more for debug

    Returns:
        The package logger
    """
    logger = logging.getLogger("opk")
    logger.setLevel(_LEVELS.get(verbosity, logging.DEBUG))

    if not any(getattr(h, "_opk", False) for h in logger.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._opk = True  # type: ignore[attr-defined]
        logger.addHandler(handler)

    logger.propagate = False
    return logger


def warn_once(logger: logging.Logger, key: str, message: str) -> None:
    """Log a warning the first time ``key`` is seen in this process"""
    if key in _warned:
        return
    _warned.add(key)
    logger.warning(message)
