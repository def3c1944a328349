import logging
import sys

# Create formatters
DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'

# Default logging level - can be overridden
DEFAULT_LOG_LEVEL = 'INFO'

# Per-package overrides; the sampler is chatty at DEBUG
LOGGER_LEVELS = {
    'calculus': 'WARNING',
    'functions.parser': 'INFO',
}

def set_default_log_level(level: str):
    """
    Set the default logging level for all loggers created afterwards,
    and re-level the ones that already exist.
    """
    global DEFAULT_LOG_LEVEL
    DEFAULT_LOG_LEVEL = level.upper()
    for name, logger in logging.Logger.manager.loggerDict.items():
        if isinstance(logger, logging.Logger) and logger.handlers:
            logger.setLevel(getattr(logging, _level_for(name)))

def _level_for(name: str) -> str:
    # An explicit --log-level DEBUG wins over the component defaults
    if DEFAULT_LOG_LEVEL == 'DEBUG':
        return DEFAULT_LOG_LEVEL
    for logger_name, logger_level in LOGGER_LEVELS.items():
        if name.startswith(logger_name):
            return logger_level
    return DEFAULT_LOG_LEVEL

def setup_logger(name: str, level: str = None) -> logging.Logger:
    """
    Creates a logger with the given name and level.
    Usage: logger = setup_logger(__name__)

    Records go to stderr: stdout is reserved for command output.
    """
    logger = logging.getLogger(name)

    # Prevent logging propagation to avoid duplicate logs
    logger.propagate = False

    if level is None:
        level = _level_for(name)
    logger.setLevel(getattr(logging, level.upper()))
    
    # Only add handler if logger doesn't already have handlers
    if not logger.handlers:
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(DEFAULT_FORMAT))
        logger.addHandler(handler)
    
    return logger
