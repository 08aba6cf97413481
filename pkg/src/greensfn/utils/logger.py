"""JSON logging for the greensfn package: one configured root, module children."""
import json
import logging
import os
import sys
from logging.handlers import RotatingFileHandler
from typing import Any, Dict, Optional

LOG_FILE = 'greensfn.log'
LOG_LEVEL = 'WARNING'
ROOT_NAME = 'greensfn'

_RESERVED = frozenset([
    'args', 'asctime', 'created', 'exc_info', 'exc_text', 'filename',
    'funcName', 'levelname', 'levelno', 'lineno', 'module', 'msecs',
    'msg', 'name', 'pathname', 'process', 'processName', 'relativeCreated',
    'stack_info', 'thread', 'threadName', 'extra', 'taskName', 'message',
])


def setup_logger(name: Optional[str] = None) -> logging.Logger:
    """Set up the package logger once and return a logger for ``name``.

    Args:
        name: Dotted module name. Names outside the ``greensfn`` namespace are
            nested under it so that they share the package handlers.

    Returns:
        A configured logger instance.
    """
    Logger()
    if not name or name == ROOT_NAME:
        return logging.getLogger(ROOT_NAME)
    if not name.startswith(ROOT_NAME + '.'):
        name = f'{ROOT_NAME}.{name}'
    return logging.getLogger(name)


class JsonFormatter(logging.Formatter):
    """Formatter that renders each record as one JSON object."""

    def format(self, record: logging.LogRecord) -> str:
        log_data: Dict[str, Any] = {
            'timestamp': self.formatTime(record, datefmt='%Y-%m-%d %H:%M:%S'),
            'level': record.levelname,
            'message': record.getMessage(),
            'name': record.name,
            'thread': record.thread,
            'process': record.process,
        }

        if record.exc_info:
            log_data['exc_info'] = self.formatException(record.exc_info)

        # Fields passed through ``extra=`` land on the record itself
        for key, value in record.__dict__.items():
            if key not in _RESERVED and not key.startswith('_'):
                log_data[key] = value

        return json.dumps(log_data, default=_jsonable)


def _jsonable(value: Any) -> Any:
    """Fallback for numpy scalars and other non-JSON values in ``extra``."""
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


class Logger:
    """Singleton that owns the handlers of the ``greensfn`` package logger.

    Console output goes to stderr; stdout is reserved for command reports. A
    rotating file handler is attached only when a log directory is configured.
    """
    _instance = None
    _initialized = False

    def __new__(cls, *args: Any, **kwargs: Any) -> 'Logger':
        if not cls._instance:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __init__(self, log_dir: Optional[str] = None, level: Optional[str] = None):
        if not self._initialized:
            self.log_dir = log_dir if log_dir is not None else os.getenv('LOG_DIR')
            self.level = (level or os.getenv('GREENSFN_LOG_LEVEL', LOG_LEVEL)).upper()
            self.logger: logging.Logger = logging.getLogger(ROOT_NAME)
            self._configure()
            self.__class__._initialized = True

    @property
    def log_file(self) -> Optional[str]:
        if not self.log_dir:
            return None
        return os.path.join(self.log_dir, LOG_FILE)

    def _configure(self) -> None:
        """Attach console and (optional) file handlers to the package logger."""
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        for handler in self.logger.handlers[:]:
            handler.close()
            self.logger.removeHandler(handler)

        console_handler = logging.StreamHandler(sys.stderr)
        console_handler.setLevel(getattr(logging, self.level, logging.WARNING))
        console_handler.setFormatter(JsonFormatter())
        self.logger.addHandler(console_handler)

        if not self.log_dir:
            return

        try:
            if not os.path.exists(self.log_dir):
                os.makedirs(self.log_dir)
        except OSError as e:
            self.logger.error(f"Failed to create log directory {self.log_dir}: {e}")
            return

        try:
            file_handler = RotatingFileHandler(
                self.log_file,
                maxBytes=512 * 1024,
                backupCount=5,
                delay=True,
            )
            file_handler.setLevel(logging.DEBUG)
            file_handler.setFormatter(JsonFormatter())
            self.logger.addHandler(file_handler)
        except OSError as e:
            self.logger.error(f"Failed to configure file handler for {self.log_file}: {e}")

    @classmethod
    def reconfigure(cls, log_dir: Optional[str] = None, level: Optional[str] = None) -> 'Logger':
        """Drop the current configuration and build a fresh one (used by the CLI flags)."""
        if cls._instance is not None:
            for handler in cls._instance.logger.handlers[:]:
                handler.close()
                cls._instance.logger.removeHandler(handler)
        cls._instance = None
        cls._initialized = False
        return cls(log_dir=log_dir, level=level)
