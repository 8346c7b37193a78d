import logging
import sys
import json
from datetime import datetime
from typing import Any, Dict, Optional
from pathlib import Path

from pydantic import BaseModel

from fockcrystal.core.config import settings

PACKAGE_LOGGER = "fockcrystal"
TEXT_FORMAT = "%(asctime)s - %(levelname)s - %(name)s - %(message)s"
VERBOSITY_LEVELS = {0: None, 1: "INFO"}


class JsonFormatter(logging.Formatter):
    """
    One JSON object per record. Bipartitions, charges and other models in
    ``extra`` are written in their text form; long collections of them
    (a crystal level, a list of edges) are replaced by their size.
    """
    MAX_ITEMS = 20
    MAX_STRING_LENGTH = 1000
    _STANDARD = set(vars(logging.makeLogRecord({}))) | {"message", "asctime", "taskName"}

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created).isoformat(),
            "level": record.levelname,
            "logger": record.name,
            "message": self._clip(record.getMessage()),
            "where": f"{record.module}.{record.funcName}:{record.lineno}",
        }
        if record.exc_info and record.exc_info[0]:
            entry["exception"] = {
                "type": record.exc_info[0].__name__,
                "traceback": self.formatException(record.exc_info),
            }
        for key, value in vars(record).items():
            if key not in self._STANDARD:
                entry[key] = self._plain(value)
        return json.dumps(entry, default=str)

    def _plain(self, value: Any) -> Any:
        if isinstance(value, BaseModel):
            return str(value)
        if isinstance(value, dict):
            return {str(k): self._plain(v) for k, v in value.items()}
        if isinstance(value, (list, tuple, set, frozenset)):
            if len(value) > self.MAX_ITEMS:
                return f"[{len(value)} items]"
            return [self._plain(v) for v in value]
        if isinstance(value, str):
            return self._clip(value)
        return value

    def _clip(self, value: str) -> str:
        if len(value) > self.MAX_STRING_LENGTH:
            return value[:self.MAX_STRING_LENGTH] + f"... [{len(value)} chars]"
        return value


def level_for_verbosity(count: int) -> Optional[str]:
    """Map the CLI's repeated ``-v`` flag to a level name; None keeps the configured one."""
    return VERBOSITY_LEVELS.get(count, "DEBUG")


def setup_logging(level_name: Optional[str] = None) -> logging.Logger:
    """
    (Re)configure the package logger. Everything goes to stderr so that
    stdout carries command output only.
    """
    level = getattr(logging, (level_name or settings.LOG_LEVEL).upper(), logging.WARNING)

    package_logger = logging.getLogger(PACKAGE_LOGGER)
    package_logger.setLevel(level)
    package_logger.propagate = False
    package_logger.handlers.clear()

    console = logging.StreamHandler(sys.stderr)
    console.setFormatter(JsonFormatter() if settings.LOG_FORMAT == "json" else logging.Formatter(TEXT_FORMAT))
    package_logger.addHandler(console)

    if settings.LOG_TO_FILE:
        log_dir = Path(settings.LOG_DIR)
        log_dir.mkdir(parents=True, exist_ok=True)
        file_handler = logging.FileHandler(log_dir / f"fockcrystal-{datetime.now():%Y-%m-%d}.log")
        file_handler.setFormatter(JsonFormatter())
        package_logger.addHandler(file_handler)

    return package_logger


class ContextLogger(logging.LoggerAdapter):
    """Adapter that merges bound context (suite, charge, modulus...) into every record."""

    def __init__(self, logger, extra=None):
        super().__init__(logger, extra or {})

    def process(self, msg, kwargs):
        kwargs["extra"] = {**self.extra, **kwargs.get("extra", {})}
        return msg, kwargs

    def bind(self, **context) -> "ContextLogger":
        return ContextLogger(self.logger, {**self.extra, **context})


logger = ContextLogger(setup_logging())


def get_logger(name: Optional[str] = None, **context) -> ContextLogger:
    """
    Logger for one component. ``name`` ends up in the ``component`` field.
    """
    if name:
        context["component"] = name
    return logger.bind(**context)
