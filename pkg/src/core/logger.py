from logging import Logger, getLogger

from rich.console import Console
from rich.logging import RichHandler

# Logs go to stderr; stdout and output files stay machine-readable.
_STDERR = Console(stderr=True)


class LoggerFactory:
    @staticmethod
    def create_logger(
        name: str,
        level: str = "INFO",
        rich_tracebacks: bool = True,
        show_time: bool = True,
        show_path: bool = False
    ) -> Logger:
        """Logger factory method for creating loggers with RichHandler."""
        logger = getLogger(f"coarse.{name}")
        logger.setLevel(level)

        handler = RichHandler(
            console=_STDERR,
            rich_tracebacks=rich_tracebacks,
            show_time=show_time,
            show_path=show_path,
            markup=True
        )
        handler.setLevel(level)

        if not logger.handlers:
            logger.addHandler(handler)

        logger.propagate = False

        return logger

    @staticmethod
    def set_level(level: str) -> None:
        """Re-level every logger created by the factory (used by the CLI --verbose path)."""
        for name, existing in Logger.manager.loggerDict.items():
            if name.startswith("coarse.") and isinstance(existing, Logger):
                existing.setLevel(level)
                for handler in existing.handlers:
                    handler.setLevel(level)
