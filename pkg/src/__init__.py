from src.core import LoggerFactory
from src.config.settings import Settings, get_settings


__all__ = ["Settings", "LoggerFactory", "get_settings"]
