from src.core.logger import LoggerFactory

__all__ = ["LoggerFactory"]
