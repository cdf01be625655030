from functools import lru_cache

from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(env_file=".env", extra="ignore")

    # Enumeration limits
    COARSE_METRIC_BUDGET: int = Field(default=2_000_000, gt=0, validation_alias='COARSE_METRIC_BUDGET')
    DEFAULT_COST_CAP: float = Field(default=64.0, gt=0)

    # Numerical tolerances
    FLOAT_TOLERANCE: float = Field(default=1e-9, gt=0)
    IDENTITY_TOLERANCE: float = Field(default=1e-12, gt=0)
    CONDITION_LIMIT: float = Field(default=1e12, gt=1)

    # Cocycle embedding
    DEFAULT_TRUNCATION: int = Field(default=8, ge=1)

    # Application Configuration
    DEFAULT_SEED: int = Field(default=0)
    LOG_LEVEL: str = Field(default="INFO", validation_alias='LOG_LEVEL')


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """Process-wide settings, read once from the environment and `.env`."""
    return Settings()
