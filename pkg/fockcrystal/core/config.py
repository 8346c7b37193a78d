import os
from pydantic_settings import BaseSettings
from dotenv import load_dotenv

# Load environment variables if in development mode
if os.getenv("ENV") != "production":
    load_dotenv()


class Settings(BaseSettings):
    # App settings
    APP_NAME: str = "Fock Crystal Toolkit"
    DEBUG: bool = False
    API_PREFIX: str = "/api"
    HOST: str = "0.0.0.0"
    PORT: int = 2508

    # Logging settings
    LOG_LEVEL: str = "WARNING"
    LOG_TO_FILE: bool = False
    LOG_FORMAT: str = "text"
    LOG_DIR: str = "logs"

    # Verification grids
    VERIFY_BUDGET: int = 1_000_000
    VERIFY_WORKERS: int = 1
    RANDOM_SEED: int = 2006

    # Canonical basis: 2^p subsets are enumerated, p is capped
    MAX_PAIRS: int = 20

    # Crystal levels: memoized crystals, largest rank served over HTTP
    MAX_CACHED_CRYSTALS: int = 64
    MAX_API_RANK: int = 20

    model_config = {
        "env_file": ".env",
        "case_sensitive": True,
        "extra": "ignore",
    }


settings = Settings()
