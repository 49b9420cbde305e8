import logging
import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError
from rich.console import Console
from rich.logging import RichHandler

load_dotenv()

console = Console(stderr=True)


class Settings(BaseModel):
    """Runtime knobs read from the environment (and a local .env file)."""

    threads: int = Field(default=1, ge=1, description="Worker threads for verification (NILGEO_THREADS)")
    log_level: str = Field(default="WARNING", description="Root log level (NILGEO_LOG_LEVEL)")


def load_settings() -> Settings:
    raw = {
        "threads": os.getenv("NILGEO_THREADS"),
        "log_level": os.getenv("NILGEO_LOG_LEVEL"),
    }
    try:
        return Settings(**{k: v for k, v in raw.items() if v not in (None, "")})
    except ValidationError as e:
        logging.getLogger(__name__).warning("ignoring invalid environment settings: %s", e.errors()[0]["msg"])
        return Settings()


def configure_logging(level: str | None = None) -> None:
    level = (level or load_settings().log_level).upper()
    unknown = not isinstance(logging.getLevelName(level), int)
    logging.basicConfig(
        level="WARNING" if unknown else level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, show_path=False)],
        force=True,
    )
    if unknown:
        logging.getLogger(__name__).warning("unknown log level %r, using WARNING", level)
