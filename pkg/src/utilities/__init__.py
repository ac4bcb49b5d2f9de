"""Package Utilities."""

from .logger import Logger
from .seeding import derive_rng
from .settings import Settings, load_settings

settings = load_settings()

logger = Logger(debugging=settings.debugging, tracing=settings.tracing)

__all__ = ["Logger", "Settings", "derive_rng", "load_settings", "logger", "settings"]
