# Load overrides from environment variables or .env file
import os
from typing import Callable, TypeVar
from dotenv import load_dotenv

load_dotenv()

ENV_PREFIX = "GHCALC_"

T = TypeVar("T", int, float)


def _env_number(name: str, default: T, convert: Callable[[str], T]) -> T:
    raw = os.getenv(ENV_PREFIX + name)
    if raw is None or not raw.strip():
        return default
    try:
        return convert(raw)
    except ValueError as e:
        kind = "an integer" if convert is int else "a number"
        raise ValueError(f"{ENV_PREFIX}{name} must be {kind}, got {raw!r}") from e


def env_float(name: str, default: float) -> float:
    """Read a float override such as GHCALC_T0, falling back to the default."""
    return _env_number(name, default, float)


def env_int(name: str, default: int) -> int:
    return _env_number(name, default, int)
