"""Size caps. Both can be raised through environment variables."""

import os

MAX_ISOMORPHISM = 40

_DEFAULT_CONTEXT = 64
_DEFAULT_ENUMERATION = 2_000_000


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


def max_context() -> int:
    """Largest object or attribute count accepted by concept enumeration."""
    return _env_int("POSETMERGE_MAX_CONTEXT", _DEFAULT_CONTEXT)


def max_enumeration() -> int:
    """Largest number of candidates an exhaustive enumeration may visit."""
    return _env_int("POSETMERGE_MAX_ENUM", _DEFAULT_ENUMERATION)
