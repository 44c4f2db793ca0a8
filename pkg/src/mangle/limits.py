"""Size caps for brute-force subset scans."""

from __future__ import annotations

import os

from .errors import SizeCapError

DEFAULT_MAX_M = 14
ORACLE_MAX_M = 10


def max_m() -> int:
    """The cap on ``m`` for subset scans; ``MANGLE_MAX_M`` overrides it."""
    raw = os.environ.get("MANGLE_MAX_M")
    if raw is None:
        return DEFAULT_MAX_M
    try:
        return int(raw)
    except ValueError:
        return DEFAULT_MAX_M


def check_m(m: int, what: str, cap: int | None = None) -> None:
    limit = max_m() if cap is None else cap
    if m > limit:
        raise SizeCapError(f"{what}: m = {m} exceeds the brute-force cap {limit}")
