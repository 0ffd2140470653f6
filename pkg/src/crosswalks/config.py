"""Desk-scale guards.

Defaults can be raised through the ``CROSSWALKS_GUARD`` environment variable.
Either a bare integer (the partition-size guard) or a comma separated list of
``key=value`` pairs, e.g. ``CROSSWALKS_GUARD=partitions=16,walk_length=1000``.
"""

from __future__ import annotations

import os

from .errors import SizeLimitError

DEFAULTS = {
    "partitions": 14,
    "walk_length": 400,
    "permutations": 9,
}


def guards() -> dict[str, int]:
    out = dict(DEFAULTS)
    raw = os.environ.get("CROSSWALKS_GUARD", "").strip()
    if not raw:
        return out
    if raw.isdigit():
        out["partitions"] = int(raw)
        return out
    for item in raw.split(","):
        key, _, value = item.partition("=")
        key = key.strip()
        if key not in out or not value.strip().isdigit():
            raise ValueError(f"malformed CROSSWALKS_GUARD entry: {item!r}")
        out[key] = int(value)
    return out


def check_guard(name: str, value: int, limit: int | None = None) -> None:
    if limit is None:
        limit = guards()[name]
    if value > limit:
        raise SizeLimitError(
            f"{name} = {value} exceeds the guard {limit}; "
            "raise it with CROSSWALKS_GUARD if you really mean it"
        )
