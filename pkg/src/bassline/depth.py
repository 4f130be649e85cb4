"""Extended depth values: natural numbers plus infinity.

Finite values are plain ``int``; infinity is :data:`math.inf`. Python's
mixed int/float comparison and addition already give the total order with
infinity on top and saturating addition, so no wrapper type is needed.
"""

from __future__ import annotations

import math
from typing import Union

Depth = Union[int, float]

INF: float = math.inf

__all__ = ["Depth", "INF", "as_depth", "format_depth", "parse_depth", "is_finite"]


def as_depth(value) -> Depth:
    """Normalize ``value`` to a depth, rejecting negatives and non-integers."""
    if isinstance(value, bool):
        raise ValueError(f"not a depth value: {value!r}")
    if isinstance(value, int):
        if value < 0:
            raise ValueError(f"depth must be nonnegative, got {value}")
        return value
    if isinstance(value, float):
        if value == INF:
            return INF
        if value.is_integer() and value >= 0:
            return int(value)
    raise ValueError(f"not a depth value: {value!r}")


def is_finite(value: Depth) -> bool:
    return value != INF


def parse_depth(raw) -> Depth:
    """Read a depth from JSON: a nonnegative integer or the string ``"inf"``."""
    if raw == "inf":
        return INF
    if isinstance(raw, bool) or not isinstance(raw, int):
        raise ValueError(f"expected a nonnegative integer or \"inf\", got {raw!r}")
    return as_depth(raw)


def format_depth(value: Depth):
    return "inf" if value == INF else int(value)
