"""
Utility functions for coxout
"""
import json
import logging
from typing import Any, Iterable

from sympy import factorint

logger = logging.getLogger("coxout")

# Labels beyond 64 bits are rejected
MAX_LABEL = 2 ** 64


def is_prime_power(n: Any) -> bool:
    """
    Check whether n is a prime power p^k with k >= 1

    Args:
        n: Candidate label

    Returns:
        bool: True for 2, 3, 4, 5, 7, 8, 9, ...; False for 1, 6, 12, ...
    """
    if isinstance(n, bool) or not isinstance(n, int):
        return False
    if n < 2 or n >= MAX_LABEL:
        return False
    return len(factorint(n)) == 1


def format_vertex_set(vertices: Iterable[str]) -> str:
    """
    Format a vertex set as `{a,b,c}`

    Args:
        vertices: Vertex identifiers

    Returns:
        str: Set literal in identifier order
    """
    return "{" + ",".join(sorted(vertices)) + "}"


def dump_json(data: Any, indent: int = 2) -> str:
    """
    Schema-stable JSON dump

    Args:
        data: JSON-able value
        indent: Indentation

    Returns:
        str: JSON text with sorted keys, ASCII only
    """
    return json.dumps(data, ensure_ascii=True, sort_keys=True, indent=indent)


def format_duration(seconds: float) -> str:
    """
    Format duration in seconds to a human-readable string

    Args:
        seconds: Duration in seconds

    Returns:
        str: Formatted duration
    """
    if seconds < 1:
        return f"{seconds * 1000:.0f}ms"

    minutes, seconds = divmod(int(seconds), 60)
    hours, minutes = divmod(minutes, 60)

    if hours > 0:
        return f"{hours}h {minutes}m {seconds}s"
    elif minutes > 0:
        return f"{minutes}m {seconds}s"
    else:
        return f"{seconds}s"
