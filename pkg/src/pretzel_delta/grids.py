"""Enumeration of twist-vector grids used by the cross-check drivers."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator, Tuple

from .pretzel import is_knot


def odd_values(max_abs: int) -> list:
    return [p for p in range(-max_abs, max_abs + 1) if p % 2]


def even_values(max_abs: int) -> list:
    return [p for p in range(-max_abs, max_abs + 1) if p % 2 == 0]


def odd_grid(lengths: Iterable[int], max_abs: int) -> Iterator[Tuple[int, ...]]:
    """All-odd knot vectors; even lengths give links and are skipped."""
    values = odd_values(max_abs)
    for n in sorted(set(lengths)):
        if n < 1 or n % 2 == 0:
            continue
        yield from product(values, repeat=n)


def even_grid(lengths: Iterable[int], max_odd: int, max_even: int,
              even_first: bool = False) -> Iterator[Tuple[int, ...]]:
    """Vectors with one even entry at any position (or only the first)."""
    odds = odd_values(max_odd)
    evens = even_values(max_even)
    for n in sorted(set(lengths)):
        if n < 1:
            continue
        positions = [0] if even_first else range(n)
        for k in positions:
            for e in evens:
                for rest in product(odds, repeat=n - 1):
                    v = rest[:k] + (e,) + rest[k:]
                    if is_knot(v):
                        yield v
