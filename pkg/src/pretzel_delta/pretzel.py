"""
Twist vectors of pretzel links and their classification.

A pretzel link ``P(p1, ..., pn)`` is built from ``n`` vertical twisted
bands placed side by side; band ``i`` carries ``pi`` signed half-twists.
Everything in this package takes a plain tuple of integers as the twist
vector.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Optional, Sequence, Tuple

TwistVector = Tuple[int, ...]


class NotAKnotError(ValueError):
    """Raised when a knot-only operation receives a pretzel link."""


class HypothesisError(ValueError):
    """Raised when a vector falls outside the class a formula covers."""


class Kind(str, Enum):
    KNOT = "knot"
    LINK = "link"


class KnotType(str, Enum):
    ODD = "odd"
    EVEN = "even"
    TRIVIAL = "trivial"
    NOT_APPLICABLE = "n/a"


@dataclass(frozen=True)
class PretzelClass:
    kind: Kind
    knot_type: KnotType
    positive: bool
    component_count: int
    even_index: Optional[int] = None

    @property
    def is_knot(self) -> bool:
        return self.kind is Kind.KNOT

    def as_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "knotType": self.knot_type.value,
            "positive": self.positive,
            "componentCount": self.component_count,
            "evenIndex": self.even_index,
        }


def as_vector(entries: Iterable[int]) -> TwistVector:
    v = tuple(int(p) for p in entries)
    if not v:
        raise ValueError("a twist vector needs at least one entry")
    return v


_MINUS_SIGNS = str.maketrans({"−": "-", "–": "-"})


def parse_vector(text: str) -> TwistVector:
    """Parse ``"-1, 3,5"`` (unicode minus tolerated) into a twist vector."""
    cleaned = text.translate(_MINUS_SIGNS).strip()
    if cleaned.startswith("(") and cleaned.endswith(")"):
        cleaned = cleaned[1:-1]
    parts = [p.strip() for p in re.split(r"[,;]", cleaned)]
    if not parts or any(not re.fullmatch(r"[+-]?\d+", p) for p in parts):
        raise ValueError(f"cannot parse twist vector from {text!r}")
    return as_vector(int(p) for p in parts)


def format_vector(v: Sequence[int]) -> str:
    return "P(" + ",".join(str(p) for p in v) + ")"


def even_positions(v: Sequence[int]) -> list:
    return [i for i, p in enumerate(v) if p % 2 == 0]


def is_knot(v: Sequence[int]) -> bool:
    """Knot criterion: exactly one even entry, or all odd with n odd."""
    evens = len(even_positions(v))
    return evens == 1 or (evens == 0 and len(v) % 2 == 1)


def parity_component_count(v: Sequence[int]) -> int:
    """Component count from parities alone.

    Each even band beyond the first closes off one more circle; an
    all-odd vector of even length is a two-component link.
    """
    evens = len(even_positions(v))
    if evens == 0:
        return 1 if len(v) % 2 else 2
    return evens


def _positive_knot(v: Sequence[int]) -> bool:
    n = len(v)
    evens = even_positions(v)
    odds_positive = all(p > 0 for p in v if p % 2)
    if not evens:
        return n % 2 == 1 and odds_positive
    if len(evens) != 1 or not odds_positive:
        return False
    e = v[evens[0]]
    if n % 2 == 0:
        return e > 0
    return e < 0


def classify(v: Sequence[int]) -> PretzelClass:
    v = as_vector(v)
    evens = even_positions(v)
    if not is_knot(v):
        return PretzelClass(Kind.LINK, KnotType.NOT_APPLICABLE, False,
                            parity_component_count(v))
    even_index = evens[0] if evens else None
    if len(v) == 1:
        knot_type = KnotType.TRIVIAL
    elif evens:
        knot_type = KnotType.EVEN
    else:
        knot_type = KnotType.ODD
    return PretzelClass(Kind.KNOT, knot_type, _positive_knot(v), 1, even_index)


def require_knot(v: Sequence[int]) -> TwistVector:
    v = as_vector(v)
    if not is_knot(v):
        raise NotAKnotError(f"{format_vector(v)} is a link, not a knot")
    return v


def is_positive(v: Sequence[int]) -> bool:
    """True when the vector satisfies the positive pretzel knot conditions.

    The even entry, if any, may sit at any position.
    """
    return _positive_knot(require_knot(v))


def mirror(v: Sequence[int]) -> TwistVector:
    return tuple(-p for p in v)


def cancel_unit_pair(v: Sequence[int]) -> Optional[TwistVector]:
    """Drop one +1 and one -1 entry; ``None`` when there is no such pair."""
    v = list(v)
    if 1 not in v or -1 not in v:
        return None
    v.remove(-1)
    v.remove(1)
    return tuple(v)


def canonical_key(v: Sequence[int]) -> TwistVector:
    return tuple(sorted(v))


def rotations(v: Sequence[int]) -> Iterator[TwistVector]:
    v = tuple(v)
    for k in range(len(v)):
        yield v[k:] + v[:k]


def symmetries(v: Sequence[int]) -> Iterator[TwistVector]:
    """Cyclic rotations and reversals: the isotopies that permute bands."""
    seen = set()
    for w in list(rotations(v)) + list(rotations(tuple(reversed(v)))):
        if w not in seen:
            seen.add(w)
            yield w


def rotate_even_first(v: Sequence[int]) -> TwistVector:
    """Rotate cyclically so the single even entry comes first."""
    evens = even_positions(v)
    if len(evens) != 1:
        raise HypothesisError(f"{format_vector(v)} does not have exactly one even entry")
    k = evens[0]
    v = tuple(v)
    return v[k:] + v[:k]
