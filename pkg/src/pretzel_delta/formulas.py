"""
Closed-form values of a2 and the Delta-unknotting number.

All arithmetic is done in ``Fraction`` and converted to ``int`` only at
the end, after checking the result is integral.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Sequence

from .pretzel import (HypothesisError, format_vector, is_positive, require_knot,
                      rotate_even_first)


def exact_int(value: Fraction, what: str = "value") -> int:
    value = Fraction(value)
    if value.denominator != 1:
        raise ArithmeticError(f"{what} is not an integer: {value}")
    return value.numerator


def _pair_sum(ps: Sequence[int]) -> int:
    return sum(a * b for a, b in combinations(ps, 2))


def a2_odd_formula(v: Sequence[int]) -> int:
    """a2 of an odd-type pretzel knot, any signs.

    Evaluates both the pairwise-product form and the squared-sum form
    and insists they agree.
    """
    v = tuple(v)
    if len(v) % 2 == 0 or any(p % 2 == 0 for p in v):
        raise HypothesisError(f"{format_vector(v)} is not of odd type")
    n = len(v)
    pairwise = Fraction(_pair_sum(v), 4) + Fraction(n - 1, 8)
    squared = Fraction(sum(v) ** 2 - sum(p * p for p in v), 8) + Fraction(n - 1, 8)
    if pairwise != squared:
        raise ArithmeticError(f"odd-type forms disagree on {format_vector(v)}")
    return exact_int(pairwise, f"a2{format_vector(v)}")


def a2_even_formula(v: Sequence[int]) -> int:
    """a2 of an even-type pretzel knot, any signs.

    The even entry is rotated to the front first; the case split is on
    the parity of the length.
    """
    w = rotate_even_first(v)
    p1, rest = w[0], w[1:]
    n = len(w)
    if any(p % 2 == 0 for p in rest):
        raise HypothesisError(f"{format_vector(v)} is not of even type")
    tail_sum = sum(rest)
    tail_squares = sum(p * p for p in rest)
    if n % 2 == 0:
        value = (Fraction(p1 * p1 + tail_squares, 8) + Fraction(p1 * tail_sum, 4)
                 - Fraction(n - 1, 8))
    else:
        value = (Fraction(tail_squares, 8) - Fraction(p1 * tail_sum, 4)
                 - Fraction(n - 1, 8))
    return exact_int(value, f"a2{format_vector(v)}")


def a2_formula(v: Sequence[int]) -> int:
    v = require_knot(v)
    if len(v) == 1:
        return 0
    if all(p % 2 for p in v):
        return a2_odd_formula(v)
    return a2_even_formula(v)


def _torus_value(p: int, q: int) -> int:
    if p < 1 or q < 1:
        raise HypothesisError(f"torus parameters must be positive, got ({p},{q})")
    if gcd(p, q) != 1:
        raise HypothesisError(f"T({p},{q}) is not a knot: gcd is {gcd(p, q)}")
    return exact_int(Fraction((p * p - 1) * (q * q - 1), 24), f"a2(T({p},{q}))")


def a2_torus(p: int, q: int) -> int:
    return _torus_value(p, q)


def u_delta_torus(p: int, q: int) -> int:
    return _torus_value(p, q)


def u_delta_positive_formula(v: Sequence[int]) -> int:
    """u^Delta of a positive pretzel knot, which equals its a2."""
    v = tuple(v)
    if not is_positive(v):
        raise HypothesisError(f"{format_vector(v)} is not a positive pretzel knot")
    if all(p % 2 for p in v):
        return a2_odd_formula(v)
    return a2_even_formula(v)


def is_minus_one_shape(v: Sequence[int]) -> bool:
    """``(-1, p2, ..., pn)`` with n odd and p2..pn odd positive."""
    v = tuple(v)
    return (len(v) >= 3 and len(v) % 2 == 1 and v[0] == -1
            and all(p > 0 and p % 2 for p in v[1:]))


def u_delta_oddone_formula(v: Sequence[int]) -> int:
    v = tuple(v)
    if not is_minus_one_shape(v):
        raise HypothesisError(
            f"{format_vector(v)} is not of the form (-1, odd positives) with odd length")
    rest = v[1:]
    n = len(v)
    value = (-Fraction(sum(rest), 4) + Fraction(_pair_sum(rest), 4)
             + Fraction(n - 1, 8))
    return exact_int(value, f"u_delta{format_vector(v)}")
