"""
Alexander polynomial of a knot diagram from its Wirtinger presentation.

The Fox Jacobian of the Wirtinger relators has entries ``1 - t``, ``t``
and ``-1``.  Its first minor is computed by fraction-free (Bareiss)
elimination on the polynomial matrix packed into integers by Kronecker
substitution ``t = 2**B``: one integer determinant, whose balanced
base-``2**B`` digits are the polynomial coefficients.  ``B`` comes from
the bound ``|coeff| <= prod(row 1-norms) <= 4**rows``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple

from .diagram import Diagram, DiagramError, component_count, crossing_sign

DEFAULT_CROSSING_CAP = 20


class OracleCapError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetricAlexander:
    """Laurent polynomial ``sum(c_k t^k)`` for ``k = -degree..degree``."""

    coefficients: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return (len(self.coefficients) - 1) // 2

    def terms(self):
        d = self.degree
        for k, c in enumerate(self.coefficients):
            if c:
                yield k - d, c

    def __call__(self, t) -> Fraction:
        t = Fraction(t)
        return sum((c * t ** k for k, c in self.terms()), Fraction(0))

    def second_derivative_at_one(self) -> int:
        return sum(c * k * (k - 1) for k, c in self.terms())

    def __str__(self) -> str:
        parts = []
        for k, c in sorted(self.terms(), key=lambda kc: -kc[0]):
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and abs(c) == 1:
                coef = "-" if c < 0 else "+"
            else:
                coef = f"{c:+d}"
            parts.append(f"{coef}{mono}" if mono else f"{c:+d}")
        text = " ".join(p[0] + " " + p[1:] for p in parts) if parts else "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def wirtinger_arcs(d: Diagram) -> Tuple[Dict[int, int], int]:
    """Map each edge id to its over-arc index.

    An arc ends where the strand passes under a crossing, so consecutive
    edges through an over-passing slot share an arc.
    """
    by_tail = {e.tail: e for e in d.edges}
    over = {c.id: c.over for c in d.crossings}
    arc_of: Dict[int, int] = {}
    count = 0
    # start each arc just after an under-pass
    for e in sorted(d.edges, key=lambda e: e.id):
        cid, pos = e.tail
        if pos % 2 == over[cid] or e.id in arc_of:
            continue
        cur = e
        while True:
            arc_of[cur.id] = count
            cid, pos = cur.head
            if pos % 2 != over[cid]:
                break
            cur = by_tail[(cid, pos ^ 2)]
        count += 1
    if len(arc_of) != len(d.edges):
        raise DiagramError("a component never passes under a crossing")
    return arc_of, count


def fox_matrix(d: Diagram) -> List[List[Tuple[int, int]]]:
    """Rows of the abelianized Fox Jacobian.

    Entries are pairs ``(a, b)`` standing for ``a + b*t``.
    """
    arc_of, n = wirtinger_arcs(d)
    at = d.edge_at()
    rows = []
    for c in d.crossings:
        row = [(0, 0)] * n
        under = 1 - c.over
        slots = [(c.id, under), (c.id, under + 2)]
        incoming = next(at[s] for s in slots if at[s].head == s)
        outgoing = next(at[s] for s in slots if at[s].tail == s)
        over_arc = arc_of[at[(c.id, c.over)].id]
        sign = crossing_sign(d, c.id)
        entries = [(over_arc, (1, -1))]
        if sign > 0:
            entries += [(arc_of[incoming.id], (0, 1)), (arc_of[outgoing.id], (-1, 0))]
        else:
            entries += [(arc_of[incoming.id], (-1, 0)), (arc_of[outgoing.id], (0, 1))]
        for j, (a, b) in entries:
            row[j] = (row[j][0] + a, row[j][1] + b)
        rows.append(row)
    return rows


def bareiss_det(m: List[List[int]]) -> int:
    """Determinant of an integer matrix by fraction-free elimination."""
    m = [row[:] for row in m]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        row_k = m[k]
        tail_k = row_k[k + 1:]
        for i in range(k + 1, n):
            row_i = m[i]
            lead = row_i[k]
            if lead:
                row_i[k + 1:] = [(pivot * a - lead * b) // prev
                                 for a, b in zip(row_i[k + 1:], tail_k)]
            else:
                row_i[k + 1:] = [pivot * a // prev for a in row_i[k + 1:]]
            row_i[k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def _unpack(x: int, bits: int) -> List[int]:
    """Balanced base-``2**bits`` digits of ``x``, least significant first."""
    base = 1 << bits
    half = base >> 1
    digits = []
    while x:
        r = x & (base - 1)
        if r >= half:
            r -= base
        digits.append(r)
        x = (x - r) >> bits
    return digits


def _normalize(poly: List[int]) -> SymmetricAlexander:
    while poly and poly[-1] == 0:
        poly.pop()
    lo = 0
    while lo < len(poly) and poly[lo] == 0:
        lo += 1
    poly = poly[lo:]
    if not poly:
        raise ArithmeticError("Alexander minor vanished; diagram is not a knot")
    if len(poly) % 2 == 0:
        raise ArithmeticError("Alexander polynomial has odd span")
    if sum(poly) < 0:
        poly = [-c for c in poly]
    if sum(poly) != 1 or poly != poly[::-1]:
        raise ArithmeticError(f"Alexander polynomial {poly} is not symmetric with value 1 at t=1")
    return SymmetricAlexander(tuple(poly))


def alexander_poly(d: Diagram, cap: int = DEFAULT_CROSSING_CAP) -> SymmetricAlexander:
    if component_count(d) != 1:
        raise DiagramError("the Alexander oracle takes knot diagrams only")
    if not d.crossings:
        raise DiagramError("the Alexander oracle needs at least one crossing")
    if len(d.crossings) > cap:
        raise OracleCapError(f"{len(d.crossings)} crossings exceeds the oracle cap of {cap}")
    rows = fox_matrix(d)
    n = len(rows)
    # drop the last relator and the last generator
    minor = [row[:-1] for row in rows[:-1]]
    norm_bound = 1
    for row in minor:
        norm_bound *= max(1, sum(abs(a) + abs(b) for a, b in row))
    bits = norm_bound.bit_length() + 2
    t = 1 << bits
    det = bareiss_det([[a + b * t for a, b in row] for row in minor])
    return _normalize(_unpack(det, bits))
