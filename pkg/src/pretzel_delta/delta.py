"""
Delta-unknotting numbers: exact values on the resolved classes, parity
bounds elsewhere, and replayable move-count certificates for the
``(-1, p2, ..., pn)`` family.

A certificate lowers the second band of ``(-1, p2, ..., pn)`` two
half-twists at a time.  Each lowering is one crossing change realised by
a clasp passing ``(p3 + ... + pn - 1) / 2`` hurdles, one Delta-move per
hurdle.  Once ``p2 = 1`` the knot is ``P(p3, ..., pn)``, a positive
pretzel knot whose Delta-unknotting number equals its a2; that last
cost is cited, not constructed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, List, Optional, Sequence, Tuple

from . import formulas
from .a2_engine import a2_skein
from .pretzel import (HypothesisError, format_vector, is_positive, mirror,
                      require_knot, symmetries)

CITE_POSITIVE = "positive-pretzel"
CITE_TRIVIAL = "trivial-knot"

TAG_TORUS = "torus T(2,n)"
TAG_POSITIVE_ODD = "positive pretzel, odd type"
TAG_POSITIVE_EVEN = "positive pretzel, even type"
TAG_MINUS_ONE = "P(-1, odd positives)"
TAG_TRIVIAL = "trivial knot"


@dataclass(frozen=True)
class LowerBound:
    """``u >= value`` and ``u - value`` even."""

    value: int

    @property
    def parity(self) -> str:
        return "even" if self.value % 2 == 0 else "odd"

    def admits(self, u: int) -> bool:
        return u >= self.value and (u - self.value) % 2 == 0


@dataclass(frozen=True)
class DeltaResult:
    vector: Tuple[int, ...]
    a2: int
    exact: Optional[int] = None
    tag: Optional[str] = None
    via: Optional[Tuple[int, ...]] = None  # symmetric form the rule applied to
    upper: Optional[int] = None
    table_values: Optional[FrozenSet[int]] = None
    table_name: Optional[str] = None

    @property
    def lower(self) -> LowerBound:
        return LowerBound(abs(self.a2))

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    def as_dict(self) -> dict:
        out = {"vector": list(self.vector), "a2": self.a2}
        if self.is_exact:
            out["kind"] = "exact"
            out["value"] = self.exact
            out["rule"] = self.tag
            out["appliedTo"] = list(self.via)
        else:
            out["kind"] = "bounds"
            out["lower"] = self.lower.value
            out["parity"] = self.lower.parity
            out["upper"] = self.upper
            if self.table_values is not None:
                out["table"] = {"name": self.table_name,
                                "uDelta": sorted(self.table_values)}
        return out


def lower_bound(v: Sequence[int]) -> LowerBound:
    return LowerBound(abs(a2_skein(require_knot(v)).value))


def _exact_rule(v: Tuple[int, ...]):
    if len(v) == 1:
        return 0, TAG_TRIVIAL, v
    candidates = []
    for w in symmetries(v):
        candidates.append(w)
        candidates.append(mirror(w))
    for w in candidates:
        if all(p == 1 for p in w):
            return formulas.u_delta_torus(2, len(w)), TAG_TORUS, w
    for w in candidates:
        if is_positive(w):
            tag = TAG_POSITIVE_ODD if all(p % 2 for p in w) else TAG_POSITIVE_EVEN
            return formulas.u_delta_positive_formula(w), tag, w
    for w in candidates:
        if formulas.is_minus_one_shape(w):
            return formulas.u_delta_oddone_formula(w), TAG_MINUS_ONE, w
    return None


def u_delta(v: Sequence[int], table=None) -> DeltaResult:
    """Exact u^Delta where a covered rule applies, else parity bounds.

    Rules are tried on cyclic rotations, reversals and mirror images of
    the vector only; bands are never permuted arbitrarily.
    """
    v = require_knot(v)
    a2 = a2_skein(v).value
    rule = _exact_rule(v)
    entry = table.lookup(v) if table is not None else None
    if rule is not None:
        value, tag, via = rule
        bound = LowerBound(abs(a2))
        if not bound.admits(value):
            raise ArithmeticError(
                f"exact value {value} for {format_vector(v)} violates the parity bound from a2={a2}")
        return DeltaResult(v, a2, exact=value, tag=tag, via=via)
    if entry is None:
        return DeltaResult(v, a2)
    return DeltaResult(v, a2, upper=max(entry.u_delta), table_values=entry.u_delta,
                       table_name=entry.name)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class CertStep:
    before: Tuple[int, ...]
    after: Tuple[int, ...]
    band: int  # 1-based
    cost: int

    def as_dict(self) -> dict:
        return {"before": list(self.before), "after": list(self.after),
                "band": self.band, "cost": self.cost}


@dataclass(frozen=True)
class Leaf:
    vector: Tuple[int, ...]
    cited_cost: int
    citation: str

    def as_dict(self) -> dict:
        return {"vector": list(self.vector), "citedCost": self.cited_cost,
                "citation": self.citation}


@dataclass(frozen=True)
class DeltaCertificate:
    initial: Tuple[int, ...]
    steps: Tuple[CertStep, ...]
    leaf: Leaf
    total: int

    def as_dict(self) -> dict:
        return {
            "initial": list(self.initial),
            "steps": [s.as_dict() for s in self.steps],
            "leaf": self.leaf.as_dict(),
            "total": self.total,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict) -> "DeltaCertificate":
        steps = tuple(CertStep(tuple(s["before"]), tuple(s["after"]), int(s["band"]),
                               int(s["cost"])) for s in data["steps"])
        leaf = data["leaf"]
        return cls(tuple(data["initial"]), steps,
                   Leaf(tuple(leaf["vector"]), int(leaf["citedCost"]), str(leaf["citation"])),
                   int(data["total"]))

    @classmethod
    def from_json(cls, text: str) -> "DeltaCertificate":
        return cls.from_dict(json.loads(text))


def clasp_cost(v: Sequence[int]) -> int:
    """Delta-moves to lower band 2 of ``(-1, p2, ..., pn)`` by two."""
    return formulas.exact_int(Fraction(sum(v[2:]) - 1, 2), "clasp cost")


def _leaf_citation(leaf: Tuple[int, ...]) -> str:
    return CITE_TRIVIAL if len(leaf) == 1 else CITE_POSITIVE


def build_certificate_oddone(v: Sequence[int]) -> DeltaCertificate:
    v = tuple(v)
    if not formulas.is_minus_one_shape(v):
        raise HypothesisError(
            f"{format_vector(v)} is not of the form (-1, odd positives) with odd length")
    steps = []
    cur = v
    while cur[1] > 1:
        nxt = cur[:1] + (cur[1] - 2,) + cur[2:]
        steps.append(CertStep(cur, nxt, 2, clasp_cost(cur)))
        cur = nxt
    leaf_vector = cur[2:]
    if len(leaf_vector) == 1:
        cited = 0
    else:
        cited = formulas.u_delta_positive_formula(leaf_vector)
    leaf = Leaf(leaf_vector, cited, _leaf_citation(leaf_vector))
    total = sum(s.cost for s in steps) + cited
    expected = formulas.u_delta_oddone_formula(v)
    if total != expected:
        raise ArithmeticError(f"certificate total {total} differs from closed form {expected}")
    return DeltaCertificate(v, tuple(steps), leaf, total)


@dataclass
class VerificationReport:
    ok: bool
    failures: List[str] = field(default_factory=list)
    a2: Optional[int] = None
    optimal: bool = False

    @property
    def first_failure(self) -> Optional[str]:
        return self.failures[0] if self.failures else None

    def as_dict(self) -> dict:
        return {"ok": self.ok, "failures": list(self.failures), "a2": self.a2,
                "optimal": self.optimal}


def verify_certificate(cert: DeltaCertificate) -> VerificationReport:
    """Re-derive every number in the certificate; never trusts its fields.

    The lower-bound check uses a2 from the crossing-change recursion, so
    it shares no arithmetic with the certificate builder.
    """
    fails: List[str] = []
    init = tuple(cert.initial)
    if not formulas.is_minus_one_shape(init):
        fails.append(f"initial vector {format_vector(init)} is outside the (-1, odd positives) family")

    cur = init
    for k, step in enumerate(cert.steps):
        before, after = tuple(step.before), tuple(step.after)
        if before != cur:
            fails.append(f"step {k}: starts at {format_vector(before)}, expected {format_vector(cur)}")
        if not formulas.is_minus_one_shape(before) or before[1] < 3:
            fails.append(f"step {k}: {format_vector(before)} has no second band to lower")
        elif after != before[:1] + (before[1] - 2,) + before[2:]:
            fails.append(f"step {k}: {format_vector(after)} is not band 2 lowered by two")
        if step.band != 2:
            fails.append(f"step {k}: band {step.band}, crossing changes happen on band 2")
        if len(before) >= 3:
            want = Fraction(sum(before[2:]) - 1, 2)
            if step.cost != want:
                fails.append(f"step {k}: cost {step.cost}, clasp cost is {want}")
        cur = after

    if len(cur) >= 2 and cur[1] != 1:
        fails.append(f"reduction stops at {format_vector(cur)} with p2 != 1")
    leaf = cert.leaf
    if tuple(leaf.vector) != tuple(cur[2:]):
        fails.append(f"leaf {format_vector(leaf.vector)} is not what P(-1, 1, ...) reduces to")
    leaf_vec = tuple(leaf.vector)
    if leaf_vec:
        want_cite = _leaf_citation(leaf_vec)
        if leaf.citation != want_cite:
            fails.append(f"leaf citation {leaf.citation!r}, expected {want_cite!r}")
        if want_cite == CITE_POSITIVE and not (len(leaf_vec) % 2 == 1 and is_positive(leaf_vec)):
            fails.append(f"leaf {format_vector(leaf_vec)} is not a positive pretzel knot")
        try:
            leaf_a2 = a2_skein(leaf_vec).value
        except ValueError as exc:
            fails.append(f"leaf {format_vector(leaf_vec)}: {exc}")
        else:
            if leaf.cited_cost != leaf_a2:
                fails.append(f"leaf cost {leaf.cited_cost}, but a2 of the leaf is {leaf_a2}")
    else:
        fails.append("leaf vector is empty")

    step_sum = sum(s.cost for s in cert.steps) + leaf.cited_cost
    if cert.total != step_sum:
        fails.append(f"total {cert.total} != step costs plus leaf = {step_sum}")

    a2 = None
    optimal = False
    try:
        a2 = a2_skein(init).value
    except ValueError as exc:
        fails.append(f"initial vector: {exc}")
    else:
        bound = LowerBound(abs(a2))
        if not bound.admits(cert.total):
            fails.append(f"total {cert.total} violates the parity lower bound |a2| = {abs(a2)}")
        optimal = cert.total == abs(a2)
    return VerificationReport(not fails, fails, a2, optimal and not fails)
