"""
a2 by crossing changes on the pretzel diagram, plus the dispatcher that
compares it with the Alexander oracle and the closed forms.

The skein route never consults the closed forms: every step builds the
diagram, reads the sign of a crossing in the chosen band and the linking
number of the oriented smoothing there, and moves that band two
half-twists toward zero.  Base cases are the trivial knot, the connected
sum of (2, p) torus knots left by a zero band, and P(+-1, ..., +-1).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import formulas
from .alexander import DEFAULT_CROSSING_CAP, alexander_poly
from .diagram import build_diagram, crossing_sign, linking_number, smooth_crossing
from .pretzel import cancel_unit_pair, canonical_key, format_vector, require_knot

METHODS = ("skein", "alexander", "formula")


class MethodMismatch(ArithmeticError):
    def __init__(self, vector, values: Dict[str, int]):
        self.vector = tuple(vector)
        self.values = dict(values)
        detail = ", ".join(f"{k}={v}" for k, v in sorted(values.items()))
        super().__init__(f"a2 methods disagree on {format_vector(vector)}: {detail}")


@dataclass(frozen=True)
class SkeinStep:
    vector: Tuple[int, ...]
    band: int  # 1-based
    crossing_sign: int
    lk: int
    child: Tuple[int, ...]

    @property
    def contribution(self) -> int:
        return self.crossing_sign * self.lk

    def as_dict(self) -> dict:
        return {
            "vector": list(self.vector),
            "band": self.band,
            "crossingSign": self.crossing_sign,
            "lk": self.lk,
            "contribution": self.contribution,
        }


@dataclass(frozen=True)
class _Node:
    value: Fraction
    step: Optional[SkeinStep]
    base: Optional[str]


@dataclass(frozen=True)
class A2Value:
    value: int
    method: str
    trace: Optional[Tuple[SkeinStep, ...]] = None
    base: Optional[dict] = None
    by_method: Dict[str, int] = field(default_factory=dict)

    def trace_json(self) -> List[dict]:
        return [s.as_dict() for s in (self.trace or ())]


def _base_case(v: Tuple[int, ...]) -> Optional[Tuple[Fraction, str]]:
    if len(v) == 1:
        return Fraction(0), "trivial knot P(p)"
    if 0 in v:
        i = v.index(0)
        rest = v[:i] + v[i + 1:]
        return (sum((Fraction(p * p - 1, 8) for p in rest), Fraction(0)),
                "connected sum of T(2,p) over the nonzero bands")
    if all(abs(p) == 1 for p in v):
        w = v
        while True:
            reduced = cancel_unit_pair(w)
            if reduced is None:
                break
            w = reduced
        m = len(w)
        return Fraction(m * m - 1, 8), f"T(2,{m}) after cancelling +1/-1 pairs"
    return None


def skein_step(v: Sequence[int]) -> SkeinStep:
    """One crossing change on the first band with at least two half-twists."""
    v = tuple(v)
    band = next(i for i, p in enumerate(v) if abs(p) >= 2)
    d = build_diagram(v)
    c = d.band_crossings(band)[0].id
    sign = crossing_sign(d, c)
    lk = linking_number(smooth_crossing(d, c))
    p = v[band]
    child = v[:band] + (p - 2 if p > 0 else p + 2,) + v[band + 1:]
    return SkeinStep(v, band + 1, sign, lk, child)


class SkeinEngine:
    """Memoized crossing-change recursion.

    With ``sorted_keys`` the cache is keyed by the sorted entries, which
    relies on a2 being invariant under band permutation; a cached trace
    may then continue through a permuted vector.
    """

    def __init__(self, sorted_keys: bool = False):
        self.sorted_keys = sorted_keys
        self._cache: Dict[Tuple[int, ...], _Node] = {}
        self._lock = threading.Lock()

    def _key(self, v):
        return canonical_key(v) if self.sorted_keys else v

    def clear(self):
        with self._lock:
            self._cache.clear()

    def __len__(self):
        return len(self._cache)

    def _node(self, v: Tuple[int, ...]) -> _Node:
        pending: List[SkeinStep] = []
        cur = v
        while True:
            hit = self._cache.get(self._key(cur))
            if hit is not None:
                node = hit
                break
            base = _base_case(cur)
            if base is not None:
                node = _Node(base[0], None, base[1])
                self._store(cur, node)
                break
            step = skein_step(cur)
            pending.append(step)
            cur = step.child
        for step in reversed(pending):
            node = _Node(node.value + step.contribution, step, None)
            self._store(step.vector, node)
        return node

    def _store(self, v, node):
        # equal values by purity, so last writer wins
        with self._lock:
            self._cache[self._key(v)] = node

    def trace(self, v: Sequence[int]) -> Tuple[Tuple[SkeinStep, ...], _Node]:
        node = self._node(tuple(v))
        steps = []
        while node.step is not None:
            steps.append(node.step)
            node = self._node(node.step.child)
        return tuple(steps), node

    def a2(self, v: Sequence[int]) -> A2Value:
        v = require_knot(v)
        root = self._node(v)
        value = formulas.exact_int(root.value, f"skein a2{format_vector(v)}")
        steps, leaf = self.trace(v)
        base = {"vector": list(steps[-1].child if steps else v),
                "value": formulas.exact_int(leaf.value, "skein base value") if leaf.value.denominator == 1 else str(leaf.value),
                "rule": leaf.base}
        return A2Value(value, "skein", steps, base)


_default_engine = SkeinEngine()


def default_engine() -> SkeinEngine:
    return _default_engine


def a2_skein(v: Sequence[int], engine: Optional[SkeinEngine] = None) -> A2Value:
    return (engine or _default_engine).a2(v)


def replay_trace(result: A2Value) -> List[str]:
    """Recompute every logged step from fresh diagrams; return problems."""
    problems = []
    total = Fraction(0)
    for step in result.trace or ():
        fresh = skein_step(step.vector)
        if fresh != step:
            problems.append(f"step on {format_vector(step.vector)} does not replay: "
                            f"logged {step.as_dict()}, got {fresh.as_dict()}")
        total += step.contribution
    if result.base is not None:
        base = _base_case(tuple(result.base["vector"]))
        if base is None:
            problems.append(f"trace ends on {result.base['vector']}, which is not a base case")
        else:
            total += base[0]
    if total != result.value:
        problems.append(f"steps sum to {total}, recorded value is {result.value}")
    return problems


def a2_alexander(v_or_diagram, cap: int = DEFAULT_CROSSING_CAP) -> A2Value:
    if isinstance(v_or_diagram, (tuple, list)):
        d = build_diagram(require_knot(v_or_diagram))
    else:
        d = v_or_diagram
    poly = alexander_poly(d, cap=cap)
    value = formulas.exact_int(Fraction(poly.second_derivative_at_one(), 2),
                               "half the second derivative of Alexander at 1")
    return A2Value(value, "alexander", base={"alexander": list(poly.coefficients)})


def a2_formula(v: Sequence[int]) -> A2Value:
    return A2Value(formulas.a2_formula(v), "formula")


def alexander_applicable(v: Sequence[int], cap: int = DEFAULT_CROSSING_CAP) -> bool:
    crossings = sum(abs(p) for p in v)
    return 1 <= crossings <= cap


def a2(v: Sequence[int], method: str = "skein", cap: int = DEFAULT_CROSSING_CAP,
       engine: Optional[SkeinEngine] = None) -> A2Value:
    """Dispatch to one route, or with ``"all"`` run every applicable route
    and raise :class:`MethodMismatch` unless they agree."""
    v = require_knot(v)
    if method == "skein":
        return a2_skein(v, engine)
    if method == "alexander":
        return a2_alexander(v, cap)
    if method == "formula":
        return a2_formula(v)
    if method != "all":
        raise ValueError(f"unknown method {method!r}")
    skein = a2_skein(v, engine)
    values = {"skein": skein.value, "formula": formulas.a2_formula(v)}
    if alexander_applicable(v, cap):
        values["alexander"] = a2_alexander(v, cap).value
    if len(set(values.values())) != 1:
        raise MethodMismatch(v, values)
    return A2Value(skein.value, "all", skein.trace, skein.base, values)
