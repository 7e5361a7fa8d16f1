"""
Grid sweeps that compare the independent a2 routes, the linking-number
closed forms, and the knot table.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import formulas
from .a2_engine import (SkeinStep, a2_alexander, a2_skein, alexander_applicable,
                        replay_trace)
from .alexander import DEFAULT_CROSSING_CAP
from .delta import LowerBound, u_delta
from .grids import even_grid, odd_grid
from .table import KnotTable


def default_jobs() -> int:
    return os.cpu_count() or 1


def _parallel_map(fn: Callable, items: List, jobs: int) -> List:
    if jobs <= 1 or len(items) < 64:
        return [fn(x) for x in items]
    chunk = max(1, len(items) // (jobs * 8))
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=chunk))


# ---------------------------------------------------------------------------
# a2 agreement


@dataclass
class VectorCheck:
    vector: Tuple[int, ...]
    values: Dict[str, int]

    @property
    def agree(self) -> bool:
        return len(set(self.values.values())) == 1

    def as_dict(self) -> dict:
        return {"vector": list(self.vector), "values": dict(sorted(self.values.items())),
                "agree": self.agree}


@dataclass
class CrossCheckReport:
    grid: dict
    results: List[VectorCheck] = field(default_factory=list)

    @property
    def failures(self) -> List[VectorCheck]:
        return [r for r in self.results if not r.agree]

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary(self) -> dict:
        return {
            "vectors": len(self.results),
            "agree": sum(r.agree for r in self.results),
            "disagree": len(self.failures),
            "alexanderChecked": sum("alexander" in r.values for r in self.results),
        }

    def as_dict(self, with_results: bool = True) -> dict:
        out = {"grid": self.grid, "summary": self.summary(),
               "firstFailure": self.failures[0].as_dict() if self.failures else None}
        if with_results:
            out["results"] = [r.as_dict() for r in self.results]
        return out


def check_vector(v: Sequence[int], cap: int = DEFAULT_CROSSING_CAP) -> VectorCheck:
    v = tuple(v)
    values = {"skein": a2_skein(v).value, "formula": formulas.a2_formula(v)}
    if alexander_applicable(v, cap):
        values["alexander"] = a2_alexander(v, cap).value
    return VectorCheck(v, values)


class _Checker:
    def __init__(self, cap):
        self.cap = cap

    def __call__(self, v):
        return check_vector(v, self.cap)


def crosscheck(odd_n: Iterable[int] = (), even_n: Iterable[int] = (), max_abs: int = 5,
               max_even: Optional[int] = None, cap: int = DEFAULT_CROSSING_CAP,
               jobs: int = 1) -> CrossCheckReport:
    odd_n, even_n = sorted(set(odd_n)), sorted(set(even_n))
    max_even = max_abs if max_even is None else max_even
    vectors = list(odd_grid(odd_n, max_abs)) if max_abs >= 1 else []
    if max_abs >= 1 or even_n == [1]:
        vectors += list(even_grid(even_n, max_abs, max_even))
    grid = {"oddN": odd_n, "evenN": even_n, "max": max_abs, "maxEven": max_even,
            "oracleCap": cap}
    results = _parallel_map(_Checker(cap), vectors, jobs)
    results.sort(key=lambda r: (len(r.vector), r.vector))
    return CrossCheckReport(grid, results)


# ---------------------------------------------------------------------------
# linking numbers against the closed forms


@dataclass(frozen=True)
class ClosedForm:
    label: str
    contribution: Fraction
    signed_lk: Optional[Fraction]


def closed_form_for(step: SkeinStep) -> Optional[ClosedForm]:
    """Closed-form a2 difference for a recursion step, when one is known.

    Odd type with bands 1..b-1 all equal to 1: smoothing band b has
    lk = ((b-1) + p_{b+1} + ... + p_n) / 2.  Even type with the even
    band first, reduced on band 1: the a2 difference depends on the
    parity of n and the sign of p1.  Only the a2 difference is compared
    for the even type; its lk sign hinges on the twist chirality.
    """
    w, b = step.vector, step.band
    i = b - 1
    if len(w) % 2 == 1 and all(p % 2 for p in w):
        if all(p == 1 for p in w[:i]):
            lk = Fraction((b - 1) + sum(w[i + 1:]), 2)
            sign = 1 if w[i] > 0 else -1
            return ClosedForm("odd type, leading ones", sign * lk, lk)
        return None
    if w[0] % 2 == 0 and all(p % 2 for p in w[1:]) and b == 1:
        p1, rest = w[0], sum(w[1:])
        if len(w) % 2 == 0:
            diff = (Fraction((p1 - 1) + rest, 2) if p1 > 0
                    else -Fraction((p1 + 1) + rest, 2))
            return ClosedForm("even type, n even", diff, None)
        diff = Fraction(rest, 2) if p1 < 0 else -Fraction(rest, 2)
        return ClosedForm("even type, n odd", diff, None)
    return None


@dataclass
class LkReport:
    grid: dict
    vectors: int = 0
    steps: int = 0
    compared: int = 0
    failures: List[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"grid": self.grid, "vectors": self.vectors, "steps": self.steps,
                "compared": self.compared, "mismatches": len(self.failures),
                "firstFailure": self.failures[0] if self.failures else None}


def lkcheck(lengths: Iterable[int], max_abs: int, max_even: Optional[int] = None) -> LkReport:
    lengths = sorted(set(lengths))
    if max_even is None:
        max_even = max_abs + (max_abs % 2)
    vectors = list(odd_grid(lengths, max_abs)) if max_abs >= 1 else []
    if max_abs >= 1:
        vectors += list(even_grid(lengths, max_abs, max_even, even_first=True))
    report = LkReport({"n": lengths, "max": max_abs, "maxEven": max_even})
    for v in vectors:
        report.vectors += 1
        result = a2_skein(v)
        for problem in replay_trace(result):
            report.failures.append({"vector": list(v), "problem": problem})
        for step in result.trace:
            report.steps += 1
            form = closed_form_for(step)
            if form is None:
                continue
            report.compared += 1
            bad = step.contribution != form.contribution or abs(step.lk) != abs(form.contribution)
            if form.signed_lk is not None and step.lk != form.signed_lk:
                bad = True
            if bad:
                report.failures.append({
                    "vector": list(v), "step": step.as_dict(), "rule": form.label,
                    "expectedContribution": str(form.contribution),
                })
    return report


# ---------------------------------------------------------------------------
# knot table


@dataclass
class TableRow:
    name: str
    twists: Tuple[int, ...]
    a2_known: int
    u_known: Tuple[int, ...]
    values: Dict[str, int]
    admissible: Dict[int, bool]
    exact: Optional[int]

    @property
    def a2_ok(self) -> bool:
        return all(x == self.a2_known for x in self.values.values())

    @property
    def u_ok(self) -> bool:
        if not all(self.admissible.values()):
            return False
        return self.exact is None or self.exact in self.u_known

    @property
    def ok(self) -> bool:
        return self.a2_ok and self.u_ok

    def as_dict(self) -> dict:
        return {"name": self.name, "twists": list(self.twists), "a2Known": self.a2_known,
                "a2": dict(sorted(self.values.items())), "uDeltaKnown": list(self.u_known),
                "admissible": {str(k): v for k, v in sorted(self.admissible.items())},
                "exact": self.exact, "ok": self.ok}


def reconcile_table(table: KnotTable, cap: int = DEFAULT_CROSSING_CAP) -> List[TableRow]:
    rows = []
    for entry in table:
        check = check_vector(entry.twists, cap)
        bound = LowerBound(abs(check.values["skein"]))
        result = u_delta(entry.twists)
        rows.append(TableRow(
            entry.name, entry.twists, entry.a2, tuple(sorted(entry.u_delta)),
            check.values, {u: bound.admits(u) for u in sorted(entry.u_delta)},
            result.exact))
    return rows
