import itertools
import json
import threading
from dataclasses import replace

import pytest
from hypothesis import given, strategies as st

from oracle import a2_gauss
from pretzel_delta import a2_engine, formulas
from pretzel_delta.a2_engine import (MethodMismatch, SkeinEngine, a2, a2_alexander, a2_skein,
                                     replay_trace)
from pretzel_delta.diagram import build_diagram, to_pd
from pretzel_delta.pretzel import NotAKnotError, mirror
from strategies import knots

# a2 values from the Gauss-diagram oracle in tests/oracle.py, frozen
ORACLE = {
    (3,): 0, (1, 1, 1): 1, (3, 5, 7): 18, (-3, 5, 7): 0, (3, -5, -7): 0,
    (1, 1, 1, 1, 1): 3, (5, -3, 1, 1, 7): 5, (2, 3): 3, (-2, 3, 3): 5, (2, 3, 3): -1,
    (4, -3, 5, 1): 9, (-6, 5, 5): 21, (2, 1, 1, 3, 3): -2, (0, 3, 3): 2, (0, -5, 3): 4,
    (6, -5, 3, 1, -1): 7, (-1, 3, 3): 1, (-1, 7, 5, 3, 3): 25, (2, 5): 6, (-4, 1, 1): 2,
}


@pytest.mark.parametrize("v", sorted(ORACLE))
def test_frozen_oracle_values(v):
    assert a2_skein(v).value == ORACLE[v]
    assert formulas.a2_formula(v) == ORACLE[v]
    if 0 < sum(map(abs, v)) <= 20:
        assert a2_alexander(v).value == ORACLE[v]


@pytest.mark.parametrize("v, value", [
    ((1, 1, 1), 1),
    ((2, 3, 3), -1),
    ((2, 1, 1, 3, 3), -2),
    ((0, 3, 5), 4),
    ((1,), 0),
    ((2, 1, 1, 1, 1, -3, 1), 0),
])
def test_reference_values(v, value):
    assert a2(v, "all").value == value


def test_all_methods_on_357():
    result = a2((3, 5, 7), "all")
    assert result.by_method == {"skein": 18, "formula": 18, "alexander": 18}


def test_trace_golden():
    result = a2_skein((-1, 3, 3))
    assert result.trace_json() == [
        {"vector": [-1, 3, 3], "band": 2, "crossingSign": 1, "lk": 1, "contribution": 1},
        {"vector": [-1, 1, 3], "band": 3, "crossingSign": 1, "lk": 0, "contribution": 0},
    ]
    assert result.base["vector"] == [-1, 1, 1]
    json.dumps(result.trace_json())


def test_trace_357_band1_lk():
    step = a2_skein((3, 5, 7)).trace[0]
    assert (step.band, step.crossing_sign, step.lk) == (1, 1, 6)


def test_replay_detects_tampering():
    result = a2_skein((3, 5, 7))
    assert replay_trace(result) == []
    bad_step = replace(result.trace[1], lk=result.trace[1].lk + 1)
    tampered = replace(result, trace=(result.trace[0], bad_step) + result.trace[2:])
    assert replay_trace(tampered)
    assert replay_trace(replace(result, value=17))


def test_rejects_links():
    with pytest.raises(NotAKnotError):
        a2_skein((3, 3))
    with pytest.raises(NotAKnotError):
        a2((2, 4, 3), "all")
    with pytest.raises(ValueError):
        a2((3, 5, 7), "magic")


def test_mismatch_is_raised(monkeypatch):
    monkeypatch.setattr(formulas, "a2_formula", lambda v: 99)
    with pytest.raises(MethodMismatch) as info:
        a2((3, 5, 7), "all")
    assert info.value.values["formula"] == 99


def test_depth_bound():
    v = (7, -5, 3)
    assert len(a2_skein(v).trace) <= sum(map(abs, v)) // 2


@given(knots())
def test_mirror_invariance(v):
    assert a2_skein(v).value == a2_skein(mirror(v)).value


@given(knots(), st.randoms())
def test_permutation_invariance(v, rnd):
    w = list(v)
    rnd.shuffle(w)
    assert a2_skein(tuple(w)).value == a2_skein(v).value


@given(knots(small=True))
def test_every_trace_replays(v):
    assert replay_trace(a2_skein(v)) == []


@given(knots(small=True))
def test_gauss_oracle_agrees(v):
    assert a2_gauss(to_pd(build_diagram(v))) == a2_skein(v).value


def test_sorted_key_engine_agrees():
    plain, keyed = SkeinEngine(), SkeinEngine(sorted_keys=True)
    for v in itertools.product((-3, -1, 1, 3), repeat=3):
        assert plain.a2(v).value == keyed.a2(v).value
    assert len(keyed) <= len(plain)


def test_engine_is_thread_safe():
    engine = SkeinEngine()
    vectors = list(itertools.product((-5, -3, 1, 3, 5), repeat=3))
    expected = {v: a2_skein(v).value for v in vectors}
    errors = []

    def run(chunk):
        for v in chunk:
            if engine.a2(v).value != expected[v]:
                errors.append(v)

    threads = [threading.Thread(target=run, args=(vectors[k::4],)) for k in range(4)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert errors == []
