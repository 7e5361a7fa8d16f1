import json

import pytest
from hypothesis import given, strategies as st

from mutations import single_field_mutations
from pretzel_delta import formulas
from pretzel_delta.a2_engine import a2_skein
from pretzel_delta.delta import (CITE_POSITIVE, CITE_TRIVIAL, TAG_MINUS_ONE, TAG_POSITIVE_EVEN,
                                 TAG_POSITIVE_ODD, TAG_TORUS, TAG_TRIVIAL, DeltaCertificate,
                                 LowerBound, build_certificate_oddone, lower_bound, u_delta,
                                 verify_certificate)
from pretzel_delta.pretzel import (HypothesisError, NotAKnotError, is_positive, mirror,
                                   symmetries)
from pretzel_delta.table import load_table
from strategies import knots


def test_lower_bound():
    b = LowerBound(3)
    assert b.parity == "odd"
    assert [u for u in range(8) if b.admits(u)] == [3, 5, 7]
    assert lower_bound((2, 3, 3)).value == 1


@pytest.mark.parametrize("v, value, tag", [
    ((3, 5, 7), 18, TAG_POSITIVE_ODD),
    ((-3, -5, -7), 18, TAG_POSITIVE_ODD),
    ((-2, 3, 3), 5, TAG_POSITIVE_EVEN),
    ((2, 5), 6, TAG_POSITIVE_EVEN),
    ((1, 1, 1, 1, 1), 3, TAG_TORUS),
    ((-1, 3, 3), 1, TAG_MINUS_ONE),
    ((3, 3, -1), 1, TAG_MINUS_ONE),
    ((1, -3, -3), 1, TAG_MINUS_ONE),
    ((5,), 0, TAG_TRIVIAL),
])
def test_exact(v, value, tag):
    result = u_delta(v)
    assert result.is_exact
    assert (result.exact, result.tag) == (value, tag)
    assert result.as_dict()["kind"] == "exact"


def test_bounds_with_table():
    result = u_delta((2, 5, 1), load_table())
    assert not result.is_exact
    d = result.as_dict()
    assert d["kind"] == "bounds"
    assert (d["lower"], d["parity"], d["upper"]) == (0, "even", 2)
    assert d["table"] == {"name": "8_2", "uDelta": [2]}
    multi = u_delta((2, 1, 1, 3, 3), load_table()).as_dict()
    assert multi["table"]["uDelta"] == [2, 4]
    assert multi["upper"] == 4


def test_bounds_without_table():
    d = u_delta((3, -5, 7)).as_dict()
    assert d["kind"] == "bounds" and d["upper"] is None
    assert d["lower"] == abs(a2_skein((3, -5, 7)).value)


@given(knots())
def test_rule_applied_to_a_true_symmetry(v):
    result = u_delta(v)
    if result.is_exact:
        forms = set(symmetries(v)) | {mirror(w) for w in symmetries(v)}
        assert result.via in forms


def test_rejects_links():
    with pytest.raises(NotAKnotError):
        u_delta((3, 3))


@given(knots())
def test_exact_values_meet_parity_bound(v):
    result = u_delta(v)
    if result.is_exact:
        assert result.lower.admits(result.exact)
    if is_positive(v):
        assert result.exact == abs(a2_skein(v).value)


def test_certificate_small():
    cert = build_certificate_oddone((-1, 3, 3))
    assert cert.total == 1
    assert [s.cost for s in cert.steps] == [1]
    assert cert.leaf.vector == (3,) and cert.leaf.citation == CITE_TRIVIAL
    report = verify_certificate(cert)
    assert report.ok and report.optimal and report.a2 == 1


def test_certificate_with_cited_leaf():
    cert = build_certificate_oddone((-1, 5, 3, 3, 3))
    assert [s.cost for s in cert.steps] == [4, 4]
    assert cert.leaf.citation == CITE_POSITIVE and cert.leaf.cited_cost == 7
    assert cert.total == 15 == formulas.u_delta_oddone_formula((-1, 5, 3, 3, 3))
    assert verify_certificate(cert).ok


def test_certificate_json_round_trip():
    cert = build_certificate_oddone((-1, 7, 5, 3, 3))
    text = cert.to_json()
    assert DeltaCertificate.from_json(text) == cert
    assert json.loads(text)["total"] == cert.total
    assert text == build_certificate_oddone((-1, 7, 5, 3, 3)).to_json()


def test_certificate_hypothesis_gate():
    for v in [(1, 3, 3), (-1, 3, 3, 3), (-1, -3, 3), (-1, 2, 3)]:
        with pytest.raises(HypothesisError):
            build_certificate_oddone(v)


@pytest.mark.parametrize("v", [(-1, 1, 1), (-1, 3, 3), (-1, 5, 3, 1, 7)])
def test_every_mutation_fails(v):
    data = build_certificate_oddone(v).as_dict()
    count = 0
    for what, mutated in single_field_mutations(data):
        count += 1
        try:
            cert = DeltaCertificate.from_dict(mutated)
        except (KeyError, TypeError, ValueError):
            continue
        assert not verify_certificate(cert).ok, what
    assert count > 10


def test_verifier_reports_reason():
    data = build_certificate_oddone((-1, 3, 3)).as_dict()
    data["steps"][0]["cost"] = 0
    data["total"] = 0
    report = verify_certificate(DeltaCertificate.from_dict(data))
    assert not report.ok
    assert "cost" in report.first_failure


@given(st.lists(st.sampled_from([1, 3, 5, 7]), min_size=2, max_size=4))
def test_certificate_total_equals_a2(rest):
    if len(rest) % 2:
        rest = rest[:-1]
    v = (-1, *rest)
    cert = build_certificate_oddone(v)
    assert cert.total == a2_skein(v).value == u_delta(v).exact
