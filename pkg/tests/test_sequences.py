import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlab.algebra.text import parse_ring
from cmlab.sequences import (
    HEIGHT_CRITERION,
    NoetherianAdapter,
    analyze_sequence,
    cohen_macaulay_verdict,
    enumerate_pool,
    grade_criterion,
    is_parameter_sequence,
    is_regular_sequence,
    is_strong_parameter_sequence,
    is_weakly_proregular,
    locality_reduction,
    single_element_parameter,
    unmixedness_probe,
)

QXYZ = parse_ring("QQ[x,y,z]")
NODE = parse_ring("QQ[x,y,z]/(x*y)")
ELEMENTS = ["x", "y", "z", "x + y", "y + z", "x*y", "x^2", "z - x", "y*z + x"]


def seqs(max_len=3):
    return st.lists(st.sampled_from(ELEMENTS), min_size=1, max_size=max_len, unique=True)


@pytest.mark.parametrize("ring,seq,holds", [
    ("QQ[x,y,z]", ["x", "y"], True),
    ("QQ[x,y,z]", ["x", "x*y"], False),
    ("QQ[x,y,z]", ["x - 1"], True),
    ("QQ[x,y,z]", ["x", "x - 1"], False),  # improper
    ("QQ[x,y,z]/(x*y)", ["x + y"], True),
    ("QQ[x,y,z]/(x*y)", ["x"], False),
])
def test_parameter_fixtures(ring, seq, holds):
    R = parse_ring(ring)
    v = is_parameter_sequence(R, seq)
    assert v.holds is holds
    assert v.license == HEIGHT_CRITERION


def test_noetherian_sequences_are_weakly_proregular():
    v = is_weakly_proregular(NODE, ["x", "z"])
    assert v.holds and v.kind == "certified-noetherian"


@given(seqs(), st.randoms(use_true_random=False))
def test_parameter_verdict_ignores_order(seq, rnd):
    shuffled = list(seq)
    rnd.shuffle(shuffled)
    for R in (QXYZ, NODE):
        assert is_parameter_sequence(R, seq).holds == is_parameter_sequence(R, shuffled).holds


@given(seqs(2), st.integers(1, 3))
def test_parameter_verdict_depends_on_the_radical(seq, k):
    powered = [f"({s})^{k}" for s in seq]
    assert is_parameter_sequence(NODE, seq).holds == is_parameter_sequence(NODE, powered).holds


@given(seqs())
def test_parameter_needs_height_at_least_length(seq):
    for R in (QXYZ, NODE):
        A = NoetherianAdapter(R)
        v = is_parameter_sequence(A, seq)
        if v.holds:
            assert A.height([A.element(s) for s in seq]) >= len(seq)


@given(seqs())
def test_full_grade_implies_parameter(seq):
    for R in (QXYZ, NODE):
        if grade_criterion(R, seq):
            assert is_parameter_sequence(R, seq).holds


@given(seqs())
def test_regular_sequences_are_strong_parameter_sequences(seq):
    for R in (QXYZ, NODE):
        if is_regular_sequence(R, seq).regular:
            assert is_strong_parameter_sequence(R, seq).holds


def test_regular_failure_carries_a_witness():
    v = is_regular_sequence(NODE, ["x", "y"])
    assert not v.regular and v.failing_step == 1
    assert "y" in v.witness


def test_weakly_regular_but_improper():
    v = is_regular_sequence(QXYZ, ["x - 1", "x"])
    assert v.weakly_regular and not v.proper and not v.regular


def test_local_regularity_ignores_far_components():
    # y*(y - 1) kills x globally; near the origin y - 1 is a unit and x = 0
    R = parse_ring("QQ[x,y]/(x*(y - 1))")
    f = R("y*(y - 1)")
    assert NoetherianAdapter(R, [R("x"), R("y")]).regular([f]).regular
    assert not NoetherianAdapter(R).regular([f]).regular


def test_single_element_criterion():
    R = parse_ring("QQ[x,y]/(x^2*y)")
    assert single_element_parameter(NoetherianAdapter(R), R("x + y")).holds
    assert not single_element_parameter(NoetherianAdapter(R), R("x")).holds


def test_sequence_report_layout():
    rep = analyze_sequence(QXYZ, ["x", "y"])
    d = rep.to_json()
    assert d["strong_parameter"] and d["regular"]["regular"]
    assert [p["p_grade"] for p in d["prefixes"]] == [1, 2]


def test_pool_enumeration_order():
    pool = enumerate_pool(["a", "b", "c"], 2)
    assert pool[:3] == [["a"], ["b"], ["c"]]
    assert len(pool) == 3 + 6


def test_cm_verdict_on_a_non_cm_ring():
    # two planes meeting in a point: depth 1, dimension 2
    R = parse_ring("QQ[x,y,z,w]/(x*z, x*w, y*z, y*w)")
    v = cohen_macaulay_verdict(R, [["x + z", "y + w"]])
    assert v.violation_found and v.statement == "violation found"
    assert v.violation.sequence == ["x + z", "y + w"]


def test_cm_verdict_on_a_polynomial_ring():
    v = cohen_macaulay_verdict(QXYZ, enumerate_pool(["x", "y + z", "x*y"], 2))
    assert not v.violation_found and v.statement == "no violation within pool"
    assert v.checked >= 1


def test_unmixedness_probe():
    R = parse_ring("QQ[x,y]")
    r = unmixedness_probe(R, ["x^2", "x*y"])
    assert r.found and str(r.witness) == "x"
    assert not unmixedness_probe(R, ["x*y"]).found


def test_locality_reduction_lists_minimal_primes():
    plans = locality_reduction(NODE, ["x + y - 1"])
    assert len(plans) == 2
    assert all(p.regular_here for p in plans)
