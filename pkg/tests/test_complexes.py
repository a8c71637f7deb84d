import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlab.algebra.text import parse_ring
from cmlab.complexes import (
    ModulePresentation,
    ext_is_zero,
    free_resolution,
    induced_zero_on_homology,
    koszul,
    koszul_power_map,
    projective_dimension_graded,
)
from cmlab.grade import p_depth

from strategies import P3_QQ, polys
from cmlab.algebra.ring import PresentedRing

R3 = PresentedRing(P3_QQ)
QXY = parse_ring("QQ[x,y]")


@given(st.lists(polys(max_degree=2), min_size=1, max_size=3))
def test_koszul_differentials_square_to_zero(seq):
    assert koszul(R3, seq).is_complex()


@pytest.mark.parametrize("ring", ["QQ[x,y]/(x*y)", "QQ[x,y,z]/(x^2 - y*z)", "GF(7)[x,y]/(x^3)"])
def test_koszul_over_quotients_is_a_complex(ring):
    R = parse_ring(ring)
    assert koszul(R, [R(v) for v in R.names]).is_complex()


def test_koszul_over_a_module_is_a_complex():
    M = ModulePresentation.quotient(QXY, [QXY("x^2")])
    assert koszul(QXY, [QXY("x"), QXY("y")], M).is_complex()


def test_koszul_ranks_are_binomial():
    K = koszul(R3, [R3("x"), R3("y"), R3("z")])
    assert [K.rank(i) for i in range(4)] == [1, 3, 3, 1]


def test_regular_sequence_has_acyclic_koszul_complex():
    K = koszul(R3, [R3("x"), R3("y"), R3("z")])
    assert all(K.homology_is_zero(i).vanishes for i in (1, 2, 3))
    assert not K.homology_is_zero(0).vanishes


def test_homology_certificates_recheck():
    R = parse_ring("QQ[x,y]/(x*y)")
    K = koszul(R, [R("x")])
    bad = K.homology_is_zero(1)
    assert not bad.vanishes and bad.verify()
    good = koszul(R, [R("x + y")]).homology_is_zero(1)
    assert good.vanishes and good.verify()


@given(st.lists(polys(max_degree=2, max_terms=2), min_size=1, max_size=2), st.integers(1, 3), st.integers(0, 2))
def test_power_maps_commute_and_compose(seq, n, extra):
    m = n + extra
    phi = koszul_power_map(R3, seq, m, n)
    assert phi.source.is_complex() and phi.target.is_complex()
    assert phi.commutes()
    if n > 1:
        psi = koszul_power_map(R3, seq, n, n - 1)
        assert psi.compose(phi).commutes()


def test_power_map_rejects_bad_levels():
    with pytest.raises(ValueError):
        koszul_power_map(R3, [R3("x")], 1, 2)


def test_induced_map_on_positive_homology():
    R = parse_ring("QQ[x,y]/(x*y)")
    # (0 : x^n) = (y) for all n, and the map multiplies by x, killing it
    assert induced_zero_on_homology(R, [R("x")], 2, 1, 1).zero
    assert not induced_zero_on_homology(R, [R("x")], 1, 1, 1).zero


@given(st.permutations([0, 1, 2]))
def test_homology_vanishing_is_permutation_invariant(order):
    R = parse_ring("QQ[x,y,z]/(x*y)")
    base = [R("x + y"), R("z"), R("x")]
    seq = [base[i] for i in order]
    K0, K1 = koszul(R, base), koszul(R, seq)
    assert [K0.homology_is_zero(i).vanishes for i in range(4)] == [K1.homology_is_zero(i).vanishes for i in range(4)]


@pytest.mark.parametrize("ideal,pd,depth", [
    (["x"], 1, 1),
    (["x", "y"], 2, 0),
    (["x^2", "x*y"], 2, 0),
])
def test_projective_dimension_plus_depth(ideal, pd, depth):
    M = ModulePresentation.quotient(QXY, [QXY(g) for g in ideal])
    maximal = [QXY("x"), QXY("y")]
    got = projective_dimension_graded(M)
    d = p_depth(QXY, maximal, M)
    assert (got.value, d.value) == (pd, depth)
    assert got.value + d.value == p_depth(QXY, maximal).value


def test_resolution_is_a_complex_and_ends():
    M = ModulePresentation.quotient(R3, [R3("x*y"), R3("y*z"), R3("x*z")])
    res = free_resolution(M)
    assert res.complete and res.graded
    assert res.complex.is_complex()
    assert [res.complex.rank(i) for i in range(3)] == [1, 3, 2]


def test_non_graded_input_is_flagged():
    M = ModulePresentation.quotient(QXY, [QXY("x - 1")])
    pd = projective_dimension_graded(M)
    assert pd.value is None and "non-graded" in pd.flagged


def test_infinite_resolution_is_flagged():
    R = parse_ring("QQ[x,y]/(x*y)")
    pd = projective_dimension_graded(ModulePresentation.quotient(R, [R("x")]))
    assert pd.value is None and pd.flagged


def test_ext_against_known_values():
    I = QXY.ideal([QXY("x"), QXY("y")])
    assert [ext_is_zero(i, I).vanishes for i in range(3)] == [True, True, False]
