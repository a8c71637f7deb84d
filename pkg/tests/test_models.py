import random

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from cmlab.algebra.text import parse_ring
from cmlab.models import (
    BadRingLimit,
    SubringModel,
    TrivialExtension,
    ValuationModel,
    bad_colon_chain,
    subring_colon_identities,
    truncated_bad_ring,
    tx_height,
    tx_p_grade,
    tx_parameter,
    val_colon,
    val_example37,
    val_member,
    val_value,
)
from cmlab.models.subring import S, in_D, in_xyD, in_xyS
from cmlab.models.valuation import RationalFunction, U, W, _P
from cmlab.sequences import cohen_macaulay_verdict, is_strong_parameter_sequence

from strategies import polys

# ---------------------------------------------------------------- valuation

V = ValuationModel()
rational_functions = st.builds(
    RationalFunction,
    polys(_P, max_degree=3, max_terms=3).filter(bool),
    polys(_P, max_degree=2, max_terms=2).filter(bool),
)


@given(rational_functions, rational_functions)
def test_value_is_additive(f, g):
    assert val_value(f * g) == tuple(a + b for a, b in zip(val_value(f), val_value(g)))


@given(rational_functions, rational_functions)
def test_value_is_ultrametric(f, g):
    assume(not (f + g).is_zero())
    assert val_value(f + g) >= min(val_value(f), val_value(g))


@given(rational_functions, rational_functions)
def test_two_generated_ideals_are_principal(f, g):
    f, g = (h if val_member(h) else 1 / h for h in (f, g))
    gen = V.ideal_generator([f, g])
    assert gen is f or gen is g
    assert V.divides(gen, f) and V.divides(gen, g)


@given(rational_functions)
def test_colon_generator_is_exact(f):
    f = f if val_member(f) else 1 / f
    I = [U * W]
    c = val_colon(I, f)
    assert V.ideal_contains(I, c * f)
    # anything of smaller value fails
    if not V.is_unit(c):
        assert not V.ideal_contains(I, (c / U if c.value()[0] > 0 else c / W) * f)


def test_distinguished_values():
    assert val_value(U) == (1, 0) and val_value(W) == (0, 1)
    assert val_member(U / W) and not val_member(W / U)
    with pytest.raises(ValueError):
        val_value(RationalFunction(_P.zero()))


def test_element_parsing_rejects_non_members():
    assert V.element("u/w") == U / W
    with pytest.raises(ValueError):
        V.element("w/u")


def test_heights_and_grades():
    assert V.height([W]) == 2 and V.height([U]) == 1
    assert V.height([V.element(1)]) == float("inf")
    assert V.p_grade([U, W]).value == 1


def test_pair_is_weakly_proregular_with_height_two_but_not_a_parameter_sequence():
    b = val_example37(3)
    assert (b.weakly_proregular, b.height, b.parameter) == (True, 2, False)
    assert b.certificates_check
    assert [c.n for c in b.levels] == [1, 2, 3]


def test_longer_sequences_are_out_of_scope():
    with pytest.raises(NotImplementedError):
        V.weakly_proregular([U, W, U + W])


def test_nonzero_elements_are_regular_in_the_domain():
    v = cohen_macaulay_verdict(V, [["u*w"], ["w^2"]])
    assert not v.violation_found and v.checked == 2


# ---------------------------------------------------------------- trivial extension

@pytest.fixture(scope="module")
def trivext():
    R = parse_ring("QQ[x,y]")
    return TrivialExtension(R, [R("x"), R("y")], level=1)


def test_trivext_depth(trivext):
    assert trivext.p_depth().value == 2


@pytest.mark.parametrize("gens", [["x"], ["y"], ["x*y"], ["x^2", "x*y"], ["x + y^2"], ["y*(x - 1)"]])
def test_non_primary_ideals_have_grade_zero(trivext, gens):
    assert tx_height(trivext, gens) <= 1
    assert tx_p_grade(trivext, gens).value == 0


@pytest.mark.parametrize("gens", [["x", "y"], ["x^2", "y"], ["x*y", "x^2 + y^2"]])
def test_primary_ideals_keep_the_base_grade(trivext, gens):
    assert tx_height(trivext, gens) == 2
    assert tx_p_grade(trivext, gens).value == 2


def test_trivext_parameters_transfer_from_the_base(trivext):
    assert tx_parameter(trivext, ["x*y"])
    assert tx_parameter(trivext, ["x", "y"])
    assert not tx_parameter(trivext, ["x - 1"])
    assert not tx_parameter(trivext, ["x", "x^2"])


def test_trivext_violates_cm(trivext):
    v = cohen_macaulay_verdict(trivext, [["x"], ["x", "y"]])
    assert v.violation_found
    assert v.violation.sequence == ["x"] and v.violation.p_grade.value == 0
    assert is_strong_parameter_sequence(trivext, ["x"]).holds


# ---------------------------------------------------------------- bad ring

@pytest.mark.parametrize("N", [2, 3, 4])
def test_colon_chain_grows_strictly(N):
    chain = bad_colon_chain(N)
    assert chain.strictly_increasing_below_N
    assert all(s.expected for s in chain.steps)
    assert chain.stabilises_at_N


def test_colon_chain_by_hand():
    R = truncated_bad_ring(3)
    x = R.var("x")
    zero = R.zero_ideal()
    assert zero.colon(x) == R.ideal([R("y1"), R("x*y2"), R("x^2*y3")])
    assert zero.colon(x ** 2).contains(R("y2")) and not zero.colon(x).contains(R("y2"))


def test_limit_ring_obstructs_weak_proregularity():
    B = BadRingLimit(3)
    x = B.element("x")
    v = B.weakly_proregular([x], bound=5)
    assert v.holds is False and v.level == 1
    assert not B.parameter([x]).holds
    w = B.wpr_witness(4)
    assert w["is_cycle"] and w["image_nonzero"]
    with pytest.raises(NotImplementedError):
        B.height([B.element("y1")])


# ---------------------------------------------------------------- subring

def test_colon_identities_hold():
    cert = subring_colon_identities(8)
    assert cert.holds, cert.checks
    assert cert.witness == "x*y^2"
    assert in_xyS(S("x*y^2")) and not in_xyD(S("x*y^2"))


@given(st.integers(0, 10**6))
def test_subring_is_closed_under_products(seed):
    rng = random.Random(seed)
    M = SubringModel(8)
    f, g = M.random_element(rng, 3), M.random_element(rng, 3)
    assert in_D(f) and in_D(g) and in_D(f * g)
    xy = S("x*y")
    assert in_xyD(xy * f * g)


def test_subring_bound_is_checked():
    with pytest.raises(ValueError):
        SubringModel(3)
