import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cmlab.algebra.field import GF, QQ
from cmlab.algebra.poly import PolyRing
from cmlab.invariants import (
    GroupError,
    LinearGroupAction,
    check_retraction,
    invariant_cm_scenario,
    invariant_presentation,
    kernel_matches,
    random_poly,
    reynolds,
)

QXY = PolyRing(QQ, ["x", "y"])
SIGN = LinearGroupAction(QXY, [[[1, 0], [0, 1]], [[-1, 0], [0, -1]]])
SWAP = LinearGroupAction(QXY, [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])


@pytest.fixture(scope="module")
def sign():
    return invariant_presentation(SIGN)


def test_sign_action_presentation(sign):
    assert str(sign.ring) == "QQ[A,B,C]/(B^2 - A*C)"
    assert sorted(str(g) for g in sign.generators) == ["x*y", "x^2", "y^2"]
    assert not sign.incomplete


def test_swap_presentation():
    pres = invariant_presentation(SWAP)
    assert str(pres.ring) == "QQ[A,B]"
    assert pres.describe() == "QQ[A,B] with A = x*y, B = x + y"


def test_trivial_group():
    G = LinearGroupAction(QXY, [[[1, 0], [0, 1]]])
    pres = invariant_presentation(G)
    assert str(pres.ring) == "QQ[A,B]"
    assert check_retraction(pres, samples=20).holds


def test_cyclic_action_mod_seven():
    F = GF(7)
    P = PolyRing(F, ["x", "y"])
    # omega = 2 has order 3 mod 7; diag(omega, omega^2)
    mats = [[[1, 0], [0, 1]], [[2, 0], [0, 4]], [[4, 0], [0, 2]]]
    pres = invariant_presentation(LinearGroupAction(P, mats))
    assert str(pres.ring) == "GF(7)[A,B,C]/(B^3 - A*C)"
    assert kernel_matches(pres)


def test_group_validation():
    with pytest.raises(GroupError):
        LinearGroupAction(QXY, [[[-1, 0], [0, -1]]])  # no identity
    with pytest.raises(GroupError):
        LinearGroupAction(QXY, [[[1, 0], [0, 1]], [[1, 1], [0, 1]]])  # not closed
    with pytest.raises(GroupError):
        # order 2 in characteristic 2
        LinearGroupAction(PolyRing(GF(2), ["x", "y"]), [[[1, 0], [0, 1]], [[0, 1], [1, 0]]])


@given(st.integers(0, 10**6))
def test_reynolds_is_an_invariant_projection(seed):
    rng = random.Random(seed)
    f, g = random_poly(QXY, rng), random_poly(QXY, rng)
    rf = reynolds(f, SIGN)
    assert SIGN.is_invariant(rf)
    assert reynolds(rf, SIGN) == rf
    assert reynolds(f + g, SIGN) == rf + reynolds(g, SIGN)


@given(st.integers(0, 10**6))
def test_retraction_fixes_the_subring(sign, seed):
    rng = random.Random(seed)
    r = sign.ring.reduce(random_poly(sign.ring.poly_ring, rng, degree=2))
    assert sign.ring.equal(sign.retract(sign.embed(r)), r)


def test_retraction_laws_on_many_samples(sign):
    chk = check_retraction(sign, samples=100, seed=3)
    assert chk.holds, chk.to_json()


def test_kernel_cross_check(sign):
    assert kernel_matches(sign, degree=4)


def test_invariant_ring_sequences_are_regular():
    sc = invariant_cm_scenario(SIGN, [["A", "C"], ["A + C", "B"]], samples=10)
    assert not sc.verdict.violation_found
    assert [e.status for e in sc.verdict.entries] == ["regular", "regular"]
    assert sc.retraction.holds and sc.kernel_ok
