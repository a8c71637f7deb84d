"""Gröbner engine checked against sympy, an independent implementation."""

import pytest
import sympy
from hypothesis import given

from cmlab.algebra.field import QQ
from cmlab.algebra.groebner import BudgetExceeded, budget_scope, groebner, poly_to_vec
from cmlab.algebra.poly import PolyRing
from cmlab.algebra.primes import _from_sympy, _to_sympy
from cmlab.algebra.text import parse_ideal, parse_ring

from strategies import P3_GF, P3_QQ, ideals


def reduced_basis(gens, P):
    vs = groebner([poly_to_vec(g) for g in gens if g], P)
    return sorted(str(P.from_dict({e: c for (_, e), c in v.items()})) for v in vs)


def sympy_basis(gens, P):
    gs = [g for g in gens if g]
    syms = sympy.symbols(" ".join(P.names))
    opts = {"order": P.order.kind}
    if P.field.characteristic:
        opts["modulus"] = P.field.characteristic
    G = sympy.groebner([_to_sympy(g).as_expr() for g in gs], *syms, **opts)
    out = []
    for g in G.polys:
        h = _from_sympy(sympy.Poly(g.as_expr(), *syms, **({"modulus": opts["modulus"]} if "modulus" in opts else {"domain": "QQ"})), P)
        out.append(str(h.monic()))
    return sorted(out)


def test_worked_basis_lex():
    P = PolyRing(QQ, ["x", "y"], "lex")
    x, y = P.var("x"), P.var("y")
    assert reduced_basis([x * y - 1, y ** 2 - 1], P) == sorted([str(x - y), str(y ** 2 - 1)])


def test_zero_and_principal():
    P = PolyRing(QQ, ["x"])
    assert reduced_basis([], P) == []
    assert reduced_basis([P.var("x")], P) == ["x"]


@given(ideals(P3_QQ, max_gens=3, max_degree=2))
def test_matches_sympy_over_rationals(gens):
    assert reduced_basis(gens, P3_QQ) == sympy_basis(gens, P3_QQ)


@given(ideals(P3_GF, max_gens=3, max_degree=3))
def test_matches_sympy_mod_p(gens):
    assert reduced_basis(gens, P3_GF) == sympy_basis(gens, P3_GF)


@given(ideals(PolyRing(QQ, ["x", "y", "z"], "lex"), max_gens=2, max_degree=2))
def test_matches_sympy_lex(gens):
    P = gens[0].ring
    assert reduced_basis(gens, P) == sympy_basis(gens, P)


def test_budget_is_a_typed_failure():
    R = parse_ring("QQ[x,y,z]")
    I = parse_ideal("(x^3*y + z^5, x*y*z - 1, z^7 - y)", R)
    with budget_scope(5):
        with pytest.raises(BudgetExceeded) as e:
            I.groebner_basis()
    assert e.value.limit == 5


def test_env_budget_override(monkeypatch):
    from cmlab.algebra.groebner import default_budget_limit

    monkeypatch.setenv("CMLAB_BUDGET", "123")
    assert default_budget_limit() == 123
    monkeypatch.setenv("CMLAB_BUDGET", "lots")
    with pytest.raises(ValueError):
        default_budget_limit()
