"""Hypothesis strategies for small polynomials and ideals."""

from fractions import Fraction

from hypothesis import strategies as st

from cmlab.algebra.field import GF, QQ
from cmlab.algebra.poly import PolyRing

P3_QQ = PolyRing(QQ, ["x", "y", "z"])
P3_GF = PolyRing(GF(32003), ["x", "y", "z"])
P2_QQ = PolyRing(QQ, ["x", "y"])


@st.composite
def polys(draw, ring=P3_QQ, max_degree=3, max_terms=4, homogeneous=False):
    n = ring.nvars
    k = draw(st.integers(1, max_terms))
    d0 = draw(st.integers(1, max_degree)) if homogeneous else None
    terms = {}
    for _ in range(k):
        if homogeneous:
            cuts = sorted(draw(st.lists(st.integers(0, d0), min_size=n - 1, max_size=n - 1)))
            e = tuple(b - a for a, b in zip([0] + cuts, cuts + [d0]))
        else:
            e = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
            if sum(e) > max_degree:
                continue
        c = draw(st.integers(-5, 5).filter(bool))
        terms[e] = ring.field(c)
    f = ring.from_dict(terms)
    return f


def ideals(ring=P3_QQ, max_gens=3, max_degree=3, homogeneous=False):
    return st.lists(polys(ring, max_degree, 3, homogeneous), min_size=1, max_size=max_gens)


@st.composite
def monomial_ideals(draw, ring=P3_QQ, max_gens=3, max_degree=3):
    n = ring.nvars
    gens = []
    for _ in range(draw(st.integers(1, max_gens))):
        e = tuple(draw(st.lists(st.integers(0, max_degree), min_size=n, max_size=n)))
        if sum(e) == 0:
            e = (1,) + e[1:]
        gens.append(ring.monomial(e))
    return gens


rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9).map(Fraction)
