"""Finitely presented algebras P/J and their ideals.

All ideal arithmetic is done on preimages in the polynomial ring P, so an
ideal I of P/J is stored by generators and its Gröbner basis is that of
I + J.
"""

from __future__ import annotations

import math
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .groebner import LiftBasis, ModuleBasis, groebner, poly_to_vec, syzygies
from .poly import MonomialOrder, Poly, PolyRing

INFINITY = math.inf


class PresentedRing:
    """The quotient ``poly_ring / (relations)``.

    The Gröbner basis of the relation ideal is computed once, on first use.
    """

    def __init__(self, poly_ring: PolyRing, relations: Sequence[Poly] = ()):
        self.poly_ring = poly_ring
        self.relations = tuple(poly_ring(r) for r in relations if poly_ring(r))

    # --- basic structure
    @property
    def field(self):
        return self.poly_ring.field

    @property
    def names(self):
        return self.poly_ring.names

    @property
    def nvars(self):
        return self.poly_ring.nvars

    @property
    def gens(self):
        return self.poly_ring.gens

    def var(self, name: str) -> Poly:
        return self.poly_ring.var(name)

    @cached_property
    def relation_basis(self) -> ModuleBasis:
        return ModuleBasis([poly_to_vec(r) for r in self.relations], self.poly_ring)

    @cached_property
    def relation_gb(self) -> list[Poly]:
        return [_vec_poly(v, self.poly_ring) for v in self.relation_basis.vectors]

    def relation_vectors(self, rank: int) -> list[dict]:
        """J * e_i for i < rank, as module vectors."""
        out = []
        for g in self.relation_gb:
            for i in range(rank):
                out.append(poly_to_vec(g, i))
        return out

    def is_polynomial_ring(self) -> bool:
        return not self.relation_gb

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.relation_gb)

    def __call__(self, value) -> Poly:
        if isinstance(value, str):
            from .text import parse_poly

            return parse_poly(value, self)
        return self.reduce(self.poly_ring(value))

    def reduce(self, f: Poly) -> Poly:
        """Normal form modulo the relations."""
        if not self.relations:
            return f
        return _vec_poly(self.relation_basis.reduce(poly_to_vec(f)), self.poly_ring)

    def is_zero(self, f: Poly) -> bool:
        return not self.reduce(f)

    def equal(self, f: Poly, g: Poly) -> bool:
        return self.is_zero(f - g)

    def ideal(self, gens: Iterable) -> "Ideal":
        return Ideal(self, gens)

    def zero_ideal(self) -> "Ideal":
        return Ideal(self, [])

    def unit_ideal(self) -> "Ideal":
        return Ideal(self, [self.poly_ring.one()])

    def extend(self, names: Sequence[str]) -> "PresentedRing":
        """R[t1,...]: the same relations in a ring with extra variables."""
        P = PolyRing(self.field, self.names + tuple(names), "grevlex")
        return PresentedRing(P, [r.change_ring(P) for r in self.relations])

    def quotient(self, ideal_gens: Iterable[Poly]) -> "PresentedRing":
        return PresentedRing(self.poly_ring, list(self.relations) + [self.poly_ring(g) for g in ideal_gens])

    @cached_property
    def dimension(self) -> int:
        return self.zero_ideal().dimension()

    def krull_dimension(self) -> int:
        return self.dimension

    @cached_property
    def minimal_primes(self) -> list["Ideal"]:
        return self.zero_ideal().minimal_primes()

    def __eq__(self, other):
        return (
            isinstance(other, PresentedRing)
            and self.poly_ring == other.poly_ring
            and [v for v in self.relation_basis.vectors] == [v for v in other.relation_basis.vectors]
        )

    def __hash__(self):
        return hash((self.poly_ring, len(self.relations)))

    def __str__(self):
        f = self.field
        s = f"{f!r}[{','.join(self.names)}]"
        if self.relations:
            s += "/(" + ", ".join(str(r) for r in self.relations) + ")"
        return s

    __repr__ = __str__


def _vec_poly(v: dict, P: PolyRing) -> Poly:
    return Poly(P, {e: c for (_, e), c in v.items()})


class Ideal:
    """A finitely generated ideal of a PresentedRing.

    Generators are stored reduced modulo the ring's relations; equality
    compares ideals, not generator lists.
    """

    def __init__(self, ring: PresentedRing, gens: Iterable):
        self.ring = ring
        P = ring.poly_ring
        out = []
        for g in gens:
            g = ring.reduce(P(g) if not isinstance(g, Poly) or g.ring != P else g)
            if g and g not in out:
                out.append(g)
        self.gens = tuple(out)

    # --- Gröbner data
    @cached_property
    def basis(self) -> ModuleBasis:
        vecs = [poly_to_vec(g) for g in self.gens] + [poly_to_vec(r) for r in self.ring.relation_gb]
        return ModuleBasis(vecs, self.ring.poly_ring)

    @cached_property
    def full_gb(self) -> list[Poly]:
        """Reduced Gröbner basis of the preimage I + J in the polynomial ring."""
        return [_vec_poly(v, self.ring.poly_ring) for v in self.basis.vectors]

    def groebner_basis(self) -> list[Poly]:
        """Reduced basis of I + J with the elements lying in J dropped."""
        return [g for g in self.full_gb if not self.ring.is_zero(g)]

    def normal_form(self, f) -> Poly:
        f = self.ring.poly_ring(f)
        return _vec_poly(self.basis.reduce(poly_to_vec(f)), self.ring.poly_ring)

    def contains(self, f) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f) -> bool:
        return self.contains(f)

    def is_unit(self) -> bool:
        return self.basis.is_unit_ideal()

    def is_zero(self) -> bool:
        return not self.gens

    def issubset(self, other: "Ideal") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __le__(self, other: "Ideal") -> bool:
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        if self.ring.poly_ring != other.ring.poly_ring:
            return False
        return self.basis.vectors == other.basis.vectors

    def __hash__(self):
        return hash(tuple(frozenset(v.items()) for v in self.basis.vectors))

    # --- arithmetic
    def __add__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(other.gens))

    def __mul__(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [a * b for a in self.gens for b in other.gens])

    def __pow__(self, n: int) -> "Ideal":
        result = self.ring.unit_ideal()
        for _ in range(n):
            result = result * self
        return result

    def add(self, *elements) -> "Ideal":
        return Ideal(self.ring, self.gens + tuple(self.ring.poly_ring(e) for e in elements))

    def colon(self, f) -> "Ideal":
        """(I : f), from syzygies of f modulo I + J."""
        P = self.ring.poly_ring
        f = self.ring.reduce(P(f))
        rels = [poly_to_vec(g) for g in self.full_gb]
        syz = syzygies([poly_to_vec(f)], 1, P, rels)
        return Ideal(self.ring, [_vec_poly(v, P) for v in syz])

    def colon_ideal(self, other: "Ideal") -> "Ideal":
        """(I : K) = {f : f K ⊆ I}."""
        if not other.gens:
            return self.ring.unit_ideal()
        P = self.ring.poly_ring
        m = len(other.gens)
        v = {}
        for i, g in enumerate(other.gens):
            for e, c in g.terms.items():
                v[(i, e)] = c
        rels = [poly_to_vec(g, i) for g in self.full_gb for i in range(m)]
        syz = syzygies([v], m, P, rels)
        return Ideal(self.ring, [_vec_poly(s, P) for s in syz])

    def intersect(self, other: "Ideal") -> "Ideal":
        P = self.ring.poly_ring
        one = P.field.one
        z = P.zero_exp
        v = {(0, z): one, (1, z): one}
        rels = [poly_to_vec(g, 0) for g in self.full_gb] + [poly_to_vec(g, 1) for g in other.full_gb]
        syz = syzygies([v], 2, P, rels)
        return Ideal(self.ring, [_vec_poly(s, P) for s in syz])

    def saturate(self, f, max_rounds: int = 64) -> "Ideal":
        """(I : f^∞)."""
        cur = self
        for _ in range(max_rounds):
            nxt = cur.colon(f)
            if nxt == cur:
                return cur
            cur = nxt
        raise RuntimeError("saturation did not stabilise")

    def eliminate(self, names: Sequence[str]) -> list[Poly]:
        """Generators of (I + J) ∩ k[remaining variables], in the original ring."""
        P = self.ring.poly_ring
        elim = [n for n in P.names if n in names]
        keep = [n for n in P.names if n not in names]
        Q = PolyRing(P.field, elim + keep, MonomialOrder("block", [(len(elim), "grevlex"), (len(keep), "grevlex")]))
        vecs = [poly_to_vec(g.change_ring(Q)) for g in self.full_gb]
        gb = groebner(vecs, Q)
        out = []
        nel = len(elim)
        for v in gb:
            if all(not any(e[:nel]) for (_, e) in v):
                out.append(_vec_poly(v, Q).change_ring(P))
        return out

    def radical_contains(self, f, max_power: int = 32) -> bool:
        """f ∈ √I via the Rabinowitsch trick."""
        P = self.ring.poly_ring
        t = "_rab"
        while t in P.names:
            t += "_"
        Q = PolyRing(P.field, P.names + (t,), "grevlex")
        T = Q.var(t)
        gens = [g.change_ring(Q) for g in self.full_gb] + [Q.one() - T * P(f).change_ring(Q)]
        return ModuleBasis([poly_to_vec(g) for g in gens], Q).is_unit_ideal()

    # --- dimension theory
    def leading_monomials(self) -> list[tuple]:
        return [lt[1] for lt in self.basis.leads()]

    def independent_sets(self) -> list[tuple[int, ...]]:
        """Maximal-size sets of variables independent modulo the leading-term ideal."""
        if self.is_unit():
            return []
        lms = self.leading_monomials()
        n = self.ring.nvars
        supports = [frozenset(i for i, a in enumerate(m) if a) for m in lms]
        for size in range(n, -1, -1):
            found = []
            for U in combinations(range(n), size):
                Us = set(U)
                if not any(s <= Us for s in supports):
                    found.append(U)
            if found:
                return found
        return []

    def dimension(self) -> int:
        """Krull dimension of R/I; -1 for the unit ideal."""
        sets = self.independent_sets()
        if not sets:
            return -1
        return len(sets[0])

    def minimal_primes(self) -> list["Ideal"]:
        from .primes import minimal_primes

        return minimal_primes(self)

    def height(self):
        from .primes import height

        return height(self)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.gens)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.gens) + ")"

    __repr__ = __str__


def lift_in_ideal(ideal: Ideal, f: Poly):
    """Coefficients c with f = sum c_i gens_i mod J, or None if f is not in the ideal."""
    P = ideal.ring.poly_ring
    lb = LiftBasis([poly_to_vec(g) for g in ideal.gens], 1, P, [poly_to_vec(r) for r in ideal.ring.relation_gb])
    c = lb.lift(poly_to_vec(f))
    if c is None:
        return None
    from .groebner import vec_to_polys

    return vec_to_polys(c, P, len(ideal.gens))
