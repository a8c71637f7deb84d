"""Finite linear group actions, the Reynolds operator and invariant rings.

The invariant ring is presented degree by degree: Reynolds images of the
monomials of degree d span the degree-d invariants, and anything not
already produced by products of earlier generators becomes a new
generator.  Relations come from eliminating the ambient variables.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Sequence

from .algebra.poly import MonomialOrder, Poly, PolyRing
from .algebra.ring import PresentedRing

MAX_ORDER = 12
BEYOND_LENGTH_TWO = "beyond length-two guarantee"
FINITE_MODULE_NOTE = "finite group acting linearly: the ring is a finite module over its invariants"


class GroupError(ValueError):
    pass


class LinearGroupAction:
    """A finite matrix group acting on the variables of ``ring``.

    g sends x_i to sum_j g[i][j] x_j.
    """

    def __init__(self, ring: PolyRing, matrices: Sequence[Sequence[Sequence]]):
        F = ring.field
        n = ring.nvars
        self.ring = ring
        self.field = F
        mats = []
        for m in matrices:
            if len(m) != n or any(len(row) != n for row in m):
                raise GroupError(f"matrices must be {n}x{n}")
            t = tuple(tuple(F(c) for c in row) for row in m)
            if t not in mats:
                mats.append(t)
        ident = tuple(tuple(F.one if i == j else F.zero for j in range(n)) for i in range(n))
        if ident not in mats:
            raise GroupError("the identity matrix is missing")
        for a in mats:
            if _det(F, a) == F.zero:
                raise GroupError("singular matrix in the group")
            for b in mats:
                if _matmul(F, a, b) not in mats:
                    raise GroupError("the matrix list is not closed under multiplication")
        if len(mats) > MAX_ORDER:
            raise GroupError(f"groups of order above {MAX_ORDER} are not supported")
        if F.characteristic and len(mats) % F.characteristic == 0:
            raise GroupError("the group order is not a unit in the field")
        self.matrices = mats
        self.order = len(mats)
        self._images = [[_linear_form(ring, row) for row in g] for g in mats]

    def act(self, g_index: int, f: Poly) -> Poly:
        return f.evaluate(self._images[g_index])

    def orbit_sum(self, f: Poly) -> Poly:
        out = self.ring.zero()
        for k in range(self.order):
            out = out + self.act(k, f)
        return out

    def is_invariant(self, f: Poly) -> bool:
        return all(self.act(k, f) == f for k in range(self.order))


def _linear_form(ring: PolyRing, row) -> Poly:
    f = ring.zero()
    for j, c in enumerate(row):
        f = f + ring.var(ring.names[j]) * c
    return f


def _matmul(F, a, b):
    n = len(a)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            s = F.zero
            for k in range(n):
                s = F.add(s, F.mul(a[i][k], b[k][j]))
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def _det(F, m):
    a = [list(r) for r in m]
    n = len(a)
    d = F.one
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != F.zero), None)
        if p is None:
            return F.zero
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = F.neg(d)
        d = F.mul(d, a[c][c])
        inv = F.inv(a[c][c])
        for r in range(c + 1, n):
            f = F.mul(a[r][c], inv)
            for k in range(c, n):
                a[r][k] = F.sub(a[r][k], F.mul(f, a[c][k]))
    return d


def reynolds(f: Poly, G: LinearGroupAction) -> Poly:
    """(1/|G|) sum of g·f."""
    return G.orbit_sum(f) * G.field.inv(G.field(G.order))


# ---------------------------------------------------------------- presentation

def _echelon_reduce(f: Poly, pivots: dict) -> Poly:
    """Reduce f against monic pivots keyed by their leading monomial."""
    changed = True
    while f and changed:
        changed = False
        for e, _ in f.sorted_terms():
            p = pivots.get(e)
            if p is not None:
                f = f - p * f.terms[e]
                changed = True
                break
    return f


def _add_pivot(f: Poly, pivots: dict) -> Poly | None:
    f = _echelon_reduce(f, pivots)
    if not f:
        return None
    f = f.monic()
    pivots[f.lm()] = f
    return f


@dataclass
class InvariantPresentation:
    action: LinearGroupAction
    bound: int
    generators: list  # ambient polys
    names: list
    ring: PresentedRing  # k[A, B, ...]/relations
    incomplete: bool
    _lift_ring: PresentedRing = field(repr=False, default=None)

    @property
    def relations(self) -> list[Poly]:
        return list(self.ring.relations)

    def embed(self, r: Poly) -> Poly:
        """Image of an element of the presentation in the ambient ring."""
        r = self.ring.poly_ring(r)
        if not self.generators:
            return self.action.ring(r.constant_coeff())
        return r.evaluate(self.generators)

    def express(self, f: Poly) -> Poly | None:
        """Write an ambient invariant in the generators, or None if it is not in the subalgebra."""
        L = self._lift_ring
        nf = L.reduce(f.change_ring(L.poly_ring))
        ambient = set(range(self.action.ring.nvars))
        if any(e[i] for e in nf.terms for i in ambient):
            return None
        return self.ring.reduce(_restrict(nf, self.ring.poly_ring)) if self.names else self.ring(nf.constant_coeff())

    def retract(self, f: Poly) -> Poly:
        """ρ(f) as an element of the presentation."""
        r = self.express(reynolds(f, self.action))
        if r is None:
            raise RuntimeError("Reynolds image escapes the computed subalgebra; raise the degree bound")
        return r

    def describe(self) -> str:
        gens = ", ".join(f"{n} = {g}" for n, g in zip(self.names, self.generators))
        return f"{self.ring} with {gens}" if gens else str(self.ring)


def _generator_names(k: int, avoid) -> list[str]:
    out = []
    for i in range(26 * 26):
        name = chr(ord("A") + i % 26) + ("" if i < 26 else str(i // 26))
        if name not in avoid:
            out.append(name)
        if len(out) == k:
            return out
    raise ValueError("too many generators")


def fundamental_invariants(G: LinearGroupAction, bound: int) -> tuple[list[Poly], bool]:
    """Minimal homogeneous generators up to degree ``bound`` and an incompleteness flag."""
    P = G.ring
    gens: list[Poly] = []
    new_at_bound = False
    for d in range(1, bound + 1):
        pivots: dict = {}
        # products of earlier generators landing in degree d
        for p in _products_of_degree(gens, d):
            _add_pivot(p, pivots)
        fresh = []
        for e in P.exponents_of_degree(d):
            r = reynolds(P.monomial(e), G)
            if r:
                g = _add_pivot(r, pivots)
                if g is not None:
                    fresh.append(g)
        gens.extend(fresh)
        if d == bound and fresh:
            new_at_bound = True
    lex = PolyRing(P.field, P.names, "lex")
    gens.sort(key=lambda g: lex.order.key(g.change_ring(lex).lm()), reverse=True)
    return gens, new_at_bound and bound < G.order


def _products_of_degree(gens: list[Poly], d: int):
    degs = [g.degree() for g in gens]

    def rec(start, remaining, acc):
        if remaining == 0:
            yield acc
            return
        for i in range(start, len(gens)):
            if degs[i] <= remaining:
                yield from rec(i, remaining - degs[i], acc * gens[i])

    if gens:
        yield from rec(0, d, gens[0].ring.one())


def invariant_presentation(G: LinearGroupAction, degree_bound: int | None = None) -> InvariantPresentation:
    bound = G.order if degree_bound is None else degree_bound
    if bound < 1:
        raise ValueError("degree bound must be positive")
    P = G.ring
    gens, incomplete = fundamental_invariants(G, bound)
    names = _generator_names(len(gens), set(P.names))
    target = PolyRing(P.field, names, "grevlex") if names else None
    both = PolyRing(P.field, list(P.names) + names,
                    MonomialOrder("block", [(P.nvars, "grevlex"), (len(names), "grevlex")]) if names else "grevlex")
    links = [both.var(n) - g.change_ring(both) for n, g in zip(names, gens)]
    lift = PresentedRing(both, links)
    if names:
        ring = PresentedRing(target, _eliminate(lift, P.names, target))
    else:
        ring = PresentedRing(PolyRing(P.field, [], "grevlex"), [])
    return InvariantPresentation(G, bound, gens, names, ring, incomplete, lift)


def _eliminate(lift: PresentedRing, ambient_names, target: PolyRing) -> list[Poly]:
    I = lift.zero_ideal()
    out = []
    for g in I.full_gb:
        if all(e[i] == 0 for e in g.terms for i in range(len(ambient_names))):
            out.append(_restrict(g, target))
    return out


def _restrict(g: Poly, target: PolyRing) -> Poly:
    off = g.ring.nvars - target.nvars
    return target.from_dict({e[off:]: c for e, c in g.terms.items()})


# ---------------------------------------------------------------- checks

@dataclass
class RetractionCheck:
    samples: int
    retraction_law: bool  # ρ(e(r)) = r
    linear: bool  # ρ(r f) = r ρ(f)
    idempotent: bool
    nonzero_preserved: bool  # a nonzero invariant stays nonzero upstairs

    @property
    def holds(self) -> bool:
        return self.retraction_law and self.linear and self.idempotent and self.nonzero_preserved

    def to_json(self):
        return {
            "samples": self.samples,
            "retraction_law": self.retraction_law,
            "linear": self.linear,
            "idempotent": self.idempotent,
            "nonzero_preserved": self.nonzero_preserved,
        }


def random_poly(P: PolyRing, rng: random.Random, degree: int = 3, density: float = 0.4) -> Poly:
    f = P.zero()
    for d in range(degree + 1):
        for e in P.exponents_of_degree(d):
            if rng.random() < density:
                f = f + P.monomial(e) * rng.randint(-4, 4)
    return f


def check_retraction(pres: InvariantPresentation, samples: int = 10, seed: int = 0) -> RetractionCheck:
    rng = random.Random(seed)
    G = pres.action
    P = G.ring
    R = pres.ring
    law = lin = idem = nonzero = True
    for _ in range(samples):
        f = random_poly(P, rng)
        rf = reynolds(f, G)
        idem &= reynolds(rf, G) == rf
        if pres.names:
            r = random_poly(R.poly_ring, rng, degree=2)
            r = R.reduce(r)
        else:
            r = R.poly_ring(rng.randint(-3, 3))
        er = pres.embed(r)
        back = pres.express(er)
        law &= back is not None and R.equal(back, r)
        lin &= reynolds(er * f, G) == er * rf
        if r:
            nonzero &= bool(er)
    return RetractionCheck(samples, law, lin, idem, nonzero)


def kernel_matches(pres: InvariantPresentation, degree: int = 4) -> bool:
    """Every relation maps to zero, and no nonzero normal form of low degree does."""
    R = pres.ring
    if not pres.names:
        return True
    if any(pres.embed(r) for r in R.relations):
        return False
    Q = R.poly_ring
    for d in range(degree + 1):
        # standard monomials of one degree must map to independent polynomials
        std = [Q.monomial(e) for e in Q.exponents_of_degree(d) if R.reduce(Q.monomial(e)) == Q.monomial(e)]
        pivots: dict = {}
        for m in std:
            if _add_pivot(pres.embed(m), pivots) is None:
                return False
    return True


@dataclass
class InvariantScenario:
    presentation: InvariantPresentation
    verdict: object  # sequences.CMVerdict
    retraction: RetractionCheck
    kernel_ok: bool
    notes: list

    def to_json(self):
        return {
            "invariant_ring": str(self.presentation.ring),
            "generators": {n: str(g) for n, g in zip(self.presentation.names, self.presentation.generators)},
            "group_order": self.presentation.action.order,
            "degree_bound": self.presentation.bound,
            "incomplete": self.presentation.incomplete,
            "retraction": self.retraction.to_json(),
            "kernel_matches": self.kernel_ok,
            "cm": self.verdict.to_json(),
            "notes": self.notes,
        }


def invariant_cm_scenario(G: LinearGroupAction, pool, degree_bound: int | None = None,
                          samples: int = 10) -> InvariantScenario:
    """Present R^G and search ``pool`` (sequences of strings in A, B, ...) for a CM violation."""
    from .sequences import NoetherianAdapter, cohen_macaulay_verdict

    pres = invariant_presentation(G, degree_bound)
    notes = [FINITE_MODULE_NOTE]
    if G.ring.nvars > 2:
        notes.append(f"ambient dimension {G.ring.nvars} exceeds two")
    if pres.incomplete:
        notes.append("new generators appeared at the degree bound; the presentation may be incomplete")
    adapter = NoetherianAdapter(pres.ring)
    verdict = cohen_macaulay_verdict(adapter, pool, label=lambda seq: BEYOND_LENGTH_TWO if len(seq) > 2 else "")
    return InvariantScenario(pres, verdict, check_retraction(pres, samples), kernel_matches(pres), notes)
