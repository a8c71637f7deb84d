"""Minimal primes and heights for small affine algebras.

Splitting strategy: factor Gröbner basis elements; when every element is
irreducible, pass to a maximal independent set U, saturate by the leading
coefficients in k[U] (giving the extension-contraction of the ideal from
k(U)[X]) and decompose the zero-dimensional part over k(U) with eliminants
and a primitive element.  Factorization is delegated to sympy.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

import sympy

from .groebner import groebner, poly_to_vec
from .poly import MonomialOrder, Poly, PolyRing

MAX_VARS = 6
MAX_DEGREE = 6


class UnsupportedInput(ValueError):
    """The input lies outside the class the algorithm is sound for."""


class FactorizationUnsupported(UnsupportedInput):
    pass


# ---------------------------------------------------------------- factorization

def _to_sympy(f: Poly):
    P = f.ring
    gens = sympy.symbols(" ".join(P.names) + " _", seq=True)[: P.nvars]
    p = P.field.characteristic
    if p:
        terms = {e: int(c) for e, c in f.terms.items()}
        return sympy.Poly.from_dict(terms, *gens, modulus=p)
    terms = {e: sympy.Rational(c.numerator, c.denominator) for e, c in f.terms.items()}
    return sympy.Poly.from_dict(terms, *gens, domain=sympy.QQ)


def _from_sympy(sp, P: PolyRing) -> Poly:
    d = {}
    p = P.field.characteristic
    for e, c in sp.terms():
        if p:
            d[tuple(e)] = int(c) % p
        else:
            c = sympy.Rational(c)
            d[tuple(e)] = Fraction(int(c.p), int(c.q))
    return Poly(P, {e: c for e, c in d.items() if c})


def factor(f: Poly) -> list[tuple[Poly, int]]:
    """Irreducible non-constant factors with multiplicities (monic, constants dropped)."""
    if f.is_constant():
        return []
    P = f.ring
    # pull out monomial content first; it is all GF(p) can do for several variables
    content = tuple(min(e[i] for e in f.terms) for i in range(P.nvars))
    out: list[tuple[Poly, int]] = []
    for i, a in enumerate(content):
        if a:
            out.append((P.gens[i], a))
    rest = f.exact_div_monomial(content)
    if rest.is_constant():
        return out
    support = rest.support()
    if P.field.characteristic and len(support) > 1:
        if rest.degree() == 1:
            out.append((rest.monic(), 1))
            return out
        raise FactorizationUnsupported(
            f"multivariate factorization over {P.field!r} is not available: {rest}"
        )
    _, facs = _to_sympy(rest).factor_list()
    for sp, m in facs:
        g = _from_sympy(sp, P)
        if not g.is_constant():
            out.append((g.monic(), m))
    return out


# ---------------------------------------------------------------- helpers

def _gb(polys, P: PolyRing) -> list[Poly]:
    vecs = groebner([poly_to_vec(f) for f in polys if f], P)
    return [Poly(P, {e: c for (_, e), c in v.items()}) for v in vecs]


def _is_unit(gb: list[Poly]) -> bool:
    return any(g.is_constant() and g for g in gb)


def _reduce(f: Poly, gb: list[Poly]) -> Poly:
    from .groebner import ModuleBasis

    mb = ModuleBasis([poly_to_vec(g) for g in gb], f.ring)
    return Poly(f.ring, {e: c for (_, e), c in mb.reduce(poly_to_vec(f)).items()})


class _PolyIdeal:
    """Ideal of a plain polynomial ring with a cached reduced basis."""

    def __init__(self, P: PolyRing, gens):
        self.P = P
        self.gb = _gb(list(gens), P)
        self.key = tuple(sorted((tuple(sorted(g.terms.items())) for g in self.gb)))

    def is_unit(self):
        return _is_unit(self.gb)

    def contains(self, f: Poly) -> bool:
        return not _reduce(f, self.gb)

    def contains_ideal(self, other: "_PolyIdeal") -> bool:
        return all(self.contains(g) for g in other.gb)

    def add(self, *fs) -> "_PolyIdeal":
        return _PolyIdeal(self.P, self.gb + list(fs))

    def independent_set(self) -> tuple[int, ...]:
        from itertools import combinations

        n = self.P.nvars
        sups = [frozenset(i for i, a in enumerate(g.lm()) if a) for g in self.gb]
        for size in range(n, -1, -1):
            for U in combinations(range(n), size):
                if not any(s <= set(U) for s in sups):
                    return U
        return ()

    def saturate(self, h: Poly) -> "_PolyIdeal":
        from .ring import Ideal, PresentedRing

        I = Ideal(PresentedRing(self.P), self.gb).saturate(h)
        return _PolyIdeal(self.P, I.full_gb)


def _block_ring(P: PolyRing, blocks: list[tuple[list[int], str]]) -> tuple[PolyRing, list[int]]:
    perm = [i for idx, _ in blocks for i in idx]
    names = [P.names[i] for i in perm]
    order = MonomialOrder("block", [(len(idx), kind) for idx, kind in blocks if idx])
    return PolyRing(P.field, names, order), perm


def _eliminant(J: _PolyIdeal, X: list[int], target: int, U: list[int]) -> Poly:
    """Generator over k(U) of J ∩ k[U][x_target], as an element of P."""
    P = J.P
    others = [i for i in X if i != target]
    Q, _ = _block_ring(P, [(others, "grevlex"), ([target], "lex"), (U, "grevlex")])
    gb = _gb([g.change_ring(Q) for g in J.gb], Q)
    t = Q.index(P.names[target])
    best = None
    for g in gb:
        lm = g.lm()
        if any(lm[i] for i in range(len(others))):
            continue
        if lm[t] and (best is None or lm[t] < best.lm()[t]):
            best = g
    if best is None:
        raise RuntimeError("ideal is not zero-dimensional over the independent set")
    return best.change_ring(P)


def _standard_count(J: _PolyIdeal, X: list[int], U: list[int]) -> int:
    """dim over k(U) of k(U)[X]/J."""
    P = J.P
    Q, _ = _block_ring(P, [(X, "grevlex"), (U, "grevlex")])
    gb = _gb([g.change_ring(Q) for g in J.gb], Q)
    nx = len(X)
    leads = [g.lm()[:nx] for g in gb]
    # every variable has a pure power among the leads (zero-dimensional)
    bounds = []
    for i in range(nx):
        pure = [m[i] for m in leads if m[i] and all(m[j] == 0 for j in range(nx) if j != i)]
        bounds.append(min(pure))
    from itertools import product

    count = 0
    for e in product(*(range(b) for b in bounds)):
        if not any(all(a <= b for a, b in zip(m, e)) for m in leads):
            count += 1
    return count


def _primitive_minpoly(J: _PolyIdeal, X: list[int], U: list[int], z: Poly) -> tuple[Poly, PolyRing, str]:
    P = J.P
    t = "_T"
    while t in P.names:
        t += "_"
    P2 = PolyRing(P.field, P.names + (t,), "grevlex")
    T = P2.var(t)
    ti = P2.nvars - 1
    Q, _ = _block_ring(P2, [(X, "grevlex"), ([ti], "lex"), (U, "grevlex")])
    gens = [g.change_ring(Q) for g in J.gb] + [(T - z.change_ring(P2)).change_ring(Q)]
    gb = _gb(gens, Q)
    tq = Q.index(t)
    nx = len(X)
    best = None
    for g in gb:
        lm = g.lm()
        if any(lm[:nx]):
            continue
        if lm[tq] and (best is None or lm[tq] < best.lm()[tq]):
            best = g
    return best.change_ring(P2), P2, t


# ---------------------------------------------------------------- decomposition

def _components(I: _PolyIdeal, rng: random.Random, depth: int = 0) -> list[_PolyIdeal]:
    """Primes whose intersection is the radical of I (possibly redundant)."""
    if depth > 60:
        raise RuntimeError("prime decomposition recursion too deep")
    if I.is_unit():
        return []
    P = I.P
    # cheap splitting on reducible basis elements
    for g in I.gb:
        facs = factor(g)
        if len(facs) > 1 or (facs and facs[0][1] > 1):
            out = []
            for h, _ in facs:
                out.extend(_components(I.add(h), rng, depth + 1))
            return out
    U = list(I.independent_set())
    X = [i for i in range(P.nvars) if i not in U]
    h = P.one()
    if U:
        Q, _ = _block_ring(P, [(X, "grevlex"), (U, "grevlex")])
        nx = len(X)
        lcs = []
        for g in _gb([g.change_ring(Q) for g in I.gb], Q):
            lx = g.lm()[:nx]
            c = Poly(Q, {e: a for e, a in g.terms.items() if e[:nx] == lx})
            c = c.exact_div_monomial(tuple(lx) + (0,) * (Q.nvars - nx))
            if not c.is_constant():
                lcs.append(c.change_ring(P))
        for c in lcs:
            h = h * c
    out: list[_PolyIdeal] = []
    J = I.saturate(h) if not h.is_constant() else I
    out.extend(_zero_dim_split(J, X, U, rng, depth))
    if not h.is_constant():
        out.extend(_components(I.add(h), rng, depth + 1))
    return out


def _zero_dim_split(J: _PolyIdeal, X: list[int], U: list[int], rng, depth) -> list[_PolyIdeal]:
    """Primes of J, where J is zero-dimensional over k(U) and saturated accordingly."""
    P = J.P
    if not X:
        return [J]
    for x in X:
        e = _eliminant(J, X, x, U)
        facs = factor(e)
        if len(facs) > 1 or facs[0][1] > 1:
            out = []
            for h, _ in facs:
                out.extend(_components(J.add(h), rng, depth + 1))
            return out
    D = _standard_count(J, X, U)
    if D == 1:
        return [J]
    candidates = [P.gens[i] for i in reversed(X)]
    for _ in range(12):
        candidates.append(sum((P.gens[i] * rng.randint(1, 30) for i in X), P.zero()))
    for z in candidates:
        mu, P2, t = _primitive_minpoly(J, X, U, z)
        ti = P2.index(t)
        if mu.degree_in(ti) != D:
            continue
        facs = factor(mu)
        if len(facs) == 1 and facs[0][1] == 1:
            return [J]
        out = []
        for h, _ in facs:
            # substitute T := z back into P
            images = list(P.gens) + [z]
            out.extend(_components(J.add(h.evaluate(images)), rng, depth + 1))
        return out
    raise RuntimeError("no separating linear form found")


def _minimalize(primes: list[_PolyIdeal]) -> list[_PolyIdeal]:
    uniq: dict = {}
    for p in primes:
        uniq.setdefault(p.key, p)
    ps = list(uniq.values())
    out = []
    for p in ps:
        if not any(q is not p and p.contains_ideal(q) and not q.contains_ideal(p) for q in ps):
            out.append(p)
    return out


def check_guard(ideal) -> None:
    R = ideal.ring
    if R.nvars > MAX_VARS:
        raise UnsupportedInput(f"minimal primes limited to {MAX_VARS} variables (ring has {R.nvars})")
    deg = max([g.degree() for g in ideal.gens + R.relations] or [0])
    if deg > MAX_DEGREE:
        raise UnsupportedInput(f"minimal primes limited to generator degree {MAX_DEGREE} (found {deg})")


def minimal_primes(ideal) -> list:
    """Minimal primes over ``ideal`` (an Ideal of a PresentedRing), sorted for determinism."""
    cached = getattr(ideal, "_minimal_primes", None)
    if cached is not None:
        return cached
    from .ring import Ideal

    check_guard(ideal)
    P = ideal.ring.poly_ring
    base = _PolyIdeal(P, ideal.full_gb)
    rng = random.Random(20240611)
    comps = _minimalize(_components(base, rng))
    result = [Ideal(ideal.ring, p.gb) for p in comps]
    result.sort(key=lambda q: (len(q.full_gb), [str(g) for g in q.full_gb]))
    ideal._minimal_primes = result
    return result


def height(ideal):
    """ht I; math.inf for the unit ideal.

    Uses ht p = max over minimal primes q ⊆ p of R of dim R/q - dim R/p, which
    is valid for affine algebras over a field.
    """
    if ideal.is_unit():
        return math.inf
    R = ideal.ring
    if R.is_polynomial_ring():
        return R.nvars - ideal.dimension()
    ring_primes = R.minimal_primes
    if len(ring_primes) == 1:
        return R.dimension - ideal.dimension()
    return min(prime_height(p) for p in minimal_primes(ideal))


def prime_height(p) -> int:
    R = p.ring
    if R.is_polynomial_ring():
        return R.nvars - p.dimension()
    dp = p.dimension()
    return max(q.dimension() - dp for q in R.minimal_primes if q.issubset(p))


def height_at(ideal, maximal):
    """Height of I R_m for a maximal ideal m: only minimal primes inside m count."""
    if not ideal.issubset(maximal):
        return math.inf
    return min(prime_height(p) for p in minimal_primes(ideal) if p.issubset(maximal))
