"""Buchberger's algorithm for submodules of free modules P^r.

Vectors are dicts ``{(position, exponents): coeff}``.  Terms are compared
position-over-term: a lower position index is larger, ties broken by the
monomial order of the ring.  Ideals are the rank-one case.

Every reduction step is charged to the active :class:`Budget`; running out
raises :class:`BudgetExceeded` and the partial basis is attached to the
exception, never returned as if it were a Gröbner basis.
"""

from __future__ import annotations

import contextvars
import os
from contextlib import contextmanager
from dataclasses import dataclass, field

from .poly import Poly, PolyRing, monomial_divides

DEFAULT_BUDGET = 5_000_000


class BudgetExceeded(RuntimeError):
    """Reduction-step budget ran out.  ``partial`` is unusable as a basis."""

    def __init__(self, limit: int, partial=None):
        super().__init__(f"reduction-step budget of {limit} exceeded")
        self.limit = limit
        self.partial = partial


@dataclass
class Budget:
    limit: int = DEFAULT_BUDGET
    steps: int = 0

    def charge(self, n: int = 1):
        self.steps += n
        if self.steps > self.limit:
            raise BudgetExceeded(self.limit)


def default_budget_limit() -> int:
    env = os.environ.get("CMLAB_BUDGET")
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"CMLAB_BUDGET must be an integer, got {env!r}") from None
    return DEFAULT_BUDGET


_current: contextvars.ContextVar[Budget | None] = contextvars.ContextVar("cmlab_budget", default=None)


def current_budget() -> Budget:
    b = _current.get()
    if b is None:
        b = Budget(default_budget_limit())
        _current.set(b)
    return b


@contextmanager
def budget_scope(limit: int | None = None):
    """Run a block under a fresh budget; yields the Budget for inspection."""
    b = Budget(default_budget_limit() if limit is None else limit)
    token = _current.set(b)
    try:
        yield b
    finally:
        _current.reset(token)


# ---------------------------------------------------------------- vectors

def poly_to_vec(f: Poly, pos: int = 0) -> dict:
    return {(pos, e): c for e, c in f.terms.items()}


def vec_from_polys(polys, offset: int = 0) -> dict:
    v = {}
    for i, f in enumerate(polys):
        for e, c in f.terms.items():
            v[(offset + i, e)] = c
    return v


def vec_to_polys(v: dict, ring: PolyRing, rank: int, offset: int = 0) -> list[Poly]:
    parts: list[dict] = [{} for _ in range(rank)]
    for (p, e), c in v.items():
        parts[p - offset][e] = c
    return [Poly(ring, d) for d in parts]


class TermOrder:
    """Position-over-term order on module terms for a given ring."""

    def __init__(self, ring: PolyRing):
        self.ring = ring
        mkey = ring.order.key
        cache: dict = {}

        def key(t):
            try:
                return cache[t]
            except KeyError:
                k = cache[t] = (-t[0], mkey(t[1]))
                return k

        self.key = key

    def lead(self, v: dict):
        return max(v, key=self.key)


def _add_multiple(h: dict, v: dict, shift: tuple, factor, field) -> None:
    """h -= factor * x^shift * v, in place."""
    mul, sub = field.mul, field.sub
    neg = field.neg
    for (p, e), c in v.items():
        t = (p, tuple(a + b for a, b in zip(e, shift)))
        d = mul(factor, c)
        if t in h:
            s = sub(h[t], d)
            if s:
                h[t] = s
            else:
                del h[t]
        else:
            h[t] = neg(d)


@dataclass
class _Elem:
    lt: tuple  # (pos, exps)
    lc: object
    vec: dict


def reduce_vector(v: dict, basis: list[_Elem], order: TermOrder, field, budget: Budget | None = None, full: bool = True) -> dict:
    """Remainder of v on division by basis (full reduction unless full=False)."""
    if budget is None:
        budget = current_budget()
    key = order.key
    h = dict(v)
    rem: dict = {}
    inv, mul = field.inv, field.mul
    while h:
        t = max(h, key=key)
        c = h[t]
        pos, e = t
        for b in basis:
            bp, be = b.lt
            if bp == pos and monomial_divides(be, e):
                shift = tuple(x - y for x, y in zip(e, be))
                _add_multiple(h, b.vec, shift, mul(c, inv(b.lc)), field)
                budget.charge()
                break
        else:
            rem[t] = c
            del h[t]
            if not full:
                rem.update(h)
                break
    return rem


def _monic(v: dict, order: TermOrder, field) -> _Elem:
    lt = order.lead(v)
    c = v[lt]
    if c != field.one:
        ic = field.inv(c)
        mul = field.mul
        v = {t: mul(a, ic) for t, a in v.items()}
    return _Elem(lt, field.one, v)


def _lcm_exp(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


def _spoly(f: _Elem, g: _Elem, field) -> dict:
    l = _lcm_exp(f.lt[1], g.lt[1])
    sf = tuple(x - y for x, y in zip(l, f.lt[1]))
    sg = tuple(x - y for x, y in zip(l, g.lt[1]))
    h: dict = {}
    # f, g monic
    _add_multiple(h, f.vec, sf, field.neg(field.one), field)
    _add_multiple(h, g.vec, sg, field.one, field)
    return h


def groebner(vectors: list[dict], ring: PolyRing, budget: Budget | None = None) -> list[dict]:
    """Reduced Gröbner basis (monic, sorted ascending) of the module spanned."""
    if budget is None:
        budget = current_budget()
    field_ = ring.field
    order = TermOrder(ring)
    key = order.key
    ideal_mode = all(p == 0 for v in vectors for (p, _) in v)

    G: list[_Elem] = []
    pairs: set[tuple[int, int]] = set()

    def add(v: dict):
        el = _monic(v, order, field_)
        k = len(G)
        G.append(el)
        for i in range(k):
            if G[i].lt[0] == el.lt[0]:
                pairs.add((i, k))

    try:
        for v in vectors:
            if not v:
                continue
            r = reduce_vector(v, G, order, field_, budget)
            if r:
                add(r)

        def pair_key(ij):
            i, j = ij
            l = _lcm_exp(G[i].lt[1], G[j].lt[1])
            return (sum(l), key((G[i].lt[0], l)), i, j)

        while pairs:
            ij = min(pairs, key=pair_key)
            pairs.discard(ij)
            i, j = ij
            fi, fj = G[i], G[j]
            ei, ej = fi.lt[1], fj.lt[1]
            if ideal_mode and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
                continue
            l = _lcm_exp(ei, ej)
            pos = fi.lt[0]
            skip = False
            for k, gk in enumerate(G):
                if k == i or k == j or gk.lt[0] != pos:
                    continue
                if monomial_divides(gk.lt[1], l):
                    if (min(i, k), max(i, k)) not in pairs and (min(j, k), max(j, k)) not in pairs:
                        skip = True
                        break
            if skip:
                continue
            s = _spoly(fi, fj, field_)
            budget.charge()
            r = reduce_vector(s, G, order, field_, budget)
            if r:
                add(r)
    except BudgetExceeded as exc:
        exc.partial = [g.vec for g in G]
        raise

    # minimalise
    keep: list[_Elem] = []
    for idx, g in enumerate(G):
        dominated = False
        for jdx, h in enumerate(G):
            if jdx == idx or h.lt[0] != g.lt[0]:
                continue
            if monomial_divides(h.lt[1], g.lt[1]) and (h.lt[1] != g.lt[1] or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append(g)
    # interreduce tails
    out: list[_Elem] = []
    for idx, g in enumerate(keep):
        others = keep[:idx] + keep[idx + 1:]
        tail = dict(g.vec)
        del tail[g.lt]
        r = reduce_vector(tail, others, order, field_, budget)
        r[g.lt] = field_.one
        out.append(_Elem(g.lt, field_.one, r))
    out.sort(key=lambda el: key(el.lt))
    return [el.vec for el in out]


class ModuleBasis:
    """A reduced Gröbner basis with its order, ready for normal forms."""

    def __init__(self, vectors: list[dict], ring: PolyRing, budget: Budget | None = None):
        self.ring = ring
        self.order = TermOrder(ring)
        self.vectors = groebner(vectors, ring, budget)
        self._elems = [_Elem(self.order.lead(v), ring.field.one, v) for v in self.vectors]

    def leads(self) -> list[tuple]:
        return [e.lt for e in self._elems]

    def reduce(self, v: dict, budget: Budget | None = None) -> dict:
        return reduce_vector(v, self._elems, self.order, self.ring.field, budget)

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def is_unit_ideal(self) -> bool:
        z = self.ring.zero_exp
        return any(e.lt == (0, z) for e in self._elems)


def syzygies(gens: list[dict], rank: int, ring: PolyRing, relations: list[dict] = (), budget=None) -> list[dict]:
    """Generators of {c : sum c_i gens_i in span(relations)}, as vectors in P^len(gens)."""
    aug = []
    one = ring.field.one
    z = ring.zero_exp
    for i, g in enumerate(gens):
        v = dict(g)
        v[(rank + i, z)] = one
        aug.append(v)
    aug.extend(relations)
    G = groebner(aug, ring, budget)
    order = TermOrder(ring)
    out = []
    for v in G:
        if order.lead(v)[0] >= rank:
            out.append({(p - rank, e): c for (p, e), c in v.items()})
    return out


class LiftBasis:
    """Gröbner basis of the graph module {(sum c_i g_i, c)} for membership with certificates."""

    def __init__(self, gens: list[dict], rank: int, ring: PolyRing, relations: list[dict] = (), budget=None):
        self.ring = ring
        self.rank = rank
        self.ngens = len(gens)
        one = ring.field.one
        z = ring.zero_exp
        aug = []
        for i, g in enumerate(gens):
            v = dict(g)
            v[(rank + i, z)] = one
            aug.append(v)
        aug.extend(relations)
        self.basis = ModuleBasis(aug, ring, budget)

    def lift(self, v: dict, budget=None):
        """Coefficients c with v = sum c_i g_i modulo relations, or None."""
        r = self.basis.reduce(v, budget)
        if any(p < self.rank for (p, _) in r):
            return None
        neg = self.ring.field.neg
        return {(p - self.rank, e): neg(c) for (p, e), c in r.items()}

    def syzygies(self) -> list[dict]:
        r = self.rank
        return [
            {(p - r, e): c for (p, e), c in v.items()}
            for v, el in zip(self.basis.vectors, self.basis._elems)
            if el.lt[0] >= r
        ]
