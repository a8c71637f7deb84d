"""Sparse multivariate polynomials over an exact field.

A polynomial is a dict mapping exponent tuples to nonzero coefficients,
wrapped in :class:`Poly` together with its :class:`PolyRing`.  Monomial
orders are realised as sort keys on exponent tuples.
"""

from __future__ import annotations

from functools import reduce
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .field import Field, QQ


class MonomialOrder:
    """lex, graded reverse lex, or a block product of those.

    ``blocks`` is a tuple of ``(size, kind)`` pairs; variables in earlier
    blocks dominate later ones, which makes block orders elimination orders.
    """

    __slots__ = ("kind", "blocks", "_cache", "key")

    def __init__(self, kind: str = "grevlex", blocks: Sequence[tuple[int, str]] | None = None):
        if kind not in ("lex", "grevlex", "block"):
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block":
            if not blocks:
                raise ValueError("block order needs blocks")
            for _, k in blocks:
                if k not in ("lex", "grevlex"):
                    raise ValueError(f"unknown block kind {k!r}")
            blocks = tuple((int(n), k) for n, k in blocks)
        else:
            blocks = None
        self.kind = kind
        self.blocks = blocks
        self._cache: dict = {}
        self.key = self._make_key()

    def _make_key(self):
        cache = self._cache
        if self.kind == "lex":
            def raw(e):
                return e
        elif self.kind == "grevlex":
            def raw(e):
                return (sum(e), tuple(-a for a in reversed(e)))
        else:
            spans = []
            start = 0
            for n, k in self.blocks:
                spans.append((start, start + n, k))
                start += n

            def raw(e):
                out = []
                for a, b, k in spans:
                    part = e[a:b]
                    if k == "lex":
                        out.append(part)
                    else:
                        out.append((sum(part), tuple(-x for x in reversed(part))))
                return tuple(out)

        def key(e):
            try:
                return cache[e]
            except KeyError:
                k = cache[e] = raw(e)
                return k

        return key

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.blocks) == (other.kind, other.blocks)

    def __hash__(self):
        return hash((self.kind, self.blocks))

    def __repr__(self):
        if self.kind == "block":
            return f"block{list(self.blocks)}"
        return self.kind


def as_order(order) -> MonomialOrder:
    if isinstance(order, MonomialOrder):
        return order
    return MonomialOrder(order)


def monomial_divides(a: tuple, b: tuple) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def monomial_lcm(a: tuple, b: tuple) -> tuple:
    return tuple(x if x > y else y for x, y in zip(a, b))


def monomial_mul(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def monomial_div(a: tuple, b: tuple) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


class PolyRing:
    """Polynomial ring ``field[names]`` with a fixed monomial order."""

    def __init__(self, field: Field, names: Sequence[str], order="grevlex"):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for n in names:
            if not n.isidentifier():
                raise ValueError(f"bad variable name {n!r}")
        self.field = field
        self.names = names
        self.nvars = len(names)
        self.order = as_order(order)
        if self.order.kind == "block" and sum(n for n, _ in self.order.blocks) != self.nvars:
            raise ValueError("block sizes must add up to the number of variables")
        self.zero_exp = (0,) * self.nvars
        self._index = {n: i for i, n in enumerate(names)}

    # construction helpers
    def __call__(self, value) -> "Poly":
        if isinstance(value, Poly):
            if value.ring == self:
                return value
            return value.change_ring(self)
        if isinstance(value, str):
            from .text import parse_poly

            return parse_poly(value, self)
        c = self.field(value)
        return Poly(self, {self.zero_exp: c} if c else {})

    @property
    def gens(self) -> tuple["Poly", ...]:
        one = self.field.one
        out = []
        for i in range(self.nvars):
            e = [0] * self.nvars
            e[i] = 1
            out.append(Poly(self, {tuple(e): one}))
        return tuple(out)

    def var(self, name: str) -> "Poly":
        return self.gens[self._index[name]]

    def index(self, name: str) -> int:
        return self._index[name]

    def monomial(self, exps: Sequence[int], coeff=1) -> "Poly":
        c = self.field(coeff)
        return Poly(self, {tuple(exps): c} if c else {})

    def from_dict(self, terms: dict) -> "Poly":
        return Poly(self, {e: c for e, c in terms.items() if c})

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.zero_exp: self.field.one})

    def exponents_of_degree(self, d: int) -> list[tuple]:
        """All exponent tuples of total degree d, largest first in this order."""
        out = []
        for combo in combinations_with_replacement(range(self.nvars), d):
            e = [0] * self.nvars
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
        out.sort(key=self.order.key, reverse=True)
        return out

    def with_order(self, order) -> "PolyRing":
        return PolyRing(self.field, self.names, order)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.field == other.field
            and self.names == other.names
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.field, self.names, self.order))

    def __repr__(self):
        return f"{self.field!r}[{','.join(self.names)}]"


class Poly:
    """An immutable polynomial.  ``terms`` must not be mutated."""

    __slots__ = ("ring", "terms", "_lm")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None

    # --- inspection
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.ring.zero_exp in self.terms)

    def constant_coeff(self):
        return self.terms.get(self.ring.zero_exp, self.ring.field.zero)

    def lm(self) -> tuple:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.order.key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def support(self) -> set[int]:
        """Indices of variables occurring in the polynomial."""
        out = set()
        for e in self.terms:
            out.update(i for i, a in enumerate(e) if a)
        return out

    def sorted_terms(self) -> list[tuple[tuple, object]]:
        key = self.ring.order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    # --- arithmetic
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.ring != self.ring:
                raise TypeError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        return self.ring(other)

    def __add__(self, other):
        other = self._coerce(other)
        add = self.ring.field.add
        d = dict(self.terms)
        for e, c in other.terms.items():
            s = add(d[e], c) if e in d else c
            if s:
                d[e] = s
            else:
                del d[e]
        return Poly(self.ring, d)

    __radd__ = __add__

    def __neg__(self):
        neg = self.ring.field.neg
        return Poly(self.ring, {e: neg(c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        sub = self.ring.field.sub
        neg = self.ring.field.neg
        d = dict(self.terms)
        for e, c in other.terms.items():
            s = sub(d[e], c) if e in d else neg(c)
            if s:
                d[e] = s
            else:
                del d[e]
        return Poly(self.ring, d)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = self.ring.field(other)
            if not c:
                return Poly(self.ring, {})
            mul = self.ring.field.mul
            return Poly(self.ring, {e: mul(a, c) for e, a in self.terms.items()})
        other = self._coerce(other)
        f = self.ring.field
        add, mul = f.add, f.mul
        d: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = mul(c1, c2)
                if e in d:
                    s = add(d[e], c)
                    if s:
                        d[e] = s
                    else:
                        del d[e]
                else:
                    d[e] = c
        return Poly(self.ring, d)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_term(self, exps: tuple, coeff) -> "Poly":
        mul = self.ring.field.mul
        return Poly(
            self.ring,
            {tuple(a + b for a, b in zip(e, exps)): mul(c, coeff) for e, c in self.terms.items()},
        )

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self * self.ring.field.inv(self.lc())

    def exact_div_monomial(self, exps: tuple) -> "Poly":
        return Poly(self.ring, {monomial_div(e, exps): c for e, c in self.terms.items()})

    # --- comparison
    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        try:
            return self.terms == self.ring(other).terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # --- substitution / ring change
    def evaluate(self, images: Sequence["Poly"]) -> "Poly":
        """Substitute ``images[i]`` (polys of one common ring) for variable i."""
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if not images:
            target = None
        else:
            target = images[0].ring
        if target is None:
            raise ValueError("cannot evaluate in a ring without variables")
        powers: list[dict[int, Poly]] = [{0: target.one(), 1: img} for img in images]

        def power(i, k):
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        total = target.zero()
        for e, c in self.terms.items():
            term = target(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            total = total + term
        return total

    def change_ring(self, ring: PolyRing) -> "Poly":
        """Reinterpret in a ring whose variable names include ours."""
        if ring.field != self.ring.field:
            raise TypeError("cannot change the coefficient field")
        idx = [ring.index(n) for n in self.ring.names]
        d = {}
        for e, c in self.terms.items():
            ne = [0] * ring.nvars
            for i, a in zip(idx, e):
                ne[i] = a
            d[tuple(ne)] = c
        return Poly(ring, d)

    # --- printing
    def __str__(self):
        if not self.terms:
            return "0"
        f = self.ring.field
        names = self.ring.names
        parts = []
        for e, c in self.sorted_terms():
            s = f.to_str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "*".join(
                n if a == 1 else f"{n}^{a}" for n, a in zip(names, e) if a
            )
            if mono:
                body = mono if s == "1" else f"{s}*{mono}"
            else:
                body = s
            parts.append((neg, body))
        out = ("-" if parts[0][0] else "") + parts[0][1]
        for neg, body in parts[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self):
        return f"Poly({self})"


def poly_sum(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    return reduce(lambda a, b: a + b, polys, ring.zero())


def poly_prod(polys: Iterable[Poly], ring: PolyRing) -> Poly:
    return reduce(lambda a, b: a * b, polys, ring.one())


def default_ring(names: str | Sequence[str], field: Field = QQ, order="grevlex"):
    """``default_ring("x,y")`` -> (R, x, y)."""
    if isinstance(names, str):
        names = [n.strip() for n in names.split(",") if n.strip()]
    R = PolyRing(field, names, order)
    return (R,) + R.gens
