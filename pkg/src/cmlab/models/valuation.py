"""A rank-two valuation domain realised inside Q(a, b).

v(f) = (ord_b f, ord_a of the lowest b-coefficient), compared
lexicographically.  V = {f : v(f) >= (0, 0)} has primes 0 ⊂ P ⊂ m with
P = {v >= (1, *)}.  The distinguished elements are u = b with v = (1, 0)
(a nonzero element of P) and w = a with v = (0, 1) (in m but not in P).

Elements carry their rational-function realisation so Koszul cycles and
boundaries are checked by literal algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ..algebra.field import QQ
from ..algebra.poly import Poly, PolyRing
from ..algebra.text import BinOp, Expr, Neg, Num, Pow, TokenStream, Var, parse_expr, tokenize
from ..grade import GradeValue
from ..sequences import ParameterVerdict, RegularVerdict, RingAdapter, WPRVerdict

INFINITY = math.inf
VALUE_CALCULUS = "valuation-value-calculus"
RADICAL_INVARIANCE = "valuation-principal-radical"

_P = PolyRing(QQ, ["a", "b"], "lex")


def _poly_value(f: Poly) -> tuple[int, int]:
    ob = min(e[1] for e in f.terms)
    oa = min(e[0] for e in f.terms if e[1] == ob)
    return (ob, oa)


class RationalFunction:
    """num/den with num, den in Q[a, b]; equality by cross multiplication."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = _P.one()
        if not den:
            raise ZeroDivisionError("zero denominator")
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RationalFunction":
        return cls(_P(c))

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def value(self) -> tuple[int, int]:
        if not self.num:
            raise ValueError("the zero element has no value")
        n, d = _poly_value(self.num), _poly_value(self.den)
        return (n[0] - d[0], n[1] - d[1])

    def _c(self, other):
        return other if isinstance(other, RationalFunction) else RationalFunction.const(other)

    def __add__(self, other):
        o = self._c(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._c(other))

    def __rsub__(self, other):
        return self._c(other) - self

    def __mul__(self, other):
        o = self._c(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._c(other)
        if not o.num:
            raise ZeroDivisionError("division by zero")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._c(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RationalFunction(self.den ** (-n), self.num ** (-n)) if self.num else 1 / 0
        return RationalFunction(self.num ** n, self.den ** n)

    def __eq__(self, other):
        o = self._c(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash(self.value()) if self.num else 0

    def __str__(self):
        n = _fmt(self.num)
        if self.den == _P.one():
            return n
        return f"({n})/({_fmt(self.den)})"

    __repr__ = __str__


def _fmt(f: Poly) -> str:
    # model names: b is u, a is w
    return str(f).replace("a", "w").replace("b", "u") if f else "0"


U = RationalFunction(_P.var("b"))
W = RationalFunction(_P.var("a"))


def value_geq(p: tuple, q: tuple) -> bool:
    return p >= q  # tuples compare lexicographically


class ValuationModel(RingAdapter):
    """Adapter for V.  Every answer is derived from values and is exact."""

    noetherian = False
    name = "valuation(rank=2)"
    height_license = VALUE_CALCULUS

    u = U
    w = W

    # --- elements
    def element(self, value) -> RationalFunction:
        if isinstance(value, RationalFunction):
            f = value
        elif isinstance(value, Expr):
            f = self._eval(value)
        elif isinstance(value, str):
            ts = TokenStream(tokenize(value))
            f = self._eval(parse_expr(ts))
        else:
            f = RationalFunction.const(value)
        if not self.member(f):
            raise ValueError(f"{f} is not in the valuation ring (value {f.value()})")
        return f

    def _eval(self, e: Expr) -> RationalFunction:
        if isinstance(e, Num):
            return RationalFunction.const(e.value)
        if isinstance(e, Var):
            if e.name == "u":
                return U
            if e.name == "w":
                return W
            raise KeyError(f"unknown element {e.name!r} (the model knows u and w)")
        if isinstance(e, Neg):
            return -self._eval(e.operand)
        if isinstance(e, Pow):
            return self._eval(e.base) ** e.exp
        if isinstance(e, BinOp):
            a, b = self._eval(e.left), self._eval(e.right)
            return {"+": a.__add__, "-": a.__sub__, "*": a.__mul__, "/": a.__truediv__}[e.op](b)
        raise TypeError(f"cannot evaluate {e}")

    def fmt(self, x) -> str:
        return str(x)

    @staticmethod
    def value(f: RationalFunction) -> tuple[int, int]:
        return f.value()

    @staticmethod
    def member(f: RationalFunction) -> bool:
        return f.is_zero() or f.value() >= (0, 0)

    @staticmethod
    def is_unit(f: RationalFunction) -> bool:
        return not f.is_zero() and f.value() == (0, 0)

    def divides(self, f, g) -> bool:
        """f | g in V."""
        if g.is_zero():
            return True
        if f.is_zero():
            return False
        return g.value() >= f.value()

    def ideal_generator(self, seq):
        """An element of least value; finitely generated ideals are principal."""
        nz = [x for x in seq if not x.is_zero()]
        if not nz:
            return None
        return min(nz, key=lambda x: x.value())

    def ideal_contains(self, seq, f) -> bool:
        g = self.ideal_generator(seq)
        if g is None:
            return f.is_zero()
        return self.divides(g, f)

    def colon(self, seq, f):
        """(I : f) as a generator (None for the zero ideal, 1 for the unit ideal)."""
        g = self.ideal_generator(seq)
        if f.is_zero():
            return RationalFunction.const(1)
        if g is None:
            return None
        if self.divides(f, g):
            return g / f
        return RationalFunction.const(1)

    # --- adapter interface
    def is_proper(self, seq) -> bool:
        g = self.ideal_generator(list(seq))
        return g is None or not self.is_unit(g)

    def height(self, seq):
        g = self.ideal_generator(list(seq))
        if g is None:
            return 0
        v = g.value()
        if v == (0, 0):
            return INFINITY
        return 1 if v[0] > 0 else 2

    def p_grade(self, seq) -> GradeValue:
        g = self.ideal_generator(list(seq))
        if g is None:
            return GradeValue(0, VALUE_CALCULUS)
        if self.is_unit(g):
            return GradeValue(INFINITY, VALUE_CALCULUS)
        # domain, ideal with the same radical as a principal ideal
        return GradeValue(1, VALUE_CALCULUS, [{"generator": str(g)}])

    def weakly_proregular(self, seq, bound: int = 8) -> WPRVerdict:
        seq = list(seq)
        if len(seq) == 0:
            return WPRVerdict("certified-by-model", True, license=VALUE_CALCULUS, detail="empty sequence")
        if len(seq) == 1:
            if seq[0].is_zero():
                return WPRVerdict("certified-by-model", True, license=VALUE_CALCULUS,
                                  detail="zero element: the map is multiplication by 0 once m > n")
            return WPRVerdict("certified-by-model", True, license=VALUE_CALCULUS, detail="domain: H_1 = 0")
        if len(seq) == 2 and all(not x.is_zero() for x in seq):
            levels = {}
            for n in range(1, min(bound, 3) + 1):
                cert = two_element_certificate(self, seq[0], seq[1], n)
                if not cert.check():
                    return WPRVerdict("verified-up-to-bound", None, frontier=levels, license=VALUE_CALCULUS,
                                      detail=f"boundary construction failed at n={n}")
                levels[n] = 2 * n
            return WPRVerdict("certified-by-model", True, frontier=levels, license=VALUE_CALCULUS,
                              detail="H_2 = 0 and H_1(x^2n) -> H_1(x^n) is zero via an explicit boundary")
        raise NotImplementedError("weak proregularity in the valuation model is decided for length <= 2 with nonzero entries")

    def parameter(self, seq) -> ParameterVerdict:
        seq = list(seq)
        h = self.height(seq)
        if not self.is_proper(seq):
            return ParameterVerdict(False, "improper", VALUE_CALCULUS, h)
        if not seq:
            return ParameterVerdict(True, "empty sequence", VALUE_CALCULUS, 0)
        if len(seq) == 1:
            if seq[0].is_zero():
                return ParameterVerdict(False, "height 0", VALUE_CALCULUS, 0)
            return ParameterVerdict(True, f"height {h} >= 1 and (0 : x^n) = 0 in a domain", VALUE_CALCULUS, h)
        g = self.ideal_generator(seq)
        gen = "0" if g is None else str(g)
        return ParameterVerdict(
            False,
            f"the ideal equals ({gen}); top Čech cohomology of a length-{len(seq)} sequence vanishes for a principal radical",
            RADICAL_INVARIANCE,
            h,
        )

    def regular(self, seq) -> RegularVerdict:
        seq = list(seq)
        proper = self.is_proper(seq)
        for k, x in enumerate(seq):
            prefix = seq[:k]
            g = self.ideal_generator(prefix)
            if g is None:
                if x.is_zero():
                    return RegularVerdict(False, False, proper, k + 1, "1 * 0 = 0 but 1 != 0", VALUE_CALCULUS)
                continue
            if self.is_unit(g) or self.is_unit(x):
                continue
            # x is a nonunit on V/gV: exhibit r not in gV with r x in gV
            if x.is_zero():
                r = RationalFunction.const(1)
            elif self.divides(x, g):
                r = g / x
            else:
                r = RationalFunction.const(1)
            return RegularVerdict(False, False, proper, k + 1, f"r = {r}: r*x_{k + 1} in the prefix ideal, r not", VALUE_CALCULUS)
        return RegularVerdict(proper, True, proper, license=VALUE_CALCULUS)


# ---------------------------------------------------------------- Koszul certificates

@dataclass
class TwoElementCertificate:
    """For K(x^2n, y^2n) -> K(x^n, y^n) on V, with v(x) >= v(y) after ordering.

    cycles of K(x^2n, y^2n) in degree 1 are V·(1, -beta), beta = x^2n / y^2n;
    the image (x^n, -beta y^n) equals alpha·(y^n, -x^n), alpha = x^n / y^n.
    """

    model: ValuationModel
    x: RationalFunction
    y: RationalFunction
    n: int
    swapped: bool
    beta: RationalFunction = field(init=False)
    alpha: RationalFunction = field(init=False)
    image: tuple = field(init=False)
    boundary: tuple = field(init=False)

    def __post_init__(self):
        n = self.n
        self.beta = self.x ** (2 * n) / self.y ** (2 * n)
        self.alpha = self.x ** n / self.y ** n
        self.image = (self.x ** n, -(self.beta * self.y ** n))
        self.boundary = (self.alpha * self.y ** n, -(self.alpha * self.x ** n))

    def checks(self) -> dict:
        n = self.n
        V = self.model
        x2, y2 = self.x ** (2 * n), self.y ** (2 * n)
        cycle = (RationalFunction.const(1), -self.beta)
        return {
            "H2_vanishes": not (self.y ** n).is_zero() and not (self.x ** n).is_zero(),
            "beta_in_V": V.member(self.beta),
            "generator_is_cycle": (cycle[0] * x2 + cycle[1] * y2).is_zero(),
            "cycles_generated": not y2.is_zero(),  # r x^2n + s y^2n = 0 forces s = -r*beta
            "alpha_in_V": V.member(self.alpha),
            "image_is_boundary": self.image[0] == self.boundary[0] and self.image[1] == self.boundary[1],
        }

    def check(self) -> bool:
        return all(self.checks().values())

    def to_json(self):
        return {
            "n": self.n,
            "beta": str(self.beta),
            "alpha": str(self.alpha),
            "image": [str(a) for a in self.image],
            "boundary": f"{self.alpha} * ({self.y}^{self.n}, -{self.x}^{self.n})",
            "checks": self.checks(),
        }


def two_element_certificate(model: ValuationModel, x, y, n: int) -> TwoElementCertificate:
    swapped = False
    if x.value() < y.value():
        x, y, swapped = y, x, True
    return TwoElementCertificate(model, x, y, n, swapped)


@dataclass
class ValuationPairBundle:
    weakly_proregular: bool
    height: int
    parameter: bool
    principal_certificate: dict
    levels: list

    @property
    def certificates_check(self) -> bool:
        return all(c.check() for c in self.levels) and all(self.principal_certificate["checks"].values())

    def to_json(self):
        return {
            "weakly_proregular": self.weakly_proregular,
            "height": self.height,
            "parameter": self.parameter,
            "certificates_check": self.certificates_check,
            "principal": self.principal_certificate,
            "levels": [c.to_json() for c in self.levels],
        }


def val_example37(n_max: int = 3) -> ValuationPairBundle:
    """The pair (u, w): weakly proregular, of height 2, not a parameter sequence."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    V = ValuationModel()
    u, w = V.u, V.w
    levels = [two_element_certificate(V, u, w, n) for n in range(1, n_max + 1)]
    q = u / w
    principal = {
        "quotient": str(q),
        "quotient_value": list(q.value()),
        "checks": {"quotient_in_V": V.member(q), "u_equals_quotient_times_w": q * w == u},
    }
    wpr = V.weakly_proregular([u, w], bound=n_max).holds is True and all(c.check() for c in levels)
    return ValuationPairBundle(
        weakly_proregular=wpr,
        height=V.height([u, w]),
        parameter=V.parameter([u, w]).holds,
        principal_certificate=principal,
        levels=levels,
    )


def val_value(f: RationalFunction) -> tuple[int, int]:
    if f.is_zero():
        raise ValueError("the zero element has no value")
    return f.value()


def val_member(f: RationalFunction) -> bool:
    return ValuationModel.member(f)


def val_colon(seq, f):
    """Generator of (I : f) in V; None stands for the zero ideal."""
    return ValuationModel().colon(list(seq), f)
