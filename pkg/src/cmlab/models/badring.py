"""The ring Q[x, y_1, y_2, ...]/(x y_1, x^2 y_2, ...) and its truncations.

In the limit ring (0 : x^n) ⊇ (y_1, ..., y_n) never stabilises, so x is not
weakly proregular: H_1(x^m) = (0 : x^m) contains y_m, and the map to
H_1(x) is multiplication by x^(m-1), sending y_m to x^(m-1) y_m != 0.
A truncation at level N only sees the chain up to n = N.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra.field import QQ
from ..algebra.poly import PolyRing
from ..algebra.ring import Ideal, PresentedRing
from ..sequences import ParameterVerdict, RegularVerdict, RingAdapter, WPRVerdict

COLON_OBSTRUCTION = "non-stabilising-colon-chain"


def truncated_bad_ring(N: int) -> PresentedRing:
    if N < 1:
        raise ValueError("N must be at least 1")
    names = ["x"] + [f"y{k}" for k in range(1, N + 1)]
    P = PolyRing(QQ, names, "grevlex")
    x = P.var("x")
    return PresentedRing(P, [x ** k * P.var(f"y{k}") for k in range(1, N + 1)])


@dataclass
class ColonStep:
    n: int
    colon: Ideal
    expected: bool  # equals (y_1..y_n) + (x^(k-n) y_k : k > n)
    witness: str | None  # y_{n+1} in (0:x^{n+1}) but not in (0:x^n)
    strict: bool


@dataclass
class ColonChain:
    N: int
    steps: list

    @property
    def strictly_increasing_below_N(self) -> bool:
        return all(s.strict for s in self.steps if s.n < self.N)

    @property
    def stabilises_at_N(self) -> bool:
        return not self.steps[-1].strict

    def to_json(self):
        return {
            "N": self.N,
            "strictly_increasing_below_N": self.strictly_increasing_below_N,
            "stabilises_at_N": self.stabilises_at_N,
            "steps": [
                {"n": s.n, "colon": str(s.colon), "expected": s.expected, "strict": s.strict, "witness": s.witness}
                for s in self.steps
            ],
        }


def bad_colon_chain(N: int) -> ColonChain:
    """(0 : x^n) in the level-N truncation for n = 1..N, with growth witnesses."""
    if N < 2:
        raise ValueError("N must be at least 2")
    R = truncated_bad_ring(N)
    x = R.var("x")
    zero = R.zero_ideal()
    colons = [zero.colon(x ** n) for n in range(1, N + 2)]
    steps = []
    for n in range(1, N + 1):
        C, D = colons[n - 1], colons[n]
        # y_k for k <= n, and x^(k-n) y_k for n < k <= N
        expected = C == R.ideal([x ** max(k - n, 0) * R.var(f"y{k}") for k in range(1, N + 1)])
        strict = not D.issubset(C)
        witness = None
        if strict and n < N:
            y = R.var(f"y{n + 1}")
            if D.contains(y) and not C.contains(y):
                witness = f"y{n + 1}"
        steps.append(ColonStep(n, C, expected, witness, strict))
    return ColonChain(N, steps)


class BadRingLimit(RingAdapter):
    """The limit ring, queried through truncations large enough for each question.

    Only sequences consisting of a single power of x are supported; they
    are the ones the ring is built to obstruct.
    """

    noetherian = False

    def __init__(self, N: int = 3):
        self.N = N
        self.name = f"badring(N={N})"
        self.ring = truncated_bad_ring(N)

    def element(self, value):
        return self.ring(value) if isinstance(value, str) else self.ring.reduce(value)

    def _x_power(self, seq) -> int:
        if len(seq) != 1:
            raise NotImplementedError("the limit ring answers questions about a single power of x")
        f = seq[0]
        x = self.ring.var("x")
        for k in range(1, 64):
            if f == x ** k:
                return k
        raise NotImplementedError("the limit ring answers questions about a single power of x")

    def is_proper(self, seq) -> bool:
        self._x_power(list(seq))
        return True

    def height(self, seq):
        # (x) lies in the prime (x, y_1, y_2, ...) but every y_k sits in a
        # minimal prime over (x); the prime (x) itself is minimal over (x).
        self._x_power(list(seq))
        return 0

    def wpr_witness(self, m: int, n: int = 1) -> dict:
        """y_m ∈ (0 : x^m) with x^(m-n) y_m != 0 in the limit ring."""
        R = truncated_bad_ring(max(m, 2))
        x, y = R.var("x"), R.var(f"y{m}")
        return {
            "m": m,
            "cycle": f"y{m}",
            "is_cycle": R.is_zero(x ** m * y),
            "image": f"x^{m - n}*y{m}",
            "image_nonzero": not R.is_zero(x ** (m - n) * y),
        }

    def weakly_proregular(self, seq, bound: int = 8) -> WPRVerdict:
        k = self._x_power(list(seq))
        # H_1(x^(k m)) -> H_1(x^k) is multiplication by x^(k(m-1)); y_{km} escapes
        checks = {m: self.wpr_witness(k * m, k) for m in range(2, bound + 1)}
        ok = all(c["is_cycle"] and c["image_nonzero"] for c in checks.values())
        if not ok:
            return WPRVerdict("verified-up-to-bound", None, frontier={m: False for m in checks})
        return WPRVerdict("counterexample", False, level=1, license=COLON_OBSTRUCTION,
                          detail="y_m lies in (0 : x^m) while x^(m-1) y_m != 0 for every m")

    def parameter(self, seq) -> ParameterVerdict:
        self._x_power(list(seq))
        return ParameterVerdict(False, "not weakly proregular: (0 : x^n) never stabilises", COLON_OBSTRUCTION, 0)

    def regular(self, seq) -> RegularVerdict:
        self._x_power(list(seq))
        return RegularVerdict(False, False, True, 1, "y1*x = 0 with y1 != 0", COLON_OBSTRUCTION)

    def p_grade(self, seq):
        from ..grade import GradeValue

        self._x_power(list(seq))
        return GradeValue(0, COLON_OBSTRUCTION, [{"annihilator": "y1"}])

    def violation_witness(self, seq, grade) -> str:
        return "y1 annihilates x"
