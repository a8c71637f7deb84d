"""Trivial extensions S = R_m x M_i with M_i the sum of residue fields k(p), ht p <= i.

M_i is an infinite direct sum and is never built.  Elements of S are
represented by their projection r = j(s) and stand for (r, 0); every query
is answered from the base ring by the transfer rules below.

* Spec S and Spec R correspond, so heights are computed on j(I).
* p-grade of I is 0 when ht I <= i (some k(p) with I ⊆ p sits inside the
  annihilator of I), otherwise it is the p-grade of j(I) over R_m.
* Parameter sequences on S are exactly those whose image is one on R_m.
* For elements (r, 0) the Koszul complex splits as K(r; R) ⊕ K(r; M); on
  each k(p) the r's act as units or as zero, so positive homology maps
  x^m -> x^n vanish once m > n, and R is Noetherian.  Hence every sequence
  is weakly proregular.
"""

from __future__ import annotations

import math

from ..algebra.poly import Poly
from ..algebra.primes import minimal_primes, prime_height
from ..algebra.ring import Ideal, PresentedRing
from ..grade import GradeValue
from ..sequences import (
    NoetherianAdapter,
    ParameterVerdict,
    RegularVerdict,
    RingAdapter,
    WPRVerdict,
)

INFINITY = math.inf

SPECTRUM = "trivial-extension-spectrum-correspondence"
GRADE_RULE = "trivial-extension-grade-rule"
PARAMETER_TRANSFER = "trivial-extension-parameter-transfer"
KOSZUL_SPLITTING = "trivial-extension-koszul-splitting"


class TrivialExtension(RingAdapter):
    noetherian = False
    height_license = SPECTRUM

    def __init__(self, base: PresentedRing, maximal, level: int):
        if level < 0:
            raise ValueError("level must be nonnegative")
        self.base = base
        self.local = NoetherianAdapter(base, maximal)
        self.maximal: Ideal = self.local.maximal
        self.level = level
        self.name = f"trivext({base} at {self.maximal}, level={level})"

    @property
    def dimension(self) -> int:
        return self.local.height(list(self.maximal.gens))

    def element(self, value) -> Poly:
        return self.local.element(value)

    def is_proper(self, seq) -> bool:
        return self.local.is_proper(seq)

    def height(self, seq):
        return self.local.height(seq)

    def low_prime(self, seq) -> Ideal | None:
        """A prime p ⊆ m over j(I) with ht p <= level, if any."""
        if not self.is_proper(seq):
            return None
        I = self.local.ideal(seq)
        for p in minimal_primes(I):
            if p.issubset(self.maximal) and prime_height(p) <= self.level:
                return p
        return None

    def p_grade(self, seq) -> GradeValue:
        seq = list(seq)
        if not self.is_proper(seq):
            return GradeValue(INFINITY, GRADE_RULE)
        h = self.height(seq)
        if h <= self.level:
            p = self.low_prime(seq)
            return GradeValue(0, GRADE_RULE, [{"prime": str(p), "height": h}])
        g = self.local.p_grade(seq)
        return GradeValue(g.value, GRADE_RULE, g.certificates)

    def p_depth(self) -> GradeValue:
        return self.p_grade(list(self.maximal.gens))

    def weakly_proregular(self, seq, bound: int = 8) -> WPRVerdict:
        return WPRVerdict("certified-by-model", True, license=KOSZUL_SPLITTING,
                          detail="Koszul complex splits over the base and the residue fields")

    def parameter(self, seq) -> ParameterVerdict:
        v = self.local.parameter(seq)
        return ParameterVerdict(v.holds, v.reason + " (image in the base)", PARAMETER_TRANSFER, v.height)

    def regular(self, seq) -> RegularVerdict:
        seq = list(seq)
        proper = self.is_proper(seq)
        for k in range(len(seq)):
            pre = seq[: k + 1]
            if proper and self.height(pre) <= self.level:
                p = self.low_prime(pre)
                return RegularVerdict(False, False, proper, k + 1,
                                      f"(0, 1 in k(p)) for p = {p} is killed by {seq[k]} and lies outside the prefix ideal",
                                      GRADE_RULE)
            w = self.local._step_fails(seq[:k], seq[k])
            if w is not None:
                return RegularVerdict(False, False, proper, k + 1, f"({w}, 0) in the colon but not in the prefix ideal",
                                      SPECTRUM)
        return RegularVerdict(proper, True, proper, license=SPECTRUM)

    def violation_witness(self, seq, grade: GradeValue) -> str:
        p = self.low_prime(seq)
        if p is not None:
            return f"(0, 1 in k(p)) with p = {p} is annihilated by the ideal, so H_{len(seq)}(x; S) != 0"
        return f"p-grade {grade.value} inherited from the base"


def tx_height(S: TrivialExtension, gens):
    return S.height([S.element(g) for g in gens])


def tx_p_grade(S: TrivialExtension, gens) -> GradeValue:
    return S.p_grade([S.element(g) for g in gens])


def tx_parameter(S: TrivialExtension, seq) -> bool:
    return S.parameter([S.element(x) for x in seq]).holds
