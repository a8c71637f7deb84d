"""D = k + x·k[x,y] inside S = k[x,y], truncated at total degree B.

All subspaces involved (D, xyD, xyS) are spanned by monomials and
multiplication by x is injective on monomials, so colon ideals can be
decided one monomial at a time.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..algebra.field import QQ
from ..algebra.poly import Poly, PolyRing

S = PolyRing(QQ, ["x", "y"], "grevlex")
X, Y = S.var("x"), S.var("y")


def in_D(f: Poly) -> bool:
    """Every x-free monomial of f is constant."""
    return all(e[0] > 0 or e[1] == 0 for e in f.terms)


def in_xyD(f: Poly) -> bool:
    # xy·1 or xy·x^a y^b with a >= 1
    return all(e == (1, 1) or (e[0] >= 2 and e[1] >= 1) for e in f.terms)


def in_xyS(f: Poly) -> bool:
    return all(e[0] >= 1 and e[1] >= 1 for e in f.terms)


class SubringModel:
    def __init__(self, B: int = 8):
        if B < 4:
            raise ValueError("degree bound must be at least 4")
        self.B = B
        self.name = f"subring(B={B})"

    def monomials(self, max_degree: int):
        return [S.monomial(e) for d in range(max_degree + 1) for e in S.exponents_of_degree(d)]

    def D_monomials(self, max_degree: int):
        return [m for m in self.monomials(max_degree) if in_D(m)]

    def colon(self, f: Poly, max_degree: int):
        """Monomials m of D with deg m <= max_degree and f·m ∈ xyD."""
        return [m for m in self.D_monomials(max_degree) if in_xyD(f * m)]

    def random_element(self, rng: random.Random, degree: int | None = None) -> Poly:
        d = self.B // 2 if degree is None else degree
        f = S.zero()
        for m in self.D_monomials(d):
            if rng.random() < 0.5:
                f = f + m * rng.randint(-3, 3)
        return f


@dataclass
class ColonIdentityCertificate:
    B: int
    checks: dict = field(default_factory=dict)
    witness: str = "x*y^2"
    degrees: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(self.checks.values())

    def to_json(self):
        return {"B": self.B, "holds": self.holds, "witness": self.witness, "checks": self.checks,
                "degrees": {str(k): v for k, v in sorted(self.degrees.items())}}


def subring_colon_identities(B: int = 8) -> ColonIdentityCertificate:
    """(xyD : x) = xyS = (xyD : x^2) in each degree, with xy^2 as the witness."""
    M = SubringModel(B)
    cert = ColonIdentityCertificate(B)
    by_x_ok = by_x2_ok = True
    for d in range(B + 1):
        mons = [m for m in M.D_monomials(d) if m.degree() == d]
        xyS_d = {m.lm() for m in mons if in_xyS(m)}
        c1 = {m.lm() for m in mons if in_xyD(X * m)}
        c2 = {m.lm() for m in mons if in_xyD(X ** 2 * m)}
        cert.degrees[d] = {"xyS": len(xyS_d), "colon_x": len(c1), "colon_x2": len(c2)}
        by_x_ok &= c1 == xyS_d
        by_x2_ok &= c2 == xyS_d
    w = X * Y ** 2
    S_mons = M.monomials(B - 1)
    cert.checks = {
        "colon_x_equals_xyS": by_x_ok,
        "colon_x2_equals_xyS": by_x2_ok,
        "witness_in_D": in_D(w),
        "witness_in_xyS": in_xyS(w),
        "witness_not_in_xyD": not in_xyD(w),
        "witness_times_x_in_xyD": in_xyD(X * w),
        "m_kills_S_mod_D": all(in_D(X * m) for m in S_mons),
        "x_xyS_in_xyD": all(in_xyD(X * X * Y * m) for m in M.monomials(B - 3)),
    }
    return cert
