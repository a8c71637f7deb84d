"""Grade computations: Koszul route, Ext route, vanishing profiles.

``p_grade`` counts how many Koszul homology modules vanish from the top
down.  ``classical_grade`` finds the first nonvanishing Ext^i(R/I, M) from
a free resolution; on Noetherian input the two must agree, which makes each
an oracle for the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

from .algebra.poly import Poly
from .algebra.ring import Ideal, PresentedRing
from .complexes import (
    HomologyCertificate,
    ModulePresentation,
    ext_is_zero,
    free_resolution,
    koszul,
)

INFINITY = math.inf


@dataclass
class GradeValue:
    value: float  # int, or math.inf
    route: str
    certificates: list = field(default_factory=list)

    @property
    def is_infinite(self) -> bool:
        return self.value == INFINITY

    def __eq__(self, other):
        if isinstance(other, GradeValue):
            return self.value == other.value
        return self.value == other

    def __hash__(self):
        return hash(self.value)

    def __int__(self):
        if self.is_infinite:
            raise OverflowError("infinite grade")
        return int(self.value)

    def __repr__(self):
        v = "inf" if self.is_infinite else str(self.value)
        return f"GradeValue({v}, {self.route})"


def format_grade(value) -> object:
    """Integers stay integers; infinity becomes the string "infinity"."""
    v = value.value if isinstance(value, GradeValue) else value
    return "infinity" if v == INFINITY else int(v)


def _module(ring, module):
    return module if module is not None else ModulePresentation.free(ring)


def p_grade(ring: PresentedRing, seq: Sequence[Poly], module: ModulePresentation | None = None,
            at_prime: Ideal | None = None) -> GradeValue:
    """sup{k : H_{ℓ-i}(x; M) = 0 for i < k}, or infinity when every H_i vanishes.

    With ``at_prime`` the homology is tested after localising at that prime.
    """
    M = _module(ring, module)
    K = koszul(ring, seq, M)
    ell = K.ell
    k = 0
    certs: list = []
    for j in range(ell, -1, -1):
        if at_prime is None:
            c = K.homology_is_zero(j)
            certs.append(c)
            ok = c.vanishes
        else:
            ok, z, ann = K.homology_vanishes_at(j, at_prime)
            certs.append({"degree": j, "vanishes": ok, "cycle": z, "annihilator": ann})
        if not ok:
            break
        k += 1
    if k == ell + 1:
        return GradeValue(INFINITY, "koszul", certs)
    return GradeValue(k, "koszul", certs)


def koszul_witness(grade: GradeValue) -> HomologyCertificate | dict | None:
    """The first nonvanishing homology certificate behind a finite grade."""
    for c in grade.certificates:
        vanishes = c.vanishes if isinstance(c, HomologyCertificate) else c["vanishes"]
        if not vanishes:
            return c
    return None


def classical_grade(ideal: Ideal, module: ModulePresentation | None = None) -> GradeValue:
    """Least i with Ext^i(R/I, M) != 0."""
    R = ideal.ring
    M = _module(R, module)
    if M.ideal_times(ideal.gens).is_zero():
        return GradeValue(INFINITY, "ext")
    # grade(I, M) <= number of generators
    top = len(ideal.gens) + 1
    res = free_resolution(ModulePresentation.quotient(R, ideal.gens), max_length=top + 1)
    certs = []
    for i in range(0, top + 1):
        c = ext_is_zero(i, ideal, M, resolution=res)
        certs.append(c)
        if not c.vanishes:
            return GradeValue(i, "ext", certs)
    raise RuntimeError("no nonvanishing Ext found below the generator bound")


@dataclass
class VanishingProfile:
    """Verdicts for H^i_x(M), 0 <= i <= ℓ: "vanishes", "nonzero" or "undetermined"."""

    length: int
    grade: GradeValue
    verdicts: list

    def at(self, i: int) -> str:
        if i < 0 or i > self.length:
            return "vanishes"
        return self.verdicts[i]


def cech_vanishing_profile(ring: PresentedRing, seq: Sequence[Poly],
                           module: ModulePresentation | None = None) -> VanishingProfile:
    g = p_grade(ring, seq, module)
    ell = len(seq)
    out = []
    for i in range(ell + 1):
        if g.is_infinite or i < g.value:
            out.append("vanishes")
        elif i == g.value:
            out.append("nonzero")
        else:
            out.append("undetermined")
    return VanishingProfile(ell, g, out)


def hochster_element(ring: PresentedRing, seq: Sequence[Poly], var: str = "t"):
    """x_1 + x_2 t + ... + x_ℓ t^(ℓ-1) in R[t]; returns (R[t], element)."""
    if not seq:
        raise ValueError("need a nonempty sequence")
    while var in ring.names:
        var += "_"
    Rt = ring.extend([var])
    P = Rt.poly_ring
    t = P.var(var)
    f = P.zero()
    for k, x in enumerate(seq):
        f = f + ring.poly_ring(x).change_ring(P) * t ** k
    return Rt, Rt.reduce(f)


@dataclass
class HochsterCheck:
    annihilator_zero: bool
    element_is_nzd: bool
    element: Poly

    @property
    def consistent(self) -> bool:
        return self.annihilator_zero == self.element_is_nzd


def hochster_test(ring: PresentedRing, seq: Sequence[Poly]) -> HochsterCheck:
    """Compare (0 : I) = 0 with the element of R[t] being a non-zero-divisor."""
    I = ring.ideal(seq)
    ann = ring.zero_ideal().colon_ideal(I)
    Rt, f = hochster_element(ring, seq)
    nzd = Rt.zero_ideal().colon(f).is_zero()
    return HochsterCheck(ann == ring.zero_ideal(), nzd, f)


def p_depth(ring: PresentedRing, maximal: Sequence[Poly], module: ModulePresentation | None = None,
            local: bool = False) -> GradeValue:
    """p_grade of the maximal ideal; ``local`` localises at it first."""
    m = ring.ideal(maximal)
    return p_grade(ring, list(m.gens), module, at_prime=m if local else None)
