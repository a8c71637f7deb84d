"""Sequence verdicts: weak proregularity, parameter, strong parameter, regular.

Verdicts are computed through a ``RingAdapter``, so the same code runs on
finitely presented algebras and on the model rings in ``cmlab.models``.
Each verdict records the rule that licensed it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence

from .algebra.poly import Poly
from .algebra.primes import height as ideal_height, height_at, minimal_primes
from .algebra.ring import Ideal, PresentedRing
from .grade import GradeValue, koszul_witness, p_grade as koszul_p_grade

INFINITY = math.inf

# licence tags carried into reports
NOETHERIAN_WPR = "noetherian-sequences-are-weakly-proregular"
HEIGHT_CRITERION = "noetherian-height-criterion"
SINGLE_ELEMENT = "single-element-colon-criterion"
GRADE_CRITERION = "full-grade-implies-parameter"


# ---------------------------------------------------------------- verdict records

@dataclass
class WPRVerdict:
    kind: str  # certified-noetherian | certified-by-model | verified-up-to-bound | counterexample
    holds: bool | None
    level: int | None = None
    frontier: dict | None = None
    license: str | None = None
    detail: str = ""

    def to_json(self):
        d = {"kind": self.kind, "holds": self.holds}
        if self.level is not None:
            d["level"] = self.level
        if self.frontier is not None:
            d["frontier"] = {str(k): v for k, v in sorted(self.frontier.items())}
        if self.license:
            d["license"] = self.license
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass
class ParameterVerdict:
    holds: bool
    reason: str
    license: str
    height: float | None = None

    def to_json(self):
        d = {"holds": self.holds, "reason": self.reason, "license": self.license}
        if self.height is not None:
            d["height"] = "infinity" if self.height == INFINITY else int(self.height)
        return d


@dataclass
class RegularVerdict:
    regular: bool  # regular and proper
    weakly_regular: bool  # every step passes, properness not required
    proper: bool
    failing_step: int | None = None
    witness: str | None = None
    license: str | None = None

    def to_json(self):
        d = {"regular": self.regular, "weakly_regular": self.weakly_regular, "proper": self.proper}
        if self.failing_step is not None:
            d["failing_step"] = self.failing_step
            d["witness"] = self.witness
        if self.license:
            d["license"] = self.license
        return d


# ---------------------------------------------------------------- adapters

class RingAdapter:
    """Capabilities a ring must expose for the sequence checkers.

    Subclasses document which answers are exact and which are bounded.
    """

    name = "ring"
    noetherian = False

    def element(self, value):
        raise NotImplementedError

    def fmt(self, x) -> str:
        return str(x)

    def is_proper(self, seq) -> bool:
        raise NotImplementedError

    def height(self, seq):
        raise NotImplementedError

    def p_grade(self, seq) -> GradeValue:
        raise NotImplementedError

    def weakly_proregular(self, seq, bound: int = 8) -> WPRVerdict:
        raise NotImplementedError

    def parameter(self, seq) -> ParameterVerdict:
        raise NotImplementedError

    def regular(self, seq) -> RegularVerdict:
        raise NotImplementedError

    def describe(self) -> str:
        return self.name


class NoetherianAdapter(RingAdapter):
    """A PresentedRing, optionally localised at a maximal ideal.

    Every capability is exact (Gröbner-decidable).  Heights use minimal
    primes and are therefore subject to their size guard.
    """

    noetherian = True

    def __init__(self, ring: PresentedRing, local_at: Sequence[Poly] | Ideal | None = None):
        self.ring = ring
        if local_at is not None and not isinstance(local_at, Ideal):
            local_at = ring.ideal(local_at)
        self.maximal = local_at
        self.name = str(ring) + (f" at {local_at}" if local_at is not None else "")
        self._height: dict = {}
        self._colon: dict = {}
        self._ideal: dict = {}

    # --- basics
    def element(self, value) -> Poly:
        return self.ring(value) if not isinstance(value, Poly) else self.ring.reduce(value)

    def ideal(self, seq) -> Ideal:
        key = frozenset(seq)
        if key not in self._ideal:
            self._ideal[key] = self.ring.ideal(list(seq))
        return self._ideal[key]

    def is_proper(self, seq) -> bool:
        I = self.ideal(seq)
        if self.maximal is not None:
            return I.issubset(self.maximal)
        return not I.is_unit()

    def height(self, seq):
        key = frozenset(seq)
        if key not in self._height:
            I = self.ideal(seq)
            if self.maximal is not None:
                self._height[key] = height_at(I, self.maximal)
            else:
                self._height[key] = ideal_height(I)
        return self._height[key]

    def p_grade(self, seq) -> GradeValue:
        return koszul_p_grade(self.ring, list(seq), at_prime=self.maximal)

    def weakly_proregular(self, seq, bound: int = 8) -> WPRVerdict:
        return WPRVerdict("certified-noetherian", True, license=NOETHERIAN_WPR)

    def parameter(self, seq) -> ParameterVerdict:
        seq = list(seq)
        if not self.is_proper(seq):
            return ParameterVerdict(False, "improper", HEIGHT_CRITERION, INFINITY)
        if not seq:
            return ParameterVerdict(True, "empty sequence", HEIGHT_CRITERION, 0)
        h = self.height(seq)
        if h == len(seq):
            return ParameterVerdict(True, f"height {h} equals length", HEIGHT_CRITERION, h)
        return ParameterVerdict(False, f"height {h} differs from length {len(seq)}", HEIGHT_CRITERION, h)

    # --- regularity
    def colon(self, prefix, x) -> Ideal:
        key = (frozenset(prefix), x)
        if key not in self._colon:
            self._colon[key] = self.ideal(prefix).colon(x)
        return self._colon[key]

    def _step_fails(self, prefix, x):
        """None if x is regular on R/(prefix) (after localisation), else a witness."""
        I = self.ideal(prefix)
        C = self.colon(prefix, x)
        for g in C.gens:
            if I.contains(g):
                continue
            if self.maximal is None:
                return g
            # (C/I)_m = 0 iff every generator is killed by something outside m
            if I.colon(g).issubset(self.maximal):
                return g
        return None

    def regular(self, seq) -> RegularVerdict:
        seq = list(seq)
        proper = self.is_proper(seq)
        for k in range(len(seq)):
            w = self._step_fails(seq[:k], seq[k])
            if w is not None:
                I = "(" + ", ".join(self.fmt(a) for a in seq[:k]) + ")" if k else "(0)"
                return RegularVerdict(False, False, proper, k + 1, f"({w})*({seq[k]}) lies in {I} but {w} does not")
        return RegularVerdict(proper, True, proper)


def as_adapter(obj) -> RingAdapter:
    if isinstance(obj, RingAdapter):
        return obj
    if isinstance(obj, PresentedRing):
        return NoetherianAdapter(obj)
    raise TypeError(f"cannot treat {obj!r} as a ring")


# ---------------------------------------------------------------- sequence operations

def is_weakly_proregular(adapter, seq, bound: int = 8) -> WPRVerdict:
    A = as_adapter(adapter)
    return A.weakly_proregular([A.element(x) for x in seq], bound)


def is_parameter_sequence(adapter, seq) -> ParameterVerdict:
    A = as_adapter(adapter)
    return A.parameter([A.element(x) for x in seq])


@dataclass
class StrongParameterTrace:
    holds: bool
    prefixes: list  # ParameterVerdict per prefix length 1..ℓ

    @property
    def first_failure(self) -> int | None:
        for k, v in enumerate(self.prefixes, 1):
            if not v.holds:
                return k
        return None

    def to_json(self):
        return {"holds": self.holds, "prefixes": [v.to_json() for v in self.prefixes]}


def is_strong_parameter_sequence(adapter, seq) -> StrongParameterTrace:
    A = as_adapter(adapter)
    seq = [A.element(x) for x in seq]
    trace = []
    for k in range(1, len(seq) + 1):
        v = A.parameter(seq[:k])
        trace.append(v)
        if not v.holds:
            return StrongParameterTrace(False, trace)
    return StrongParameterTrace(True, trace)


def is_regular_sequence(adapter, seq, module=None) -> RegularVerdict:
    A = as_adapter(adapter)
    seq = [A.element(x) for x in seq]
    if module is not None:
        if not isinstance(A, NoetherianAdapter) or A.maximal is not None:
            raise NotImplementedError("module coefficients need a global Noetherian adapter")
        return _regular_on_module(A.ring, seq, module)
    return A.regular(seq)


def _regular_on_module(ring: PresentedRing, seq, M) -> RegularVerdict:
    from .complexes import kernel, reduce_vector, submodule_basis

    P = ring.poly_ring
    t = M.rank
    for k in range(len(seq)):
        N = M.ideal_times(seq[:k]).relations
        x = seq[k]
        cols = [[x if a == b else P.zero() for b in range(t)] for a in range(t)]
        basis = submodule_basis(ring, N, t)
        for v in kernel(ring, cols, t, N):
            if any(reduce_vector(basis, v, t)):
                return RegularVerdict(False, False, not M.ideal_times(seq).is_zero(), k + 1, str([str(a) for a in v]))
    proper = not M.ideal_times(seq).is_zero()
    return RegularVerdict(proper, True, proper)


def single_element_parameter(adapter: NoetherianAdapter, x, bound: int = 8) -> ParameterVerdict:
    """Parameter test for one element: ht(x) >= 1 and (0 : x^n) stabilises."""
    A = adapter
    x = A.element(x)
    if not A.is_proper([x]):
        return ParameterVerdict(False, "improper", SINGLE_ELEMENT, INFINITY)
    h = A.height([x])
    if h < 1:
        return ParameterVerdict(False, "height 0", SINGLE_ELEMENT, h)
    zero = A.ring.zero_ideal()
    prev = zero.colon(x)
    for n in range(2, bound + 2):
        cur = zero.colon(x ** n)
        if cur == prev:
            return ParameterVerdict(True, f"height {h} and (0 : x^{n - 1}) = (0 : x^{n})", SINGLE_ELEMENT, h)
        prev = cur
    return ParameterVerdict(False, f"colon chain still growing at {bound}", SINGLE_ELEMENT, h)


def grade_criterion(adapter, seq) -> bool | None:
    """True when p-grade equals the length (which forces a parameter sequence); None otherwise."""
    A = as_adapter(adapter)
    seq = [A.element(x) for x in seq]
    g = A.p_grade(seq)
    return True if g.value == len(seq) else None


# ---------------------------------------------------------------- reports

@dataclass
class PrefixReport:
    length: int
    weakly_proregular: WPRVerdict
    parameter: ParameterVerdict
    p_grade: GradeValue | None = None

    def to_json(self):
        from .grade import format_grade

        d = {
            "length": self.length,
            "weakly_proregular": self.weakly_proregular.to_json(),
            "parameter": self.parameter.to_json(),
        }
        if self.p_grade is not None:
            d["p_grade"] = format_grade(self.p_grade)
        return d


@dataclass
class SequenceReport:
    sequence: list
    prefixes: list
    strong_parameter: bool
    regular: RegularVerdict

    def to_json(self):
        return {
            "sequence": self.sequence,
            "prefixes": [p.to_json() for p in self.prefixes],
            "strong_parameter": self.strong_parameter,
            "regular": self.regular.to_json(),
        }


def analyze_sequence(adapter, seq, bound: int = 8, with_grade: bool = True) -> SequenceReport:
    A = as_adapter(adapter)
    seq = [A.element(x) for x in seq]
    prefixes = []
    strong = True
    for k in range(1, len(seq) + 1):
        pre = seq[:k]
        w = A.weakly_proregular(pre, bound)
        par = A.parameter(pre)
        strong = strong and par.holds
        g = A.p_grade(pre) if with_grade else None
        prefixes.append(PrefixReport(k, w, par, g))
    return SequenceReport([A.fmt(x) for x in seq], prefixes, strong, A.regular(seq))


# ---------------------------------------------------------------- Cohen-Macaulay verdict

@dataclass
class PoolEntry:
    sequence: list
    status: str  # regular | violation | skipped | full-grade-not-regular
    reason: str = ""
    p_grade: object = None
    witness: object = None
    label: str = ""

    def to_json(self):
        from .grade import format_grade

        d = {"sequence": self.sequence, "status": self.status}
        if self.reason:
            d["reason"] = self.reason
        if self.p_grade is not None:
            d["p_grade"] = format_grade(self.p_grade)
        if self.witness is not None:
            d["witness"] = self.witness
        if self.label:
            d["label"] = self.label
        return d


@dataclass
class CMVerdict:
    violation_found: bool
    entries: list = field(default_factory=list)
    violation: PoolEntry | None = None

    @property
    def statement(self) -> str:
        if self.violation_found:
            return "violation found"
        return "no violation within pool"

    @property
    def checked(self) -> int:
        return sum(1 for e in self.entries if e.status != "skipped")

    def to_json(self, include_entries: bool = True):
        d = {
            "statement": self.statement,
            "violation_found": self.violation_found,
            "pool_size": len(self.entries),
            "strong_parameter_sequences": self.checked,
            "regular": sum(1 for e in self.entries if e.status == "regular"),
        }
        if self.violation is not None:
            d["violation"] = self.violation.to_json()
        if include_entries:
            d["entries"] = [e.to_json() for e in self.entries]
        return d


def _witness_text(cert) -> str | None:
    if cert is None:
        return None
    if isinstance(cert, dict):
        z = cert.get("cycle")
        return f"H_{cert['degree']} cycle {[str(a) for a in z]}" if z is not None else None
    return f"H_{cert.degree} cycle {[str(a) for a in cert.witness]}"


def cohen_macaulay_verdict(adapter, pool, label=None) -> CMVerdict:
    """Look for a strong parameter sequence in ``pool`` whose p-grade is below its length.

    Finding none is evidence only; the verdict never claims the ring is
    Cohen-Macaulay.  ``label(seq)`` may annotate entries.
    """
    A = as_adapter(adapter)
    out = CMVerdict(False)
    for raw in pool:
        seq = [A.element(x) for x in raw]
        names = [A.fmt(x) for x in seq]
        tag = label(seq) if label else ""
        sps = is_strong_parameter_sequence(A, seq)
        if not sps.holds:
            k = sps.first_failure
            out.entries.append(PoolEntry(names, "skipped", f"prefix of length {k} is not a parameter sequence: {sps.prefixes[k - 1].reason}", label=tag))
            continue
        reg = A.regular(seq)
        if reg.regular:
            out.entries.append(PoolEntry(names, "regular", p_grade=len(seq), label=tag))
            continue
        # find the shortest prefix with p-grade below its length
        entry = None
        for k in range(1, len(seq) + 1):
            g = A.p_grade(seq[:k])
            if g.value < k:
                wit = getattr(A, "violation_witness", None)
                text = wit(seq[:k], g) if wit else _witness_text(koszul_witness(g))
                entry = PoolEntry(names[:k], "violation", f"strong parameter sequence with p-grade {g.value} < {k}",
                                  p_grade=g, witness=text, label=tag)
                break
        if entry is None:
            entry = PoolEntry(names, "full-grade-not-regular",
                              f"fails regularity at step {reg.failing_step} in this order but has full p-grade",
                              p_grade=len(seq), witness=reg.witness, label=tag)
            out.entries.append(entry)
            continue
        out.entries.append(entry)
        if not out.violation_found:
            out.violation_found = True
            out.violation = entry
    return out


def enumerate_pool(elements: Sequence, max_length: int) -> list[list]:
    """Ordered sequences without repetition, by length then input order."""
    out = []
    for k in range(1, max_length + 1):
        out.extend(list(p) for p in permutations(elements, k))
    return out


# ---------------------------------------------------------------- probes

@dataclass
class UnmixednessResult:
    witness: Poly | None
    colon_height: object = None
    ideal_height: object = None
    tried: int = 0

    @property
    def found(self) -> bool:
        return self.witness is not None


def unmixedness_probe(adapter, ideal_gens, degree_bound: int = 2) -> UnmixednessResult:
    """Search monomials f ∉ I with ht(I : f) > ht I (an embedded-prime witness)."""
    A = as_adapter(adapter)
    if not isinstance(A, NoetherianAdapter):
        raise NotImplementedError("the probe needs a Noetherian adapter")
    R = A.ring
    gens = [A.element(g) for g in ideal_gens]
    I = R.ideal(gens)
    if not A.is_proper(gens):
        raise ValueError("improper input: the unit ideal has no associated primes")
    h = A.height(gens)
    P = R.poly_ring
    tried = 0
    for d in range(1, degree_bound + 1):
        for e in P.exponents_of_degree(d):
            f = R.reduce(P.monomial(e))
            if not f or I.contains(f):
                continue
            tried += 1
            C = I.colon(f)
            hc = A.height(list(C.gens)) if C.gens else 0
            if hc > h:
                return UnmixednessResult(f, hc, h, tried)
    return UnmixednessResult(None, None, h, tried)


@dataclass
class LocalPlan:
    prime: Ideal
    steps: list  # (k, holds) : x_k regular on (R/(x_1..x_{k-1}))_p

    @property
    def regular_here(self) -> bool:
        return all(ok for _, ok in self.steps)


def locality_reduction(adapter, seq) -> list[LocalPlan]:
    """Minimal primes over (x) with the localised colon checks at each."""
    A = as_adapter(adapter)
    if not isinstance(A, NoetherianAdapter):
        raise NotImplementedError("locality reduction needs a Noetherian adapter")
    seq = [A.element(x) for x in seq]
    I = A.ideal(seq)
    if I.is_unit():
        return []
    plans = []
    for p in minimal_primes(I):
        steps = []
        for k in range(len(seq)):
            prefix = A.ideal(seq[:k])
            C = A.colon(seq[:k], seq[k])
            ok = all(prefix.contains(g) or not prefix.colon(g).issubset(p) for g in C.gens)
            steps.append((k + 1, ok))
        plans.append(LocalPlan(p, steps))
    return plans
