"""Finite complexes of finitely presented modules over a PresentedRing.

A complex is stored by its differentials d_i : F_i -> F_{i-1} (matrices of
ring elements) and, per degree, a list of relation vectors N_i so that the
i-th term is F_i / N_i.  Koszul complexes with coefficients in a presented
module fit this shape directly.

Homology is never materialised.  ``homology_is_zero`` returns either lifts
of every cycle generator into the boundaries or a cycle whose normal form
modulo the boundaries is nonzero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Sequence

from .algebra.groebner import LiftBasis, ModuleBasis, syzygies, vec_from_polys, vec_to_polys
from .algebra.poly import Poly
from .algebra.ring import Ideal, PresentedRing

Vector = list  # list[Poly]


class Matrix:
    """Dense matrix of polynomials; columns are the images of basis vectors."""

    def __init__(self, ring: PresentedRing, rows: Sequence[Sequence[Poly]], ncols: int | None = None):
        self.ring = ring
        P = ring.poly_ring
        self.rows = [[ring.reduce(P(a)) for a in r] for r in rows]
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else (ncols or 0)

    @classmethod
    def from_columns(cls, ring, cols: Sequence[Sequence[Poly]], nrows: int) -> "Matrix":
        rows = [[c[i] for c in cols] for i in range(nrows)]
        return cls(ring, rows, len(cols))

    @classmethod
    def zero(cls, ring, nrows, ncols):
        z = ring.poly_ring.zero()
        return cls(ring, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, ring, n):
        P = ring.poly_ring
        return cls(ring, [[P.one() if i == j else P.zero() for j in range(n)] for i in range(n)], n)

    def col(self, j) -> Vector:
        return [r[j] for r in self.rows]

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self.ncols)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.nrows}x{self.ncols} @ {other.nrows}x{other.ncols}")
        P = self.ring.poly_ring
        out = []
        for i in range(self.nrows):
            row = []
            for j in range(other.ncols):
                s = P.zero()
                for k in range(self.ncols):
                    a = self.rows[i][k]
                    if a:
                        b = other.rows[k][j]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(self.ring, out, other.ncols)

    def apply(self, v: Vector) -> Vector:
        P = self.ring.poly_ring
        out = []
        for r in self.rows:
            s = P.zero()
            for a, b in zip(r, v):
                if a and b:
                    s = s + a * b
            out.append(self.ring.reduce(s))
        return out

    def transpose(self) -> "Matrix":
        return Matrix.from_columns(self.ring, self.rows, self.ncols)

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def to_json(self):
        return [[str(a) for a in r] for r in self.rows]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __repr__(self):
        return f"Matrix({self.to_json()})"


# ---------------------------------------------------------------- submodule helpers

def _ring_relations(ring: PresentedRing, rank: int) -> list[dict]:
    return ring.relation_vectors(rank)


def _vecs(vectors: Sequence[Vector]) -> list[dict]:
    return [vec_from_polys(v) for v in vectors]


def submodule_basis(ring: PresentedRing, gens: Sequence[Vector], rank: int) -> ModuleBasis:
    """Gröbner basis of span(gens) + J·F inside F = P^rank."""
    return ModuleBasis(_vecs(gens) + _ring_relations(ring, rank), ring.poly_ring)


def reduce_vector(basis: ModuleBasis, v: Vector, rank: int) -> Vector:
    return vec_to_polys(basis.reduce(vec_from_polys(v)), basis.ring, rank)


def kernel(ring: PresentedRing, cols: Sequence[Vector], rank: int, relations: Sequence[Vector] = ()) -> list[Vector]:
    """Generators of {c : sum c_j cols_j ∈ span(relations) + J·F}, F of the given rank."""
    if not cols:
        return []
    rels = _vecs(relations) + _ring_relations(ring, rank)
    syz = syzygies(_vecs(cols), rank, ring.poly_ring, rels)
    out = []
    for s in syz:
        v = [ring.reduce(f) for f in vec_to_polys(s, ring.poly_ring, len(cols))]
        if any(v):
            out.append(v)
    return out


@dataclass
class SubmodulePresentation:
    """Generators of a submodule of R^rank together with their syzygies."""

    ring: PresentedRing
    rank: int
    generators: list
    syzygies: list = field(default_factory=list)

    @classmethod
    def of(cls, ring, gens, rank, relations=()):
        return cls(ring, rank, list(gens), kernel(ring, gens, rank, relations))

    def check(self, relations=()) -> bool:
        basis = submodule_basis(self.ring, list(relations), self.rank)
        P = self.ring.poly_ring
        for s in self.syzygies:
            total = [P.zero()] * self.rank
            for c, g in zip(s, self.generators):
                total = [a + c * b for a, b in zip(total, g)]
            if any(reduce_vector(basis, total, self.rank)):
                return False
        return True


# ---------------------------------------------------------------- homology

@dataclass
class HomologyCertificate:
    """Outcome of a vanishing test for H = ker(d_out) / (im(d_in) + N)."""

    degree: int
    vanishes: bool
    cycles: list
    lifts: list | None = None
    witness: list | None = None
    witness_normal_form: list | None = None
    # data needed to re-check
    d_in: Matrix | None = None
    d_out: Matrix | None = None
    rel_here: list = field(default_factory=list)
    rel_below: list = field(default_factory=list)
    rank: int = 0
    ring: PresentedRing | None = None

    def verify(self) -> bool:
        """Recheck the certificate with fresh reductions."""
        R = self.ring
        below = submodule_basis(R, self.rel_below, self.d_out.nrows) if self.d_out is not None else None
        for z in self.cycles:
            if self.d_out is not None and any(reduce_vector(below, self.d_out.apply(z), self.d_out.nrows)):
                return False
        here = submodule_basis(R, self.rel_here, self.rank)
        if self.vanishes:
            for z, c in zip(self.cycles, self.lifts):
                diff = list(z)
                if self.d_in is not None:
                    img = self.d_in.apply(c)
                    diff = [a - b for a, b in zip(diff, img)]
                if any(reduce_vector(here, diff, self.rank)):
                    return False
            return len(self.lifts) == len(self.cycles)
        full = submodule_basis(R, list(self.rel_here) + (self.d_in.columns() if self.d_in else []), self.rank)
        nf = reduce_vector(full, self.witness, self.rank)
        return any(nf) and nf == self.witness_normal_form

    def to_json(self):
        d = {"degree": self.degree, "vanishes": self.vanishes, "cycles": [[str(a) for a in z] for z in self.cycles]}
        if self.vanishes:
            d["lifts"] = [[str(a) for a in c] for c in self.lifts]
        else:
            d["witness"] = [str(a) for a in self.witness]
            d["witness_normal_form"] = [str(a) for a in self.witness_normal_form]
        return d


def homology_at(ring: PresentedRing, d_in: Matrix | None, d_out: Matrix | None, rank: int,
                rel_here=(), rel_below=(), degree: int = 0) -> HomologyCertificate:
    """Vanishing test for the homology of F_{i+1} -> F_i/N_i -> F_{i-1}/N_{i-1} at F_i."""
    P = ring.poly_ring
    if rank == 0:
        return HomologyCertificate(degree, True, [], [], d_in=d_in, d_out=d_out, rank=0, ring=ring)
    if d_out is None or d_out.nrows == 0:
        cycles = [[P.one() if k == j else P.zero() for k in range(rank)] for j in range(rank)]
    else:
        cycles = kernel(ring, d_out.columns(), d_out.nrows, rel_below)
    cert = HomologyCertificate(degree, True, cycles, [], d_in=d_in, d_out=d_out, rel_here=list(rel_here),
                               rel_below=list(rel_below), rank=rank, ring=ring)
    in_cols = d_in.columns() if d_in is not None else []
    lb = LiftBasis(_vecs(in_cols), rank, P, _vecs(rel_here) + _ring_relations(ring, rank))
    for z in cycles:
        r = lb.basis.reduce(vec_from_polys(z))
        head = {k: c for k, c in r.items() if k[0] < rank}
        if head:
            nf_basis = submodule_basis(ring, list(rel_here) + in_cols, rank)
            cert.vanishes = False
            cert.lifts = None
            cert.witness = z
            cert.witness_normal_form = reduce_vector(nf_basis, z, rank)
            return cert
        neg = P.field.neg
        c = {(p - rank, e): neg(a) for (p, e), a in r.items()}
        cert.lifts.append(vec_to_polys(c, P, len(in_cols)) if in_cols else [])
    return cert


def homology_vanishes_at_prime(ring: PresentedRing, d_in: Matrix | None, d_out: Matrix | None, rank: int,
                               prime: Ideal, rel_here=(), rel_below=()):
    """Whether the homology localised at ``prime`` vanishes.

    H_p = 0 iff no cycle generator has its annihilator (boundaries : z)
    inside p.  Returns (verdict, offending cycle or None, its annihilator).
    """
    P = ring.poly_ring
    if rank == 0:
        return True, None, None
    if d_out is None or d_out.nrows == 0:
        cycles = [[P.one() if k == j else P.zero() for k in range(rank)] for j in range(rank)]
    else:
        cycles = kernel(ring, d_out.columns(), d_out.nrows, rel_below)
    bounds = list(rel_here) + (d_in.columns() if d_in is not None else [])
    for z in cycles:
        ann = Ideal(ring, [c[0] for c in kernel(ring, [z], rank, bounds)])
        if ann.issubset(prime):
            return False, z, ann
    return True, None, None


# ---------------------------------------------------------------- complexes

class FreeComplex:
    """F_n -> ... -> F_0 with F_i / N_i; ``differentials[i]`` is d_i (i >= 1)."""

    def __init__(self, ring: PresentedRing, ranks: Sequence[int], differentials: dict[int, Matrix],
                 relations: dict[int, list] | None = None, check: bool = True):
        self.ring = ring
        self.ranks = list(ranks)
        self.differentials = dict(differentials)
        self.relations = {i: list(v) for i, v in (relations or {}).items()}
        for i, d in self.differentials.items():
            if (d.nrows, d.ncols) != (self.rank(i - 1), self.rank(i)):
                raise ValueError(f"d_{i} has shape {d.nrows}x{d.ncols}, expected {self.rank(i - 1)}x{self.rank(i)}")
        if check and not self.is_complex():
            raise ValueError("differentials do not compose to zero")

    @property
    def length(self) -> int:
        return len(self.ranks) - 1

    def rank(self, i: int) -> int:
        return self.ranks[i] if 0 <= i < len(self.ranks) else 0

    def d(self, i: int) -> Matrix | None:
        return self.differentials.get(i)

    def rels(self, i: int) -> list:
        return self.relations.get(i, [])

    def is_complex(self) -> bool:
        for i in range(2, len(self.ranks)):
            a, b = self.d(i - 1), self.d(i)
            if a is None or b is None:
                continue
            comp = a @ b
            basis = submodule_basis(self.ring, self.rels(i - 2), comp.nrows)
            for c in comp.columns():
                if any(reduce_vector(basis, c, comp.nrows)):
                    return False
        return True

    def homology_is_zero(self, i: int) -> HomologyCertificate:
        return homology_at(self.ring, self.d(i + 1), self.d(i), self.rank(i), self.rels(i), self.rels(i - 1), i)

    def homology_vanishes_at(self, i: int, prime: Ideal):
        return homology_vanishes_at_prime(self.ring, self.d(i + 1), self.d(i), self.rank(i), prime,
                                          self.rels(i), self.rels(i - 1))


@dataclass
class ModulePresentation:
    """M = R^rank / span(relations)."""

    ring: PresentedRing
    rank: int
    relations: list = field(default_factory=list)

    @classmethod
    def free(cls, ring, rank=1):
        return cls(ring, rank, [])

    @classmethod
    def quotient(cls, ring, ideal_gens):
        return cls(ring, 1, [[ring.poly_ring(g)] for g in ideal_gens])

    def is_zero(self) -> bool:
        basis = submodule_basis(self.ring, self.relations, self.rank)
        P = self.ring.poly_ring
        return all(
            not any(reduce_vector(basis, [P.one() if k == j else P.zero() for k in range(self.rank)], self.rank))
            for j in range(self.rank)
        )

    def ideal_times(self, gens) -> "ModulePresentation":
        """M / I M."""
        P = self.ring.poly_ring
        extra = []
        for g in gens:
            for j in range(self.rank):
                extra.append([P(g) if k == j else P.zero() for k in range(self.rank)])
        return ModulePresentation(self.ring, self.rank, self.relations + extra)

    def relation_matrix(self) -> Matrix:
        return Matrix.from_columns(self.ring, self.relations, self.rank)


class KoszulComplex(FreeComplex):
    """K(x; M) with basis e_S ⊗ m_a, S running over i-subsets in lex order."""

    def __init__(self, ring: PresentedRing, seq: Sequence[Poly], module: ModulePresentation | None = None):
        P = ring.poly_ring
        self.seq = [ring.reduce(P(x)) for x in seq]
        self.module = module or ModulePresentation.free(ring)
        ell = len(self.seq)
        t = self.module.rank
        self.subsets = [list(combinations(range(ell), i)) for i in range(ell + 1)]
        ranks = [comb(ell, i) * t for i in range(ell + 1)]
        diffs = {}
        for i in range(1, ell + 1):
            index_below = {S: k for k, S in enumerate(self.subsets[i - 1])}
            rows = [[P.zero()] * ranks[i] for _ in range(ranks[i - 1])]
            for col, S in enumerate(self.subsets[i]):
                for pos, j in enumerate(S):
                    sign = -1 if pos % 2 else 1
                    T = S[:pos] + S[pos + 1:]
                    r = index_below[T]
                    entry = self.seq[j] * sign
                    for a in range(t):
                        rows[r * t + a][col * t + a] = entry
            diffs[i] = Matrix(ring, rows, ranks[i])
        rels = {}
        if self.module.relations:
            for i in range(ell + 1):
                block = []
                for k in range(comb(ell, i)):
                    for v in self.module.relations:
                        full = [P.zero()] * ranks[i]
                        full[k * t:(k + 1) * t] = list(v)
                        block.append(full)
                rels[i] = block
        super().__init__(ring, ranks, diffs, rels, check=False)

    @property
    def ell(self) -> int:
        return len(self.seq)


def koszul(ring: PresentedRing, seq: Sequence[Poly], module: ModulePresentation | None = None) -> KoszulComplex:
    return KoszulComplex(ring, seq, module)


class ChainMap:
    """Degreewise matrices f_i : C_i -> D_i."""

    def __init__(self, source: FreeComplex, target: FreeComplex, maps: dict[int, Matrix]):
        self.source = source
        self.target = target
        self.maps = maps

    def commutes(self) -> bool:
        R = self.source.ring
        for i in range(1, len(self.source.ranks)):
            ds, dt = self.source.d(i), self.target.d(i)
            fi, fb = self.maps.get(i), self.maps.get(i - 1)
            if ds is None or dt is None or fi is None or fb is None:
                continue
            left = dt @ fi
            right = fb @ ds
            basis = submodule_basis(R, self.target.rels(i - 1), left.nrows)
            for a, b in zip(left.columns(), right.columns()):
                if any(reduce_vector(basis, [x - y for x, y in zip(a, b)], left.nrows)):
                    return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """self ∘ other."""
        return ChainMap(other.source, self.target, {i: self.maps[i] @ other.maps[i] for i in self.maps})


def koszul_power_map(ring: PresentedRing, seq: Sequence[Poly], m: int, n: int,
                     module: ModulePresentation | None = None) -> ChainMap:
    """φ^m_n : K(x^m; M) -> K(x^n; M), multiplying e_S by prod_{j in S} x_j^(m-n)."""
    if not m >= n >= 1:
        raise ValueError("need m >= n >= 1")
    P = ring.poly_ring
    seq = [P(x) for x in seq]
    src = koszul(ring, [x ** m for x in seq], module)
    tgt = koszul(ring, [x ** n for x in seq], module)
    t = src.module.rank
    maps = {}
    for i, subsets in enumerate(src.subsets):
        size = len(subsets) * t
        rows = [[P.zero()] * size for _ in range(size)]
        for k, S in enumerate(subsets):
            f = P.one()
            for j in S:
                f = f * seq[j] ** (m - n)
            for a in range(t):
                rows[k * t + a][k * t + a] = f
        maps[i] = Matrix(ring, rows, size)
    return ChainMap(src, tgt, maps)


@dataclass
class InducedMapResult:
    zero: bool
    degree: int
    m: int
    n: int
    cycles: list
    lifts: list | None = None
    witness: list | None = None


def induced_zero_on_homology(ring: PresentedRing, seq: Sequence[Poly], m: int, n: int, i: int,
                             module: ModulePresentation | None = None) -> InducedMapResult:
    """Whether φ^m_n induces the zero map H_i(x^m; M) -> H_i(x^n; M)."""
    phi = koszul_power_map(ring, seq, m, n, module)
    src, tgt = phi.source, phi.target
    if src.rank(i) == 0:
        return InducedMapResult(True, i, m, n, [], [])
    cyc = kernel(ring, src.d(i).columns(), src.d(i).nrows, src.rels(i - 1)) if src.d(i) else None
    if cyc is None:
        P = ring.poly_ring
        r = src.rank(i)
        cyc = [[P.one() if k == j else P.zero() for k in range(r)] for j in range(r)]
    images = [phi.maps[i].apply(z) for z in cyc]
    rank = tgt.rank(i)
    d_in = tgt.d(i + 1)
    in_cols = d_in.columns() if d_in is not None else []
    P = ring.poly_ring
    lb = LiftBasis(_vecs(in_cols), rank, P, _vecs(tgt.rels(i)) + _ring_relations(ring, rank))
    lifts = []
    for z, img in zip(cyc, images):
        c = lb.lift(vec_from_polys(img))
        if c is None:
            return InducedMapResult(False, i, m, n, cyc, None, z)
        lifts.append(vec_to_polys(c, P, len(in_cols)) if in_cols else [])
    return InducedMapResult(True, i, m, n, cyc, lifts)


# ---------------------------------------------------------------- resolutions

def _is_graded_ring(ring: PresentedRing) -> bool:
    return ring.is_homogeneous()


def _vector_degree(v: Vector, shifts: Sequence[int]) -> int | None:
    """Degree of a homogeneous vector, or None if it is not homogeneous."""
    deg = None
    for a, s in zip(v, shifts):
        for e in a.terms:
            d = sum(e) + s
            if deg is None:
                deg = d
            elif d != deg:
                return None
    return deg


def _prune_units(ring, cols: list[Vector], nrows: int, shifts: list[int]):
    """Remove generators killed by a relation with a unit entry (graded pruning)."""
    P = ring.poly_ring
    changed = True
    keep_rows = list(range(nrows))
    cols = [list(c) for c in cols]
    while changed:
        changed = False
        for ci, c in enumerate(cols):
            for ri, a in enumerate(c):
                if a and a.is_constant():
                    # e_ri = -(1/a) * (c - a e_ri): substitute into every other column
                    inv = P.field.inv(a.constant_coeff())
                    new_cols = []
                    for cj, other in enumerate(cols):
                        if cj == ci:
                            continue
                        b = other[ri]
                        if b:
                            f = b * inv
                            other = [x - f * y for x, y in zip(other, c)]
                        new_cols.append([ring.reduce(x) for k, x in enumerate(other) if k != ri])
                    cols = new_cols
                    del keep_rows[ri]
                    shifts = shifts[:ri] + shifts[ri + 1:]
                    changed = True
                    break
            if changed:
                break
    return cols, len(keep_rows), shifts


def _minimal_subset(ring, cols: list[Vector], rank: int, relations=(), graded_shifts=None) -> list[Vector]:
    """Greedy irredundant subset of generators (a minimal set in the graded case)."""
    cols = [c for c in cols if any(c)]
    if graded_shifts is not None:
        cols.sort(key=lambda c: (_vector_degree(c, graded_shifts) or 0))
    kept: list[Vector] = []
    for c in cols:
        basis = submodule_basis(ring, list(relations) + kept, rank)
        if any(reduce_vector(basis, c, rank)):
            kept.append(c)
    if graded_shifts is None:
        # second pass: drop anything generated by the rest
        i = 0
        while i < len(kept):
            rest = kept[:i] + kept[i + 1:]
            basis = submodule_basis(ring, list(relations) + rest, rank)
            if not any(reduce_vector(basis, kept[i], rank)):
                kept = rest
            else:
                i += 1
    return kept


@dataclass
class Resolution:
    complex: FreeComplex
    graded: bool
    complete: bool  # the last kernel was verified to be zero

    @property
    def length(self) -> int:
        return self.complex.length


def free_resolution(M: ModulePresentation, max_length: int | None = None) -> Resolution:
    """Resolution of M by iterated syzygies.

    In the graded case the presentation is pruned and every step keeps a
    minimal generating set, so the result is the minimal resolution.
    """
    R = M.ring
    P = R.poly_ring
    if max_length is None:
        max_length = R.nvars + 2
    graded = _is_graded_ring(R) and all(_vector_degree(v, [0] * M.rank) is not None for v in M.relations)
    rank0 = M.rank
    shifts = [0] * rank0
    cols = [list(v) for v in M.relations]
    if graded:
        cols, rank0, shifts = _prune_units(R, cols, rank0, shifts)
        cols = _minimal_subset(R, cols, rank0, graded_shifts=shifts)
    else:
        cols = _minimal_subset(R, cols, rank0)
    ranks = [rank0]
    diffs = {}
    complete = False
    cur_cols, cur_rank, cur_shifts = cols, rank0, shifts
    for i in range(1, max_length + 1):
        if not cur_cols:
            complete = True
            break
        d = Matrix.from_columns(R, cur_cols, cur_rank)
        diffs[i] = d
        ranks.append(len(cur_cols))
        new_shifts = [_vector_degree(c, cur_shifts) for c in cur_cols] if graded else None
        syz = kernel(R, cur_cols, cur_rank)
        if graded:
            syz = _minimal_subset(R, syz, len(cur_cols), graded_shifts=new_shifts)
        else:
            syz = _minimal_subset(R, syz, len(cur_cols))
        cur_cols, cur_rank, cur_shifts = syz, len(cur_cols), new_shifts
    else:
        complete = not cur_cols
    C = FreeComplex(R, ranks, diffs, check=False)
    return Resolution(C, graded, complete)


@dataclass
class ProjectiveDimension:
    value: int | None
    flagged: str | None = None

    @property
    def known(self) -> bool:
        return self.value is not None


def projective_dimension_graded(M: ModulePresentation) -> ProjectiveDimension:
    """Length of the minimal graded free resolution; flagged for non-graded input."""
    R = M.ring
    graded = _is_graded_ring(R) and all(_vector_degree(v, [0] * M.rank) is not None for v in M.relations)
    if not graded:
        return ProjectiveDimension(None, "non-graded input: projective dimension not decided")
    res = free_resolution(M, max_length=R.nvars + 1)
    if not res.complete:
        return ProjectiveDimension(None, "resolution did not terminate within the bound")
    if M.is_zero():
        return ProjectiveDimension(None, "zero module")
    return ProjectiveDimension(res.length)


# ---------------------------------------------------------------- Ext

def hom_complex_matrices(res: FreeComplex, M: ModulePresentation, upto: int):
    """Matrices of Hom(F_•, M): δ^i : M^{r_i} -> M^{r_{i+1}} is d_{i+1}^T ⊗ id_t."""
    R = res.ring
    P = R.poly_ring
    t = M.rank
    out = {}
    for i in range(0, upto + 1):
        d = res.d(i + 1)
        ri, rn = res.rank(i), res.rank(i + 1)
        if d is None or rn == 0:
            out[i] = None
            continue
        rows = [[P.zero()] * (ri * t) for _ in range(rn * t)]
        for a in range(ri):
            for b in range(rn):
                e = d.rows[a][b]
                if e:
                    for s in range(t):
                        rows[b * t + s][a * t + s] = e
        out[i] = Matrix(R, rows, ri * t)
    return out


def _block_relations(M: ModulePresentation, copies: int) -> list:
    P = M.ring.poly_ring
    t = M.rank
    out = []
    for k in range(copies):
        for v in M.relations:
            full = [P.zero()] * (copies * t)
            full[k * t:(k + 1) * t] = list(v)
            out.append(full)
    return out


def ext_is_zero(i: int, ideal: Ideal, M: ModulePresentation | None = None, power: int = 1,
                resolution: Resolution | None = None) -> HomologyCertificate:
    """Vanishing of Ext^i(R/I^power, M), computed from a free resolution of R/I^power."""
    R = ideal.ring
    M = M or ModulePresentation.free(R)
    if resolution is None:
        J = ideal ** power if power > 1 else ideal
        resolution = free_resolution(ModulePresentation.quotient(R, J.gens), max_length=i + 1)
    C = resolution.complex
    mats = hom_complex_matrices(C, M, i)
    t = M.rank
    d_out = mats.get(i)
    d_in = mats.get(i - 1) if i >= 1 else None
    rank = C.rank(i) * t
    return homology_at(R, d_in, d_out, rank, _block_relations(M, C.rank(i)), _block_relations(M, C.rank(i + 1)), i)
