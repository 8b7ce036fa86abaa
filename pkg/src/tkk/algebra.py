"""Finite-dimensional algebras given by sparse structure-constant tables.

Constructors: matrix algebras, trace-in-commutator matrix Lie algebras,
symmetrized (plus) algebras, degree-truncated free algebras, Grassmann
algebras, direct sums.  Identity checkers evaluate multilinear identities
exhaustively over basis tuples; identities that are not multilinear are
checked through their full linearization, which is equivalent over the
rationals, plus raw spot checks.

Exhaustive checks run on exact integer tensors (numpy) after clearing
denominators; an overflow guard falls back to object (big-int) arrays, so
every verdict is exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from .errors import ConsistencyError, ValidationError
from .linalg import (
    BasedSpace, CoordSolver, RrefAccumulator, Subspace,
    sv_add, sv_axpy, sv_scale, sv_sub,
)

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)

INT64_LIMIT = 2 ** 62


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class Witness:
    inputs: tuple          # sparse vectors fed to the identity
    description: str       # which basis tuple / sample failed
    lhs: dict
    rhs: dict

    def to_dict(self) -> dict:
        def ser(v):
            return {str(k): str(Fraction(c)) for k, c in sorted(v.items())}
        return {
            "description": self.description,
            "inputs": [ser(v) for v in self.inputs],
            "lhs": ser(self.lhs),
            "rhs": ser(self.rhs),
        }


@dataclass
class IdentityReport:
    identity: str
    holds: bool
    witness: Witness | None = None

    def to_dict(self) -> dict:
        out = {"identity": self.identity, "holds": self.holds}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        return out


# ---------------------------------------------------------------------------
# structure tables
# ---------------------------------------------------------------------------

class StructureTable:
    """Sparse bilinear table: e_i * e_j = sum over (k, c) entries."""

    def __init__(self, entries: dict):
        self.entries = {}
        for (i, j), terms in entries.items():
            clean = {k: Fraction(c) for k, c in terms.items() if c}
            if clean:
                self.entries[(i, j)] = clean

    def product(self, i: int, j: int) -> dict:
        return self.entries.get((i, j), {})

    def eval(self, x: dict, y: dict) -> dict:
        out: dict = {}
        get = self.entries.get
        for i, ci in x.items():
            for j, cj in y.items():
                terms = get((i, j))
                if not terms:
                    continue
                c = ci * cj
                for k, ck in terms.items():
                    s = out.get(k, ZERO) + c * ck
                    if s:
                        out[k] = s
                    else:
                        del out[k]
        return out

    def validate_indices(self, dim: int) -> None:
        for (i, j), terms in self.entries.items():
            if not (0 <= i < dim and 0 <= j < dim):
                raise ValueError(f"table index ({i},{j}) outside dimension {dim}")
            for k in terms:
                if not 0 <= k < dim:
                    raise ValueError(f"table target {k} outside dimension {dim}")

    def dense(self, dim: int):
        """Exact integer tensor T[i,j,k] plus the denominator cleared from it."""
        denom = 1
        for terms in self.entries.values():
            for c in terms.values():
                denom = lcm(denom, c.denominator)
        t = np.zeros((dim, dim, dim), dtype=object)
        big = 0
        for (i, j), terms in self.entries.items():
            for k, c in terms.items():
                v = int(c * denom)
                t[i, j, k] = v
                big = max(big, abs(v))
        if big < 2 ** 31:
            t = t.astype(np.int64)
        return t, denom, big


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

@dataclass
class Algebra:
    space: BasedSpace
    table: StructureTable
    kind: str = "untagged"
    unit: dict | None = None
    meta: dict = field(default_factory=dict, repr=False)
    _dense_cache: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def dim(self) -> int:
        return self.space.dim

    def label(self, i: int) -> str:
        return self.space.labels[i]

    def mul(self, x: dict, y: dict) -> dict:
        return self.table.eval(x, y)

    def basis_vector(self, i: int) -> dict:
        return {i: ONE}

    def dense_tensor(self):
        if self._dense_cache is None:
            self._dense_cache = self.table.dense(self.dim)
        return self._dense_cache


def product_eval(algebra: Algebra, x: dict, y: dict) -> dict:
    """Bilinear extension of the structure table."""
    for v in (x, y):
        for k in v:
            if not 0 <= k < algebra.dim:
                raise ValueError(f"coordinate {k} outside dimension {algebra.dim}")
    return algebra.mul(x, y)


# ---------------------------------------------------------------------------
# identity checking
# ---------------------------------------------------------------------------

KNOWN_IDENTITIES = (
    "associativity", "commutativity", "anticommutativity",
    "jacobi", "jordan", "power-linearized",
)

KIND_IDENTITIES = {
    "associative": ("associativity",),
    "lie": ("anticommutativity", "jacobi"),
    "jordan": ("commutativity", "jordan"),
    "untagged": (),
}

_SPOT_SEED = 0x5EED


def _tensor_pair_guard(t, big: int, inner: int):
    """Return t in a dtype safe for one product-and-sum contraction."""
    if big * big * max(inner, 1) < INT64_LIMIT and t.dtype == np.int64:
        return t
    return t.astype(object)


def sym_axes_sum(d, axes):
    """Sum of all transposed copies of d over permutations of the given axes."""
    out = np.zeros_like(d)
    base = list(range(d.ndim))
    for perm in itertools.permutations(axes):
        ax = base.copy()
        for a, b in zip(axes, perm):
            ax[a] = b
        out += d.transpose(ax)
    return out


def _first_nonzero(defect):
    idx = np.argwhere(defect)
    if len(idx) == 0:
        return None
    return tuple(int(v) for v in idx[0])


def seeded_vectors(dim: int, count: int, seed: int = _SPOT_SEED) -> list:
    """Deterministic pseudo-random rational vectors for spot checks."""
    rng = random.Random(seed + dim)
    out = []
    for _ in range(count):
        v = {}
        for i in range(dim):
            num = rng.randint(-3, 3)
            if num:
                v[i] = Fraction(num, rng.choice((1, 2, 3)))
        out.append(v)
    return out


def _witness_tuple(algebra, idxs, lhs, rhs, identity):
    inputs = tuple({i: ONE} for i in idxs)
    labels = ",".join(algebra.label(i) for i in idxs)
    return Witness(inputs, f"{identity} fails at basis tuple ({labels})", lhs, rhs)


def _chunk_step(n: int) -> int:
    # keep intermediate four-index tensors around 2M entries
    return max(1, (1 << 21) // max(n * n * n, 1))


def _check_associativity(a: Algebra):
    t, _, big = a.dense_tensor()
    n = a.dim
    tt = _tensor_pair_guard(t, big, n)
    for i0 in range(0, n, _chunk_step(n)):
        block = tt[i0:i0 + _chunk_step(n)]
        left = np.tensordot(block, tt, axes=([2], [0]))   # (c,j,k,s)
        right = np.einsum("jkt,cts->cjks", tt, block)
        hit = _first_nonzero(left - right)
        if hit is None:
            continue
        i, j, k = i0 + hit[0], hit[1], hit[2]
        lhs = a.mul(a.mul({i: ONE}, {j: ONE}), {k: ONE})
        rhs = a.mul({i: ONE}, a.mul({j: ONE}, {k: ONE}))
        return _witness_tuple(a, (i, j, k), lhs, rhs, "associativity")
    return None


def _check_commutativity(a: Algebra):
    t, _, _ = a.dense_tensor()
    defect = t - t.transpose(1, 0, 2)
    hit = _first_nonzero(defect)
    if hit is None:
        return None
    i, j, _ = hit
    return _witness_tuple(a, (i, j), a.table.product(i, j),
                          a.table.product(j, i), "commutativity")


def _check_anticommutativity(a: Algebra):
    t, _, _ = a.dense_tensor()
    defect = t + t.transpose(1, 0, 2)
    hit = _first_nonzero(defect)
    if hit is not None:
        i, j, _ = hit
        lhs = a.table.product(i, j)
        rhs = {k: -c for k, c in a.table.product(j, i).items()}
        return _witness_tuple(a, (i, j), lhs, rhs, "anticommutativity")
    for i in range(a.dim):  # squares must vanish, not just the symmetrization
        sq = a.table.product(i, i)
        if sq:
            return _witness_tuple(a, (i, i), sq, {}, "anticommutativity")
    return None


def _check_jacobi(a: Algebra):
    t, _, big = a.dense_tensor()
    n = a.dim
    tt = _tensor_pair_guard(t, big, n)
    for i0 in range(0, n, _chunk_step(n)):
        block = tt[i0:i0 + _chunk_step(n)]
        term1 = np.tensordot(block, tt, axes=([2], [0]))          # (c,j,k,s)
        term2 = np.tensordot(tt, tt[:, i0:i0 + _chunk_step(n), :],
                             axes=([2], [0]))                     # (j,k,c,s)
        term3 = np.tensordot(tt[:, i0:i0 + _chunk_step(n), :], tt,
                             axes=([2], [0]))                     # (k,c,j,s)
        defect = term1 + term2.transpose(2, 0, 1, 3) + term3.transpose(1, 2, 0, 3)
        hit = _first_nonzero(defect)
        if hit is None:
            continue
        i, j, k = i0 + hit[0], hit[1], hit[2]
        e = [{i: ONE}, {j: ONE}, {k: ONE}]
        lhs = sv_add(sv_add(a.mul(a.mul(e[0], e[1]), e[2]),
                            a.mul(a.mul(e[1], e[2]), e[0])),
                     a.mul(a.mul(e[2], e[0]), e[1]))
        return _witness_tuple(a, (i, j, k), lhs, {}, "jacobi")
    return None


def _jordan_linearized_defect(a: Algebra):
    """Full polarization of the degree-three identity, over basis 4-tuples."""
    t, _, big = a.dense_tensor()
    n = a.dim
    if n == 0:
        return None
    tt = _tensor_pair_guard(t, big * big * n, n)
    # T1[p,q,y,r,s] = ((e_p e_q) e_y) e_r
    a1 = np.einsum("pqt,tyu->pqyu", tt, tt)
    t1 = np.einsum("pqyu,urs->pqyrs", a1, tt)
    # T2[p,q,y,r,s] = (e_p e_q)(e_y e_r)
    c1 = np.einsum("yru,tus->tyrs", tt, tt)
    t2 = np.einsum("pqt,tyrs->pqyrs", tt, c1)
    defect = sym_axes_sum(t1 - t2, (0, 1, 3))
    hit = _first_nonzero(defect)
    if hit is None:
        return None
    p, q, y, r, _ = hit
    lhs, rhs = _jordan_linearized_eval(a, p, q, r, y)
    return _witness_tuple(a, (p, q, y, r), lhs, rhs, "linearized jordan")


def _jordan_linearized_eval(a: Algebra, x1, x2, x3, y):
    lhs: dict = {}
    rhs: dict = {}
    ey = {y: ONE}
    for s1, s2, s3 in itertools.permutations((x1, x2, x3)):
        e1, e2, e3 = {s1: ONE}, {s2: ONE}, {s3: ONE}
        sv_axpy(lhs, ONE, a.mul(a.mul(a.mul(e1, e2), ey), e3))
        sv_axpy(rhs, ONE, a.mul(a.mul(e1, e2), a.mul(ey, e3)))
    return lhs, rhs


def _jordan_raw_witness(a: Algebra, x: dict, y: dict, description: str):
    xx = a.mul(x, x)
    lhs = a.mul(a.mul(xx, y), x)
    rhs = a.mul(xx, a.mul(y, x))
    if lhs != rhs:
        return Witness((x, y), description, lhs, rhs)
    return None


def _check_jordan(a: Algebra, linearized_only: bool = False):
    w = _jordan_linearized_defect(a)
    if w is not None or linearized_only:
        return w
    # raw identity on basis pairs, then seeded rational samples
    for i in range(a.dim):
        for j in range(a.dim):
            w = _jordan_raw_witness(a, {i: ONE}, {j: ONE},
                                    f"raw jordan identity fails at basis pair "
                                    f"({a.label(i)},{a.label(j)})")
            if w is not None:
                return w
    samples = seeded_vectors(a.dim, 8)
    for idx in range(0, len(samples) - 1, 2):
        w = _jordan_raw_witness(a, samples[idx], samples[idx + 1],
                                f"raw jordan identity fails at seeded sample {idx // 2}")
        if w is not None:
            return w
    return None


def check_identity(algebra: Algebra, identity: str) -> IdentityReport:
    """Exhaustive identity check; failures return a report, never raise."""
    if identity not in KNOWN_IDENTITIES:
        raise ValueError(f"unknown identity {identity!r}")
    if identity == "associativity":
        w = _check_associativity(algebra)
    elif identity == "commutativity":
        w = _check_commutativity(algebra)
    elif identity == "anticommutativity":
        w = _check_anticommutativity(algebra)
    elif identity == "jacobi":
        w = _check_jacobi(algebra)
    elif identity == "jordan":
        w = _check_jordan(algebra)
    else:  # power-linearized
        w = _check_jordan(algebra, linearized_only=True)
    return IdentityReport(identity, w is None, w)


def validate_kind(algebra: Algebra) -> None:
    for ident in KIND_IDENTITIES[algebra.kind]:
        report = check_identity(algebra, ident)
        if not report.holds:
            raise ValidationError(
                f"kind {algebra.kind!r} rejected: {report.witness.description}",
                report)


# ---------------------------------------------------------------------------
# construction helpers
# ---------------------------------------------------------------------------

def detect_unit(space: BasedSpace, table: StructureTable):
    """Solve u*e_i = e_i = e_i*u; absence is recorded as None, not an error."""
    n = space.dim
    if n == 0:
        return None
    eqs = []
    for i in range(n):
        for k in range(n):
            left = {p: table.product(p, i).get(k, ZERO) for p in range(n)}
            left = {p: c for p, c in left.items() if c}
            eqs.append((left, ONE if k == i else ZERO))
            right = {p: table.product(i, p).get(k, ZERO) for p in range(n)}
            right = {p: c for p, c in right.items() if c}
            eqs.append((right, ONE if k == i else ZERO))
    from .linalg import solve_linear
    u = solve_linear(eqs, n)
    if u is None:
        return None
    for i in range(n):  # verify, since free variables were zeroed
        e = {i: ONE}
        if table.eval(u, e) != e or table.eval(e, u) != e:
            return None
    return u


def make_algebra(space: BasedSpace, table: StructureTable, kind: str = "untagged",
                 unit="auto", meta: dict | None = None) -> Algebra:
    """Build and validate an algebra; kind validation runs the matching checker."""
    if kind not in KIND_IDENTITIES:
        raise ValueError(f"unknown kind {kind!r}")
    table.validate_indices(space.dim)
    if unit == "auto":
        unit = detect_unit(space, table) if kind != "lie" else None
    elif unit is not None:
        unit = {k: Fraction(c) for k, c in unit.items() if c}
        for i in range(space.dim):
            e = {i: ONE}
            if table.eval(unit, e) != e or table.eval(e, unit) != e:
                raise ValidationError(f"declared unit fails at basis {space.labels[i]}")
    a = Algebra(space, table, kind, unit, meta or {})
    validate_kind(a)
    return a


def scalar_algebra() -> Algebra:
    space = BasedSpace.make(["1"])
    table = StructureTable({(0, 0): {0: ONE}})
    return make_algebra(space, table, "associative")


def direct_sum(a: Algebra, b: Algebra) -> Algebra:
    """Componentwise product on the direct sum; kinds must agree."""
    if a.kind != b.kind:
        raise ValidationError(f"kind mismatch in direct sum: {a.kind} vs {b.kind}")
    labels = tuple(f"({lbl},0)" for lbl in a.space.labels) + \
        tuple(f"(0,{lbl})" for lbl in b.space.labels)
    space = BasedSpace.make(labels)
    off = a.dim
    entries = {}
    for (i, j), terms in a.table.entries.items():
        entries[(i, j)] = dict(terms)
    for (i, j), terms in b.table.entries.items():
        entries[(i + off, j + off)] = {k + off: c for k, c in terms.items()}
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = dict(a.unit)
        unit.update({k + off: c for k, c in b.unit.items()})
    return make_algebra(space, StructureTable(entries), a.kind,
                        unit if unit is not None else "auto")


def grassmann_algebra(generators: int) -> Algebra:
    """Exterior algebra on anticommuting generators; dimension 2**generators."""
    subsets = sorted(range(1 << generators), key=lambda s: (bin(s).count("1"), s))
    pos = {s: i for i, s in enumerate(subsets)}

    def name(s):
        if s == 0:
            return "1"
        return "".join(f"g{k + 1}" for k in range(generators) if s >> k & 1)

    entries = {}
    for si, s in enumerate(subsets):
        for ti, t in enumerate(subsets):
            if s & t:
                continue
            sign = 1
            for k in range(generators):  # count transpositions to interleave
                if t >> k & 1:
                    higher = s >> (k + 1)
                    sign *= (-1) ** bin(higher).count("1")
            entries[(si, ti)] = {pos[s | t]: Fraction(sign)}
    space = BasedSpace.make([name(s) for s in subsets])
    return make_algebra(space, StructureTable(entries), "associative")


def matrix_algebra(a: Algebra, n: int) -> Algebra:
    """n x n matrices over an associative algebra."""
    if a.kind != "associative":
        raise ValidationError(f"matrix algebra needs an associative base, got {a.kind}")
    da = a.dim
    labels = []
    for i in range(n):
        for j in range(n):
            for p in range(da):
                labels.append(f"E{i + 1}{j + 1}({a.label(p)})")
    space = BasedSpace.make(labels)

    def idx(i, j, p):
        return (i * n + j) * da + p

    entries = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for p in range(da):
                    for q in range(da):
                        prod = a.table.product(p, q)
                        if not prod:
                            continue
                        entries[(idx(i, j, p), idx(j, k, q))] = {
                            idx(i, k, r): c for r, c in prod.items()}
    unit = None
    if a.unit is not None:
        unit = {}
        for i in range(n):
            for p, c in a.unit.items():
                unit[idx(i, i, p)] = c
    return make_algebra(space, StructureTable(entries), "associative", unit,
                        meta={"matrix_base": a, "matrix_n": n})


def matrix_entry_vector(m: Algebra, i: int, j: int, coeffs: dict) -> dict:
    """Vector of the matrix algebra with the given base-algebra entry at (i, j)."""
    n = m.meta["matrix_n"]
    da = m.meta["matrix_base"].dim
    return {(i * n + j) * da + p: Fraction(c) for p, c in coeffs.items() if c}


def commutator_subspace(a: Algebra) -> Subspace:
    """Span of xy - yx over basis pairs."""
    if a.kind != "associative":
        raise ValidationError(f"commutator subspace needs associative kind, got {a.kind}")
    vecs = []
    for i in range(a.dim):
        for j in range(i + 1, a.dim):
            v = sv_sub(a.table.product(i, j), a.table.product(j, i))
            if v:
                vecs.append(v)
    return Subspace.from_vectors(a.space, vecs)


@dataclass
class MatrixLieData:
    """Companion data for a trace-in-commutator matrix Lie algebra."""

    base: Algebra
    n: int
    ambient: Algebra
    rows: list            # basis vectors in ambient coordinates
    solver: CoordSolver   # ambient coordinates -> Lie basis coordinates
    offdiag_count: int

    def unit_coeffs(self) -> dict:
        return dict(self.base.unit)

    def entry_index(self, i: int, j: int, p: int) -> int:
        """Lie basis index of E_{ij}(a_p), for i != j (0-based)."""
        da = self.base.dim
        pos = 0
        for r in range(self.n):
            for c in range(self.n):
                if r == c:
                    continue
                if (r, c) == (i, j):
                    return pos * da + p
                pos += 1
        raise ValueError("off-diagonal index required")

    def entry_vector(self, i: int, j: int, coeffs: dict) -> dict:
        """Lie coordinates of E_{ij}(x) for off-diagonal (i, j), 0-based."""
        out = {}
        da = self.base.dim
        base_idx = self.entry_index(i, j, 0)
        for p, c in coeffs.items():
            if c:
                out[base_idx + p] = Fraction(c)
        return out

    def diagonal_unit_difference(self, i: int, j: int) -> dict:
        """Lie coordinates of E_ii(1) - E_jj(1), 0-based indices."""
        amb = sv_sub(matrix_entry_vector(self.ambient, i, i, self.unit_coeffs()),
                     matrix_entry_vector(self.ambient, j, j, self.unit_coeffs()))
        coords = self.solver.coords(amb)
        if coords is None:
            raise ConsistencyError("diagonal unit difference left the Lie algebra")
        return coords


def special_linear(a: Algebra, n: int) -> Algebra:
    """Matrices over A whose trace lies in [A, A], with the commutator bracket.

    Basis: off-diagonal entries over a basis of A, consecutive diagonal
    differences, and trailing diagonal entries over a basis of [A, A].
    """
    if a.kind != "associative":
        raise ValidationError(f"special_linear needs an associative base, got {a.kind}")
    if a.unit is None:
        raise ValidationError("special_linear needs a unital base algebra")
    if n < 2:
        raise ValueError("need n >= 2")
    amb = matrix_algebra(a, n)
    da = a.dim
    comm = commutator_subspace(a)

    rows = []
    labels = []
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for p in range(da):
                rows.append(matrix_entry_vector(amb, i, j, {p: ONE}))
                labels.append(f"E{i + 1}{j + 1}({a.label(p)})")
    offdiag_count = len(rows)
    for i in range(n - 1):
        for p in range(da):
            v = sv_sub(matrix_entry_vector(amb, i, i, {p: ONE}),
                       matrix_entry_vector(amb, i + 1, i + 1, {p: ONE}))
            rows.append(v)
            labels.append(f"H{i + 1}({a.label(p)})")
    for q, crow in enumerate(comm.sparse_rows()):
        rows.append(matrix_entry_vector(amb, n - 1, n - 1, crow))
        labels.append(f"Z{q + 1}")

    expected = (n * n - 1) * da + comm.dim
    assert len(rows) == expected
    solver = CoordSolver(rows, amb.dim)

    space = BasedSpace.make(labels)
    m = len(rows)
    entries = {}
    for x in range(m):
        for y in range(x + 1, m):
            br = sv_sub(amb.mul(rows[x], rows[y]), amb.mul(rows[y], rows[x]))
            coords = solver.coords(br)
            if coords is None:
                raise ConsistencyError(
                    f"bracket of basis {labels[x]}, {labels[y]} left the span")
            if coords:
                entries[(x, y)] = coords
                entries[(y, x)] = {k: -c for k, c in coords.items()}
    table = StructureTable(entries)

    data = MatrixLieData(a, n, amb, rows, solver, offdiag_count)
    out = make_algebra(space, table, "lie", None, meta={"sl": data})
    _assert_offdiagonal_generates(out, data)
    return out


def _assert_offdiagonal_generates(g: Algebra, data: MatrixLieData) -> None:
    """The off-diagonal entries must generate the whole trace-condition space."""
    gens = list(range(data.offdiag_count))
    acc = RrefAccumulator(g.dim)
    work = []
    for i in gens:
        if acc.add({i: ONE}):
            work.append({i: ONE})
    while work:
        v = work.pop()
        for i in gens:
            br = sv_sub(g.mul(v, {i: ONE}), g.mul({i: ONE}, v))
            if br and acc.add(br):
                work.append(br)
    if acc.rank != g.dim:
        raise ConsistencyError(
            f"off-diagonal entries generate dim {acc.rank}, expected {g.dim}")


def plus_algebra(a: Algebra) -> Algebra:
    """Symmetrized product x o y = (xy + yx)/2 on the same space."""
    if a.kind != "associative":
        raise ValidationError(f"plus algebra needs an associative base, got {a.kind}")
    entries = {}
    for i in range(a.dim):
        for j in range(i, a.dim):
            sym = sv_scale(HALF, sv_add(a.table.product(i, j), a.table.product(j, i)))
            if sym:
                entries[(i, j)] = sym
                if i != j:
                    entries[(j, i)] = dict(sym)
    return make_algebra(a.space, StructureTable(entries), "jordan",
                        dict(a.unit) if a.unit else None,
                        meta={"plus_of": a})


def peirce_decompose(m: Algebra):
    """The four entry subspaces of a tagged 2x2 matrix algebra."""
    base = m.meta.get("matrix_base")
    if base is None or m.meta.get("matrix_n") != 2:
        raise ValidationError("peirce_decompose needs an algebra tagged as 2x2 matrices")
    da = base.dim
    parts = []
    for i in range(2):
        for j in range(2):
            off = (i * 2 + j) * da
            vecs = [{off + p: ONE} for p in range(da)]
            parts.append(Subspace.from_vectors(m.space, vecs))
    return tuple(parts)


# ---------------------------------------------------------------------------
# degree-truncated free associative algebras
# ---------------------------------------------------------------------------

def truncated_free(generators, max_degree: int, relations=None) -> Algebra:
    """Free associative algebra modulo relations and all words beyond a degree.

    Words are reduced by deglex rewriting; relation sets that would need
    completion are detected by the associativity validator and rejected.
    """
    gens = tuple(generators)
    if max_degree < 1:
        raise ValueError("need max_degree >= 1")
    gidx = {g: i for i, g in enumerate(gens)}

    def to_word(w):
        return tuple(gidx[x] if not isinstance(x, int) else x for x in w)

    def deglex(w):
        return (len(w), w)

    rules = []
    for rel in relations or ():
        poly = {}
        for word, coeff in rel:
            word = to_word(word)
            if len(word) > max_degree:
                continue  # truncated away
            c = poly.get(word, ZERO) + Fraction(coeff)
            if c:
                poly[word] = c
            else:
                poly.pop(word, None)
        if not poly:
            continue
        lead = max(poly, key=deglex)
        if len(lead) == 0:
            raise ValidationError("relation forces the unit to vanish")
        c = poly.pop(lead)
        rules.append((lead, {w: -x / c for w, x in poly.items()}))
    rules.sort(key=lambda r: deglex(r[0]), reverse=True)

    cache: dict = {}

    def normal(word) -> dict:
        if len(word) > max_degree:
            return {}
        got = cache.get(word)
        if got is not None:
            return got
        for pos in range(len(word)):
            for lead, rest in rules:
                k = len(lead)
                if word[pos:pos + k] == lead:
                    out: dict = {}
                    for w2, c in rest.items():
                        for w3, c3 in normal(word[:pos] + w2 + word[pos + k:]).items():
                            s = out.get(w3, ZERO) + c * c3
                            if s:
                                out[w3] = s
                            else:
                                del out[w3]
                    cache[word] = out
                    return out
        out = {word: ONE}
        cache[word] = out
        return out

    basis = []
    for deg in range(max_degree + 1):
        for word in itertools.product(range(len(gens)), repeat=deg):
            if normal(word) == {word: ONE}:
                basis.append(word)
    windex = {w: i for i, w in enumerate(basis)}

    def wname(w):
        return "*".join(gens[i] for i in w) if w else "1"

    space = BasedSpace.make([wname(w) for w in basis])
    entries = {}
    for i, u in enumerate(basis):
        for j, v in enumerate(basis):
            terms = {}
            for w, c in normal(u + v).items():
                terms[windex[w]] = c
            if terms:
                entries[(i, j)] = terms
    try:
        out = make_algebra(space, StructureTable(entries), "associative",
                           meta={"free_generators": gens, "free_degree": max_degree})
    except ValidationError as exc:
        raise ValidationError(
            "relation set needs completion beyond deglex rewriting; rejected",
            exc.report) from exc
    if out.unit != {windex[()]: ONE}:
        raise ValidationError("relations collapsed the unit")
    for lead, rest in rules:  # each relation must vanish in the quotient
        val = dict(normal(lead))
        for w, c in rest.items():
            for w3, c3 in normal(w).items():
                s = val.get(w3, ZERO) - c * c3
                if s:
                    val[w3] = s
                else:
                    del val[w3]
        if val:
            raise ValidationError(
                "relation set needs completion beyond deglex rewriting; rejected")
    return out
