"""Exact rational linear algebra on finitely based spaces.

Conventions used throughout the package:

* Scalars are `fractions.Fraction` (arbitrary precision, always reduced,
  positive denominator).  No floats anywhere.
* Vectors are sparse dicts {coordinate: Fraction (or int)}; zero entries
  are never stored.
* `rref` works on dense row lists; all incremental/heavy work goes through
  `RrefAccumulator`, which keeps primitive integer rows in fully reduced
  echelon form.  Pivoting is deterministic: first nonzero column, smallest
  row index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------

def sv_add(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) + c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sv_sub(u: dict, v: dict) -> dict:
    out = dict(u)
    for k, c in v.items():
        s = out.get(k, 0) - c
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def sv_scale(c, v: dict) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def sv_axpy(acc: dict, c, v: dict) -> None:
    """acc += c*v, in place."""
    if not c:
        return
    for k, x in v.items():
        s = acc.get(k, 0) + c * x
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def sv_neg(v: dict) -> dict:
    return {k: -c for k, c in v.items()}


def sv_dot(u: dict, v: dict):
    if len(u) > len(v):
        u, v = v, u
    return sum((c * v[k] for k, c in u.items() if k in v), start=0)


def sv_dense(v: dict, dim: int) -> tuple:
    row = [ZERO] * dim
    for k, c in v.items():
        row[k] = Fraction(c)
    return tuple(row)


def sv_from_dense(row) -> dict:
    return {i: Fraction(c) for i, c in enumerate(row) if c}


def sv_intify(v: dict) -> dict:
    """Scale a rational sparse vector to a primitive integer one (same span)."""
    if not v:
        return {}
    m = lcm(*(Fraction(c).denominator for c in v.values()))
    iv = {k: int(Fraction(c) * m) for k, c in v.items()}
    g = gcd(*iv.values()) if iv else 1
    if g > 1:
        iv = {k: c // g for k, c in iv.items()}
    return iv


# ---------------------------------------------------------------------------
# based spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BasedSpace:
    dim: int
    labels: tuple

    def __post_init__(self):
        if self.dim < 0:
            raise ValueError("negative dimension")
        if len(self.labels) != self.dim:
            raise ValueError(f"label count {len(self.labels)} != dim {self.dim}")
        if len(set(self.labels)) != self.dim:
            raise ValueError("labels not unique")

    @classmethod
    def make(cls, labels) -> "BasedSpace":
        labels = tuple(labels)
        return cls(len(labels), labels)

    def label(self, i: int) -> str:
        return self.labels[i]


# ---------------------------------------------------------------------------
# dense reduced row-echelon form (deterministic pivoting)
# ---------------------------------------------------------------------------

def rref(matrix) -> tuple:
    """Reduced row-echelon form over the rationals.

    Returns (rows, rank, pivot_columns) with rows a tuple of dense tuples.
    Zero rows are kept in place at the bottom so the shape is preserved.
    """
    rows = [[Fraction(c) for c in row] for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    pivots = []
    r = 0
    for col in range(ncols):
        src = next((i for i in range(r, nrows) if rows[i][col]), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        pv = rows[r][col]
        rows[r] = [c / pv for c in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in rows), r, tuple(pivots)


# ---------------------------------------------------------------------------
# incremental accumulator
# ---------------------------------------------------------------------------

class RrefAccumulator:
    """Incremental row space in fully reduced echelon form.

    Rows are primitive integer sparse dicts keyed by their pivot; every
    pivot column is zero in all other rows, so reducing a vector touches
    each pivot at most once.  Single-writer: do not share while mutating.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self.rows: dict = {}  # pivot -> {col: int}, primitive, positive pivot

    @property
    def rank(self) -> int:
        return len(self.rows)

    def pivots(self) -> list:
        return sorted(self.rows)

    def free_columns(self) -> list:
        return [c for c in range(self.dim) if c not in self.rows]

    # -- reduction ---------------------------------------------------------

    def residue(self, vec: dict) -> dict:
        """Exact residue of vec modulo the row space (Fraction entries)."""
        v = {k: Fraction(c) for k, c in vec.items() if c}
        for p in sorted(k for k in v if k in self.rows):
            c = v.get(p)
            if not c:
                continue
            row = self.rows[p]
            f = c / row[p]
            for k, rv in row.items():
                s = v.get(k, ZERO) - f * rv
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
        return v

    def contains(self, vec: dict) -> bool:
        return not self.residue(vec)

    def add(self, vec: dict) -> bool:
        """Append a vector; report whether it enlarged the span."""
        res = self.residue(vec)
        if not res:
            return False
        new = sv_intify(res)
        p = min(new)
        if new[p] < 0:
            new = {k: -c for k, c in new.items()}
        # eliminate the new pivot from existing rows (keeps full reduction)
        for q, row in list(self.rows.items()):
            c = row.get(p)
            if not c:
                continue
            np_ = new[p]
            merged = {k: np_ * x for k, x in row.items()}
            for k, x in new.items():
                s = merged.get(k, 0) - c * x
                if s:
                    merged[k] = s
                else:
                    merged.pop(k, None)
            g = gcd(*merged.values())
            if g > 1:
                merged = {k: x // g for k, x in merged.items()}
            if merged[q] < 0:
                merged = {k: -x for k, x in merged.items()}
            self.rows[q] = merged
        self.rows[p] = new
        return True

    # -- extraction --------------------------------------------------------

    def fraction_rows(self) -> list:
        """Canonical RREF rows (pivot normalized to 1), sorted by pivot."""
        out = []
        for p in sorted(self.rows):
            row = self.rows[p]
            pv = Fraction(row[p])
            out.append({k: Fraction(c) / pv for k, c in row.items()})
        return out

    def dense_rows(self) -> tuple:
        return tuple(sv_dense(r, self.dim) for r in self.fraction_rows())

    def kernel_vectors(self) -> list:
        """Primitive integer basis of the right kernel {x : R x = 0}."""
        out = []
        for f in self.free_columns():
            v = {f: ONE}
            for p, row in self.rows.items():
                c = row.get(f)
                if c:
                    v[p] = Fraction(-c, row[p])
            out.append(sv_intify(v))
        return out

    def quotient_coords(self, vec: dict) -> dict:
        """Coordinates of vec's class in the quotient by the row space.

        Keys are positions in the sorted free-column list.
        """
        res = self.residue(vec)
        index = {c: i for i, c in enumerate(self.free_columns())}
        return {index[k]: c for k, c in res.items()}


def span_dim(vectors, dim: int) -> int:
    acc = RrefAccumulator(dim)
    for v in vectors:
        acc.add(v)
    return acc.rank


# ---------------------------------------------------------------------------
# subspaces and linear maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    ambient: BasedSpace
    basis_rows: tuple  # canonical RREF rows, dense tuples

    @classmethod
    def from_vectors(cls, ambient: BasedSpace, vectors) -> "Subspace":
        acc = RrefAccumulator(ambient.dim)
        for v in vectors:
            if isinstance(v, dict):
                acc.add(v)
            else:
                acc.add(sv_from_dense(v))
        return cls(ambient, acc.dense_rows())

    @property
    def dim(self) -> int:
        return len(self.basis_rows)

    def accumulator(self) -> RrefAccumulator:
        acc = RrefAccumulator(self.ambient.dim)
        for row in self.basis_rows:
            acc.add(sv_from_dense(row))
        return acc

    def contains(self, vec: dict) -> bool:
        return self.accumulator().contains(vec)

    def sparse_rows(self) -> list:
        return [sv_from_dense(r) for r in self.basis_rows]


@dataclass
class LinearMap:
    """Linear map stored column-wise: cols[j] is the image of source basis j."""

    source: BasedSpace
    target: BasedSpace
    cols: tuple

    def __post_init__(self):
        if len(self.cols) != self.source.dim:
            raise ValueError("column count does not match source dimension")
        for col in self.cols:
            for k in col:
                if not 0 <= k < self.target.dim:
                    raise ValueError("column entry outside target space")

    @classmethod
    def from_cols(cls, source, target, cols) -> "LinearMap":
        return cls(source, target, tuple(dict(c) for c in cols))

    @classmethod
    def from_dense_rows(cls, source, target, rows) -> "LinearMap":
        if len(rows) != target.dim or any(len(r) != source.dim for r in rows):
            raise ValueError("matrix shape does not match spaces")
        cols = [{} for _ in range(source.dim)]
        for i, row in enumerate(rows):
            for j, c in enumerate(row):
                if c:
                    cols[j][i] = Fraction(c)
        return cls(source, target, tuple(cols))

    @classmethod
    def identity(cls, space) -> "LinearMap":
        return cls(space, space, tuple({i: ONE} for i in range(space.dim)))

    @classmethod
    def zero(cls, source, target) -> "LinearMap":
        return cls(source, target, tuple({} for _ in range(source.dim)))

    def apply(self, v: dict) -> dict:
        out: dict = {}
        for j, c in v.items():
            sv_axpy(out, c, self.cols[j])
        return out

    def apply_basis(self, j: int) -> dict:
        return dict(self.cols[j])

    def compose(self, other: "LinearMap") -> "LinearMap":
        """self o other."""
        if other.target.dim != self.source.dim:
            raise ValueError("composition shape mismatch")
        cols = tuple(self.apply(c) for c in other.cols)
        return LinearMap(other.source, self.target, cols)

    def matrix_rows(self) -> tuple:
        rows = [[ZERO] * self.source.dim for _ in range(self.target.dim)]
        for j, col in enumerate(self.cols):
            for i, c in col.items():
                rows[i][j] = c
        return tuple(tuple(r) for r in rows)

    def rank(self) -> int:
        return span_dim(self.cols, self.target.dim)

    def is_injective(self) -> bool:
        return self.rank() == self.source.dim

    def is_surjective(self) -> bool:
        return self.rank() == self.target.dim

    def equal(self, other: "LinearMap") -> bool:
        return (self.source.dim == other.source.dim
                and self.target.dim == other.target.dim
                and all(self.cols[j] == other.cols[j] for j in range(self.source.dim)))


def kernel_basis(m: LinearMap) -> Subspace:
    """Null space of a linear map, as a Subspace of the source."""
    rows, rank, pivots = rref(m.matrix_rows()) if m.target.dim else ((), 0, ())
    n = m.source.dim
    pivset = set(pivots)
    kernel = []
    for f in range(n):
        if f in pivset:
            continue
        v = {f: ONE}
        for r, p in enumerate(pivots):
            c = rows[r][f]
            if c:
                v[p] = -c
        kernel.append(v)
    assert rank + len(kernel) == n, "rank-nullity violated"
    return Subspace.from_vectors(m.source, kernel)


def quotient_space(ambient: BasedSpace, sub: Subspace):
    """Quotient of a based space by a subspace.

    Returns (quotient, proj, section) with proj surjective, kernel exactly
    sub, and proj o section the identity on the quotient.
    """
    if sub.ambient.dim != ambient.dim:
        raise ValueError(
            f"subspace ambient dim {sub.ambient.dim} != ambient dim {ambient.dim}")
    acc = sub.accumulator()
    pivots = set(acc.pivots())
    free = acc.free_columns()
    qlabels = tuple(ambient.labels[f] for f in free)
    quotient = BasedSpace(len(free), qlabels)
    index = {f: i for i, f in enumerate(free)}
    proj_cols = []
    rows = {p: row for p, row in acc.rows.items()}
    for j in range(ambient.dim):
        if j in pivots:
            row = rows[j]
            pv = Fraction(row[j])
            col = {index[k]: -Fraction(c) / pv for k, c in row.items() if k != j and c}
        else:
            col = {index[j]: ONE}
        proj_cols.append(col)
    proj = LinearMap(ambient, quotient, tuple(proj_cols))
    section = LinearMap(quotient, ambient, tuple({f: ONE} for f in free))
    return quotient, proj, section


# ---------------------------------------------------------------------------
# wedge square
# ---------------------------------------------------------------------------

class WedgePairing:
    """Alternating bilinear embedding of a space into its wedge square."""

    def __init__(self, space: BasedSpace):
        self.space = space
        n = space.dim
        self._offset = [0] * n
        run = 0
        for i in range(n):
            self._offset[i] = run
            run += n - 1 - i
        self.dim = run

    def index(self, i: int, j: int):
        """Wedge coordinate and sign for e_i ^ e_j; None on the diagonal."""
        if i == j:
            return None
        if i < j:
            return self._offset[i] + (j - i - 1), 1
        return self._offset[j] + (i - j - 1), -1

    def pair(self, idx: int):
        """The (i, j), i < j, pair of a wedge coordinate."""
        i = 0
        n = self.space.dim
        while i + 1 < n and idx >= self._offset[i] + (n - 1 - i):
            i += 1
        j = i + 1 + (idx - self._offset[i])
        return i, j

    def __call__(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for i, ci in u.items():
            for j, cj in v.items():
                hit = self.index(i, j)
                if hit is None:
                    continue
                idx, sign = hit
                s = out.get(idx, 0) + sign * ci * cj
                if s:
                    out[idx] = s
                else:
                    out.pop(idx, None)
        return out


def wedge_square(space: BasedSpace):
    """Wedge square of a based space with its canonical alternating pairing."""
    pairing = WedgePairing(space)
    labels = []
    for i in range(space.dim):
        for j in range(i + 1, space.dim):
            labels.append(f"{space.labels[i]}^{space.labels[j]}")
    return BasedSpace(pairing.dim, tuple(labels)), pairing


# ---------------------------------------------------------------------------
# coordinate solving against a fixed generating family
# ---------------------------------------------------------------------------

class CoordSolver:
    """Express vectors as coordinates over a fixed independent family.

    Rows are given as sparse dicts in an ambient of dimension `dim`; tags
    are carried at shifted indices so reduction recovers the coefficients.
    """

    def __init__(self, rows, dim: int):
        self.dim = dim
        self.count = len(rows)
        self._acc = RrefAccumulator(dim + self.count)
        for i, row in enumerate(rows):
            tagged = dict(row)
            tagged[dim + i] = ONE
            before = set(self._acc.rows)
            self._acc.add(tagged)
            new_pivot = next(iter(set(self._acc.rows) - before))
            if new_pivot >= dim:  # the row itself was already in the span
                raise ValueError(f"generating family is dependent at row {i}")

    def coords(self, v: dict):
        """Coefficients over the family, or None if v is outside the span."""
        res = self._acc.residue(v)
        coeffs = {}
        for k, c in res.items():
            if k < self.dim:
                return None
            if c:
                coeffs[k - self.dim] = -c
        return coeffs


def solve_linear(equations, nvars: int):
    """One solution x of a consistent linear system, or None.

    equations: iterable of (sparse row, rhs).  Free variables are set to 0;
    callers should verify the solution if the system semantics demand it.
    """
    acc = RrefAccumulator(nvars + 1)
    for row, rhs in equations:
        v = dict(row)
        if rhs:
            v[nvars] = rhs
        acc.add(v)
    if nvars in acc.rows:
        return None  # inconsistent: a pivot landed on the rhs column
    x: dict = {}
    for p, row in acc.rows.items():
        c = row.get(nvars)
        if c:
            x[p] = Fraction(c, row[p])
    return x
