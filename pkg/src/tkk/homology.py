"""First cyclic homology of a unital associative algebra, by brute force.

Degrees 0..2 of the signed cyclic quotient complex are materialized
explicitly: C_n is the (n+1)-fold tensor power modulo the image of
1 - lambda_n, with lambda_n the signed cyclic rotation.  The boundaries

    b(a0 (x) a1)        = a0 a1 - a1 a0
    b(a0 (x) a1 (x) a2) = a0 a1 (x) a2 - a0 (x) a1 a2 + a2 a0 (x) a1

descend to the quotients in characteristic zero; descent, and the complex
property b1 o b2 = 0, are asserted at runtime rather than assumed.

This module is the independent oracle used to cross-check extension
kernels; it shares no code path with the wedge-square construction.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ConsistencyError, ValidationError
from .algebra import Algebra
from .linalg import (
    BasedSpace, LinearMap, Subspace, kernel_basis, quotient_space, sv_axpy,
)

ONE = Fraction(1)


def _tensor_labels(a: Algebra, power: int) -> BasedSpace:
    labels = [""]
    for _ in range(power):
        labels = [f"{x}|{lbl}" if x else lbl for x in labels for lbl in a.space.labels]
    return BasedSpace.make(labels)


def cyclic_slices(a: Algebra):
    """Quotient slices C0, C1, C2 with induced boundaries (b1, b2)."""
    if a.kind != "associative":
        raise ValidationError(f"expected an associative algebra, got kind {a.kind}")
    if a.unit is None:
        raise ValidationError("cyclic homology oracle needs a unital algebra")
    n = a.dim

    amb1 = _tensor_labels(a, 2)
    amb2 = _tensor_labels(a, 3)

    def idx2(i, j):
        return i * n + j

    def idx3(i, j, k):
        return (i * n + j) * n + k

    # 1 - lambda_1, lambda_1(x (x) y) = -(y (x) x)
    gens1 = []
    for i in range(n):
        for j in range(n):
            v = {idx2(i, j): ONE}
            sv_axpy(v, ONE, {idx2(j, i): ONE})
            if v:
                gens1.append(v)
    sub1 = Subspace.from_vectors(amb1, gens1)
    c1, proj1, sect1 = quotient_space(amb1, sub1)

    # 1 - lambda_2, lambda_2(x (x) y (x) z) = z (x) x (x) y
    gens2 = []
    for i in range(n):
        for j in range(n):
            for k in range(n):
                v = {idx3(i, j, k): ONE}
                sv_axpy(v, -ONE, {idx3(k, i, j): ONE})
                if v:
                    gens2.append(v)
    sub2 = Subspace.from_vectors(amb2, gens2)
    c2, proj2, sect2 = quotient_space(amb2, sub2)

    def b1_ambient(i, j):
        out = dict(a.table.product(i, j))
        for m, c in a.table.product(j, i).items():
            s = out.get(m, 0) - c
            if s:
                out[m] = s
            else:
                del out[m]
        return out

    def b2_ambient(i, j, k):
        out: dict = {}
        for m, c in a.table.product(i, j).items():
            sv_axpy(out, c, {idx2(m, k): ONE})
        for m, c in a.table.product(j, k).items():
            sv_axpy(out, -c, {idx2(i, m): ONE})
        for m, c in a.table.product(k, i).items():
            sv_axpy(out, c, {idx2(m, j): ONE})
        return out

    # descent: boundaries must kill the cyclic-defect generators
    acc1 = sub1.accumulator()
    for g in gens1:
        img: dict = {}
        for key, c in g.items():
            sv_axpy(img, c, b1_ambient(*divmod(key, n)))
        if img:
            raise ConsistencyError("b1 does not descend to the cyclic quotient")
    for g in gens2:
        img = {}
        for key, c in g.items():
            ij, k = divmod(key, n)
            i, j = divmod(ij, n)
            sv_axpy(img, c, b2_ambient(i, j, k))
        if img and not acc1.contains(img):
            raise ConsistencyError("b2 does not descend to the cyclic quotient")

    b1_cols = []
    for q in range(c1.dim):
        amb = sect1.apply_basis(q)
        img = {}
        for key, c in amb.items():
            sv_axpy(img, c, b1_ambient(*divmod(key, n)))
        b1_cols.append(img)
    b1 = LinearMap(c1, a.space, tuple(b1_cols))

    b2_cols = []
    for q in range(c2.dim):
        amb = sect2.apply_basis(q)
        img = {}
        for key, c in amb.items():
            ij, k = divmod(key, n)
            i, j = divmod(ij, n)
            sv_axpy(img, c, b2_ambient(i, j, k))
        b2_cols.append(proj1.apply(img))
    b2 = LinearMap(c2, c1, tuple(b2_cols))

    composed = b1.compose(b2)
    if any(col for col in composed.cols):
        raise ConsistencyError("b1 o b2 != 0 on the cyclic quotient complex")
    return (a.space, c1, c2), (b1, b2)


def hc1_dim(a: Algebra) -> int:
    """dim HC_1 = dim(ker b1 / im b2), computed exactly."""
    _, (b1, b2) = cyclic_slices(a)
    ker = kernel_basis(b1)
    rank2 = b2.rank()
    if rank2 > ker.dim:
        raise ConsistencyError("image of b2 exceeds the kernel of b1")
    return ker.dim - rank2
