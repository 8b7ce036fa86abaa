import random
from fractions import Fraction as F

import pytest

from tkk.linalg import (
    BasedSpace, CoordSolver, LinearMap, RrefAccumulator, Subspace,
    kernel_basis, quotient_space, rref, solve_linear, sv_dot, sv_from_dense,
    wedge_square,
)


def random_matrix(rng, nrows, ncols):
    return [[F(rng.randint(-4, 4), rng.choice((1, 2, 3))) for _ in range(ncols)]
            for _ in range(nrows)]


def test_rref_examples():
    _, rank, pivots = rref([[1, 2], [2, 4]])
    assert rank == 1 and pivots == (0,)
    _, rank, _ = rref([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert rank == 3
    _, rank, _ = rref([[0] * 5, [0] * 5])
    assert rank == 0


def test_rref_idempotent_and_exact():
    rng = random.Random(11)
    for _ in range(20):
        mat = random_matrix(rng, rng.randint(1, 6), rng.randint(1, 7))
        rows, rank, pivots = rref(mat)
        again, rank2, pivots2 = rref(rows)
        assert again == rows and rank2 == rank and pivots2 == pivots
        for row in rows:
            for c in row:
                # fractions stay reduced with positive denominators
                assert c.denominator > 0
                from math import gcd
                assert gcd(c.numerator, c.denominator) == 1


def test_accumulator_matches_dense_rref():
    rng = random.Random(5)
    for _ in range(40):
        nrows, ncols = rng.randint(1, 7), rng.randint(1, 8)
        mat = random_matrix(rng, nrows, ncols)
        acc = RrefAccumulator(ncols)
        grew = [acc.add(sv_from_dense(row)) for row in mat]
        rows, rank, _ = rref(mat)
        assert acc.rank == rank == sum(grew)
        assert list(acc.dense_rows()) == [r for r in rows if any(r)]
        for kv in acc.kernel_vectors():
            for row in mat:
                assert sv_dot(sv_from_dense(row), kv) == 0
        assert len(acc.kernel_vectors()) + acc.rank == ncols


def test_accumulator_membership_and_quotient():
    acc = RrefAccumulator(4)
    assert acc.add({0: F(1), 1: F(2)})
    assert not acc.add({0: F(2), 1: F(4)})
    assert acc.contains({0: F(-3), 1: F(-6)})
    assert not acc.contains({1: F(1)})
    coords = acc.quotient_coords({0: F(1), 2: F(5)})
    # free columns are 1, 2, 3; residue of e0 lands on column 1
    assert coords == {0: F(-2), 1: F(5)}


def test_kernel_basis_examples():
    s3 = BasedSpace.make(["a", "b", "c"])
    s1 = BasedSpace.make(["z"])
    zero = LinearMap.zero(s3, s1)
    assert kernel_basis(zero).dim == 3
    ident = LinearMap.identity(s3)
    assert kernel_basis(ident).dim == 0
    s2 = BasedSpace.make(["a", "b"])
    m = LinearMap.from_dense_rows(s2, s1, [[1, 1]])
    kb = kernel_basis(m)
    assert kb.dim == 1
    assert kb.basis_rows == ((F(1), F(-1)),)


def test_rank_nullity_random():
    rng = random.Random(23)
    for _ in range(25):
        n, m = rng.randint(1, 6), rng.randint(1, 6)
        src = BasedSpace.make([f"s{i}" for i in range(n)])
        tgt = BasedSpace.make([f"t{i}" for i in range(m)])
        mat = random_matrix(rng, m, n)
        lm = LinearMap.from_dense_rows(src, tgt, mat)
        assert lm.rank() + kernel_basis(lm).dim == n


def test_quotient_space():
    amb = BasedSpace.make(list("abcde"))
    sub = Subspace.from_vectors(amb, [{0: F(1), 1: F(1)}, {2: F(1)}])
    q, proj, sect = quotient_space(amb, sub)
    assert q.dim == 3
    for i in range(q.dim):
        assert proj.apply(sect.apply_basis(i)) == {i: F(1)}
    for row in sub.sparse_rows():
        assert proj.apply(row) == {}
    assert proj.rank() == q.dim

    zero_sub = Subspace.from_vectors(amb, [])
    q2, proj2, _ = quotient_space(amb, zero_sub)
    assert q2.dim == 5 and proj2.equal(LinearMap.identity(amb))

    full = Subspace.from_vectors(amb, [{i: F(1)} for i in range(5)])
    q3, _, _ = quotient_space(amb, full)
    assert q3.dim == 0

    other = BasedSpace.make(list("xy"))
    bad = Subspace.from_vectors(other, [{0: F(1)}])
    with pytest.raises(ValueError):
        quotient_space(amb, bad)


def test_wedge_square():
    sp = BasedSpace.make(["a", "b", "c", "d"])
    w, emb = wedge_square(sp)
    assert w.dim == 6
    sp1 = BasedSpace.make(["a"])
    w1, _ = wedge_square(sp1)
    assert w1.dim == 0
    assert emb({1: F(1)}, {0: F(1)}) == {0: F(-1)}
    assert emb({0: F(1)}, {1: F(1)}) == {0: F(1)}
    assert emb({2: F(1)}, {2: F(1)}) == {}
    for idx in range(w.dim):
        i, j = emb.pair(idx)
        assert emb.index(i, j) == (idx, 1)
        assert emb.index(j, i) == (idx, -1)


def test_coord_solver_and_linear_solve():
    cs = CoordSolver([{0: F(1), 1: F(1)}, {1: F(1)}], 3)
    assert cs.coords({0: F(2), 1: F(5)}) == {0: F(2), 1: F(3)}
    assert cs.coords({2: F(1)}) is None
    with pytest.raises(ValueError):
        CoordSolver([{0: F(1)}, {0: F(2)}], 2)

    x = solve_linear([({0: F(2)}, F(4)), ({0: F(1), 1: F(1)}, F(5))], 2)
    assert x == {0: F(2), 1: F(3)}
    assert solve_linear([({0: F(1)}, F(1)), ({0: F(1)}, F(2))], 1) is None


def test_shape_errors():
    with pytest.raises(ValueError):
        rref([[1, 2], [3]])
    s2 = BasedSpace.make(["a", "b"])
    s1 = BasedSpace.make(["z"])
    with pytest.raises(ValueError):
        LinearMap.from_dense_rows(s2, s1, [[1, 1], [0, 1]])
    with pytest.raises(ValueError):
        LinearMap(s2, s1, ({0: F(1)},))  # wrong column count
    with pytest.raises(ValueError):
        LinearMap(s2, s1, ({5: F(1)}, {0: F(1)}))  # entry outside target


def test_wedge_pair_roundtrip_various_sizes():
    for n in (2, 3, 5, 8):
        sp = BasedSpace.make([f"v{i}" for i in range(n)])
        w, emb = wedge_square(sp)
        assert w.dim == n * (n - 1) // 2
        for idx in range(w.dim):
            i, j = emb.pair(idx)
            assert 0 <= i < j < n
            assert emb.index(i, j) == (idx, 1)
