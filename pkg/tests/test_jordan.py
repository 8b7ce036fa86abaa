from fractions import Fraction as F

import pytest

from tkk.algebra import (
    grassmann_algebra, matrix_algebra, plus_algebra, scalar_algebra,
    special_linear, direct_sum,
)
from tkk.errors import ValidationError
from tkk.jordan import (
    TripleSystem, check_jts, is_triple_homomorphism, make_triple_system,
    standard_tkk, tkk_functor_map, triple_from_associative, triple_from_jordan,
    universal_tkk, verify_graded_hom, _relation_span,
)
from tkk.linalg import LinearMap
from tkk.uce import verify_lie_hom, bijectivity_report


def scalar_triple():
    return triple_from_associative(scalar_algebra())


def m2_triple():
    return triple_from_associative(matrix_algebra(scalar_algebra(), 2))


def perturb_gamma(t, key, target, delta=F(1)):
    """Bump a self-mirror gamma entry; outer symmetry survives."""
    u, v, w = key
    assert u == w, "use a self-mirror key to keep outer symmetry"
    gamma = {k: dict(terms) for k, terms in t.gamma.items()}
    terms = dict(gamma.get(key, {}))
    terms[target] = terms.get(target, F(0)) + delta
    gamma[key] = terms
    return TripleSystem(t.space, gamma)


def test_triples_of_scalar_and_matrix():
    tk = scalar_triple()
    assert tk.basis_product(0, 0, 0) == {0: F(1)}
    tm = m2_triple()
    # basis order E11, E12, E21, E22
    assert tm.basis_product(1, 2, 1) == {1: F(1)}
    assert tm.basis_product(0, 1, 3) == {1: F(1, 2)}
    assert tm.basis_product(3, 1, 0) == {1: F(1, 2)}


def test_outer_symmetry_everywhere():
    for t in (scalar_triple(), m2_triple(),
              triple_from_associative(grassmann_algebra(2))):
        for (u, v, w), terms in t.gamma.items():
            assert t.gamma.get((w, v, u)) == terms


def test_jordan_route_matches_associative_route():
    m2 = matrix_algebra(scalar_algebra(), 2)
    assert triple_from_jordan(plus_algebra(m2)).gamma == \
        triple_from_associative(m2).gamma


def test_triple_from_jordan_requires_jordan():
    with pytest.raises(ValidationError):
        triple_from_jordan(scalar_algebra())
    with pytest.raises(ValidationError):
        triple_from_associative(plus_algebra(scalar_algebra()))


def test_check_jts_positive():
    for t in (scalar_triple(), m2_triple()):
        rep = check_jts(t)
        assert rep.holds
        assert rep.third_axiom_mode == "full"
        assert set(rep.parts) >= {"outer-symmetry", "five-linear",
                                  "axiom1-linearized", "axiom2-linearized",
                                  "axiom3-linearized", "raw-spot"}


def test_check_jts_negative_control():
    bad = perturb_gamma(m2_triple(), (1, 2, 1), 0)
    rep = check_jts(bad)
    assert not rep.holds
    w = rep.witness
    assert w is not None and w.lhs != w.rhs


def test_reference_five_linear_evaluation():
    # oracle: raw evaluation of the shift identity on dense rational vectors
    t = m2_triple()
    from tkk.algebra import seeded_vectors
    vs = seeded_vectors(t.dim, 10, seed=99)
    for i in range(0, 10, 5):
        a, b, c, d, e = vs[i:i + 5]
        lhs = t.triple(a, b, t.triple(c, d, e))
        rhs = {}
        for key, val in t.triple(t.triple(a, b, c), d, e).items():
            rhs[key] = rhs.get(key, F(0)) + val
        for key, val in t.triple(c, t.triple(b, a, d), e).items():
            rhs[key] = rhs.get(key, F(0)) - val
        for key, val in t.triple(c, d, t.triple(a, b, e)).items():
            rhs[key] = rhs.get(key, F(0)) + val
        assert lhs == {k: v for k, v in rhs.items() if v}


def test_make_triple_system_validates_symmetry():
    tk = scalar_triple()
    gamma = {(0, 0, 0): {0: F(1)}}
    make_triple_system(tk.space, gamma)  # fine
    sp = m2_triple().space
    asym = {(0, 1, 2): {0: F(1)}}  # mirror entry missing
    with pytest.raises(ValidationError):
        make_triple_system(sp, asym)


def test_standard_tkk_of_scalar_matches_rank_two_matrices():
    ks = standard_tkk(scalar_triple())
    assert ks.dims == (1, 1, 1)
    sl2 = special_linear(scalar_algebra(), 2)
    # explicit base change: x+ -> E12, x- -> E21/2, degree-zero -> H1/2
    cols = ({1: F(1, 2)}, {2: F(1, 2)}, {0: F(1)})
    phi = LinearMap(ks.algebra.space, sl2.space, cols)
    rep = verify_lie_hom(phi, ks.algebra, sl2)
    assert rep.holds
    assert bijectivity_report(phi)["bijective"]


def test_standard_tkk_of_matrix_triple_has_rank_four_dimension():
    ks = standard_tkk(m2_triple())
    assert ks.total_dim == 15
    assert ks.total_dim == special_linear(scalar_algebra(), 4).dim


def test_universal_tkk_scalar():
    ku = universal_tkk(scalar_triple())
    assert ku.total_dim == 3
    assert ku.dims == (1, 1, 1)
    assert ku.central_kernel_dim == 0
    assert ku.surjection_to_standard is not None


def test_universal_tkk_rejects_broken_triple():
    bad = perturb_gamma(m2_triple(), (1, 2, 1), 0)
    with pytest.raises(ValidationError):
        universal_tkk(bad)


def test_universal_tkk_free_truncation(tkk_of):
    ku = tkk_of("free2d2")
    ks = standard_tkk(ku.triple)
    assert ku.zero.dim >= ks.zero.dim
    assert ku.central_kernel_dim == ku.zero.dim - ks.zero.dim >= 0
    assert ku.dims[0] == ku.dims[2] == 7


def test_universal_grading_and_relations(tkk_of):
    ku = tkk_of("double")
    t = ku.triple
    n = t.dim
    for u in range(n):
        for v in range(n):
            pu = {ku.plus_index(u): F(1)}
            mv = {ku.minus_index(v): F(1)}
            assert ku.bracket(pu, {ku.plus_index(v): F(1)}) == {}
            tz = ku.bracket(pu, mv)
            for w in range(n):
                got = ku.bracket(tz, {ku.plus_index(w): F(1)})
                want = {ku.plus_index(s): c
                        for s, c in t.basis_product(u, v, w).items()}
                assert got == want


def test_relation_span_jacobi_seeding_agrees():
    # seeding with explicit triple-bracket cycles must not change the span
    for t in (scalar_triple(), triple_from_associative(
            direct_sum(scalar_algebra(), scalar_algebra()))):
        with_j = _relation_span(t, seed_jacobi=True)
        without = _relation_span(t, seed_jacobi=False)
        assert with_j.dense_rows() == without.dense_rows()


def test_functor_identity_and_zero(tkk_of):
    ku = tkk_of("scalar")
    ident = tkk_functor_map(LinearMap.identity(ku.triple.space), ku, ku)
    assert ident.equal(LinearMap.identity(ku.algebra.space))
    zero = tkk_functor_map(LinearMap.zero(ku.triple.space, ku.triple.space), ku, ku)
    for i in range(ku.total_dim):
        if ku.block_of(i) != 0:
            assert zero.apply_basis(i) == {}


def test_functor_composition(tkk_of):
    t1 = scalar_triple()
    double = direct_sum(scalar_algebra(), scalar_algebra())
    t2 = triple_from_associative(double)
    k1 = tkk_of("scalar")
    k2 = tkk_of("double")
    diag = LinearMap(t1.space, t2.space, ({0: F(1), 1: F(1)},))
    swap = LinearMap(t2.space, t2.space, ({1: F(1)}, {0: F(1)}))
    assert is_triple_homomorphism(diag, t1, t2).holds
    assert is_triple_homomorphism(swap, t2, t2).holds
    k_diag = tkk_functor_map(diag, k1, k2)
    k_swap = tkk_functor_map(swap, k2, k2)
    composed = tkk_functor_map(swap.compose(diag), k1, k2)
    assert composed.equal(k_swap.compose(k_diag))


def test_functor_rejects_non_homomorphism():
    t2 = triple_from_associative(direct_sum(scalar_algebra(), scalar_algebra()))
    k2 = universal_tkk(t2)
    shear = LinearMap(t2.space, t2.space, ({0: F(1), 1: F(1)}, {1: F(1)}))
    assert not is_triple_homomorphism(shear, t2, t2).holds
    with pytest.raises(ValidationError):
        tkk_functor_map(shear, k2, k2)


def test_graded_hom_check_catches_swap(tkk_of):
    ku = tkk_of("scalar")
    swap_cols = ({2: F(1)}, {1: F(1)}, {0: F(1)})
    swap = LinearMap(ku.algebra.space, ku.algebra.space, swap_cols)
    rep = verify_graded_hom(swap, ku, ku)
    assert not rep.holds and rep.witness is not None


def test_export_schema(tkk_of):
    out = tkk_of("scalar").export()
    assert out["construction"] == "universal"
    assert out["dims"] == [1, 1, 1]
    assert out["kernel_dim_over_standard"] == 0
    assert all(set(b) == {"i", "j", "k", "c"} for b in out["bracket"])
