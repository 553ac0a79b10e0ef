from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from complat.qlinalg import (
    Subspace,
    annihilator,
    canonical_covector,
    canonical_covector_signed,
    determinant,
    dot,
    full_space,
    intersect,
    kernel,
    mat_mul,
    primitive,
    qvec,
    restrict_covector,
    rref,
    span,
)

F = Fraction


def test_span_canonical_under_permutation_and_scaling():
    a = span([(1, 0), (1, 1)], 2)
    b = span([(2, 2), (3, 0)], 2)
    assert a == b == full_space(2)
    # span is the canonical RREF form, so equal subspaces are equal tuples
    assert a.basis == ((F(1), F(0)), (F(0), F(1)))


def test_span_drops_dependent_rows():
    s = span([(1, 2, 3), (2, 4, 6), (0, 0, 0)], 3)
    assert s.dim == 1
    assert s.basis == ((F(1), F(2), F(3)),)


def test_subspace_rejects_non_rref_basis():
    with pytest.raises(ValueError):
        Subspace(((F(2), F(0)), (F(0), F(1))), 2)


def test_kernel_of_difference_functional():
    # kernel of x - y in Q^2 is the diagonal
    k = kernel([(1, -1)], 2)
    assert k.basis == ((F(1), F(1)),)


def test_kernel_of_full_rank_system_is_zero():
    k = kernel([(1, 0), (0, 1)], 2)
    assert k.dim == 0 and k.basis == ()


def test_intersection_of_planes_in_q3():
    a = span([(1, 0, 0), (0, 1, 0)], 3)  # z = 0
    b = span([(0, 1, 0), (0, 0, 1)], 3)  # x = 0
    got = intersect(a, b)
    assert got == span([(0, 1, 0)], 3)


def test_restrict_covector_to_line():
    line = span([(1, 1)], 2)
    assert restrict_covector((2, 4), line) == (1,)
    # x - y dies on the diagonal
    assert restrict_covector((1, -1), line) is None


def test_restrict_covector_to_zero_subspace_is_zero_marker():
    zero = span([], 2)
    assert restrict_covector((5, 7), zero) is None


def test_primitive_and_canonical_covector():
    assert primitive((F(2, 3), F(-4, 3))) == (1, -2)
    assert canonical_covector((-2, 4)) == (1, -2)
    assert canonical_covector((0, -3, 6)) == (0, 1, -2)
    cov, s = canonical_covector_signed((-2, 4))
    assert cov == (1, -2) and s == -1
    cov, s = canonical_covector_signed((F(1, 2), -1))
    assert cov == (1, -2) and s == 1
    with pytest.raises(ValueError):
        primitive((0, 0))


def test_coords_roundtrip():
    s = span([(1, 0, 2), (0, 1, 3)], 3)
    v = (F(2), F(-1), F(1))
    c = s.coords_in(v)
    assert c == (F(2), F(-1))
    assert s.lift(c) == v
    assert s.coords_in((0, 0, 1)) is None


def test_annihilator_of_diagonal():
    assert annihilator(span([(1, 1)], 2)) == ((1, -1),)
    assert annihilator(full_space(2)) == ()
    assert set(annihilator(span([], 2))) == {(1, 0), (0, 1)}


def test_determinant_and_mat_mul():
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[1, 1], [1, 1]]) == 0
    assert mat_mul([[1, 2]], [[0, 1], [1, 0]]) == ((F(2), F(1)),)


def test_rref_pivots():
    rows, piv = rref([(0, 2, 4), (1, 1, 1)], 3)
    assert piv == (0, 1)
    assert rows == ((F(1), F(0), F(-1)), (F(0), F(1), F(2)))


# -- property tests ---------------------------------------------------------

small_frac = st.fractions(min_value=-4, max_value=4, max_denominator=3)


def vectors(n):
    return st.lists(small_frac, min_size=n, max_size=n).map(tuple)


def subspaces(n):
    return st.lists(vectors(n), min_size=0, max_size=n + 1).map(lambda vs: span(vs, n))


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: st.tuples(subspaces(n), subspaces(n))))
def test_dimension_formula(pair):
    a, b = pair
    n = a.ambient_dim
    both = intersect(a, b)
    total = span(list(a.basis) + list(b.basis), n)
    assert both.dim + total.dim == a.dim + b.dim
    assert a.contains(both) and b.contains(both)
    assert total.contains(a) and total.contains(b)


@settings(max_examples=120, deadline=None)
@given(st.integers(2, 4).flatmap(lambda n: subspaces(n)))
def test_annihilator_duality(s):
    n = s.ambient_dim
    ann = annihilator(s)
    assert len(ann) == n - s.dim
    assert all(dot(w, b) == 0 for w in ann for b in s.basis)
    # double annihilator comes back to the same subspace
    assert kernel(ann, n) == s


@settings(max_examples=120, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(subspaces(n), vectors(n))))
def test_membership_agrees_with_coords(case):
    s, v = case
    c = s.coords_in(v)
    if s.contains_vector(v):
        assert c is not None and s.lift(c) == qvec(v)
    else:
        assert c is None
