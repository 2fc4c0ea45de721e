from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from deligne_kit.fields import GF, QQ, CharacteristicTooSmall, FieldError, parse_field, require_denominators
from deligne_kit.glin import (CompositionNotZero, GradedMap, GradedVectorSpace, Matrix, NotAComplex,
                              ShapeMismatch, homology, image_basis, kernel_basis, split_complex)

from oracles import rank_mod_p


def test_kernel_of_identity_is_empty(F5):
    assert kernel_basis(Matrix.identity(F5, 2)) == []


def test_kernel_of_row_of_ones(F5):
    assert kernel_basis(Matrix(F5, [[1, 1]])) == [(1, 4)]


def test_kernel_of_rank_two_3x5(F5):
    M = Matrix(F5, [[1, 2, 0, 3, 1], [0, 1, 4, 1, 2], [1, 3, 4, 4, 3]])
    K = kernel_basis(M)
    r = rank_mod_p([list(r) for r in M.rows], 5)
    assert r == 2
    assert len(K) == 5 - r
    assert all(not any(M.apply(v)) for v in K)


def test_image_examples(F5, Q):
    assert image_basis(Matrix.zeros(F5, 2, 3)) == []
    assert image_basis(Matrix.identity(F5, 3)) == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    assert image_basis(Matrix(Q, [[1, 2], [2, 4]])) == [(1, 2)]


def test_fields_parse_and_reject():
    assert parse_field("F_7") is GF(7)
    assert parse_field("QQ") is QQ
    with pytest.raises(FieldError):
        parse_field("F6")
    with pytest.raises(FieldError):
        parse_field("R")
    assert QQ("-3/2") == Fraction(-3, 2)
    assert GF(5)("1/2") == 3


def test_denominator_bound():
    require_denominators(GF(5), 4)
    require_denominators(QQ, 100)
    with pytest.raises(CharacteristicTooSmall):
        require_denominators(GF(3), 3)


def _two_term(F, M, lo=0):
    V = GradedVectorSpace(F, {lo: [f"u{i}" for i in range(M.ncols)], lo + 1: [f"v{i}" for i in range(M.nrows)]})
    return V, GradedMap(V, V, 1, {lo: M})


def test_homology_examples(F5):
    V = GradedVectorSpace(F5, {0: ["a", "b", "c"]})
    zero = GradedMap(V, V, 1, {})
    H = homology(zero, zero, 0)
    assert H.dim == 3
    assert H.projection == Matrix.identity(F5, 3)
    V, d = _two_term(F5, Matrix.identity(F5, 1))
    assert homology(d, d, 0).dim == 0
    assert homology(d, d, 1).dim == 0
    V, d = _two_term(F5, Matrix(F5, [[1], [0]]))
    assert homology(d, d, 0).dim == 0


def test_homology_rejects_non_complex(F5):
    a = Matrix(F5, [[1]])
    with pytest.raises(CompositionNotZero):
        from deligne_kit.glin import homology_of
        homology_of(a, a)


def test_split_zero_and_iso(F5):
    V = GradedVectorSpace(F5, {0: ["a"], 1: ["b"]})
    s = split_complex(GradedMap(V, V, 1, {}))
    assert s.H_dim(0) == s.H_dim(1) == 1
    assert s.h.at(1).is_zero()
    V, d = _two_term(F5, Matrix(F5, [[3]]))
    s = split_complex(d)
    assert s.H_dim(0) == s.H_dim(1) == 0
    assert s.degrees[1].B and s.degrees[0].C
    assert s.h.at(1) == Matrix(F5, [[2]])


def test_split_rejects_non_complex(F5):
    V = GradedVectorSpace(F5, {0: ["a"], 1: ["b"], 2: ["c"]})
    d = GradedMap(V, V, 1, {0: Matrix(F5, [[1]]), 1: Matrix(F5, [[1]])})
    with pytest.raises(NotAComplex):
        split_complex(d)


def test_shape_mismatch(F5):
    V = GradedVectorSpace(F5, {0: ["a"], 1: ["b"]})
    with pytest.raises(ShapeMismatch):
        GradedMap(V, V, 1, {0: Matrix.identity(F5, 2)})
    with pytest.raises(ShapeMismatch):
        GradedVectorSpace(F5, {0: ["a", "a"]})


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60, deadline=None)
@given(matrices)
def test_rank_nullity_against_sympy(rows):
    M = Matrix(QQ, rows)
    K = kernel_basis(M)
    assert len(K) + M.rank() == M.ncols
    assert M.rank() == sympy.Matrix(rows).rank()
    assert all(not any(M.apply(v)) for v in K)


@settings(max_examples=60, deadline=None)
@given(matrices, st.sampled_from([2, 3, 5, 7]))
def test_rank_mod_p_against_oracle(rows, p):
    M = Matrix(GF(p), rows)
    assert M.rank() == rank_mod_p(rows, p)
    assert kernel_basis(M) == kernel_basis(Matrix(GF(p), rows))


@settings(max_examples=40, deadline=None)
@given(matrices, st.sampled_from(["Q", "F5"]))
def test_splitting_identities(rows, field):
    F = parse_field(field)
    V, d = _two_term(F, Matrix(F, rows))
    s = split_complex(d)
    D, h = d.at(0), s.h.at(1)
    assert D @ h @ D == D
    assert h @ D @ h == h
