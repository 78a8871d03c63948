from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import M, mats, scalars
from svectcc.exactmat import (
    DimensionError,
    Mat,
    Scalar,
    SingularMatrixError,
    dsum,
    format_scalar,
    identity,
    inverse,
    is_invertible,
    is_permutation_matrix,
    kron,
    mat_mul,
    parse_scalar,
    perm_from_map,
    zeros,
)


# scalars


@pytest.mark.parametrize(
    "text, re, im",
    [("3", 3, 0), ("-1/2", Fraction(-1, 2), 0), ("1+2i", 1, 2), ("1-2i", 1, -2), ("1+-2i", 1, -2),
     ("i", 0, 1), ("-i", 0, -1), ("-3i", 0, -3), ("2/3+1/4i", Fraction(2, 3), Fraction(1, 4)), ("0-1i", 0, -1)],
)
def test_parse_scalar(text, re, im):
    assert parse_scalar(text) == Scalar(re, im)


@pytest.mark.parametrize("bad", ["", "1+", "x", "1.5", "1/0i/2", "++1"])
def test_parse_scalar_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad)


@given(scalars, st.integers(1, 5))
def test_scalar_format_roundtrip(s, d):
    s = Scalar(s.re / d, s.im)
    assert parse_scalar(format_scalar(s)) == s


@given(scalars, scalars)
def test_scalar_division(a, b):
    if b:
        assert (a / b) * b == a


# matrix construction and equality


def test_canonical_form_makes_equality_structural():
    a = Mat.from_rows([[Fraction(1, 2), 1]])
    b = Mat.from_rows([["2/4", "1"]])
    assert a == b and hash(a) == hash(b)
    assert a.scale(2) == M([1, 2])


def test_empty_shapes_are_distinguished():
    assert zeros(2, 0) != zeros(0, 2)
    assert zeros(2, 0).is_empty and zeros(0, 0).is_empty
    assert Mat.from_rows([], (0, 3)).shape == (0, 3)
    with pytest.raises(DimensionError):
        Mat.from_rows([])
    with pytest.raises(DimensionError):
        Mat.from_rows([[1, 2], [3]])


# products


def test_mat_mul_examples():
    assert M([1, 2], [3, 4]) @ M([0, 1], [1, 0]) == M([2, 1], [4, 3])
    m = M([1, "i"], [0, 2], [3, "1/2"])
    assert identity(3) @ m == m
    assert mat_mul(zeros(2, 0), zeros(0, 3)) == zeros(2, 3)
    assert mat_mul(zeros(2, 0), zeros(0, 3)).shape == (2, 3)


def test_mat_mul_shape_mismatch():
    with pytest.raises(DimensionError):
        M([1, 2]) @ M([1, 2])


def test_complex_product():
    assert M(["i"]) @ M(["i"]) == M([-1])
    assert M(["1+i"]) @ M(["1-i"]) == M([2])


@settings(max_examples=60)
@given(st.data())
def test_mat_mul_associative_and_unital(data):
    p, q, r, s = (data.draw(st.integers(0, 3)) for _ in range(4))
    A = data.draw(mats(st.just(p), st.just(q)))
    B = data.draw(mats(st.just(q), st.just(r)))
    C = data.draw(mats(st.just(r), st.just(s)))
    assert (A @ B) @ C == A @ (B @ C)
    assert identity(p) @ A == A == A @ identity(q)


def test_kron_examples():
    assert kron(identity(2), M([5])) == M([5, 0], [0, 5])
    assert kron(M([2]), zeros(0, 3)) == zeros(0, 3)
    assert kron(M([1, 1]), M([2], [3])) == M([2, 2], [3, 3])
    assert kron(zeros(2, 0), M([1, 2])).shape == (2, 0)


@settings(max_examples=60)
@given(st.data())
def test_kron_mixed_product(data):
    p, q, r, s, t, u = (data.draw(st.integers(0, 2)) for _ in range(6))
    A = data.draw(mats(st.just(p), st.just(q)))
    C = data.draw(mats(st.just(q), st.just(r)))
    B = data.draw(mats(st.just(s), st.just(t)))
    D = data.draw(mats(st.just(t), st.just(u)))
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)


# direct sums


def test_dsum_examples():
    A = M([1, 2])
    assert dsum([A]) == A
    assert dsum([M([1]), M([2])]) == M([1, 0], [0, 2])
    assert dsum([zeros(2, 0), M([7])]) == M([0], [0], [7])
    assert dsum([]) == zeros(0, 0)
    assert dsum([zeros(0, 2), zeros(1, 0)]) == zeros(1, 2)


@settings(max_examples=60)
@given(st.lists(mats(), max_size=3), st.lists(mats(), max_size=3))
def test_dsum_strictly_associative(xs, ys):
    assert dsum(xs + ys) == dsum([dsum(xs), dsum(ys)])


# inverses


def test_inverse_examples():
    assert inverse(identity(3)) == identity(3)
    assert inverse(zeros(0, 0)) == zeros(0, 0)
    assert inverse(M([1, 1], [0, 1])) == M([1, -1], [0, 1])
    assert inverse(M(["i"])) == M(["-i"])
    assert inverse(M(["1+i", 0], [1, 2])) == M(["1/2-1/2i", 0], ["-1/4+1/4i", "1/2"])


def test_inverse_errors():
    with pytest.raises(SingularMatrixError):
        inverse(M([1, 2], [2, 4]))
    with pytest.raises(DimensionError):
        inverse(M([1, 2]))
    assert not is_invertible(M([0]))
    assert not is_invertible(M([1, 2]))


@settings(max_examples=80)
@given(st.integers(0, 4).flatmap(lambda k: mats(st.just(k), st.just(k))))
def test_inverse_is_two_sided(A):
    if is_invertible(A):
        B = inverse(A)
        assert A @ B == identity(A.rows) == B @ A


# permutations


def test_perm_from_map():
    assert perm_from_map([0, 1, 2]) == identity(3)
    assert perm_from_map([1, 0]) == M([0, 1], [1, 0])
    worked_6x6 = M(
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0, 0],
    )
    assert perm_from_map([0, 3, 4, 5, 1, 2]) == worked_6x6
    assert is_permutation_matrix(worked_6x6)
    with pytest.raises(ValueError):
        perm_from_map([0, 0, 1])
    with pytest.raises(ValueError):
        perm_from_map([0, 3])


def test_perm_conjugation_convention():
    D = dsum([M([10]), M([20]), M([30])])
    sigma = [2, 0, 1]
    P = perm_from_map(sigma)
    conj = P @ D @ inverse(P)
    assert [conj[r, r] for r in range(3)] == [D[sigma[r], sigma[r]] for r in range(3)]


def test_values_are_immutable():
    m = M([1, 2])
    with pytest.raises((ValueError, TypeError, AttributeError)):
        m._re[0, 0] = 5
