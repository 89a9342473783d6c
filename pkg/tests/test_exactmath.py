import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from depthlab.exactmath import (GF, QQ, DenseMatrix, FieldElem, PrimeField, RationalFunctionField,
                                field_from_spec, rank_and_kernel)
from oracles import brute_rank_kernel

fractions = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 1000)


def test_rational_sum():
    a, b = FieldElem(QQ, Fraction(1, 2)), FieldElem(QQ, Fraction(1, 3))
    assert (a + b).value == Fraction(5, 6)


def test_prime_field_product():
    F = GF(5)
    assert (F(3) * F(4)).value == 2


def test_char_two_function_field():
    K = RationalFunctionField(GF(2))
    t = FieldElem(K, K.gen())
    s = t + 1
    assert (s + s).is_zero()


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        QQ.inv(Fraction(0))
    with pytest.raises(ZeroDivisionError):
        GF(7).inv(0)
    K = RationalFunctionField(QQ)
    with pytest.raises(ZeroDivisionError):
        K.inv(K.zero)


def test_field_mismatch():
    with pytest.raises((TypeError, ValueError)):
        GF(5)(1) + GF(7)(1)
    with pytest.raises((TypeError, ValueError)):
        QQ(1) + GF(7)(1)


def test_prime_residues_canonical():
    F = GF(11)
    assert F.coerce(-1) == 10
    assert F.coerce(23) == 1
    assert F.coerce(Fraction(1, 2)) == 6


def test_rational_function_canonical():
    K = RationalFunctionField(QQ)
    t = K.gen()
    # (t^2 - 1) / (2t - 2) = (t + 1) / 2
    num = K.sub(K.mul(t, t), K.one)
    den = K.sub(K.mul(K.coerce(2), t), K.coerce(2))
    q = K.div(num, den)
    assert q == K.div(K.add(t, K.one), K.coerce(2))
    assert q.den[-1] == 1  # monic denominator
    assert K.coerce(q) == q


def test_field_specs():
    assert field_from_spec("Q") == QQ
    assert field_from_spec("Fp:5") == PrimeField(5)
    assert field_from_spec("Fp").p == 32003
    assert isinstance(field_from_spec("Qt"), RationalFunctionField)
    with pytest.raises(ValueError):
        field_from_spec("R")


@given(fractions, fractions, fractions)
def test_rational_axioms(a, b, c):
    F = QQ
    assert F.add(a, F.zero) == a and F.mul(a, F.one) == a
    assert F.mul(F.add(a, b), c) == F.add(F.mul(a, c), F.mul(b, c))
    assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    if a != 0:
        assert F.mul(a, F.inv(a)) == 1


@given(st.integers(), st.integers(), st.integers())
def test_prime_axioms(a, b, c):
    F = GF(101)
    a, b, c = F.coerce(a), F.coerce(b), F.coerce(c)
    assert 0 <= a < 101
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    if a:
        assert F.mul(a, F.inv(a)) == 1
    assert F.coerce(a) == a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_function_field_axioms(seed):
    rng = random.Random(seed)
    K = RationalFunctionField(GF(7))
    a, b, c = (K.random_element(rng) for _ in range(3))
    assert K.mul(K.add(a, b), c) == K.add(K.mul(a, c), K.mul(b, c))
    assert K.add(a, K.neg(a)) == K.zero
    if not K.is_zero(a):
        assert K.mul(a, K.inv(a)) == K.one
    assert K.coerce(a) == a


def test_identity_rank():
    r, K = rank_and_kernel(DenseMatrix.identity(QQ, 2))
    assert r == 2 and K.nrows == 0


def test_rank_one():
    r, K = rank_and_kernel(DenseMatrix(QQ, [[1, 1], [1, 1]]))
    assert r == 1
    assert [list(row) for row in K.rows] == [[1, -1]]


def test_empty_matrix():
    r, K = rank_and_kernel(DenseMatrix(QQ, [], ncols=0))
    assert r == 0


@pytest.mark.parametrize("seed", range(10))
def test_random_3x5_against_oracle(seed):
    rng = random.Random(seed)
    rows = [[rng.randint(-3, 3) for _ in range(5)] for _ in range(3)]
    if seed % 3 == 0:
        rows[2] = [a + b for a, b in zip(rows[0], rows[1])]
    r, K = rank_and_kernel(DenseMatrix(QQ, rows))
    r2, K2 = brute_rank_kernel(rows)
    assert r == r2
    assert K.nrows == len(K2) == 5 - r
    # same row space as the oracle kernel
    assert DenseMatrix(QQ, list(K.rows) + K2).rank() == K.nrows
    for v in K.rows:
        assert all(sum(Fraction(a) * b for a, b in zip(row, v)) == 0 for row in rows)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=5))
def test_rank_transpose_and_kernel(rows):
    A = DenseMatrix(QQ, rows)
    r, K = rank_and_kernel(A)
    assert r == A.transpose().rank()
    assert r + K.nrows == A.ncols
    for v in K.rows:
        assert all(x == 0 for x in A.apply(v))
    # kernel basis is in reduced echelon form
    assert K.nrows == 0 or K.rref()[0] == K
