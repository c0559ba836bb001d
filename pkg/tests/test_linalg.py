import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from meshrep.linalg import (
    GF, QQ, FieldSpec, Matrix, column_space_basis, inverse, is_invertible,
    kernel_basis, rank, rref, solve,
)

FIELDS = [QQ, GF(5), GF(32003)]


@pytest.mark.parametrize("field", FIELDS)
def test_rank_empty_and_identity(field):
    assert rank(Matrix.zeros(field, 0, 0)) == 0
    assert rank(Matrix.identity(field, 3)) == 3


def test_rank_dependent_rows():
    m = Matrix.from_rows(QQ, [[1, 2], [2, 4]])
    assert rank(m) == 1


@pytest.mark.parametrize("field", FIELDS)
def test_kernel_identity_and_zero(field):
    assert kernel_basis(Matrix.identity(field, 2)).ncols == 0
    k = kernel_basis(Matrix.zeros(field, 2, 2))
    assert k.ncols == 2 and rank(k) == 2


def test_kernel_f5_row():
    m = Matrix.from_rows(GF(5), [[1, 1]])
    k = kernel_basis(m)
    assert k.ncols == 1
    assert (m @ k).is_zero()
    # spans (1, -1): second entry = -first
    assert (k[1, 0] + k[0, 0]) % 5 == 0 and k[0, 0] != 0


def test_solve_cases():
    ident = Matrix.identity(QQ, 2)
    b = Matrix.column(QQ, [3, 4])
    assert solve(ident, b) == b
    assert solve(Matrix.zeros(QQ, 2, 2), b) is None
    two = Matrix.from_rows(QQ, [[2]])
    x = solve(two, Matrix.column(QQ, [1]))
    assert x[0, 0] * 2 == 1


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 2), st.data())
def test_rank_nullity_and_solve(nr, nc, fidx, data):
    field = FIELDS[fidx]
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    m = Matrix.random(field, nr, nc, rng)
    r = rank(m)
    k = kernel_basis(m)
    assert r + k.ncols == nc
    assert (m @ k).is_zero()
    # transposed elimination order gives the same rank
    assert rank(m.transpose()) == r
    x = Matrix.random(field, nc, 1, rng)
    b = m @ x
    sol = solve(m, b)
    assert sol is not None
    assert (m @ sol - b).is_zero()


def test_block_and_inverse():
    f = GF(7)
    a = Matrix.from_rows(f, [[1, 2], [3, 4]])
    blk = Matrix.block(f, [[a, None], [None, Matrix.identity(f, 1)]], [2, 1], [2, 1])
    assert blk.nrows == 3 and blk.ncols == 3
    assert is_invertible(a)
    ai = inverse(a)
    assert (a @ ai) == Matrix.identity(f, 2)


def test_column_space_basis():
    m = Matrix.from_rows(QQ, [[1, 2, 3], [2, 4, 6], [0, 0, 1]])
    b = column_space_basis(m)
    assert b.ncols == rank(m) == 2
