"""Exact elimination: hand-checked values plus randomized invariants."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from cmpreproj.linalg import PrimeField, RationalField, Subspace, get_field

FIELDS = [PrimeField(101), PrimeField(2), RationalField()]


def test_rref_hand_checked_int():
    f = RationalField()
    m = f.mat([[1, 2, 1], [2, 4, 0], [0, 0, 1]])
    red, rank, pivots = f.rref(m)
    assert rank == 2
    assert pivots == (0, 2)
    assert red[0].tolist() == [1, 2, 0]
    assert red[1].tolist() == [0, 0, 1]
    assert all(x == 0 for x in red[2])


def test_rref_hand_checked_mod_p():
    f = PrimeField(5)
    m = f.mat([[2, 1], [1, 3]])
    red, rank, pivots = f.rref(m)
    # det = 5 = 0 mod 5, so rank drops to 1
    assert rank == 1
    assert pivots == (0,)
    assert red[0].tolist() == [1, 3]  # 2^-1 = 3 mod 5, 3*1 = 3


def test_solve_linear_free_vars_zero():
    f = PrimeField(101)
    m = f.mat([[1, 1, 0], [0, 0, 1]])
    x = f.solve_linear(m, np.array([7, 9]))
    assert x.tolist() == [7, 0, 9]


def test_solve_linear_unsolvable():
    f = RationalField()
    m = f.mat([[1, 1], [2, 2]])
    assert f.solve_linear(m, f.mat([[1], [3]])[:, 0]) is None


@pytest.mark.parametrize("field", FIELDS)
def test_randomized_invariants(field):
    rng = np.random.default_rng(20240)
    for trial in range(12):
        rows = int(rng.integers(0, 7))
        cols = int(rng.integers(1, 7))
        m = field.random_matrix(rows, cols, rng)
        red, rank, pivots = field.rref(m)
        assert rank == len(pivots) <= min(rows, cols)
        # rref is idempotent and canonical under row mixing
        again, rank2, pivots2 = field.rref(red)
        assert rank2 == rank and pivots2 == pivots
        assert field.equal(again, red)
        if rows:
            mix = field.random_matrix(rows, rows, rng)
            while field.rank(mix) < rows:
                mix = field.random_matrix(rows, rows, rng)
            mixed_red, mixed_rank, _ = field.rref(field.matmul(mix, m))
            assert mixed_rank == rank
            assert field.equal(mixed_red, red)
        # rank of the transpose agrees
        assert field.rank(m.T) == rank
        # kernel: dimension count and membership
        ker = field.kernel_basis(m)
        assert ker.shape == (cols - rank, cols)
        if ker.shape[0] and rows:
            assert field.is_zero(field.matmul(m, ker.T))
        # any solvable system round-trips
        if rows:
            x = field.random_matrix(cols, 1, rng)
            b = field.matmul(m, x)
            sol = field.solve_matrix(m, b)
            assert sol is not None
            assert field.equal(field.matmul(m, sol), b)


@pytest.mark.parametrize("field", FIELDS)
def test_subspace_modular_law_dims(field):
    rng = np.random.default_rng(7)
    for trial in range(8):
        n = int(rng.integers(1, 7))
        u = Subspace.from_rows(field, n, field.random_matrix(int(rng.integers(0, n + 1)), n, rng))
        v = Subspace.from_rows(field, n, field.random_matrix(int(rng.integers(0, n + 1)), n, rng))
        s = u.sum(v)
        i = u.intersect(v)
        assert s.dim + i.dim == u.dim + v.dim
        assert s.contains_space(u) and s.contains_space(v)
        assert u.contains_space(i) and v.contains_space(i)
        for row in i.basis:
            assert u.contains(row) and v.contains(row)


def test_rational_entries_stay_exact():
    f = RationalField()
    m = f.mat([[1, 3], [1, 6]])
    red, rank, _ = f.rref(m)
    assert rank == 2
    ker = f.kernel_basis(f.mat([[3, 7]]))
    assert ker.shape == (1, 2)
    # leading coefficient normalized to 1, second entry an exact fraction
    assert ker[0, 0] == 1 and ker[0, 1] == Fraction(-3, 7)


def test_prime_field_rejects_composite():
    with pytest.raises(ValueError):
        PrimeField(91)
    assert get_field(0).char == 0
    assert get_field(101).char == 101
