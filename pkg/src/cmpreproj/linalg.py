"""Exact linear algebra over F_p and over the rationals.

Matrices are plain numpy arrays.  Over F_p they are int64 arrays whose
entries always lie in [0, p); every product of two reduced entries is at
most (p-1)^2 and a dot product of length n stays below n * (p-1)^2, far
under 2^63 for the sizes we touch, so intermediate values never overflow
and no floating point is involved anywhere.  Over Q they are object
arrays holding ints / fractions.Fraction, which numpy combines with exact
Python arithmetic.

Row vectors are the default orientation throughout the package: a basis
of a subspace of k^n is a matrix whose rows are the basis vectors, kept
in reduced row echelon form so equal subspaces compare equal entrywise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

Matrix = np.ndarray

_MAX_PRIME = 1 << 20  # keeps p^2 * dim comfortably inside int64


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class Field:
    """Common exact-arithmetic interface; see PrimeField and RationalField."""

    char: int
    zero = 0
    one = 1

    # --- construction -------------------------------------------------

    def zeros(self, rows: int, cols: int) -> Matrix:
        raise NotImplementedError

    def eye(self, n: int) -> Matrix:
        raise NotImplementedError

    def mat(self, rows) -> Matrix:
        """Build a reduced matrix from a nested list of ints/Fractions."""
        raise NotImplementedError

    def reduce(self, a: Matrix) -> Matrix:
        """Canonical representative (mod p, or exact passthrough)."""
        raise NotImplementedError

    def inv_scalar(self, x):
        raise NotImplementedError

    def random_matrix(self, rows: int, cols: int, rng: np.random.Generator) -> Matrix:
        raise NotImplementedError

    # --- arithmetic ----------------------------------------------------

    def matmul(self, a: Matrix, b: Matrix) -> Matrix:
        return self.reduce(a @ b)

    def is_zero(self, a: Matrix) -> bool:
        if a.size == 0:
            return True
        return not np.any(a)

    def equal(self, a: Matrix, b: Matrix) -> bool:
        return a.shape == b.shape and self.is_zero(self.reduce(a - b))

    # --- elimination ----------------------------------------------------

    def rref(self, m: Matrix) -> tuple[Matrix, int, tuple[int, ...]]:
        """Reduced row echelon form.

        Returns (R, rank, pivot_columns).  R is canonical: two row-equivalent
        matrices give identical R, so subspaces can be compared entrywise.
        """
        a = self.reduce(np.array(m, copy=True))
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d matrix")
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            sub = a[r:, c]
            nz = np.nonzero(sub)[0]
            if nz.size == 0:
                continue
            pr = r + int(nz[0])
            if pr != r:
                a[[r, pr]] = a[[pr, r]]
            inv = self.inv_scalar(a[r, c])
            a[r] = self.reduce(a[r] * inv)
            col = a[:, c].copy()
            col[r] = self.zero
            touched = np.nonzero(col)[0]
            if touched.size:
                a[touched] = self.reduce(a[touched] - np.outer(col[touched], a[r]))
            pivots.append(c)
            r += 1
        return a, r, tuple(pivots)

    def rank(self, m: Matrix) -> int:
        if m.size == 0:
            return 0
        return self.rref(m)[1]

    def kernel_basis(self, m: Matrix) -> Matrix:
        """Canonical row-basis of the right kernel {v : m @ v = 0}."""
        nrows, ncols = m.shape
        if ncols == 0:
            return self.zeros(0, 0)
        red, rank, pivots = self.rref(m)
        free = [c for c in range(ncols) if c not in set(pivots)]
        basis = self.zeros(len(free), ncols)
        for k, f in enumerate(free):
            basis[k, f] = self.one
            for i, p in enumerate(pivots):
                basis[k, p] = -red[i, f]
        basis = self.reduce(basis)
        # free columns need not trail the pivot columns, so canonicalise
        return self.rref(basis)[0][: len(free)]

    def left_kernel(self, m: Matrix) -> Matrix:
        """Canonical row-basis of {v : v @ m = 0}."""
        return self.kernel_basis(m.T)

    def row_space(self, m: Matrix) -> Matrix:
        red, rank, _ = self.rref(m)
        return red[:rank]

    def solve_linear(self, m: Matrix, b: Matrix) -> Matrix | None:
        """One solution x of m @ x = b (free variables set to 0), or None."""
        x = self.solve_matrix(m, np.reshape(b, (-1, 1)))
        return None if x is None else x[:, 0]

    def solve_matrix(self, m: Matrix, bs: Matrix) -> Matrix | None:
        """Solve m @ X = bs column-wise; None if any column is unsolvable."""
        nrows, ncols = m.shape
        if bs.shape[0] != nrows:
            raise ValueError("shape mismatch in solve_matrix")
        aug = np.concatenate([self.reduce(np.array(m, copy=True)), self.reduce(np.array(bs, copy=True))], axis=1)
        red, rank, pivots = self.rref(aug)
        sol = self.zeros(ncols, bs.shape[1])
        for i, p in enumerate(pivots):
            if p >= ncols:
                return None  # pivot in the augmented block: inconsistent
            sol[p] = red[i, ncols:]
        # rows below rank are zero in the m-block by construction; any
        # nonzero augmented entry there was already caught as a pivot
        return sol

    def solve_row(self, m: Matrix, b: Matrix) -> Matrix | None:
        """One solution x of x @ m = b for row vectors (free vars 0)."""
        x = self.solve_linear(m.T, b)
        return x


class PrimeField(Field):
    """F_p with int64 numpy arrays, entries kept in [0, p)."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"characteristic {p} is not prime")
        if p > _MAX_PRIME:
            raise ValueError(f"characteristic {p} too large for the int64 backend")
        self.char = p
        self.zero = 0
        self.one = 1 % p

    def __repr__(self):
        return f"PrimeField({self.char})"

    def zeros(self, rows, cols):
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n):
        return np.eye(n, dtype=np.int64) % self.char

    def mat(self, rows):
        a = np.array([[int(x) % self.char for x in row] for row in rows], dtype=np.int64)
        if a.ndim == 1:  # empty input
            a = a.reshape(0, 0)
        return a

    def reduce(self, a):
        return a % self.char

    def inv_scalar(self, x):
        return pow(int(x), self.char - 2, self.char)

    def random_matrix(self, rows, cols, rng):
        return rng.integers(0, self.char, size=(rows, cols), dtype=np.int64)


class RationalField(Field):
    """Q with object arrays of ints / Fractions (exact Python arithmetic)."""

    def __init__(self):
        self.char = 0
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def __repr__(self):
        return "RationalField()"

    def zeros(self, rows, cols):
        a = np.empty((rows, cols), dtype=object)
        a[:] = Fraction(0)
        return a

    def eye(self, n):
        a = self.zeros(n, n)
        for i in range(n):
            a[i, i] = Fraction(1)
        return a

    def mat(self, rows):
        data = [[Fraction(x) for x in row] for row in rows]
        a = np.empty((len(data), len(data[0]) if data else 0), dtype=object)
        for i, row in enumerate(data):
            for j, x in enumerate(row):
                a[i, j] = x
        return a

    def reduce(self, a):
        if a.dtype != object:
            b = np.empty(a.shape, dtype=object)
            b[...] = [[Fraction(int(x)) for x in row] for row in a] if a.ndim == 2 else a.tolist()
            return b
        return a

    def inv_scalar(self, x):
        return Fraction(1) / Fraction(x)

    def random_matrix(self, rows, cols, rng):
        a = self.zeros(rows, cols)
        vals = rng.integers(-4, 5, size=(rows, cols))
        for i in range(rows):
            for j in range(cols):
                a[i, j] = Fraction(int(vals[i, j]))
        return a


def get_field(char: int) -> Field:
    """char 0 gives Q; a prime gives F_p."""
    if char == 0:
        return RationalField()
    return PrimeField(char)


@dataclass(frozen=True)
class Subspace:
    """A subspace of k^ambient_dim as a canonical (rref) row basis."""

    field: Field
    ambient_dim: int
    basis: Matrix  # rows, in rref

    @staticmethod
    def from_rows(field: Field, ambient_dim: int, rows: Matrix) -> "Subspace":
        if rows.size == 0:
            return Subspace(field, ambient_dim, field.zeros(0, ambient_dim))
        return Subspace(field, ambient_dim, field.row_space(rows))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def contains(self, v: Matrix) -> bool:
        if self.dim == 0:
            return self.field.is_zero(v)
        return self.field.rank(np.vstack([self.basis, v.reshape(1, -1)])) == self.dim

    def contains_space(self, other: "Subspace") -> bool:
        if other.dim == 0:
            return True
        return self.field.rank(np.vstack([self.basis, other.basis])) == self.dim

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.dim == other.dim
            and self.field.equal(self.basis, other.basis)
        )

    def __hash__(self):  # pragma: no cover - subspaces are not dict keys
        return hash((self.ambient_dim, self.dim))

    def sum(self, other: "Subspace") -> "Subspace":
        return Subspace.from_rows(self.field, self.ambient_dim, np.vstack([self.basis, other.basis]))

    def intersect(self, other: "Subspace") -> "Subspace":
        """Row spaces U, V: vectors c@U with c@U + d@V = 0 solved exactly."""
        if self.dim == 0 or other.dim == 0:
            return Subspace(self.field, self.ambient_dim, self.field.zeros(0, self.ambient_dim))
        stacked = np.vstack([self.basis, other.basis])
        coeffs = self.field.left_kernel(stacked)  # rows (c, d)
        vecs = self.field.matmul(coeffs[:, : self.dim], self.basis)
        return Subspace.from_rows(self.field, self.ambient_dim, vecs)

    def coords(self, v: Matrix) -> Matrix | None:
        """Coefficients expressing row v in this basis, or None."""
        return self.field.solve_row(self.basis, v)
