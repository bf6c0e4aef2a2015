"""Exact rational linear algebra: matrices, subspaces, complements, projections.

Everything is computed over the rationals with arbitrary-precision
arithmetic (``fractions.Fraction``); there is no floating point anywhere.
Subspaces are kept in reduced row-echelon form, so two subspaces are equal
iff their representations are equal entry-wise.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction


Scalar = Fraction


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class Matrix:
    """Dense row-major matrix of Fractions."""

    rows: int
    cols: int
    entries: tuple  # flat, length rows * cols

    @staticmethod
    def from_rows(rows_data, cols: int | None = None) -> "Matrix":
        rows_data = [list(r) for r in rows_data]
        n_rows = len(rows_data)
        if cols is None:
            if not rows_data:
                raise ValueError("cannot infer column count of an empty matrix")
            cols = len(rows_data[0])
        flat = []
        for r in rows_data:
            if len(r) != cols:
                raise ValueError("ragged rows")
            flat.extend(_frac(x) for x in r)
        return Matrix(n_rows, cols, tuple(flat))

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix(rows, cols, (Fraction(0),) * (rows * cols))

    @staticmethod
    def identity(n: int) -> "Matrix":
        flat = [Fraction(0)] * (n * n)
        for i in range(n):
            flat[i * n + i] = Fraction(1)
        return Matrix(n, n, tuple(flat))

    def __getitem__(self, ij) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def row_list(self) -> list:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Matrix":
        flat = [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)]
        return Matrix(self.cols, self.rows, tuple(flat))

    def matmul(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matmul")
        flat = []
        for i in range(self.rows):
            ri = self.row(i)
            for j in range(other.cols):
                s = Fraction(0)
                for k in range(self.cols):
                    a = ri[k]
                    if a:
                        s += a * other.entries[k * other.cols + j]
                flat.append(s)
        return Matrix(self.rows, other.cols, tuple(flat))

    def apply(self, vec) -> list:
        """Matrix times column vector."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = []
        for i in range(self.rows):
            s = Fraction(0)
            for k, a in enumerate(self.row(i)):
                if a and vec[k]:
                    s += a * vec[k]
            out.append(s)
        return out

    def stack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return Matrix(self.rows + other.rows, self.cols, self.entries + other.entries)


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank. Idempotent."""
    rows = [m.row(i) for i in range(m.rows)]
    n_rows, n_cols = m.rows, m.cols
    pivot_row = 0
    pivots = []
    for col in range(n_cols):
        sel = None
        for r in range(pivot_row, n_rows):
            if rows[r][col] != 0:
                sel = r
                break
        if sel is None:
            continue
        rows[pivot_row], rows[sel] = rows[sel], rows[pivot_row]
        pv = rows[pivot_row][col]
        if pv != 1:
            rows[pivot_row] = [x / pv for x in rows[pivot_row]]
        for r in range(n_rows):
            if r != pivot_row and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[pivot_row])]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == n_rows:
            break
    flat = tuple(x for row in rows for x in row)
    return Matrix(n_rows, n_cols, flat), len(pivots)


def pivot_columns(m: Matrix) -> list[int]:
    """Pivot column indices of a matrix already in reduced echelon form."""
    cols = []
    for i in range(m.rows):
        row = m.row(i)
        for j, x in enumerate(row):
            if x != 0:
                cols.append(j)
                break
    return cols


def kernel_basis(m: Matrix) -> list[list]:
    """Basis of the right kernel {x : m @ x = 0}, rows of the result."""
    red, _ = rref(m)
    piv = pivot_columns(red)
    piv_set = set(piv)
    free = [j for j in range(m.cols) if j not in piv_set]
    basis = []
    for f in free:
        vec = [Fraction(0)] * m.cols
        vec[f] = Fraction(1)
        for r, p in enumerate(piv):
            vec[p] = -red[r, f]
        basis.append(vec)
    return basis


def solve(m: Matrix, rhs) -> list | None:
    """One solution x of m @ x = rhs, or None if inconsistent."""
    aug = Matrix.from_rows([m.row(i) + [_frac(rhs[i])] for i in range(m.rows)])
    red, _ = rref(aug)
    piv = pivot_columns(red)
    if m.cols in piv:
        return None
    x = [Fraction(0)] * m.cols
    for r, p in enumerate(piv):
        x[p] = red[r, m.cols]
    return x


@dataclass(frozen=True)
class Subspace:
    """Subspace of k^n, basis rows in reduced echelon form (canonical)."""

    ambient: int
    basis: Matrix  # rows are basis vectors; rows == dim

    @staticmethod
    def from_vectors(ambient: int, vectors) -> "Subspace":
        vectors = [list(v) for v in vectors]
        for v in vectors:
            if len(v) != ambient:
                raise ValueError("vector length != ambient dimension")
        if not vectors:
            return Subspace(ambient, Matrix(0, ambient, ()))
        red, rank = rref(Matrix.from_rows(vectors, ambient))
        flat = red.entries[: rank * ambient]
        return Subspace(ambient, Matrix(rank, ambient, flat))

    @staticmethod
    def zero(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix(0, ambient, ()))

    @staticmethod
    def full(ambient: int) -> "Subspace":
        return Subspace(ambient, Matrix.identity(ambient))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def vectors(self) -> list[list]:
        return self.basis.row_list()

    def contains(self, vec) -> bool:
        if len(vec) != self.ambient:
            raise ValueError("ambient mismatch")
        stacked = self.basis.stack(Matrix.from_rows([vec], self.ambient))
        _, rank = rref(stacked)
        return rank == self.dim

    def coordinates_of(self, vec) -> list | None:
        """Coordinates of vec in this basis, or None if vec is outside."""
        return solve(self.basis.transpose(), vec)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    if u.ambient != w.ambient:
        raise ValueError("ambient mismatch")
    return Subspace.from_vectors(u.ambient, u.vectors() + w.vectors())


def intersect(u: Subspace, w: Subspace) -> Subspace:
    """U ∩ W via the joint kernel of the stacked coefficient system."""
    if u.ambient != w.ambient:
        raise ValueError("ambient mismatch")
    if u.dim == 0 or w.dim == 0:
        return Subspace.zero(u.ambient)
    # columns: coefficients (a, b) with a·U = b·W; rows: ambient equations
    cols = u.dim + w.dim
    rows = []
    ub, wb = u.vectors(), w.vectors()
    for i in range(u.ambient):
        rows.append([ub[r][i] for r in range(u.dim)] + [-wb[r][i] for r in range(w.dim)])
    vecs = []
    for coeffs in kernel_basis(Matrix.from_rows(rows, cols)):
        v = [Fraction(0)] * u.ambient
        for r in range(u.dim):
            if coeffs[r]:
                v = [x + coeffs[r] * y for x, y in zip(v, ub[r])]
        vecs.append(v)
    return Subspace.from_vectors(u.ambient, vecs)


def coordinate_complement(u: Subspace) -> Subspace:
    """Span of the standard vectors at the non-pivot columns of u's basis."""
    piv = set(pivot_columns(u.basis))
    vecs = []
    for j in range(u.ambient):
        if j not in piv:
            v = [Fraction(0)] * u.ambient
            v[j] = Fraction(1)
            vecs.append(v)
    return Subspace.from_vectors(u.ambient, vecs)


def projection_along(u: Subspace, t: Subspace) -> Matrix:
    """Matrix (dim t) x n of the projection onto t with kernel u.

    Output rows are coordinates in t's basis: for x in k^n written
    uniquely as x = a + b with a in u, b in t, the result maps x to the
    t-coordinates of b.
    """
    n = u.ambient
    if t.ambient != n:
        raise ValueError("ambient mismatch")
    if u.dim + t.dim != n:
        raise ValueError("u and t do not form a direct sum decomposition")
    cols = [v for v in u.vectors()] + [v for v in t.vectors()]
    m = Matrix.from_rows(cols, n).transpose()  # n x n, columns = u-basis then t-basis
    red, _ = rref(Matrix.from_rows([m.row(i) + Matrix.identity(n).row(i) for i in range(n)]))
    if pivot_columns(red)[:n] != list(range(n)):
        raise ValueError("u and t do not form a direct sum decomposition")
    inv_rows = [red.row(i)[n:] for i in range(n)]
    return Matrix.from_rows(inv_rows[u.dim :], n)


def add_scaled(acc: dict, vec: dict, c) -> None:
    """acc += c * vec for sparse vectors keyed by hashable coordinates."""
    if not c:
        return
    for k, v in vec.items():
        s = acc.get(k, Fraction(0)) + c * v
        if s:
            acc[k] = s
        else:
            del acc[k]


def apply_linear(mapping, vec: dict) -> dict:
    """Apply a basis-indexed linear map {key -> image vector} to a vector."""
    out: dict = {}
    for key, c in vec.items():
        add_scaled(out, mapping[key], c)
    return out


class SpanBuilder:
    """Incremental reduced echelon span over hashable, ordered column keys.

    Pivots sit on the largest key present in a row, so smaller keys are
    preferred as surviving representatives of the quotient.
    """

    def __init__(self):
        self.pivots: dict = {}

    def reduce(self, row: dict) -> dict:
        row = dict(row)
        while row:
            lead = max(row)
            prow = self.pivots.get(lead)
            if prow is None:
                stale = [c for c in row if c != lead and c in self.pivots]
                if not stale:
                    return row
                c = stale[0]
                add_scaled(row, self.pivots[c], -row[c])
                continue
            add_scaled(row, prow, -row[lead])
        return row

    def insert(self, row: dict) -> bool:
        """Reduce and adjoin; returns True if the rank grew."""
        row = self.reduce(row)
        if not row:
            return False
        lead = max(row)
        inv = Fraction(1) / row[lead]
        row = {c: v * inv for c, v in row.items()}
        for prow in self.pivots.values():
            if lead in prow:
                add_scaled(prow, row, -prow[lead])
        self.pivots[lead] = row
        return True

    def contains(self, row: dict) -> bool:
        return not self.reduce(row)

    @property
    def rank(self) -> int:
        return len(self.pivots)


def span_rank(vectors) -> int:
    span = SpanBuilder()
    for v in vectors:
        span.insert(v)
    return span.rank


def random_subspace(n: int, d: int, seed: int) -> Subspace:
    """Seeded d-dimensional subspace of k^n with small integer entries."""
    if d < 0 or d > n:
        raise ValueError("dimension out of range")
    if d == 0:
        return Subspace.zero(n)
    rng = random.Random(seed)
    for _ in range(100):
        vecs = [[Fraction(rng.randint(-9, 9)) for _ in range(n)] for _ in range(d)]
        sub = Subspace.from_vectors(n, vecs)
        if sub.dim == d:
            return sub
    raise ValueError("failed to generate a subspace of the requested dimension")
