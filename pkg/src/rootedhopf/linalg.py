"""Dense exact linear algebra over the rationals.

Everything is computed with :class:`fractions.Fraction`; there is no
tolerance anywhere.  Rank uses fraction-free (Bareiss) elimination on a
row-scaled integer copy; kernels, solving and inversion use reduced row
echelon form with first-nonzero pivoting so that results are reproducible.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from math import lcm

from rootedhopf.errors import DimensionMismatch, SingularBasisError

__all__ = [
    "Rat",
    "QMatrix",
    "rank",
    "rref",
    "kernel_basis",
    "in_span",
    "solve",
    "inverse",
    "dual_basis",
]

Rat = Fraction


class QMatrix:
    """Immutable dense matrix of rationals."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.rows: tuple[tuple[Fraction, ...], ...] = tuple(
            tuple(Fraction(x) for x in r) for r in rows)
        self.nrows = len(self.rows)
        if ncols is None:
            ncols = len(self.rows[0]) if self.rows else 0
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise DimensionMismatch("ragged matrix rows")

    @classmethod
    def identity(cls, n: int) -> QMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, m: int, n: int) -> QMatrix:
        return cls([[0] * n for _ in range(m)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> QMatrix:
        if not cols:
            return cls.zeros(nrows or 0, 0)
        m = len(cols[0])
        return cls([[c[i] for c in cols] for i in range(m)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    def transpose(self) -> QMatrix:
        return QMatrix(self.columns(), self.nrows)

    def __matmul__(self, other):
        if isinstance(other, QMatrix):
            if self.ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return QMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0))
                             for c in cols] for r in self.rows], other.ncols)
        v = list(other)
        if len(v) != self.ncols:
            raise DimensionMismatch(f"cannot apply {self.shape} matrix to length {len(v)}")
        return [sum((a * Fraction(b) for a, b in zip(r, v)), Fraction(0)) for r in self.rows]

    def __add__(self, other: QMatrix) -> QMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return QMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                       self.ncols)

    def __sub__(self, other: QMatrix) -> QMatrix:
        return self + other.scale(-1)

    def scale(self, c) -> QMatrix:
        c = Fraction(c)
        return QMatrix([[c * a for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, QMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(a) for a in r) + "]" for r in self.rows)
        return f"QMatrix([{body}])"


def _as_rows(M) -> list[list[Fraction]]:
    if isinstance(M, QMatrix):
        return [list(r) for r in M.rows]
    return [[Fraction(x) for x in r] for r in M]


def _ncols(M, rows) -> int:
    if isinstance(M, QMatrix):
        return M.ncols
    return len(rows[0]) if rows else 0


def rank(M) -> int:
    """Exact rank by Bareiss elimination after clearing row denominators."""
    rows = _as_rows(M)
    ints = []
    for r in rows:
        d = lcm(*(x.denominator for x in r)) if r else 1
        ints.append([int(x * d) for x in r])
    m = len(ints)
    n = _ncols(M, rows)
    rk = 0
    prev = 1
    for col in range(n):
        piv = next((i for i in range(rk, m) if ints[i][col] != 0), None)
        if piv is None:
            continue
        ints[rk], ints[piv] = ints[piv], ints[rk]
        p = ints[rk][col]
        for i in range(rk + 1, m):
            a = ints[i][col]
            ri, rr = ints[i], ints[rk]
            for j in range(col, n):
                # exact division is guaranteed by Sylvester's identity
                ri[j] = (p * ri[j] - a * rr[j]) // prev
        prev = p
        rk += 1
        if rk == m:
            break
    return rk


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns (first-nonzero pivoting)."""
    rows = _as_rows(M)
    n = _ncols(M, rows)
    m = len(rows)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, m) if rows[i][col] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][col]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][col] != 0:
                a = rows[i][col]
                rows[i] = [x - a * y for x, y in zip(rows[i], rows[r])]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return rows, pivots


def kernel_basis(M) -> list[list[Fraction]]:
    """Basis of the right null space, one vector per free column."""
    rows = _as_rows(M)
    n = _ncols(M, rows)
    red, pivots = rref(rows) if rows else ([], [])
    free = [j for j in range(n) if j not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(M, b) -> list[Fraction] | None:
    """One solution of ``M x = b`` (free variables set to zero), or ``None``."""
    rows = _as_rows(M)
    if len(b) != len(rows):
        raise DimensionMismatch("right-hand side length differs from row count")
    n = _ncols(M, rows)
    aug = [r + [Fraction(x)] for r, x in zip(rows, b)]
    red, pivots = rref(QMatrix(aug, n + 1)) if aug else ([], [])
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for i, p in enumerate(pivots):
        x[p] = red[i][n]
    return x


def in_span(v: Sequence, S: Sequence[Sequence]) -> tuple[bool, list[Fraction] | None]:
    """Decide whether ``v`` is a combination of ``S``; return coordinates if so."""
    v = [Fraction(x) for x in v]
    for s in S:
        if len(s) != len(v):
            raise DimensionMismatch("spanning vectors and target differ in length")
    if not S:
        return (all(x == 0 for x in v), [] if all(x == 0 for x in v) else None)
    A = QMatrix.from_columns(S)
    x = solve(A, v)
    return (x is not None, x)


def inverse(M) -> QMatrix:
    rows = _as_rows(M)
    n = len(rows)
    if _ncols(M, rows) != n:
        raise DimensionMismatch("only square matrices are invertible")
    aug = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(rows)]
    red, pivots = rref(QMatrix(aug, 2 * n)) if aug else ([], [])
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        missing = next(j for j in range(n) if j not in pivots)
        raise SingularBasisError(f"matrix is singular: column {missing} is dependent", missing)
    return QMatrix([r[n:] for r in red], n)


def dual_basis(B: Sequence[Sequence]) -> list[list[Fraction]]:
    """Functionals ``f_j`` with ``f_j . e_i = delta_ij`` for the basis ``B``.

    ``B`` lists the basis vectors in reference coordinates; each returned
    functional is a coefficient vector in the same coordinates.
    """
    if not B:
        return []
    n = len(B[0])
    if len(B) != n:
        raise SingularBasisError(
            f"{len(B)} vectors cannot form a basis of a {n}-dimensional space",
            min(len(B), n))
    E = QMatrix.from_columns(B)
    _, pivots = rref(E)
    if len(pivots) < n:
        bad = next(j for j in range(n) if j not in pivots)
        raise SingularBasisError(f"basis vector {bad} depends on earlier vectors", bad)
    inv = inverse(E)
    return [list(r) for r in inv.rows]
