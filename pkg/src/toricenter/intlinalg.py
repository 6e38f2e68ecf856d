"""Exact integer matrices: rank, determinant, column Hermite form, inverses.

All entries are Python ints, so nothing here can overflow. Indices are
0-based in code; reports and JSON use 1-based column numbers only where
noted.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import (
    NonSquare,
    NotUnimodular,
    ParseError,
    RankDeficient,
    ShapeMismatch,
    SingularMinor,
)

_JSON_SAFE = 2**53


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in row) for row in self.entries)
        if self.rows < 1 or self.cols < 1:
            raise ShapeMismatch(f"matrix must be at least 1x1, got {self.rows}x{self.cols}")
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ShapeMismatch(f"entries do not form a {self.rows}x{self.cols} matrix")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> IntMatrix:
        rows = [list(r) for r in rows]
        if not rows:
            raise ShapeMismatch("matrix needs at least one row")
        return cls(len(rows), len(rows[0]), rows)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, index: tuple[int, int]) -> int:
        i, j = index
        return self.entries[i][j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def col(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.entries)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, list(zip(*self.entries)))

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> IntMatrix:
        return IntMatrix(
            len(rows), len(cols), [[self.entries[i][j] for j in cols] for i in rows]
        )

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        return mat_mul(self, other)

    def max_abs(self) -> int:
        return max(abs(x) for r in self.entries for x in r)

    def row_norm(self) -> int:
        """Largest absolute row sum (the induced infinity norm)."""
        return max(sum(abs(x) for x in r) for r in self.entries)

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[encode_int(x) for x in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj) -> IntMatrix:
        try:
            rows, cols = obj["rows"], obj["cols"]
            entries = [[decode_int(x) for x in r] for r in obj["entries"]]
            if not isinstance(rows, int) or not isinstance(cols, int):
                raise ParseError("'rows' and 'cols' must be integers")
            return cls(rows, cols, entries)
        except ParseError:
            raise
        except (KeyError, TypeError, ShapeMismatch) as exc:
            raise ParseError(f"invalid matrix: {exc}") from exc


def encode_int(x: int):
    """JSON number when exactly representable as a double, decimal string otherwise."""
    return x if abs(x) < _JSON_SAFE else str(x)


def decode_int(x) -> int:
    if isinstance(x, bool):
        raise ParseError("booleans are not integers")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x, 10)
        except ValueError as exc:
            raise ParseError(f"not a decimal integer: {x!r}") from exc
    raise ParseError(f"expected an integer, got {x!r}")


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    bt = b.transpose().entries
    return IntMatrix(
        a.rows,
        b.cols,
        [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a.entries],
    )


def block_diag(block: IntMatrix, n: int) -> IntMatrix:
    """``block`` in the top-left corner of an ``n x n`` identity."""
    m = block.rows
    if not block.is_square or m > n:
        raise ShapeMismatch(f"cannot embed {block.rows}x{block.cols} block in {n}x{n}")
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(m):
        rows[i][:m] = block.entries[i]
    return IntMatrix(n, n, rows)


def _bareiss(a: list[list[int]]) -> tuple[int, int]:
    """Fraction-free elimination in place; returns (rank, sign of row swaps).

    After the call the last pivot equals +-det for a nonsingular square input.
    """
    nrows, ncols = len(a), len(a[0])
    r, prev, sign = 0, 1, 1
    for c in range(ncols):
        if r == nrows:
            break
        pivot = next((i for i in range(r, nrows) if a[i][c]), None)
        if pivot is None:
            continue
        if pivot != r:
            a[r], a[pivot] = a[pivot], a[r]
            sign = -sign
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c + 1, ncols):
                row_i[j] = (row_i[j] * piv - lead * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        r += 1
    return r, sign


def rank(m: IntMatrix) -> int:
    return _bareiss(m.tolist())[0]


def det(m: IntMatrix) -> int:
    if not m.is_square:
        raise NonSquare(f"determinant of a {m.rows}x{m.cols} matrix")
    a = m.tolist()
    r, sign = _bareiss(a)
    if r < m.rows:
        return 0
    return sign * a[-1][-1]


def xgcd(x: int, y: int) -> tuple[int, int, int]:
    """``(g, s, t)`` with ``s*x + t*y == g == gcd(x, y) >= 0``."""
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def column_hnf_triangularize(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Unimodular ``H`` with ``U = m @ H`` in canonical column Hermite form.

    ``U`` is upper triangular with diagonal ``d_i > 0`` and every entry to the
    right of a pivot reduced into ``[0, d_i)``. That form is unique, hence so
    is ``H = m^-1 @ U``.

    Rows are cleared bottom-up: for row ``i`` the entries left of the
    diagonal are folded into column ``i`` by extended-Euclid column pairs.
    Columns ``0..i`` are already zero below row ``i``, so later rows stay
    untouched.
    """
    if not m.is_square:
        raise NonSquare(f"triangularization needs a square matrix, got {m.rows}x{m.cols}")
    if det(m) == 0:
        raise SingularMinor("matrix is singular")
    n = m.rows
    a = m.tolist()
    h = IntMatrix.identity(n).tolist()

    def combine(i: int, j: int, s: int, t: int, u: int, v: int) -> None:
        # (col_i, col_j) <- (s*col_i + t*col_j, u*col_i + v*col_j)
        for mat in (a, h):
            for row in mat:
                ci, cj = row[i], row[j]
                row[i], row[j] = s * ci + t * cj, u * ci + v * cj

    def axpy_col(target: int, q: int, source: int) -> None:
        # col_target <- col_target - q*col_source
        for mat in (a, h):
            for row in mat:
                row[target] -= q * row[source]

    for i in reversed(range(n)):
        for j in range(i):
            y = a[i][j]
            if y == 0:
                continue
            x = a[i][i]
            g, s, t = xgcd(x, y)
            combine(i, j, s, t, -(y // g), x // g)
        if a[i][i] < 0:
            for mat in (a, h):
                for row in mat:
                    row[i] = -row[i]

    for j in range(1, n):
        for i in reversed(range(j)):
            q = a[i][j] // a[i][i]
            if q:
                axpy_col(j, q, i)

    return IntMatrix(n, n, h), IntMatrix(n, n, a)


def is_upper_triangular(u: IntMatrix) -> bool:
    return all(u[i, j] == 0 for i in range(u.rows) for j in range(min(i, u.cols)))


def is_column_hermite(u: IntMatrix) -> bool:
    """Upper triangular, positive diagonal, entries right of each pivot in ``[0, d_i)``."""
    if not u.is_square or not is_upper_triangular(u):
        return False
    n = u.rows
    for i in range(n):
        d = u[i, i]
        if d <= 0 or any(not 0 <= u[i, j] < d for j in range(i + 1, n)):
            return False
    return True


def unimodular_inverse(h: IntMatrix) -> IntMatrix:
    """Exact integer inverse of a matrix with determinant +-1."""
    if not h.is_square:
        raise NonSquare(f"inverse of a {h.rows}x{h.cols} matrix")
    d = det(h)
    if abs(d) != 1:
        raise NotUnimodular(f"determinant is {d}, not +-1")
    n = h.rows
    # Gauss-Jordan over the rationals on [h | I]
    a = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(h.entries)]
    for c in range(n):
        p = next(i for i in range(c, n) if a[i][c])
        a[c], a[p] = a[p], a[c]
        piv = a[c][c]
        a[c] = [x / piv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    inv = [row[n:] for row in a]
    assert all(x.denominator == 1 for row in inv for x in row)
    return IntMatrix(n, n, [[int(x) for x in row] for row in inv])


def select_pivot_columns(m: IntMatrix) -> tuple[int, ...]:
    """1-based permutation bringing a maximal independent column set to the front.

    The chosen columns are the lexicographically first independent set
    (greedy scan, which is exact for the column matroid); the remaining
    columns follow in their original order.
    """
    if rank(m) < m.rows:
        raise RankDeficient(f"rank {rank(m)} < {m.rows} rows")
    chosen: list[int] = []
    for j in range(m.cols):
        if len(chosen) == m.rows:
            break
        if rank(m.submatrix(range(m.rows), chosen + [j])) == len(chosen) + 1:
            chosen.append(j)
    rest = [j for j in range(m.cols) if j not in chosen]
    return tuple(j + 1 for j in chosen + rest)
