"""Exact integer and rational linear algebra.

Everything here works on Python ints and :class:`fractions.Fraction`; no
floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import Degenerate, NonSquare, NonSymmetric, NotEven, ParseError


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} "
                f"entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(int(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), ncols, tuple(e for r in rows for e in r))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def diagonal(cls, values: Sequence[int]) -> "IntMatrix":
        n = len(values)
        return cls(n, n, tuple(values[i] if i == j else 0 for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j: int) -> tuple[int, ...]:
        return self.entries[j::self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i)
        )

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return IntMatrix(self.rows, self.cols,
                         tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, tuple(-a for a in self.entries))

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = [other.col(j) for j in range(other.cols)]
        return IntMatrix(self.rows, other.cols, tuple(
            sum(a * b for a, b in zip(self.row(i), c))
            for i in range(self.rows) for c in cols
        ))

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        """Matrix-vector product."""
        return tuple(sum(a * b for a, b in zip(self.row(i), vec)) for i in range(self.rows))

    def direct_sum(self, other: "IntMatrix") -> "IntMatrix":
        rows = [r + [0] * other.cols for r in self.to_rows()]
        rows += [[0] * self.cols + r for r in other.to_rows()]
        return IntMatrix.from_rows(rows)

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        return cls(len(rows), len(rows[0]), tuple(e for r in rows for e in r))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def __matmul__(self, other) -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        return RationalMatrix(self.rows, other.cols, tuple(
            sum((self[i, k] * other[k, j] for k in range(self.cols)), Fraction(0))
            for i in range(self.rows) for j in range(other.cols)
        ))

    def bilinear(self, u: Sequence[int], v: Sequence[int]) -> Fraction:
        """Return u^T M v."""
        total = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                total += ui * sum((self[i, j] * vj for j, vj in enumerate(v) if vj), Fraction(0))
        return total

    def denominator(self) -> int:
        """Least common denominator of all entries."""
        from math import lcm
        return lcm(*(e.denominator for e in self.entries))

    def to_int(self) -> IntMatrix:
        if any(e.denominator != 1 for e in self.entries):
            raise ValueError("matrix has non-integer entries")
        return IntMatrix(self.rows, self.cols, tuple(int(e) for e in self.entries))


@dataclass(frozen=True)
class SmithDecomposition:
    """``u_mat @ source @ v_mat == d_mat`` with unimodular u_mat, v_mat."""

    u_mat: IntMatrix
    v_mat: IntMatrix
    d_mat: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.d_mat[i, i] for i in range(min(self.d_mat.rows, self.d_mat.cols)))


def _require_square(m: IntMatrix):
    if not m.is_square:
        raise NonSquare(f"matrix is {m.rows}x{m.cols}, expected square")


def determinant(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    _require_square(m)
    n = m.rows
    a = m.to_rows()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def signature(m: IntMatrix) -> int:
    """Signature of a nondegenerate symmetric integer matrix.

    Symmetric congruent diagonalization over the rationals. When every
    remaining diagonal entry vanishes, a hyperbolic 2x2 block [[0, a], [a, 0]]
    is split off; it contributes one positive and one negative direction.
    """
    _require_square(m)
    if not m.is_symmetric():
        raise NonSymmetric("signature needs a symmetric matrix")
    if determinant(m) == 0:
        raise Degenerate("signature needs a nondegenerate matrix")
    a = [[Fraction(x) for x in r] for r in m.to_rows()]
    sig = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is not None:
            p = a[piv][piv]
            sig += 1 if p > 0 else -1
            rest = [i for i in range(n) if i != piv]
            a = [[a[i][j] - a[i][piv] * a[piv][j] / p for j in rest] for i in rest]
            continue
        # all diagonal entries are zero; nondegeneracy guarantees some a[0][j] != 0
        j0 = next(j for j in range(1, n) if a[0][j] != 0)
        c = a[0][j0]
        # the block [[0, c], [c, 0]] contributes +1 and -1, net 0
        rest = [i for i in range(n) if i not in (0, j0)]
        # Schur complement with inverse block [[0, 1/c], [1/c, 0]]
        a = [[a[i][j] - (a[i][0] * a[j0][j] + a[i][j0] * a[0][j]) / c for j in rest]
             for i in rest]
    return sig


def rational_inverse(m: IntMatrix) -> RationalMatrix:
    """Exact inverse via Gauss-Jordan elimination over the rationals."""
    _require_square(m)
    n = m.rows
    a = [[Fraction(x) for x in r] + [Fraction(int(i == j)) for j in range(n)]
         for i, r in enumerate(m.to_rows())]
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k] != 0), None)
        if piv is None:
            raise Degenerate("matrix is singular")
        a[k], a[piv] = a[piv], a[k]
        p = a[k][k]
        a[k] = [x / p for x in a[k]]
        for i in range(n):
            if i != k and a[i][k] != 0:
                f = a[i][k]
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return RationalMatrix(n, n, tuple(x for r in a for x in r[n:]))


def smith_normal_form(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form with unimodular transforms, ``U A V = D``.

    Pivot is the smallest nonzero absolute value in the active block, ties
    broken by lowest (row, col). Diagonal entries are made nonnegative by
    negating rows of U.
    """
    rows, cols = m.rows, m.cols
    a = m.to_rows()
    u = IntMatrix.identity(rows).to_rows()
    v = IntMatrix.identity(cols).to_rows()

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):
        # row_dst += f * row_src
        a[dst] = [x + f * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for r in a:
            r[dst] += f * r[src]
        for r in v:
            r[dst] += f * r[src]

    for t in range(min(rows, cols)):
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    x = abs(a[i][j])
                    if x and (best is None or x < best[0]):
                        best = (x, i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next((i for i in range(t + 1, rows)
                        if any(a[i][j] % p for j in range(t + 1, cols))), None)
            if bad is not None:
                add_row(t, bad, 1)
                continue
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(IntMatrix.from_rows(u), IntMatrix.from_rows(v), IntMatrix.from_rows(a))


def symmetrize(c: IntMatrix) -> IntMatrix:
    """K = C + C^T."""
    _require_square(c)
    return c + c.transpose()


def check_even_symmetric_nondegenerate(m: IntMatrix) -> IntMatrix:
    """Validate an even form and return it unchanged.

    Raises NonSquare, NonSymmetric, NotEven (with the first odd diagonal
    index) or Degenerate, checked in that order.
    """
    _require_square(m)
    if not m.is_symmetric():
        raise NonSymmetric("form is not symmetric")
    check_even_diagonal(m)
    if determinant(m) == 0:
        raise Degenerate("form is degenerate (determinant 0)")
    return m


def check_even_diagonal(m: IntMatrix):
    for i in range(m.rows):
        if m[i, i] % 2:
            raise NotEven(i)


def is_even_form(m: IntMatrix) -> bool:
    return m.is_symmetric() and all(m[i, i] % 2 == 0 for i in range(m.rows))


# -- matrix text format ------------------------------------------------------

def parse_matrix(text: str, source: str | None = None) -> IntMatrix:
    """Parse the ``rows cols`` header + rows text format; ``#`` lines are skipped."""
    lines = [(n, ln.strip()) for n, ln in enumerate(text.splitlines(), start=1)]
    lines = [(n, ln) for n, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ParseError("empty matrix file", source=source)
    n0, header = lines[0]
    try:
        rows, cols = (int(x) for x in header.split())
    except ValueError:
        raise ParseError("header must be 'rows cols'", line=n0, source=source) from None
    if rows < 1 or cols < 1:
        raise ParseError("dimensions must be positive", line=n0, source=source)
    body = lines[1:]
    if len(body) != rows:
        last = body[-1][0] if body else n0
        raise ParseError(f"expected {rows} rows, found {len(body)}", line=last, source=source)
    entries = []
    for n, ln in body:
        try:
            vals = [int(x, 10) for x in ln.split()]
        except ValueError:
            raise ParseError("non-integer entry", line=n, source=source) from None
        if len(vals) != cols:
            raise ParseError(f"expected {cols} entries, found {len(vals)}", line=n, source=source)
        entries.extend(vals)
    return IntMatrix(rows, cols, tuple(entries))


def format_matrix(m: IntMatrix) -> str:
    out = [f"{m.rows} {m.cols}"]
    out += [" ".join(str(x) for x in m.row(i)) for i in range(m.rows)]
    return "\n".join(out) + "\n"


def read_matrix(path) -> IntMatrix:
    with open(path) as fh:
        return parse_matrix(fh.read(), source=str(path))


def matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    """Shorthand for :meth:`IntMatrix.from_rows`."""
    return IntMatrix.from_rows([list(r) for r in rows])
