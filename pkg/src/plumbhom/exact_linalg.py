"""Arbitrary-precision integer matrices, Smith normal form, and cokernels.

Everything downstream (intersection forms, twist actions, torsion of bundle
homology) reduces to exact computations over the integers, so this module is
deliberately plain: dense matrices of Python ints, no floats, no modular
shortcuts. Torsion orders in the applications grow exponentially, which rules
out fixed-width arithmetic from the start.

The central routine is ``snf``, which drives a matrix to Smith normal form by
unimodular row and column operations and returns the transforms as witnesses
(``U @ M @ V == S``). Pivots are always the nonzero entry of smallest absolute
value in the working submatrix, ties broken by lowest (row, column); this
bounds intermediate growth and makes the output deterministic. Diagonal
entries are normalized to be nonnegative, with signs pushed into ``U``.

Determinants use fraction-free (Bareiss) elimination, exact at every step with
polynomially bounded intermediates.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, NamedTuple


class IntMatrix:
    """Dense integer matrix, stored row-major, treated as immutable."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: Iterable[int]):
        entries = tuple(entries)
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(entries) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, "
                f"got {len(entries)}"
            )
        for e in entries:
            if not isinstance(e, int) or isinstance(e, bool):
                raise ValueError(f"matrix entries must be integers, got {e!r}")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, data: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        """Build from nested rows; ``cols`` disambiguates zero-row matrices."""
        rows = [list(r) for r in data]
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("rows have unequal lengths")
            if cols is not None and cols != width:
                raise ValueError("cols does not match row length")
        else:
            width = 0 if cols is None else cols
        return cls(len(rows), width, [e for r in rows for e in r])

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, [0] * (rows * cols))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows,
            [self.entries[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)],
        )

    def is_identity(self) -> bool:
        return self.is_square and all(
            self.entries[i * self.cols + j] == (1 if i == j else 0)
            for i in range(self.rows) for j in range(self.cols)
        )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        return mat_mul(self, other)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, IntMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self) -> str:
        return f"IntMatrix({self.rows}, {self.cols}, {list(self.entries)!r})"

    def __str__(self) -> str:
        return format_matrix(self)


class SnfResult(NamedTuple):
    """Smith decomposition ``U @ M @ V == S`` with unimodular U, V."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix


@dataclass(frozen=True)
class AbelianGroup:
    """Finitely generated abelian group in canonical form.

    ``invariant_factors`` is the divisor chain d_1 | d_2 | ... presenting the
    torsion subgroup; factors 0 and 1 never appear (zeros are absorbed into
    the free rank, ones are dropped).
    """

    free_rank: int
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "invariant_factors", tuple(self.invariant_factors))
        if not isinstance(self.free_rank, int) or self.free_rank < 0:
            raise ValueError(f"free rank must be a nonnegative integer, got {self.free_rank!r}")
        factors = self.invariant_factors
        for d in factors:
            if not isinstance(d, int) or d < 2:
                raise ValueError(f"invariant factors must be integers >= 2, got {d!r}")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError(f"invariant factors must form a divisor chain, got {factors}")

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.invariant_factors

    @property
    def torsion_cardinality(self) -> int:
        out = 1
        for d in self.invariant_factors:
            out *= d
        return out

    def __str__(self) -> str:
        parts = []
        if self.free_rank:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return "+".join(parts) if parts else "0"


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # Returns (x, y, g) with x*a + y*b == g == gcd(a, b) > 0.
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def _identity_rows(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def _min_abs_position(s: list[list[int]], t: int, nr: int, nc: int) -> tuple[int, int] | None:
    best = None
    best_val = 0
    for i in range(t, nr):
        for j in range(t, nc):
            e = s[i][j]
            if e != 0 and (best is None or abs(e) < best_val):
                best = (i, j)
                best_val = abs(e)
    return best


def snf(m: IntMatrix) -> SnfResult:
    """Smith normal form of an integer matrix of any shape.

    Returns ``SnfResult(U, S, V)`` with ``U @ m @ V == S``, ``U`` and ``V``
    unimodular, ``S`` diagonal with nonnegative entries, and each diagonal
    entry dividing the next. Empty matrices pass through (their transforms
    are empty or identity as the shape dictates).
    """
    nr, nc = m.rows, m.cols
    s = m.to_rows()
    u = _identity_rows(nr)
    v = _identity_rows(nc)

    def combine_rows(r0: int, r1: int, a: int, b: int) -> None:
        # Unimodular op on rows r0, r1 clearing s[r1][col] given pivot s[r0][col].
        x, y, g = _xgcd(a, b)
        ag, mbg = a // g, -(b // g)
        for mat in (s, u):
            row0, row1 = mat[r0], mat[r1]
            for jj in range(len(row0)):
                p, q = row0[jj], row1[jj]
                row0[jj] = x * p + y * q
                row1[jj] = mbg * p + ag * q

    def combine_cols(c0: int, c1: int, a: int, b: int) -> None:
        x, y, g = _xgcd(a, b)
        ag, mbg = a // g, -(b // g)
        for mat in (s, v):
            for row in mat:
                p, q = row[c0], row[c1]
                row[c0] = x * p + y * q
                row[c1] = mbg * p + ag * q

    t = 0
    while t < min(nr, nc):
        if _min_abs_position(s, t, nr, nc) is None:
            break
        while True:
            pi, pj = _min_abs_position(s, t, nr, nc)
            if pi != t:
                s[t], s[pi] = s[pi], s[t]
                u[t], u[pi] = u[pi], u[t]
            if pj != t:
                for row in s:
                    row[t], row[pj] = row[pj], row[t]
                for row in v:
                    row[t], row[pj] = row[pj], row[t]
            for i in range(t + 1, nr):
                a, b = s[t][t], s[i][t]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    for jj in range(nc):
                        s[i][jj] -= q * s[t][jj]
                    for jj in range(nr):
                        u[i][jj] -= q * u[t][jj]
                else:
                    combine_rows(t, i, a, b)
            for j in range(t + 1, nc):
                a, b = s[t][t], s[t][j]
                if b == 0:
                    continue
                if b % a == 0:
                    q = b // a
                    for row in s:
                        row[j] -= q * row[t]
                    for row in v:
                        row[j] -= q * row[t]
                else:
                    combine_cols(t, j, a, b)
            if any(s[i][t] for i in range(t + 1, nr)):
                continue  # column ops disturbed the cleared column
            # Pivot must divide the rest of the submatrix for the divisor chain.
            p = s[t][t]
            stray = next(
                ((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc) if s[i][j] % p),
                None,
            )
            if stray is None:
                break
            i = stray[0]
            for jj in range(nc):
                s[t][jj] += s[i][jj]
            for jj in range(nr):
                u[t][jj] += u[i][jj]
        if s[t][t] < 0:
            s[t] = [-e for e in s[t]]
            u[t] = [-e for e in u[t]]
        t += 1

    result = SnfResult(
        IntMatrix.from_rows(u, cols=nr),
        IntMatrix.from_rows(s, cols=nc),
        IntMatrix.from_rows(v, cols=nc),
    )
    _check_smith_shape(result.S)
    return result


def _check_smith_shape(s: IntMatrix) -> None:
    diag = smith_diagonal(s)
    for i in range(s.rows):
        for j in range(s.cols):
            if i != j and s.entry(i, j) != 0:
                raise RuntimeError("Smith form has an off-diagonal entry")
    for d in diag:
        if d < 0:
            raise RuntimeError("Smith form has a negative diagonal entry")
    for a, b in zip(diag, diag[1:]):
        if a == 0 and b != 0:
            raise RuntimeError("zero precedes a nonzero Smith entry")
        if a != 0 and b % a != 0:
            raise RuntimeError("Smith diagonal is not a divisor chain")


def smith_diagonal(s: IntMatrix) -> list[int]:
    return [s.entry(i, i) for i in range(min(s.rows, s.cols))]


def rank(m: IntMatrix) -> int:
    """Rank over the rationals (equivalently over Z), via the Smith form."""
    return sum(1 for d in smith_diagonal(snf(m).S) if d != 0)


def kernel_rank(m: IntMatrix) -> int:
    """Rank of the integer kernel of m (free, as a subgroup of Z^cols)."""
    return m.cols - rank(m)


def cokernel_group(m: IntMatrix) -> AbelianGroup:
    """Z^rows / image(m) in canonical form.

    The free rank is rows - rank(m); the invariant factors are the Smith
    diagonal entries that exceed 1, already in divisor-chain order.
    """
    diag = smith_diagonal(snf(m).S)
    nonzero = sum(1 for d in diag if d != 0)
    return AbelianGroup(m.rows - nonzero, tuple(d for d in diag if d > 1))


def det(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination.

    The determinant of the empty 0x0 matrix is 1.
    """
    if not m.is_square:
        raise ValueError(f"determinant needs a square matrix, got {m.rows}x{m.cols}")
    n = m.rows
    if n == 0:
        return 1
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
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pk - aik * a[k][j]) // prev
            a[i][k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.cols != b.rows:
        raise ValueError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    out = []
    for i in range(a.rows):
        arow = a.row(i)
        for j in range(b.cols):
            out.append(sum(arow[t] * b.entries[t * b.cols + j] for t in range(a.cols)))
    return IntMatrix(a.rows, b.cols, out)


def mat_pow(a: IntMatrix, k: int) -> IntMatrix:
    if not a.is_square:
        raise ValueError("matrix power needs a square matrix")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"exponent must be a nonnegative integer, got {k!r}")
    result = IntMatrix.identity(a.rows)
    base = a
    while k:
        if k & 1:
            result = mat_mul(result, base)
        k >>= 1
        if k:
            base = mat_mul(base, base)
    return result


def mat_sub(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return IntMatrix(a.rows, a.cols, [x - y for x, y in zip(a.entries, b.entries)])


def inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix with determinant +-1 (adjugate route)."""
    if not m.is_square:
        raise ValueError("inverse needs a square matrix")
    d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    n = m.rows
    rows = m.to_rows()
    out = []
    for i in range(n):
        for j in range(n):
            # adjugate entry (i, j) = cofactor of (j, i)
            minor = [r[:i] + r[i + 1:] for k, r in enumerate(rows) if k != j]
            c = det(IntMatrix.from_rows(minor, cols=n - 1))
            out.append(d * (-c if (i + j) % 2 else c))
    return IntMatrix(n, n, out)


def parse_matrix(text: str) -> IntMatrix:
    """Parse a bracketed matrix literal such as ``[[7,3],[-3,-2]]``.

    Whitespace is free; entries are decimal integers with an optional leading
    minus. ``[]`` denotes the empty 0x0 matrix.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad matrix literal: {exc}") from None
    if not isinstance(data, list) or any(not isinstance(r, list) for r in data):
        raise ValueError("matrix literal must be a bracketed list of rows")
    for r in data:
        for e in r:
            if isinstance(e, bool) or not isinstance(e, int):
                raise ValueError(f"matrix entries must be plain integers, got {e!r}")
    return IntMatrix.from_rows(data)


def format_matrix(m: IntMatrix) -> str:
    """Render in the same literal syntax ``parse_matrix`` accepts."""
    return "[" + ",".join("[" + ",".join(str(e) for e in m.row(i)) + "]" for i in range(m.rows)) + "]"
