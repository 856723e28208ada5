"""Exact integer and Z/2 linear algebra.

Everything here works on plain Python integers with an explicit 128-bit
overflow guard, so results are reproducible bit-for-bit and never wrap.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

INT_BITS = 128
_LIMIT = 1 << (INT_BITS - 1)


class IntegerOverflowError(ArithmeticError):
    """An entry left the signed 128-bit range."""


def checked(value: int) -> int:
    if not -_LIMIT <= value < _LIMIT:
        raise IntegerOverflowError(f"integer {value} exceeds signed {INT_BITS}-bit range")
    return value


@dataclass(frozen=True)
class IntMatrix:
    """Immutable rectangular integer matrix.

    ``cols`` is stored explicitly so that matrices with zero rows still
    carry a shape.
    """

    rows: tuple[tuple[int, ...], ...]
    cols: int

    def __post_init__(self):
        if self.cols < 0:
            raise ValueError("negative column count")
        for row in self.rows:
            if len(row) != self.cols:
                raise ValueError("entry grid is not rectangular")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise TypeError(f"non-integer entry {x!r}")
                checked(x)

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        return cls(rows, cols)

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)), n)

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> IntMatrix:
        return cls(tuple((0,) * n_cols for _ in range(n_rows)), n_cols)

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls(tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n)), n)

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.cols)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[int, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> IntMatrix:
        return IntMatrix(tuple(self.column(j) for j in range(self.cols)), self.n_rows)

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        ocols = [other.column(j) for j in range(other.cols)]
        return IntMatrix(
            tuple(
                tuple(checked(sum(a * b for a, b in zip(row, col))) for col in ocols)
                for row in self.rows
            ),
            other.cols,
        )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return IntMatrix(
            tuple(tuple(checked(a + b) for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            self.cols,
        )

    def __neg__(self) -> IntMatrix:
        return IntMatrix(tuple(tuple(-a for a in r) for r in self.rows), self.cols)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self + (-other)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(checked(sum(a * x for a, x in zip(r, vec))) for r in self.rows)

    def is_square(self) -> bool:
        return self.n_rows == self.cols

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    def __str__(self) -> str:
        return "[" + ", ".join("[" + ", ".join(map(str, r)) + "]" for r in self.rows) + "]"


def determinant(m: IntMatrix) -> int:
    """Fraction-free Bareiss elimination."""
    if not m.is_square():
        raise ValueError("determinant of a non-square matrix")
    n = m.n_rows
    if n == 0:
        return 1
    a = [list(r) for r in m.rows]
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
                a[i][j] = checked((a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev)
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# --------------------------------------------------------------------------
# Smith normal form
# --------------------------------------------------------------------------


def _find_pivot(a, t, n_rows, n_cols):
    best = None
    for i in range(t, n_rows):
        for j in range(t, n_cols):
            x = a[i][j]
            if x != 0 and (best is None or abs(x) < best[0]):
                best = (abs(x), i, j)
    return best


def smith_normal_form(m: IntMatrix) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(u, d, v)`` with ``u @ m @ v == d`` and ``u, v`` unimodular.

    ``d`` is diagonal with non-negative entries, each dividing the next.
    Pivots are chosen by smallest absolute value (ties: lowest row, then
    lowest column); each stage clears the pivot column with row operations
    before clearing the pivot row with column operations.
    """
    n_rows, n_cols = m.shape
    a = [list(r) for r in m.rows]
    u = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)]
    v = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def add_row(dst, src, q):
        # row[dst] -= q * row[src]
        a[dst] = [checked(x - q * y) for x, y in zip(a[dst], a[src])]
        u[dst] = [checked(x - q * y) for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in a:
            row[dst] = checked(row[dst] - q * row[src])
        for row in v:
            row[dst] = checked(row[dst] - q * row[src])

    for t in range(min(n_rows, n_cols)):
        found = _find_pivot(a, t, n_rows, n_cols)
        if found is None:
            break
        _, pi, pj = found
        if pi != t:
            swap_rows(t, pi)
        if pj != t:
            swap_cols(t, pj)

        while True:
            # row sweep: clear column t below the pivot
            for i in range(t + 1, n_rows):
                if a[i][t]:
                    add_row(i, t, a[i][t] // a[t][t])
            rest = [(abs(a[i][t]), i) for i in range(t + 1, n_rows) if a[i][t]]
            if rest:
                swap_rows(t, min(rest)[1])
                continue
            # column sweep: clear row t right of the pivot
            for j in range(t + 1, n_cols):
                if a[t][j]:
                    add_col(j, t, a[t][j] // a[t][t])
            rest = [(abs(a[t][j]), j) for j in range(t + 1, n_cols) if a[t][j]]
            if rest:
                swap_cols(t, min(rest)[1])
                continue
            # divisibility: the pivot must divide the remaining block
            bad = next(
                (i for i in range(t + 1, n_rows) for j in range(t + 1, n_cols) if a[i][j] % a[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, -1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    return (
        IntMatrix(tuple(map(tuple, u)), n_rows),
        IntMatrix(tuple(map(tuple, a)), n_cols),
        IntMatrix(tuple(map(tuple, v)), n_cols),
    )


def invariant_factors(m: IntMatrix) -> list[int]:
    """Nonzero diagonal of the Smith form."""
    _, d, _ = smith_normal_form(m)
    return [d[i, i] for i in range(min(d.shape)) if d[i, i] != 0]


def rank(m: IntMatrix) -> int:
    return len(invariant_factors(m))


@dataclass(frozen=True)
class AbelianGroupPresentation:
    """``Z^free_rank + Z/d_1 + ... + Z/d_k`` with ``d_1 | d_2 | ...``.

    Elements are encoded as integer vectors, free coordinates first.
    """

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        object.__setattr__(self, "torsion", tuple(self.torsion))
        for d in self.torsion:
            if d in (0, 1) or d < 0:
                raise ValueError(f"invalid invariant factor {d}")
        for d, e in zip(self.torsion, self.torsion[1:]):
            if e % d:
                raise ValueError(f"invariant factors {self.torsion} do not form a divisibility chain")

    @property
    def n_generators(self) -> int:
        return self.free_rank + len(self.torsion)

    @property
    def order(self) -> int | None:
        """Cardinality, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def reduce(self, element: Sequence[int]) -> tuple[int, ...]:
        self._check(element)
        free = tuple(element[: self.free_rank])
        tors = tuple(x % d for x, d in zip(element[self.free_rank:], self.torsion))
        return free + tors

    def elements(self) -> Iterable[tuple[int, ...]]:
        """All elements of a finite group, in lexicographic order."""
        if self.free_rank:
            raise ValueError("cannot enumerate an infinite group")
        from itertools import product

        return product(*(range(d) for d in self.torsion))

    def _check(self, element: Sequence[int]):
        if len(element) != self.n_generators:
            raise ValueError(
                f"element has {len(element)} coordinates, group has {self.n_generators} generators"
            )

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        if not parts:
            return "0"
        if self.free_rank > 1 and not self.torsion:
            return f"Z^{self.free_rank}"
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, data: dict) -> AbelianGroupPresentation:
        return cls(int(data["free_rank"]), tuple(int(d) for d in data["torsion"]))


def cokernel_presentation(m: IntMatrix) -> AbelianGroupPresentation:
    """Presentation of ``Z^rows / image(m)``."""
    factors = invariant_factors(m)
    return AbelianGroupPresentation(m.n_rows - len(factors), tuple(d for d in factors if d != 1))


def solve_divisibility(group: AbelianGroupPresentation, c: Sequence[int], n: int) -> bool:
    """Is there an ``x`` with ``n * x == c`` in ``group``?"""
    if n <= 0:
        raise ValueError("n must be positive")
    group._check(c)
    free, tors = c[: group.free_rank], c[group.free_rank:]
    if any(x % n for x in free):
        return False
    # n x = c in Z/d is solvable iff gcd(n, d) divides c
    return all((x % d) % gcd(n, d) == 0 for x, d in zip(tors, group.torsion))


# --------------------------------------------------------------------------
# Z/2 linear algebra
# --------------------------------------------------------------------------


def solve_affine_mod2(rows: Sequence[Sequence[int]], rhs: Sequence[int], n_vars: int) -> list[tuple[int, ...]]:
    """All solutions of ``rows @ x == rhs`` over Z/2, sorted lexicographically."""
    aug = [[x & 1 for x in r] + [b & 1] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(n_vars):
        piv = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                aug[i] = [x ^ y for x, y in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
    if any(row[n_vars] and not any(row[:n_vars]) for row in aug):
        return []
    free = [c for c in range(n_vars) if c not in pivots]
    solutions = []
    from itertools import product

    for bits in product((0, 1), repeat=len(free)):
        x = [0] * n_vars
        for c, b in zip(free, bits):
            x[c] = b
        for i, col in enumerate(pivots):
            val = aug[i][n_vars]
            for c in free:
                val ^= aug[i][c] & x[c]
            x[col] = val
        solutions.append(tuple(x))
    return sorted(solutions)
