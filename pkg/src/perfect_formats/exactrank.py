"""Exact rank and null space of integer matrices.

Rank over Q is computed by fraction-free (Bareiss) elimination. A cheap
rank computation modulo a few fixed primes runs first: the rank mod p never
exceeds the rational rank, so a mod-p rank equal to min(rows, cols) already
proves full rank.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

# Three largest primes below 2**31, so products of residues fit in int64.
PRESCREEN_PRIMES = (2147483647, 2147483629, 2147483587)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        entries = []
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
            for x in r:
                if isinstance(x, Fraction):
                    if x.denominator != 1:
                        raise ValueError("non-integral entry; use from_rational_rows")
                    x = x.numerator
                elif not isinstance(x, (int, np.integer)):
                    raise TypeError(f"integer entries required, got {type(x).__name__}")
                entries.append(int(x))
        return cls(len(rows), cols, tuple(entries))

    @classmethod
    def from_rational_rows(cls, rows: Sequence[Sequence], cols: int | None = None) -> "IntMatrix":
        """Scale each row by the lcm of its denominators (row space unchanged)."""
        scaled = []
        for r in rows:
            r = [Fraction(x) for x in r]
            m = math.lcm(*(x.denominator for x in r)) if r else 1
            scaled.append([int(x * m) for x in r])
        return cls.from_rows(scaled, cols)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        e = self.entries
        return IntMatrix(
            self.cols,
            self.rows,
            tuple(e[i * self.cols + j] for j in range(self.cols) for i in range(self.rows)),
        )

    def vstack(self, other: "IntMatrix") -> "IntMatrix":
        if other.cols != self.cols:
            raise ValueError("column mismatch")
        return IntMatrix(self.rows + other.rows, self.cols, self.entries + other.entries)

    def to_numpy(self, dtype=float) -> np.ndarray:
        return np.array(self.entries, dtype=dtype).reshape(self.rows, self.cols)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for n < 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def rank_mod_p(m: IntMatrix, prime: int) -> int:
    if not is_prime(prime):
        raise ValueError(f"{prime} is not prime")
    if prime >= 2**31:
        raise ValueError("prime must be below 2**31 so residue products fit in int64")
    if m.rows == 0 or m.cols == 0:
        return 0
    a = np.array([x % prime for x in m.entries], dtype=np.int64).reshape(m.rows, m.cols)
    rank = 0
    for c in range(m.cols):
        if rank == m.rows:
            break
        nz = np.flatnonzero(a[rank:, c])
        if nz.size == 0:
            continue
        piv = rank + nz[0]
        if piv != rank:
            a[[rank, piv]] = a[[piv, rank]]
        inv = pow(int(a[rank, c]), -1, prime)
        a[rank] = a[rank] * inv % prime
        below = a[rank + 1:, c].copy()
        if below.any():
            a[rank + 1:] = (a[rank + 1:] - np.outer(below, a[rank]) % prime) % prime
        rank += 1
    return rank


def bareiss_echelon(m: IntMatrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form.

    Returns the echelon rows (only the first ``rank`` are nonzero) and the
    pivot column of each of them. Pivot row: first row with the largest
    absolute value in the pivot column.
    """
    a = m.to_rows()
    nrows, ncols = m.rows, m.cols
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best, best_abs = -1, 0
        for i in range(r, nrows):
            v = abs(a[i][c])
            if v > best_abs:
                best, best_abs = i, v
        if best < 0:
            continue
        if best != r:
            a[r], a[best] = a[best], a[r]
        prow = a[r]
        pv = prow[c]
        for i in range(r + 1, nrows):
            row = a[i]
            f = row[c]
            if f == 0:
                # Rows with a zero in the pivot column are still rescaled.
                for j in range(c + 1, ncols):
                    if row[j]:
                        row[j] = pv * row[j] // prev
                continue
            for j in range(c + 1, ncols):
                row[j] = (pv * row[j] - f * prow[j]) // prev
            row[c] = 0
        prev = pv
        pivots.append(c)
        r += 1
    return a, pivots


def rank_bareiss(m: IntMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return len(bareiss_echelon(m)[1])


def certified_rank(
    m: IntMatrix, primes: Iterable[int] = PRESCREEN_PRIMES
) -> tuple[int, list[int], str]:
    """Exact rank plus the prescreen primes tried and the method that decided it."""
    full = min(m.rows, m.cols)
    if full == 0:
        return 0, [], "empty"
    used = []
    for p in primes:
        used.append(p)
        if rank_mod_p(m, p) == full:
            return full, used, "modular"
    return rank_bareiss(m), used, "bareiss"


def rank_exact(m: IntMatrix) -> int:
    return certified_rank(m)[0]


def kernel_basis(m: IntMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space over Q, one vector per free column.

    Each vector has a 1 at its free column and 0 at the other free columns.
    """
    if m.cols == 0:
        return []
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(m.cols)) for j in range(m.cols)]
    ech, pivots = bareiss_echelon(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        x = [Fraction(0)] * m.cols
        x[fc] = Fraction(1)
        for i in range(len(pivots) - 1, -1, -1):
            pc = pivots[i]
            row = ech[i]
            s = sum((row[j] * x[j] for j in range(pc + 1, m.cols) if row[j] and x[j]), Fraction(0))
            x[pc] = -s / row[pc]
        basis.append(tuple(x))
    return basis


def in_row_space(m: IntMatrix, vector: Sequence) -> bool:
    """Exact membership of ``vector`` in the rational row space of ``m``."""
    v = IntMatrix.from_rational_rows([vector], m.cols)
    return rank_exact(m.vstack(v)) == rank_exact(m)
