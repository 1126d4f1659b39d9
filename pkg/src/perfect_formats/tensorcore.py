"""Dense tensors over exact rationals or binary64 floats.

Entries are stored row-major with the last index fastest; the offset of the
1-based index (k_1, ..., k_N) is sum_j (k_j - 1) * prod_{l > j} p_l. The
Jacobian columns use the same linearization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exactrank import IntMatrix, rank_exact

EXACT = "exact"
FLOAT = "float"

# A term is one group of N factor vectors; a term list is what eval_phi sums.
Term = Sequence[Sequence]
RankOneTermList = Sequence[Term]


@dataclass(frozen=True)
class DenseTensor:
    dims: tuple[int, ...]
    values: tuple
    kind: str = EXACT

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.kind not in (EXACT, FLOAT):
            raise ValueError(f"unknown scalar kind {self.kind!r}")
        conv = Fraction if self.kind == EXACT else float
        values = tuple(conv(v) for v in self.values)
        if len(values) != math.prod(self.dims):
            raise ValueError(f"{len(values)} values for dims {self.dims}")
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, dims, kind=EXACT) -> "DenseTensor":
        return cls(tuple(dims), (0,) * math.prod(dims), kind)

    @classmethod
    def from_numpy(cls, arr: np.ndarray) -> "DenseTensor":
        return cls(arr.shape, tuple(arr.ravel().tolist()), FLOAT)

    def to_numpy(self) -> np.ndarray:
        if self.kind != FLOAT:
            raise TypeError("convert exact tensors explicitly with to_float()")
        return np.array(self.values, dtype=float).reshape(self.dims)

    def to_float(self) -> "DenseTensor":
        return DenseTensor(self.dims, tuple(float(v) for v in self.values), FLOAT)

    def offset(self, index: Sequence[int]) -> int:
        """Linear offset of a 1-based multi-index."""
        off = 0
        for k, p in zip(index, self.dims):
            if not 1 <= k <= p:
                raise IndexError(f"index {tuple(index)} out of range for {self.dims}")
            off = off * p + (k - 1)
        return off

    def __getitem__(self, index) -> Fraction | float:
        return self.values[self.offset(index)]

    def to_json(self) -> dict:
        if self.kind == EXACT:
            vals = [f"{v.numerator}/{v.denominator}" for v in self.values]
        else:
            vals = list(self.values)
        return {"dims": list(self.dims), "values": vals}

    @classmethod
    def from_json(cls, doc: dict) -> "DenseTensor":
        vals = doc["values"]
        if vals and all(isinstance(v, str) for v in vals):
            return cls(tuple(doc["dims"]), tuple(Fraction(v) for v in vals), EXACT)
        return cls(tuple(doc["dims"]), tuple(float(v) for v in vals), FLOAT)


def kron(vectors: Sequence[Sequence]) -> list:
    """Flat outer product, last vector fastest."""
    out = [1]
    for v in vectors:
        out = [a * b for a in out for b in v]
    return out


def _check_term(term: Term, dims: Sequence[int]) -> None:
    if len(term) != len(dims):
        raise ValueError(f"term has {len(term)} factors, format has order {len(dims)}")
    for h, (v, p) in enumerate(zip(term, dims)):
        if len(v) != p:
            raise ValueError(f"factor {h + 1} has length {len(v)}, expected {p}")


def _kind_of(vectors) -> str:
    flat = [x for v in vectors for x in v]
    return FLOAT if any(isinstance(x, (float, np.floating)) for x in flat) else EXACT


def rank_one(vectors: Sequence[Sequence]) -> DenseTensor:
    dims = tuple(len(v) for v in vectors)
    kind = _kind_of(vectors)
    conv = Fraction if kind == EXACT else float
    return DenseTensor(dims, tuple(kron([[conv(x) for x in v] for v in vectors])), kind)


def eval_phi(point: RankOneTermList, dims: Sequence[int]) -> DenseTensor:
    """Sum of the rank-one tensors of ``point``."""
    dims = tuple(dims)
    for term in point:
        _check_term(term, dims)
    kind = _kind_of([v for term in point for v in term])
    conv = Fraction if kind == EXACT else float
    acc = [conv(0)] * math.prod(dims)
    for term in point:
        for i, x in enumerate(kron([[conv(a) for a in v] for v in term])):
            if x:
                acc[i] += x
    return DenseTensor(dims, tuple(acc), kind)


def unfold(t: DenseTensor, mode: int) -> list[list]:
    """Mode-``mode`` (1-based) unfolding: p_mode rows, other indices row-major."""
    n = len(t.dims)
    if not 1 <= mode <= n:
        raise ValueError(f"mode {mode} out of range 1..{n}")
    arr = np.array(t.values, dtype=object).reshape(t.dims)
    mat = np.moveaxis(arr, mode - 1, 0).reshape(t.dims[mode - 1], -1)
    return mat.tolist()


def fold(matrix: Sequence[Sequence], mode: int, dims: Sequence[int], kind: str = EXACT) -> DenseTensor:
    """Inverse of unfold."""
    dims = tuple(dims)
    rest = dims[:mode - 1] + dims[mode:]
    arr = np.array(matrix, dtype=object).reshape((dims[mode - 1],) + rest)
    arr = np.moveaxis(arr, 0, mode - 1)
    return DenseTensor(dims, tuple(arr.ravel().tolist()), kind)


def flattening_rank_bound(t: DenseTensor) -> int:
    """Largest exact rank among the mode unfoldings; a lower bound on rank(t)."""
    if t.kind != EXACT:
        raise TypeError("flattening_rank_bound needs an exact tensor")
    return max(
        rank_exact(IntMatrix.from_rational_rows(unfold(t, j)))
        for j in range(1, len(t.dims) + 1)
    )


def trivial_decomposition(t: DenseTensor) -> list[list[list]]:
    """prod(p_1..p_{N-1}) terms e_{i_1} x ... x e_{i_{N-1}} x (last-mode fiber)."""
    dims = t.dims
    head, last = dims[:-1], dims[-1]
    conv = Fraction if t.kind == EXACT else float
    terms = []
    for flat, idx in enumerate(itertools.product(*(range(p) for p in head))):
        basis = [[conv(int(i == k)) for i in range(p)] for k, p in zip(idx, head)]
        fiber = list(t.values[flat * last:(flat + 1) * last])
        terms.append(basis + [fiber])
    return terms
