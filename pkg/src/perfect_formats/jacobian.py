"""Jacobian of the summed rank-one parameterization.

Row (h, j, i) is d phi / d a^{(h)}_j[i]: the h-th rank-one term with its
mode-j factor replaced by e_i, linearized like every other tensor here. Rows
are ordered term-major, then mode, then coordinate.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .exactrank import IntMatrix
from .tensorcore import RankOneTermList, _check_term, kron


def phi1_jacobian_block(vectors: Sequence[Sequence]) -> list[list]:
    """(sum p) x (prod p) block: slot j holds a_1 x .. x E_{p_j} x .. x a_N."""
    dims = [len(v) for v in vectors]
    rows = []
    for j, p in enumerate(dims):
        left = kron(vectors[:j])
        right = kron(vectors[j + 1:])
        width = p * len(right)
        for i in range(p):
            row = [0] * (len(left) * width)
            for a_idx, a in enumerate(left):
                if not a:
                    continue
                base = a_idx * width + i * len(right)
                for b_idx, b in enumerate(right):
                    row[base + b_idx] = a * b
            rows.append(row)
    return rows


def assemble_jacobian(point: RankOneTermList, dims: Sequence[int]) -> IntMatrix:
    """Stacked per-term blocks of an integral point, as an exact IntMatrix."""
    dims = tuple(dims)
    for term in point:
        _check_term(term, dims)
    rows = []
    for term in point:
        rows.extend(phi1_jacobian_block(term))
    return IntMatrix.from_rows(rows, math.prod(dims))


def assemble_jacobian_float(point: RankOneTermList, dims: Sequence[int]) -> np.ndarray:
    dims = tuple(dims)
    for term in point:
        _check_term(term, dims)
    rows = []
    for term in point:
        rows.extend(phi1_jacobian_block([[float(x) for x in v] for v in term]))
    return np.array(rows, dtype=float).reshape(len(rows), math.prod(dims))


def _phi_float(point, dims) -> np.ndarray:
    acc = np.zeros(math.prod(dims))
    for term in point:
        acc += np.array(kron(term), dtype=float)
    return acc


def fd_check(point: RankOneTermList, dims: Sequence[int], step: float = 1e-4) -> float:
    """Max deviation between Jacobian rows and central differences of phi.

    Deviations are relative to max(1, largest |Jacobian entry|).
    """
    dims = tuple(dims)
    pt = [[[float(x) for x in v] for v in term] for term in point]
    jac = assemble_jacobian_float(pt, dims)
    if jac.size == 0:
        return 0.0
    scale = max(1.0, float(np.abs(jac).max()))
    worst = 0.0
    row = 0
    for h, term in enumerate(pt):
        for j, v in enumerate(term):
            for i in range(len(v)):
                orig = v[i]
                v[i] = orig + step
                plus = _phi_float(pt, dims)
                v[i] = orig - step
                minus = _phi_float(pt, dims)
                v[i] = orig
                fd = (plus - minus) / (2 * step)
                worst = max(worst, float(np.abs(fd - jac[row]).max()) / scale)
                row += 1
    return worst
