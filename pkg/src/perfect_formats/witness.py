"""The explicit point at which the rank-p_N parameterization has full rank.

Index tuples are 1-based and cover the first n = N - 1 modes. The support set
is an ordered tuple list; a tuple's position h (1-based) is its label f(k), so
group h of the witness carries e_h as its last-mode factor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .formats import Format, canonicalize, is_perfect

IndexTuple = tuple[int, ...]


@dataclass(frozen=True)
class SupportSet:
    tuples: tuple[IndexTuple, ...]
    dims: tuple[int, ...]

    def label(self, t: IndexTuple) -> int:
        """The bijection f: 1-based position of ``t``."""
        return self.tuples.index(tuple(t)) + 1


@dataclass(frozen=True)
class WitnessPoint:
    format: Format
    support: SupportSet
    groups: tuple[tuple[tuple[int, ...], ...], ...]

    def to_json(self) -> dict:
        return {
            "format": list(self.format.dims),
            "r": len(self.groups),
            "q": _q(self.support.dims),
            "support": [list(t) for t in self.support.tuples],
            "groups": [[list(v) for v in g] for g in self.groups],
        }


def _q(dims: Sequence[int]) -> int:
    return math.prod(dims) - sum(dims) + len(dims)


def _n_maximal(t: IndexTuple, dims: Sequence[int]) -> int:
    return sum(k == p for k, p in zip(t, dims))


def _check_dims(dims: Sequence[int]) -> tuple[int, ...]:
    dims = tuple(int(p) for p in dims)
    if len(dims) < 2 or any(p < 2 for p in dims):
        raise ValueError(f"need at least two modes of size >= 2, got {dims}")
    return dims


def all_tuples(dims: Sequence[int]) -> list[IndexTuple]:
    return list(itertools.product(*(range(1, p + 1) for p in dims)))


def build_s0(dims: Sequence[int]) -> list[IndexTuple]:
    """Tuples whose number of maximal coordinates is not n - 1, lex order."""
    dims = _check_dims(dims)
    n = len(dims)
    return [t for t in all_tuples(dims) if _n_maximal(t, dims) != n - 1]


def extend_support(s0: Sequence[IndexTuple], target: int, dims: Sequence[int]) -> SupportSet:
    """Append the lexicographically smallest excluded tuples until |S| = target."""
    dims = _check_dims(dims)
    s0 = [tuple(t) for t in s0]
    if not len(s0) <= target <= math.prod(dims):
        raise ValueError(
            f"target {target} outside [{len(s0)}, {math.prod(dims)}] for dims {dims}"
        )
    core = set(s0)
    extra = [t for t in all_tuples(dims) if t not in core][: target - len(s0)]
    return SupportSet(tuple(s0) + tuple(extra), dims)


def u_coeff(j: int, t: Sequence[int], dims: Sequence[int]) -> int:
    """Coefficient of e_{p_j} in the mode-j factor at tuple ``t`` (j is 1-based)."""
    x = tuple(t)
    if x[j - 1] == dims[j - 1]:
        return 0
    if any(x[s] == dims[s] for s in range(len(x)) if s != j - 1):
        return 1
    return x[j - 1] + 1


def u_coeff_crossed(j: int, t: Sequence[int], dims: Sequence[int]) -> int:
    """Like u_coeff, but the generic branch depends on the other coordinates.

    With ``x_j + 1`` the mode-j factor of a non-maximal tuple depends on k_j
    alone, and the witness Jacobian loses rank once p_1 >= 3. For n = 2 this
    variant gives u_1 = x_2 + 1, u_2 = x_1 + 1, which makes
    u_2(i_1, k_2) != u_2(k_1, k_2) for i_1 != k_1.
    """
    x = tuple(t)
    if x[j - 1] == dims[j - 1]:
        return 0
    if any(x[s] == dims[s] for s in range(len(x)) if s != j - 1):
        return 1
    return sum(x[s] for s in range(len(x)) if s != j - 1) + 1


def random_integer_point(dims: Sequence[int], r: int, rng, bound: int = 9) -> list:
    """``r`` terms with entries uniform over the nonzero integers in [-bound, bound]."""
    values = np.array([v for v in range(-bound, bound + 1) if v])
    return [[[int(x) for x in rng.choice(values, size=p)] for p in dims] for _ in range(r)]


def build_witness(f, coeff: Callable[[int, Sequence[int], Sequence[int]], int] = u_coeff) -> WitnessPoint:
    f = canonicalize(f)
    verdict = is_perfect(f)
    if not verdict.verdict:
        raise ValueError(
            f"format {f} is outside [q, prod] = [{verdict.interval[0]}, {verdict.interval[1]}]"
        )
    head, r = f.dims[:-1], f.dims[-1]
    support = extend_support(build_s0(head), r, head)
    groups = []
    for h, k in enumerate(support.tuples):
        vecs = []
        for j, p in enumerate(head, start=1):
            v = [0] * p
            v[k[j - 1] - 1] += 1
            v[p - 1] += coeff(j, k, head)
            vecs.append(tuple(v))
        last = [0] * r
        last[h] = 1
        vecs.append(tuple(last))
        groups.append(tuple(vecs))
    return WitnessPoint(f, support, tuple(groups))
