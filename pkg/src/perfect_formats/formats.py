"""Tensor formats: parsing, canonical form, and closed-form rank bounds."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

_FORMAT_RE = re.compile(r"^\d+(x\d+)+$")


class FormatError(ValueError):
    pass


@dataclass(frozen=True)
class Format:
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))

    @property
    def order(self) -> int:
        return len(self.dims)

    @property
    def size(self) -> int:
        return math.prod(self.dims)

    def __str__(self) -> str:
        return "x".join(str(d) for d in self.dims)


@dataclass(frozen=True)
class BoundsReport:
    lower: int
    upper: int
    q: int
    max_dim: int
    product_rest: int


@dataclass(frozen=True)
class PerfectVerdict:
    verdict: bool
    q: int
    interval: tuple[int, int]


def parse_format(text: str) -> Format:
    """Parse ``"2x2x3"`` into a raw (uncanonicalized) Format."""
    if not isinstance(text, str) or not _FORMAT_RE.match(text):
        raise FormatError(f"malformed format string: {text!r}")
    dims = tuple(int(s) for s in text.split("x"))
    if any(d < 1 for d in dims):
        raise FormatError(f"mode sizes must be >= 1: {text!r}")
    return Format(dims)


def as_format(f) -> Format:
    if isinstance(f, Format):
        return f
    if isinstance(f, str):
        return parse_format(f)
    return Format(tuple(f))


def canonicalize(f) -> Format:
    """Drop singleton modes and sort ascending; order < 3 is rejected."""
    f = as_format(f)
    if any(d < 1 for d in f.dims):
        raise FormatError(f"mode sizes must be >= 1: {f.dims}")
    dims = tuple(sorted(d for d in f.dims if d != 1))
    if len(dims) < 3:
        raise FormatError(
            f"format {f} has order {len(dims)} after dropping singleton modes; need >= 3"
        )
    return Format(dims)


def perfect_threshold_q(f) -> int:
    """prod - sum + (N-1) over all modes except the largest."""
    rest = canonicalize(f).dims[:-1]
    return math.prod(rest) - sum(rest) + len(rest)


def typical_rank_bounds(f) -> BoundsReport:
    f = canonicalize(f)
    dims = f.dims
    p_last = dims[-1]
    product_rest = math.prod(dims[:-1])
    # Affine cone of rank-one tensors has dimension sum(p) - N + 1.
    cone_dim = sum(dims) - f.order + 1
    dimension_count = -(-f.size // cone_dim)
    # Once p_N exceeds prod_rest every tensor already has rank <= prod_rest.
    flattening = min(p_last, product_rest)
    return BoundsReport(
        lower=max(flattening, dimension_count),
        upper=product_rest,
        q=perfect_threshold_q(f),
        max_dim=p_last,
        product_rest=product_rest,
    )


def is_perfect(f) -> PerfectVerdict:
    """Closed-form perfectness test: q <= p_N <= prod of the other modes."""
    f = canonicalize(f)
    q = perfect_threshold_q(f)
    product_rest = math.prod(f.dims[:-1])
    return PerfectVerdict(
        verdict=q <= f.dims[-1] <= product_rest,
        q=q,
        interval=(q, product_rest),
    )
