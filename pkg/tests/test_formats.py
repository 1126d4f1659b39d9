import itertools
import math

import pytest
from hypothesis import given, strategies as st

from perfect_formats.formats import (
    Format,
    FormatError,
    canonicalize,
    is_perfect,
    parse_format,
    perfect_threshold_q,
    typical_rank_bounds,
)


def grid(max_dim=6, max_order=5):
    for n in range(3, max_order + 1):
        for dims in itertools.combinations_with_replacement(range(2, max_dim + 1), n):
            yield Format(dims)


@pytest.mark.parametrize(
    "text, dims",
    [("2x2x3", (2, 2, 3)), ("3x1x4x2", (3, 1, 4, 2)), ("10x2", (10, 2))],
)
def test_parse_format(text, dims):
    assert parse_format(text).dims == dims


@pytest.mark.parametrize("text", ["2x", "x2", "2", "2X3", "2x 3", "2x3x", "", "0x2x3", "ax2"])
def test_parse_format_rejects(text):
    with pytest.raises(FormatError):
        parse_format(text)


def test_canonicalize():
    assert canonicalize(Format((3, 1, 4, 2))).dims == (2, 3, 4)
    assert canonicalize(Format((2, 2, 3))).dims == (2, 2, 3)
    with pytest.raises(FormatError):
        canonicalize(Format((1, 5, 7)))


@pytest.mark.parametrize("dims, q", [((2, 2, 3), 2), ((3, 3, 3), 5), ((2, 2, 2, 8), 5)])
def test_perfect_threshold_q(dims, q):
    assert perfect_threshold_q(dims) == q


@pytest.mark.parametrize(
    "dims, lower, upper",
    [((3, 3, 3), 4, 9), ((2, 2, 2), 2, 4), ((2, 3, 5), 5, 6)],
)
def test_typical_rank_bounds(dims, lower, upper):
    b = typical_rank_bounds(dims)
    assert (b.lower, b.upper) == (lower, upper)
    assert b.max_dim == dims[-1]


@pytest.mark.parametrize(
    "dims, verdict, q",
    [((2, 3, 5), True, 3), ((3, 3, 3), False, 5), ((2, 2, 2), True, 2), ((2, 2, 2, 8), True, 5)],
)
def test_is_perfect(dims, verdict, q):
    v = is_perfect(dims)
    assert v.verdict is verdict
    assert v.q == q
    assert v.interval[1] == math.prod(dims[:-1])


def test_tall_formats_are_perfect():
    # p1 p2 - p2 < p3 < p1 p2 has unique typical rank p3.
    for p1 in range(2, 7):
        for p2 in range(p1, 7):
            for p3 in range(max(p2, p1 * p2 - p2 + 1), p1 * p2):
                assert is_perfect((p1, p2, p3)).verdict


def test_order3_left_endpoint():
    for p1 in range(2, 8):
        for p2 in range(p1, 8):
            assert perfect_threshold_q((p1, p2, p2)) == p1 * p2 - p1 - p2 + 2


def test_grid_invariants():
    for f in grid():
        dims = f.dims
        q = perfect_threshold_q(f)
        b = typical_rank_bounds(f)
        assert q >= dims[-2]
        assert b.lower <= b.upper
        assert q <= b.product_rest
        if dims[-1] <= b.product_rest:
            assert b.lower >= b.max_dim
        if is_perfect(f).verdict:
            assert b.lower == dims[-1]


dims_st = st.lists(st.integers(1, 7), min_size=3, max_size=6).filter(
    lambda d: sum(x > 1 for x in d) >= 3
)


@given(dims_st, st.randoms())
def test_canonical_idempotent_and_permutation_invariant(dims, rnd):
    c = canonicalize(Format(dims))
    assert canonicalize(c) == c
    shuffled = list(dims)
    rnd.shuffle(shuffled)
    assert canonicalize(Format(shuffled)) == c
    assert is_perfect(Format(shuffled)) == is_perfect(Format(dims))
