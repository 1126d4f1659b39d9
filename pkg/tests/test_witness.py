import itertools
import math

import pytest

from perfect_formats.formats import Format
from perfect_formats.witness import (
    build_s0,
    build_witness,
    extend_support,
    u_coeff,
    u_coeff_crossed,
)


def s0_bruteforce(dims):
    """Independent enumeration: count coordinates equal to their bound."""
    n = len(dims)
    out = []
    for t in itertools.product(*[range(1, p + 1) for p in dims]):
        hits = 0
        for k, p in zip(t, dims):
            if k == p:
                hits += 1
        if hits != n - 1:
            out.append(t)
    return sorted(out)


@pytest.mark.parametrize(
    "dims, expected",
    [
        ((2, 2), [(1, 1), (2, 2)]),
        ((2, 2, 2), [(1, 1, 1), (1, 1, 2), (1, 2, 1), (2, 1, 1), (2, 2, 2)]),
        ((2, 3), [(1, 1), (1, 2), (2, 3)]),
    ],
)
def test_build_s0_examples(dims, expected):
    assert build_s0(dims) == expected
    assert build_s0(dims) == s0_bruteforce(dims)


def test_s0_cardinality_identity():
    for n in (2, 3, 4):
        for dims in itertools.product(range(2, 6), repeat=n):
            s0 = build_s0(dims)
            assert len(s0) == math.prod(dims) - sum(dims) + n
            assert s0 == s0_bruteforce(dims)


def test_s0_never_uses_middle_branch_for_two_modes():
    # For n = 2, S0 minus (p1, p2) has no maximal coordinate at all.
    for dims in itertools.product(range(2, 6), repeat=2):
        for t in build_s0(dims):
            if t != dims:
                assert all(k < p for k, p in zip(t, dims))
                assert all(u_coeff(j, t, dims) == t[j - 1] + 1 for j in (1, 2))


def test_s0_middle_branch_appears_for_three_modes():
    assert (1, 1, 2) in build_s0((2, 2, 2))
    assert u_coeff(1, (1, 1, 2), (2, 2, 2)) == 1


def test_extend_support():
    s0 = build_s0((2, 2))
    assert extend_support(s0, 3, (2, 2)).tuples == ((1, 1), (2, 2), (1, 2))
    assert extend_support(s0, 2, (2, 2)).tuples == ((1, 1), (2, 2))
    with pytest.raises(ValueError):
        extend_support(s0, 5, (2, 2))
    with pytest.raises(ValueError):
        extend_support(s0, 1, (2, 2))


def test_support_invariants():
    for dims in [(2, 3), (3, 3), (2, 2, 3), (3, 4)]:
        s0 = build_s0(dims)
        for target in range(len(s0), math.prod(dims) + 1):
            s = extend_support(s0, target, dims)
            assert len(s.tuples) == target == len(set(s.tuples))
            assert set(s0) <= set(s.tuples)
            assert s.label(s.tuples[-1]) == target


@pytest.mark.parametrize(
    "j, t, value",
    [(1, (1, 2), 2), (1, (1, 3), 1), (2, (1, 3), 0), (2, (2, 3), 0), (1, (2, 3), 0)],
)
def test_u_coeff(j, t, value):
    assert u_coeff(j, t, (2, 3)) == value


def test_u_coeff_crossed_swaps_generic_branch():
    assert u_coeff_crossed(1, (1, 2), (3, 3)) == 3
    assert u_coeff_crossed(2, (1, 2), (3, 3)) == 2
    assert u_coeff_crossed(2, (1, 3), (3, 3)) == 0
    assert u_coeff_crossed(1, (1, 3), (3, 3)) == 1


def test_build_witness_223():
    w = build_witness((2, 2, 3))
    assert w.support.tuples == ((1, 1), (2, 2), (1, 2))
    assert w.groups == (
        ((1, 2), (1, 2), (1, 0, 0)),
        ((0, 1), (0, 1), (0, 1, 0)),
        ((1, 1), (0, 1), (0, 0, 1)),
    )


def test_build_witness_222():
    w = build_witness(Format((2, 2, 2)))
    assert w.support.tuples == ((1, 1), (2, 2))
    assert w.groups == (((1, 2), (1, 2), (1, 0)), ((0, 1), (0, 1), (0, 1)))


def test_build_witness_rejects_non_perfect():
    with pytest.raises(ValueError):
        build_witness((3, 3, 3))
    with pytest.raises(ValueError):
        build_witness((2, 2, 5))


@pytest.mark.parametrize("dims", [(2, 2, 3), (2, 3, 4), (3, 3, 7), (2, 2, 2, 6), (2, 3, 3, 13)])
def test_witness_point_structure(dims):
    w = build_witness(dims)
    head, r = dims[:-1], dims[-1]
    assert len(w.groups) == r
    for h, (k, group) in enumerate(zip(w.support.tuples, w.groups)):
        assert group[-1] == tuple(int(i == h) for i in range(r))
        for j, (v, p) in enumerate(zip(group[:-1], head), start=1):
            assert len(v) == p
            assert v[k[j - 1] - 1] >= 1
            assert sum(x != 0 for x in v) <= 2
            assert all(0 <= x <= max(dims) + 1 for x in v)
            expected = [0] * p
            expected[k[j - 1] - 1] += 1
            expected[p - 1] += u_coeff(j, k, head)
            assert list(v) == expected
    assert build_witness(dims) == w
