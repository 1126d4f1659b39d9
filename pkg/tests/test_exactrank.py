import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st

from perfect_formats.exactrank import (
    PRESCREEN_PRIMES,
    IntMatrix,
    bareiss_echelon,
    certified_rank,
    in_row_space,
    is_prime,
    kernel_basis,
    rank_bareiss,
    rank_exact,
    rank_mod_p,
)


def matvec(m: IntMatrix, x):
    return [sum(a * b for a, b in zip(m.row(i), x)) for i in range(m.rows)]


def random_matrix(rng, rows, cols, lo=-5, hi=5):
    return IntMatrix.from_rows(rng.integers(lo, hi + 1, size=(rows, cols)).tolist())


def low_rank_matrix(rng, rows, cols, k):
    a = rng.integers(-3, 4, size=(rows, k))
    b = rng.integers(-3, 4, size=(k, cols))
    return IntMatrix.from_rows((a @ b).tolist())


def svd_rank(m: IntMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    s = np.linalg.svd(m.to_numpy(), compute_uv=False)
    return int((s > 1e-8 * s[0]).sum()) if s[0] > 0 else 0


def test_prescreen_primes():
    assert all(is_prime(p) and p < 2**31 for p in PRESCREEN_PRIMES)
    assert [p for p in range(60) if is_prime(p)] == list(sympy.primerange(0, 60))
    assert not is_prime(2147483647 * 3)


def test_rank_mod_p_examples():
    assert rank_mod_p(IntMatrix.identity(4), 7) == 4
    assert rank_mod_p(IntMatrix.zeros(3, 5), 5) == 0
    assert rank_mod_p(IntMatrix.from_rows([[2, 4], [1, 2]]), 3) == 1
    with pytest.raises(ValueError):
        rank_mod_p(IntMatrix.identity(2), 9)


def test_rank_mod_p_can_undercount():
    m = IntMatrix.from_rows([[3, 0], [0, 1]])
    assert rank_mod_p(m, 3) == 1
    assert rank_exact(m) == 2


def test_rank_exact_examples():
    for n in (1, 3, 7):
        assert rank_exact(IntMatrix.identity(n)) == n
    block = IntMatrix.from_rows([[1, 0, 0, 0], [0, 0, 1, 0], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert rank_exact(block) == 3
    assert rank_exact(IntMatrix.zeros(0, 5)) == 0


def test_bareiss_against_sympy():
    rng = np.random.default_rng(0)
    for _ in range(40):
        rows, cols = rng.integers(1, 9, size=2)
        k = int(rng.integers(0, min(rows, cols) + 1))
        m = low_rank_matrix(rng, rows, cols, k)
        assert rank_bareiss(m) == sympy.Matrix(m.to_rows()).rank()


def test_bareiss_echelon_shape():
    m = IntMatrix.from_rows([[0, 2, 4], [0, 1, 2], [1, 1, 1]])
    ech, pivots = bareiss_echelon(m)
    assert pivots == [0, 1]
    for i, c in enumerate(pivots):
        assert ech[i][c] != 0
        assert all(ech[r][c] == 0 for r in range(i + 1, m.rows))


def test_rank_exact_agrees_with_svd_on_random_30x40():
    rng = np.random.default_rng(42)
    for _ in range(100):
        m = random_matrix(rng, 30, 40)
        assert rank_exact(m) == svd_rank(m)


def test_low_rank_uses_exact_elimination():
    rng = np.random.default_rng(7)
    m = low_rank_matrix(rng, 12, 15, 5)
    rank, primes, method = certified_rank(m)
    assert (rank, method) == (5, "bareiss")
    assert primes == list(PRESCREEN_PRIMES)
    assert rank == svd_rank(m)


def test_kernel_basis_examples():
    assert kernel_basis(IntMatrix.identity(4)) == []
    (k,) = kernel_basis(IntMatrix.from_rows([[1, 1]]))
    assert k[0] == -k[1] != 0
    # rank-one span (1,1,1,1) in a 4-dim space
    assert len(kernel_basis(IntMatrix.from_rows([[1, 1, 1, 1]]))) == 3


def test_kernel_vectors_are_in_kernel():
    rng = np.random.default_rng(1)
    for _ in range(30):
        rows, cols = rng.integers(1, 10, size=2)
        m = low_rank_matrix(rng, rows, cols, int(rng.integers(0, min(rows, cols) + 1)))
        basis = kernel_basis(m)
        assert rank_exact(m) + len(basis) == m.cols
        for x in basis:
            assert all(v == 0 for v in matvec(m, x))
        if basis:
            assert rank_exact(IntMatrix.from_rational_rows(basis)) == len(basis)


def test_in_row_space():
    m = IntMatrix.from_rows([[1, 1, 0], [0, 1, 1]])
    assert in_row_space(m, [1, 2, 1])
    assert not in_row_space(m, [1, 0, 0])


int_matrix = st.integers(1, 7).flatmap(
    lambda r: st.integers(1, 7).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r
        )
    )
)


@settings(max_examples=80, deadline=None)
@given(int_matrix, st.sampled_from([3, 5, 7, 101, PRESCREEN_PRIMES[0]]))
def test_rank_properties(rows, p):
    m = IntMatrix.from_rows(rows)
    r = rank_exact(m)
    assert rank_mod_p(m, p) <= r
    assert rank_exact(m.transpose()) == r
    assert r + len(kernel_basis(m)) == m.cols


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 12).flatmap(
    lambda n: st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n)
))
def test_square_full_rank_iff_nonzero_det(rows):
    n = len(rows)
    det = sympy.Matrix(rows).det()
    assert (rank_exact(IntMatrix.from_rows(rows)) == n) == (det != 0)
