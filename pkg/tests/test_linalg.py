import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverhearts import linalg as la

PRIMES = [2, 3, 101]


def mat_strategy(p, max_dim=5):
    return st.integers(0, max_dim).flatmap(
        lambda m: st.integers(0, max_dim).flatmap(
            lambda n: st.lists(
                st.lists(st.integers(0, p - 1), min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            ).map(lambda rows: np.array(rows, dtype=np.int64).reshape(m, n))
        )
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_rref_idempotent_and_rank(p, data):
    a = data.draw(mat_strategy(p))
    r, pivots = la.rref(a, p)
    assert la.rank(a, p) == len(pivots)
    r2, piv2 = la.rref(r, p)
    assert np.array_equal(r, r2)
    assert piv2 == pivots


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_nullspace_is_kernel(p, data):
    a = data.draw(mat_strategy(p))
    ns = la.nullspace(a, p)
    assert not la.matmul(a, ns, p).any()
    assert ns.shape[1] == a.shape[1] - la.rank(a, p)
    assert la.rank(ns, p) == ns.shape[1]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_solve_roundtrip(p, data):
    a = data.draw(mat_strategy(p))
    x = data.draw(mat_strategy(p))
    if x.shape[0] != a.shape[1]:
        x = np.zeros((a.shape[1], 2), dtype=np.int64)
    b = la.matmul(a, x, p)
    sol = la.solve(a, b, p)
    assert sol is not None
    assert np.array_equal(la.matmul(a, sol, p), b)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_quotient_map_kernel(p, data):
    w = data.draw(mat_strategy(p))
    q = la.quotient_map(w, w.shape[0], p)
    # q surjective with kernel exactly the column space of w
    assert q.shape[1] == w.shape[0]
    assert la.rank(q, p) == q.shape[0]
    assert not la.matmul(q, w, p).any()
    assert q.shape[0] == w.shape[0] - la.rank(w, p)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PRIMES), st.data())
def test_inverse(p, data):
    a = data.draw(mat_strategy(p))
    if a.shape[0] != a.shape[1]:
        a = la.eye(3)
    if la.is_invertible(a, p):
        inv = la.inv(a, p)
        assert np.array_equal(la.matmul(a, inv, p), la.eye(a.shape[0]))
        assert np.array_equal(la.matmul(inv, a, p), la.eye(a.shape[0]))
    else:
        assert la.inv(a, p) is None


def test_right_left_inverse():
    p = 101
    q = np.array([[1, 2, 3], [0, 1, 4]], dtype=np.int64)
    r = la.right_inverse(q, p)
    assert np.array_equal(la.matmul(q, r, p), la.eye(2))
    m = q.T.copy()
    l = la.left_inverse(m, p)
    assert np.array_equal(la.matmul(l, m, p), la.eye(2))


def test_zero_dims():
    p = 5
    a = la.zeros(0, 3)
    assert la.rank(a, p) == 0
    assert la.nullspace(a, p).shape == (3, 3)
    b = la.zeros(3, 0)
    assert la.nullspace(b, p).shape == (0, 0)
    q = la.quotient_map(la.zeros(3, 0), 3, p)
    assert q.shape == (3, 3)
