from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from innerideals.exact import (
    Subspace,
    integerize,
    nullspace,
    primitive,
    rank,
    rref,
    safe_matmul,
    signature,
    solve,
    to_sparse,
)

small = st.integers(-4, 4)


def matrices(rows=st.integers(1, 6), cols=st.integers(1, 6)):
    return st.tuples(rows, cols).flatmap(
        lambda rc: st.lists(st.lists(small, min_size=rc[1], max_size=rc[1]), min_size=rc[0], max_size=rc[0])
    )


def test_integerize_and_primitive():
    ints, d = integerize([Fraction(1, 2), Fraction(-1, 3), 2])
    assert d == 6 and ints == [3, -2, 12]
    assert primitive([0, -4, 6]) == (0, 2, -3)


def test_rref_is_canonical():
    rows = [to_sparse([2, 4, 0]), to_sparse([1, 2, 1])]
    out, piv = rref(rows, 3)
    assert sorted(piv) == [0, 2]
    a = Subspace.span([[1, 2, 0], [0, 0, 1]], 3)
    b = Subspace.span([[1, 2, 1], [3, 6, 2]], 3)
    assert a == b and hash(a) == hash(b)


def test_subspace_membership_and_coords():
    s = Subspace.span([[1, 1, 0], [0, 1, 1]], 3)
    assert s.contains([1, 2, 1])
    assert not s.contains([1, 0, 0])
    assert s.coords([2, 3, 1]) == [2, 3]  # echelon basis (1,0,-1), (0,1,1)
    with pytest.raises(ValueError):
        s.coords([1, 0, 0])


def test_solve_and_nullspace():
    rows = [to_sparse([1, 1, 0]), to_sparse([0, 1, 1])]
    x = solve(rows, [1, 2], 3)
    assert x is not None
    assert x[0] + x[1] == 1 and x[1] + x[2] == 2
    assert solve([to_sparse([1, 1]), to_sparse([1, 1])], [0, 1], 2) is None
    assert len(nullspace(rows, 3)) == 1


def test_signature_with_zero_diagonal():
    # hyperbolic plane needs the 2x2 step
    assert signature([[0, 1], [1, 0]]) == (1, 1, 0)
    assert signature([[1, 0, 0], [0, -3, 0], [0, 0, 0]]) == (1, 1, 1)
    assert signature({0: {1: 1}, 1: {0: 1}}) == (1, 1, 0)


def test_safe_matmul_falls_back_to_python_ints():
    big = np.array([[2 ** 40, 1], [1, 2 ** 40]], dtype=object)
    out = safe_matmul(big, big)
    assert out[0, 0] == 2 ** 80 + 1


@given(matrices())
def test_span_int_matches_plain_rref(m):
    a = np.array(m, dtype=np.int64)
    assert Subspace.span_int(a) == Subspace.span(m, a.shape[1])


@given(matrices())
def test_rank_plus_nullity(m):
    n = len(m[0])
    rows = [to_sparse(r) for r in m]
    assert rank(rows, n) + len(nullspace(rows, n)) == n


@given(matrices(cols=st.just(4)))
def test_rows_outside_detects_exactly_nonmembers(m):
    s = Subspace.span(m, 4)
    probe = np.array(m + [[1, 0, 0, 0], [0, 0, 0, 1]], dtype=np.int64)
    bad = set(s.rows_outside(probe))
    for i, r in enumerate(probe.tolist()):
        assert (i in bad) == (not s.contains(r))


@given(st.lists(st.lists(small, min_size=4, max_size=4), min_size=1, max_size=4), st.integers(-3, 3))
def test_signature_invariant_under_congruence(rows, t):
    g = np.array(rows, dtype=np.int64)
    g = g @ g.T - 2 * np.eye(len(rows), dtype=np.int64)
    p = np.eye(len(rows), dtype=np.int64)
    if len(rows) > 1:
        p[0, 1] = t
    assert signature(g.tolist()) == signature((p @ g @ p.T).tolist())
