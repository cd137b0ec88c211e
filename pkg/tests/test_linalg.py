import random
from fractions import Fraction as F

import pytest

from constalg.linalg import (
    IncrementalSpan,
    QMatrix,
    nullspace,
    rank,
    rref,
    span_membership,
)


def test_rref_identity():
    m = QMatrix.from_rows([[1, 0], [0, 1]])
    reduced, pivots = rref(m)
    assert reduced == m
    assert pivots == (0, 1)


def test_rref_rank_one():
    # hand row reduction: [[2,4],[1,2]] -> [[1,2],[0,0]]
    reduced, pivots = rref(QMatrix.from_rows([[2, 4], [1, 2]]))
    assert reduced == QMatrix.from_rows([[1, 2], [0, 0]])
    assert pivots == (0,)


def test_rref_zero_matrix():
    reduced, pivots = rref(QMatrix(2, 3))
    assert reduced == QMatrix(2, 3)
    assert pivots == ()


def test_rref_fractions():
    reduced, pivots = rref(QMatrix.from_rows([[F(1, 2), 1], [1, 3]]))
    assert reduced == QMatrix.from_rows([[1, 0], [0, 1]])
    assert pivots == (0, 1)


def test_nullspace_identity_empty():
    assert nullspace(QMatrix.from_rows([[1, 0], [0, 1]])) == []


def test_nullspace_difference():
    # solve by hand: x - y = 0 -> (1, 1)
    vecs = nullspace(QMatrix.from_rows([[1, -1]]))
    assert vecs == [(F(1), F(1))]


def test_nullspace_zero_matrix_standard_basis():
    vecs = nullspace(QMatrix(1, 3))
    assert vecs == [
        (F(1), F(0), F(0)),
        (F(0), F(1), F(0)),
        (F(0), F(0), F(1)),
    ]


def test_span_membership_examples():
    e1, e2 = (F(1), F(0)), (F(0), F(1))
    assert span_membership([e1, e2], (1, 1)) == (F(1), F(1))
    assert span_membership([e1], (0, 1)) is None
    # solve the 2x2 system by hand: 2*(1,2) + 1*(0,1) = (2,5)
    assert span_membership([(1, 2), (0, 1)], (2, 5)) == (F(2), F(1))


def test_span_membership_dimension_mismatch():
    with pytest.raises(ValueError):
        span_membership([(1, 0)], (1, 0, 0))


def _random_matrix(rng, rows, cols):
    entries = {}
    for r in range(rows):
        for c in range(cols):
            if rng.random() < 0.5:
                entries[(r, c)] = F(rng.randint(-4, 4), rng.randint(1, 3))
    return QMatrix(rows, cols, entries)


def test_nullspace_and_rank_properties():
    rng = random.Random(42)
    for _ in range(60):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        vecs = nullspace(m)
        assert len(vecs) == m.cols - rank(m)
        for v in vecs:
            assert not any(m.mul_vec(v))


def test_rref_idempotent():
    rng = random.Random(7)
    for _ in range(40):
        m = _random_matrix(rng, rng.randint(1, 5), rng.randint(1, 5))
        reduced, pivots = rref(m)
        again, pivots2 = rref(reduced)
        assert again == reduced
        assert pivots2 == pivots
        assert list(pivots) == sorted(pivots)


def test_incremental_span_matches_rank():
    rng = random.Random(3)
    for _ in range(30):
        m = _random_matrix(rng, rng.randint(1, 6), rng.randint(1, 6))
        span = IncrementalSpan()
        for row in m.sparse_rows():
            span.add(row)
        assert span.rank == rank(m)


def test_incremental_span_membership():
    span = IncrementalSpan()
    span.add({0: F(1), 1: F(2)})
    span.add({1: F(1)})
    assert span.contains({0: F(2), 1: F(5)})
    assert not span.contains({2: F(1)})
