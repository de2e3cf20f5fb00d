from fractions import Fraction

import pytest

from ratlie.exactlin import (
    DimensionMismatch,
    Echelon,
    NoComplementError,
    NotASubspaceError,
    complement_pick,
    kernel,
    member,
    quotient_dim,
    rank,
    sparse_kernel,
    span,
    vec,
)


def test_span_rref_and_pivots():
    s = span([vec(1, 2, 3), vec(2, 4, 6), vec(0, 1, 1)])
    assert s.dim == 2
    assert s.pivot_cols == (0, 1)
    assert s.rref_rows == (vec(1, 0, 1), vec(0, 1, 1))


def test_span_rejects_mixed_lengths():
    with pytest.raises(DimensionMismatch):
        span([vec(1, 0), vec(1, 0, 0)])


def test_empty_span_needs_ambient():
    assert span([], ambient_dim=3).dim == 0
    with pytest.raises(DimensionMismatch):
        span([])


def test_membership_is_exact():
    s = span([vec(Fraction(1, 3), 1)])
    assert member(s, vec(1, 3))
    assert not member(s, vec(1, Fraction(301, 100)))


def test_rank():
    assert rank([vec(1, 1), vec(1, -1), vec(2, 0)]) == 2


def test_complement_pick_prefers_unit_vectors():
    s = span([vec(1, -1)])
    assert complement_pick(s, 2) == vec(1, 0)
    s = span([vec(1, 0, 0), vec(0, 1, 0)])
    assert complement_pick(s) == vec(0, 0, 1)


def test_complement_pick_on_full_space():
    with pytest.raises(NoComplementError):
        complement_pick(span([vec(1, 0), vec(0, 1)]))


def test_quotient_dim():
    big = span([vec(1, 0, 0), vec(0, 1, 0)])
    small = span([vec(1, 1, 0)])
    assert quotient_dim(big, small) == 1
    with pytest.raises(NotASubspaceError):
        quotient_dim(small, big)


def test_kernel_dense():
    ks = kernel([vec(1, 0), vec(0, 1), vec(1, 1)])
    assert len(ks) == 1
    c = ks[0]
    assert c[0] == c[1] == -c[2]


def test_sparse_kernel_maps_back_to_inputs():
    vs = [{"x": 1}, {"y": 1}, {"x": 2}, {"x": 1, "y": 1}]
    rels = sparse_kernel(vs)
    assert len(rels) == 2
    for r in rels:
        total = {}
        for i, c in r.items():
            for k, x in vs[i].items():
                total[k] = total.get(k, 0) + c * x
        assert not any(total.values())


def test_echelon_express_and_copy():
    e = Echelon(track=True)
    assert e.add({"x": 1, "y": 1})
    assert e.add({"y": 2})
    assert not e.add({"x": 1, "y": 3})
    c = e.express({"x": 2, "y": 4})
    assert c == {0: 2, 1: 1}
    assert e.express({"z": 1}) is None
    f = e.copy()
    f.add({"z": 1})
    assert e.rank == 2 and f.rank == 3


def test_express_needs_tracking():
    with pytest.raises(RuntimeError):
        Echelon().express({"x": 1})
