import pytest
from hypothesis import given, settings, strategies as st

from lienil.coeff import GF, QQ, ZZ
from lienil.linexact import (
    FieldEchelon, IntegerLattice, Loc3Lattice, NonFieldRing, NotInSpan, SparseMat, _matmul, dense_rank, det_int,
    hermite_normal_form, rank_over_field, smith_normal_form, solve_in_rowspan, torsion_index,
)
from lienil.coeff import ZZ3


def M(rows, ring=ZZ):
    return SparseMat.from_dense(rows, ring)


def test_rank_examples():
    assert rank_over_field(M([[1, 0, 0], [0, 1, 0], [0, 0, 1]], QQ)) == 3
    assert rank_over_field(M([[1, 2], [1, 2]], QQ)) == 1
    assert rank_over_field(M([[0, 0], [0, 0]], QQ)) == 0
    with pytest.raises(NonFieldRing):
        rank_over_field(M([[1]], ZZ))


def test_solve_examples():
    assert solve_in_rowspan(M([[1, 0], [0, 1]], QQ), {0: 1, 1: 2}) == [1, 2]
    with pytest.raises(NotInSpan):
        solve_in_rowspan(M([[1, 0]], QQ), {1: 1})
    assert solve_in_rowspan(M([[1, 1], [1, -1]], QQ), {0: 1}) == [0.5, 0.5]


def test_hnf_examples():
    assert hermite_normal_form(M([[2, 0], [0, 3]])).H == [[2, 0], [0, 3]]
    # fully reduced form; [[1,2],[0,1]] has the same lattice but an unreduced entry above a pivot
    assert hermite_normal_form(M([[1, 2], [1, 3]])).H == [[1, 0], [0, 1]]
    assert hermite_normal_form(M([[0, 0], [2, 4]])).H == [[2, 4]]


def test_snf_examples():
    assert smith_normal_form(M([[2, 0], [0, 3]])).diagonal == [1, 6]
    assert smith_normal_form(M([[4, 0], [0, 6]])).diagonal == [2, 12]
    assert smith_normal_form(M([[0, 0], [0, 0]])).diagonal == []


def test_torsion_examples():
    assert torsion_index(M([[2, 0]]), {0: 1}) == 2
    assert torsion_index(M([[1, 0]]), {0: 1}) == 1
    assert torsion_index(M([[1, 0]]), {1: 1}) is None


def test_loc3_lattice():
    lat = Loc3Lattice()
    lat.insert({0: 3})
    assert lat.contains({0: 1})
    lat2 = Loc3Lattice()
    lat2.insert({0: 2})
    assert not lat2.contains({0: 1})
    assert lat.same_span(Loc3Lattice()) is False


small = st.integers(-9, 9)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=max_rows))


@settings(max_examples=150)
@given(matrices())
def test_hnf_certificate(a):
    r = hermite_normal_form(M(a))
    ua = _matmul(r.U, a)
    assert ua[: len(r.H)] == r.H and not any(any(row) for row in ua[len(r.H):])
    assert abs(det_int(r.U)) == 1
    for i, (row, p) in enumerate(zip(r.H, r.pivots)):
        assert row[p] > 0 and not any(row[:p])
        assert all(0 <= r.H[k][p] < row[p] for k in range(i))


@settings(max_examples=150)
@given(matrices())
def test_snf_certificate(a):
    r = smith_normal_form(M(a))
    d = _matmul(_matmul(r.U, a), r.V)
    assert all(d[i][j] == (r.diagonal[i] if i == j and i < len(r.diagonal) else 0)
               for i in range(len(a)) for j in range(len(a[0])))
    assert all(r.diagonal[i + 1] % r.diagonal[i] == 0 for i in range(len(r.diagonal) - 1))
    assert len(r.diagonal) == dense_rank(a)


@settings(max_examples=150)
@given(matrices(8, 8), st.sampled_from([QQ, GF(5), GF(3)]))
def test_rank_matches_dense_oracle(a, ring):
    m = SparseMat.from_dense([[ring.coerce(x) for x in row] for row in a], ring)
    assert rank_over_field(m) == dense_rank(a, ring)


@settings(max_examples=150)
@given(matrices(), st.data())
def test_incremental_lattice_matches_hnf(a, data):
    lat = IntegerLattice()
    for row in a:
        lat.insert({j: x for j, x in enumerate(row) if x})
    h = hermite_normal_form(M(a)).H
    assert [[b.get(j, 0) for j in range(len(a[0]))] for b in lat.basis()] == h
    v = data.draw(st.lists(small, min_size=len(a[0]), max_size=len(a[0])))
    vec = {j: x for j, x in enumerate(v) if x}
    k = lat.torsion_index(vec)
    in_q_span = dense_rank(a + [v]) == dense_rank(a)
    assert (k is not None) == in_q_span
    if k is not None:
        assert lat.contains({j: k * x for j, x in vec.items()})
        assert (k == 1) == lat.contains(vec)
        for smaller in range(1, min(k, 40)):
            assert not lat.contains({j: smaller * x for j, x in vec.items()})


@settings(max_examples=100)
@given(matrices(5, 5))
def test_echelon_express_roundtrip(a):
    ech = FieldEchelon(QQ, track=True)
    for i, row in enumerate(a):
        ech.insert({j: QQ.coerce(x) for j, x in enumerate(row) if x}, tag=i)
    target = {j: QQ.coerce(sum(row[j] for row in a)) for j in range(len(a[0]))}
    target = {j: x for j, x in target.items() if x}
    combo = ech.express(target)
    assert combo is not None
    rebuilt = {}
    for t, c in combo.items():
        for j, x in enumerate(a[t]):
            rebuilt[j] = rebuilt.get(j, 0) + c * x
    assert {j: x for j, x in rebuilt.items() if x} == target


def test_loc3_same_span_ignores_threes():
    a, b = Loc3Lattice(), Loc3Lattice()
    a.insert({0: 1, 1: 1})
    b.insert({0: 9, 1: 9})
    assert a.same_span(b)
    c = Loc3Lattice()
    c.insert({0: 2, 1: 2})
    assert not a.same_span(c)
    assert ZZ3.three_invertible
