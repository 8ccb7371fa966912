from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from sphbranch import linalg

small = st.integers(min_value=-4, max_value=4)


def matrices(max_rows=6, max_cols=6):
    return st.integers(1, max_cols).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=0, max_size=max_rows).map(
            lambda rows: (rows, c)
        )
    )


def _apply(rows, x):
    return [sum(Fraction(a) * linalg.to_fraction(b) for a, b in zip(r, x)) for r in rows]


@given(matrices())
@settings(max_examples=200, deadline=None)
def test_rank_nullity(m):
    rows, c = m
    ns = linalg.nullspace(rows, c)
    assert linalg.rank(rows, c) + len(ns) == c
    for x in ns:
        assert not any(_apply(rows, x))
    if ns:
        assert linalg.rank(ns, c) == len(ns)


@given(matrices(5, 5))
@settings(max_examples=100, deadline=None)
def test_incremental_basis_reconstructs(m):
    rows, c = m
    ib = linalg.IncrementalBasis()
    kept = []
    for r in rows:
        vec = {j: x for j, x in enumerate(r) if x}
        ok, info = ib.add(vec)
        if ok:
            assert info == len(kept)
            kept.append(r)
        else:
            back = [sum(linalg.to_fraction(info.get(j, 0)) * kept[j][col] for j in range(len(kept))) for col in range(c)]
            assert back == [Fraction(x) for x in r]
    assert len(kept) == linalg.rank(rows, c)


def test_matmul_shapes():
    A = [[1, 2], [3, 4], [5, 6]]
    B = [[1, 0, 2], [0, 1, 3]]
    assert linalg.matmul(A, B) == [[1, 2, 8], [3, 4, 18], [5, 6, 28]]
    assert linalg.matmul([], B) == []
    assert linalg.matmul([[1, 2]], [[0], [0]]) == [[0]]


def test_rational_backend():
    x = linalg.rational(1, 3) * 3
    assert x == 1
    assert linalg.to_fraction(linalg.rational(-2, 6)) == Fraction(-1, 3)
