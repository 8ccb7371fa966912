import itertools

import pytest

from sphbranch.liealg import chevalley_constants
from sphbranch.weyl import build_root_system

# every simple type of rank <= 4, plus a reducible one
RANK_LE_4 = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "G2", "F4", "A1xA2"]


def _jacobi(sc, x, y, z):
    out = {}
    for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
        inner = sc.bracket(b, c)
        for k, v in sc.bracket_vectors({a: 1}, inner).items():
            out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


@pytest.mark.parametrize("label", RANK_LE_4)
def test_jacobi_exhaustive(label):
    sc = chevalley_constants(build_root_system(label))
    basis = sc.basis()
    for x, y, z in itertools.combinations(basis, 3):
        assert not _jacobi(sc, x, y, z), (x, y, z)


@pytest.mark.parametrize("label", ["A3", "B3", "C3", "G2", "F4"])
def test_constants_are_plus_minus_p_plus_1(label):
    rs = build_root_system(label)
    sc = chevalley_constants(rs)
    for (a, b), n in sc.N.items():
        p = 0
        while True:
            c = tuple(x - (p + 1) * y for x, y in zip(rs.root_coeffs[b], rs.root_coeffs[a]))
            if c in rs.root_index:
                p += 1
            else:
                break
        assert abs(n) == p + 1


@pytest.mark.parametrize("label", ["A3", "B2", "G2", "C3"])
def test_serre_relations(label):
    rs = build_root_system(label)
    sc = chevalley_constants(rs)
    N = rs.num_positive
    for i, j in itertools.permutations(range(rs.rank), 2):
        m = 1 - rs.cartan[j][i]
        for sign in (0, N):
            v = {("e", j + sign): 1}
            for _ in range(m):
                v = sc.bracket_vectors({("e", i + sign): 1}, v)
            assert not v


def test_antisymmetry_and_cartan():
    rs = build_root_system("B3")
    sc = chevalley_constants(rs)
    for x, y in itertools.product(sc.basis(), repeat=2):
        a, b = sc.bracket(x, y), sc.bracket(y, x)
        assert a == {k: -v for k, v in b.items()}
    # [e_i, e_-i] = h_i
    for i in range(rs.rank):
        assert sc.bracket(("e", i), ("e", i + rs.num_positive)) == {("h", i): 1}
