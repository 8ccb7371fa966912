"""Orbit combinatorics and the golden tables of each family."""

from fractions import Fraction

import pytest

from sphbranch.orbits import (
    EnumerationCapExceeded,
    coset_data,
    divisor_set,
    enumerate_cosets,
    find_y0,
    minimal_open_representatives,
    open_coset,
    orbit_graph,
    stabilizer_dim,
)
from sphbranch.pairs import make_pair

# tag -> (number of cosets, dim of the stabilizer of the open orbit)
COSETS = {
    "tensor:A1": (2, 1), "tensor:A2": (6, 2), "sl-sp:2": (3, 4), "sl-sp:3": (15, 6),
    "spin:4": (4, 9), "spin:5": (5, 16), "g2": (4, 5), "f4": (45, 16),
}


def _ambient(p, e):
    return tuple(p.G.roots[e.image])


@pytest.mark.parametrize("tag", sorted(COSETS))
def test_coset_counts_and_open_orbit(tag):
    p = make_pair(tag)
    n, stab = COSETS[tag]
    cos = enumerate_cosets(p)
    assert len(cos) == n
    assert len(cos) * p.G.weyl_order == p.hat.weyl_order
    y0 = find_y0(p)
    assert y0.length() == p.hat.num_positive - p.G.num_positive
    assert stabilizer_dim(p, y0) == stab == p.G.rank + sum(1 for k in p.phi1 if k < p.G.num_positive)
    assert open_coset(p).orbit_dim == p.hat.num_positive
    for w in p.reference_y0_words:
        assert coset_data(p).coset(p.hat.element(w)).index == open_coset(p).index


@pytest.mark.parametrize("tag", sorted(COSETS))
def test_divisors(tag):
    p = make_pair(tag)
    y0 = find_y0(p)
    ds = divisor_set(p, y0)
    simple_phi2 = [i for i in range(p.G.rank) if i in p.phi2]
    assert len(ds.D0) == len(simple_phi2)
    st = stabilizer_dim(p, y0)
    for e in ds.D:
        assert stabilizer_dim(p, y0 * p.hat.simple_reflection(e.alpha)) == st + 1
        assert p.root_map[e.beta_plus] == p.root_map[e.beta_minus]
    assert len({e.coset for e in ds.D0}) == len(ds.D0)


def test_g2_golden():
    p = make_pair("g2")
    first, other = (p.hat.element(w) for w in p.reference_y0_words)
    assert first.word == (0, 1, 2)
    for y0 in (first, other, find_y0(p)):
        assert divisor_set(p, y0).labels("D0") == (2,)
    (e,) = divisor_set(p, other).D0
    assert p.G.root_coeffs[e.image] == (1, 1)  # -rho(y0 ahat3) = a1 + a2 for y0 = s3 s2 s3
    (e,) = divisor_set(p, first).D0
    assert p.G.root_coeffs[e.image] == (2, 1)


def test_g2_orbit_graph():
    p = make_pair("g2")
    g = orbit_graph(p)
    assert [c.orbit_dim for c in g.cosets] == [6, 7, 8, 9]
    assert sorted(g.edges) == [(0, 1, 0), (0, 1, 2), (1, 2, 1), (2, 3, 2)]
    dot = g.to_dot()
    assert dot.startswith('digraph "g2" {') and dot.count("->") == 4
    assert 'c0 -> c1 [label="ahat1"];' in dot and 'c2 -> c3 [label="ahat3"];' in dot


@pytest.mark.parametrize("n", [2, 3])
def test_sl_sp_golden(n):
    p = make_pair(f"sl-sp:{n}")
    (word,) = p.reference_y0_words
    ds = divisor_set(p, p.hat.element(word))
    got = sorted(_ambient(p, e) for e in ds.D0)
    want = sorted(tuple(Fraction(int(j in (k, k + 1))) for j in range(n)) for k in range(n - 1))
    assert got == want  # eps_k + eps_(k+1)
    assert stabilizer_dim(p, find_y0(p)) == 2 * n


@pytest.mark.parametrize("n", [4, 5])
def test_spin_golden(n):
    p = make_pair(f"spin:{n}")
    (word,) = p.reference_y0_words
    assert word == tuple(range(n - 2, -1, -1))
    ds = divisor_set(p, p.hat.element(word))
    assert ds.labels("D0") == (0,)
    assert _ambient(p, ds.D0[0]) == tuple(Fraction(int(j == 0)) for j in range(n - 1))  # eps_1


def test_f4_golden():
    p = make_pair("f4")
    (word,) = p.reference_y0_words
    assert len(word) == 12
    ds = divisor_set(p, p.hat.element(word))
    assert ds.labels("D0") == (0, 5)
    imgs = {e.alpha: p.G.root_coeffs[e.image] for e in ds.D0}
    assert imgs == {0: (1, 2, 3, 1), 5: (1, 2, 3, 2)}
    assert divisor_set(p, find_y0(p)).labels("D0") == (0, 5)


def test_tensor_golden():
    p = make_pair("tensor:A2")
    (word,) = p.reference_y0_words  # (e, w0)
    y0 = p.hat.element(word)
    ds = divisor_set(p, y0)
    assert ds.labels("D") == (0, 1, 2, 3)
    assert len(ds.D0) == 2
    # each first-factor root shares its divisor with a second-factor root
    by_coset = {}
    for e in ds.D:
        by_coset.setdefault(e.coset, []).append(e.alpha)
    assert sorted(map(sorted, by_coset.values())) == [[0, 3], [1, 2]]


def test_minimal_representatives_share_the_coset():
    p = make_pair("g2")
    reps = minimal_open_representatives(p)
    assert [r.word for r in reps] == sorted(r.word for r in reps)
    assert reps[0] == find_y0(p)
    assert {coset_data(p).coset(r).index for r in reps} == {open_coset(p).index}


def test_enumeration_cap():
    with pytest.raises(EnumerationCapExceeded):
        coset_data(make_pair("f4"), cap=1000)
