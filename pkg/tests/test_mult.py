import itertools

import pytest

from sphbranch import linalg
from sphbranch.irrep import build_irrep
from sphbranch.mult import (
    conditions_for,
    prv_spaces,
    sum_rule_terms,
    theorem1_multiplicity,
    verify_full_D_redundancy,
)
from sphbranch.oracle import candidate_weights, oracle_multiplicity
from sphbranch.orbits import divisor_set, find_y0, minimal_open_representatives
from sphbranch.pairs import make_pair
from sphbranch.weyl import build_root_system


def test_documented_examples():
    assert theorem1_multiplicity(make_pair("tensor:A1"), (2,), (1, 1)).dimension == 1
    assert theorem1_multiplicity(make_pair("spin:4"), (0, 0, 0), (1, 0, 0, 0)).dimension == 1
    for tag in ("tensor:A2", "sl-sp:3", "spin:4", "g2", "f4"):
        p = make_pair(tag)
        assert theorem1_multiplicity(p, (0,) * p.G.rank, (0,) * p.hat.rank).dimension == 1


def test_prv_examples():
    A1, A2 = build_root_system("A1"), build_root_system("A2")
    assert prv_spaces(A1, (2,), (1,), (1,)) == (1, 1)
    assert prv_spaces(A1, (0,), (0,), (0,)) == (1, 1)
    assert prv_spaces(A2, (1, 1), (1, 0), (0, 1)) == (1, 1)


@pytest.mark.parametrize("tag", ["tensor:A1", "tensor:A2"])
def test_prv_matches_kernel(tag):
    p = make_pair(tag)
    n = p.G.rank
    for nuhat in itertools.product(range(2), repeat=2 * n):
        for nu in candidate_weights(p, nuhat):
            want = theorem1_multiplicity(p, p.G.dual_weight(nu), nuhat).dimension
            assert prv_spaces(p.G, nu, nuhat[:n], nuhat[n:]) == (want, want)


@pytest.mark.parametrize("tag", ["tensor:A1", "tensor:A2"])
def test_tensor_plus_minus_parametrizations(tag):
    p = make_pair(tag)
    n = p.G.rank
    y0 = p.hat.element(p.reference_y0_words[0])  # (e, w0)
    ds = divisor_set(p, y0)
    plus = [e.alpha for e in ds.D if e.positive]
    minus = [e.alpha for e in ds.D if not e.positive]
    assert plus == list(range(n)) and minus == list(range(n, 2 * n))
    for nuhat in itertools.product(range(2), repeat=2 * n):
        for nu in candidate_weights(p, nuhat):
            a = theorem1_multiplicity(p, nu, nuhat, y0=y0, D=plus).dimension
            b = theorem1_multiplicity(p, nu, nuhat, y0=y0, D=minus).dimension
            assert a == b == oracle_multiplicity(p, nu, nuhat)
            # condition (1) is vacuous here
            assert theorem1_multiplicity(p, nu, nuhat, condition1=False).dimension == a


@pytest.mark.parametrize("tag", ["g2", "sl-sp:2", "tensor:A2"])
def test_independent_of_y0(tag):
    p = make_pair(tag)
    reps = minimal_open_representatives(p)
    assert len(reps) >= 1
    for nuhat in itertools.product(range(2), repeat=p.hat.rank):
        for nu in candidate_weights(p, nuhat):
            dims = {theorem1_multiplicity(p, nu, nuhat, y0=y0).dimension for y0 in reps}
            assert dims == {oracle_multiplicity(p, nu, nuhat)}


@pytest.mark.parametrize("tag,nuhat", [("g2", (1, 0, 1)), ("sl-sp:2", (1, 1, 1)), ("f4", (1, 0, 0, 0, 0, 0))])
def test_witness_and_full_D(tag, nuhat):
    p = make_pair(tag)
    for nu in candidate_weights(p, nuhat):
        w = theorem1_multiplicity(p, nu, nuhat)
        assert w.check()
        assert w.dimension == len(w.basis) <= w.ambient_dim
        full = theorem1_multiplicity(p, nu, nuhat, full_D=True)
        assert full.dimension == w.dimension
        # the full-D kernel sits inside the D0 kernel
        if full.basis:
            both = w.basis + full.basis
            assert linalg.rank(both, w.ambient_dim) == w.dimension
        assert verify_full_D_redundancy(p, nu, nuhat)


def test_frames_agree():
    p = make_pair("spin:4")
    for nuhat in [(1, 0, 1, 0), (0, 1, 0, 0), (1, 1, 0, 1)]:
        for nu in candidate_weights(p, nuhat)[:6]:
            a = theorem1_multiplicity(p, nu, nuhat, frame="direct")
            b = theorem1_multiplicity(p, nu, nuhat, frame="dominant")
            assert a.dimension == b.dimension
            assert a.check() and b.check()
    with pytest.raises(ValueError):
        theorem1_multiplicity(p, (0, 0, 0), (0, 0, 0, 0), frame="sideways")


def test_condition1_matters():
    p = make_pair("g2")
    nuhat = (1, 0, 0)
    loose = theorem1_multiplicity(p, (0, 0), (0, 0, 0), condition1=False)
    assert loose.dimension == 1
    strict = {nu: theorem1_multiplicity(p, nu, nuhat).dimension for nu in candidate_weights(p, nuhat)}
    relaxed = {nu: theorem1_multiplicity(p, nu, nuhat, condition1=False).dimension for nu in strict}
    assert all(relaxed[nu] >= strict[nu] for nu in strict)


def test_conditions_layout():
    p = make_pair("g2")
    y0 = find_y0(p)
    conds = conditions_for(p, (2, 0, 3), y0, (2,))
    assert conds[-1][1] == 4  # <nuhat, ahat3^vee> + 1
    assert [k for k, _ in conds[:-1]] == sorted(k for k in p.phi1 if k < p.G.num_positive)


@pytest.mark.parametrize("X", [((0, 1, 0), (0, 0, 1), (0, 0, 0)), ((0, 1, 2), (0, 0, 1), (0, 0, 0))])
def test_nested_kernels(X):
    X = [list(r) for r in X]
    prev = []
    P = linalg.identity(3)
    for _ in range(4):
        P = linalg.matmul(X, P)
        ker = linalg.nullspace(P, 3)
        for v in prev:
            assert not any(linalg.matvec(P, v))
        prev = ker


def test_nested_kernels_on_root_operators():
    m = build_irrep(build_root_system("G2"), (1, 1))
    for lam in m.weights:
        prev = []
        for e in range(1, 5):
            P = m.power(7, lam, e)
            if P is None:
                break
            for v in prev:
                assert not any(linalg.matvec(P, v))
            prev = linalg.nullspace(P, m.dims[lam])


def test_sum_rule_terms():
    from sphbranch.chars import weyl_dim

    p = make_pair("sl-sp:2")
    nuhat = (1, 0, 1)
    terms = sum_rule_terms(p, nuhat)
    assert sum(m * weyl_dim(p.G, nu) for nu, m in terms.items()) == weyl_dim(p.hat, nuhat)


def test_bad_weights():
    p = make_pair("g2")
    with pytest.raises(ValueError):
        theorem1_multiplicity(p, (1,), (0, 0, 0))
    with pytest.raises(ValueError):
        theorem1_multiplicity(p, (0, 0), (0, -1, 0))


def test_json_record():
    p = make_pair("g2")
    w = theorem1_multiplicity(p, (0, 1), (1, 0, 1))
    rec = w.to_json(p.G, emit_basis=True)
    assert rec["multiplicity"] == w.dimension == len(rec["basis"])
    assert rec["y0_word"] == [1, 2, 3]
    assert all(isinstance(x, str) for v in rec["basis"] for x in v)
