import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sphbranch.chars import (
    CharacterError,
    character_dimension,
    decompose_virtual_character,
    expand,
    freudenthal_character,
    tensor_character,
    weyl_dim,
)
from sphbranch.oracle import klimyk_tensor_multiplicity
from sphbranch.weyl import build_root_system

TYPES = ["A2", "B2", "G2", "A3", "B3", "C3"]


@given(st.sampled_from(TYPES), st.data())
@settings(max_examples=60, deadline=None)
def test_freudenthal_dimension_is_weyl(label, data):
    rs = build_root_system(label)
    hw = tuple(data.draw(st.lists(st.integers(0, 2), min_size=rs.rank, max_size=rs.rank)))
    ch = freudenthal_character(rs, hw)
    assert ch[hw] == 1
    assert character_dimension(rs, ch) == weyl_dim(rs, hw)


def test_known_dimensions():
    assert weyl_dim(build_root_system("E8"), (1, 0, 0, 0, 0, 0, 0, 0)) == 3875
    assert weyl_dim(build_root_system("E8"), (0, 0, 0, 0, 0, 0, 0, 1)) == 248
    assert weyl_dim(build_root_system("E6"), (1, 0, 0, 0, 0, 0)) == 27
    assert weyl_dim(build_root_system("F4"), (0, 0, 0, 1)) == 26
    assert weyl_dim(build_root_system("G2"), (1, 0)) == 7
    assert freudenthal_character(build_root_system("A2"), (1, 1)) == {(1, 1): 1, (0, 0): 2}
    assert freudenthal_character(build_root_system("G2"), (1, 0)) == {(1, 0): 1, (0, 0): 1}


@pytest.mark.parametrize("label", ["A2", "B2", "G2"])
def test_tensor_decomposition_matches_klimyk(label):
    rs = build_root_system(label)
    weights = list(itertools.product(range(2), repeat=rs.rank))
    for a, b in itertools.product(weights, repeat=2):
        prod = tensor_character(rs, freudenthal_character(rs, a), freudenthal_character(rs, b))
        dec = decompose_virtual_character(rs, prod, dominant_only=True)
        assert all(c > 0 for c in dec.values())
        assert sum(c * weyl_dim(rs, nu) for nu, c in dec.items()) == weyl_dim(rs, a) * weyl_dim(rs, b)
        for nu, c in dec.items():
            assert klimyk_tensor_multiplicity(rs, a, b, nu) == c


def test_expand_and_full_decomposition():
    rs = build_root_system("B2")
    ch = freudenthal_character(rs, (1, 1))
    full = dict(expand(rs, ch))
    assert sum(full.values()) == weyl_dim(rs, (1, 1))
    assert decompose_virtual_character(rs, full) == {(1, 1): 1}


def test_non_invariant_character_rejected():
    rs = build_root_system("A2")
    with pytest.raises(CharacterError):
        decompose_virtual_character(rs, {(1, 0): 1, (-1, 1): 2})
    with pytest.raises(ValueError):
        freudenthal_character(rs, (-1, 0))
