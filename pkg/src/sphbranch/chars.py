"""Characters: Freudenthal multiplicities, Weyl dimensions, decompositions.

Characters are stored dominant-only, as ``{dominant Dynkin labels: mult}``;
the full weight multiset is the union of the W-orbits.
"""

from __future__ import annotations

from functools import lru_cache

from .weyl import RootSystem


class CharacterError(ValueError):
    pass


def dominant_weights_below(rs: RootSystem, hw) -> list:
    """Dominant weights mu with hw - mu a nonnegative sum of positive roots."""
    hw = tuple(hw)
    pos = [rs.root_dynkin[k] for k in range(rs.num_positive)]
    seen = {hw}
    stack = [hw]
    while stack:
        mu = stack.pop()
        for a in pos:
            nu = tuple(x - y for x, y in zip(mu, a))
            if nu not in seen and all(c >= 0 for c in nu):
                seen.add(nu)
                stack.append(nu)
    return sorted(seen, key=lambda mu: (-rs.height(mu), tuple(-c for c in mu)))


@lru_cache(maxsize=4096)
def _freudenthal(rs: RootSystem, hw: tuple) -> tuple:
    n = rs.rank
    scale, G = rs._int_form
    pos = [rs.root_dynkin[k] for k in range(rs.num_positive)]
    gpos = [tuple(sum(G[i][j] * a[j] for j in range(n)) for i in range(n)) for a in pos]

    def sq(x):
        return sum(x[i] * G[i][j] * x[j] for i in range(n) if x[i] for j in range(n) if x[j])

    rho = rs.rho
    top = sq(tuple(a + b for a, b in zip(hw, rho)))
    mult = {hw: 1}
    for mu in dominant_weights_below(rs, hw)[1:]:
        den = top - sq(tuple(a + b for a, b in zip(mu, rho)))
        num = 0
        for a, ga in zip(pos, gpos):
            k = 1
            while True:
                w = tuple(x + k * y for x, y in zip(mu, a))
                m = mult.get(rs.dominant_dynkin(w))
                if not m:
                    break
                num += m * sum(x * g for x, g in zip(w, ga))
                k += 1
        q, r = divmod(2 * num, den)
        if r:
            raise AssertionError(f"non-integral Freudenthal multiplicity at {mu}")
        if q:
            mult[mu] = q
    return tuple(sorted(mult.items()))


def freudenthal_character(rs: RootSystem, hw) -> dict:
    """Dominant character {mu: multiplicity} of the irreducible module V(hw)."""
    hw = tuple(int(x) for x in hw)
    if len(hw) != rs.rank or any(x < 0 for x in hw):
        raise ValueError(f"{hw} is not a dominant weight of {rs.label}")
    return dict(_freudenthal(rs, hw))


def weyl_dim(rs: RootSystem, hw) -> int:
    """Weyl dimension formula: prod over positive roots of <hw+rho, a^v>/<rho, a^v>."""
    hw = tuple(hw)
    shifted = tuple(a + 1 for a in hw)
    num = den = 1
    for k in range(rs.num_positive):
        num *= rs.pair_coroot(shifted, k)
        den *= rs.pair_coroot(rs.rho, k)
    q, r = divmod(num, den)
    assert r == 0
    return q


def character_dimension(rs: RootSystem, char: dict) -> int:
    return sum(m * rs.orbit_size(mu) for mu, m in char.items())


def expand(rs: RootSystem, char: dict):
    """Yield (weight, multiplicity) over the full weight multiset, orbit by orbit."""
    for mu in sorted(char):
        m = char[mu]
        for w in rs.orbit_dynkin(mu):
            yield w, m


def _dominant_part(rs: RootSystem, chi: dict) -> dict:
    dom = {}
    for w, c in chi.items():
        if c and rs.is_dominant(w):
            dom[tuple(w)] = c
    for w, c in chi.items():
        if not c or rs.is_dominant(w):
            continue
        if dom.get(rs.dominant_dynkin(w), 0) != c:
            raise CharacterError(f"character is not W-invariant at {tuple(w)}")
    return dom


def decompose_virtual_character(rs: RootSystem, chi: dict, *, dominant_only: bool = False) -> dict:
    """Coefficients c_lam with chi = sum c_lam char(V_lam), by highest-term subtraction.

    ``chi`` is a full W-invariant weight function unless ``dominant_only``.
    """
    rem = {tuple(w): c for w, c in chi.items() if c} if dominant_only else _dominant_part(rs, chi)
    out = {}
    last = None
    steps = 0
    while rem:
        lam = max(rem, key=lambda mu: (rs.height(mu), mu))
        h = rs.height(lam)
        if last is not None and h > last:
            raise CharacterError("maximal remaining weight rose during decomposition")
        last = h
        steps += 1
        c = rem[lam]
        out[lam] = c
        for mu, m in freudenthal_character(rs, lam).items():
            v = rem.get(mu, 0) - c * m
            if v:
                rem[mu] = v
            else:
                rem.pop(mu, None)
        if steps > 10**6:
            raise CharacterError("decomposition does not terminate")
    return dict(sorted(out.items()))


def tensor_character(rs: RootSystem, a: dict, b: dict) -> dict:
    """Dominant character of a product of two characters (given dominant-only)."""
    full_b = list(expand(rs, b))
    out: dict = {}
    for w, m in expand(rs, a):
        for v, n in full_b:
            s = tuple(x + y for x, y in zip(w, v))
            if rs.is_dominant(s):
                out[s] = out.get(s, 0) + m * n
    return out
