"""Branching by characters, independent of the explicit module models.

The character of V_nuhat is expanded orbit by orbit, pushed through rho and
decomposed into irreducible G-characters.  Only the dominant part of the
restricted character is kept: restriction commutes with the embedded Weyl
group, so it determines the rest.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .chars import decompose_virtual_character, freudenthal_character, weyl_dim
from .pairs import SphericalPair
from .weyl import RootSystem


class SumRuleViolation(AssertionError):
    pass


@dataclass(frozen=True)
class BranchingResult:
    pair: str
    nuhat: tuple
    mults: dict
    provenance: str = "freudenthal+restriction"

    def get(self, nu, default=0) -> int:
        return self.mults.get(tuple(nu), default)

    def __getitem__(self, nu) -> int:
        return self.mults.get(tuple(nu), 0)


def restricted_dominant_character(p: SphericalPair, lamhat) -> dict:
    """Dominant part of the restriction to G of the character of V(lamhat)."""
    hat, G = p.hat, p.G
    out: dict = {}
    for mu, m in sorted(freudenthal_character(hat, lamhat).items()):
        for w in hat.orbit_dynkin(mu):
            x = p.restrict(w)
            if all(c >= 0 for c in x):
                out[x] = out.get(x, 0) + m
    return out


@lru_cache(maxsize=1024)
def _branch(p: SphericalPair, lamhat: tuple) -> tuple:
    chi = restricted_dominant_character(p, lamhat)
    dec = decompose_virtual_character(p.G, chi, dominant_only=True)
    if any(c < 0 for c in dec.values()):
        raise SumRuleViolation(f"negative multiplicity in the restriction of {lamhat}")
    total = sum(c * weyl_dim(p.G, nu) for nu, c in dec.items())
    if total != weyl_dim(p.hat, lamhat):
        raise SumRuleViolation(f"restriction of {lamhat} has dimension {total}")
    return tuple(sorted(dec.items()))


def branch_decompose(p: SphericalPair, lamhat) -> BranchingResult:
    """Multiplicities of the irreducible G-modules in V(lamhat) restricted to G."""
    lamhat = tuple(int(x) for x in lamhat)
    if len(lamhat) != p.hat.rank or any(x < 0 for x in lamhat):
        raise ValueError(f"{lamhat} is not a dominant weight of {p.hat.label}")
    return BranchingResult(p.tag, lamhat, dict(_branch(p, lamhat)))


def oracle_multiplicity(p: SphericalPair, nu, nuhat) -> int:
    """dim Hom(V_nu, V_nuhat^*)^G, read off the branching of V(-w0 nuhat)."""
    dual = p.hat.dual_weight(tuple(nuhat))
    return branch_decompose(p, dual).get(tuple(nu))


def candidate_weights(p: SphericalPair, nuhat) -> list:
    """Every nu that can have a nonzero multiplicity for nuhat.

    These are the dominant weights of V(nuhat^*) restricted to G, a superset
    of the branching support that does not depend on the decomposition.
    """
    return sorted(restricted_dominant_character(p, p.hat.dual_weight(tuple(nuhat))))


# -- second layer: tensor products by the Racah-Speiser / Klimyk rule ------------


def klimyk_tensor_multiplicity(G: RootSystem, lam, mu, nu) -> int:
    """Multiplicity of V_nu in V_lam (x) V_mu.

    Sum over weights w of V_lam (with multiplicity) of the sign of the Weyl
    element taking w + mu + rho to the dominant chamber, when it lands on
    nu + rho.  Shares no code with the restriction path beyond the Freudenthal
    table of V_lam.
    """
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    target = tuple(a + 1 for a in nu)
    total = 0
    for dom, m in freudenthal_character(G, lam).items():
        for w in G.orbit_dynkin(dom):
            x = tuple(a + b + 1 for a, b in zip(w, mu))
            sign = 1
            while True:
                i = next((i for i, c in enumerate(x) if c < 0), None)
                if i is None:
                    break
                x = G.reflect(x, i)
                sign = -sign
            if 0 in x:
                continue
            if x == target:
                total += sign * m
    return total


def tensor_oracle(p: SphericalPair, nu, nuhat) -> int:
    """Second-layer value of dim Hom(V_nu, V_nuhat^*)^G for the tensor family."""
    if p.family != "tensor":
        raise ValueError("tensor_oracle needs a tensor pair")
    G = p.G
    n = G.rank
    a, b = tuple(nuhat[:n]), tuple(nuhat[n:])
    # Hom(V_nu, (V_a (x) V_b)^*) = multiplicity of V_nu in V_a* (x) V_b*
    return klimyk_tensor_multiplicity(G, G.dual_weight(a), G.dual_weight(b), tuple(nu))
