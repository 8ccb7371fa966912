"""Multiplicity spaces as kernels of powers of root operators.

For a pair (G, G^), dominant nu (for G) and nuhat (for G^), the multiplicity
space Hom(V_nu, V_nuhat^*)^G is the subspace of V_nu^*(mu), mu = rho(y0 nuhat),
of vectors phi with

    X_alpha phi = 0                          for alpha positive in Phi^1,
    X_gamma^m phi = 0,  gamma = -rho(y0 a),  m = <nuhat, a^vee> + 1,  for a in D_0.

Sign convention.  V^*(mu) is the dual of V(-mu).  The contragredient action
is (X phi)(v) = -phi(X v), so X_gamma^m phi = 0 exactly when phi vanishes on
the image X_gamma^m V(-mu - m gamma) inside V(-mu).  The subspace is therefore
the annihilator of the span of those images: a nullspace computation on the
image vectors, all inside single weight spaces of V_nu.

Frames.  A lift of w in W to G carries V^*(mu) onto V^*(w mu) and each X_beta
to a nonzero multiple of X_{w beta}, so the same dimension is cut out of
V^*(w mu) by the transported conditions.  For large V_nu the computation is
done in the frame where -w mu is dominant: only weights near the top of V_nu
are then needed.  The witness records the frame it was computed in.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache

from . import linalg
from .chars import weyl_dim
from .irrep import DEFAULT_MAX_DIM, IrrepModel, build_irrep, dual_weight_space
from .orbits import DivisorSet, divisor_set, find_y0
from .pairs import SphericalPair
from .weyl import RootSystem, WeylElement

# representations up to this dimension are built whole and shared between queries
FULL_BUILD_LIMIT = 3000


@dataclass
class MultiplicityWitness:
    pair: str
    nu: tuple
    nuhat: tuple
    mu: tuple
    ambient_dim: int
    conditions: list  # (root index in G, exponent)
    basis: list
    dimension: int
    y0_word: tuple
    divisors: tuple  # simple root indices of G^ used for condition (2)
    frame: tuple = ()  # word of w; basis and conditions live in V^*(w mu)
    frame_mu: tuple = ()
    frame_conditions: list = field(default_factory=list)
    model: IrrepModel | None = field(default=None, repr=False)

    def check(self) -> bool:
        """Re-apply every condition to every basis vector through the dual action."""
        if self.model is None or not self.basis:
            return True
        space = dual_weight_space(self.model, self.frame_mu or self.mu)
        for phi in self.basis:
            for k, m in self.frame_conditions or self.conditions:
                out = space.apply_power(k, m, phi)
                if any(out):
                    return False
        return True

    def to_json(self, rs: RootSystem, emit_basis: bool = False) -> dict:
        out = {
            "mu": list(self.mu),
            "ambient_dim": self.ambient_dim,
            "conditions": [
                {"root": list(rs.root_coeffs[k]), "exponent": m} for k, m in self.conditions
            ],
            "y0_word": [i + 1 for i in self.y0_word],
            "divisors": [i + 1 for i in self.divisors],
            "multiplicity": self.dimension,
        }
        if emit_basis:
            out["frame"] = [i + 1 for i in self.frame]
            out["frame_mu"] = list(self.frame_mu or self.mu)
            out["basis"] = [[_fmt(x) for x in v] for v in self.basis]
        return out


def _fmt(x) -> str:
    f = linalg.to_fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _check_dominant(rs: RootSystem, lam, what: str) -> tuple:
    lam = tuple(lam)
    if len(lam) != rs.rank:
        raise ValueError(f"{what} needs {rs.rank} Dynkin labels for {rs.label}, got {len(lam)}")
    if any((not isinstance(x, int)) or x < 0 for x in lam):
        raise ValueError(f"{what}={lam} is not dominant integral")
    return lam


@lru_cache(maxsize=64)
def _full_model(rs: RootSystem, nu: tuple, max_dim: int, cache_dir) -> IrrepModel:
    return build_irrep(rs, nu, max_dim=max_dim, cache_dir=cache_dir)


def model_for(rs: RootSystem, nu, floors, *, max_dim=DEFAULT_MAX_DIM, cache_dir=None) -> IrrepModel:
    """A model of V_nu covering every weight above one of ``floors``."""
    nu = tuple(nu)
    if weyl_dim(rs, nu) <= FULL_BUILD_LIMIT:
        return _full_model(rs, nu, max_dim, None if cache_dir is None else os.fspath(cache_dir))
    return build_irrep(rs, nu, floors=floors, max_dim=max_dim)


def _neg(rs: RootSystem, k: int) -> int:
    N = rs.num_positive
    return k + N if k < N else k - N


def _shift(lam, delta, c=1):
    return tuple(a + c * b for a, b in zip(lam, delta))


def conditions_for(p: SphericalPair, nuhat, y0: WeylElement, D, condition1: bool = True) -> list:
    """(root of G, exponent) pairs of conditions (1) and (2)."""
    G = p.G
    conds = [(k, 1) for k in sorted(p.phi1) if k < G.num_positive] if condition1 else []
    for a in D:
        k = y0.perm[a]
        gamma = _neg(G, p.root_map[k])
        conds.append((gamma, nuhat[a] + 1))
    return conds


def kernel_space(rs: RootSystem, nu, mu, conditions, *, max_dim=DEFAULT_MAX_DIM, cache_dir=None):
    """Annihilator in V_nu^*(mu) of the images X_k^m V_nu(-mu - m beta_k).

    Returns (model, ambient dimension, basis).
    """
    top = tuple(-x for x in mu)
    floors = [top]
    for k, m in conditions:
        beta = rs.root_dynkin[k]
        floors.extend(_shift(top, beta, -j) for j in range(1, m + 1))
    model = model_for(rs, nu, floors, max_dim=max_dim, cache_dir=cache_dir)
    d = model.multiplicity(top)
    if not d:
        return model, 0, []
    rows = []
    for k, m in conditions:
        src = _shift(top, rs.root_dynkin[k], -m)
        if not model.multiplicity(src):
            continue
        P = model.power(k, src, m)
        if P is None:
            continue
        for col in zip(*P):
            if any(col):
                rows.append(list(col))
    if not rows:
        return model, d, linalg.identity(d)
    return model, d, linalg.nullspace(rows, d)


def theorem1_multiplicity(
    p: SphericalPair,
    nu,
    nuhat,
    *,
    y0: WeylElement | None = None,
    D=None,
    full_D: bool = False,
    condition1: bool = True,
    frame: str = "auto",
    max_dim: int = DEFAULT_MAX_DIM,
    cache_dir=None,
) -> MultiplicityWitness:
    """Dimension and basis of the multiplicity space for (nu, nuhat).

    ``y0`` overrides the chosen minimal representative of the open coset and
    ``D`` the set of simple roots of G^ used for condition (2); by default
    that is D_0 (all of D with ``full_D``).  ``frame`` is "direct" (work in
    V^*(mu) itself), "dominant" (see the module docstring) or "auto", which
    picks "direct" whenever V_nu is small enough to be built whole.
    """
    if frame not in ("auto", "direct", "dominant"):
        raise ValueError(f"unknown frame {frame!r}")
    G, hat = p.G, p.hat
    nu = _check_dominant(G, nu, "nu")
    nuhat = _check_dominant(hat, nuhat, "nuhat")
    if y0 is None:
        y0 = find_y0(p)
    if D is None:
        ds = divisor_set(p, y0)
        D = ds.labels("D" if full_D else "D0")
    D = tuple(D)
    conds = conditions_for(p, nuhat, y0, D, condition1)
    mu = p.restrict(y0.act_dynkin(nuhat))
    if frame == "auto":
        frame = "direct" if weyl_dim(G, nu) <= FULL_BUILD_LIMIT else "dominant"
    word, fmu, fconds = (), mu, conds
    if frame == "dominant":
        _, word = G._descend(tuple(-x for x in mu))
        w = G.element(word)
        fmu = w.act_dynkin(mu)
        fconds = [(w.perm[k], m) for k, m in conds]
    model, d, basis = kernel_space(G, nu, fmu, fconds, max_dim=max_dim, cache_dir=cache_dir)
    return MultiplicityWitness(
        pair=p.tag,
        nu=nu,
        nuhat=nuhat,
        mu=mu,
        ambient_dim=d,
        conditions=conds,
        basis=basis,
        dimension=len(basis),
        y0_word=tuple(y0.word if y0.word is not None else y0.reduced_word()),
        divisors=D,
        frame=tuple(word),
        frame_mu=fmu if word else (),
        frame_conditions=fconds if word else [],
        model=model,
    )


def verify_full_D_redundancy(p: SphericalPair, nu, nuhat, **kw) -> bool:
    """Whether conditions over all of D cut out the same dimension as over D_0."""
    a = theorem1_multiplicity(p, nu, nuhat, **kw).dimension
    b = theorem1_multiplicity(p, nu, nuhat, full_D=True, **kw).dimension
    return a == b


def prv_spaces(G: RootSystem, nu, nu1, nu2, *, max_dim: int = DEFAULT_MAX_DIM) -> tuple:
    """(dim V^-(nu, nu1 - nu2*, nu1), dim V^+(nu, nu2 - nu1*, nu1*)).

    V^+(nu, lam, mu) = {v in V_nu(lam) : X_a^m v = 0 for m > <mu, a^vee>, a simple},
    V^- the same with X_-a.  For the tensor pair both dimensions equal the
    multiplicity for (nu^*, (nu1, nu2)), equivalently for (nu, (nu1, nu2)^*).
    """
    nu = _check_dominant(G, nu, "nu")
    nu1 = _check_dominant(G, nu1, "nu1")
    nu2 = _check_dominant(G, nu2, "nu2")
    d1, d2 = G.dual_weight(nu1), G.dual_weight(nu2)
    minus = _prv(G, nu, _shift(nu1, d2, -1), nu1, lowering=True, max_dim=max_dim)
    plus = _prv(G, nu, _shift(nu2, d1, -1), d1, lowering=False, max_dim=max_dim)
    return minus, plus


def _prv(G: RootSystem, nu, lam, bound, *, lowering: bool, max_dim: int) -> int:
    N = G.num_positive
    ops = [(i + N if lowering else i, bound[i] + 1) for i in range(G.rank)]
    floors = [lam]
    for k, m in ops:
        floors.append(_shift(lam, G.root_dynkin[k], m))
    model = model_for(G, nu, floors, max_dim=max_dim)
    d = model.multiplicity(lam)
    if not d:
        return 0
    rows = []
    for k, m in ops:
        P = model.power(k, lam, m)
        if P is not None:
            rows.extend(list(r) for r in P if any(r))
    return d - linalg.rank(rows, d) if rows else d


def sum_rule_terms(p: SphericalPair, nuhat, **kw) -> dict:
    """{nu: kernel multiplicity} over every nu that can occur for nuhat."""
    from .oracle import candidate_weights

    out = {}
    for nu in candidate_weights(p, nuhat):
        m = theorem1_multiplicity(p, nu, nuhat, **kw).dimension
        if m:
            out[nu] = m
    return out
