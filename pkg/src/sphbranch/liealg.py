"""Chevalley basis structure constants.

Positive roots are ordered by height (see :class:`RootSystem`).  For each
non-simple positive root xi the extraspecial pair is (alpha_i, xi - alpha_i)
with i the smallest simple index for which xi - alpha_i is a root; its
structure constant is fixed to +(p+1).  That fixes

    e_xi  =  [e_i, e_{xi-alpha_i}] / (p+1)
    e_-xi = -[e_-i, e_-(xi-alpha_i)] / (p+1)

and every other constant follows.  The table is read off a faithful module
(the adjoint one for a simple algebra) built from the simple generators only,
so the Jacobi identity holds by construction; the tests re-check it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import to_fraction
from .weyl import RootSystem


@dataclass(frozen=True)
class Recipe:
    """How X_gamma is obtained from lower-height root vectors."""

    simple: int  # index i of the simple root in the extraspecial pair
    rest: int  # root index of gamma - alpha_i (same sign as gamma)
    norm: int  # p + 1
    sign: int  # +1 for positive gamma, -1 for negative gamma


@lru_cache(maxsize=None)
def recipes(rs: RootSystem) -> dict:
    """Recipe for every non-simple root index (positive and negative)."""
    out = {}
    N = rs.num_positive
    for k in range(rs.rank, N):
        c = rs.root_coeffs[k]
        for i in range(rs.rank):
            if c[i] == 0:
                continue
            rest = list(c)
            rest[i] -= 1
            rest = tuple(rest)
            if rest in rs.root_index:
                p = 0
                while True:
                    nxt = list(rest)
                    nxt[i] -= p + 1
                    if tuple(nxt) in rs.root_index:
                        p += 1
                    else:
                        break
                b = rs.root_index[rest]
                out[k] = Recipe(i, b, p + 1, 1)
                out[k + N] = Recipe(i + N, b + N, p + 1, -1)
                break
        else:  # pragma: no cover
            raise AssertionError("positive root without extraspecial pair")
    return out


@dataclass(frozen=True)
class StructureConstants:
    """Chevalley basis {e_beta (beta a root), h_i} of a semisimple Lie algebra.

    ``N[(a, b)]`` is the integer with [e_a, e_b] = N e_{a+b} (root indices).
    ``coroots[a]`` gives h_a = [e_a, e_-a] in the basis of simple coroots h_i.
    """

    rs: RootSystem
    N: dict
    coroots: tuple

    def basis(self) -> list:
        """Basis labels: ('e', k) for roots, ('h', i) for the Cartan part."""
        return [("e", k) for k in range(len(self.rs.roots))] + [("h", i) for i in range(self.rs.rank)]

    def neg(self, k: int) -> int:
        N = self.rs.num_positive
        return k + N if k < N else k - N

    def bracket(self, x, y) -> dict:
        """Bracket of two basis elements as {label: coefficient}."""
        rs = self.rs
        tx, a = x
        ty, b = y
        if tx == "h" and ty == "h":
            return {}
        if tx == "h":
            return {y: Fraction(rs.root_dynkin[b][a])} if rs.root_dynkin[b][a] else {}
        if ty == "h":
            return {k: -v for k, v in self.bracket(y, x).items()}
        if b == self.neg(a):
            return {("h", i): Fraction(c) for i, c in enumerate(self.coroots[a]) if c}
        n = self.N.get((a, b))
        if not n:
            return {}
        s = tuple(p + q for p, q in zip(rs.root_coeffs[a], rs.root_coeffs[b]))
        return {("e", rs.root_index[s]): Fraction(n)}

    def bracket_vectors(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for x, cx in u.items():
            for y, cy in v.items():
                for z, cz in self.bracket(x, y).items():
                    out[z] = out.get(z, 0) + cx * cy * cz
        return {k: c for k, c in out.items() if c}


@lru_cache(maxsize=None)
def chevalley_constants(rs: RootSystem) -> StructureConstants:
    """Structure constants read off a faithful representation.

    The representation is irreducible with highest weight the sum of the
    highest roots of the simple components (the adjoint module for simple
    ``rs``); root operators come from :func:`recipes`.
    """
    from . import irrep

    model = irrep.build_irrep(rs, faithful_weight(rs))
    R = len(rs.roots)
    Nn = {}
    for a in range(R):
        for b in range(R):
            s = tuple(p + q for p, q in zip(rs.root_coeffs[a], rs.root_coeffs[b]))
            k = rs.root_index.get(s)
            if k is None:
                continue
            ratio = None
            for lam in model.weights:
                target = model.op(k, lam)
                if target is None or not any(x for row in target for x in row):
                    continue
                ratio = _proportional(model.commutator(a, b, lam), target)
                break
            if ratio is None or ratio.denominator != 1:
                raise AssertionError(f"non-integral structure constant for roots {a}, {b}")
            Nn[(a, b)] = int(ratio)
    coroots = []
    N = rs.num_positive
    for k in range(R):
        c = rs.coroot_coeffs[k if k < N else k - N]
        coroots.append(c if k < N else tuple(-x for x in c))
    return StructureConstants(rs, Nn, tuple(coroots))


def faithful_weight(rs: RootSystem) -> tuple:
    hw = [0] * rs.rank
    for comp in rs.components:
        lo, hi = comp.simple_offset, comp.simple_offset + comp.rank
        top = max(
            (k for k in range(rs.num_positive) if any(rs.root_coeffs[k][lo:hi])),
            key=lambda k: sum(rs.root_coeffs[k]),
        )
        hw = [x + y for x, y in zip(hw, rs.root_dynkin[top])]
    return tuple(hw)


def _proportional(u, v):
    """Scalar r with u == r v, or None."""
    ratio = None
    for i, row in enumerate(v):
        for j, b in enumerate(row):
            a = u[i][j]
            if b:
                r = to_fraction(a) / to_fraction(b)
                if ratio is None:
                    ratio = r
                elif r != ratio:
                    return None
            elif a:
                return None
    return ratio if ratio is not None else Fraction(0)


def bracket(sc: StructureConstants, x, y) -> dict:
    return sc.bracket(x, y)
