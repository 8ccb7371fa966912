"""Spherical pairs of minimal rank (G, G^) and their restriction data.

Each pair is determined by the images of the simple roots of G^ under the
restriction map rho: each is a simple root of G.  For the classical families
those images are derived from the maps on torus coordinates; for the
exceptional ones they are given directly.  Everything else (the weight map in
Dynkin labels, root fibers, the Phi^1 / Phi^2 split, the embedding of Weyl
groups) is computed and checked at construction time.

Tags: ``tensor:<type>`` (G diagonal in G x G), ``sl-sp:<n>`` (Sp_2n in SL_2n),
``spin:<n>`` (Spin_{2n-1} in Spin_2n), ``g2`` (G2 in Spin_7), ``f4`` (F4 in E6).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache

from .weyl import RootSystem, WeylElement, build_root_system, dot

Q = Fraction


class PairError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class SphericalPair:
    tag: str
    family: str
    param: object
    hat: RootSystem
    G: RootSystem
    simple_images: tuple  # rho(alpha^_i) = alpha_{simple_images[i]}
    reference_y0_words: tuple = ()  # explicit representatives of the open coset (0-based words)
    kernel_vectors: tuple = ()  # ambient vectors of G^ known to restrict to 0
    ambient_rho: tuple | None = None  # explicit map on torus coordinates, if any
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        self._check()

    # -- restriction --------------------------------------------------------
    @cached_property
    def rho_dynkin(self) -> tuple:
        """Integer matrix (rank G x rank G^) of rho on Dynkin labels."""
        hat, G = self.hat, self.G
        Ci = hat.inverse_cartan
        cols = []
        for j in range(hat.rank):
            # omega^_j = sum_k Ci[j][k] alpha^_k
            v = [Q(0)] * G.rank
            for k in range(hat.rank):
                if Ci[j][k]:
                    img = G.cartan[self.simple_images[k]]
                    for t in range(G.rank):
                        v[t] += Ci[j][k] * img[t]
            if any(x.denominator != 1 for x in v):
                raise PairError(f"{self.tag}: rho of a fundamental weight is not integral")
            cols.append([int(x) for x in v])
        return tuple(tuple(cols[j][i] for j in range(hat.rank)) for i in range(G.rank))

    @cached_property
    def rho_ambient(self) -> tuple:
        """Rational matrix (dim G x dim G^) on ambient coordinates.

        Defined on the span of the roots of G^ and zero on its orthogonal
        complement; agrees with the explicit torus map where one is given.
        """
        from .weyl import _coefficient_functionals

        hat, G = self.hat, self.G
        K = _coefficient_functionals(hat)
        M = [[Q(0)] * hat.dim for _ in range(G.dim)]
        for i in range(hat.rank):
            img = G.simple_roots[self.simple_images[i]]
            for r in range(G.dim):
                if img[r]:
                    for c in range(hat.dim):
                        M[r][c] += img[r] * K[i][c]
        return tuple(tuple(row) for row in M)

    def restrict(self, lam) -> tuple:
        """rho on Dynkin labels."""
        lam = tuple(lam)
        if len(lam) != self.hat.rank:
            raise PairError(f"expected {self.hat.rank} labels for {self.hat.label}")
        R = self.rho_dynkin
        return tuple(sum(R[i][j] * lam[j] for j in range(len(lam)) if lam[j]) for i in range(self.G.rank))

    def restrict_ambient(self, x) -> tuple:
        M = self.rho_ambient
        return tuple(sum((a * b for a, b in zip(row, x)), Q(0)) for row in M)

    @cached_property
    def root_map(self) -> tuple:
        """rho-bar on roots: root index of G^ -> root index of G."""
        hat, G = self.hat, self.G
        out = []
        for c in hat.root_coeffs:
            v = [0] * G.rank
            for i, x in enumerate(c):
                if x:
                    v[self.simple_images[i]] += x
            k = G.root_index.get(tuple(v))
            if k is None:
                raise PairError(f"{self.tag}: root {c} does not restrict to a root")
            out.append(k)
        return tuple(out)

    @cached_property
    def fibers(self) -> tuple:
        fib = [[] for _ in G_roots(self.G)]
        for kh, k in enumerate(self.root_map):
            fib[k].append(kh)
        return tuple(tuple(f) for f in fib)

    def fiber(self, k: int) -> tuple:
        """Roots of G^ (indices) restricting to the root of G with index k."""
        if not 0 <= k < len(self.G.roots):
            raise PairError(f"no root with index {k} in {self.G.label}")
        return self.fibers[k]

    @cached_property
    def phi1(self) -> frozenset:
        return frozenset(k for k, f in enumerate(self.fibers) if len(f) == 1)

    @cached_property
    def phi2(self) -> frozenset:
        return frozenset(k for k, f in enumerate(self.fibers) if len(f) == 2)

    @cached_property
    def hat_phi1(self) -> frozenset:
        return frozenset(kh for kh, k in enumerate(self.root_map) if k in self.phi1)

    @cached_property
    def hat_phi2(self) -> frozenset:
        return frozenset(kh for kh, k in enumerate(self.root_map) if k in self.phi2)

    # -- Weyl groups ---------------------------------------------------------
    @cached_property
    def generator_words(self) -> tuple:
        """Word in G^ simple reflections for each simple reflection of G."""
        return tuple(
            tuple(sorted(i for i, img in enumerate(self.simple_images) if img == j))
            for j in range(self.G.rank)
        )

    @cached_property
    def embedded_generators(self) -> tuple:
        return tuple(self.hat.element(w) for w in self.generator_words)

    def embed_weyl(self, w) -> WeylElement:
        """Image in W^ of an element of W, given as a word or a WeylElement with a word."""
        word = w.word if isinstance(w, WeylElement) else tuple(w)
        if word is None:
            word = w.reduced_word()
        out = []
        for i in word:
            out.extend(self.generator_words[i])
        return self.hat.element(out)

    # -- names ------------------------------------------------------------------
    def hat_simple_name(self, i: int) -> str:
        return f"ahat{i + 1}"

    def simple_name(self, i: int) -> str:
        return f"a{i + 1}"

    @property
    def dim_G(self) -> int:
        return self.G.rank + 2 * self.G.num_positive

    @property
    def dim_hat(self) -> int:
        return self.hat.rank + 2 * self.hat.num_positive

    # -- validation ---------------------------------------------------------------
    def _check(self):
        hat, G = self.hat, self.G
        if len(self.simple_images) != hat.rank or set(self.simple_images) != set(range(G.rank)):
            raise PairError(f"{self.tag}: simple roots must map onto the simple roots of G")
        # rho preserves the pairing up to the fiber structure: the Dynkin matrix
        # is integral (checked on access) and root images are roots
        self.rho_dynkin
        sizes = {len(f) for f in self.fibers}
        if not sizes <= {1, 2} or 0 in sizes:
            raise PairError(f"{self.tag}: fiber sizes {sorted(sizes)}")
        for v in self.kernel_vectors:
            if any(self.restrict_ambient(v)):
                raise PairError(f"{self.tag}: kernel vector {v} does not restrict to 0")
        if self.ambient_rho is not None:
            for a in hat.roots:
                explicit = tuple(sum((x * y for x, y in zip(row, a)), Q(0)) for row in self.ambient_rho)
                if explicit != self.restrict_ambient(a):
                    raise PairError(f"{self.tag}: torus map disagrees with the simple-root images")


def G_roots(G: RootSystem):
    return range(len(G.roots))


def long_roots(G: RootSystem) -> frozenset:
    """Roots of maximal length within their simple component (all, if simply laced)."""
    out = set()
    for k in range(len(G.roots)):
        comp = G.component_of_root(k)
        norms = [
            dot(G.roots[j], G.roots[j])
            for j in range(len(G.roots))
            if G.component_of_root(j) is comp
        ]
        if dot(G.roots[k], G.roots[k]) == max(norms):
            out.add(k)
    return frozenset(out)


# -- family constructors -------------------------------------------------------------


def _images_from_ambient(hat: RootSystem, G: RootSystem, M) -> tuple:
    """Simple-root images from an explicit map on ambient coordinates."""
    lookup = {a: i for i, a in enumerate(G.simple_roots)}
    out = []
    for a in hat.simple_roots:
        img = tuple(sum((x * y for x, y in zip(row, a)), Q(0)) for row in M)
        if img not in lookup:
            raise PairError(f"simple root {a} maps to {img}, not a simple root")
        out.append(lookup[img])
    return tuple(out)


def element_from_ambient(rs: RootSystem, f) -> WeylElement:
    """Weyl element acting on ambient vectors by the linear map f (checked on roots)."""
    index = {a: k for k, a in enumerate(rs.roots)}
    perm = []
    for a in rs.roots:
        k = index.get(tuple(f(a)))
        if k is None:
            raise PairError("map does not permute the roots")
        perm.append(k)
    w = WeylElement(rs, tuple(perm))
    return rs.element(w.reduced_word())


def _tensor(typ: str) -> SphericalPair:
    G = build_root_system(typ)
    if not G.is_simple():
        raise PairError("tensor family needs a simple type")
    hat = build_root_system(f"{typ}x{typ}")
    n, d = G.rank, G.dim
    M = [[Q(int(c % d == r)) for c in range(2 * d)] for r in range(d)]
    images = tuple(list(range(n)) + list(range(n)))
    w0 = G.longest_element.reduced_word()
    return SphericalPair(
        tag=f"tensor:{typ}",
        family="tensor",
        param=typ,
        hat=hat,
        G=G,
        simple_images=images,
        reference_y0_words=(tuple(i + n for i in w0),),
        ambient_rho=tuple(tuple(r) for r in M),
    )


def _sl_sp(n: int) -> SphericalPair:
    if n < 2:
        raise PairError("sl-sp needs n >= 2")
    hat = build_root_system("A", 2 * n - 1)
    G = build_root_system("C", n)
    # eps^_i -> eps_i (i <= n), eps^_{2n+1-i} -> -eps_i
    M = [[Q(0)] * (2 * n) for _ in range(n)]
    for i in range(n):
        M[i][i] = Q(1)
        M[i][2 * n - 1 - i] = Q(-1)
    M = tuple(tuple(r) for r in M)
    images = _images_from_ambient(hat, G, M)
    # one-line notation [1 1bar 2 2bar ...], kbar = 2n+1-k (1-based)
    line = []
    for k in range(1, n + 1):
        line += [k, 2 * n + 1 - k]
    sigma = [x - 1 for x in line]

    def f(v):
        out = [Q(0)] * (2 * n)
        for i, x in enumerate(v):
            out[sigma[i]] = x
        return out

    y0 = element_from_ambient(hat, f)
    return SphericalPair(
        tag=f"sl-sp:{n}",
        family="sl-sp",
        param=n,
        hat=hat,
        G=G,
        simple_images=images,
        reference_y0_words=(y0.word,),
        ambient_rho=M,
        notes={"reference_y0_one_line": line},
    )


def _spin(n: int) -> SphericalPair:
    if n < 4:
        raise PairError("spin needs n >= 4")
    hat = build_root_system("D", n)
    G = build_root_system("B", n - 1)
    M = tuple(tuple(Q(int(r == c)) for c in range(n)) for r in range(n - 1))
    images = _images_from_ambient(hat, G, M)
    return SphericalPair(
        tag=f"spin:{n}",
        family="spin",
        param=n,
        hat=hat,
        G=G,
        simple_images=images,
        reference_y0_words=(tuple(range(n - 2, -1, -1)),),
        ambient_rho=M,
    )


def _g2() -> SphericalPair:
    return SphericalPair(
        tag="g2",
        family="g2",
        param=None,
        hat=build_root_system("B3"),
        G=build_root_system("G2"),
        simple_images=(0, 1, 0),
        reference_y0_words=((0, 1, 2), (2, 1, 2)),
    )


def _f4() -> SphericalPair:
    h = Q(1, 2)
    # kernel: alpha^3 - alpha^5 and alpha^1 - alpha^6 written in eps^ coordinates
    v1 = (Q(-1), Q(1), Q(1), Q(-1), Q(0), Q(0), Q(0), Q(0))
    v2 = (h, -h, -h, h, -3 * h, -h, -h, h)
    return SphericalPair(
        tag="f4",
        family="f4",
        param=None,
        hat=build_root_system("E6"),
        G=build_root_system("F4"),
        simple_images=(3, 0, 2, 1, 2, 3),
        reference_y0_words=((0, 4, 2, 3, 1, 2, 3, 4, 3, 2, 0, 5),),
        kernel_vectors=(v1, v2),
    )


FAMILIES = ("tensor", "sl-sp", "spin", "g2", "f4")


@lru_cache(maxsize=None)
def make_pair(tag: str) -> SphericalPair:
    """Pair from a registry tag such as ``tensor:A2``, ``sl-sp:3``, ``spin:4``, ``g2``, ``f4``."""
    tag = tag.strip()
    m = re.fullmatch(r"(tensor|sl-sp|spin|g2|f4)(?::(\w+))?", tag)
    if not m:
        raise PairError(f"unknown pair tag {tag!r}")
    fam, arg = m.groups()
    if fam in ("g2", "f4"):
        if arg is not None:
            raise PairError(f"{fam} takes no parameter")
        return _g2() if fam == "g2" else _f4()
    if arg is None:
        raise PairError(f"{fam} needs a parameter, e.g. {fam}:{'A2' if fam == 'tensor' else 3}")
    if fam == "tensor":
        try:
            return _tensor(arg)
        except ValueError as e:
            raise PairError(str(e)) from None
    if not arg.isdigit():
        raise PairError(f"{fam} parameter must be an integer")
    return (_sl_sp if fam == "sl-sp" else _spin)(int(arg))


def restrict(p: SphericalPair, lam) -> tuple:
    return p.restrict(lam)


def fiber(p: SphericalPair, k: int) -> tuple:
    return p.fiber(k)


def embed_weyl(p: SphericalPair, w) -> WeylElement:
    return p.embed_weyl(w)
