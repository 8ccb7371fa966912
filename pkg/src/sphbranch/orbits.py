"""G-orbits on the flag variety of G^, via the cosets W \\ W^.

Weyl elements of G^ are handled here as byte strings: entry k is the index
of w(beta_k).  Left multiplication by g is then ``w.translate(g)``, which is
all the enumeration needs (the group is generated from the identity by left
multiplication by simple reflections, and a coset W w is the closure of w
under left multiplication by the embedded generators of W).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .pairs import SphericalPair
from .weyl import WeylElement

DEFAULT_CAP = 10**6


class EnumerationCapExceeded(RuntimeError):
    pass


class OrbitError(RuntimeError):
    pass


@dataclass(frozen=True)
class OrbitCoset:
    index: int
    key: bytes  # smallest permutation (as bytes) in the coset
    rep: WeylElement  # minimal length, lexicographically smallest reduced word
    ell_m: int
    stabilizer_dim: int
    orbit_dim: int
    size: int


def _table(perm) -> bytes:
    t = bytearray(range(256))
    for k, v in enumerate(perm):
        t[k] = v
    return bytes(t)


def stabilizer_dim(p: SphericalPair, w: WeylElement) -> int:
    """rank G + #{alpha : w^-1 maps every root over alpha into the positive roots of G^}."""
    inv = w.inverse().perm
    N = p.hat.num_positive
    count = 0
    for fib in p.fibers:
        if all(inv[g] < N for g in fib):
            count += 1
    return p.G.rank + count


class CosetData:
    """All cosets W w of W^ with a lookup from elements to cosets."""

    def __init__(self, p: SphericalPair, cap: int = DEFAULT_CAP):
        hat = p.hat
        order = hat.weyl_order
        if order > cap:
            raise EnumerationCapExceeded(
                f"|W| of {hat.label} is {order}, above the enumeration cap {cap}"
            )
        if len(hat.roots) > 256:  # pragma: no cover - E8 x E8 and the like
            raise EnumerationCapExceeded("too many roots for the byte encoding")
        self.pair = p
        N = hat.num_positive
        simple = [_table(s) for s in hat.simple_perms]
        gens = [_table(g.perm) for g in p.embedded_generators]
        neg = bytearray(256)
        for k in range(N, len(hat.roots)):
            neg[k] = 1
        self._neg = bytes(neg)
        # W^ by breadth-first left multiplication; layer = length
        ident = bytes(range(len(hat.roots)))
        seen = {ident}
        layer = [ident]
        elems = [ident]
        while layer:
            nxt = []
            for w in layer:
                for s in simple:
                    v = w.translate(s)
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            elems.extend(nxt)
            layer = nxt
        if len(elems) != order:  # pragma: no cover
            raise OrbitError("Weyl group enumeration is inconsistent with its order")
        del seen
        self.N = N
        self.coset_of: dict = {}
        groups = []
        for w in elems:
            if w in self.coset_of:
                continue
            cid = len(groups)
            self.coset_of[w] = cid
            members = [w]
            stack = [w]
            while stack:
                u = stack.pop()
                for g in gens:
                    v = u.translate(g)
                    if v not in self.coset_of:
                        self.coset_of[v] = cid
                        members.append(v)
                        stack.append(v)
            groups.append(members)
        wsize = p.G.weyl_order
        cosets = []
        for members in groups:
            if len(members) != wsize:  # pragma: no cover
                raise OrbitError("coset size differs from |W|")
            lens = [self._length(w) for w in members]
            lm = min(lens)
            cands = [hat.element(WeylElement(hat, tuple(w)).reduced_word()) for w, l in zip(members, lens) if l == lm]
            rep = min(cands, key=lambda e: e.word)
            stab = stabilizer_dim(p, rep)
            cosets.append((lm, rep.word, min(members), rep, stab, len(members)))
        cosets.sort(key=lambda c: (c[0], c[1]))
        remap = {}
        self.cosets = []
        for new, (lm, _, key, rep, stab, size) in enumerate(cosets):
            remap[self.coset_of[key]] = new
            self.cosets.append(OrbitCoset(new, key, rep, lm, stab, p.dim_G - stab, size))
        for w in self.coset_of:
            self.coset_of[w] = remap[self.coset_of[w]]
        dimGB = p.G.num_positive
        for c in self.cosets:
            if c.orbit_dim != dimGB + c.ell_m:
                raise OrbitError(
                    f"{p.tag}: orbit dimension {c.orbit_dim} of coset {c.index} "
                    f"is not dim G/B + l_m = {dimGB + c.ell_m}"
                )

    def _length(self, w: bytes) -> int:
        return w[: self.N].translate(self._neg).count(1)

    def coset(self, w: WeylElement) -> OrbitCoset:
        return self.cosets[self.coset_of[bytes(w.perm)]]


@lru_cache(maxsize=32)
def coset_data(p: SphericalPair, cap: int = DEFAULT_CAP) -> CosetData:
    return CosetData(p, cap)


def enumerate_cosets(p: SphericalPair, cap: int = DEFAULT_CAP) -> list:
    return list(coset_data(p, cap).cosets)


def open_coset(p: SphericalPair, cap: int = DEFAULT_CAP) -> OrbitCoset:
    target = p.dim_G - p.hat.num_positive
    found = [c for c in coset_data(p, cap).cosets if c.stabilizer_dim == target]
    if len(found) != 1:
        raise OrbitError(f"{p.tag}: expected one open coset, found {len(found)}")
    return found[0]


def find_y0(p: SphericalPair, cap: int = DEFAULT_CAP) -> WeylElement:
    """Minimal-length element of the open coset with the smallest reduced word."""
    c = open_coset(p, cap)
    if c.rep.length() != p.hat.num_positive - p.G.num_positive:
        raise OrbitError(f"{p.tag}: length of y0 is {c.rep.length()}")
    return c.rep


def minimal_open_representatives(p: SphericalPair, cap: int = DEFAULT_CAP) -> list:
    """All minimal-length elements of the open coset, sorted by reduced word."""
    data = coset_data(p, cap)
    c = open_coset(p, cap)
    hat = p.hat
    out = [
        hat.element(WeylElement(hat, tuple(w)).reduced_word())
        for w, cid in data.coset_of.items()
        if cid == c.index and data._length(w) == c.ell_m
    ]
    return sorted(out, key=lambda e: e.word)


@dataclass(frozen=True)
class DivisorEntry:
    alpha: int  # simple root index of G^
    y0_alpha: int  # root index of y0 alpha^ in G^
    positive: bool  # y0 alpha^ is a positive root
    image: int  # root index (in G) of -rho(y0 alpha^)
    beta_plus: int  # fiber root over `image` sent to a positive root by y0^-1
    beta_minus: int
    coset: int  # coset index of y0 s_alpha


@dataclass(frozen=True)
class DivisorSet:
    y0: WeylElement
    D: tuple  # DivisorEntry, ordered by alpha
    D0: tuple

    def labels(self, which: str = "D0") -> tuple:
        return tuple(e.alpha for e in getattr(self, which))


def divisor_set(p: SphericalPair, y0: WeylElement, cap: int = DEFAULT_CAP) -> DivisorSet:
    hat, G = p.hat, p.G
    N = hat.num_positive
    NG = G.num_positive
    data = coset_data(p, cap)
    inv = y0.inverse().perm
    entries = []
    for i in range(hat.rank):
        k = y0.perm[i]
        beta = p.root_map[k]
        if beta in p.phi1:
            continue
        image = beta + NG if beta < NG else beta - NG
        fib = p.fiber(image)
        plus = [g for g in fib if inv[g] < N]
        minus = [g for g in fib if inv[g] >= N]
        if len(plus) != 1 or len(minus) != 1:
            raise OrbitError(f"{p.tag}: fiber over root {image} has no +/- split under y0")
        w = y0 * hat.simple_reflection(i)
        entries.append(
            DivisorEntry(i, k, k < N, image, plus[0], minus[0], data.coset(w).index)
        )
    seen = set()
    d0 = []
    for e in entries:
        if e.coset not in seen:
            seen.add(e.coset)
            d0.append(e)
    return DivisorSet(y0, tuple(entries), tuple(d0))


@dataclass(frozen=True)
class OrbitGraph:
    pair: SphericalPair
    cosets: tuple
    edges: tuple  # (source index, target index, simple root index of G^)

    def labels(self, src: int, dst: int) -> list:
        return [a for s, d, a in self.edges if s == src and d == dst]

    def to_dot(self) -> str:
        p = self.pair
        lines = [f'digraph "{p.tag}" {{', "  rankdir=BT;"]
        for c in self.cosets:
            lines.append(f'  c{c.index} [label="ℓ_m={c.ell_m}, dim={c.orbit_dim}"];')
        for s, d, a in self.edges:
            lines.append(f'  c{s} -> c{d} [label="{p.hat_simple_name(a)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def orbit_graph(p: SphericalPair, cap: int = DEFAULT_CAP) -> OrbitGraph:
    data = coset_data(p, cap)
    hat = p.hat
    edges = []
    for c in data.cosets:
        for i in range(hat.rank):
            d = data.coset(c.rep * hat.simple_reflection(i))
            if d.index != c.index and d.ell_m == c.ell_m + 1:
                edges.append((c.index, d.index, i))
    edges.sort()
    return OrbitGraph(p, tuple(data.cosets), tuple(edges))
