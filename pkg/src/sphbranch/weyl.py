"""Root systems, weight lattices and Weyl groups built from Cartan data.

Ambient coordinates follow Bourbaki: type A_n lives in R^{n+1}, B/C/D in R^n,
E_6 in R^8 (spanning the subspace x6 = x7 = -x8), F_4 in R^4 and G_2 in the
sum-zero plane of R^3.  Weights are tuples of ``Fraction`` in ambient
coordinates; the fast paths everywhere else use integer Dynkin labels
(coordinates in the basis of fundamental weights).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Sequence

Q = Fraction
Vector = tuple  # tuple of Fraction (ambient) or int (Dynkin labels)


def _vec(*xs) -> tuple:
    return tuple(Q(x) for x in xs)


def _unit(n: int, i: int, c=1) -> tuple:
    v = [Q(0)] * n
    v[i] = Q(c)
    return tuple(v)


def _add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _scale(c, u):
    return tuple(c * a for a in u)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Q(0))


def _simple_roots(typ: str, n: int) -> list[tuple]:
    """Bourbaki simple roots in ambient coordinates."""
    if typ == "A":
        return [_sub(_unit(n + 1, i), _unit(n + 1, i + 1)) for i in range(n)]
    if typ in "BCD":
        roots = [_sub(_unit(n, i), _unit(n, i + 1)) for i in range(n - 1)]
        if typ == "B":
            roots.append(_unit(n, n - 1))
        elif typ == "C":
            roots.append(_unit(n, n - 1, 2))
        else:
            roots.append(_add(_unit(n, n - 2), _unit(n, n - 1)))
        return roots
    if typ == "E":
        h = Q(1, 2)
        a1 = (h, -h, -h, -h, -h, -h, -h, h)
        roots = [a1, _add(_unit(8, 0), _unit(8, 1))]
        for k in range(3, n + 1):
            roots.append(_sub(_unit(8, k - 2), _unit(8, k - 3)))
        return roots
    if typ == "F":
        h = Q(1, 2)
        return [_vec(0, 1, -1, 0), _vec(0, 0, 1, -1), _vec(0, 0, 0, 1), (h, -h, -h, -h)]
    if typ == "G":
        return [_vec(1, -1, 0), _vec(-2, 1, 1)]
    raise ValueError(f"unknown type {typ!r}")


_VALID = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class Component:
    typ: str
    rank: int
    simple_offset: int
    ambient_offset: int

    @property
    def label(self) -> str:
        return f"{self.typ}{self.rank}"


class RootSystem:
    """A (possibly reducible) reduced crystallographic root system.

    Positive roots are generated from the simple roots by closure under the
    simple reflections, working in integer simple-root coordinates.  They are
    ordered by height, ties broken so that simple root ``i`` sits at index ``i``.
    """

    def __init__(self, components: Sequence[Component], simple_roots: Sequence[tuple]):
        self.components = tuple(components)
        self.simple_roots = tuple(tuple(Q(x) for x in a) for a in simple_roots)
        self.rank = len(self.simple_roots)
        self.dim = len(self.simple_roots[0])
        n = self.rank
        self._norms = [dot(a, a) for a in self.simple_roots]
        cartan = []
        for i in range(n):
            row = []
            for j in range(n):
                c = 2 * dot(self.simple_roots[i], self.simple_roots[j]) / self._norms[j]
                if c.denominator != 1:
                    raise ValueError("simple roots are not crystallographic")
                row.append(int(c))
            cartan.append(tuple(row))
        # cartan[i][j] = <alpha_i, alpha_j^vee>; row i = Dynkin labels of alpha_i
        self.cartan = tuple(cartan)
        self._generate_roots()

    # -- construction -------------------------------------------------------
    def _generate_roots(self):
        n, C = self.rank, self.cartan
        simple = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for b in frontier:
                for i in range(n):
                    p = sum(b[j] * C[j][i] for j in range(n))
                    if p == 0:
                        continue
                    r = list(b)
                    r[i] -= p
                    r = tuple(r)
                    if r not in seen and all(c >= 0 for c in r):
                        seen.add(r)
                        new.append(r)
            frontier = new
        # closure under simple reflections from the simple roots gives all roots;
        # positive ones are kept, negatives are their opposites
        pos = sorted(seen, key=lambda c: (sum(c), tuple(-x for x in c)))
        self.positive_coeffs = tuple(pos)
        self.num_positive = len(pos)
        self.root_coeffs = self.positive_coeffs + tuple(tuple(-x for x in c) for c in pos)
        self.root_index = {c: k for k, c in enumerate(self.root_coeffs)}
        self.roots = tuple(self.from_root_coeffs(c) for c in self.root_coeffs)
        self.positive_roots = self.roots[: self.num_positive]
        self.root_dynkin = tuple(
            tuple(sum(c[j] * C[j][i] for j in range(n)) for i in range(n)) for c in self.root_coeffs
        )
        # coroot of sum b_j alpha_j is sum b_j |alpha_j|^2/|alpha|^2 alpha_j^vee
        corc = []
        for c in self.root_coeffs:
            amb = self.from_root_coeffs(c)
            nn = dot(amb, amb)
            cc = []
            for j in range(n):
                x = c[j] * self._norms[j] / nn
                assert x.denominator == 1
                cc.append(int(x))
            corc.append(tuple(cc))
        self.coroot_coeffs = tuple(corc)

    # -- basic data ---------------------------------------------------------
    @property
    def label(self) -> str:
        return "x".join(c.label for c in self.components)

    def __repr__(self):
        return f"RootSystem({self.label})"

    def is_simple(self) -> bool:
        return len(self.components) == 1

    def from_root_coeffs(self, c) -> tuple:
        v = [Q(0)] * self.dim
        for cj, a in zip(c, self.simple_roots):
            if cj:
                for k in range(self.dim):
                    v[k] += cj * a[k]
        return tuple(v)

    def coroot(self, beta: tuple) -> tuple:
        return _scale(2 / dot(beta, beta), beta)

    def pairing(self, lam: tuple, beta: tuple) -> Fraction:
        """<lam, beta^vee> for ambient vectors."""
        return 2 * dot(lam, beta) / dot(beta, beta)

    def is_long(self, k: int) -> bool:
        """Root with index k is long in its simple component."""
        comp = self.component_of_root(k)
        amb = self.roots[k]
        top = max(
            self._norms[j] for j in range(comp.simple_offset, comp.simple_offset + comp.rank)
        )
        return dot(amb, amb) == top

    def component_of_root(self, k: int) -> Component:
        c = self.root_coeffs[k]
        for comp in self.components:
            if any(c[comp.simple_offset : comp.simple_offset + comp.rank]):
                return comp
        raise AssertionError

    @cached_property
    def inverse_cartan(self) -> tuple:
        return tuple(tuple(r) for r in _inverse([[Q(x) for x in row] for row in self.cartan]))

    @cached_property
    def fundamental_weights(self) -> tuple:
        # omega_i = sum_k (C^{-1})_{ik} alpha_k
        Ci = self.inverse_cartan
        return tuple(
            self.from_root_coeffs([Ci[i][k] for k in range(self.rank)]) for i in range(self.rank)
        )

    @cached_property
    def rho(self) -> tuple:
        """Dynkin labels of the Weyl vector."""
        return (1,) * self.rank

    @cached_property
    def gram(self) -> tuple:
        """Gram matrix of the fundamental weights under the ambient dot product."""
        w = self.fundamental_weights
        return tuple(tuple(dot(a, b) for b in w) for a in w)

    @cached_property
    def _int_form(self):
        """Integer-scaled Gram matrix and its scale factor."""
        from math import lcm

        den = 1
        for row in self.gram:
            for x in row:
                den = lcm(den, x.denominator)
        return den, tuple(tuple(int(x * den) for x in row) for row in self.gram)

    def form(self, x, y) -> int:
        """Integer-scaled invariant form on Dynkin-label vectors."""
        _, G = self._int_form
        return sum(x[i] * G[i][j] * y[j] for i in range(self.rank) if x[i] for j in range(self.rank) if y[j])

    def to_dynkin(self, lam: tuple, check: bool = True) -> tuple:
        if len(lam) != self.dim:
            raise ValueError(f"weight has {len(lam)} coordinates, expected {self.dim}")
        labels = [self.pairing(lam, a) for a in self.simple_roots]
        if check and any(x.denominator != 1 for x in labels):
            raise ValueError(f"{lam} is not in the weight lattice")
        return tuple(int(x) for x in labels) if check else tuple(labels)

    def from_dynkin(self, labels) -> tuple:
        if len(labels) != self.rank:
            raise ValueError(f"expected {self.rank} Dynkin labels, got {len(labels)}")
        v = [Q(0)] * self.dim
        for c, w in zip(labels, self.fundamental_weights):
            if c:
                for k in range(self.dim):
                    v[k] += c * w[k]
        return tuple(v)

    def pair_coroot(self, x, k: int) -> int:
        """<x, beta_k^vee> for a Dynkin-label vector x and root index k."""
        return sum(a * b for a, b in zip(x, self.coroot_coeffs[k]))

    def is_dominant(self, x) -> bool:
        return all(c >= 0 for c in x)

    def reflect(self, x, i: int) -> tuple:
        """Simple reflection s_i on Dynkin labels."""
        c = x[i]
        if not c:
            return tuple(x)
        row = self.cartan[i]
        return tuple(a - c * r for a, r in zip(x, row))

    @cached_property
    def _int_inverse_cartan(self):
        """(d, M) with M = d * C^{-1} an integer matrix."""
        from math import lcm

        d = 1
        for row in self.inverse_cartan:
            for x in row:
                d = lcm(d, x.denominator)
        return d, tuple(tuple(int(x * d) for x in row) for row in self.inverse_cartan)

    def scaled_root_coords(self, x) -> tuple:
        """(d, c) with c / d the simple-root coordinates of x; c is integral."""
        d, M = self._int_inverse_cartan
        n = self.rank
        return d, tuple(sum(x[i] * M[i][k] for i in range(n) if x[i]) for k in range(n))

    def is_nonnegative_root_combination(self, x) -> bool:
        """x lies in the monoid spanned by the positive roots."""
        d, c = self.scaled_root_coords(x)
        return all(v >= 0 and v % d == 0 for v in c)

    def height(self, x) -> Fraction:
        """Height of a Dynkin-label vector (sum of its simple-root coordinates)."""
        d, c = self.scaled_root_coords(x)
        return Q(sum(c), d)

    def root_coords(self, x) -> tuple:
        """Simple-root coordinates (Fractions) of a Dynkin-label vector."""
        d, c = self.scaled_root_coords(x)
        return tuple(Q(v, d) for v in c)

    def in_root_lattice(self, x) -> bool:
        return all(c.denominator == 1 for c in self.root_coords(x))

    # -- Weyl group ---------------------------------------------------------
    @cached_property
    def simple_perms(self) -> tuple:
        """Action of each simple reflection as a permutation of root indices."""
        out = []
        for i in range(self.rank):
            perm = []
            for c in self.root_coeffs:
                p = sum(c[j] * self.cartan[j][i] for j in range(self.rank))
                r = list(c)
                r[i] -= p
                perm.append(self.root_index[tuple(r)])
            out.append(tuple(perm))
        return tuple(out)

    def identity(self) -> "WeylElement":
        return WeylElement(self, tuple(range(len(self.roots))), ())

    def simple_reflection(self, i: int) -> "WeylElement":
        if not 0 <= i < self.rank:
            raise ValueError(f"no simple root with index {i}")
        return WeylElement(self, self.simple_perms[i], (i,))

    def element(self, word: Sequence[int]) -> "WeylElement":
        """s_{w[0]} s_{w[1]} ... s_{w[-1]} (0-based simple indices)."""
        perm = tuple(range(len(self.roots)))
        for i in reversed(word):
            s = self.simple_perms[i]
            perm = tuple(s[k] for k in perm)
        return WeylElement(self, perm, tuple(word))

    def reflection(self, k: int) -> "WeylElement":
        """Reflection in the root with index k."""
        beta = self.root_coeffs[k]
        cor = self.coroot_coeffs[k]
        perm = []
        C = self.cartan
        n = self.rank
        for c in self.root_coeffs:
            # <gamma, beta^vee> with gamma = sum c_j alpha_j
            p = sum(c[j] * C[j][i] * cor[i] for j in range(n) for i in range(n) if c[j] and cor[i])
            perm.append(self.root_index[tuple(a - p * b for a, b in zip(c, beta))])
        return WeylElement(self, tuple(perm))

    def weyl_action_dynkin(self, word, x) -> tuple:
        for i in reversed(word):
            x = self.reflect(x, i)
        return x

    def dominant_representative(self, lam: tuple) -> tuple:
        """Return (dominant, w) with w.lam == dominant (ambient weights)."""
        x = self.to_dynkin(lam, check=False)
        x, word = self._descend(x)
        return self.from_dynkin(x), self.element(word)

    def _descend(self, x):
        applied = []
        x = tuple(x)
        while True:
            for i, c in enumerate(x):
                if c < 0:
                    x = self.reflect(x, i)
                    applied.append(i)
                    break
            else:
                return x, tuple(reversed(applied))

    def dominant_dynkin(self, x) -> tuple:
        return self._descend(x)[0]

    @cached_property
    def longest_element(self) -> "WeylElement":
        _, word = self._descend(tuple(-c for c in self.rho))
        return self.element(word)

    def dual_weight(self, x) -> tuple:
        """Dynkin labels of -w0(x)."""
        w0 = self.longest_element
        return tuple(-c for c in w0.act_dynkin(x))

    def orbit_dynkin(self, x) -> list:
        """W-orbit of a Dynkin-label vector."""
        start = self.dominant_dynkin(x)
        seen = {start}
        stack = [start]
        while stack:
            y = stack.pop()
            for i, c in enumerate(y):
                if c > 0:
                    z = self.reflect(y, i)
                    if z not in seen:
                        seen.add(z)
                        stack.append(z)
        return sorted(seen)

    @cached_property
    def weyl_order(self) -> int:
        from math import prod

        return prod(_component_weyl_order(c.typ, c.rank) for c in self.components)

    def orbit_size(self, x) -> int:
        """|W . x| for dominant x, via the parabolic stabilizer."""
        zero = [i for i, c in enumerate(x) if c == 0]
        if not zero:
            return self.weyl_order
        sub = self.subsystem(zero)
        return self.weyl_order // sub.weyl_order

    def subsystem(self, indices) -> "RootSystem":
        """Root subsystem generated by the given simple roots."""
        indices = sorted(indices)
        comps = _classify_components(
            [[self.cartan[i][j] for j in indices] for i in indices]
        )
        return _AbstractSystem(comps)


def _component_weyl_order(typ: str, n: int) -> int:
    from math import factorial

    if typ == "A":
        return factorial(n + 1)
    if typ in "BC":
        return 2**n * factorial(n)
    if typ == "D":
        return 2 ** (n - 1) * factorial(n)
    return {("E", 6): 51840, ("E", 7): 2903040, ("E", 8): 696729600, ("F", 4): 1152, ("G", 2): 12}[
        (typ, n)
    ]


def _classify_components(C) -> list:
    """Identify the Cartan types of the connected components of a Cartan matrix."""
    n = len(C)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        block = []
        stack = [s]
        seen[s] = True
        while stack:
            i = stack.pop()
            block.append(i)
            for j in range(n):
                if not seen[j] and C[i][j] != 0:
                    seen[j] = True
                    stack.append(j)
        comps.append(_identify([[C[i][j] for j in block] for i in block]))
    return comps


def _identify(C) -> tuple:
    n = len(C)
    prods = [C[i][j] * C[j][i] for i in range(n) for j in range(i + 1, n)]
    branch = any(sum(1 for j in range(n) if j != i and C[i][j]) > 2 for i in range(n))
    if 3 in prods:
        return ("G", 2)
    if 2 in prods:
        if n == 2:
            return ("B", 2)
        if n == 4:
            # F4 has its double bond in the middle
            for i in range(n):
                for j in range(n):
                    if C[i][j] * C[j][i] == 2:
                        deg = [sum(1 for k in range(n) if k != x and C[x][k]) for x in (i, j)]
                        if deg == [2, 2]:
                            return ("F", 4)
        return ("B", n)  # same Weyl group as C_n
    if branch:
        if n >= 6:
            # E_n or D_n: D_n has a branch node adjacent to two leaves
            for i in range(n):
                nb = [j for j in range(n) if j != i and C[i][j]]
                if len(nb) == 3:
                    leaves = sum(
                        1 for j in nb if sum(1 for k in range(n) if k != j and C[j][k]) == 1
                    )
                    return ("D", n) if leaves >= 2 else ("E", n)
        return ("D", n)
    return ("A", n)


class _AbstractSystem:
    """Just enough of a root system to know its Weyl group order."""

    def __init__(self, comps):
        self.components = [Component(t, r, 0, 0) for t, r in comps]

    @property
    def weyl_order(self):
        from math import prod

        return prod(_component_weyl_order(c.typ, c.rank) for c in self.components)


def _inverse(M):
    n = len(M)
    A = [list(row) + [Q(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        p = next(r for r in range(c, n) if A[r][c] != 0)
        A[c], A[p] = A[p], A[c]
        piv = A[c][c]
        A[c] = [x / piv for x in A[c]]
        for r in range(n):
            if r != c and A[r][c] != 0:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


@dataclass(frozen=True, eq=False)
class WeylElement:
    """An element of the Weyl group, stored as a permutation of root indices.

    The permutation is a faithful, hashable encoding; equality compares it.
    ``word`` is an optional expression in simple reflections (not necessarily
    reduced).
    """

    rs: RootSystem
    perm: tuple
    word: tuple | None = field(default=None, compare=False)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.rs is other.rs and self.perm == other.perm

    def __hash__(self):
        return hash(self.perm)

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if other.rs is not self.rs:
            raise ValueError("Weyl elements of different root systems")
        word = None
        if self.word is not None and other.word is not None:
            word = self.word + other.word
        return WeylElement(self.rs, tuple(self.perm[k] for k in other.perm), word)

    def inverse(self) -> "WeylElement":
        inv = [0] * len(self.perm)
        for k, v in enumerate(self.perm):
            inv[v] = k
        word = tuple(reversed(self.word)) if self.word is not None else None
        return WeylElement(self.rs, tuple(inv), word)

    def length(self) -> int:
        N = self.rs.num_positive
        return sum(1 for k in range(N) if self.perm[k] >= N)

    def root(self, k: int) -> int:
        """Index of w(beta_k)."""
        return self.perm[k]

    def is_identity(self) -> bool:
        return all(k == v for k, v in enumerate(self.perm))

    def left_descents(self) -> list:
        """Simple indices i with l(s_i w) < l(w)."""
        N = self.rs.num_positive
        inv = self.inverse().perm
        return [i for i in range(self.rs.rank) if inv[i] >= N]

    def reduced_word(self) -> tuple:
        """Lexicographically smallest reduced word."""
        word = []
        w = self
        while True:
            d = w.left_descents()
            if not d:
                return tuple(word)
            i = d[0]
            word.append(i)
            w = self.rs.simple_reflection(i) * w

    @cached_property
    def dynkin_matrix(self) -> tuple:
        """Integer matrix of the action on Dynkin labels (column j = image of omega_j)."""
        rs = self.rs
        n = rs.rank
        # image of alpha_i is root perm[i]; omega_j = sum_k Cinv[j][k] alpha_k
        Ci = rs.inverse_cartan
        cols = []
        for j in range(n):
            v = [Q(0)] * n
            for k in range(n):
                if Ci[j][k]:
                    img = rs.root_dynkin[self.perm[k]]
                    for t in range(n):
                        v[t] += Ci[j][k] * img[t]
            cols.append([int(x) for x in v])
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def act_dynkin(self, x) -> tuple:
        M = self.dynkin_matrix
        return tuple(sum(M[i][j] * x[j] for j in range(len(x)) if x[j]) for i in range(len(x)))

    @cached_property
    def matrix(self) -> tuple:
        """Exact rational action on ambient coordinates.

        Reflections fix the orthogonal complement of the root span, so
        M = I + (W_S - S) K with S the simple roots, W_S their images and K the
        coefficient functionals on the root span.
        """
        rs = self.rs
        K = _coefficient_functionals(rs)
        d, n = rs.dim, rs.rank
        M = [[Q(int(i == j)) for j in range(d)] for i in range(d)]
        for i in range(n):
            diff = _sub(rs.roots[self.perm[i]], rs.simple_roots[i])
            if any(diff):
                for r in range(d):
                    if diff[r]:
                        for c in range(d):
                            M[r][c] += diff[r] * K[i][c]
        return tuple(tuple(row) for row in M)


_FUNCTIONALS: dict = {}


def _coefficient_functionals(rs: RootSystem):
    key = id(rs)
    if key not in _FUNCTIONALS:
        S = rs.simple_roots
        G = [[dot(a, b) for b in S] for a in S]
        Gi = _inverse(G)
        K = [
            tuple(sum((Gi[i][j] * S[j][c] for j in range(rs.rank)), Q(0)) for c in range(rs.dim))
            for i in range(rs.rank)
        ]
        _FUNCTIONALS[key] = (rs, K)
    return _FUNCTIONALS[key][1]


def act(w: WeylElement, lam: tuple) -> tuple:
    """Apply a Weyl group element to an ambient weight."""
    M = w.matrix
    if len(lam) != len(M):
        raise ValueError(f"weight has {len(lam)} coordinates, expected {len(M)}")
    return tuple(sum((M[i][j] * lam[j] for j in range(len(lam))), Q(0)) for i in range(len(lam)))


def length(w: WeylElement) -> int:
    return w.length()


def longest_element(rs: RootSystem) -> WeylElement:
    return rs.longest_element


def dominant_representative(lam: tuple, rs: RootSystem):
    return rs.dominant_representative(lam)


_CACHE: dict = {}


def build_root_system(typ: str, rank: int | None = None) -> RootSystem:
    """Root system of a simple type, or of a product given as e.g. ``"A2xA2"``.

    >>> build_root_system("G", 2).num_positive
    6
    """
    if rank is None:
        labels = typ.split("x")
    else:
        labels = [f"{typ}{rank}"]
    key = tuple(labels)
    if key in _CACHE:
        return _CACHE[key]
    parsed = []
    for lab in labels:
        m = re.fullmatch(r"([A-G])(\d+)", lab.strip())
        if not m:
            raise ValueError(f"invalid root system label {lab!r}")
        t, n = m.group(1), int(m.group(2))
        if not _VALID[t](n):
            raise ValueError(f"invalid type/rank combination {t}{n}")
        parsed.append((t, n))
    comps, blocks = [], []
    so = ao = 0
    for t, n in parsed:
        sr = _simple_roots(t, n)
        comps.append(Component(t, n, so, ao))
        blocks.append(sr)
        so += n
        ao += len(sr[0])
    total = ao
    simple = []
    for comp, sr in zip(comps, blocks):
        for a in sr:
            v = [Q(0)] * total
            v[comp.ambient_offset : comp.ambient_offset + len(a)] = a
            simple.append(tuple(v))
    rs = RootSystem(comps, simple)
    _CACHE[key] = rs
    return rs


def product(*systems: RootSystem) -> RootSystem:
    return build_root_system("x".join(s.label for s in systems))
