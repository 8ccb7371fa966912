"""Explicit models of irreducible highest-weight modules.

A weight space V(lam) below the top is identified with its image under the
raising operators: a vector v is recorded through (e_j v)_j, which lies in
the already-built spaces V(lam + alpha_j).  In an irreducible module that
map is injective away from the highest weight, so spanning V(lam) by the
candidates f_i v (v in V(lam + alpha_i)) and keeping a maximal independent
subset of their raised images builds exactly the quotient of the Verma module
by the radical of its contravariant form.  Only the simple generators enter;
other root vectors are commutators (see :mod:`sphbranch.liealg`).

Weights are integer Dynkin-label tuples.  Blocks are dense lists of rows with
exact rational entries; ``E[i][lam]`` maps V(lam) -> V(lam + alpha_i) and
``F[i][lam]`` maps V(lam) -> V(lam - alpha_i).
"""

from __future__ import annotations

import hashlib
import logging
import os
from dataclasses import dataclass, field
from pathlib import Path

from . import linalg
from .linalg import IncrementalBasis, matmul, raised_images, rational
from .weyl import RootSystem, build_root_system

log = logging.getLogger(__name__)

DEFAULT_MAX_DIM = 100_000
CACHE_VERSION = "1"


class DimensionCapExceeded(RuntimeError):
    """Raised when a model would exceed the configured dimension cap."""


def shift(lam, delta, k: int = 1) -> tuple:
    return tuple(a + k * b for a, b in zip(lam, delta))


@dataclass
class IrrepModel:
    rs: RootSystem
    highest_weight: tuple
    dims: dict = field(default_factory=dict)  # weight -> multiplicity (built weights only)
    weights: list = field(default_factory=list)  # build order (by depth)
    E: list = field(default_factory=list)
    F: list = field(default_factory=list)
    complete: bool = True
    floors: list | None = None
    _ops: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return sum(self.dims.values())

    def multiplicity(self, lam) -> int:
        return self.dims.get(tuple(lam), 0)

    def op(self, k: int, lam):
        """Block of the root operator X_{beta_k} from V(lam) to V(lam + beta_k).

        Returns None when either weight space is absent from the model.
        """
        lam = tuple(lam)
        key = (k, lam)
        if key in self._ops:
            return self._ops[key]
        rs = self.rs
        tgt = shift(lam, rs.root_dynkin[k])
        if lam not in self.dims or tgt not in self.dims:
            if not self.complete:
                for w in (lam, tgt):
                    if w not in self.dims and not self.covers(w):
                        raise KeyError(f"weight {w} lies outside the built region")
            self._ops[key] = None
            return None
        N = rs.num_positive
        if k < rs.rank:
            block = self.E[k][lam]
        elif N <= k < N + rs.rank:
            block = self.F[k - N][lam]
        else:
            from .liealg import recipes

            r = recipes(rs)[k]
            comm = self.commutator(r.simple, r.rest, lam)
            c = rational(r.sign, r.norm)
            block = [[c * x for x in row] for row in comm]
        self._ops[key] = block
        return block

    def commutator(self, a: int, b: int, lam) -> list:
        """[X_a, X_b] restricted to V(lam), as a block into V(lam + a + b)."""
        rs = self.rs
        la = shift(lam, rs.root_dynkin[a])
        lb = shift(lam, rs.root_dynkin[b])
        tgt = shift(la, rs.root_dynkin[b])
        rows, cols = self.dims.get(tgt, 0), self.dims.get(tuple(lam), 0)
        out = linalg.zeros(rows, cols)
        if not rows or not cols:
            return out
        for (x, y, mid, sgn) in ((a, b, lb, 1), (b, a, la, -1)):
            first = self.op(y, lam)
            if first is None:
                continue
            second = self.op(x, mid)
            if second is None:
                continue
            P = matmul(second, first)
            for i in range(rows):
                ri, pi = out[i], P[i]
                for j in range(cols):
                    if pi[j]:
                        ri[j] += sgn * pi[j]
        return out

    def apply(self, k: int, lam, v):
        """X_{beta_k} applied to a coordinate vector v in V(lam)."""
        block = self.op(k, lam)
        if block is None:
            return None
        return linalg.matvec(block, v)

    def power(self, k: int, lam, m: int):
        """Block of X_{beta_k}^m from V(lam); None when it is zero for weight reasons."""
        delta = self.rs.root_dynkin[k]
        acc = None
        cur = tuple(lam)
        for _ in range(m):
            block = self.op(k, cur)
            if block is None:
                return None
            acc = block if acc is None else matmul(block, acc)
            cur = shift(cur, delta)
        if acc is None:
            n = self.dims.get(tuple(lam), 0)
            return linalg.identity(n)
        return acc

    def covers(self, lam) -> bool:
        """Whether V(lam) is fully represented (possibly as the zero space)."""
        if self.complete or tuple(lam) in self.dims:
            return True
        if not _is_weight(self.rs, self.highest_weight, lam):
            return True
        # every weight above a floor is built, so a missing one is outside the region
        return False

    def character(self) -> dict:
        return dict(self.dims)


def _is_weight(rs: RootSystem, hw, lam) -> bool:
    """lam is a weight of V(hw): hw - dom(lam) is a nonnegative root-lattice vector."""
    d = rs.dominant_dynkin(lam)
    return rs.is_nonnegative_root_combination(tuple(a - b for a, b in zip(hw, d)))


def _above_some(rs: RootSystem, lam, floors) -> bool:
    return any(rs.is_nonnegative_root_combination(tuple(a - b for a, b in zip(lam, f))) for f in floors)


def build_irrep(
    rs: RootSystem,
    hw,
    *,
    floors=None,
    max_dim: int = DEFAULT_MAX_DIM,
    cache_dir: str | os.PathLike | None = None,
) -> IrrepModel:
    """Build V(hw).  With ``floors`` only weights above one of them are built.

    The restricted region is upward closed, which is all the construction of
    a weight space (and any root operator between built weights) needs.
    """
    hw = tuple(int(x) for x in hw)
    if len(hw) != rs.rank:
        raise ValueError(f"expected {rs.rank} Dynkin labels, got {len(hw)}")
    if any(x < 0 for x in hw):
        raise ValueError(f"highest weight {hw} is not dominant")
    full = floors is None
    if full and cache_dir is not None:
        cached = load_cached(rs, hw, cache_dir)
        if cached is not None:
            return cached
    floors = None if full else [tuple(f) for f in floors]
    n = rs.rank
    alpha = [rs.cartan[i] for i in range(n)]
    model = IrrepModel(rs, hw, complete=full, floors=floors)
    model.E = [dict() for _ in range(n)]
    model.F = [dict() for _ in range(n)]
    model.dims[hw] = 1
    model.weights.append(hw)
    for i in range(n):
        model.E[i][hw] = linalg.zeros(0, 1)
    layer = [hw]
    total = 1
    while layer:
        cand_weights = []
        seen = set()
        for mu in layer:
            for i in range(n):
                lam = shift(mu, alpha[i], -1)
                if lam in seen or lam in model.dims:
                    continue
                seen.add(lam)
                if not _is_weight(rs, hw, lam):
                    continue
                if floors is not None and not _above_some(rs, lam, floors):
                    continue
                cand_weights.append(lam)
        cand_weights.sort(reverse=True)
        nxt = []
        for lam in cand_weights:
            d = _build_weight_space(model, lam, alpha)
            if d:
                total += d
                if total > max_dim:
                    raise DimensionCapExceeded(
                        f"V{hw} of {rs.label} exceeds the dimension cap {max_dim}"
                    )
                nxt.append(lam)
        layer = nxt
    CHECK_STATS["builds"] += 1
    check_model(model)
    if full and cache_dir is not None:
        save_cached(model, cache_dir)
    return model


class ModelCheckError(AssertionError):
    pass


# models checked against Freudenthal / Weyl since import (read by the acceptance suite)
CHECK_STATS = {"builds": 0, "models": 0, "weights": 0, "complete": 0}


def check_model(model: IrrepModel) -> None:
    """Weight multiplicities against Freudenthal; total dimension against Weyl when complete."""
    from .chars import freudenthal_character, weyl_dim

    rs = model.rs
    table = freudenthal_character(rs, model.highest_weight)
    for lam, d in model.dims.items():
        want = table.get(rs.dominant_dynkin(lam), 0)
        if d != want:
            raise ModelCheckError(
                f"V{model.highest_weight} of {rs.label}: weight {lam} has multiplicity {d}, expected {want}"
            )
    if model.complete:
        want = weyl_dim(rs, model.highest_weight)
        if model.dimension != want:
            raise ModelCheckError(
                f"V{model.highest_weight} of {rs.label} has dimension {model.dimension}, expected {want}"
            )
        CHECK_STATS["complete"] += 1
    CHECK_STATS["models"] += 1
    CHECK_STATS["weights"] += len(model.dims)


def _build_weight_space(model: IrrepModel, lam, alpha) -> int:
    n = model.rs.rank
    dims = model.dims
    up = [shift(lam, alpha[j]) for j in range(n)]
    up_dims = [dims.get(u, 0) for u in up]
    offsets, off = [], 0
    for d in up_dims:
        offsets.append(off)
        off += d
    basis = IncrementalBasis()
    chosen = []  # (i, k) per basis vector
    images = []  # raised image (dict over concatenated coordinates) per basis vector
    f_cols = {}  # i -> list of coefficient dicts, one per k
    for i in range(n):
        if not up_dims[i]:
            continue
        src = up[i]
        h = src[i]  # <lam + alpha_i, alpha_i^vee>
        # e_j f_i v = f_i e_j v + delta_ij h v: column k of R[j] is the
        # V(lam + alpha_j) component of the raised image of f_i v_k
        R = [None] * n
        for j in range(n):
            if up_dims[j]:
                top = shift(src, alpha[j])
                fi = model.F[i].get(top) if top in dims else None
                if fi is not None:
                    R[j] = matmul(fi, model.E[j][src])
        f_cols[i] = []
        for k, vec in enumerate(raised_images(R, offsets, up_dims[i], i, h)):
            new, info = basis.add(vec)
            if new:
                chosen.append((i, k))
                images.append(vec)
                f_cols[i].append({info: 1})
            else:
                f_cols[i].append(info)
    d = len(chosen)
    if not d:
        return 0
    dims[lam] = d
    model.weights.append(lam)
    for j in range(n):
        if up_dims[j]:
            o = offsets[j]
            model.E[j][lam] = [
                [images[b].get(o + r, 0) for b in range(d)] for r in range(up_dims[j])
            ]
        else:
            model.E[j][lam] = linalg.zeros(0, d)
    for i, cols in f_cols.items():
        model.F[i][up[i]] = [[cols[k].get(b, 0) for k in range(len(cols))] for b in range(d)]
    return d


def root_operator(m: IrrepModel, k: int) -> dict:
    """All blocks of X_{beta_k}: {source weight: block}."""
    if not 0 <= k < len(m.rs.roots):
        raise ValueError(f"no root with index {k}")
    out = {}
    for lam in m.weights:
        b = m.op(k, lam)
        if b is not None:
            out[lam] = b
    return out


@dataclass
class DualWeightSpace:
    """V^*(lam) realised as the dual of V(-lam).

    The dual action of X_gamma maps V^*(lam) -> V^*(lam + gamma) and is minus
    the transpose of X_gamma : V(-lam - gamma) -> V(-lam).  Vectors are
    coordinate rows in the dual basis of V(-lam).
    """

    model: IrrepModel
    weight: tuple
    dimension: int

    def operator(self, k: int):
        """Matrix (rows: V^*(lam + gamma) dual basis, cols: V^*(lam)) of the dual X_gamma."""
        rs = self.model.rs
        lam = self.weight
        src = tuple(-(a + b) for a, b in zip(lam, rs.root_dynkin[k]))
        block = self.model.op(k, src)
        if block is None:
            return None
        return [[-x for x in col] for col in zip(*block)] if block else []

    def apply_power(self, k: int, m: int, phi):
        """Dual X_gamma^m applied to phi (a coordinate list); returns a list or []."""
        rs = self.model.rs
        delta = rs.root_dynkin[k]
        cur_w = self.weight
        v = list(phi)
        for _ in range(m):
            src = tuple(-(a + b) for a, b in zip(cur_w, delta))
            block = self.model.op(k, src)
            if block is None:
                return []
            # (phi . X)(x) with the sign of the contragredient action
            v = [-sum((v[r] * block[r][c] for r in range(len(v)) if v[r]), 0) for c in range(len(block[0]) if block else 0)]
            cur_w = shift(cur_w, delta)
        return v


def dual_weight_space(m: IrrepModel, lam) -> DualWeightSpace:
    lam = tuple(lam)
    neg = tuple(-x for x in lam)
    return DualWeightSpace(m, lam, m.dims.get(neg, 0))


def adjoint_model(rs: RootSystem) -> IrrepModel:
    from .liealg import faithful_weight

    return build_irrep(rs, faithful_weight(rs))


# -- disk cache -------------------------------------------------------------


def _cache_path(rs: RootSystem, hw, cache_dir) -> Path:
    name = f"{rs.label}_{'-'.join(map(str, hw))}.txt"
    return Path(cache_dir) / f"v{CACHE_VERSION}" / name


def _fmt(x) -> str:
    if isinstance(x, int):
        return str(x)
    if x.denominator == 1:
        return str(int(x.numerator))
    return f"{int(x.numerator)}/{int(x.denominator)}"


def _parse(s: str):
    if "/" in s:
        a, b = s.split("/")
        return rational(int(a), int(b))
    return int(s)


def serialize(model: IrrepModel) -> str:
    """Self-describing text form: header, weights, then sparse block triples."""
    rs = model.rs
    body = []
    body.append(f"weights {len(model.weights)}")
    for w in model.weights:
        body.append("w " + " ".join(map(str, w)) + f" {model.dims[w]}")
    for kind, ops in (("E", model.E), ("F", model.F)):
        for i, blocks in enumerate(ops):
            for w in model.weights:
                block = blocks.get(w)
                if block is None or not block:
                    continue
                trip = [
                    f"{r} {c} {_fmt(x)}" for r, row in enumerate(block) for c, x in enumerate(row) if x
                ]
                body.append(
                    f"block {kind} {i} " + " ".join(map(str, w)) + f" {len(block)} {len(block[0])} {len(trip)}"
                )
                body.extend(trip)
    text = "\n".join(body) + "\n"
    digest = hashlib.sha256(text.encode()).hexdigest()
    header = [
        "sphbranch-irrep",
        f"version {CACHE_VERSION}",
        f"type {rs.label}",
        f"rank {rs.rank}",
        "highest_weight " + " ".join(map(str, model.highest_weight)),
        f"dimension {model.dimension}",
        f"sha256 {digest}",
    ]
    return "\n".join(header) + "\n" + text


class CacheError(ValueError):
    pass


def deserialize(text: str, rs: RootSystem | None = None) -> IrrepModel:
    lines = text.splitlines()
    if not lines or lines[0] != "sphbranch-irrep":
        raise CacheError("not an irrep cache file")
    head = {}
    for line in lines[1:7]:
        key, _, val = line.partition(" ")
        head[key] = val
    if head.get("version") != CACHE_VERSION:
        raise CacheError("cache version mismatch")
    body = "\n".join(lines[7:]) + "\n"
    if hashlib.sha256(body.encode()).hexdigest() != head.get("sha256"):
        raise CacheError("checksum mismatch")
    if rs is None:
        rs = build_root_system(head["type"])
    if rs.label != head["type"]:
        raise CacheError("root system mismatch")
    n = rs.rank
    hw = tuple(int(x) for x in head["highest_weight"].split())
    model = IrrepModel(rs, hw)
    model.E = [dict() for _ in range(n)]
    model.F = [dict() for _ in range(n)]
    it = iter(lines[7:])
    nw = int(next(it).split()[1])
    for _ in range(nw):
        parts = next(it).split()
        w = tuple(int(x) for x in parts[1 : 1 + n])
        model.dims[w] = int(parts[1 + n])
        model.weights.append(w)
    for line in it:
        if not line:
            continue
        parts = line.split()
        kind, i = parts[1], int(parts[2])
        w = tuple(int(x) for x in parts[3 : 3 + n])
        rows, cols, nnz = (int(x) for x in parts[3 + n : 6 + n])
        block = linalg.zeros(rows, cols)
        for _ in range(nnz):
            r, c, x = next(it).split()
            block[int(r)][int(c)] = _parse(x)
        (model.E if kind == "E" else model.F)[i][w] = block
    # empty blocks are implicit
    for w in model.weights:
        d = model.dims[w]
        for i in range(n):
            up = shift(w, rs.cartan[i])
            down = shift(w, rs.cartan[i], -1)
            model.E[i].setdefault(w, linalg.zeros(model.dims.get(up, 0), d))
            if down in model.dims:
                model.F[i].setdefault(w, linalg.zeros(model.dims[down], d))
    if model.dimension != int(head["dimension"]):
        raise CacheError("dimension mismatch")
    return model


def load_cached(rs: RootSystem, hw, cache_dir) -> IrrepModel | None:
    path = _cache_path(rs, hw, cache_dir)
    if not path.exists():
        return None
    try:
        model = deserialize(path.read_text(), rs)
        check_model(model)
        return model
    except (CacheError, ModelCheckError, ValueError, StopIteration, IndexError) as exc:
        log.warning("discarding corrupted cache file %s: %s", path, exc)
        path.unlink(missing_ok=True)
        return None


def save_cached(model: IrrepModel, cache_dir) -> Path:
    path = _cache_path(model.rs, model.highest_weight, cache_dir)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(serialize(model))
    tmp.replace(path)
    return path
