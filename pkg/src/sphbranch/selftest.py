"""Acceptance grids and the self-verification harness behind ``sphbranch selftest``."""

from __future__ import annotations

import itertools
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .chars import weyl_dim
from .pairs import make_pair

# (tag, bound on each Dynkin label of nuhat, cap on dim V(nuhat))
FULL_GRIDS = (
    ("tensor:A1", 8, None),
    ("tensor:A2", 2, None),
    ("sl-sp:2", 2, 5000),
    ("sl-sp:3", 2, 5000),
    ("spin:4", 2, None),
    ("g2", 2, None),
)
QUICK_GRIDS = (
    ("tensor:A1", 4, None),
    ("tensor:A2", 1, None),
    ("sl-sp:2", 1, None),
    ("g2", 1, None),
)
F4_WEIGHTS = ((1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 0), (1, 0, 0, 0, 0, 1))


def grid_weights(tag: str, bound: int, cap: int | None = None) -> list:
    p = make_pair(tag)
    out = []
    for nuhat in itertools.product(range(bound + 1), repeat=p.hat.rank):
        if cap is None or weyl_dim(p.hat, nuhat) <= cap:
            out.append(tuple(nuhat))
    return out


def grids(level: str) -> list:
    """[(tag, [nuhat, ...])] for a selftest level."""
    if level == "quick":
        return [(t, grid_weights(t, b, c)) for t, b, c in QUICK_GRIDS]
    if level == "full":
        return [(t, grid_weights(t, b, c)) for t, b, c in FULL_GRIDS] + [("f4", list(F4_WEIGHTS))]
    raise ValueError(f"unknown level {level!r}")


@dataclass(frozen=True)
class GridReport:
    tag: str
    nuhat: tuple
    checked: int
    mismatches: tuple  # (nu, kernel value, oracle value)
    full_D_ok: bool
    sum_rule_ok: bool
    multiplicity_free: bool


def check_weight(tag: str, nuhat: tuple) -> GridReport:
    """Kernel dimensions against the oracle for every candidate nu, plus redundancy and sum rule."""
    from .mult import theorem1_multiplicity
    from .oracle import candidate_weights, oracle_multiplicity

    p = make_pair(tag)
    mism = []
    full_ok = True
    total = 0
    mfree = True
    cands = candidate_weights(p, nuhat)
    for nu in cands:
        a = theorem1_multiplicity(p, nu, nuhat).dimension
        b = oracle_multiplicity(p, nu, nuhat)
        if a != b:
            mism.append((nu, a, b))
        if a > 1:
            mfree = False
        if _D_exceeds_D0(p):
            full = theorem1_multiplicity(p, nu, nuhat, full_D=True).dimension
            full_ok &= full == a
        total += a * weyl_dim(p.G, nu)
    return GridReport(
        tag, tuple(nuhat), len(cands), tuple(mism), full_ok,
        total == weyl_dim(p.hat, nuhat), mfree,
    )


def _D_exceeds_D0(p) -> bool:
    from .orbits import divisor_set, find_y0

    ds = divisor_set(p, find_y0(p))
    return len(ds.D) > len(ds.D0)


def structural_checks(level: str) -> list:
    """[(name, passed, detail)] for the pair and orbit fixtures."""
    from .orbits import divisor_set, enumerate_cosets, find_y0, stabilizer_dim

    out = []
    tags = ["tensor:A1", "tensor:A2", "sl-sp:2", "sl-sp:3", "spin:4", "g2"]
    if level == "full":
        tags.append("f4")
    for tag in tags:
        p = make_pair(tag)
        y0 = find_y0(p)
        cos = enumerate_cosets(p)
        ds = divisor_set(p, y0)
        open_id = {c.index for c in cos if c.stabilizer_dim == p.dim_G - p.hat.num_positive}
        from .orbits import coset_data

        data = coset_data(p)
        ref_ok = all(data.coset(p.hat.element(w)).index in open_id for w in p.reference_y0_words)
        st = stabilizer_dim(p, y0)
        n_phi2 = sum(1 for i in range(p.G.rank) if i in p.phi2)
        checks = {
            "coset_count": len(cos) * p.G.weyl_order == p.hat.weyl_order,
            "y0_length": y0.length() == p.hat.num_positive - p.G.num_positive,
            "reference_y0_in_open_coset": ref_ok,
            "stabilizer_y0": st == p.G.rank + sum(1 for k in p.phi1 if k < p.G.num_positive),
            "divisor_stabilizers": all(
                stabilizer_dim(p, y0 * p.hat.simple_reflection(e.alpha)) == st + 1 for e in ds.D
            ),
            "D0_count": len(ds.D0) == n_phi2,
        }
        for name, ok in checks.items():
            out.append((f"{tag}:{name}", bool(ok), ""))
    return out


def cache_check() -> tuple:
    """A corrupted cache file is detected and replaced by a fresh build."""
    from .irrep import _cache_path, build_irrep, load_cached
    from .weyl import build_root_system

    rs = build_root_system("A2")
    with tempfile.TemporaryDirectory() as d:
        m = build_irrep(rs, (1, 1), cache_dir=d)
        path = _cache_path(rs, (1, 1), d)
        lines = path.read_text().splitlines()
        lines[-1] += "7"  # flip one entry of the last block
        path.write_text("\n".join(lines) + "\n")
        detected = load_cached(rs, (1, 1), d) is None
        again = build_irrep(rs, (1, 1), cache_dir=d)
        reloaded = load_cached(rs, (1, 1), d)
        ok = detected and again.dims == m.dims and reloaded is not None
    return ("cache:corruption_detected_and_rebuilt", ok, "")


def _task(args):
    return check_weight(*args)


def run(level: str = "quick", jobs: int = 1) -> dict:
    """Deterministic report: same inputs give byte-identical JSON."""
    tasks = [(tag, nh) for tag, ws in grids(level) for nh in ws]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_task, tasks, chunksize=4))
    else:
        reports = [_task(t) for t in tasks]
    checks = []
    by_tag: dict = {}
    for r in reports:
        by_tag.setdefault(r.tag, []).append(r)
    for tag, rs in by_tag.items():
        mism = [
            {"nuhat": list(r.nuhat), "nu": list(nu), "kernel": a, "oracle": b}
            for r in rs for nu, a, b in r.mismatches
        ]
        checks.append({
            "name": f"{tag}:oracle_equivalence",
            "passed": not mism,
            "detail": {"weights": len(rs), "queries": sum(r.checked for r in rs), "mismatches": mism},
        })
        checks.append({"name": f"{tag}:full_D_redundancy", "passed": all(r.full_D_ok for r in rs), "detail": {}})
        checks.append({"name": f"{tag}:sum_rule", "passed": all(r.sum_rule_ok for r in rs), "detail": {}})
        if tag.startswith("spin:"):
            checks.append({
                "name": f"{tag}:multiplicity_free",
                "passed": all(r.multiplicity_free for r in rs),
                "detail": {},
            })
    for name, ok, detail in structural_checks(level) + [cache_check()]:
        checks.append({"name": name, "passed": ok, "detail": detail})
    return {"level": level, "passed": all(c["passed"] for c in checks), "checks": checks}
