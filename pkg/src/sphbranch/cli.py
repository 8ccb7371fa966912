"""Command-line interface: ``sphbranch <command> [flags]``.

JSON goes to stdout (sorted keys, so identical queries give identical
bytes apart from the ``timing`` field); diagnostics go to stderr.

Exit codes: 0 success, 1 usage error, 2 verification mismatch, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from .irrep import DEFAULT_MAX_DIM, DimensionCapExceeded
from .orbits import EnumerationCapExceeded
from .pairs import PairError

EXIT_OK, EXIT_USAGE, EXIT_MISMATCH, EXIT_CAP = 0, 1, 2, 3
CACHE_ENV = "SPHBRANCH_CACHE_DIR"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for mismatches here
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class QueryConfig:
    pair: str
    nu: tuple | None = None
    nuhat: tuple | None = None
    verify: bool = False
    full_D: bool = False
    emit_basis: bool = False
    max_dim: int = DEFAULT_MAX_DIM
    cache_dir: str | None = None
    jobs: int = 1
    extra: dict = field(default_factory=dict)


def parse_weight(text) -> tuple:
    """'[1,0,2]', '1,0,2' or '1 0 2' (or a JSON list) to a tuple of ints."""
    if isinstance(text, (list, tuple)):
        items = list(text)
    else:
        s = str(text).strip().strip("[]()")
        items = [x for x in s.replace(",", " ").split()] if s else []
    try:
        out = tuple(int(x) for x in items)
    except (TypeError, ValueError):
        raise UsageError(f"bad weight {text!r}: expected integers") from None
    if any(x < 0 for x in out):
        raise UsageError(f"weight {out} has a negative Dynkin label")
    return out


def _pair(tag):
    from .pairs import make_pair

    if not tag:
        raise UsageError("--pair is required")
    try:
        return make_pair(tag)
    except PairError as e:
        raise UsageError(str(e)) from None


def _check_rank(rs, lam, what):
    if len(lam) != rs.rank:
        raise UsageError(f"{what} needs {rs.rank} Dynkin labels for {rs.label}, got {len(lam)}")


def _root_str(names, coeffs) -> str:
    terms = []
    for name, c in zip(names, coeffs):
        if c:
            terms.append(("" if c == 1 else "-" if c == -1 else str(c)) + name)
    s = "+".join(terms).replace("+-", "-")
    return s or "0"


def _fmt_q(x) -> str:
    from .linalg import to_fraction

    f = to_fraction(x)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def _divisor_table(p, y0):
    from .orbits import divisor_set

    G, hat = p.G, p.hat
    gnames = [f"a{i + 1}" for i in range(G.rank)]
    hnames = [f"ahat{i + 1}" for i in range(hat.rank)]
    ds = divisor_set(p, y0)
    d0 = set(ds.labels("D0"))
    rows = []
    for e in ds.D:
        img = G.root_coeffs[e.image]
        rows.append({
            "alpha": hnames[e.alpha],
            "in_D0": e.alpha in d0,
            "y0_alpha": _root_str(hnames, hat.root_coeffs[e.y0_alpha]),
            "minus_rho_y0_alpha": _root_str(gnames, img),
            "minus_rho_y0_alpha_ambient": [_fmt_q(x) for x in G.roots[e.image]],
            "beta_plus": _root_str(hnames, hat.root_coeffs[e.beta_plus]),
            "beta_minus": _root_str(hnames, hat.root_coeffs[e.beta_minus]),
            "coset": e.coset,
        })
    return ds, rows


def cmd_pair_info(cfg: QueryConfig) -> tuple[dict, int]:
    from .orbits import enumerate_cosets, find_y0, stabilizer_dim

    p = _pair(cfg.pair)
    G, hat = p.G, p.hat
    gnames = [f"a{i + 1}" for i in range(G.rank)]
    y0 = find_y0(p)
    ds, rows = _divisor_table(p, y0)
    refs = []
    for w in p.reference_y0_words:
        _, ref_rows = _divisor_table(p, hat.element(w))
        refs.append({"word": [i + 1 for i in w], "divisors": ref_rows})
    pos = range(G.num_positive)
    report = {
        "pair": p.tag,
        "G_hat": hat.label,
        "G": G.label,
        "dim_G_hat": p.dim_hat,
        "dim_G": p.dim_G,
        "simple_images": [gnames[j] for j in p.simple_images],
        "rho_dynkin": [list(r) for r in p.rho_dynkin],
        "phi1_positive": [_root_str(gnames, G.root_coeffs[k]) for k in pos if k in p.phi1],
        "phi2_positive": [_root_str(gnames, G.root_coeffs[k]) for k in pos if k in p.phi2],
        "cosets": len(enumerate_cosets(p)),
        "y0_word": [i + 1 for i in y0.reduced_word()],
        "y0_length": y0.length(),
        "stabilizer_dim_y0": stabilizer_dim(p, y0),
        "D": [p.hat_simple_name(a) for a in ds.labels("D")],
        "D0": [p.hat_simple_name(a) for a in ds.labels("D0")],
        "divisors": rows,
        "reference_words": refs,
    }
    return report, EXIT_OK


def _pair_weights(cfg):
    p = _pair(cfg.pair)
    if cfg.nuhat is None:
        raise UsageError("--nuhat is required")
    _check_rank(p.hat, cfg.nuhat, "nuhat")
    if cfg.nu is not None:
        _check_rank(p.G, cfg.nu, "nu")
    return p


def cmd_mult(cfg: QueryConfig) -> tuple[dict, int]:
    from .mult import theorem1_multiplicity
    from .oracle import oracle_multiplicity

    p = _pair_weights(cfg)
    if cfg.nu is None:
        raise UsageError("--nu is required")
    t = time.perf_counter()
    wit = theorem1_multiplicity(
        p, cfg.nu, cfg.nuhat, full_D=cfg.full_D, max_dim=cfg.max_dim, cache_dir=cfg.cache_dir
    )
    out = {"pair": p.tag, "nu": list(cfg.nu), "nuhat": list(cfg.nuhat)}
    out.update(wit.to_json(p.G, emit_basis=cfg.emit_basis))
    code = EXIT_OK
    if cfg.verify:
        orc = oracle_multiplicity(p, cfg.nu, cfg.nuhat)
        out["oracle"] = orc
        out["match"] = orc == wit.dimension and wit.check()
        if not out["match"]:
            code = EXIT_MISMATCH
    out["timing"] = round(time.perf_counter() - t, 3)
    return out, code


def cmd_branch(cfg: QueryConfig) -> tuple[dict, int]:
    from .chars import weyl_dim
    from .mult import sum_rule_terms
    from .oracle import branch_decompose

    p = _pair_weights(cfg)
    t = time.perf_counter()
    res = branch_decompose(p, cfg.nuhat)
    terms = [
        {"nu": list(nu), "multiplicity": m, "dim": weyl_dim(p.G, nu)}
        for nu, m in sorted(res.mults.items()) if m
    ]
    out = {
        "pair": p.tag,
        "nuhat": list(cfg.nuhat),
        "dim": weyl_dim(p.hat, cfg.nuhat),
        "terms": terms,
        "provenance": res.provenance,
    }
    code = EXIT_OK
    if cfg.verify:
        # the module restricted to G is the dual of the one Hom(V_nu, V_nuhat^*) sees
        kern = sum_rule_terms(p, p.hat.dual_weight(cfg.nuhat), max_dim=cfg.max_dim, cache_dir=cfg.cache_dir)
        oracle = {nu: m for nu, m in res.mults.items() if m}
        out["match"] = kern == oracle
        if not out["match"]:
            code = EXIT_MISMATCH
    out["timing"] = round(time.perf_counter() - t, 3)
    return out, code


def cmd_orbit_graph(cfg: QueryConfig, dot: str | None = None) -> tuple[dict, int]:
    from .orbits import orbit_graph

    p = _pair(cfg.pair)
    g = orbit_graph(p)
    out = {
        "pair": p.tag,
        "vertices": [
            {"index": c.index, "ell_m": c.ell_m, "dim": c.orbit_dim, "rep": [i + 1 for i in c.rep.word]}
            for c in g.cosets
        ],
        "edges": [{"from": s, "to": d, "label": p.hat_simple_name(a)} for s, d, a in g.edges],
    }
    if dot:
        Path(dot).write_text(g.to_dot())
        out["dot"] = str(dot)
    return out, EXIT_OK


def cmd_selftest(level: str, jobs: int) -> tuple[dict, int]:
    from . import selftest

    report = selftest.run(level, jobs)
    for c in report["checks"]:
        if not c["passed"]:
            print(f"FAILED {c['name']}: {json.dumps(c['detail'], sort_keys=True)}", file=sys.stderr)
    return report, EXIT_OK if report["passed"] else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="JSON file of defaults; flags override it")
    common.add_argument("--pair", help='pair tag, e.g. "tensor:A2", "sl-sp:3", "spin:4", "g2", "f4"')
    common.add_argument("--cache-dir", help=f"cache for built modules (default ${CACHE_ENV})")
    common.add_argument("--max-dim", type=int, help=f"cap on module dimension (default {DEFAULT_MAX_DIM})")
    common.add_argument("--jobs", type=int, help="worker processes for grid commands")

    ap = _Parser(prog="sphbranch", description="Branching multiplicities for spherical pairs of minimal rank.")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.add_parser("pair-info", parents=[common], help="derived data of a pair")
    m = sub.add_parser("mult", parents=[common], help="one multiplicity space")
    m.add_argument("--nu")
    m.add_argument("--nuhat")
    m.add_argument("--verify", action="store_true", help="compare with the character oracle")
    m.add_argument("--full-D", action="store_true", dest="full_D", help="impose conditions over all of D")
    m.add_argument("--emit-basis", action="store_true", help="include an explicit basis")
    b = sub.add_parser("branch", parents=[common], help="full decomposition of V(nuhat)")
    b.add_argument("--nuhat")
    b.add_argument("--verify", action="store_true", help="recompute every term from kernels")
    g = sub.add_parser("orbit-graph", parents=[common], help="G-orbits on the flag variety")
    g.add_argument("--dot", help="write the graph in DOT format to this path")
    s = sub.add_parser("selftest", parents=[common], help="acceptance grid and invariants")
    s.add_argument("--level", choices=("quick", "full"), default="quick")
    return ap


def _config(args) -> QueryConfig:
    file_cfg = {}
    if args.config:
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except (OSError, ValueError) as e:
            raise UsageError(f"cannot read config {args.config}: {e}") from None
        if not isinstance(file_cfg, dict):
            raise UsageError("config file must hold a JSON object")

    def pick(name, default=None):
        v = getattr(args, name, None)
        if v is None or v is False:
            return file_cfg.get(name.replace("_", "-"), file_cfg.get(name, default))
        return v

    nu, nuhat = pick("nu"), pick("nuhat")
    max_dim = pick("max_dim", DEFAULT_MAX_DIM)
    jobs = pick("jobs", 1)
    if not isinstance(max_dim, int) or max_dim <= 0:
        raise UsageError("--max-dim must be a positive integer")
    if not isinstance(jobs, int) or jobs <= 0:
        raise UsageError("--jobs must be a positive integer")
    return QueryConfig(
        pair=pick("pair"),
        nu=None if nu is None else parse_weight(nu),
        nuhat=None if nuhat is None else parse_weight(nuhat),
        verify=bool(pick("verify", False)),
        full_D=bool(pick("full_D", False)),
        emit_basis=bool(pick("emit_basis", False)),
        max_dim=max_dim,
        cache_dir=pick("cache_dir") or os.environ.get(CACHE_ENV) or None,
        jobs=jobs,
    )


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if not args.command:
            ap.print_help(sys.stderr)
            return EXIT_USAGE
        cfg = _config(args)
        if args.command == "pair-info":
            out, code = cmd_pair_info(cfg)
        elif args.command == "mult":
            out, code = cmd_mult(cfg)
        elif args.command == "branch":
            out, code = cmd_branch(cfg)
        elif args.command == "orbit-graph":
            out, code = cmd_orbit_graph(cfg, args.dot)
        else:
            out, code = cmd_selftest(args.level, cfg.jobs)
    except UsageError as e:
        print(f"sphbranch: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"sphbranch: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionCapExceeded, EnumerationCapExceeded) as e:
        print(f"sphbranch: resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    sys.stdout.write(json.dumps(out, sort_keys=True, indent=2) + "\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
