"""Compiled kernels against the pure-Python fallback.

Each workload runs in a fresh interpreter, once with the extension and once
with SPHBRANCH_PURE=1, so module-level caches never carry over.  Results must
agree exactly; the table reports best-of-N wall time.

    python benchmarks/bench_kernels.py [--repeat 3] [--json out.json]
"""

import argparse
import json
import os
import subprocess
import sys

WORKLOADS = {
    "build B3 (2,1,2)": "from sphbranch.weyl import build_root_system as B; from sphbranch.irrep import build_irrep; "
    "m = build_irrep(B('B3'), (2,1,2)); out = sorted(m.dims.items())",
    "build G2 (3,2)": "from sphbranch.weyl import build_root_system as B; from sphbranch.irrep import build_irrep; "
    "m = build_irrep(B('G2'), (3,2)); out = sorted(m.dims.items())",
    "build C3 (2,1,1)": "from sphbranch.weyl import build_root_system as B; from sphbranch.irrep import build_irrep; "
    "m = build_irrep(B('C3'), (2,1,1)); out = sorted(m.dims.items())",
    "nullspace 60x60": "import random; from sphbranch import linalg; random.seed(1); "
    "rows = [[linalg.rational(random.randint(-5, 5), random.randint(1, 3)) for _ in range(60)] for _ in range(45)]; "
    "out = [[str(x) for x in r] for r in linalg.nullspace(rows, 60)]",
    "mult sl-sp:3 (1,0,2,0,1)": "from sphbranch import make_pair, theorem1_multiplicity as T; from sphbranch.oracle import candidate_weights; "
    "p = make_pair('sl-sp:3'); out = [(nu, T(p, nu, (1,0,2,0,1)).dimension) for nu in candidate_weights(p, (1,0,2,0,1))]",
    "mult spin:4 (1,2,1,2)": "from sphbranch import make_pair, theorem1_multiplicity as T; from sphbranch.oracle import candidate_weights; "
    "p = make_pair('spin:4'); out = [(nu, T(p, nu, (1,2,1,2)).dimension) for nu in candidate_weights(p, (1,2,1,2))]",
}

RUNNER = """
import json, time
t = time.perf_counter()
{code}
from sphbranch import linalg
print(json.dumps({{"kernels": linalg.KERNELS, "seconds": time.perf_counter() - t, "out": repr(out)}}))
"""


def run_once(code: str, pure: bool) -> dict:
    env = dict(os.environ)
    env["SPHBRANCH_PURE"] = "1" if pure else "0"
    r = subprocess.run([sys.executable, "-c", RUNNER.format(code=code)], env=env,
                       capture_output=True, text=True, check=True)
    return json.loads(r.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--only", help="substring filter on workload names")
    ap.add_argument("--json", help="also write the rows to this file")
    args = ap.parse_args(argv)
    rows = []
    ok = True
    print(f"{'workload':28s} {'compiled':>10s} {'pure':>10s} {'speedup':>8s}")
    for name, code in WORKLOADS.items():
        if args.only and args.only not in name:
            continue
        comp = [run_once(code, False) for _ in range(args.repeat)]
        pure = [run_once(code, True) for _ in range(args.repeat)]
        if comp[0]["kernels"] != "cython":
            print("extension not built; the compiled column is the fallback too", file=sys.stderr)
        same = len({r["out"] for r in comp + pure}) == 1
        ok &= same
        tc = min(r["seconds"] for r in comp)
        tp = min(r["seconds"] for r in pure)
        rows.append({"workload": name, "compiled": tc, "pure": tp, "agree": same})
        flag = "" if same else "  MISMATCH"
        print(f"{name:28s} {tc:10.3f} {tp:10.3f} {tp / tc:7.2f}x{flag}")
    if args.json:
        with open(args.json, "w") as f:
            json.dump(rows, f, indent=2)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
