"""Command-line driver: ``sjw check|h2|hc|decompose|thm1|uce|sweep``.

Exit codes: 0 success/pass, 2 a checked property failed, 1 operational error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from typing import List, Optional, Sequence

from . import __version__
from .dsl import DSLError, canonical, evaluate, expand_template, parse, to_text
from .superalgebra import AlgebraError, SuperAlgebra, check

SCHEMA = 1
IDENTITIES = ("jordan", "lie", "poisson", "contact", "jordan-bracket", "supercommutative", "associative")


class PropertyFailure(Exception):
    pass


# --- helpers ---------------------------------------------------------------

def _lie(a: SuperAlgebra) -> SuperAlgebra:
    from .constructions import lie_view
    if "lie" in a.kinds:
        return a
    return lie_view(a)


def _jordan(a: SuperAlgebra) -> SuperAlgebra:
    from .jordancyclic import as_jordan
    return as_jordan(a)


def _basis_out(coords, space, limit=40):
    if space.dim > limit:
        return None
    return coords.describe_space(space)


def run_check(a: SuperAlgebra, args) -> dict:
    rep = check(a, args.identity, seed=args.seed)
    out = rep.to_dict()
    out["passed"] = rep.passed
    return out


def run_h2(a: SuperAlgebra, args) -> dict:
    from .liecohomology import graded_two_cocycles, h2, stabilized, windowed_h2
    l = _lie(a)
    if args.window is None:
        rep = h2(l)
        out = rep.to_dict()
        if not l.windowed():
            out["cocycle_basis"] = _basis_out(rep.coords, rep.cocycle_basis)
        return out
    if l.meta.get("grading_element"):
        _, table, rep = graded_two_cocycles(l, args.window)
        out = rep.to_dict()
        out["solver"] = "graded"
        return out
    table = []
    for r in range(1, args.window + 1):
        rep = windowed_h2(l, r)
        table.append({"radius": r, "dim_c2": rep.dim_cocycles, "dim_b2": rep.dim_coboundaries, "dim_h2": rep.dim_h2})
    last = table[-1]
    return {"dim_c2": last["dim_c2"], "dim_b2": last["dim_b2"], "dim_h2": last["dim_h2"], "window": args.window,
            "table": table, "stabilized": stabilized([t["dim_h2"] for t in table]), "estimate": True,
            "solver": "ungraded"}


def run_hc(a: SuperAlgebra, args) -> dict:
    from .jordancyclic import hc, windowed_hc
    j = _jordan(a)
    if j.windowed():
        rep = windowed_hc(j, args.window)
    else:
        rep = hc(j)
    out = rep.to_dict()
    out["cocycle_basis"] = _basis_out(rep.coords, rep.cocycles)
    return out


def run_decompose(a: SuperAlgebra, args) -> dict:
    from .jordancyclic import decompose_hc
    j = a if "kantor_base" in a.meta else None
    if j is None:
        raise AlgebraError("decompose needs a Kantor double, e.g. kantor(...)")
    out = decompose_hc(j).to_dict()
    if not out["consistent"]:
        raise PropertyFailure(out)
    return out


def run_thm1(a: SuperAlgebra, args) -> dict:
    from .jordancyclic import thm1_check
    out = thm1_check(_jordan(a))
    if not out["consistent"]:
        raise PropertyFailure(out)
    return out


def run_uce(a: SuperAlgebra, args) -> dict:
    from .liecohomology import h2, uce_center_dim
    l = _lie(a)
    u = uce_center_dim(l)
    d = h2(l).dim_h2
    out = {"uce_center_dim": u, "dim_h2": d, "consistent": u == d}
    if u != d:
        raise PropertyFailure(out)
    return out


RUNNERS = {"check": run_check, "h2": run_h2, "hc": run_hc, "decompose": run_decompose, "thm1": run_thm1,
           "uce": run_uce}
# main column reported by sweeps
MAIN_KEY = {"check": "passed", "h2": "dim_h2", "hc": "dim_hc", "decompose": "dim_hc", "thm1": "dim_hc",
            "uce": "uce_center_dim"}


# --- cache -----------------------------------------------------------------

def cache_key(expr: str, command: str, window, extra=None) -> str:
    blob = json.dumps([expr, command, window, extra, SCHEMA], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


def _cache_get(args, key):
    if args.no_cache:
        return None
    path = os.path.join(args.cache_dir, key + ".json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def _cache_put(args, key, report):
    if args.no_cache:
        return
    os.makedirs(args.cache_dir, exist_ok=True)
    tmp = os.path.join(args.cache_dir, key + ".tmp")
    with open(tmp, "w") as fh:
        json.dump(report, fh, sort_keys=True)
    os.replace(tmp, os.path.join(args.cache_dir, key + ".json"))


def _extra(args):
    if args.command == "check":
        return {"identity": args.identity, "seed": args.seed}
    return None


def compute(command: str, expr_text: str, args) -> dict:
    """Run one command on one expression, through the cache.  Returns a Report dict."""
    t0 = time.perf_counter()
    expr = canonical(expr_text)
    key = cache_key(expr, command, args.window, _extra(args))
    cached = _cache_get(args, key)
    if cached is not None:
        cached["cache_hit"] = True
        cached["timings"] = {"seconds": round(time.perf_counter() - t0, 6)}
        return cached
    a = evaluate(parse(expr), expr)
    status = "pass"
    try:
        result = RUNNERS[command](a, args)
    except PropertyFailure as exc:
        result = exc.args[0]
        status = "fail"
    if command == "check" and not result.get("passed"):
        status = "fail"
    report = {"schema": SCHEMA, "tool_version": __version__, "command": command, "expr": expr,
              "window": args.window, "status": status, "result": result}
    _cache_put(args, key, report)
    report = dict(report, cache_hit=False, timings={"seconds": round(time.perf_counter() - t0, 6)})
    return report


# --- output ----------------------------------------------------------------

def _human(report: dict) -> str:
    res = report["result"]
    head = "%s %s: %s" % (report["command"], report["expr"], report["status"].upper())
    lines = [head]
    for k, v in res.items():
        if k in ("cocycle_basis", "table") or v is None:
            continue
        if isinstance(v, (dict, list)):
            v = json.dumps(v)
        lines.append("  %s: %s" % (k, v))
    if res.get("table"):
        lines.append("  table:")
        for row in res["table"]:
            lines.append("    " + ", ".join("%s=%s" % kv for kv in row.items()))
    return "\n".join(lines)


def _sweep_csv(rows: List[dict]) -> str:
    keys: List[str] = []
    for r in rows:
        for k in r:
            if k not in keys:
                keys.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=keys or ["param"], lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def run_sweep(args) -> dict:
    from .liecohomology import stabilized
    t0 = time.perf_counter()
    cells = expand_template(args.template)
    rows = []
    for value, e in cells:
        text = to_text(e)
        try:
            rep = compute(args.sweep_command, text, args)
            row = {"param": value, "expr": text, "status": rep["status"]}
            for k, v in rep["result"].items():
                if isinstance(v, (int, bool, str)) or v is None:
                    row[k] = v
        except (DSLError, AlgebraError, ArithmeticError, ValueError) as exc:
            row = {"param": value, "expr": text, "status": "error", "error": str(exc)}
        rows.append(row)
    key = MAIN_KEY[args.sweep_command]
    col = [r.get(key) for r in rows if r["status"] != "error"]
    return {"schema": SCHEMA, "tool_version": __version__, "command": "sweep", "sweep_command": args.sweep_command,
            "template": args.template, "window": args.window, "rows": rows, "column": key,
            "stabilized": stabilized(col), "estimate": True,
            "timings": {"seconds": round(time.perf_counter() - t0, 6)}}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--csv", action="store_true", help="CSV output (sweep only)")
    common.add_argument("--window", type=int, default=None, help="window / degree bound")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--cache-dir", default="./.sjw-cache")
    common.add_argument("--no-cache", action="store_true")
    p = argparse.ArgumentParser(prog="sjw", description="Exact cohomology of Lie and Jordan superalgebras.")
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="verify an identity")
    c.add_argument("expr")
    c.add_argument("identity", choices=IDENTITIES)
    for name, text in (("h2", "second Lie cohomology"), ("hc", "cyclic homology of a Jordan superalgebra"),
                       ("decompose", "split HC of a Kantor double"), ("thm1", "compare H2(TKK(J)) with HC(J)"),
                       ("uce", "center of the universal central extension")):
        s = sub.add_parser(name, parents=[common], help=text)
        s.add_argument("expr")
    s = sub.add_parser("sweep", parents=[common], help="run a command over a template with one range a..b")
    s.add_argument("sweep_command", choices=sorted(RUNNERS))
    s.add_argument("template")
    s.add_argument("identity", nargs="?", default="jordan", choices=IDENTITIES)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            rep = run_sweep(args)
            if args.csv:
                sys.stdout.write(_sweep_csv(rep["rows"]))
            elif args.json:
                print(json.dumps(rep, indent=2, sort_keys=True))
            else:
                print("sweep %s %s (column %s, stabilized=%s)" % (rep["sweep_command"], rep["template"],
                                                                  rep["column"], rep["stabilized"]))
                for r in rep["rows"]:
                    print("  " + ", ".join("%s=%s" % kv for kv in r.items()))
            return 0
        rep = compute(args.command, args.expr, args)
    except (DSLError, AlgebraError, ArithmeticError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1
    print(json.dumps(rep, indent=2, sort_keys=True) if args.json else _human(rep))
    return 0 if rep["status"] == "pass" else 2


if __name__ == "__main__":
    sys.exit(main())
