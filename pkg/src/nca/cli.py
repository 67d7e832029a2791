"""Command line entry point: ``nca primes | verify | height``.

Reports are JSON with rationals as ``"p/q"`` strings.  Exit status is 0
when every check passed or was skipped, 1 if any failed and 2 for bad
input.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from .algebra import AlgebraError, NotAUnit
from .bundles_heights import (
    NotFree,
    ZeroGram,
    dual_order_height,
    duality_check,
    free_submodule,
    height,
    orthogonal_complement,
    untwisted_duality_check,
    untwisted_height,
    dual_order_lattice,
)
from .corpus import order_from_spec
from .exact_linalg import rat_str
from .orders_ideals import primes_above
from .suites import SUITES, coefficient_bound, run_suite, summarize


class ConfigError(ValueError):
    pass


def load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc


def load_config(path):
    cfg = load_json(path)
    if not isinstance(cfg, dict) or "order" not in cfg:
        raise ConfigError("workspace config needs an 'order' entry")
    try:
        order = order_from_spec(cfg.get("algebra"), cfg["order"])
    except (AlgebraError, ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid order: {exc}") from exc
    return cfg, order


def cmd_primes(cfg, order, args):
    rows = []
    for q in primes_above(order, args.p):
        rows.append({"p": q.p, "index": q.index, "capacity": q.capacity, "norm": q.norm,
                     "residue_dim": q.residue_dim, "center_dim": q.center_dim,
                     "simple_module_dim": q.simple_module_dim})
    report = {"command": "primes", "inputs": {"order": order.name, "p": args.p},
              "radical_dim": len(order.local_structure(args.p).radical_basis), "primes": rows}
    return report, True


def cmd_verify(cfg, order, args):
    seed = args.seed if args.seed is not None else int(cfg.get("seed", 7))
    bound = coefficient_bound(args.coeff_bound)
    records = run_suite(order, args.suite, args.count, seed, bound)
    counts = summarize(records)
    report = {"command": "verify",
              "inputs": {"order": order.name, "suite": args.suite, "count": args.count, "seed": seed,
                         "coeff_bound": bound},
              "summary": counts, "records": records}
    return report, counts["fail"] == 0


def _parse_submodule(order, spec):
    A = order.algebra
    if not isinstance(spec, dict) or "generators" not in spec:
        raise ConfigError("submodule spec needs 'generators'")
    n = spec.get("ambient")
    gens = spec["generators"]
    try:
        gens = [[A.element([Fraction(c) for c in x]) for x in g] for g in gens]
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"bad submodule element: {exc}") from exc
    if n is None:
        n = len(gens[0]) if gens else 0
    return gens, int(n)


def _hv(h):
    return {"h_squared": rat_str(h.h_squared), "log_h": h.log_h, "rank": h.rank}


def cmd_height(cfg, order, args):
    gens, n = _parse_submodule(order, load_json(args.submodule))
    A = order.algebra
    V = free_submodule(A, gens, n)
    W = orthogonal_complement(V)
    out = {"V": _hv(height(order, V)), "V_perp": _hv(height(order, W)),
           "dual_V": _hv(dual_order_height(order, V)), "dual_V_perp": _hv(dual_order_height(order, W))}
    try:
        out["untwisted_V"] = _hv(untwisted_height(order, V))
        Wb = orthogonal_complement(V, twisted=False)
        out["untwisted_dual_V_perp"] = _hv(untwisted_height(order, Wb, dual_order_lattice(order, "reduced")))
    except ZeroGram as exc:
        out["untwisted_V"] = {"degenerate": str(exc)}
    checks = [v.to_json() for v in duality_check(order, V)] + [v.to_json() for v in untwisted_duality_check(order, V)]
    report = {"command": "height", "inputs": {"order": order.name, "ambient": n, "rank": V.rank},
              "heights": out, "checks": checks}
    return report, all(c["status"] != "fail" for c in checks)


def _text(report):
    lines = [f"{report['command']}: {json.dumps(report['inputs'], sort_keys=True)}"]
    if report["command"] == "primes":
        lines.append(f"radical dim {report['radical_dim']}")
        for r in report["primes"]:
            lines.append(f"  P({r['p']},{r['index']}) kappa={r['capacity']} N={r['norm']} "
                         f"residue_dim={r['residue_dim']} center_dim={r['center_dim']}")
    elif report["command"] == "verify":
        for rec in report["records"]:
            for c in rec["checks"]:
                lines.append(f"  case {rec['case']:3d} {c['name']:<24} {c['status']:<4} "
                             f"{json.dumps(c.get('lhs'))} vs {json.dumps(c.get('rhs'))}")
        lines.append(f"summary {report['summary']}")
    else:
        for k, v in report["heights"].items():
            lines.append(f"  {k:<22} {v.get('h_squared', v)}")
        for c in report["checks"]:
            lines.append(f"  {c['name']:<22} {c['status']}")
    return "\n".join(lines)


def build_parser():
    ap = argparse.ArgumentParser(prog="nca", description="Exact arithmetic checks for orders in semisimple algebras")
    ap.add_argument("--format", choices=["json", "text"], default="json")
    ap.add_argument("--timing", action="store_true", help="add wall-clock seconds to the report")
    ap.add_argument("--output", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("primes", help="prime ideals above p")
    p.add_argument("--config", required=True)
    p.add_argument("--p", type=int, required=True)

    v = sub.add_parser("verify", help="randomized exact verification suite")
    v.add_argument("--config", required=True)
    v.add_argument("--suite", choices=SUITES, required=True)
    v.add_argument("--count", type=int, default=50)
    v.add_argument("--seed", type=int)
    v.add_argument("--coeff-bound", type=int)

    h = sub.add_parser("height", help="heights of a submodule and its complement")
    h.add_argument("--config", required=True)
    h.add_argument("--submodule", required=True)
    return ap


COMMANDS = {"primes": cmd_primes, "verify": cmd_verify, "height": cmd_height}


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        cfg, order = load_config(args.config)
        report, ok = COMMANDS[args.command](cfg, order, args)
    except (ConfigError, NotFree, NotAUnit, AlgebraError) as exc:
        print(json.dumps({"command": args.command, "error": type(exc).__name__, "message": str(exc)}),
              file=sys.stderr)
        return 2
    except ValueError as exc:  # e.g. p not prime
        print(json.dumps({"command": args.command, "error": "ValueError", "message": str(exc)}), file=sys.stderr)
        return 2
    report["pass"] = ok
    output = args.output or cfg.get("output")
    if args.timing:
        report["timing"] = round(time.perf_counter() - start, 3)
    text = _text(report) if args.format == "text" else json.dumps(report, indent=2, sort_keys=True)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
