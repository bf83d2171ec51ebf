"""``qca`` command line: eval, table and check."""

from __future__ import annotations

import argparse
import sys
import time
from typing import Callable, Sequence

from . import suites
from .cayley import meet, vee
from .evaluate import Evaluator, Value, evaluate
from .exterior import Multivector, TensorPoly, basis, blade_name, blade_order, format_terms, wedge
from .hopf import NoAntipode
from .pairing import cmul, dotted_wedge
from .parser import BinOp, Blade, Call, Neg, Node, parse
from .renorm import rmul
from .scalars import fmt_scalar
from .serial import AlgebraConfig, ConfigError, build_config, dumps, multivector_json, tensor_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _add_config_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dim", type=int, help="dimension of V (1..9)")
    p.add_argument("--config", help="JSON config file")
    for slot in ("B", "C", "F", "BF", "Z"):
        p.add_argument(f"--{slot}", help=f"{slot} as inline JSON or a path to a JSON file")
    p.add_argument("--json", action="store_true", help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qca", description="Exact quantum Clifford algebra kernel.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate an expression")
    _add_config_args(p)
    p.add_argument("expr")

    p = sub.add_parser("table", help="multiplication table of a product on the blade basis")
    _add_config_args(p)
    p.add_argument("--product", default="wedge", choices=sorted(PRODUCTS))

    p = sub.add_parser("check", help="run an acceptance suite")
    _add_config_args(p)
    p.add_argument("--suite", default="all", choices=[*suites.SUITES, "all"])
    p.add_argument("--seed", type=int, help="RNG seed (default: QCA_SEED or a fixed value)")
    return ap


def _max_index(node: Node) -> int:
    if isinstance(node, Blade):
        return max(node.indices, default=1)
    if isinstance(node, Neg):
        return _max_index(node.operand)
    if isinstance(node, BinOp):
        return max(_max_index(node.left), _max_index(node.right))
    if isinstance(node, Call):
        return max((_max_index(a) for a in node.args), default=1)
    return 1


def _config(args: argparse.Namespace, default_dim: int = 2) -> AlgebraConfig:
    return build_config(args.dim, args.config, default_dim=default_dim,
                        B=args.B, C=args.C, F=args.F, BF=args.BF, Z=args.Z)


def _value_json(v: Value) -> dict:
    if isinstance(v, Multivector):
        return multivector_json(v)
    if isinstance(v, TensorPoly):
        return tensor_json(v)
    return {"scalar": fmt_scalar(v)}


def _value_text(v: Value) -> str:
    if isinstance(v, (Multivector, TensorPoly)):
        return str(v)
    return fmt_scalar(v)


def cmd_eval(args: argparse.Namespace) -> int:
    node = parse(args.expr)
    cfg = _config(args, default_dim=_max_index(node))
    v = evaluate(parse(args.expr, cfg.dim), cfg)
    print(dumps(_value_json(v)) if args.json else _value_text(v))
    return EXIT_OK


def _need(cfg: AlgebraConfig, slot: str, product: str):
    f = getattr(cfg, slot)
    if f is None:
        raise ConfigError(f"product {product} needs --{slot}")
    return f


PRODUCTS: dict[str, Callable[[AlgebraConfig], Callable[[Multivector, Multivector], Multivector]]] = {
    "wedge": lambda cfg: wedge,
    "cmul": lambda cfg: (lambda u, v, B=_need(cfg, "B", "cmul"): cmul(u, v, B)),
    "dotted": lambda cfg: (lambda u, v, F=_need(cfg, "F", "dotted"): dotted_wedge(u, v, F)),
    "rmul": lambda cfg: (lambda u, v, BF=Evaluator(cfg).rpairing(): rmul(u, v, BF)),
    "meet": lambda cfg: meet,
    "vee": lambda cfg: vee,
}


def cmd_table(args: argparse.Namespace) -> int:
    cfg = _config(args)
    f = PRODUCTS[args.product](cfg)
    bas = basis(cfg.dim)
    cells = [[f(x, y) for y in bas] for x in bas]
    names = [blade_name(m) for m in blade_order(cfg.dim)]
    if args.json:
        print(dumps({"dim": cfg.dim, "product": args.product, "blade_order": names,
                     "cells": [[multivector_json(c) for c in row] for row in cells]}))
        return EXIT_OK
    text = [[format_terms(c) or "0" for c in row] for row in cells]
    w0 = max(len(n) for n in names)
    widths = [max(len(names[j]), *(len(r[j]) for r in text)) for j in range(len(names))]
    print(" " * w0 + " | " + " | ".join(n.ljust(w) for n, w in zip(names, widths)))
    print("-" * (w0 + 3 + sum(widths) + 3 * (len(widths) - 1)))
    for n, row in zip(names, text):
        print(n.ljust(w0) + " | " + " | ".join(c.ljust(w) for c, w in zip(row, widths)))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    ids = sorted({k for ks in suites.SUITES.values() for k in ks}) if args.suite == "all" else suites.SUITES[args.suite]
    failed = 0
    report = []
    for k in ids:
        title = suites.CRITERIA[k][0]
        t0 = time.perf_counter()
        cases = suites.run_criterion(k, args.seed)
        dt = time.perf_counter() - t0
        bad = [c for c in cases if not c.ok]
        failed += len(bad)
        report.append({"criterion": k, "title": title, "seconds": round(dt, 3),
                       "cases": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in cases]})
        if not args.json:
            for c in cases:
                line = f"{'PASS' if c.ok else 'FAIL'}  [{k}] {c.name}"
                if c.detail:
                    line += f"  ({c.detail})"
                print(line)
            print(f"criterion {k} ({title}): {len(cases) - len(bad)}/{len(cases)} passed in {dt:.2f}s")
    if args.json:
        print(dumps({"suite": args.suite, "failed": failed, "criteria": report}))
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"eval": cmd_eval, "table": cmd_table, "check": cmd_check}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NoAntipode as exc:
        print(f"qca: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except ValueError as exc:
        # ParseError, ConfigError, EvalError and DimensionError are all ValueErrors
        print(f"qca: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
