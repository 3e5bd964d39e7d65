"""Command-line interface.

Every command prints one JSON object on stdout and exits with

    0  affirmative (valid / admissible / completed / verified / equivalent / generated)
    1  definitive negative
    2  input error (malformed JSON, failed precondition, scale guard)
    3  internal invariant violation (a bug; details on stderr)
"""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from . import admissibility, completion, corollaries, oracle
from .generate import generate_admissible
from .model import (Instance, InternalError, PartialInstance, Square, cell_symbol_lists,
                    dumps, validate, verify_square)

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    source: Optional[str]
    simple: bool
    seed: int
    output: Optional[str]
    lift_guards: bool
    args: argparse.Namespace


def format_grid(cells: np.ndarray) -> str:
    """Plain-text grid, one row per line, cells as comma-separated symbols."""
    lists = cell_symbol_lists(cells)
    text = [["{" + ",".join(map(str, c)) + "}" for c in row] for row in lists]
    width = max((len(t) for row in text for t in row), default=0)
    return "\n".join(" ".join(t.rjust(width) for t in row) for row in text)


def _load(cfg: RunConfig, path: Optional[str] = None) -> dict:
    src = path if path is not None else cfg.source
    if src is None:
        raise ValueError("no input given (pass a file, '-' for stdin, or --json)")
    if cfg.args.json is not None and path is None:
        text = cfg.args.json
    elif src == "-":
        text = sys.stdin.read()
    else:
        with open(src) as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed JSON: {exc}") from exc


def _instance(cfg: RunConfig) -> Instance:
    return Instance.from_json(_load(cfg))


def _pretty(cfg: RunConfig, title: str, cells: np.ndarray) -> None:
    if cfg.args.pretty:
        print(f"{title}:\n{format_grid(cells)}", file=sys.stderr)


def cmd_validate(cfg: RunConfig):
    inst = _instance(cfg)
    rep = validate(inst, simple_required=cfg.simple)
    out = {"verdict": "valid" if rep.ok else "invalid", "simple": rep.is_simple,
           "report": rep.violations}
    return out, EXIT_OK if rep.ok else EXIT_NO


def cmd_admissible(cfg: RunConfig):
    inst = _instance(cfg)
    res = admissibility.check_admissible(inst, cfg.simple)
    if not res:
        return {"verdict": "not_admissible", "report": [res.reason],
                "symbols": list(res.symbols)}, EXIT_NO
    return {"verdict": "admissible", "witness": res.to_json(), "report": []}, EXIT_OK


def cmd_complete(cfg: RunConfig):
    inst = _instance(cfg)
    res = completion.complete(inst, cfg.simple)
    if not res:
        return {"verdict": "not_admissible", "report": [res.reason]}, EXIT_NO
    _pretty(cfg, "completed square", res.cells)
    return {"verdict": "completed", "square": res.to_json(), "report": []}, EXIT_OK


def cmd_verify(cfg: RunConfig):
    sq = Square.from_json(_load(cfg))
    contains = Instance.from_json(_load(cfg, cfg.args.contains)) if cfg.args.contains else None
    rep = verify_square(sq, contains=contains, simple_required=cfg.simple)
    return ({"verdict": "verified" if rep.ok else "invalid", "simple": rep.is_simple,
             "report": rep.violations}, EXIT_OK if rep.ok else EXIT_NO)


def cmd_oracle(cfg: RunConfig):
    a = cfg.args
    if a.check == "equivalence":
        bounds = oracle.ScaleBounds.parse(a.bounds)
        if cfg.simple and not bounds.simple:
            bounds = oracle.ScaleBounds(**{**bounds.__dict__, "simple": True})
        digest = oracle.CorpusDigest()
        bad = []
        for inst in oracle.enumerate_instances(bounds):
            digest.add(inst)
            flow = bool(admissibility.check_admissible(inst, cfg.simple))
            brute = oracle.brute_extend(inst, cfg.simple) is not None
            wit = oracle.witness_search(inst, cfg.simple) is not None
            if not flow == brute == wit:
                bad.append({"index": digest.count - 1, "flow": flow, "brute": brute,
                            "witness_search": wit, "instance": inst.to_json()})
        out = {"verdict": "discrepancy" if bad else "equivalent", "count": digest.count,
               "digest": digest.hexdigest(), "report": bad}
        print(f"corpus digest {digest.hexdigest()} ({digest.count} instances)", file=sys.stderr)
        return out, EXIT_NO if bad else EXIT_OK
    inst = _instance(cfg)
    if a.check == "extend":
        sq = oracle.brute_extend(inst, cfg.simple)
        if sq is None:
            return {"verdict": "no_extension", "report": []}, EXIT_NO
        _pretty(cfg, "extension", sq.cells)
        return {"verdict": "extended", "square": sq.to_json(), "report": []}, EXIT_OK
    found = oracle.witness_search(inst, cfg.simple)
    if found is None:
        return {"verdict": "no_witness", "report": []}, EXIT_NO
    return {"verdict": "witness", "witness": {"a": found[0], "b": found[1]}, "report": []}, EXIT_OK


def _report_out(rep: corollaries.CorollaryReport, extra=None):
    out = {"verdict": rep.verdict, "report": rep.to_json()}
    out.update(extra or {})
    return out, EXIT_OK if rep.verdict else EXIT_NO


def cmd_corollary(cfg: RunConfig):
    a = cfg.args
    if a.which == "exists":
        if a.n is None or a.k is None or a.lam is None or a.rho is None:
            raise ValueError("exists needs --n, --k, --lambda and --rho")
        rho = [int(x) for x in a.rho.split(",")]
        return _report_out(corollaries.exists_square(a.n, a.k, a.lam, rho, cfg.simple))
    if a.which == "cyclic":
        if a.m is None or a.lam is None:
            raise ValueError("cyclic needs --m and --lambda")
        cells = corollaries.cyclic_simple_square(a.m, a.lam, a.offset)
        _pretty(cfg, "cyclic block", cells)
        return {"verdict": "generated", "cells": cells.tolist(), "report": []}, EXIT_OK
    obj = _load(cfg)
    if a.which == "ryser":
        return _report_out(corollaries.simple_ryser_check(Instance.from_json(obj)))
    if a.which == "hall":
        return _report_out(corollaries.hall_check(Instance.from_json(obj), cfg.simple))
    # evans
    if a.n is None:
        raise ValueError("evans needs --n")
    try:
        p = PartialInstance(int(obj["k"]), int(obj["lambda"]), obj["cells"])
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed partial JSON: {exc}") from exc
    res = corollaries.evans_embed(p, a.n)
    if not res:
        return {"verdict": "rejected", "report": [res.reason]}, EXIT_NO
    _pretty(cfg, "embedding", res.cells)
    return {"verdict": "embedded", "square": res.to_json(), "report": []}, EXIT_OK


def cmd_generate(cfg: RunConfig):
    a = cfg.args
    r = a.n if a.r is None else a.r
    s = a.n if a.s is None else a.s
    insts = [generate_admissible(a.n, a.k, a.lam, r, s, cfg.simple, cfg.seed + t).to_json()
             for t in range(a.count)]
    out = {"verdict": "generated", "report": []}
    if a.count == 1:
        out["instance"] = insts[0]
    else:
        out["instances"] = insts
    return out, EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "admissible": cmd_admissible,
    "complete": cmd_complete,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "corollary": cmd_corollary,
    "generate": cmd_generate,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="latin-forge", description=__doc__,
                                formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, needs_input=True):
        if needs_input:
            sp.add_argument("input", nargs="?", help="instance JSON file, or '-' for stdin")
            sp.add_argument("--json", help="inline instance JSON instead of a file")
        sp.add_argument("--mode", choices=("plain", "simple"), default="plain")
        sp.add_argument("--output", "-o", help="write the JSON result here instead of stdout")
        sp.add_argument("--pretty", action="store_true", help="also print grids to stderr")
        return sp

    common(sub.add_parser("validate", help="check the rectangle's defining properties"))
    common(sub.add_parser("admissible", help="decide admissibility and print a witness"))
    common(sub.add_parser("complete", help="complete the rectangle to a square"))
    v = common(sub.add_parser("verify", help="verify a square"))
    v.add_argument("--contains", help="instance JSON the square must contain")

    o = common(sub.add_parser("oracle", help="brute-force ground truth"))
    o.add_argument("--check", choices=("equivalence", "extend", "witness"), default="equivalence")
    o.add_argument("--bounds", default="n=2,k=2,lambda=1",
                   help="e.g. n=2,k=3,lambda=1..2 (bare numbers are upper bounds)")
    o.add_argument("--no-guard", action="store_true",
                   help="lift oracle scale guards (may run for a very long time)")

    c = sub.add_parser("corollary", help="closed-form special cases")
    c.add_argument("which", choices=("exists", "ryser", "hall", "evans", "cyclic"))
    common(c)
    c.add_argument("--n", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--lambda", dest="lam", type=int)
    c.add_argument("--rho", help="comma-separated rho vector (exists)")
    c.add_argument("--m", type=int, help="order of the cyclic block")
    c.add_argument("--offset", type=int, default=0)

    g = common(sub.add_parser("generate", help="seeded admissible instance"), needs_input=False)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--lambda", dest="lam", type=int, required=True)
    g.add_argument("--r", type=int)
    g.add_argument("--s", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    return p


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    if args.command == "corollary" and args.which in ("ryser", "hall", "evans") and args.input is None \
            and args.json is None:
        args.input = "-"
    cfg = RunConfig(args.command, getattr(args, "input", None), args.mode == "simple",
                    getattr(args, "seed", 0), args.output, getattr(args, "no_guard", False), args)
    if cfg.source is None and getattr(args, "json", None) is not None:
        cfg.source = "<inline>"
    if cfg.lift_guards:
        os.environ[oracle.GUARD_ENV] = "1"
    try:
        with contextlib.redirect_stderr(stderr):
            out, code = COMMANDS[cfg.command](cfg)
    except InternalError as exc:
        print(f"internal error: {exc}", file=stderr)
        if exc.dump is not None:
            print(dumps(exc.dump), file=stderr)
        return EXIT_INTERNAL
    except (ValueError, OSError) as exc:
        print(f"input error: {exc}", file=stderr)
        return EXIT_INPUT
    text = dumps(out) + "\n"
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
