"""Command line interface.

JSON goes to stdout (or --out), a short human summary to stderr. Exit
codes: 0 success, 1 a verified inequality failed or hypotheses were
violated, 2 unusable input, 3 numerical failure, 4 invalid dual
parameter.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import jsonio, reference, sweeps
from .errors import (
    FramelabError,
    InvalidDualParam,
    InvalidInput,
    NotApplicable,
)
from .fusion import (
    FusionSequence,
    alternate_ffdual,
    canonical_ffdual,
    canonical_ffdual_witness,
    ffdual_verify,
    fusion_to_ov,
)
from .linalg import ToleranceConfig
from .ovframe import canonical_dual, classify, dual_diagnostics, make_dual
from .perturb import (
    best_approx_check,
    canonical_dual_deviation,
    fusion_stability,
    perturbation_report,
    stable_dual,
)

EXIT_OK = 0
EXIT_ASSERTION = 1
EXIT_INPUT = 2
EXIT_NUMERIC = 3
EXIT_PARAM = 4


def _tolerances(args) -> ToleranceConfig:
    return ToleranceConfig(tol_rank=args.tol_rank, tol_eq=args.tol_eq)


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FRAMELAB_SEED")
    return int(env) if env else 42


def _emit(args, payload: dict, summary: str) -> None:
    text = jsonio.dumps(payload)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    print(summary, file=sys.stderr)


def _load(path):
    return jsonio.load_sequence(path)


def cmd_analyze(args) -> int:
    tol = _tolerances(args)
    seq = _load(args.input)
    if isinstance(seq, FusionSequence):
        report = classify(fusion_to_ov(seq), tol)
        kind = "fusion"
    else:
        report = classify(seq, tol)
        kind = "operator"
    payload = {"kind": kind, "report": report.to_dict()}
    _emit(args, payload, f"analyze {args.input}: bounds "
          f"[{report.lower_bound:.6g}, {report.bessel_bound:.6g}]")
    return EXIT_OK


def cmd_dual(args) -> int:
    tol = _tolerances(args)
    seq = _load(args.input)
    if isinstance(seq, FusionSequence):
        if args.L:
            L = jsonio.matrix_from_obj(jsonio.load_json(args.L))
            dual, witness = alternate_ffdual(seq, L, tol)
        else:
            dual = canonical_ffdual(seq, tol)
            witness = canonical_ffdual_witness(seq, tol)
        check = ffdual_verify(dual, seq, witness, tol)
        payload = {
            "dual": jsonio.fusion_to_obj(dual),
            "witness": jsonio.witness_to_obj(witness),
            "verified": check.to_dict(),
        }
        ok = bool(check)
    else:
        if args.L:
            L = jsonio.matrix_from_obj(jsonio.load_json(args.L))
            dual = make_dual(seq, L, tol)
        else:
            dual = canonical_dual(seq, tol)
        diag = dual_diagnostics(seq, dual, tol)
        payload = {"dual": jsonio.ov_to_obj(dual), "verified": diag}
        ok = diag["is_dual"]
    _emit(args, payload, f"dual {args.input}: verified={ok}")
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_perturb(args) -> int:
    tol = _tolerances(args)
    first = _load(args.input_a)
    second = _load(args.input_b)
    if isinstance(first, FusionSequence) != isinstance(second, FusionSequence):
        raise InvalidInput("cannot mix operator and fusion sequence inputs")

    if isinstance(first, FusionSequence):
        try:
            report = fusion_stability(first, second, tol)
        except NotApplicable as exc:
            _emit(args, {"status": "not-applicable", "reason": str(exc)},
                  f"perturb: {exc}")
            return EXIT_ASSERTION
        payload = {"status": "ok" if report.satisfied() else "assertion-failed",
                   "fusion_stability": report.to_dict()}
        _emit(args, payload, f"perturb: measured={report.measured:.6g} "
              f"bound={report.bound:.6g}")
        return EXIT_OK if report.satisfied() else EXIT_ASSERTION

    payload = {}
    failed = False
    hypothesis_violation = False
    rep = perturbation_report(first, second, tol)
    payload["perturbation"] = rep.to_dict()
    failed |= not rep.satisfied()
    hypothesis_violation |= not rep.applicable
    try:
        dev = canonical_dual_deviation(first, second, tol)
        payload["canonical_deviation"] = dev.to_dict()
        failed |= not dev.satisfied()
    except NotApplicable as exc:
        partial = exc.report.to_dict() if exc.report is not None else None
        payload["canonical_deviation"] = {"status": "not-applicable", "partial": partial}
        hypothesis_violation = True

    if args.L:
        L = jsonio.matrix_from_obj(jsonio.load_json(args.L))
    else:
        L = np.zeros(
            (first.size * first.codomain_dim, first.domain_dim), dtype=complex
        )
    try:
        _, dev2 = stable_dual(first, second, L, tol)
        payload["stable_dual"] = dev2.to_dict()
        failed |= not dev2.satisfied()
        if dev2.is_frame_case:
            approx = best_approx_check(
                first, second, L, trials=args.trials or 20, tol=tol, seed=_seed(args)
            )
            payload["best_approx"] = approx.to_dict()
            failed |= not approx.satisfied()
    except NotApplicable:
        payload["stable_dual"] = {"status": "not-applicable"}
        hypothesis_violation = True

    if failed:
        payload["status"] = "assertion-failed"
    elif hypothesis_violation:
        payload["status"] = "hypotheses-violated"
    else:
        payload["status"] = "ok"
    _emit(args, payload, f"perturb: status={payload['status']}")
    return EXIT_OK if payload["status"] == "ok" else EXIT_ASSERTION


def cmd_reproduce(args) -> int:
    runner = reference.REPRODUCTIONS.get(args.name)
    if runner is None:
        print(f"unknown reproduction '{args.name}'", file=sys.stderr)
        return EXIT_INPUT
    result = runner()
    _emit(args, result, f"reproduce {args.name}: ok={result['ok']}")
    return EXIT_OK if result["ok"] else EXIT_ASSERTION


def cmd_sweep(args) -> int:
    tol = _tolerances(args)
    seed = _seed(args)
    names = list(sweeps.ALL_SWEEPS) if args.kind == "all" else [args.kind]
    results = {}
    ok = True
    for offset, name in enumerate(names):
        fn = sweeps.ALL_SWEEPS[name]
        if args.trials is not None:
            res = fn(args.trials, seed=seed + offset, tol=tol)
        else:
            res = fn(seed=seed + offset, tol=tol)
        results[name] = res
        ok = ok and res["ok"]
    payload = {"seed": seed, "sweeps": results, "ok": ok}
    _emit(args, payload, f"sweep: ok={ok}")
    return EXIT_OK if ok else EXIT_ASSERTION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="framelab",
        description="Frame, fusion frame and perturbation toolkit",
    )
    parser.add_argument("--tol-rank", type=float, default=1e-10)
    parser.add_argument("--tol-eq", type=float, default=1e-8)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--trials", type=int, default=None)
    parser.add_argument("--out", type=str, default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="frame bounds and flags for a sequence")
    p.add_argument("input")
    p.set_defaults(fn=cmd_analyze)

    p = sub.add_parser("dual", help="canonical or parametrized dual")
    p.add_argument("input")
    p.add_argument("--L", default=None, help="dual parameter matrix JSON")
    p.add_argument("--canonical", action="store_true",
                   help="explicitly request the canonical dual (default)")
    p.set_defaults(fn=cmd_dual)

    p = sub.add_parser("perturb", help="perturbation report bundle for a pair")
    p.add_argument("input_a")
    p.add_argument("input_b")
    p.add_argument("--L", default=None)
    p.set_defaults(fn=cmd_perturb)

    for alias, target in (("fusion-dual", cmd_dual), ("fusion-perturb", cmd_perturb)):
        p = sub.add_parser(alias, help=f"alias of {target.__name__[4:]} for fusion inputs")
        if target is cmd_dual:
            p.add_argument("input")
        else:
            p.add_argument("input_a")
            p.add_argument("input_b")
        p.add_argument("--L", default=None)
        p.set_defaults(fn=target)

    p = sub.add_parser("reproduce", help="run a named worked example")
    p.add_argument("name", choices=sorted(reference.REPRODUCTIONS))
    p.set_defaults(fn=cmd_reproduce)

    p = sub.add_parser("sweep", help="randomized property sweeps")
    p.add_argument("--kind", default="all", choices=["all", *sweeps.ALL_SWEEPS])
    p.set_defaults(fn=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except InvalidDualParam as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except InvalidInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FramelabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    raise SystemExit(main())
