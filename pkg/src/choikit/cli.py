"""Command-line surface: generate, certify, decompose, explore.

Every command emits a machine-readable JSON report (default) or a
human-readable rendering of the same dict (--pretty).  Exit codes:
0 all requested checks passed, 1 a certified check failed, 2 usage or
input error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__, certify, decompose, extremal, io, uniqueness
from .errors import ChoiKitError


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None,
                        help="override the command's default tolerance")
    parser.add_argument("--seed", type=int, default=0, help="random seed where applicable")
    fmt = parser.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", help="machine-readable output (default)")
    fmt.add_argument("--pretty", action="store_true", help="human-readable output")
    parser.add_argument("--out", default=None, help="write the report to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="choikit",
        description="Construct, certify, and split positive maps on 2x2 matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="emit a canonical extremal Choi matrix")
    gen.add_argument("--example-s", type=float, default=None,
                     help="one-parameter family instance, 0 < s < 1")
    gen.add_argument("--degenerate", choices=["u_zero", "y_zero", "z_zero"], default=None)
    gen.add_argument("--u", type=float, default=None)
    gen.add_argument("--y", type=str, default=None, help="complex literal, e.g. 0.25+0i")
    gen.add_argument("--z", type=str, default=None, help="complex literal, e.g. 0.25")
    gen.add_argument("--t-branch", choices=["+", "-"], default="+")
    _common_flags(gen)

    cer = sub.add_parser("certify", help="run positivity-class checks on a matrix file")
    cer.add_argument("matrix", help="path to a matrix JSON file ('-' for stdin)")
    cer.add_argument("--positive", action="store_true")
    cer.add_argument("--cp", action="store_true")
    cer.add_argument("--ccp", action="store_true")
    cer.add_argument("--extremal", action="store_true")
    cer.add_argument("--face-form", action="store_true")
    cer.add_argument("--canonical-cp", action="store_true")
    cer.add_argument("--canonical-ccp", action="store_true")
    _common_flags(cer)

    dec = sub.add_parser("decompose", help="split an extremal matrix into CP + co-CP parts")
    dec.add_argument("matrix", help="path to a matrix JSON file ('-' for stdin)")
    _common_flags(dec)

    exp = sub.add_parser("explore", help="scan for alternative feasible splits")
    exp.add_argument("matrix", help="path to a matrix JSON file ('-' for stdin)")
    exp.add_argument("--radius", type=float, default=0.2)
    exp.add_argument("--resolution", type=float, default=1e-2)
    exp.add_argument("--samples", type=int, default=100_000)
    exp.add_argument("--epsilon", type=float, default=None,
                     help="also emit the diagonal shift family with this eps")
    _common_flags(exp)
    return parser


def _load_matrix(path: str):
    if path == "-":
        raw = sys.stdin.buffer.read()
    else:
        with open(path, "rb") as fh:
            raw = fh.read()
    matrix = io.matrix_from_json(json.loads(raw.decode("utf-8")))
    return matrix, hashlib.sha256(raw).hexdigest()


def _run_generate(args) -> tuple[dict, int]:
    modes = [args.example_s is not None, args.degenerate is not None, args.u is not None]
    if sum(modes) != 1:
        raise ValueError("choose exactly one of --example-s, --degenerate, or --u/--y/--z")
    if args.example_s is not None:
        matrix = extremal.example_family(args.example_s)
        params: dict = {"example_s": args.example_s}
    elif args.degenerate is not None:
        y = io.parse_complex(args.y) if args.y is not None else 0.0
        z = io.parse_complex(args.z) if args.z is not None else 0.0
        matrix = extremal.degenerate_case(args.degenerate, y=y, z=z)
        params = {"degenerate": args.degenerate,
                  "y": io.complex_pair(y), "z": io.complex_pair(z)}
    else:
        if args.y is None or args.z is None:
            raise ValueError("--u requires --y and --z")
        pset = extremal.ExtremalParams(
            u=args.u,
            y=io.parse_complex(args.y),
            z=io.parse_complex(args.z),
            t_branch=args.t_branch,
        )
        matrix = extremal.build_extremal(pset)
        params = {"u": pset.u, "y": io.complex_pair(pset.y),
                  "z": io.complex_pair(pset.z), "t_branch": pset.t_branch}
    tol = args.tol if args.tol is not None else extremal.RELATION_TOL
    cert = extremal.validate_extremal(matrix, tol)
    results = {
        "matrix": io.matrix_to_json(matrix),
        "params": params,
        "validate": io.certificate_to_json(cert),
    }
    digest = hashlib.sha256(json.dumps(params, sort_keys=True).encode()).hexdigest()
    return _report(args, results, digest), 0 if cert.passed else 1


_CERTIFY_CHECKS = {
    "positive": lambda m, tol: certify.block_positive(m, tol=tol),
    "cp": lambda m, tol: certify.cp_check(m, tol=tol),
    "ccp": lambda m, tol: certify.ccp_check(m, tol=tol),
    "extremal": lambda m, tol: extremal.validate_extremal(m, tol),
    "face_form": lambda m, tol: certify.face_form_inequalities(m, tol=tol),
    "canonical_cp": lambda m, tol: certify.canonical_cp_conditions(m, tol=tol),
    "canonical_ccp": lambda m, tol: certify.canonical_ccp_conditions(m, tol=tol),
}


def _run_certify(args) -> tuple[dict, int]:
    matrix, digest = _load_matrix(args.matrix)
    requested = [name for name in _CERTIFY_CHECKS if getattr(args, name)]
    if not requested:
        requested = ["positive", "cp", "ccp"]
    results: dict = {"checks": {}}
    all_pass = True
    for name in requested:
        tol = args.tol if args.tol is not None else _default_tol(name)
        cert = _CERTIFY_CHECKS[name](matrix, tol)
        results["checks"][name] = io.certificate_to_json(cert)
        all_pass = all_pass and cert.passed
    return _report(args, results, digest), 0 if all_pass else 1


def _default_tol(name: str) -> float:
    if name in ("face_form", "canonical_cp", "canonical_ccp"):
        return certify.CONDITION_TOL
    if name == "extremal":
        return extremal.RELATION_TOL
    return 1e-10


def _run_decompose(args) -> tuple[dict, int]:
    matrix, digest = _load_matrix(args.matrix)
    pair = decompose.decompose_extremal(matrix)
    tol = args.tol if args.tol is not None else 1e-10
    cert = decompose.verify_decomposition(matrix, pair, tol)
    results = dict(io.pair_to_json(pair))
    results["verify"] = io.certificate_to_json(cert)
    return _report(args, results, digest), 0 if cert.passed else 1


def _run_explore(args) -> tuple[dict, int]:
    matrix, digest = _load_matrix(args.matrix)
    tol = args.tol if args.tol is not None else uniqueness.FEASIBILITY_TOL
    report = uniqueness.uniqueness_search(
        matrix, radius=args.radius, resolution=args.resolution,
        samples=args.samples, seed=args.seed, tol=tol,
    )
    results: dict = {"search": io.report_to_json(report)}
    if args.epsilon is not None:
        remainder, shift = uniqueness.epsilon_family(matrix, args.epsilon)
        results["epsilon_family"] = {
            "eps": args.epsilon,
            "remainder": io.matrix_to_json(remainder),
            "shift": io.matrix_to_json(shift),
        }
    return _report(args, results, digest), 0


def _report(args, results: dict, input_hash: str) -> dict:
    return {
        "tool": "choikit",
        "version": __version__,
        "command": args.command,
        "input_sha256": input_hash,
        "seed": args.seed,
        "tol": args.tol,
        "results": results,
    }


_RUNNERS = {
    "generate": _run_generate,
    "certify": _run_certify,
    "decompose": _run_decompose,
    "explore": _run_explore,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    try:
        report, code = _RUNNERS[args.command](args)
    except (ChoiKitError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    report["timing_s"] = time.perf_counter() - started
    text = io.dumps_report(report, pretty=args.pretty)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
