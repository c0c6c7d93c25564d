"""Command line entry point: ``putlab {curves,verify,mechanism,limits}``.

Exit codes: 0 success, 1 a check failed, 2 bad usage, 3 unsupported v,
4 malformed mechanism file, 5 decompose input is not eps-LDP.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import _config
from .checks import SUITES, run_suite
from .errors import CapabilityError, DomainError, PreconditionError
from .formats import (FormatError, curves_to_csv, curves_to_json, load_mechanism,
                      mechanism_to_dict)
from .mechanisms import (CQMechanism, block_design_mechanism, complete_design, decompose_extremal,
                         proposed_mechanism, randomized_response, verify_ldp, verify_qldp)
from .oracle import DEFAULT_SEED
from .put import corollary_ratio_limits, curve_point, curve_sweep

EXIT_FAIL, EXIT_USAGE, EXIT_UNSUPPORTED, EXIT_MALFORMED, EXIT_NOT_LDP = 1, 2, 3, 4, 5


class UsageError(Exception):
    pass


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _eps_grid(args) -> np.ndarray:
    if args.eps_steps < 1:
        raise UsageError("--eps-steps must be >= 1")
    if args.eps_min <= 0:
        raise UsageError("--eps-min must be positive")
    if args.eps_steps == 1:
        return np.array([args.eps_min])
    if args.eps_max <= args.eps_min:
        raise UsageError("need --eps-min < --eps-max")
    if args.log_grid:
        return np.geomspace(args.eps_min, args.eps_max, args.eps_steps)
    return np.linspace(args.eps_min, args.eps_max, args.eps_steps)


def cmd_curves(args) -> int:
    if not 0 < args.eta <= 1:
        raise UsageError("--eta must lie in (0, 1]")
    grid = _eps_grid(args)
    points = curve_sweep(args.v, args.eta, grid, numeric_fallback=not args.no_numeric)
    text = curves_to_json(points) + "\n" if args.format == "json" else curves_to_csv(points)
    _write(text, args.out)
    return 0


def cmd_verify(args) -> int:
    results = run_suite(args.suite, args.seed)
    failed = [r for r in results if not r.passed]
    for r in results:
        print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}  margin={r.margin:.3e}")
    print(f"{len(results) - len(failed)}/{len(results)} checks passed")
    if failed:
        for r in failed:
            print(f"failed: {r.name} (margin {r.margin:.6g})", file=sys.stderr)
        return EXIT_FAIL
    return 0


def cmd_mechanism_build(args) -> int:
    if args.type == "proposed":
        mech = proposed_mechanism(args.v, args.eps)
    elif args.type == "rr":
        mech = randomized_response(args.v, args.eps)
    else:
        if args.k is None:
            raise UsageError("--k is required for --type block-design")
        mech = block_design_mechanism(complete_design(args.v, args.k), args.eps)
    _write(json.dumps(mechanism_to_dict(mech, args.eps, label=args.type)) + "\n", args.out)
    return 0


def cmd_mechanism_check(args) -> int:
    mech = load_mechanism(args.infile)
    if isinstance(mech, CQMechanism):
        verdict, kind = verify_qldp(mech, args.eps), "QLDP"
    else:
        verdict, kind = verify_ldp(mech, args.eps), "LDP"
    status = "pass" if verdict.passed else "fail"
    print(f"{kind} eps={args.eps:g}: {status}  worst={verdict.worst}  margin={verdict.margin:.6e}")
    return 0 if verdict.passed else EXIT_FAIL


def cmd_mechanism_decompose(args) -> int:
    mech = load_mechanism(args.infile)
    if isinstance(mech, CQMechanism):
        raise FormatError("decompose needs a classical mechanism")
    ext, post = decompose_extremal(mech, args.eps)
    residual = float(np.abs(ext.matrix @ post - mech).max())
    doc = {"type": "extremal_decomposition", "v": ext.v, "eps": args.eps,
           "theta": ext.theta.tolist(), "post_processing": post.tolist(), "residual": residual}
    _write(json.dumps(doc) + "\n", args.out)
    to_stdout = args.out not in (None, "-")
    print(f"reconstruction residual {residual:.3e}", file=sys.stdout if to_stdout else sys.stderr)
    return 0


def _v_range(text: str) -> list[int]:
    try:
        if "-" in text or ":" in text:
            lo, hi = text.replace(":", "-").split("-")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --v-range {text!r}; use e.g. 2-9 or 3,4,9") from None


def cmd_limits(args) -> int:
    eps = args.eps
    print(f"{'v':>2}  {'kind':<4} {'analytic':>10} {'numeric':>10} {'gap':>9}  note")
    for v in _v_range(args.v_range):
        bound_s, bound_a = corollary_ratio_limits(v)
        p = curve_point(v, 1.0, eps, numeric_fallback=False)
        rows = [("S", bound_s, p.ratio_s)]
        if bound_a is not None:
            rows.append(("A", bound_a, p.ratio_a))
        for kind, bound, num in rows:
            gap = (num - bound) / bound
            note = "no advantage" if bound <= 1 + 1e-12 else ""
            print(f"{v:>2}  {kind:<4} {bound:>10.6f} {num:>10.6f} {gap:>+9.2e}  {note}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="putlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("curves", help="quantum/classical utility curves over an eps grid")
    p.add_argument("--v", type=int, required=True)
    p.add_argument("--eta", type=float, default=1.0)
    p.add_argument("--eps-min", type=float, default=0.05)
    p.add_argument("--eps-max", type=float, default=2.0)
    p.add_argument("--eps-steps", type=int, default=40)
    p.add_argument("--log-grid", action="store_true")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-numeric", action="store_true",
                   help="leave quantum values without a closed form empty")
    p.add_argument("--out")
    p.set_defaults(func=cmd_curves)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", choices=(*SUITES, "all"), default="all")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mechanism", help="build, check or decompose mechanism files")
    msub = p.add_subparsers(dest="action", required=True)
    b = msub.add_parser("build")
    b.add_argument("--type", choices=("proposed", "block-design", "rr"), required=True)
    b.add_argument("--v", type=int, required=True)
    b.add_argument("--eps", type=float, required=True)
    b.add_argument("--k", type=int)
    b.add_argument("--out")
    b.set_defaults(func=cmd_mechanism_build)
    c = msub.add_parser("check")
    c.add_argument("--in", dest="infile", required=True)
    c.add_argument("--eps", type=float, required=True)
    c.set_defaults(func=cmd_mechanism_check)
    d = msub.add_parser("decompose")
    d.add_argument("--in", dest="infile", required=True)
    d.add_argument("--eps", type=float, required=True)
    d.add_argument("--out")
    d.set_defaults(func=cmd_mechanism_decompose)

    p = sub.add_parser("limits", help="small-eps ratio limits against numeric ratios")
    p.add_argument("--v-range", default="2-9")
    p.add_argument("--eps", type=float, default=1e-3)
    p.set_defaults(func=cmd_limits)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)   # exits with 2 on bad flags
    try:
        _config.set_tolerances(_config.tolerances_from_env())
    except ValueError as exc:
        print(f"putlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"putlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapabilityError as exc:
        print(f"putlab: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (FormatError, FileNotFoundError) as exc:
        print(f"putlab: bad mechanism file: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except PreconditionError as exc:
        print(f"putlab: {exc}", file=sys.stderr)
        return EXIT_NOT_LDP
    except DomainError as exc:
        print(f"putlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
