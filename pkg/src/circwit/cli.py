"""Command-line front end.

Every JSON artifact embeds the resolved configuration under ``"config"``.
Exit codes: 0 success or certified, 2 inconclusive certificate, 1 usage or
parameter error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from . import detection, optimality, states, witness
from .errors import CircwitError
from .io import dumps, matrix_to_json
from .linalg import hermitian_spectrum

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INCONCLUSIVE = 2

FAMILY_ALIASES = {
    "ellipse": "ellipse3",
    "ellipse3": "ellipse3",
    "class1": "class1",
    "classI": "class1",
    "class2": "class2",
    "classII": "class2",
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _branch(text: str) -> int:
    table = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1}
    if text not in table:
        raise argparse.ArgumentTypeError(f"branch must be + or -, got {text!r}")
    return table[text]


def _raw_values(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"--raw expects comma-separated numbers, got {text!r}")


def _add_point_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True, choices=(3, 4))
    p.add_argument("--family", choices=sorted(FAMILY_ALIASES))
    p.add_argument("--a", type=float, help="driver for ellipse3 and class1")
    p.add_argument("--b", type=float, help="driver for class2")
    p.add_argument("--branch", type=_branch, default=1, help="root branch, + or - (default +)")
    p.add_argument("--raw", type=_raw_values, help="explicit a,b,c[,d]")


def resolve_params(args) -> witness.WitnessParams:
    if args.raw is not None:
        if args.family is not None:
            raise UsageError("--raw and --family are exclusive")
        if len(args.raw) != args.n:
            raise UsageError(f"--raw needs {args.n} values for n={args.n}")
        return witness.classify(witness.raw(*args.raw))
    if args.family is None:
        raise UsageError("give either --family with its driver or --raw")
    fam = witness.Family(FAMILY_ALIASES[args.family])
    if witness.FAMILY_DIM[fam] != args.n:
        raise UsageError(f"family {fam.value} lives on n={witness.FAMILY_DIM[fam]}")
    name = witness.DRIVER_RANGE[fam][0]
    other = "b" if name == "a" else "a"
    if getattr(args, other) is not None:
        raise UsageError(f"family {fam.value} is driven by --{name}, not --{other}")
    driver = getattr(args, name)
    if driver is None:
        raise UsageError(f"family {fam.value} needs --{name}")
    return witness.params_on_curve(fam, driver, args.branch)


def _point_config(args, p: witness.WitnessParams) -> dict:
    return {
        "family": args.family,
        "driver_a": args.a,
        "driver_b": args.b,
        "branch": args.branch,
        "raw": args.raw,
        "params": p.to_dict(),
    }


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_witness(args) -> int:
    p = resolve_params(args)
    W = witness.build_witness(p)
    out = {
        "config": {"command": f"witness {args.action}", **_point_config(args, p)},
        "params": p.to_dict(),
        "positive_condition": witness.is_positive_condition(p),
        "min_eig": float(hermitian_spectrum(W)[0]),
        "omega_expectation": witness.omega_expectation(p),
        "decomposability": witness.decomposability_flag(p).value,
    }
    if args.action == "build":
        out["witness"] = matrix_to_json(W)
    _emit(dumps(out), args.output)
    return EXIT_OK


def cmd_certify(args) -> int:
    p = resolve_params(args)
    cert = optimality.certify(
        p, args.strategy, seed=args.seed, restarts=args.restarts, zero_tol=args.zero_tol, span_tol=args.span_tol
    )
    config = {
        "command": "certify",
        **_point_config(args, p),
        "strategy": args.strategy,
        "seed": args.seed,
        "restarts": args.restarts,
        "zero_tol": args.zero_tol,
        "span_tol": args.span_tol,
    }
    _emit(dumps({"config": config, "certificate": cert.to_dict()}), args.output)
    if cert.verdict in (optimality.Verdict.OPTIMAL, optimality.Verdict.ND_OPTIMAL):
        return EXIT_OK
    return EXIT_INCONCLUSIVE


def _check_alpha(n: int, alpha: float) -> None:
    lo, hi = states.ALPHA_RANGE[n]
    if not lo <= alpha <= hi:
        raise UsageError(f"alpha={alpha} outside the legitimacy range [{lo}, {hi}] for n={n}")


def _search_family(args):
    return None if args.family is None else FAMILY_ALIASES[args.family]


def cmd_detect(args) -> int:
    _check_alpha(args.n, args.alpha)
    rep = detection.detect_horodecki(args.n, args.alpha, _search_family(args), args.grid)
    config = {"command": "detect", "n": args.n, "alpha": args.alpha, "family": args.family, "grid": args.grid}
    _emit(dumps({"config": config, "report": rep.to_dict()}), args.output)
    return EXIT_OK


def cmd_sweep(args) -> int:
    lo, hi = states.ALPHA_RANGE[args.n]
    a0 = lo if args.alpha_min is None else args.alpha_min
    a1 = hi if args.alpha_max is None else args.alpha_max
    _check_alpha(args.n, a0)
    _check_alpha(args.n, a1)
    grid = detection.alpha_grid(args.n, a0, a1, args.step)
    reports = detection.sweep_alpha(args.n, _search_family(args), grid, args.grid)
    if args.format == "csv":
        _emit(detection.reports_to_csv(reports), args.output)
    else:
        config = {
            "command": "sweep",
            "n": args.n,
            "alpha_min": a0,
            "alpha_max": a1,
            "step": args.step,
            "family": args.family,
            "grid": args.grid,
        }
        _emit(dumps({"config": config, "reports": [r.to_dict() for r in reports]}), args.output)
    return EXIT_OK


def cmd_audit(args) -> int:
    p = resolve_params(args)
    if p.n != 4:
        raise UsageError("printed families exist only for n=4")
    klasses = [args.klass] if args.klass else ["I", "II"]
    out = {"config": {"command": "audit", **_point_config(args, p), "seed": args.seed}, "audit": {}}
    for k in klasses:
        out["audit"][k] = optimality.audit_printed_family(p, k, args.seed)
    _emit(dumps(out), args.output)
    return EXIT_OK


def cmd_indecomposable(args) -> int:
    p = resolve_params(args)
    ok, rep = detection.certify_indecomposable(p)
    out = {
        "config": {"command": "indecomposable", **_point_config(args, p)},
        "certified": ok,
        "decomposability": witness.decomposability_flag(p).value,
        "evidence": rep.to_dict(),
    }
    _emit(dumps(out), args.output)
    return EXIT_OK


def cmd_ppt(args) -> int:
    out = {
        "config": {"command": "ppt", "n": args.n, "width": args.width},
        "boundaries": states.ppt_boundaries(args.n, width=args.width),
    }
    _emit(dumps(out), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="circwit", description="Circulant positive maps and their entanglement witnesses.")
    parser.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("witness", help="build or check a witness")
    p.add_argument("action", choices=("build", "check"))
    _add_point_args(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("certify", help="zero-product-vector spanning certificate")
    _add_point_args(p)
    p.add_argument("--strategy", choices=[s.value for s in optimality.Strategy], default="solver")
    p.add_argument("--seed", type=int, default=optimality.DEFAULT_SEED)
    p.add_argument("--restarts", type=int, default=200)
    p.add_argument("--zero-tol", type=float, default=optimality.ZERO_TOL)
    p.add_argument("--span-tol", type=float, default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("audit", help="residuals of the printed n=4 vector lists")
    _add_point_args(p)
    p.add_argument("--class", dest="klass", choices=("I", "II"))
    p.add_argument("--seed", type=int, default=optimality.DEFAULT_SEED)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("indecomposable", help="look for a PPT state detected by the witness")
    _add_point_args(p)
    p.set_defaults(func=cmd_indecomposable)

    p = sub.add_parser("detect", help="search family curves for a witness detecting a Horodecki state")
    p.add_argument("--n", type=int, required=True, choices=(3, 4))
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--family", choices=sorted(FAMILY_ALIASES))
    p.add_argument("--grid", type=int, default=detection.DEFAULT_GRID)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("sweep", help="detection over a grid of Horodecki alphas")
    p.add_argument("--n", type=int, required=True, choices=(3, 4))
    p.add_argument("--alpha-min", type=float)
    p.add_argument("--alpha-max", type=float)
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--family", choices=sorted(FAMILY_ALIASES))
    p.add_argument("--grid", type=int, default=detection.DEFAULT_GRID)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("ppt", help="PPT boundaries of the Horodecki family")
    p.add_argument("--n", type=int, required=True, choices=(3, 4))
    p.add_argument("--width", type=float, default=1e-6)
    p.set_defaults(func=cmd_ppt)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, CircwitError) as exc:
        print(f"circwit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
