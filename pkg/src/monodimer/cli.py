"""
Command line entry point.

    monodimer transform {jbar-from-b|b-from-jbar} --order N [--b-file F] [--d D]
    monodimer coeffs {first|second} --order N [--b-file F] [--d D]
    monodimer verify {master|catalan|part3|triangularity} --order N [--perturb k:delta]
    monodimer eval lambda --d D --p P --order N --b-file F [--precision DIGITS]

Every command takes ``--format {text,json,latex}``.

Exit codes: 0 success / verified, 1 refuted (witness printed),
2 usage error, 3 divergence or internal-consistency failure.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .algebra import MultiPoly
from .expression_one import a_coeffs
from .expression_two import a_prime_coeffs
from .numeric import DEFAULT_PRECISION, lambda_eval
from .report import (CoeffTable, dumps, table_to_json, table_to_latex, table_to_text,
                     verdict_to_json, verdict_to_latex, verdict_to_text)
from .symbolic_l import Divergence
from .transforms import BSequence, ConsistencyError, JSequence, b_from_jbar, jbar_from_b
from .verification import (catalan_b, triangularity_check, verify_catalan, verify_master,
                           verify_part3)

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_DIVERGENCE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    action: str
    order: int
    d_value: Fraction | None = None
    p_value: Fraction | None = None
    format: str = "text"
    b_file: str | None = None
    precision: int = DEFAULT_PRECISION
    perturbation: tuple[int, Fraction] | None = None

    def __post_init__(self):
        if self.order < 2:
            raise UsageError("--order must be at least 2")
        if self.command == "eval":
            if self.p_value is None or self.d_value is None:
                raise UsageError("eval lambda needs --d and --p")
            if not 0 <= self.p_value < 1:
                raise UsageError("--p must satisfy 0 <= p < 1")
            if self.d_value < 1:
                raise UsageError("--d must be at least 1")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from exc


def _perturbation(text: str) -> tuple[int, Fraction]:
    k, sep, delta = text.partition(":")
    if not sep:
        raise argparse.ArgumentTypeError("expected k:delta")
    try:
        return int(k), Fraction(delta)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"bad perturbation {text!r}") from exc


def read_b_file(source: str, order: int, d: Fraction | None = None) -> BSequence:
    """``catalan`` or a file of ``i <rational>`` lines (``#`` comments).

    Values are plain rationals for b_2..b_N; b_1 is always the symbol d, and
    a listed b_1 must agree with ``d`` when that is known.
    """
    if source.strip() == "catalan":
        return catalan_b(order).btilde
    path = Path(source)
    if not path.exists():
        raise UsageError(f"b-file not found: {source}")
    text = path.read_text()
    if text.strip() == "catalan":
        return catalan_b(order).btilde
    values: dict[int, Fraction] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise UsageError(f"{source}:{lineno}: expected 'i <rational>'")
        try:
            i, v = int(parts[0]), Fraction(parts[1])
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"{source}:{lineno}: {exc}") from exc
        if i < 1 or i in values:
            raise UsageError(f"{source}:{lineno}: bad or repeated index {i}")
        values[i] = v
    if 1 in values and d is not None and values[1] != d:
        raise UsageError(f"b_1 = {values[1]} in {source} disagrees with d = {d}")
    missing = [i for i in range(2, order + 1) if i not in values]
    if missing:
        raise UsageError(f"{source}: missing b_{missing[0]}")
    return BSequence((MultiPoly.d(),) + tuple(MultiPoly.const(values[i]) for i in range(2, order + 1)))


def _ground(entries, d):
    if d is None:
        return tuple(entries)
    return tuple(e.substitute({"d": MultiPoly.const(d)}) for e in entries)


def build_table(cfg: RunConfig) -> CoeffTable:
    N = cfg.order
    b_in = read_b_file(cfg.b_file, N, cfg.d_value) if cfg.b_file else BSequence.symbolic(N)
    source = f"b from {cfg.b_file}" if cfg.b_file else "symbolic b"
    if cfg.command == "transform" and cfg.action == "jbar-from-b":
        return CoeffTable("f", "J", N, _ground(jbar_from_b(b_in).values, cfg.d_value),
                          ("b1 = d", "J1 = 0", source))
    if cfg.command == "transform" and cfg.action == "b-from-jbar":
        if cfg.b_file:
            raise UsageError("b-from-jbar takes symbolic J only")
        return CoeffTable("f^-1", "b", N,
                          _ground(b_from_jbar(JSequence.symbolic(N)).values, cfg.d_value),
                          ("J1 = 0", "b1 = d", "symbolic J"))
    if cfg.command == "coeffs" and cfg.action == "first":
        j_in = jbar_from_b(b_in) if cfg.b_file else JSequence.symbolic(N)
        return CoeffTable("g", "a", N, _ground(a_coeffs(j_in, N).values, cfg.d_value),
                          ("a1 = 0", "J1 = 0", f"J = f({source})" if cfg.b_file else "symbolic J"))
    if cfg.command == "coeffs" and cfg.action == "second":
        return CoeffTable("h", "a'", N, _ground(a_prime_coeffs(b_in, N).values, cfg.d_value),
                          ("a'1 = 0", "b1 = d", source))
    raise UsageError(f"unknown command {cfg.command} {cfg.action}")


def _emit_table(t: CoeffTable, fmt: str) -> str:
    if fmt == "json":
        return dumps(table_to_json(t))
    if fmt == "latex":
        return table_to_latex(t)
    return table_to_text(t)


def _verify(cfg: RunConfig):
    N, pert = cfg.order, cfg.perturbation
    if cfg.action == "master":
        return verify_master(N, pert)
    if cfg.action == "catalan":
        return verify_catalan(N, pert)
    if cfg.action == "part3":
        return verify_part3(N, pert)
    if cfg.action == "triangularity":
        return triangularity_check(N, perturb=pert)
    raise UsageError(f"unknown claim {cfg.action}")


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        if cfg.command in ("transform", "coeffs"):
            print(_emit_table(build_table(cfg), cfg.format), file=out)
            return EXIT_OK
        if cfg.command == "verify":
            v = _verify(cfg)
            if cfg.format == "json":
                print(dumps(verdict_to_json(v)), file=out)
            elif cfg.format == "latex":
                print(verdict_to_latex(v), file=out)
            else:
                print(verdict_to_text(v), file=out)
            return {"verified": EXIT_OK, "refuted": EXIT_REFUTED}.get(v.status, EXIT_DIVERGENCE)
        if cfg.command == "eval":
            if not cfg.b_file:
                raise UsageError("eval lambda needs --b-file (a file or 'catalan')")
            b = read_b_file(cfg.b_file, cfg.order, cfg.d_value)
            est = lambda_eval(b, cfg.d_value, cfg.p_value, cfg.order, cfg.precision).as_dict()
            if cfg.format == "json":
                print(dumps({"schema": "monodimer.lambda/1", "d": str(cfg.d_value),
                             "p": str(cfg.p_value), **est}), file=out)
            else:
                for key, value in est.items():
                    print(f"{key} = {value}", file=out)
            return EXIT_OK
        raise UsageError(f"unknown command {cfg.command}")
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Divergence, ConsistencyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DIVERGENCE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monodimer",
                                     description="Exact series for the monomer-dimer lambda_d(p).")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=6)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")
    common.add_argument("--d", type=_rational, default=None)
    common.add_argument("--b-file", default=None)

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("transform", parents=[common], help="the maps f and f^-1")
    p.add_argument("action", choices=("jbar-from-b", "b-from-jbar"))
    p = sub.add_parser("coeffs", parents=[common], help="a_k (first) or a'_k (second)")
    p.add_argument("action", choices=("first", "second"))
    p = sub.add_parser("verify", parents=[common], help="finite-order verification")
    p.add_argument("action", choices=("master", "catalan", "part3", "triangularity"))
    p.add_argument("--perturb", type=_perturbation, default=None,
                   help="k:delta, shift one input component (negative control)")
    p = sub.add_parser("eval", parents=[common], help="numeric lambda_d(p)")
    p.add_argument("action", choices=("lambda",))
    p.add_argument("--p", type=_rational, default=None)
    p.add_argument("--precision", type=int, default=DEFAULT_PRECISION)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            command=args.command, action=args.action, order=args.order,
            d_value=args.d, p_value=getattr(args, "p", None), format=args.format,
            b_file=args.b_file, precision=getattr(args, "precision", DEFAULT_PRECISION),
            perturbation=getattr(args, "perturb", None),
        )
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
