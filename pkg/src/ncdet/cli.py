"""Command-line front end.

Every command prints one JSON object on stdout (``generate`` prints the
matrix file itself) and returns 0 on success, 1 when the result is undefined
or a sample is degenerate or an identity fails, and 2 on bad input. Logging
goes to stderr.
"""
import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional

from ncdet import logger
from ncdet.algebra.dets import Ordering, dieudonne, dieudonne_sq, moore, nu_matrix, nu_via_moore, predet, study
from ncdet.algebra.permanents import double_permanent, enumerate_paths, format_terms
from ncdet.algebra.quasidet import quasidet_block, quasidet_recursive
from ncdet.algebra.scalars import ScalarKind, format_scalar
from ncdet.components.generator import RandomMatrixGenerator
from ncdet.components.matrix_io import parse_matrix, serialize_matrix
from ncdet.components.verification import SUITE_MIN_N, IdentityVerification, suite_supports
from ncdet.config.configuration import ConfigurationManager
from ncdet.constants import DEFAULT_SEED, SUITES
from ncdet.exceptions import NcdetError
from ncdet.utils.common import save_text

SCALAR_CHOICES = [kind.value for kind in ScalarKind]


class CommandContext:
    def __init__(self, args: argparse.Namespace):
        self.args = args
        self._manager = None

    @property
    def manager(self) -> ConfigurationManager:
        if self._manager is None:
            self._manager = ConfigurationManager.load_or_default()
        return self._manager

    def matrix(self):
        return parse_matrix(self.args.matrix, self.manager.get_matrix_schema_config())

    def value(self, x):
        return format_scalar(x, as_float=getattr(self.args, "float", False))


def _emit(payload: dict):
    sys.stdout.write(json.dumps(payload) + "\n")


def _labels(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"expected comma-separated labels, got {text!r}") from None


# -- commands -----------------------------------------------------------------


def cmd_quasidet(ctx: CommandContext) -> int:
    args = ctx.args
    A = ctx.matrix()
    evaluate = quasidet_recursive if args.method == "recursive" else quasidet_block
    result = evaluate(A, args.row, args.col)
    payload = {"command": "quasidet", "method": args.method, "row": args.row, "col": args.col, "defined": result.defined}
    if not result.defined:
        payload["reason"] = f"undefined: {result.reason}"
        _emit(payload)
        return 1
    payload["value"] = ctx.value(result.value)
    _emit(payload)
    return 0


def cmd_moore(ctx: CommandContext) -> int:
    A = ctx.matrix()
    value = moore(A, leader=ctx.args.leader, max_n=ctx.manager.get_limits_config().moore_max_n)
    _emit({"command": "moore", "hermitian": A.is_hermitian(), "value": ctx.value(value)})
    return 0


def cmd_study(ctx: CommandContext) -> int:
    _emit({"command": "study", "value": ctx.value(study(ctx.matrix()))})
    return 0


def cmd_dieudonne(ctx: CommandContext) -> int:
    A = ctx.matrix()
    payload = {"command": "dieudonne", "squared": ctx.value(dieudonne_sq(A))}
    if ctx.args.float:
        payload["value"] = dieudonne(A)
    _emit(payload)
    return 0


def cmd_norm(ctx: CommandContext) -> int:
    A = ctx.matrix()
    if ctx.args.method == "recursive":
        value = nu_matrix(A)
    else:
        value = nu_via_moore(A, max_n=ctx.manager.get_limits_config().moore_max_n)
    _emit({"command": "norm", "method": ctx.args.method, "value": ctx.value(value)})
    return 0


def cmd_predet(ctx: CommandContext) -> int:
    A = ctx.matrix()
    I, J = Ordering(_labels(ctx.args.rows)), Ordering(_labels(ctx.args.cols))
    value = predet(A, I, J)
    _emit(
        {
            "command": "predet",
            "rows": list(I.seq),
            "cols": list(J.seq),
            "parity": I.parity() * J.parity(),
            "value": ctx.value(value),
        }
    )
    return 0


def cmd_permanent(ctx: CommandContext) -> int:
    args = ctx.args
    A = ctx.matrix()
    value = double_permanent(A, args.row, args.col, max_n=ctx.manager.get_limits_config().permanent_max_n)
    _emit({"command": "permanent", "row": args.row, "col": args.col, "value": ctx.value(value)})
    return 0


def cmd_expand(ctx: CommandContext) -> int:
    args = ctx.args
    terms = enumerate_paths(args.n, args.row, args.col, max_n=ctx.manager.get_limits_config().permanent_max_n)
    if args.permanent:
        lines = [term.path.word() for term in terms if term.spec.order == args.n]
    else:
        lines = format_terms(terms)
    if args.text:
        sys.stdout.write("".join(line + "\n" for line in lines))
    else:
        _emit({"command": "expand", "n": args.n, "row": args.row, "col": args.col, "count": len(lines), "terms": lines})
    return 0


def _verify_plan(suite: str, n: int, kind: ScalarKind, limits) -> List[tuple]:
    if suite != "all":
        return [(suite, kind)]
    plan = []
    for name in SUITES:
        suite_kind = kind.complex_kind if name == "commutative" and not kind.is_commutative else kind
        if not suite_supports(name, suite_kind) or n < SUITE_MIN_N.get(name, 1):
            logger.info(f"suite {name} not applicable to n={n} ({kind.value}), skipped")
            continue
        if name in ("thm33", "census") and n > limits.permanent_max_n:
            continue
        if name in ("moore", "study", "norm") and n > limits.moore_max_n:
            continue
        plan.append((name, suite_kind))
    return plan


def cmd_verify(ctx: CommandContext) -> int:
    args = ctx.args
    manager = ctx.manager
    kind = ScalarKind(args.scalar)
    reports = []
    for suite, suite_kind in _verify_plan(args.suite, args.n, kind, manager.get_limits_config()):
        config = manager.get_verification_config(
            suite,
            args.n,
            trials=args.trials,
            seed=args.seed,
            scalar=suite_kind.value,
            n_jobs=args.jobs,
            save_report=args.save_report,
            progress=args.progress,
        )
        verification = IdentityVerification(config=config)
        report = verification.run()
        if config.save_report:
            verification.save_report(report)
        reports.append(report)
    ok = all(report.ok for report in reports)
    _emit({"command": "verify", "ok": ok, "reports": [report.to_dict() for report in reports]})
    return 0 if ok else 1


def cmd_generate(ctx: CommandContext) -> int:
    args = ctx.args
    generator = RandomMatrixGenerator(ScalarKind(args.scalar), args.seed, ctx.manager.get_generator_config())
    if args.raw:
        A = generator.raw(args.n, hermitian=args.hermitian)
    elif args.hermitian:
        A = generator.generic_hermitian(args.n)
    else:
        A = generator.generic(args.n)
    text = serialize_matrix(A)
    if args.output:
        save_text(path=Path(args.output), text=text)
        _emit({"command": "generate", "path": str(args.output), "n": args.n, "seed": args.seed})
    else:
        sys.stdout.write(text)
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncdet",
        description="Quasideterminants and quaternionic determinants with exact arithmetic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_matrix(name: str, help_text: str, handler) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--matrix", required=True, help="matrix file (JSON: scalar, n, entries)")
        p.add_argument("--float", action="store_true", help="print values as floats")
        p.set_defaults(handler=handler)
        return p

    p = with_matrix("quasidet", "quasideterminant |A|_ij", cmd_quasidet)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--col", type=int, required=True)
    p.add_argument("--method", choices=["block", "recursive"], default="block")

    p = with_matrix("moore", "Moore determinant", cmd_moore)
    p.add_argument("--leader", choices=["min", "max"], default="min", help="element each cycle starts with")

    with_matrix("study", "Study determinant det theta_n(A)", cmd_study)
    with_matrix("dieudonne", "squared Dieudonne determinant (--float adds the root)", cmd_dieudonne)

    p = with_matrix("norm", "matrix norm nu(A)", cmd_norm)
    p.add_argument("--method", choices=["moore", "recursive"], default="moore")

    p = with_matrix("predet", "predeterminant D_I,J(A)", cmd_predet)
    p.add_argument("--rows", required=True, help="row ordering, e.g. 2,1,3")
    p.add_argument("--cols", required=True, help="column ordering")

    p = with_matrix("permanent", "double permanent pi_ij(A)", cmd_permanent)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--col", type=int, required=True)

    p = sub.add_parser("expand", help="monomials of nu(A^ij)|A|_ij for a symbolic n x n matrix")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--row", type=int, required=True)
    p.add_argument("--col", type=int, required=True)
    p.add_argument("--permanent", action="store_true", help="only the monomials of pi_ij(A)")
    p.add_argument("--text", action="store_true", help="one term per line instead of JSON")
    p.set_defaults(handler=cmd_expand)

    p = sub.add_parser("verify", help="run a seeded verification suite")
    p.add_argument("--suite", choices=list(SUITES) + ["all"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--scalar", choices=SCALAR_CHOICES, default=ScalarKind.RATIONAL_QUATERNION.value)
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (joblib)")
    p.add_argument(
        "--save-report",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="write the JSON report under artifacts/ (default: verification.save_report)",
    )
    p.add_argument(
        "--progress",
        action=argparse.BooleanOptionalAction,
        default=None,
        help="show a progress bar on stderr (default: verification.progress)",
    )
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("generate", help="write a random generic matrix file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--scalar", choices=SCALAR_CHOICES, default=ScalarKind.RATIONAL_QUATERNION.value)
    p.add_argument("--hermitian", action="store_true")
    p.add_argument("--raw", action="store_true", help="skip the genericity check")
    p.add_argument("--output", help="file to write instead of stdout")
    p.set_defaults(handler=cmd_generate)

    return parser


def run(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (None, 0) else 2

    logger.info(f"command {args.command}")
    try:
        return args.handler(CommandContext(args))
    except NcdetError as e:
        logger.error(f"{args.command}: {e}")
        _emit({"command": args.command, "error": str(e), "type": type(e).__name__})
        return e.exit_code
    except ZeroDivisionError as e:
        logger.error(f"{args.command}: {e}")
        _emit({"command": args.command, "error": str(e), "type": "ZeroDivisionError"})
        return 1
    except ValueError as e:
        logger.error(f"{args.command}: {e}")
        _emit({"command": args.command, "error": str(e), "type": "ValueError"})
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
