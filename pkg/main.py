"""
=============================================================================
 SYMMETRIC SPACE LAB — MAIN

 python main.py verify --space su-so --n 3         → отчёт по невязкам
 python main.py killing --group sp --n 2           → сверка формы Киллинга
 python main.py pharmonic --lambda -4 --mu -2 --p 3 → след собственно p-гармонической
 python main.py export --space sp-u --n 1 --candidate phi --points 64 --out v.tsv

 Один JSON-объект на stdout за запуск; логи в stderr.
 Коды выхода: 0 пройдено, 1 проверка не прошла, 2 ошибка использования или области.
=============================================================================
"""
import argparse
import logging
import sys
from pathlib import Path

import sympy

from config.settings import verify_config
from core.logging_config import configure_from_settings
from core.models import (
    GRASSMANNIANS, DimensionError, DomainError, EvaluationError, GroupFamily, GroupSpec,
    SpaceFamily, SpaceSpec, UsageError,
)

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def parse_complex(text: str) -> sympy.Expr:
    """`RE` или `RE,IM` как точное sympy-число (можно "1/3" и "0.25")."""
    parts = text.split(",")
    if len(parts) > 2:
        raise argparse.ArgumentTypeError(f"expected RE[,IM], got '{text}'")
    try:
        re = sympy.Rational(parts[0].strip())
        im = sympy.Rational(parts[1].strip()) if len(parts) == 2 else sympy.Integer(0)
    except (TypeError, ValueError, sympy.SympifyError) as e:
        raise argparse.ArgumentTypeError(f"not a number: '{text}'") from e
    return re + sympy.I * im


def parse_space(args) -> SpaceSpec:
    try:
        family = SpaceFamily(args.space)
    except ValueError:
        known = ", ".join(f.value for f in SpaceFamily)
        raise UsageError(f"unknown space '{args.space}' (known: {known})")
    if family is SpaceFamily.GROUP_TYPE:
        raise UsageError("group-type spaces carry no eigen catalog")
    m = args.m if family in GRASSMANNIANS else 0
    return SpaceSpec(family, n=args.n, m=m)


def parse_group(args) -> GroupSpec:
    try:
        family = GroupFamily(args.group)
    except ValueError:
        raise UsageError(f"unknown group '{args.group}' (known: so, u, su, sp)")
    return GroupSpec(family, args.n)


def check_counts(**counts):
    """Число точек и пар ≥ 1, seed ≥ 0."""
    for name, value in counts.items():
        floor = 0 if name == "seed" else 1
        if value < floor:
            raise UsageError(f"--{name} must be >= {floor}, got {value}")


def emit(report, json_path: str = None):
    payload = report.model_dump_json()
    print(payload)
    if json_path:
        Path(json_path).write_text(payload + "\n", encoding="utf-8")


# ═══════════════════════════════════════════════════════════
#  COMMANDS
# ═══════════════════════════════════════════════════════════

def cmd_verify(args) -> int:
    from core.verification import verify_space

    check_counts(samples=args.samples, seed=args.seed)
    report = verify_space(parse_space(args), samples=args.samples, seed=args.seed,
                          tol=args.tol, candidate=args.candidate)
    emit(report, args.json)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_killing(args) -> int:
    from core.verification import verify_killing

    check_counts(pairs=args.pairs, seed=args.seed)
    report = verify_killing(parse_group(args), pairs=args.pairs, seed=args.seed, tol=args.tol)
    emit(report)
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_pharmonic(args) -> int:
    from core.verification import pharmonic_report

    report = pharmonic_report(args.lam, args.mu, args.p, args.c1, args.c2)
    emit(report)
    return EXIT_PASS if report.proper else EXIT_FAIL


def cmd_export(args) -> int:
    from core.verification import export_samples

    if args.points < 0:
        raise UsageError("--points must be nonnegative")
    check_counts(seed=args.seed)
    summary = export_samples(parse_space(args), args.candidate, args.points, args.seed, args.out)
    emit(summary)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="symspace-lab",
        description="Eigenfunction and Killing form verification on classical symmetric spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def space_args(p):
        p.add_argument("--space", required=True, help="space id, e.g. complex-grassmannian, su-so")
        p.add_argument("--m", type=int, default=1, help="Grassmannian m (default 1)")
        p.add_argument("--n", type=int, default=2, help="size parameter n (default 2)")

    v = sub.add_parser("verify", help="eigen-residuals of the catalog candidates")
    space_args(v)
    v.add_argument("--samples", type=int, default=verify_config.DEFAULT_SAMPLES)
    v.add_argument("--seed", type=int, default=verify_config.DEFAULT_SEED)
    v.add_argument("--tol", type=float, default=verify_config.DEFAULT_TOLERANCE)
    v.add_argument("--json", default=None, metavar="PATH", help="also write the report here")
    v.add_argument("--candidate", default=None, help="restrict to one candidate, e.g. psi_1_0")
    v.set_defaults(handler=cmd_verify)

    k = sub.add_parser("killing", help="closed-form vs brute-force Killing form")
    k.add_argument("--group", required=True, help="so | u | su | sp")
    k.add_argument("--n", type=int, required=True)
    k.add_argument("--pairs", type=int, default=verify_config.KILLING_PAIRS)
    k.add_argument("--seed", type=int, default=verify_config.DEFAULT_SEED)
    k.add_argument("--tol", type=float, default=verify_config.KILLING_TOLERANCE)
    k.set_defaults(handler=cmd_killing)

    h = sub.add_parser("pharmonic", help="proper p-harmonic generator and reduction trace")
    h.add_argument("--lambda", dest="lam", type=parse_complex, required=True, metavar="RE[,IM]")
    h.add_argument("--mu", type=parse_complex, required=True, metavar="RE[,IM]")
    h.add_argument("--p", type=int, required=True)
    h.add_argument("--c1", type=parse_complex, default=sympy.Integer(1), metavar="RE[,IM]")
    h.add_argument("--c2", type=parse_complex, default=sympy.Integer(0), metavar="RE[,IM]")
    h.set_defaults(handler=cmd_pharmonic)

    e = sub.add_parser("export", help="candidate values at seeded points")
    space_args(e)
    e.add_argument("--candidate", required=True)
    e.add_argument("--points", type=int, default=verify_config.DEFAULT_SAMPLES)
    e.add_argument("--seed", type=int, default=verify_config.DEFAULT_SEED)
    e.add_argument("--out", required=True, metavar="PATH")
    e.set_defaults(handler=cmd_export)

    return parser


def main(argv=None) -> int:
    configure_from_settings()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_PASS if not e.code else EXIT_USAGE

    try:
        return args.handler(args)
    except (UsageError, DomainError, DimensionError) as e:
        logger.error(f"{type(e).__name__}: {e}")
        return EXIT_USAGE
    except EvaluationError as e:
        where = f" (basis direction {e.direction})" if e.direction is not None else ""
        logger.error(f"evaluation failed{where}: {e}")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
