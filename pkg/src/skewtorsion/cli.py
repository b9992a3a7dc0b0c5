"""Command-line interface: ``skewtorsion list|verify|spectrum|square-dirac|gap``."""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from fractions import Fraction

from . import catalog as cat
from .casimir import InsufficientData, einstein_sasakian_gap
from .linalg import SpectrumError
from .scalar import format_scalar
from .uea import STIEFEL_H, build_stiefel_dirac, stiefel_casimir, stiefel_square

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _y_value(text: str) -> Fraction:
    y = _rational(text)
    if not 0 < y < 1:
        raise argparse.ArgumentTypeError("y must lie strictly between 0 and 1")
    return y


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="skewtorsion", description="Exact verification of Casimir-operator computations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sub.add_parser("list", help="list catalog geometries")

    v = sub.add_parser("verify", help="verify catalog entries or a geometry file")
    v.add_argument("name", nargs="?")
    v.add_argument("--all", action="store_true")
    v.add_argument("--file", help="geometry JSON document")
    v.add_argument("--json", action="store_true", help="emit one JSON document")
    v.add_argument("--tol", type=float, default=cat.DEFAULT_TOL)
    v.add_argument("--y", type=_y_value, action="append", help="Aloff-Wallach parameter (repeatable)")

    s = sub.add_parser("spectrum", help="exact spectrum of an endomorphism")
    s.add_argument("name")
    s.add_argument("--operator", choices=sorted(cat.OPERATORS), required=True)
    s.add_argument("--tol", type=float, default=cat.DEFAULT_TOL)
    s.add_argument("--y", type=_y_value, action="append")

    d = sub.add_parser("square-dirac", help="square D^{1/3} on a homogeneous example")
    d.add_argument("space", choices=["stiefel"])

    g = sub.add_parser("gap", help="Einstein-Sasakian kernel feasibility and gap")
    g.add_argument("--mu-min", type=_rational, required=True)
    return p


def _cmd_list(args, out) -> int:
    for e in cat.load_catalog():
        out.write(f"{e.name}\t{e.description}\n")
    return EXIT_OK


def _selected(args) -> list:
    if args.file:
        if args.all or args.name:
            raise UsageError("--file cannot be combined with a name or --all")
        try:
            return [cat.load_geometry_file(args.file)]
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot load {args.file}: {exc}") from None
    entries = cat.load_catalog(args.y)
    if args.all:
        if args.name:
            raise UsageError("give a name or --all, not both")
        return entries
    if not args.name:
        raise UsageError("verify needs a geometry name, --all or --file")
    chosen = [e for e in entries if e.name == args.name]
    if not chosen:
        raise UsageError(f"unknown geometry {args.name!r}; try 'skewtorsion list'")
    return chosen


def _cmd_verify(args, out) -> int:
    if args.tol <= 0:
        raise UsageError("--tol must be positive")
    reports = [cat.verify(e, args.tol) for e in _selected(args)]
    if args.json:
        out.write(cat.reports_to_json(reports) + "\n")
    else:
        for r in sorted(reports, key=lambda r: r.name):
            counts = Counter(x.status for x in r.results)
            out.write(f"{r.overall.upper()} {r.name} ({counts['pass']} pass, {counts['fail']} fail, "
                      f"{counts['skipped']} skipped)\n")
            for x in r.results:
                if x.status != "pass":
                    out.write(f"  {x.status}: {x.name}\n    computed: {x.computed}\n    expected: {x.expected}\n")
                    if x.detail:
                        out.write(f"    {x.detail}\n")
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_spectrum(args, out) -> int:
    entries = {e.name: e for e in cat.load_catalog(args.y)}
    if args.name not in entries:
        raise UsageError(f"unknown geometry {args.name!r}; try 'skewtorsion list'")
    try:
        values = cat.OPERATORS[args.operator](entries[args.name].record, args.tol)
    except InsufficientData as exc:
        raise UsageError(str(exc)) from None
    except SpectrumError as exc:
        out.write(f"spectrum not certified: {exc}\n")
        return EXIT_FAIL
    for value, mult in sorted(Counter(values).items(), key=lambda kv: float(kv[0])):
        out.write(f"{format_scalar(value)}\tx{mult}\n")
    return EXIT_OK


def _matrix_text(m) -> str:
    return "\n".join("  [" + ", ".join(str(m[i, j]) for j in range(m.size)) + "]" for i in range(m.size))


def _cmd_square_dirac(args, out) -> int:
    sd = build_stiefel_dirac()
    sq = stiefel_square(sd)
    out.write("(D^{1/3})^2 = -3*sum(X^2) + M1 + M2*E34 + M3*X5\n")
    for label, word in (("M1", ()), ("M2", (STIEFEL_H,)), ("M3", (4,))):
        out.write(f"{label} =\n{_matrix_text(sq.coefficient(word))}\n")
    out.write("Casimir operators (D^{1/3})^2 - 3 on S_0 and S_4 + S_-4:\n")
    for op in stiefel_casimir():
        out.write(f"  x{op.multiplicity}: {op}\n")
    return EXIT_OK


def _cmd_gap(args, out) -> int:
    if args.mu_min < 0:
        raise UsageError("--mu-min must be non-negative")
    out.write(f"{einstein_sasakian_gap(args.mu_min)}\n")
    return EXIT_OK


COMMANDS = {
    "list": _cmd_list,
    "verify": _cmd_verify,
    "spectrum": _cmd_spectrum,
    "square-dirac": _cmd_square_dirac,
    "gap": _cmd_gap,
}


def cli(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


def main() -> None:
    sys.exit(cli())


if __name__ == "__main__":
    main()
