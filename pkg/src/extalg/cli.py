"""Command-line entry point: ``extalg <subcommand> --k K --n N ...``.

Exit status: 0 on success, 1 when an axiom check fails, 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraElement, ExtensionAlgebra, block_ranks, verify_axioms
from .element_io import (
    element_to_json,
    format_algebra_element,
    parse_components,
    parse_matrix,
    render_block_table,
)
from .rational import (
    RatPolynomial,
    char_poly,
    format_rational,
    is_squarefree,
    mat_rank,
    matrix_to_json,
    min_poly,
)


class UsageError(Exception):
    pass


@dataclass
class CliConfig:
    k: int
    n: int
    format: str = "text"
    seed: int = 0
    samples: int = 3
    powers: int | None = None
    project: bool = False

    def __post_init__(self):
        if not 1 <= self.k < self.n:
            raise UsageError(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        if self.samples < 1:
            raise UsageError("--samples must be >= 1")


def _workers() -> int:
    raw = os.environ.get("EXTALG_THREADS", "0")
    try:
        return max(int(raw), 0)
    except ValueError:
        raise UsageError(f"EXTALG_THREADS must be an integer, got {raw!r}") from None


def _poly_json(p: RatPolynomial) -> list[str]:
    return [format_rational(c) for c in p.coeffs]


def _read_element(args, alg: ExtensionAlgebra, which: str) -> list[AlgebraElement]:
    expr = getattr(args, which, None)
    path = getattr(args, f"{which}_file", None)
    if expr is None and path is None:
        raise UsageError(f"--{which} or --{which}-file is required")
    parts: list[AlgebraElement] = []
    if path is not None:
        with open(path) as fh:
            parts.append(alg.element(parse_matrix(fh.read(), alg.n, project=args.project)))
    if expr is not None:
        parts.extend(parse_components(expr, alg))
    return parts


def _bracket_components(alg: ExtensionAlgebra, xs, ys) -> list[AlgebraElement]:
    by_grade: dict[int, AlgebraElement] = {}
    for x in xs:
        for y in ys:
            r = alg.bracket(x, y)
            by_grade[r.grade] = by_grade[r.grade] + r if r.grade in by_grade else r
    return [by_grade[g] for g in sorted(by_grade)]


def cmd_build(args, alg: ExtensionAlgebra):
    if args.format == "json":
        return {
            "k": alg.k,
            "n": alg.n,
            "m": alg.m,
            "dim": alg.dim,
            "grade_degrees": list(alg.grade_degrees),
            "grade_dims": list(alg.grade_dims),
            "offsets": list(alg.offsets),
        }
    return alg.describe()


def cmd_bracket(args, alg):
    result = _bracket_components(alg, _read_element(args, alg, "x"), _read_element(args, alg, "y"))
    nonzero = [r for r in result if not r.is_zero()]
    if args.format == "json":
        return {"components": [element_to_json(r) for r in nonzero]}
    if not nonzero:
        return "0"
    lines = []
    for r in nonzero:
        sep = "\n" if r.grade == 0 else " "
        lines.append(f"grade {r.grade}:{sep}{format_algebra_element(r)}")
    return "\n".join(lines)


def cmd_ad(args, alg):
    ad = alg.ad(_read_element(args, alg, "x"))
    if args.rank:
        r = ad.rank()
        return {"rank": r} if args.format == "json" else f"rank {r}"
    if args.format == "json":
        return matrix_to_json(ad.matrix)
    return str(ad.matrix)


def cmd_killing(args, alg):
    k = alg.killing_matrix()
    if args.format == "json":
        out = {"matrix": matrix_to_json(k)}
        if args.rank:
            out["rank"] = mat_rank(k)
        if args.charpoly:
            out["charpoly"] = _poly_json(char_poly(k))
        return out
    lines = []
    if not (args.rank or args.charpoly):
        lines.append(str(k))
    if args.rank:
        lines.append(f"rank {mat_rank(k)}")
    if args.charpoly:
        lines.append(f"charpoly {char_poly(k)}")
    return "\n".join(lines)


def cmd_block_ranks(args, alg):
    ad = alg.ad(_read_element(args, alg, "x"))
    table = block_ranks(ad, None if args.auto else args.powers)
    if args.format == "json":
        return table.to_json()
    return render_block_table(table)


def cmd_charpoly(args, alg):
    p = char_poly(alg.ad(_read_element(args, alg, "x")).matrix)
    return {"charpoly": _poly_json(p)} if args.format == "json" else str(p)


def cmd_semisimple(args, alg):
    mp = min_poly(alg.ad(_read_element(args, alg, "x")).matrix)
    ok = is_squarefree(mp)
    if args.format == "json":
        return {"semisimple": ok, "min_poly": _poly_json(mp)}
    return f"semisimple {str(ok).lower()}\nmin_poly {mp}"


def cmd_centralizer(args, alg):
    xs = _read_element(args, alg, "x")
    if len(xs) != 1:
        raise UsageError("centralizer needs a homogeneous --x")
    if not 0 <= args.grade < alg.m:
        raise UsageError(f"--grade must be in [0, {alg.m})")
    basis = alg.centralizer_in_grade(xs[0], args.grade)
    if args.format == "json":
        return {"grade": args.grade, "dimension": len(basis), "basis": [element_to_json(b) for b in basis]}
    lines = [f"dimension {len(basis)}"]
    for b in basis:
        lines.append(format_algebra_element(b) if b.grade else str(b.payload))
    return "\n".join(lines)


def cmd_verify(args, alg):
    pairs = None
    if args.grades:
        try:
            i, j = (int(v) for v in args.grades.split(","))
        except ValueError:
            raise UsageError(f"--grades expects 'i,j', got {args.grades!r}") from None
        if not (0 <= i < alg.m and 0 <= j < alg.m):
            raise UsageError(f"--grades out of range for m={alg.m}")
        pairs = [(i, j)]
    report = verify_axioms(alg, samples=args.samples, seed=args.seed, grade_pairs=pairs, workers=_workers())
    if args.format == "json":
        out = report.to_json()
    else:
        lines = [f"({alg.k},{alg.n}) samples={args.samples} seed={args.seed}"]
        for p in report.pairs:
            lines.append(
                f"grades {p.grades[0]},{p.grades[1]}: skew={str(p.skew).lower()} "
                f"symmetric={str(p.symmetric).lower()} jacobi={str(p.jacobi).lower()}"
            )
        lines.append(f"skew={str(report.skew).lower()} jacobi={str(report.jacobi).lower()}")
        out = "\n".join(lines)
    return out, (0 if report.ok else 1)


COMMANDS = {
    "build": cmd_build,
    "bracket": cmd_bracket,
    "ad": cmd_ad,
    "killing": cmd_killing,
    "block-ranks": cmd_block_ranks,
    "charpoly": cmd_charpoly,
    "semisimple": cmd_semisimple,
    "centralizer": cmd_centralizer,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, required=True, help="step degree")
    common.add_argument("--n", type=int, required=True, help="ambient dimension")
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    elem = argparse.ArgumentParser(add_help=False)
    elem.add_argument("--x", help="exterior element, e.g. 'e0*e1 + e2*e3'")
    elem.add_argument("--x-file", dest="x_file", help="JSON file with a grade-0 matrix")
    elem.add_argument("--project", action="store_true", help="project --x-file/--y-file matrices to trace zero")

    parser = argparse.ArgumentParser(prog="extalg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    sub.add_parser("build", parents=[common], help="describe the algebra")

    p = sub.add_parser("bracket", parents=[common, elem], help="bracket of two elements")
    p.add_argument("--y", help="second exterior element")
    p.add_argument("--y-file", dest="y_file", help="JSON file with a grade-0 matrix")

    p = sub.add_parser("ad", parents=[common, elem], help="adjoint matrix")
    p.add_argument("--rank", action="store_true", help="print only the rank")

    p = sub.add_parser("killing", parents=[common], help="Killing matrix")
    p.add_argument("--rank", action="store_true")
    p.add_argument("--charpoly", action="store_true")

    p = sub.add_parser("block-ranks", parents=[common, elem], help="ranks of grade blocks of powers of ad")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--powers", type=int, default=None)
    g.add_argument("--auto", action="store_true", help="continue until the rank stabilises (default)")

    sub.add_parser("charpoly", parents=[common, elem], help="characteristic polynomial of ad")
    sub.add_parser("semisimple", parents=[common, elem], help="is ad diagonalisable over the algebraic closure")

    p = sub.add_parser("centralizer", parents=[common, elem], help="centralizer of x inside one grade")
    p.add_argument("--grade", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="seeded skew-symmetry and Jacobi checks")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grades", help="restrict to one ordered grade pair 'i,j'")
    return parser


def _emit(payload, fmt: str, out_path: str | None) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False) if fmt == "json" else str(payload)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "block-ranks" and args.powers is not None and args.powers < 1:
        print("extalg: error: --powers must be >= 1", file=sys.stderr)
        return 2
    try:
        CliConfig(args.k, args.n, args.format, getattr(args, "seed", 0), getattr(args, "samples", 3))
        alg = ExtensionAlgebra(args.k, args.n)
        result = COMMANDS[args.command](args, alg)
    except (UsageError, ValueError, OSError) as exc:
        print(f"extalg: error: {exc}", file=sys.stderr)
        return 2
    code = 0
    if isinstance(result, tuple):
        result, code = result
    _emit(result, args.format, args.out)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
