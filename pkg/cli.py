"""
Command-line front end.

Results go to standard output and are byte-deterministic for fixed inputs and
budgets; diagnostics go to standard error through logging.

Exit codes: 0 yes/success, 1 no/failure, 2 unknown or budget exhausted,
3 input error.
"""

import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence

import pandas as pd

import parallel
from certify import FactStore, Statement, query, saturate
from complexes import SimplicialMap, euler_characteristic, iterated_subdivision, mapping_torus, product, wedge
from corpus import random_complex, write_corpus
from covers import cat_lower, cat_upper, multiplicity_and_nerve, validate_cover
from errors import CatCoverError
from fca import check_fca
from fibration import combine_covers
from groups import Answer, Budget, GroupClass, Verdict, abelianization, edge_path_presentation, simplify_presentation
from settings import Settings
from workspace import Workspace, complex_to_dict, cover_to_dict, dumps, presentation_from_dict, read_json, write_json

logger = logging.getLogger(__name__)

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3

_EXIT_CODES = {Answer.YES: EXIT_YES, Answer.NO: EXIT_NO, Answer.UNKNOWN: EXIT_UNKNOWN}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argument errors become exit code 3 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _emit(data) -> None:
    sys.stdout.write(dumps(data))


def _table(rows: List[dict]) -> None:
    if rows:
        print(pd.DataFrame(rows).to_string(index=False))


def _verdict_exit(verdict: Verdict) -> int:
    print(verdict.answer.value)
    return _EXIT_CODES[verdict.answer]


def _kind_of(data) -> str:
    if isinstance(data, dict):
        if "vertex_map" in data:
            return "map"
        if "pieces" in data:
            return "cover"
        if "kind" in data:
            return "bundle"
        if "generators" in data:
            return "presentation"
    return "complex"


# --- commands -------------------------------------------------------------

def cmd_validate(args, ws: Workspace) -> int:
    kind = _kind_of(read_json(args.file))
    if kind == "map":
        f = ws.load_map(args.file)
        print(f"ok map {f.name}: {f.source.name} -> {f.target.name}")
    elif kind == "cover":
        c = ws.load_cover(args.file)
        print(f"ok cover of {c.complex.name}: {c.cardinality} pieces")
    elif kind == "bundle":
        b = ws.load_bundle(args.file)
        print(f"ok {b.kind.value} bundle {b.total.name} over {b.base.name}")
    elif kind == "presentation":
        P = presentation_from_dict(read_json(args.file))
        print(f"ok presentation: {P.generator_count} generators, {len(P.relators)} relators")
    else:
        X = ws.load_complex(args.file)
        print(f"ok complex {X.name}: f-vector {X.f_vector()}")
    return EXIT_YES


def cmd_chi(args, ws: Workspace) -> int:
    print(euler_characteristic(ws.load_complex(args.file)))
    return EXIT_YES


def cmd_subdivide(args, ws: Workspace) -> int:
    X = ws.load_complex(args.file)
    steps = iterated_subdivision(X, args.n)
    _emit(complex_to_dict(steps[-1].subdivided if steps else X))
    return EXIT_YES


def cmd_pi1(args, ws: Workspace) -> int:
    X = ws.load_complex(args.file)
    P, _ = edge_path_presentation(X, args.basepoint)
    if args.simplify is not None:
        P = simplify_presentation(P, args.simplify)
    data = P.to_dict()
    if args.abelian:
        data["abelianization"] = abelianization(P).to_dict()
    _emit(data)
    return EXIT_YES


def cmd_product(args, ws: Workspace) -> int:
    X, Y = ws.load_complex(args.first), ws.load_complex(args.second)
    total, _ = product(X, Y, args.name or "")
    _emit(complex_to_dict(total))
    return EXIT_YES


def cmd_wedge(args, ws: Workspace) -> int:
    complexes = [ws.load_complex(p) for p in args.files]
    basepoints = args.basepoints if args.basepoints is not None else [0] * len(complexes)
    _emit(complex_to_dict(wedge(complexes, basepoints, args.name or "")))
    return EXIT_YES


def cmd_mapping_torus(args, ws: Workspace) -> int:
    X = ws.load_complex(args.file)
    g = SimplicialMap(X, X, tuple(args.automorphism), "g")
    total, _, _ = mapping_torus(X, g, args.layers, args.name or "")
    _emit(complex_to_dict(total))
    return EXIT_YES


def cmd_cover_check(args, ws: Workspace) -> int:
    cover = ws.load_cover(args.file)
    C = GroupClass.parse(args.group_class)
    validation = validate_cover(cover, C, ws.budget)
    _table([
        {"piece": i, "vertices": " ".join(map(str, p)), "verdict": v.answer.value,
         "reason": "; ".join(v.justification)}
        for i, (p, v) in enumerate(zip(cover.pieces, validation.piece_verdicts))
    ])
    return _verdict_exit(validation.overall)


def cmd_nerve(args, ws: Workspace) -> int:
    result = multiplicity_and_nerve(ws.load_cover(args.file))
    print(f"multiplicity {result.multiplicity}")
    _emit(complex_to_dict(result.nerve))
    return EXIT_YES


def _write_witness(directory: Path, bound) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    X = bound.cover.complex
    write_json(directory / f"{X.name}.json", complex_to_dict(X))
    write_json(directory / f"{X.name}.cover.json", cover_to_dict(bound.cover))


def cmd_cat_upper(args, ws: Workspace) -> int:
    X = ws.load_complex(args.file)
    C = GroupClass.parse(args.group_class)
    s: Settings = args.settings
    bound = cat_upper(X, C, args.strategy, ws.budget, s.exact_vertex_cap, s.greedy_depth)
    for step in bound.trace:
        logger.info("greedy: %s", step)
    print(bound.bound)
    _emit(cover_to_dict(bound.cover))
    if args.out:
        _write_witness(Path(args.out), bound)
    if args.strategy == "exact" and not bound.optimal:
        logger.warning("some piece verdicts were unknown; %d may not be optimal", bound.bound)
    return EXIT_YES


def cmd_cat_lower(args, ws: Workspace) -> int:
    X = ws.load_complex(args.file)
    print(cat_lower(X, GroupClass.parse(args.group_class), ws.budget))
    return EXIT_YES


def cmd_combine(args, ws: Workspace) -> int:
    b = ws.load_bundle(args.bundle)
    fibre_cover = ws.load_cover(args.fibre_cover)
    base_cover = ws.load_cover(args.base_cover)
    _emit(cover_to_dict(combine_covers(b, fibre_cover, base_cover)))
    return EXIT_YES


def cmd_fca_check(args, ws: Workspace) -> int:
    f = ws.load_map(args.file)
    result = check_fca(f, GroupClass.parse(args.group_class), args.dim, ws.budget)
    _table([
        {"simplex": " ".join(map(str, r.target_simplex)), "fibre_vertices": r.fibre.vertex_count,
         "components": len(r.component_verdicts), "verdict": r.overall.answer.value}
        for r in result.reports
    ])
    if not result.reports:
        for note in result.verdict.justification:
            print(note)
    return _verdict_exit(result.verdict)


def cmd_certify(args, ws: Workspace) -> int:
    s: Settings = args.settings
    goal = Statement.parse(args.goal)
    store = FactStore(ws.budget)
    for path in args.facts or []:
        ws.load_facts(path, store)
    report = saturate(store, s.saturation_rounds, s.max_facts)
    result = query(store, goal)
    print(result.render())
    if result.success:
        return EXIT_YES
    return EXIT_UNKNOWN if report.exhausted else EXIT_NO


def cmd_corpus(args, ws: Workspace) -> int:
    out = Path(args.directory)
    written = write_corpus(out)
    rng = random.Random(args.settings.seed)
    for i in range(args.random):
        X = random_complex(rng).renamed(f"random{i}")
        path = out / f"{X.name}.json"
        write_json(path, complex_to_dict(X))
        written.append(path)
    for path in written:
        print(path.name)
    return EXIT_YES


# --- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="catcover", description="Bounds and certificates for fundamental-group constrained category.")
    parser.add_argument("--budget", type=int, help="Tietze move budget and certify round limit")
    parser.add_argument("--max-cosets", type=int, help="coset table size limit")
    parser.add_argument("--seed", type=int, help="seed for randomised corpus extras")
    parser.add_argument("--workers", type=int, help="worker threads (1 runs inline)")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = command("validate", cmd_validate, "validate a complex, map, cover, bundle or presentation file")
    p.add_argument("file")
    p = command("chi", cmd_chi, "Euler characteristic")
    p.add_argument("file")
    p = command("subdivide", cmd_subdivide, "iterated barycentric subdivision")
    p.add_argument("file")
    p.add_argument("-n", type=int, default=1)
    p = command("pi1", cmd_pi1, "edge-path presentation of the fundamental group")
    p.add_argument("file")
    p.add_argument("--basepoint", type=int, default=0)
    p.add_argument("--simplify", type=int, metavar="N", help="Tietze move budget")
    p.add_argument("--abelian", action="store_true", help="also print abelian invariants")
    p = command("product", cmd_product, "staircase product of two complexes")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--name")
    p = command("wedge", cmd_wedge, "one-point union")
    p.add_argument("files", nargs="+")
    p.add_argument("--basepoints", type=_int_list)
    p.add_argument("--name")
    p = command("mapping-torus", cmd_mapping_torus, "mapping torus of a simplicial automorphism")
    p.add_argument("file")
    p.add_argument("--automorphism", type=_int_list, required=True)
    p.add_argument("--layers", type=int, default=3)
    p.add_argument("--name")

    cover = sub.add_parser("cover", help="cover operations")
    cover_sub = cover.add_subparsers(dest="cover_command", required=True)
    p = cover_sub.add_parser("check", help="validate a cover against a group class")
    p.set_defaults(handler=cmd_cover_check)
    p.add_argument("file")
    p.add_argument("--class", dest="group_class", required=True)

    p = command("nerve", cmd_nerve, "multiplicity and nerve of a cover")
    p.add_argument("file")

    cat = sub.add_parser("cat", help="category bounds")
    cat_sub = cat.add_subparsers(dest="cat_command", required=True)
    p = cat_sub.add_parser("upper", help="upper bound with a witness cover")
    p.set_defaults(handler=cmd_cat_upper)
    p.add_argument("file")
    p.add_argument("--class", dest="group_class", required=True)
    p.add_argument("--strategy", choices=["stars", "greedy", "exact"], default="greedy")
    p.add_argument("--out", help="directory for the witness complex and cover files")
    p = cat_sub.add_parser("lower", help="lower bound from the fundamental group")
    p.set_defaults(handler=cmd_cat_lower)
    p.add_argument("file")
    p.add_argument("--class", dest="group_class", required=True)

    p = command("combine", cmd_combine, "combine a fibre cover and a base LS-cover")
    p.add_argument("bundle")
    p.add_argument("--fibre-cover", required=True)
    p.add_argument("--base-cover", required=True)

    fca = sub.add_parser("fca", help="fibre collapsing checks")
    fca_sub = fca.add_subparsers(dest="fca_command", required=True)
    p = fca_sub.add_parser("check", help="check every point fibre of a map")
    p.set_defaults(handler=cmd_fca_check)
    p.add_argument("file")
    p.add_argument("--class", dest="group_class", required=True)
    p.add_argument("--dim", type=int, required=True)

    p = command("certify", cmd_certify, "saturate facts and query a goal")
    p.add_argument("--goal", required=True)
    p.add_argument("--facts", action="append")

    p = command("corpus", cmd_corpus, "write the bundled standard corpus")
    p.add_argument("directory")
    p.add_argument("--random", type=int, default=0, help="also write this many random complexes")
    return parser


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity == 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_INPUT
    _configure_logging(args.verbose)

    try:
        settings = Settings().with_overrides(
            max_cosets=args.max_cosets,
            tietze_moves=args.budget,
            saturation_rounds=args.budget,
            seed=args.seed,
            workers=args.workers,
        )
        args.settings = settings
        parallel.configure(settings.workers)
        ws = Workspace(budget=Budget(settings.max_cosets, settings.tietze_moves))
        return args.handler(args, ws)
    except CatCoverError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
