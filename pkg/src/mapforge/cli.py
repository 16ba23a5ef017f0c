"""Command-line front end.

Every verb prints ``key: value`` lines.  Exit status: 0 for success or an
affirmative answer, 1 for a well-formed negative answer or an unmet
precondition, 2 for unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional, Sequence

from .errors import BadParams, MapforgeError, PreconditionFailed, ValidationError
from .fixtures import cube, projective_loop, random_map, random_projective_eulerian, tetrahedron
from .gauss import ColoredGaussCode, GaussCode, oracle_realize, pn_code, realize_xi_le_1, rosenstiehl_planar, surface_of_coloring
from .io import format_code, format_map, read_code, read_map
from .maps import classify_surface, induced_graph
from .orbit import GAMMA_TAGS, dual_graph, gamma, phial_graph
from .richness import deficiency, line_system_medial
from .sweeps import SUITES, run_sweep
from .transversal import min_transversal_general, oracle_min_transversal, projminmax

DEFAULT_SEED = 1


class Negative(Exception):
    """A well-formed negative answer; the report is already printed."""


def _emit(lines: Sequence[str]) -> None:
    for line in lines:
        print(line)


def _bool(x: bool) -> str:
    return "true" if x else "false"


def _surface_lines(s) -> list[str]:
    return [f"chi: {s.chi}", f"xi: {s.xi}", f"orientable: {_bool(s.orientable)}", f"surface: {s.name}"]


def _plain(code) -> GaussCode:
    return code.code if isinstance(code, ColoredGaussCode) else code


# ---------------------------------------------------------------- verbs


def cmd_classify(args) -> None:
    m = read_map(args.file)
    _emit(_surface_lines(classify_surface(m)))
    if args.dot:
        graph = {"map": induced_graph, "dual": dual_graph, "phial": phial_graph}[args.dot](m)
        print(graph.to_dot({"map": "G_M", "dual": "G_D", "phial": "G_P"}[args.dot]))


def cmd_orbit(args) -> None:
    m = read_map(args.file)
    for tag in GAMMA_TAGS:
        s = classify_surface(gamma(m, tag))
        print(f"{tag}: chi={s.chi} xi={s.xi} orientable={_bool(s.orientable)} surface={s.name}")


def cmd_deficiency(args) -> None:
    rep = deficiency(read_map(args.file))
    _emit([f"{k}: {_bool(v) if isinstance(v, bool) else v}" for k, v in rep.as_dict().items()])
    if not rep.rich:
        raise Negative


def cmd_realize(args) -> None:
    code = _plain(read_code(args.file))
    r = realize_xi_le_1(code)
    wanted = {"plane": 0, "projective": 1, "any": None}[args.surface]
    rows = [] if r is None else [(b, s) for b, s in zip(r.colorings, r.surfaces) if wanted is None or s.xi == wanted]
    print(f"realizable: {_bool(bool(rows))}")
    if not rows:
        raise Negative
    print(f"colorings: {len(rows)}")
    for i, (black, s) in enumerate(rows, 1):
        print(f"coloring {i}: black={' '.join(sorted(black, key=code.symbols.index))} surface={s.name}")
    print(f"surface: {min(rows, key=lambda row: row[1].xi)[1].name}")


def cmd_surface_of(args) -> None:
    code = read_code(args.file)
    if not isinstance(code, ColoredGaussCode):
        code = ColoredGaussCode(code, frozenset())
    _emit(_surface_lines(surface_of_coloring(code)))


def cmd_rosenstiehl(args) -> None:
    ok = rosenstiehl_planar(_plain(read_code(args.file)))
    print(f"planar: {_bool(ok)}")
    if not ok:
        raise Negative


def cmd_projminmax(args) -> None:
    m = read_map(args.file)
    if args.doubled:
        k, witness = min_transversal_general(m)
        print(f"min_transversal: {k}")
        for i, c in enumerate(witness, 1):
            print(f"circuit {i}: {' '.join(c)}")
        return
    cert = projminmax(m)
    print(f"min_transversal: {cert.size}")
    for i, c in enumerate(cert.omega0, 1):
        print(f"circuit {i}: {' '.join(c)}")
    print(f"dual_circuit: {' '.join(lab for lab in m.labels if lab in cert.r0)}")
    print(f"splits: {cert.stats['splits']}")


def cmd_oracle(args) -> None:
    if args.what == "min-transversal":
        print(f"min_transversal: {oracle_min_transversal(read_map(args.file))}")
        return
    code = _plain(read_code(args.file))
    found = oracle_realize(code, args.max_xi)
    print(f"realizable: {_bool(found is not None)}")
    if found is None:
        raise Negative
    black, s = found
    print(f"black: {' '.join(sorted(black, key=code.symbols.index))}")
    _emit(_surface_lines(s))


def cmd_gen(args) -> None:
    kind, n = args.kind, args.n
    needs_n = kind in ("pn", "lines")
    if needs_n and (n is None or n < 1):
        raise BadParams(f"gen {kind} needs a positive count")
    if not needs_n and n is not None:
        raise BadParams(f"gen {kind} takes no count")
    if kind == "pn":
        text = format_code(pn_code(n))
    elif kind == "random":
        if args.edges is None or args.edges < 1:
            raise BadParams("gen random needs --edges k with k >= 1")
        seed = DEFAULT_SEED if args.seed is None else args.seed
        maker = random_projective_eulerian if args.projective_eulerian else random_map
        text = format_map(maker(args.edges, seed))
    else:
        maker = {"cube": cube, "tetrahedron": tetrahedron, "loop": projective_loop, "lines": None}[kind]
        text = format_map(line_system_medial(n).map if kind == "lines" else maker())
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_sweep(args) -> None:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("MAPFORGE_SEED", DEFAULT_SEED))
    rep = run_sweep(args.suite, args.trials, seed)
    _emit(rep.lines())
    if rep.violations:
        raise Negative


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mapforge", description="Maps as 3-edge-colored cubic graphs.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help_, file_help="map file, or - for standard input"):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=func)
        if file_help:
            sp.add_argument("file", help=file_help)
        return sp

    sp = verb("classify", cmd_classify, "Euler characteristic, connectivity and orientability")
    sp.add_argument("--dot", choices=("map", "dual", "phial"), help="also print G_M, G_D or G_P in DOT")
    verb("orbit", cmd_orbit, "surfaces of the six maps of the orbit")
    verb("deficiency", cmd_deficiency, "deficiency report (exit 1 when not rich)")
    code_help = "Gauss code file, or - for standard input"
    sp = verb("realize", cmd_realize, "colorings realizing a Gauss code with xi <= 1", code_help)
    sp.add_argument("--surface", choices=("any", "plane", "projective"), default="any")
    verb("surface-of", cmd_surface_of, "surface of a colored Gauss code", code_help)
    verb("rosenstiehl", cmd_rosenstiehl, "plane realizability by the three conditions", code_help)
    sp = verb("projminmax", cmd_projminmax, "minimum r-circuit transversal with its certificate")
    sp.add_argument("--doubled", action="store_true", help="any projective map, via edge doubling")
    sp = verb("oracle", cmd_oracle, "brute-force oracles", None)
    sp.add_argument("what", choices=("min-transversal", "realize"))
    sp.add_argument("file")
    sp.add_argument("--max-xi", type=int, default=1)
    sp = verb("gen", cmd_gen, "write a fixture file", None)
    sp.add_argument("kind", choices=("cube", "tetrahedron", "loop", "pn", "lines", "random"))
    sp.add_argument("n", nargs="?", type=int)
    sp.add_argument("--edges", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--projective-eulerian", action="store_true", help="random connected projective eulerian map")
    sp.add_argument("-o", "--output")
    sp = verb("sweep", cmd_sweep, "seeded property sweep", None)
    sp.add_argument("suite", help=f"one of: {', '.join(SUITES)}")
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--seed", type=int, help="default: $MAPFORGE_SEED or 1")
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except Negative:
        return 1
    except ValidationError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 2
    except PreconditionFailed as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except MapforgeError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return getattr(exc, "exit_code", 1)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
