"""Seeded property sweeps shared by the command line and the test suite.

A suite draws ``trials`` instances from one seeded generator and checks a
property on each.  A violating instance is shrunk greedily (drop one edge
or one symbol while the violation persists) before it is reported.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import MapforgeError, PreconditionFailed, UnknownSuite
from .fixtures import random_map, random_projective_eulerian
from .gauss import (
    ColoredGaussCode,
    GaussCode,
    crossing_algebra_checks,
    oracle_colorings,
    random_code,
    realize_xi_le_1,
)
from .io import format_code, format_map
from .maps import Map, classify_surface, euler_characteristic, is_connected, is_orientable
from .orbit import GAMMA_TAGS, bicolored_polygons, even_polygon_decomposition, gamma
from .richness import absorption_holds, def_value, delete_square, triple_inclusion_gap
from .transversal import check_projective_eulerian, hits_all_r_circuits, oracle_min_transversal, projminmax


@dataclass(frozen=True)
class Suite:
    name: str
    make: Callable  # (rng) -> instance
    check: Callable  # instance -> bool (True when the property holds)
    shrink: Callable  # instance -> iterable of smaller instances
    show: Callable  # instance -> text


@dataclass
class SweepReport:
    suite: str
    seed: int
    trials: int
    violations: int = 0
    reproducer: Optional[str] = None
    notes: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [f"suite: {self.suite}", f"seed: {self.seed}", f"trials: {self.trials}", f"violations: {self.violations}"]
        out += [f"{k}: {v}" for k, v in self.notes.items()]
        if self.reproducer is not None:
            out.append("reproducer:")
            out += ["  " + line for line in self.reproducer.splitlines()]
        return out


# ------------------------------------------------------------ instances


def _random_small_map(rng: random.Random, max_edges: int = 14) -> Map:
    return random_map(rng.randint(1, max_edges), rng.randrange(1 << 30))


def _shrink_map(m: Map):
    for lab in m.labels:
        if m.n_squares > 1:
            try:
                yield delete_square(m, lab)
            except MapforgeError:
                continue


def _random_colored(rng: random.Random, max_symbols: int = 12) -> ColoredGaussCode:
    n = rng.randint(1, max_symbols)
    code = random_code(n, rng.randrange(1 << 30))
    return ColoredGaussCode(code, code.subset(rng.randrange(1 << n)))


def _drop_symbol(code: GaussCode, y: str) -> Optional[GaussCode]:
    seq = [s for s in code.seq if s != y]
    return GaussCode.of(seq) if seq else None


def _shrink_code(code: GaussCode):
    for y in code.symbols:
        smaller = _drop_symbol(code, y)
        if smaller is not None:
            yield smaller


def _shrink_colored(c: ColoredGaussCode):
    for y in c.code.symbols:
        smaller = _drop_symbol(c.code, y)
        if smaller is not None:
            yield ColoredGaussCode(smaller, c.black - {y})


# --------------------------------------------------------------- checks


def gamma_deficiencies_equal(m: Map) -> bool:
    values = {def_value(gamma(m, t)) for t in GAMMA_TAGS}
    return len(values) == 1


def triple_gap_is_xi(m: Map) -> bool:
    if not is_connected(m):
        return True
    return triple_inclusion_gap(m) == classify_surface(m).xi


def parity_holds(inst) -> bool:
    """Orientable ⇒ χ even, and a random sum of bicolored polygons is a
    disjoint union of even polygons."""
    m, picks = inst
    if is_orientable(m) and euler_characteristic(m) % 2:
        return False
    polys = bicolored_polygons(m)
    chosen = [polys[i] for i in picks if i < len(polys)]
    return even_polygon_decomposition(m, chosen) is not None


def _make_parity(rng: random.Random):
    m = _random_small_map(rng)
    n = len(bicolored_polygons(m))
    return m, tuple(i for i in range(n) if rng.random() < 0.5)


def gauss_xi_agrees(x: GaussCode) -> bool:
    r = realize_xi_le_1(x)
    got = set(r.colorings) if r is not None else set()
    return got == set(oracle_colorings(x, 1, limit=16))


def crossing_algebra_holds(c: ColoredGaussCode) -> bool:
    return all(crossing_algebra_checks(c).values())


def minimax_holds(m: Map) -> bool:
    """projminmax gives a verified certificate of the oracle size, within the split ceiling.

    Shrinking can leave the class of connected projective eulerian maps;
    such instances do not count as violations."""
    try:
        check_projective_eulerian(m)
    except PreconditionFailed:
        return True
    cert = projminmax(m)
    if cert.problems(m) or cert.stats["splits"] > cert.stats["ceiling"]:
        return False
    return cert.size == len(cert.omega0) == oracle_min_transversal(m) and hits_all_r_circuits(m, cert.r0, 8)


SUITES: dict[str, Suite] = {
    "deficiency": Suite("deficiency", _random_small_map, gamma_deficiencies_equal, _shrink_map, format_map),
    "absorption": Suite("absorption", _random_small_map, absorption_holds, _shrink_map, format_map),
    "triple": Suite("triple", _random_small_map, triple_gap_is_xi, _shrink_map, format_map),
    "parity": Suite(
        "parity",
        _make_parity,
        parity_holds,
        lambda inst: ((m, inst[1]) for m in _shrink_map(inst[0])),
        lambda inst: format_map(inst[0]) + "# polygons: " + " ".join(map(str, inst[1])) + "\n",
    ),
    "crossing": Suite("crossing", _random_colored, crossing_algebra_holds, _shrink_colored, format_code),
    "gauss-xi": Suite(
        "gauss-xi",
        lambda rng: random_code(rng.randint(1, 10), rng.randrange(1 << 30)),
        gauss_xi_agrees,
        _shrink_code,
        format_code,
    ),
    "minimax": Suite(
        "minimax",
        lambda rng: random_projective_eulerian(rng.randint(2, 14), rng.randrange(1 << 30)),
        minimax_holds,
        _shrink_map,
        format_map,
    ),
}


def _safe_check(suite: Suite, inst) -> bool:
    try:
        return bool(suite.check(inst))
    except Exception:  # any crash on a generated instance is a violation
        return False


def minimize(suite: Suite, inst):
    """Greedily replace ``inst`` by a smaller violating instance until none is left."""
    improved = True
    while improved:
        improved = False
        for smaller in suite.shrink(inst):
            if not _safe_check(suite, smaller):
                inst = smaller
                improved = True
                break
    return inst


def run_sweep(name: str, trials: int, seed: int) -> SweepReport:
    try:
        suite = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}") from None
    rng = random.Random(seed)
    report = SweepReport(name, seed, trials)
    first = None
    for _ in range(trials):
        inst = suite.make(rng)
        if not _safe_check(suite, inst):
            report.violations += 1
            if first is None:
                first = inst
    if first is not None:
        report.reproducer = suite.show(minimize(suite, first))
    return report
