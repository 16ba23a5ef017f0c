"""One test per acceptance criterion.

Each prints ``criterion N: PASS|FAIL (...)`` and the lines are repeated in
the terminal summary.  Time budgets are part of the criterion.
"""

import random
import time

from conftest import ACCEPTANCE_LINES
from mapforge.fixtures import cube, random_map, random_maps, random_projective_eulerian_maps, tetrahedron
from mapforge.gauss import (
    ColoredGaussCode,
    crossing_algebra_checks,
    oracle_colorings,
    parse_code,
    pn_code,
    random_code,
    realize_xi_le_1,
    surface_of_coloring,
)
from mapforge.graph import Multigraph
from mapforge.maps import classify_surface, euler_characteristic, induced_graph, is_orientable
from mapforge.orbit import GAMMA_TAGS, bicolored_polygons, even_polygon_decomposition, gamma
from mapforge.richness import (
    absorption_holds,
    def_value,
    independence_bound,
    odd_complete_chain,
    projective_line_system,
    triple_inclusion_gap,
)
from mapforge.transversal import hits_all_r_circuits, oracle_min_transversal, projminmax, split_chain

PLANAR_CODE = "1 3 4 6 7 2 3 9 6 5 2 1 8 7 5 4 9 8"


def report(n, budget, body):
    """Run ``body`` (returns (ok, detail)); pass needs ok and time under budget."""
    t0 = time.perf_counter()
    ok, detail = body()
    dt = time.perf_counter() - t0
    ok = ok and dt < budget
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} ({detail}; {dt:.2f}s of {budget}s)"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def test_criterion_01_cube_orbit():
    def body():
        m = cube()
        s = classify_surface(m)
        p = classify_surface(gamma(m, "phial"))
        a = classify_surface(gamma(m, "antimap"))
        ok = (
            (s.chi, s.orientable) == (2, True)
            and (p.chi, p.orientable, p.xi) == (-2, False, 4)
            and (a.chi, a.orientable) == (0, True)
        )
        return ok, f"map {s.name}, phial {p.name}, antimap {a.name}"

    report(1, 1.0, body)


def test_criterion_02_richness():
    def body():
        defs = [def_value(gamma(cube(), t)) for t in GAMMA_TAGS]
        bad = sum(not absorption_holds(m) for m in random_maps(500, seed=2, max_edges=14))
        return defs == [0] * 6 and bad == 0, f"orbit deficiencies {defs}, absorption violations {bad}/500"

    report(2, 30.0, body)


def test_criterion_03_triple_inclusion():
    def body():
        bad = sum(
            triple_inclusion_gap(m) != classify_surface(m).xi
            for m in random_maps(200, seed=3, max_edges=14)
        )
        return bad == 0, f"violations {bad}/200"

    report(3, 30.0, body)


def _complete(g: Multigraph, k: int) -> bool:
    live = [v for v in g.vertices if g.degree(v) > 0]
    pairs = {frozenset(e) for e in g.edges.values()}
    return len(live) == k and len(g.edges) == k * (k - 1) // 2 == len(pairs) and not g.loops()


def test_criterion_04_line_systems():
    def body():
        notes, ok = [], True
        for n in (2, 3):
            p = projective_line_system(n)
            k = 2 * n
            g = induced_graph(gamma(p, "phial"))
            rich = def_value(p) == 0
            chain = odd_complete_chain(n)
            chain_rich = all(def_value(m) == 0 for m in chain)
            last = _complete(induced_graph(chain[-1]), k - 1)
            ok &= rich and _complete(g, k) and chain_rich and last
            notes.append(f"n={n}: K{k} {len(g.vertices)}v/{len(g.edges)}e, chain of {len(chain)} rich, ends at K{k - 1}={last}")
        return ok, "; ".join(notes)

    report(4, 10.0, body)


def test_criterion_05_independence():
    def body():
        got = []
        for m in (cube(), tetrahedron()):
            got.append((independence_bound(m), induced_graph(m).independence_number()))
        return got == [(4, 4), (1, 1)], f"cube bound/alpha {got[0]}, tetrahedron {got[1]}"

    report(5, 1.0, body)


def test_criterion_06_gauss_codes():
    def body():
        r = realize_xi_le_1(parse_code(PLANAR_CODE))
        fig_ok = r is not None and r.has_plane()
        mismatches = 0
        for n in range(1, 9):
            x = pn_code(n)
            for b in range(1 << n):
                s = surface_of_coloring(ColoredGaussCode(x, x.subset(b)))
                mono = b in (0, (1 << n) - 1)
                if n % 2:
                    want = (0, True) if mono else (2, True)
                else:
                    want = (1, False) if mono else (2, False)
                mismatches += (s.xi, s.orientable) != want
        return fig_ok and mismatches == 0, f"sample code plane={fig_ok}, P_n mismatches {mismatches}"

    report(6, 5.0, body)


def test_criterion_07_gauss_oracle():
    def body():
        rng = random.Random(7)
        bad = 0
        for _ in range(200):
            x = random_code(rng.randint(1, 10), rng.randrange(1 << 30))
            r = realize_xi_le_1(x)
            got = set() if r is None else set(r.colorings)
            bad += got != set(oracle_colorings(x, 1))
        return bad == 0, f"disagreements {bad}/200"

    report(7, 120.0, body)


def test_criterion_08_crossing_algebra():
    def body():
        rng = random.Random(8)
        bad = 0
        for _ in range(200):
            n = rng.randint(1, 12)
            x = random_code(n, rng.randrange(1 << 30))
            c = ColoredGaussCode(x, x.subset(rng.randrange(1 << n)))
            bad += not all(crossing_algebra_checks(c).values())
        return bad == 0, f"violations {bad}/200"

    report(8, 60.0, body)


def test_criterion_09_minimax():
    def body():
        bad, over, total_splits = 0, 0, 0
        for m in random_projective_eulerian_maps(200, seed=9, max_edges=14):
            cert = projminmax(m)
            total_splits += cert.stats["splits"]
            over += cert.stats["splits"] > cert.stats["ceiling"]
            ok = (
                not cert.problems(m)
                and cert.size == len(cert.omega0) == oracle_min_transversal(m)
                and hits_all_r_circuits(m, cert.r0, 8)
            )
            bad += not ok
        return bad == 0 and over == 0, f"failures {bad}/200, ceiling exceeded {over}, splits {total_splits}"

    report(9, 300.0, body)


def test_criterion_10_conservation():
    def body():
        bad, splits = 0, 0
        for m in random_projective_eulerian_maps(50, seed=10, max_edges=10):
            chain = split_chain(m, check=False)
            base = oracle_min_transversal(m)
            weights = [oracle_min_transversal(n) for n in chain.maps]
            splits += len(weights) - 1
            bad += any(w != base for w in weights)
        return bad == 0, f"fixtures with a changed minimum {bad}/50, splits checked {splits}"

    report(10, 120.0, body)


def test_criterion_11_parity():
    def body():
        rng = random.Random(11)
        odd_chi = 0
        for _ in range(500):
            m = random_map(rng.randint(1, 14), rng.randrange(1 << 30), imbalance_prob=0.0)
            assert is_orientable(m)
            odd_chi += euler_characteristic(m) % 2
        undecomposed = 0
        for _ in range(500):
            m = random_map(rng.randint(1, 14), rng.randrange(1 << 30))
            polys = bicolored_polygons(m)
            chosen = [p for p in polys if rng.random() < 0.5]
            undecomposed += even_polygon_decomposition(m, chosen) is None
        ok = odd_chi == 0 and undecomposed == 0
        return ok, f"orientable maps with odd chi {odd_chi}/500, sums without even decomposition {undecomposed}/500"

    report(11, 60.0, body)
