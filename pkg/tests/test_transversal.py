import pytest
from hypothesis import given, settings

from mapforge.errors import NotACircuit, NotConnected, NotDisjoint, NotEulerian, NotProjective
from mapforge.fixtures import (
    cube,
    projective_lines,
    projective_loop,
    random_maps,
    random_projective_eulerian_maps,
    tetrahedron,
)
from mapforge.gauss import ColoredGaussCode, code_to_map, pn_code
from mapforge.graph import Multigraph
from mapforge.maps import classify_surface, disjoint_union, induced_graph
from mapforge.omega import (
    Frame,
    OmegaPairing,
    View,
    find_pre_reducer,
    is_pre_reducer,
    is_straight,
    is_transreducer,
    min_odd_walk,
    reducer_from_straight,
    split,
    straighten,
    to_transreducer,
)
from mapforge.orbit import _circuit_walk, double_edges, face_boundary, fgons, gamma
from mapforge.transversal import (
    cycles_cross,
    disjoint_odd_polygon_bound_check,
    enumerate_circuits,
    hits_all_r_circuits,
    imbalance_homology_check,
    is_contractible,
    max_coboundary_complement_check,
    min_transversal_general,
    minimal_imbalances,
    minimal_imbalances_are_dual_r_circuits_check,
    minimal_imbalances_equal_transversals_check,
    minimal_transversals,
    oracle_min_transversal,
    projminmax,
    r_circuits,
    split_chain,
)

from strategies import maps, projective_eulerian_maps


def projective(m):
    s = classify_surface(m)
    return s.chi == 1 and not s.orientable


def klein_map():
    return gamma(code_to_map(ColoredGaussCode(pn_code(4), frozenset("1"))), "phial")


# ------------------------------------------------------------- oracles


def test_oracle_examples():
    assert oracle_min_transversal(projective_loop()) == 1
    assert oracle_min_transversal(cube()) == 0
    assert oracle_min_transversal(projective_lines(3)) == 3


def test_enumerate_circuits_counts():
    k4 = induced_graph(tetrahedron())
    circuits = enumerate_circuits(k4)
    assert sorted(len(c) for c in circuits) == [3, 3, 3, 3, 4, 4, 4]
    theta = Multigraph.build("ab", [("x", "a", "b"), ("y", "a", "b"), ("z", "a", "b")])
    assert len(enumerate_circuits(theta)) == 3


# ------------------------------------------------------ structural checks


def test_minimal_imbalances_examples():
    loop = projective_loop()
    assert minimal_imbalances(loop) == minimal_transversals(loop) == {frozenset(loop.labels)}
    assert minimal_imbalances(cube()) == minimal_transversals(cube()) == {frozenset()}


def test_minimal_imbalances_equal_transversals_random():
    checked = 0
    for m in random_maps(150, seed=44, max_edges=8):
        if projective(m):
            assert minimal_imbalances_equal_transversals_check(m)
            assert minimal_imbalances_are_dual_r_circuits_check(m)
            checked += 1
    assert checked >= 10


def test_max_coboundary_complement():
    square = Multigraph.build("abcd", [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "d"), ("4", "d", "a")])
    triangle = Multigraph.build("abc", [("1", "a", "b"), ("2", "b", "c"), ("3", "c", "a")])
    assert max_coboundary_complement_check(square)
    assert max_coboundary_complement_check(triangle)
    for m in random_maps(60, seed=45, max_edges=9):
        assert max_coboundary_complement_check(induced_graph(m))


@given(maps(max_edges=12))
def test_imbalance_homology(m):
    assert imbalance_homology_check(m)


def test_contractible_regions_of_cube():
    m = cube()
    ids = fgons(m).ids()
    assert is_contractible(m, [ids[0]])
    assert all(is_contractible(m, [f]) for f in ids)


def test_exactly_one_side_contractible_in_projective_maps():
    checked = 0
    for m in random_projective_eulerian_maps(40, seed=46, max_edges=10):
        ids = list(fgons(m).ids())
        g = induced_graph(m)
        for mask in range(1, (1 << len(ids)) - 1):
            side = [f for i, f in enumerate(ids) if mask >> i & 1]
            rest = [f for f in ids if f not in side]
            try:
                _circuit_walk(g, face_boundary(m, side))
            except NotACircuit:
                continue
            assert is_contractible(m, side) != is_contractible(m, rest)
            checked += 1
    assert checked > 50


def test_cycles_cross():
    loop = projective_loop()
    doubled = double_edges(loop)
    a, b = doubled.labels
    assert cycles_cross(doubled, [a], [b])
    m = cube()
    assert not cycles_cross(m, ["1-2", "2-3", "3-4", "1-4"], ["5-6", "6-7", "7-8", "5-8"])
    with pytest.raises(NotDisjoint):
        cycles_cross(m, ["1-2", "2-3", "3-4", "1-4"], ["1-2", "2-6", "5-6", "1-5"])


def test_disjoint_r_circuits_always_cross():
    for m in random_projective_eulerian_maps(40, seed=47, max_edges=10):
        cs = r_circuits(m)
        for i in range(len(cs)):
            for j in range(i + 1, len(cs)):
                if not cs[i] & cs[j]:
                    assert cycles_cross(m, cs[i], cs[j])


def test_disjoint_odd_polygon_bound():
    assert disjoint_odd_polygon_bound_check(cube())
    assert disjoint_odd_polygon_bound_check(projective_loop())
    assert disjoint_odd_polygon_bound_check(klein_map())
    for m in random_maps(30, seed=48, max_edges=8):
        assert disjoint_odd_polygon_bound_check(m)


# ------------------------------------------------------ reducer pipeline


def test_line_system_has_no_pre_reducer():
    for k in (1, 2, 3, 4):
        m = projective_lines(k)
        view = View(OmegaPairing.smooth(Frame(m)))
        assert find_pre_reducer(view) is None
        assert len(view.lines()) == k


def test_pipeline_predicates_on_seeded_maps():
    steps = 0
    for m in random_projective_eulerian_maps(40, seed=49, max_edges=12):
        chain = split_chain(m)
        for level in chain.levels:
            view = View(OmegaPairing.smooth(Frame(level.map)))
            pr = find_pre_reducer(view)
            if pr is None:
                continue
            assert is_pre_reducer(view, pr)
            st = straighten(view, pr)
            assert is_straight(view, st) and st.support(view) <= pr.support(view)
            r = reducer_from_straight(view, st)
            assert is_contractible(level.map, r.face_ids(view.frame))
            t = to_transreducer(view, r)
            assert t.kind != 0 and is_transreducer(view, t)
            new, _ = split(view.omega, t)
            new.check()
            steps += 1
    assert steps > 20


def test_split_chain_bounds_and_conservation():
    for m in random_projective_eulerian_maps(30, seed=50, max_edges=10):
        chain = split_chain(m)
        assert chain.stats["splits"] <= chain.stats["ceiling"]
        expected = oracle_min_transversal(m)
        assert chain.target == expected
        assert all(oracle_min_transversal(n) == expected for n in chain.maps)
        assert len(chain.view.lines()) == expected


def test_min_odd_walk_equals_oracle():
    for m in random_projective_eulerian_maps(40, seed=51, max_edges=12):
        w, walk = min_odd_walk(OmegaPairing.smooth(Frame(m)))
        assert w == oracle_min_transversal(m) and walk.parity() == 1


# ----------------------------------------------------------- projminmax


def test_projminmax_loop():
    m = projective_loop()
    cert = projminmax(m)
    assert cert.size == 1 and cert.omega0 == (tuple(m.labels),) and cert.r0 == frozenset(m.labels)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_projminmax_line_systems(k):
    m = projective_lines(k)
    cert = projminmax(m)
    assert cert.size == len(cert.omega0) == k == oracle_min_transversal(m)
    assert cert.stats["splits"] == 0


@settings(max_examples=40)
@given(projective_eulerian_maps(max_edges=12))
def test_projminmax_minimax(m):
    cert = projminmax(m)
    assert cert.problems(m) == []
    assert cert.size == len(cert.omega0) == oracle_min_transversal(m)
    assert hits_all_r_circuits(m, cert.r0)


def test_projminmax_preconditions():
    with pytest.raises(NotProjective):
        projminmax(cube())
    with pytest.raises(NotConnected):
        projminmax(disjoint_union(projective_loop(), cube()))
    odd = next(m for m in random_maps(200, seed=52, max_edges=8)
               if projective(m) and not induced_graph(m).is_eulerian())
    with pytest.raises(NotEulerian):
        projminmax(odd)


def test_min_transversal_general_examples():
    assert min_transversal_general(projective_loop())[0] == 1
    assert projminmax(double_edges(projective_loop())).size == 2
    assert min_transversal_general(cube()) == (0, ())
    with pytest.raises(NotProjective):
        min_transversal_general(klein_map())


def test_min_transversal_general_matches_oracle():
    checked = 0
    for m in random_maps(200, seed=53, max_edges=8):
        if not projective(m):
            continue
        k, witness = min_transversal_general(m)
        assert k == oracle_min_transversal(m)
        assert len(witness) == 2 * k
        checked += 1
    assert checked >= 10
