import pytest
from hypothesis import given

from mapforge import gf2
from mapforge.errors import NotConnected, NotPlanar, PreconditionFailed
from mapforge.fixtures import (
    cube,
    k4_doubled_edge_descriptor,
    loop,
    projective_loop,
    random_maps,
    single_edge,
    tetrahedron,
)
from mapforge.maps import disjoint_union, euler_characteristic, from_descriptor, induced_graph
from mapforge.orbit import GAMMA_TAGS, double_edges, gamma
from mapforge.richness import (
    absorption_holds,
    bicycle_spaces_agree,
    medial_cycles_spanned,
    deficiency,
    def_value,
    delete_edge,
    facial_deficiency,
    independence_bound,
    is_pendant,
    medial_report,
    odd_complete_chain,
    projective_line_system,
    sp_embedding_target,
    space_triple,
    ternary_relation_holds,
    triple_inclusion_chain_holds,
    triple_inclusion_gap,
    zigzag_generates_bicycles,
)

from strategies import maps


def test_cube_space_dimensions():
    t = space_triple(cube())
    assert (t.V.dim, t.F.dim, t.Z.dim) == (7, 5, 3)


def test_single_zigzag_has_trivial_z():
    for m in (loop(), single_edge()):
        assert space_triple(m).Z.dim == 0


@pytest.mark.parametrize("tag", GAMMA_TAGS)
def test_cube_orbit_is_rich(tag):
    rep = deficiency(gamma(cube(), tag))
    assert rep.deficiency == 0 and rep.rich and rep.closed_form_check


def test_projective_loop_rich():
    assert def_value(projective_loop()) == 0


def test_facial_deficiency_examples():
    assert facial_deficiency(cube()) == 0
    assert facial_deficiency(gamma(cube(), "phial")) == 4
    assert facial_deficiency(projective_loop()) == 1
    with pytest.raises(NotConnected):
        facial_deficiency(disjoint_union(cube(), projective_loop()))


def test_absorption_on_500_maps():
    assert all(absorption_holds(m) for m in random_maps(500, seed=25, max_edges=12))


@given(maps(max_edges=12))
def test_deficiency_equal_across_orbit(m):
    values = {def_value(gamma(m, tag)) for tag in GAMMA_TAGS}
    assert len(values) == 1
    assert deficiency(m).closed_form_check


@given(maps(max_edges=12))
def test_triple_inclusion(m):
    assert triple_inclusion_chain_holds(m)
    assert triple_inclusion_gap(m) == 2 - euler_characteristic(m)


@given(maps(max_edges=12))
def test_rich_maps_have_ternary_relation_and_shared_bicycles(m):
    if def_value(m) == 0:
        assert ternary_relation_holds(m)
        assert bicycle_spaces_agree(m)


@given(maps(max_edges=10))
def test_medial_statements(p):
    r = medial_report(p)
    assert r.def_prime == r.def_map
    assert r.white_black_dim == 1
    assert r.smooth_meet_dim == r.fz_meet_dim_plus_one
    assert medial_cycles_spanned(p) == (def_value(p) == 0)


def test_zigzag_generates_bicycles():
    assert zigzag_generates_bicycles(cube())
    assert zigzag_generates_bicycles(tetrahedron())
    assert zigzag_generates_bicycles(from_descriptor(k4_doubled_edge_descriptor()))
    with pytest.raises(NotPlanar):
        zigzag_generates_bicycles(projective_loop())


def test_sp_embedding_target():
    g = induced_graph(double_edges(cube()))
    assert sp_embedding_target(g) == (2, True)
    k4 = induced_graph(tetrahedron())
    gam = gf2.bicycle_space(k4).dim
    assert sp_embedding_target(k4) == (3 - 4 + gam, False)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_projective_line_system_is_rich(n):
    p = projective_line_system(n)
    assert def_value(p) == 0
    assert euler_characteristic(p) == 1
    assert medial_cycles_spanned(p)
    g = induced_graph(gamma(p, "phial"))
    k = 2 * n
    assert len(g.vertices) == k and len(g.edges) == k * (k - 1) // 2
    assert not g.loops()


@pytest.mark.parametrize("n", [2, 3])
def test_odd_complete_chain_stays_rich(n):
    chain = odd_complete_chain(n)
    assert all(def_value(m) == 0 for m in chain)
    g = induced_graph(chain[-1])
    k = 2 * n - 1
    assert len(g.edges) == k * (k - 1) // 2
    assert len([v for v in g.vertices if g.degree(v) > 0]) == k


def test_delete_edge_preconditions():
    m = cube()
    with pytest.raises(PreconditionFailed):
        delete_edge(m, m.labels[0], "pendant")
    with pytest.raises(PreconditionFailed):
        delete_edge(m, m.labels[0], "sideways")


def test_pendant_deletion_keeps_deficiency():
    checked = 0
    for m in random_maps(200, seed=7, max_edges=10):
        for lab in m.labels:
            if is_pendant(m, lab):
                assert def_value(delete_edge(m, lab, "pendant")) == def_value(m)
                checked += 1
                break
    assert checked > 10


def test_independence_bound_examples():
    assert independence_bound(cube()) == 4 == induced_graph(cube()).independence_number()
    assert independence_bound(tetrahedron()) == 1 == induced_graph(tetrahedron()).independence_number()
    with pytest.raises(PreconditionFailed):
        independence_bound(projective_loop())
