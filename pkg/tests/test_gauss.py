import pytest
from hypothesis import given, settings

from mapforge.errors import NotConnected, ParseError, SymbolCountNotTwo
from mapforge.fixtures import projective_loop, random_maps
from mapforge.gauss import (
    ColoredGaussCode,
    code_to_map,
    colored,
    crossing_algebra_checks,
    crossing_function,
    eq_condition_holds,
    interlace,
    squared_crossing_condition_holds,
    merge_to_single_path,
    odd_even_split,
    omega_digraph,
    oracle_colorings,
    oracle_realize,
    parse_code,
    pn_code,
    realize_xi_le_1,
    rosenstiehl_planar,
    same_cyclic,
    signed_gauss_code,
    surface_of_coloring,
    unmerge,
    zigzag_signed,
    is_reflexive,
)
from mapforge.maps import classify_surface, imbalance, induced_graph, is_imbalance, zgon_corners
from mapforge.orbit import gamma

from strategies import codes, colored_codes

PLANAR_CODE = "1 3 4 6 7 2 3 9 6 5 2 1 8 7 5 4 9 8"


def test_parse_forms():
    assert parse_code("1 2 1 2") == parse_code("(1,2,1,2)") == parse_code("1,2,1,2")
    with pytest.raises(ParseError):
        parse_code("  ")
    with pytest.raises(SymbolCountNotTwo):
        parse_code("1 2 1")


def test_interlace_examples():
    assert set(interlace(parse_code("1 2 1 2")).edges) == {"1|2"}
    assert not interlace(parse_code("1 1 2 2")).edges
    g = interlace(pn_code(5))
    assert len(g.edges) == 10


def test_odd_even_split():
    odd, even = odd_even_split(pn_code(4))
    assert odd == frozenset("1234") and not even
    odd, even = odd_even_split(pn_code(3))
    assert not odd and even == frozenset("123")


def test_loop_maps():
    sphere = code_to_map(colored("xx", "x"))
    assert classify_surface(sphere).xi == 0
    proj = code_to_map(colored("xx"))
    assert classify_surface(proj).xi == 1
    assert classify_surface(proj) == classify_surface(projective_loop())


def test_monochromatic_p3_is_planar():
    m = gamma(code_to_map(ColoredGaussCode(pn_code(3), frozenset())), "phial")
    assert classify_surface(m).xi == 0


def test_all_white_crossing_function_is_interlace():
    c = ColoredGaussCode(pn_code(4), frozenset())
    cf = crossing_function(c)
    assert cf.columns == cf.i_cols


@given(colored_codes(max_symbols=10))
def test_crossing_function_identities(c):
    cf, cs = crossing_function(c), crossing_function(c.swapped())
    assert all(x ^ y == 1 << i for i, (x, y) in enumerate(zip(cf.columns, cs.columns)))
    assert cf.image().dim + cf.kernel().dim == c.code.n


@pytest.mark.parametrize(
    "n, black, xi, orientable",
    [(3, "", 0, True), (3, "1", 2, True), (4, "1", 2, False), (4, "", 1, False)],
)
def test_pn_surfaces(n, black, xi, orientable):
    s = surface_of_coloring(ColoredGaussCode(pn_code(n), frozenset(black)))
    assert (s.xi, s.orientable) == (xi, orientable)


@pytest.mark.parametrize("n", range(1, 9))
def test_pn_realizations(n):
    r = realize_xi_le_1(pn_code(n))
    assert r is not None
    mono = {frozenset(), frozenset(pn_code(n).symbols)}
    assert set(r.colorings) == mono
    want = 0 if n % 2 else 1
    assert all(s.xi == want for s in r.surfaces)
    for b in range(1, (1 << n) - 1):
        s = surface_of_coloring(ColoredGaussCode(pn_code(n), pn_code(n).subset(b)))
        assert s.xi == 2 and s.orientable == (n % 2 == 1)


def test_planar_sample_code_is_plane_realizable():
    x = parse_code(PLANAR_CODE)
    r = realize_xi_le_1(x)
    assert r is not None and r.has_plane()
    assert rosenstiehl_planar(x)
    assert oracle_realize(x, max_xi=0) is not None
    for black in r.colorings:
        assert eq_condition_holds(ColoredGaussCode(x, black))


def test_rosenstiehl_examples():
    assert not rosenstiehl_planar(pn_code(4))
    assert not rosenstiehl_planar(parse_code("1 2 1 2"))
    assert rosenstiehl_planar(pn_code(3))


def test_small_realizations():
    r = realize_xi_le_1(parse_code("1 2 1 2"))
    assert r is not None and r.has_projective() and not r.has_plane()
    assert oracle_realize(pn_code(4), max_xi=0) is None
    black, s = oracle_realize(pn_code(3), max_xi=1)
    assert s.xi == 0 and black in (frozenset(), frozenset("123"))


def test_eq_condition_examples():
    assert eq_condition_holds(ColoredGaussCode(pn_code(3), frozenset()))
    assert not eq_condition_holds(ColoredGaussCode(pn_code(3), frozenset("1")))


@settings(max_examples=40)
@given(codes(max_symbols=9))
def test_realize_matches_oracle(x):
    r = realize_xi_le_1(x)
    expected = set(oracle_colorings(x, max_xi=1))
    got = set() if r is None else set(r.colorings)
    assert got == expected
    if r is not None:
        assert len(r.colorings) == 2 ** r.n_components
    assert rosenstiehl_planar(x) == any(
        surface_of_coloring(ColoredGaussCode(x, b)).xi == 0 for b in expected
    )


@given(colored_codes(max_symbols=10))
def test_surface_bound_equivalences(c):
    s = surface_of_coloring(c)
    assert (s.xi <= 1) == squared_crossing_condition_holds(c) == eq_condition_holds(c)
    m = gamma(code_to_map(c), "phial")
    got = classify_surface(m)
    assert (got.chi, got.orientable) == (s.chi, s.orientable)


@given(colored_codes(max_symbols=9))
def test_crossing_algebra(c):
    assert all(crossing_algebra_checks(c).values())


def test_antimap_complements_imbalances():
    for m in random_maps(200, seed=321, max_edges=10):
        t = imbalance(m)
        assert is_imbalance(gamma(m, "antimap"), set(m.labels) - t)


def test_merge_single_path_identity():
    code, ledger = merge_to_single_path([["a", "b", "a", "b"]])
    assert code.seq == ("a", "b", "a", "b") and ledger == []


def test_merge_figure_eight():
    seqs = [["a", "b", "c", "d"], ["a", "c", "b", "d"]]
    code, ledger = merge_to_single_path(seqs)
    assert len(code) == 8 + 2 and len(ledger) == 1
    back = unmerge(code.seq, ledger)
    assert len(back) == 2
    assert all(any(same_cyclic(b, s) for s in seqs) for b in back)


def test_merge_needs_connection():
    with pytest.raises(NotConnected):
        merge_to_single_path([["a", "a"], ["b", "b"]])


def test_omega_digraph_examples():
    from mapforge.graph import Multigraph

    one_loop = Multigraph.build(["w"], [("x", "w", "w")])
    assert len(omega_digraph([(1, "x"), (1, "x")]).vertices) == 1
    assert is_reflexive(one_loop, [(1, "x"), (1, "x")])
    assert len(omega_digraph([(1, "x"), (-1, "x")]).vertices) == 2
    assert not is_reflexive(one_loop, [(1, "x"), (-1, "x")])


def test_single_zigzag_is_reflexive():
    seen = 0
    for m in random_maps(300, seed=36, max_edges=10):
        if len(zgon_corners(m)) == 1:
            assert is_reflexive(induced_graph(m), zigzag_signed(m))
            seen += 1
    assert seen > 5


def test_signed_code_colors():
    c = signed_gauss_code([(1, "x"), (1, "y"), (-1, "x"), (1, "y")])
    assert c.black == frozenset("y")
