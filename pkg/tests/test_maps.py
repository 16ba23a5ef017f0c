import pytest
from hypothesis import given

from mapforge.errors import (
    AxiomViolation,
    BadCornerCount,
    FixedPoint,
    MalformedDescriptor,
    MatchingOverlap,
    NotConnected,
    NotSquares,
)
from mapforge.fixtures import cube, loop, projective_loop, single_edge
from mapforge.maps import (
    EMPTY,
    AMap,
    amap_orientable,
    balancing_partition,
    check_balancing_partition,
    classify_surface,
    coboundary_space_of,
    components,
    descriptor,
    disjoint_union,
    euler_characteristic,
    from_amap,
    from_descriptor,
    imbalance,
    is_connected,
    is_imbalance,
    is_orientable,
    to_amap,
    to_descriptor,
    validate_map,
)
from mapforge.orbit import gamma, square_identical_isomorphic

from strategies import maps


def square_involutions():
    corners = ["p", "q", "r", "s"]
    v = {"p": "q", "q": "p", "r": "s", "s": "r"}
    f = {"q": "r", "r": "q", "s": "p", "p": "s"}
    return corners, v, f


def test_single_square_is_valid():
    corners, v, f = square_involutions()
    a = {"p": "s", "s": "p", "q": "r", "r": "q"}  # a = f on every corner
    m = validate_map(corners, v, f, a)
    assert m.n_squares == 1
    with pytest.raises(MatchingOverlap):
        validate_map(corners, v, f, a, strict=True)


def test_a_equal_to_v_is_overlap_in_strict_mode():
    corners, v, f = square_involutions()
    with pytest.raises(MatchingOverlap):
        validate_map(corners, v, f, dict(v), strict=True)


def test_validation_errors():
    corners, v, f = square_involutions()
    bad_v = dict(v, p="p")
    with pytest.raises(FixedPoint):
        validate_map(corners, bad_v, f, f)
    with pytest.raises(BadCornerCount):
        validate_map(corners[:3], v, f, f)
    with pytest.raises(MatchingOverlap):
        validate_map(corners, v, dict(v), f)
    eight = [f"c{i}" for i in range(8)]
    v8 = {f"c{i}": f"c{i ^ 1}" for i in range(8)}
    f8 = {"c0": "c3", "c3": "c0", "c1": "c6", "c6": "c1", "c2": "c5", "c5": "c2", "c4": "c7", "c7": "c4"}
    with pytest.raises(NotSquares):
        validate_map(eight, v8, f8, f8)


def test_cube_basics():
    m = cube()
    assert m.n_corners == 48 and m.n_squares == 12
    assert euler_characteristic(m) == 2
    assert is_orientable(m)
    s = classify_surface(m)
    assert (s.chi, s.xi, s.orientable, s.name) == (2, 0, True, "sphere")
    assert len(components(m)) == 1


def test_orbit_members_of_cube():
    m = cube()
    assert euler_characteristic(gamma(m, "phial")) == -2
    assert not is_orientable(gamma(m, "phial"))
    anti = classify_surface(gamma(m, "antimap"))
    assert (anti.chi, anti.orientable, anti.name) == (0, True, "torus")


def test_loops_and_single_edge():
    assert euler_characteristic(loop()) == 2 and is_orientable(loop())
    s = classify_surface(projective_loop())
    assert (s.chi, s.xi, s.orientable, s.name) == (1, 1, False, "projective-plane")
    assert euler_characteristic(single_edge()) == 2


def test_components():
    assert len(components(disjoint_union(cube(), loop()))) == 2
    assert components(EMPTY) == []
    with pytest.raises(NotConnected):
        classify_surface(disjoint_union(cube(), loop()))


def test_descriptor_errors():
    with pytest.raises(MalformedDescriptor):
        from_descriptor(descriptor([("x", "y", "x")]))
    with pytest.raises(MalformedDescriptor):
        from_descriptor(descriptor([("x", "x")], ["y"]))


def test_single_edge_descriptor():
    d = to_descriptor(single_edge())
    assert sorted(len(s) for s in d.v_ordering) == [1, 1]
    assert d.imbalance == frozenset()
    d = to_descriptor(projective_loop())
    assert d.v_ordering == (("x", "x"),) and d.imbalance == {"x"}


def test_imbalance_examples():
    assert is_imbalance(cube(), set())
    assert not is_imbalance(cube(), {"1-2"})
    assert is_imbalance(projective_loop(), {"x"})
    assert coboundary_space_of(projective_loop()).dim == 0


def test_amap_round_trip_and_axioms():
    for m in (cube(), projective_loop()):
        am = to_amap(m)
        back = from_amap(am, m.labels)
        assert back.a == m.a and back.labels == m.labels
    am = to_amap(projective_loop())
    theta = list(am.Theta)
    theta[0], theta[1] = 0, 1  # fixed points
    with pytest.raises(AxiomViolation) as exc:
        from_amap(AMap(am.R, tuple(theta), am.Phi))
    assert exc.value.axiom in ("am1", "am2")


@given(maps(max_edges=14))
def test_descriptor_round_trip(m):
    d = to_descriptor(m)
    back = from_descriptor(d)
    assert square_identical_isomorphic(m, back)
    assert is_imbalance(back, imbalance(m))


@given(maps(max_edges=14))
def test_balancing_partition_conditions(m):
    assert check_balancing_partition(m, balancing_partition(m))


@given(maps(max_edges=14))
def test_orientable_iff_empty_imbalance(m):
    assert is_orientable(m) == is_imbalance(m, set())


@given(maps(max_edges=14))
def test_chi_bounds(m):
    chi = euler_characteristic(m)
    assert chi <= 2
    if chi == 2:
        assert is_orientable(m)
    if is_orientable(m):
        assert chi % 2 == 0


@given(maps(max_edges=12))
def test_amap_orientability_agrees(m):
    assert amap_orientable(to_amap(m)) == is_orientable(m)
    assert is_connected(m)
