"""Deficiency and richness of maps, and the constructions around them."""

from __future__ import annotations

from dataclasses import dataclass

from . import gf2
from .errors import NotConnected, NotPlanar, PreconditionFailed
from .graph import Multigraph
from .maps import (
    V,
    Map,
    components,
    descriptor,
    euler_characteristic,
    from_descriptor,
    induced_graph,
    is_connected,
    make_map,
    fgon_corners,
    vgon_corners,
    zgon_corners,
)
from .orbit import (
    MedialMap,
    dual_graph,
    face_boundary,
    gamma,
    medial,
    medial_inverse,
    phial_graph,
    smooth_paths,
)


@dataclass(frozen=True)
class SpaceTriple:
    """Coboundary spaces of G_M, G_D, G_P over the squares."""

    V: gf2.Gf2Space
    F: gf2.Gf2Space
    Z: gf2.Gf2Space


def space_triple(m: Map) -> SpaceTriple:
    return SpaceTriple(
        gf2.coboundary_space(induced_graph(m)),
        gf2.coboundary_space(dual_graph(m)),
        gf2.coboundary_space(phial_graph(m)),
    )


@dataclass(frozen=True)
class DeficiencyReport:
    deficiency: int
    facial_def: int
    gamma_bicycle: int
    triple_intersection: int
    rich: bool
    closed_form_check: bool

    def as_dict(self) -> dict:
        return {
            "def": self.deficiency,
            "facial_def": self.facial_def,
            "gamma": self.gamma_bicycle,
            "rich": self.rich,
            "closed_form": self.closed_form_check,
        }


def deficiency(m: Map) -> DeficiencyReport:
    """def(M) = dim(V⊥/(F+Z)), cross-checked against the closed form
    (e + 3p + dim(V∩F∩Z)) - (v + f + z)."""
    t = space_triple(m)
    vperp = gf2.perp(t.V)
    fz = gf2.sum_space(t.F, t.Z)
    d = gf2.quotient_dim(vperp, fz)
    fac = gf2.quotient_dim(vperp, t.F)
    gam = gf2.intersect(t.V, vperp).dim
    triple = gf2.intersect(gf2.intersect(t.V, t.F), t.Z).dim
    p = len(components(m))
    counts = len(vgon_corners(m)) + len(fgon_corners(m)) + len(zgon_corners(m))
    closed = (m.n_squares + 3 * p + triple) - counts
    return DeficiencyReport(d, fac, gam, triple, d == 0, closed == d)


def def_value(m: Map) -> int:
    return deficiency(m).deficiency


def absorption_holds(m: Map) -> bool:
    """V ∩ F ⊆ Z."""
    t = space_triple(m)
    return gf2.intersect(t.V, t.F).is_subspace_of(t.Z)


def facial_deficiency(m: Map) -> int:
    """dim(V⊥/F), which equals the connectivity ξ of a connected map."""
    if not is_connected(m):
        raise NotConnected("facial deficiency is defined for connected maps")
    t = space_triple(m)
    fac = gf2.quotient_dim(gf2.perp(t.V), t.F)
    assert fac == 2 - euler_characteristic(m), "facial deficiency differs from connectivity"
    return fac


def triple_inclusion_gap(m: Map) -> int:
    """dim(V⊥∩F⊥) - dim(V∩F); equals ξ for connected maps."""
    t = space_triple(m)
    return gf2.intersect(gf2.perp(t.V), gf2.perp(t.F)).dim - gf2.intersect(t.V, t.F).dim


def triple_inclusion_chain_holds(m: Map) -> bool:
    """V∩F ⊆ Z∩Z⊥ ⊆ Z ⊆ V⊥∩F⊥."""
    t = space_triple(m)
    vf = gf2.intersect(t.V, t.F)
    zz = gf2.intersect(t.Z, gf2.perp(t.Z))
    top = gf2.intersect(gf2.perp(t.V), gf2.perp(t.F))
    return vf.is_subspace_of(zz) and zz.is_subspace_of(t.Z) and t.Z.is_subspace_of(top)


def ternary_relation_holds(m: Map) -> bool:
    """For a rich map each of V⊥, F⊥, Z⊥ is the sum of the other two spaces."""
    t = space_triple(m)
    return (
        gf2.perp(t.V) == gf2.sum_space(t.F, t.Z)
        and gf2.perp(t.F) == gf2.sum_space(t.V, t.Z)
        and gf2.perp(t.Z) == gf2.sum_space(t.V, t.F)
    )


def bicycle_spaces_agree(m: Map) -> bool:
    """Bicycle spaces of G_M, G_D, G_P all equal V∩F∩Z (for rich maps)."""
    t = space_triple(m)
    vfz = gf2.intersect(gf2.intersect(t.V, t.F), t.Z)
    return all(gf2.intersect(s, gf2.perp(s)) == vfz for s in (t.V, t.F, t.Z))


def zigzag_generates_bicycles(m: Map) -> bool:
    """For a connected planar map: the bicycle space V∩V⊥ of G_M equals Z."""
    if not is_connected(m):
        raise NotConnected("needs a connected map")
    if euler_characteristic(m) != 2:
        raise NotPlanar("needs a planar map")
    t = space_triple(m)
    return gf2.intersect(t.V, gf2.perp(t.V)) == t.Z


def sp_embedding_target(g: Multigraph) -> tuple[int, bool]:
    """(χ, orientable) of the surface any sp-embedding witnessing
    map-richness of ``g`` must have: χ = 3 - |VG| + γ, orientable iff
    ``g`` is eulerian."""
    if not g.edges:
        raise PreconditionFailed("graph needs at least one edge")
    if not g.is_connected():
        raise NotConnected("graph must be connected")
    gam = gf2.bicycle_space(g).dim
    return 3 - len(g.vertices) + gam, g.is_eulerian()


# --------------------------------------------------------- medial criterion


@dataclass(frozen=True)
class MedialSpaces:
    cycle: gf2.Gf2Space
    smooth: gf2.Gf2Space  # V'
    white: gf2.Gf2Space  # F'
    black: gf2.Gf2Space  # Z'


def medial_spaces(p: Map) -> MedialSpaces:
    mm = medial(p)
    mp = mm.map
    h = induced_graph(mp)
    ground = mp.labels
    white = gf2.span_sets(ground, (face_boundary(mp, [fid]) for fid in mm.white_faces))
    black = gf2.span_sets(ground, (face_boundary(mp, [fid]) for fid in mm.black_faces))
    smooth = gf2.span_sets(ground, (set(path) for path in smooth_paths(mp)))
    return MedialSpaces(gf2.cycle_space(h), smooth, white, black)


@dataclass(frozen=True)
class MedialReport:
    holds: bool
    def_prime: int
    def_map: int
    white_black_dim: int
    smooth_meet_dim: int
    fz_meet_dim_plus_one: int


def medial_report(p: Map) -> MedialReport:
    """Compare the cycle space of H_P with the span of face boundaries and
    smooth-path cycles of the medial P'."""
    if not is_connected(p):
        raise NotConnected("needs a connected map")
    s = medial_spaces(p)
    total = gf2.sum_space(gf2.sum_space(s.smooth, s.white), s.black)
    defp = gf2.quotient_dim(s.cycle, total)
    fz = gf2.sum_space(s.white, s.black)
    lhs = gf2.intersect(fz, s.smooth).dim
    m = gamma(p, "phial")
    t = space_triple(m)
    rhs = 1 + gf2.intersect(t.F, t.Z).dim
    return MedialReport(defp == 0, defp, def_value(p), gf2.intersect(s.white, s.black).dim, lhs, rhs)


def medial_cycles_spanned(p: Map) -> bool:
    """Is the cycle space of H_P spanned by the face boundaries of P' and
    the smooth-path cycles?  Agrees with def(P) = 0."""
    r = medial_report(p)
    assert r.def_prime == r.def_map, "medial deficiency differs from map deficiency"
    return r.holds


# ------------------------------------------------------- line systems


def line_system_medial(n: int) -> MedialMap:
    """2n pairwise-crossing projective lines, as a 2-face-coloured 4-regular map.

    Lines ``y = i*x + i*i`` (i = 0..2n-1) cross pairwise at distinct points;
    walking each line left to right and closing it through the line at
    infinity gives one twisted edge per line.  Vertex ``i-j`` (1-based)
    is the crossing of lines i and j.
    """
    if n < 1:
        raise PreconditionFailed("need n >= 1")
    k = 2 * n
    order = {}  # line -> crossing partners sorted by x = -(i + j)
    for i in range(k):
        order[i] = sorted((j for j in range(k) if j != i), key=lambda j: -(i + j))
    ncross = k - 1

    def seg(i: int, c: int) -> str:
        return f"L{i + 1}.{c % ncross}"

    seqs = []
    names = []
    for i in range(k):
        for j in range(i + 1, k):
            ci = order[i].index(j)
            cj = order[j].index(i)
            # counterclockwise: i forward, j forward, i backward, j backward
            seqs.append((seg(i, ci), seg(j, cj), seg(i, ci - 1), seg(j, cj - 1)))
            names.append(f"{i + 1}-{j + 1}")
    wraps = [seg(i, ncross - 1) for i in range(k)]
    pm = from_descriptor(descriptor(seqs, wraps))
    vnames = _vertex_names(pm, seqs, names)
    black = _two_colour_faces(pm)
    return MedialMap(pm, black, vnames)


def _vertex_names(pm: Map, seqs, names) -> dict:
    from .maps import to_descriptor

    out = {}
    want = {frozenset(s): nm for s, nm in zip(seqs, names)}
    d = to_descriptor(pm)
    for vid, seq in zip(d.names, d.v_ordering):
        out[vid] = want[frozenset(seq)]
    return out


def _two_colour_faces(pm: Map) -> frozenset:
    """Proper 2-colouring of the faces; the face through corner 0 is black."""
    dg = dual_graph(pm)
    colour = {}
    inc = dg.incidence()
    start = min(dg.vertices, key=lambda s: int(s[1:]))
    colour[start] = 0
    stack = [start]
    while stack:
        x = stack.pop()
        for lab in inc[x]:
            u, w = dg.edges[lab]
            y = w if u == x else u
            if y not in colour:
                colour[y] = 1 - colour[x]
                stack.append(y)
            elif colour[y] == colour[x]:
                raise PreconditionFailed("faces are not 2-colourable")
    return frozenset(int(s[1:]) for s, c in colour.items() if c == 0)


def projective_line_system(n: int) -> Map:
    """The map P whose medial is the simple 2n-system of projective lines.

    Its phial has induced graph K_2n with vertices the lines and edges the
    crossings ``i-j``.
    """
    return medial_inverse(line_system_medial(n))


def complete_rich_map(n: int) -> Map:
    """A rich map M with G_M = K_2n (the phial of the line-system map)."""
    return gamma(projective_line_system(n), "phial")


def vertex_of_edges(g: Multigraph) -> dict:
    """For graphs whose edges are named ``i-j``: vertex id -> line number."""
    votes: dict = {}
    for lab, (u, w) in g.edges.items():
        i, j = lab.split("-")
        for x in (u, w):
            votes.setdefault(x, []).append({i, j})
    out = {}
    for x, sets in votes.items():
        common = set.intersection(*sets)
        out[x] = common.pop() if len(common) == 1 else None
    return out


# ------------------------------------------------------------ deletions


def delete_square(m: Map, label) -> Map:
    """Delete an edge of the embedded graph (contracts it in D and P)."""
    k = m.index(label)
    keep = [j for j in range(m.n_squares) if j != k]
    new_index = {j: i for i, j in enumerate(keep)}
    a = []
    for j in keep:
        for i in range(4):
            y = m.a[4 * j + i]
            while y >> 2 == k:
                y = m.a[V(y)]
            a.append(4 * new_index[y >> 2] + (y & 3))
    return make_map([m.labels[j] for j in keep], a)


def is_pendant(m: Map, label) -> bool:
    g = induced_graph(m)
    u, w = g.edges[label]
    return u != w and (g.degree(u) == 1 or g.degree(w) == 1)


def in_fz_support(m: Map, label) -> bool:
    t = space_triple(m)
    fz = gf2.intersect(t.F, t.Z)
    return bool(fz.support() >> m.index(label) & 1)


def delete_edge(m: Map, label, mode: str) -> Map:
    """Delete an edge whose removal provably keeps the deficiency.

    ``mode='bicycle_edge'`` needs the edge inside some element of F∩Z;
    ``mode='pendant'`` needs a pendant edge of G_M.
    """
    if mode == "bicycle_edge":
        if not in_fz_support(m, label):
            raise PreconditionFailed(f"bicycle_edge: {label} lies in no element of F∩Z")
    elif mode == "pendant":
        if not is_pendant(m, label):
            raise PreconditionFailed(f"pendant: {label} is not a pendant edge")
    else:
        raise PreconditionFailed(f"unknown deletion mode {mode!r}")
    return delete_square(m, label)


def odd_complete_chain(n: int) -> list[Map]:
    """Delete [i,2n] for i = 2..2n-1, then the pendant [1,2n], starting from
    the rich K_2n map.  Returns every intermediate map (first is K_2n)."""
    m = complete_rich_map(n)
    chain = [m]
    k = 2 * n
    for i in range(2, k):
        m = delete_edge(m, f"{i}-{k}", "bicycle_edge")
        chain.append(m)
    m = delete_edge(m, f"1-{k}", "pendant")
    chain.append(m)
    return chain


# ---------------------------------------------------- independence bound


def independence_bound(m: Map) -> int:
    """v - 1 - γ for a rich map whose G_M is connected, loopless and odd-valent."""
    g = induced_graph(m)
    if not g.is_connected():
        raise PreconditionFailed("G_M must be connected")
    if g.loops():
        raise PreconditionFailed("G_M must be loopless")
    if any(d % 2 == 0 for d in g.degrees().values()):
        raise PreconditionFailed("every vertex of G_M must have odd valency")
    if def_value(m) != 0:
        raise PreconditionFailed("map must be rich")
    return len(g.vertices) - 1 - gf2.bicycle_space(g).dim
