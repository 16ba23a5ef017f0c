"""Structures derived from a map: the six-map orbit, polygon families,
induced graphs, the ψ homomorphism, circuit types, medial maps and smooth
paths."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence

from .errors import NotACircuit, NotACycle, NotEulerian, ValidationError
from .graph import Multigraph
from .maps import (
    F,
    V,
    Z,
    Map,
    fgon_corners,
    imbalance,
    induced_graph,
    make_map,
    polygon_graph,
    polygon_owner,
    validate_map,
    vgon_corners,
    zgon_corners,
)

GAMMA_TAGS = ("map", "dual", "antidual", "phial", "antiphial", "antimap")

# tag -> (new v, new f); a is shared by all six members.
_GAMMA_ROLES = {
    "map": (V, F),
    "dual": (F, V),
    "antidual": (F, Z),
    "phial": (Z, F),
    "antiphial": (Z, V),
    "antimap": (V, Z),
}


def gamma(m: Map, tag: str) -> Map:
    """Member ``tag`` of Γ(m) on the same squares.

    Square k is re-read with corners ``c0 = 4k, c1 = v'(c0), c2 = f'(c1),
    c3 = v'(c2)`` so that the result is again in the fixed corner scheme.
    """
    try:
        nv, nf = _GAMMA_ROLES[tag]
    except KeyError:
        raise ValidationError(f"unknown orbit member {tag!r}; expected one of {', '.join(GAMMA_TAGS)}") from None
    new = [0] * m.n_corners
    for k in range(m.n_squares):
        c0 = 4 * k
        c1 = nv(c0)
        c2 = nf(c1)
        c3 = nv(c2)
        for i, c in enumerate((c0, c1, c2, c3)):
            new[c] = 4 * k + i
    a = [0] * m.n_corners
    for x in m.corners:
        a[new[x]] = new[m.a[x]]
    return Map(m.labels, tuple(a))


def orbit(m: Map) -> dict[str, Map]:
    return {t: gamma(m, t) for t in GAMMA_TAGS}


# ---------------------------------------------------------------- polygons


@dataclass(frozen=True)
class PolygonFamily:
    kind: str
    polygons: tuple  # tuples of corners, each starting at its least corner

    def ids(self) -> list[int]:
        return [p[0] for p in self.polygons]

    def __len__(self) -> int:
        return len(self.polygons)

    def squares(self, m: Map) -> list[tuple]:
        """Each polygon as the cyclic list of squares met by its non-a edges."""
        return [tuple(m.square_of(p[i]) for i in range(0, len(p), 2)) for p in self.polygons]

    def lines(self, m: Map) -> list[str]:
        return [f"{self.kind} {p[0]}: {' '.join(s)}" for p, s in zip(self.polygons, self.squares(m))]


def vgons(m: Map) -> PolygonFamily:
    return PolygonFamily("vgon", tuple(vgon_corners(m)))


def fgons(m: Map) -> PolygonFamily:
    return PolygonFamily("fgon", tuple(fgon_corners(m)))


def zgons(m: Map) -> PolygonFamily:
    return PolygonFamily("zgon", tuple(zgon_corners(m)))


def squares(m: Map) -> PolygonFamily:
    return PolygonFamily("square", tuple((4 * k, 4 * k + 1, 4 * k + 2, 4 * k + 3) for k in range(m.n_squares)))


def dual_graph(m: Map) -> Multigraph:
    """G_D: f-gons as vertices (``f<least corner>``), squares as edges."""
    return polygon_graph(m, fgon_corners(m), "f", F)


def phial_graph(m: Map) -> Multigraph:
    """G_P: z-gons as vertices (``z<least corner>``), squares as edges."""
    return polygon_graph(m, zgon_corners(m), "z", Z)


def corner_partition(polys: Sequence[Sequence[int]]) -> frozenset:
    return frozenset(frozenset(p) for p in polys)


# ------------------------------------------------------ edges of C_M and ψ


def cm_edge(kind: str, x: int, m: Map) -> tuple:
    """Canonical name of the C_M edge of colour ``kind`` at corner ``x``."""
    y = {"v": V, "f": F, "a": m.a.__getitem__}[kind](x)
    return (kind, min(x, y))


def polygon_edges(m: Map, poly: Sequence[int], kind: str) -> frozenset:
    """C_M edges of an alternating (kind, a) polygon listed by corners."""
    out = set()
    for i in range(0, len(poly), 2):
        out ^= {cm_edge(kind, poly[i], m)}
        out ^= {cm_edge("a", poly[i + 1], m)}
    return frozenset(out)


def square_edges(m: Map, k: int) -> frozenset:
    c = 4 * k
    return frozenset({cm_edge("v", c, m), cm_edge("f", c + 1, m), cm_edge("v", c + 2, m), cm_edge("f", c + 3, m)})


def bicolored_polygons(m: Map) -> list[frozenset]:
    """Edge sets of all va-, fa- and vf-polygons of C_M (v-gons, f-gons, squares)."""
    out = [polygon_edges(m, p, "v") for p in vgon_corners(m)]
    out += [polygon_edges(m, p, "f") for p in fgon_corners(m)]
    out += [square_edges(m, k) for k in range(m.n_squares)]
    return out


def even_polygon_decomposition(m: Map, edge_sets: Iterable[frozenset]) -> Optional[list[int]]:
    """Lengths of the disjoint polygons forming the mod-2 sum of ``edge_sets``,
    or None if the sum is not a disjoint union of polygons of even length."""
    total: set = set()
    for s in edge_sets:
        total ^= set(s)
    step = {"v": V, "f": F, "a": m.a.__getitem__}
    nbrs: dict = {}
    for kind, x in total:
        y = step[kind](x)
        nbrs.setdefault(x, []).append(y)
        nbrs.setdefault(y, []).append(x)
    if any(len(v) != 2 for v in nbrs.values()):
        return None
    lengths = []
    seen: set = set()
    for s0 in nbrs:
        if s0 in seen:
            continue
        size = 0
        stack = [s0]
        seen.add(s0)
        while stack:
            x = stack.pop()
            size += 1
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if size % 2:
            return None
        lengths.append(size)
    return sorted(lengths)


def cm_edge_list(m: Map) -> list[tuple]:
    out = []
    for k in range(m.n_squares):
        c = 4 * k
        out += [("v", c), ("v", c + 2), ("f", c), ("f", c + 1)]
    out += [("a", x) for x in m.corners if x < m.a[x]]
    return out


def is_cycle(m: Map, s: Iterable[tuple]) -> bool:
    deg = Counter()
    for kind, x in s:
        y = {"v": V, "f": F, "a": m.a.__getitem__}[kind](x)
        deg[x] += 1
        deg[y] += 1
    return all(d % 2 == 0 for d in deg.values())


def psi_c(m: Map, s: Iterable[tuple]) -> frozenset:
    """Squares that meet the cycle ``s`` of C_M in exactly one f-edge."""
    s = set(s)
    if not is_cycle(m, s):
        raise NotACycle("input is not a cycle of the cubic graph")
    count = Counter(x >> 2 for kind, x in s if kind == "f")
    return frozenset(m.labels[k] for k, c in count.items() if c == 1)


# ---------------------------------------------------------- circuit types


def _circuit_walk(g: Multigraph, x: Iterable) -> list[tuple]:
    """Order a circuit's edges as [(edge, from, to), ...]; raise if not a circuit."""
    edges = list(dict.fromkeys(x))
    if not edges:
        raise NotACircuit("empty edge set")
    for e in edges:
        if e not in g.edges:
            raise NotACircuit(f"{e!r} is not an edge")
    deg = Counter()
    for e in edges:
        u, w = g.edges[e]
        deg[u] += 1
        deg[w] += 1
    if any(d != 2 for d in deg.values()):
        raise NotACircuit("every vertex of a circuit must have degree 2")
    remaining = set(edges)
    e0 = edges[0]
    u, w = g.edges[e0]
    walk = [(e0, u, w)]
    remaining.discard(e0)
    cur = w
    while remaining:
        nxt = None
        for e in remaining:
            a, b = g.edges[e]
            if a == cur or b == cur:
                nxt = e
                break
        if nxt is None:
            raise NotACircuit("edge set is not connected")
        a, b = g.edges[nxt]
        other = b if a == cur else a
        walk.append((nxt, cur, other))
        remaining.discard(nxt)
        cur = other
    if cur != u:
        raise NotACircuit("walk does not close")
    return walk


def circuit_type(m: Map, x: Iterable, imbalance_set: Optional[Iterable] = None) -> str:
    """'r' if the circuit is orientation-reversing, else 's'."""
    x = list(x)
    _circuit_walk(induced_graph(m), x)
    imb = set(imbalance(m) if imbalance_set is None else imbalance_set)
    return "r" if len(set(x) & imb) % 2 else "s"


def cycle_type(m: Map, x: Iterable, imbalance_set: Optional[Iterable] = None) -> str:
    """Same parity test for any cycle (edge set with even degrees)."""
    g = induced_graph(m)
    deg = Counter()
    xs = set(x)
    for e in xs:
        u, w = g.edges[e]
        deg[u] += 1
        deg[w] += 1
    if any(d % 2 for d in deg.values()):
        raise NotACycle("edge set is not a cycle of the induced graph")
    imb = set(imbalance(m) if imbalance_set is None else imbalance_set)
    return "r" if len(xs & imb) % 2 else "s"


def lift_parity(m: Map, x: Iterable) -> int:
    """Parity of a closed walk in C_M lying over the circuit ``x`` of G_M.

    Walks across each square by an f-edge and along v-gons between squares.
    Independent of the imbalance machinery; used as a cross-check.
    """
    g = induced_graph(m)
    walk = _circuit_walk(g, x)
    owner = polygon_owner(vgon_corners(m), m.n_corners)
    idx = m._label_index()

    def end_corner(k: int, vertex: str, avoid_side: Optional[int] = None) -> int:
        for c in (4 * k, 4 * k + 2):
            side = (c >> 1) & 1
            if f"v{owner[c]}" == vertex and side != avoid_side:
                return c
        raise AssertionError("square has no end at that vertex")

    def vgon_distance(a_: int, b_: int) -> int:
        # steps from a_ to b_ along the v-gon (alternating v, a), any direction
        steps = 0
        y = a_
        while y != b_:
            y = V(y) if steps % 2 == 0 else m.a[y]
            steps += 1
            if steps > 4 * m.n_squares + 4:
                raise AssertionError("corners not on a common v-gon")
        return steps

    length = 0
    k0 = idx[walk[0][0]]
    start = end_corner(k0, walk[0][1])
    cur = start
    for i, (e, frm, to) in enumerate(walk):
        k = idx[e]
        cur = F(cur)  # cross the square to its other v-edge
        length += 1
        if i + 1 < len(walk):
            k2 = idx[walk[i + 1][0]]
            # the next square's end at this vertex (for a loop, the end we did not arrive at)
            target = end_corner(k2, to, avoid_side=None if k2 != k else ((cur >> 1) & 1))
        else:
            target = start
        length += vgon_distance(cur, target)
        cur = target
    return length % 2


# --------------------------------------------------------- face boundaries


def face_boundary(m: Map, faces: Iterable[int]) -> frozenset:
    """∂(F): mod-2 sum of the boundaries of the f-gons with the given ids."""
    polys = {p[0]: p for p in fgon_corners(m)}
    out: set = set()
    for fid in faces:
        p = polys[fid]
        cnt = Counter(m.square_of(p[i]) for i in range(0, len(p), 2))
        out ^= {lab for lab, c in cnt.items() if c % 2}
    return frozenset(out)


# ----------------------------------------------------------- medial maps


@dataclass(frozen=True)
class MedialMap:
    """A 2-face-coloured 4-regular map.

    ``map`` is the medial as a Map in its own right; ``black`` holds the ids
    of its black f-gons; ``vertex_labels`` names each vertex (v-gon id of
    ``map``) with the label of the square it came from.
    """

    map: Map
    black: frozenset
    vertex_labels: Mapping

    @property
    def H(self) -> Multigraph:
        return induced_graph(self.map)

    @property
    def black_faces(self) -> frozenset:
        return self.black

    @property
    def white_faces(self) -> frozenset:
        return frozenset(p[0] for p in fgon_corners(self.map)) - self.black

    def is_properly_colored(self) -> bool:
        owner = polygon_owner(fgon_corners(self.map), self.map.n_corners)
        for k in range(self.map.n_squares):
            if (owner[4 * k + 1] in self.black) == (owner[4 * k] in self.black):
                return False
        return True


def medial(m: Map) -> MedialMap:
    """Contract every square to a 4-valent vertex.

    Corner ``x`` of ``m`` splits into a black corner (the side towards
    ``v(x)``) and a white corner (towards ``f(x)``).  Each a-edge ``{x, y}``
    with ``x < y`` becomes the square ``(x,b) (x,w) (y,w) (y,b)``.
    """
    pairs = [(x, m.a[x]) for x in m.corners if x < m.a[x]]
    pos = {}
    labels = []
    for j, (x, y) in enumerate(pairs):
        pos[(x, "b")] = 4 * j
        pos[(x, "w")] = 4 * j + 1
        pos[(y, "w")] = 4 * j + 2
        pos[(y, "b")] = 4 * j + 3
        labels.append(f"a{x}")
    a = [0] * (8 * m.n_squares)
    for x in m.corners:
        a[pos[(x, "b")]] = pos[(V(x), "b")]
        a[pos[(x, "w")]] = pos[(F(x), "w")]
    mp = make_map(labels, a)
    black = frozenset(p[0] for p in fgon_corners(mp) if p[0] in {pos[(x, "b")] for x in m.corners})
    vowner = polygon_owner(vgon_corners(mp), mp.n_corners)
    vlabels = {f"v{vowner[pos[(4 * k, 'b')]]}": m.labels[k] for k in range(m.n_squares)}
    return MedialMap(mp, black, vlabels)


def medial_inverse(mm: MedialMap) -> Map:
    """Expand every vertex back into a square (v-edges on black sides)."""
    mp = mm.map
    owner = polygon_owner(fgon_corners(mp), mp.n_corners)
    vowner = polygon_owner(vgon_corners(mp), mp.n_corners)
    black_corner = {}
    white_corner = {}
    for c in mp.corners:
        e = c >> 1
        if owner[c] in mm.black:
            black_corner[e] = c
        else:
            white_corner[e] = c
    ends = range(2 * mp.n_squares)
    if set(black_corner) != set(ends) or set(white_corner) != set(ends):
        raise ValidationError("face colouring is not proper")
    v = {e: mp.a[black_corner[e]] >> 1 for e in ends}
    f = {e: mp.a[white_corner[e]] >> 1 for e in ends}
    a = {e: e ^ 1 for e in ends}
    sq = {e: mm.vertex_labels.get(f"v{vowner[2 * e]}", f"v{vowner[2 * e]}") for e in ends}
    return validate_map(list(ends), v, f, a, sq)


# ---------------------------------------------------------- smooth paths


def rotation(m: Map) -> dict[str, list[int]]:
    """v-gon id -> cyclic list of edge ends (v-edge ids ``corner >> 1``)."""
    out = {}
    for poly in vgon_corners(m):
        out[f"v{poly[0]}"] = [poly[i] >> 1 for i in range(0, len(poly), 2)]
    return out


def smooth_paths(m: Map) -> list[tuple]:
    """Partition of the edges of G_M into smooth paths (cyclic label tuples)."""
    g = induced_graph(m)
    if not g.is_eulerian():
        raise NotEulerian("smooth paths need every vertex of even valency")
    opposite = {}
    for ends in rotation(m).values():
        d = len(ends)
        for i, h in enumerate(ends):
            opposite[h] = ends[(i + d // 2) % d]
    used = [False] * m.n_squares
    out = []
    for k in range(m.n_squares):
        if used[k]:
            continue
        start = 2 * k  # leave through the tail end
        path = []
        h = start
        while True:
            sq = h >> 1
            used[sq] = True
            path.append(m.labels[sq])
            h = opposite[h ^ 1]
            if h == start:
                break
            if used[h >> 1]:
                raise AssertionError("smooth path revisited an edge")
        out.append(tuple(path))
    return out


def smooth_path_graph(m: Map, vertex_labels: Optional[Mapping] = None) -> Multigraph:
    """G': smooth paths of a 4-regular map as vertices, its vertices as edges."""
    paths = smooth_paths(m)
    which = {}
    for i, p in enumerate(paths):
        for lab in p:
            which[lab] = f"s{i}"
    edges = []
    for vid, ends in rotation(m).items():
        if len(ends) != 4:
            raise ValidationError("smooth path graph needs a 4-regular map")
        lab = (vertex_labels or {}).get(vid, vid)
        edges.append((lab, which[m.labels[ends[0] >> 1]], which[m.labels[ends[1] >> 1]]))
    return Multigraph.build([f"s{i}" for i in range(len(paths))], edges)


def incidence_signature(g: Multigraph) -> tuple:
    """Invariant of a labeled multigraph up to renaming vertices: the sorted
    multiset of vertex stars (edge labels with multiplicity)."""
    stars = {x: Counter() for x in g.vertices}
    for lab, (u, w) in g.edges.items():
        stars[u][lab] += 1
        stars[w][lab] += 1
    return tuple(sorted(tuple(sorted((str(k), c) for k, c in s.items())) for s in stars.values()))


def same_incidence(g1: Multigraph, g2: Multigraph) -> bool:
    return set(g1.edges) == set(g2.edges) and incidence_signature(g1) == incidence_signature(g2)


# ------------------------------------------------------------ isomorphism


def square_identical_isomorphic(x: Map, y: Map) -> bool:
    """Is there an isomorphism x -> y fixing every square's corner set?

    Inside a square the colour-preserving symmetries are ``c -> c ^ g`` for
    ``g`` in {0,1,2,3}; one choice per component propagates along a-edges.
    """
    if set(x.labels) != set(y.labels) or x.n_squares != y.n_squares:
        return False
    yidx = y._label_index()
    target = [yidx[lab] for lab in x.labels]
    g: list = [None] * x.n_squares
    for s in range(x.n_squares):
        if g[s] is not None:
            continue
        ok = False
        for choice in range(4):
            trial = list(g)
            if _propagate(x, y, target, trial, s, choice):
                g[:] = trial
                ok = True
                break
        if not ok:
            return False
    return True


def _propagate(x: Map, y: Map, target, g, s, choice) -> bool:
    g[s] = choice
    stack = [s]
    while stack:
        k = stack.pop()
        for i in range(4):
            c = 4 * k + i
            img = 4 * target[k] + (i ^ g[k])
            d = x.a[c]
            img_d = y.a[img]
            k2 = d >> 2
            if img_d >> 2 != target[k2]:
                return False
            need = (img_d & 3) ^ (d & 3)
            if g[k2] is None:
                g[k2] = need
                stack.append(k2)
            elif g[k2] != need:
                return False
    return True


# --------------------------------------------------------- edge doubling


def doubled_label(label: str, which: int) -> str:
    return f"{label}~{which}"


def double_edges(m: Map) -> Map:
    """Replace every edge by two parallel edges bounding a digon face."""
    labels = []
    for lab in m.labels:
        labels += [doubled_label(lab, 1), doubled_label(lab, 2)]

    def new(c: int) -> int:
        k, i = c >> 2, c & 3
        return 4 * (2 * k + (1 if i in (1, 2) else 0)) + i

    a = [0] * (8 * m.n_squares)
    for c in m.corners:
        a[new(c)] = new(m.a[c])
    for k in range(m.n_squares):
        A, B = 8 * k, 8 * k + 4
        a[A + 1], a[B + 0] = B + 0, A + 1
        a[A + 2], a[B + 3] = B + 3, A + 2
    return make_map(labels, a)
