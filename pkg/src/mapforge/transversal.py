"""Transversals of orientation-reversing circuits.

Imbalances versus r-circuit transversals, the homology of imbalances in the
dual, brute-force oracles, and PROJMINMAX: for a connected projective map
whose graph is eulerian it returns edge-disjoint r-circuits together with a
dual r-circuit of the same size, which certifies that both are optimal.

PROJMINMAX works on a chain of maps N_0, N_1, ... that all live on the
projective plane of the input.  N_0 redraws every vertex of valency above
four so that smooth paths only ever cross two at a time; N_{k+1} is N_k
split at the angular point of a transreducer (only that vertex is redrawn).
Labels of the input survive unchanged along the chain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import gf2
from .errors import NotACircuit, NotConnected, NotDisjoint, NotEulerian, NotProjective, TooLarge
from .graph import Multigraph
from .maps import (
    F,
    V,
    Map,
    classify_surface,
    coboundary_space_of,
    component_surfaces,
    fgon_corners,
    imbalance,
    induced_graph,
    is_connected,
    is_imbalance,
    vgon_corners,
)
from .omega import (
    Frame,
    OmegaPairing,
    SplitRecord,
    SplitSurface,
    Walk,
    View,
    find_pre_reducer,
    min_odd_walk,
    omega_weight,
    parallel_walk,
    reducer_from_straight,
    shorten,
    split,
    split_surface,
    straighten,
    to_transreducer,
    transfer_walk,
    walk_squares,
)
from .orbit import _circuit_walk, circuit_type, cycle_type, double_edges, dual_graph, face_boundary, gamma


# ---------------------------------------------------------------- oracles


def oracle_min_imbalance(m: Map, limit: int = 24) -> tuple[int, frozenset]:
    """Least imbalance by enumerating the coset I + V; (size, labels)."""
    space = coboundary_space_of(m)
    w, vec = gf2.coset_min_weight(space.vector(imbalance(m)), space, limit=limit)
    return w, space.labels(vec)


def oracle_min_transversal(m: Map, limit: int = 24) -> int:
    """Minimum size of an r-circuit transversal (= least imbalance)."""
    return oracle_min_imbalance(m, limit)[0]


def enumerate_circuits(g: Multigraph, max_len: Optional[int] = None) -> list[frozenset]:
    """All circuits of a multigraph as edge-label sets (loops and digons included).

    Each circuit is produced once, from its least edge: the rest of the
    circuit is a path between that edge's ends through larger edges.
    """
    order = list(g.edge_order)
    pos = {lab: i for i, lab in enumerate(order)}
    inc: dict = {v: [] for v in g.vertices}
    for lab in order:
        u, w = g.edges[lab]
        inc[u].append((lab, w))
        if u != w:
            inc[w].append((lab, u))
    out = []
    for lab0 in order:
        u, w = g.edges[lab0]
        if u == w:
            out.append(frozenset([lab0]))
            continue
        lo = pos[lab0]
        # paths w -> u avoiding lab0, edges after lab0, simple in vertices
        stack = [(w, [lab0], {w})]
        while stack:
            x, path, seen = stack.pop()
            if max_len is not None and len(path) >= max_len:
                continue
            for lab, y in inc[x]:
                if pos[lab] <= lo or lab in path:
                    continue
                if y == u:
                    out.append(frozenset(path + [lab]))
                elif y not in seen and y != x:
                    stack.append((y, path + [lab], seen | {y}))
    return out


def r_circuits(m: Map, max_len: Optional[int] = None) -> list[frozenset]:
    imb = imbalance(m)
    return [c for c in enumerate_circuits(induced_graph(m), max_len) if len(c & imb) % 2]


def hits_all_r_circuits(m: Map, edges: Iterable, max_len: Optional[int] = 8) -> bool:
    """Whether ``edges`` meets every r-circuit of length at most ``max_len``."""
    s = set(edges)
    return all(c & s for c in r_circuits(m, max_len))


def _minimal(family: Iterable[frozenset]) -> set:
    fam = sorted(set(family), key=len)
    out: list = []
    for s in fam:
        if not any(t <= s for t in out):
            out.append(s)
    return set(out)


def minimal_imbalances(m: Map, limit: int = 12) -> set:
    if m.n_squares > limit:
        raise TooLarge(f"{m.n_squares} squares exceed the enumeration limit {limit}")
    space = coboundary_space_of(m)
    base = space.vector(imbalance(m))
    return _minimal(space.labels(base ^ v) for v in space.elements())


def minimal_transversals(m: Map, limit: int = 12) -> set:
    """Inclusion-minimal edge sets meeting every r-circuit (all subsets tried)."""
    if m.n_squares > limit:
        raise TooLarge(f"{m.n_squares} squares exceed the enumeration limit {limit}")
    labels = list(m.labels)
    bit = {lab: 1 << i for i, lab in enumerate(labels)}
    circuits = [sum(bit[x] for x in c) for c in r_circuits(m)]
    hits = [t for t in range(1 << len(labels)) if all(t & c for c in circuits)]
    hitting = set(hits)
    minimal = []
    for t in hits:
        if all((t & ~(1 << i)) not in hitting for i in range(len(labels)) if t >> i & 1):
            minimal.append(frozenset(lab for i, lab in enumerate(labels) if t >> i & 1))
    return set(minimal)


def minimal_imbalances_equal_transversals_check(m: Map, limit: int = 12) -> bool:
    """The minimal imbalances are exactly the minimal r-circuit transversals."""
    return minimal_imbalances(m, limit) == minimal_transversals(m, limit)


def max_coboundary_complement_check(g: Multigraph, limit: int = 20) -> bool:
    """Maximal coboundaries are exactly the complements of minimal odd-circuit
    transversals (both families enumerated exhaustively)."""
    labels = list(g.edge_order)
    if len(labels) > limit:
        raise TooLarge(f"{len(labels)} edges exceed the enumeration limit {limit}")
    n = len(labels)
    full = (1 << n) - 1
    bit = {lab: 1 << i for i, lab in enumerate(labels)}
    verts = list(g.vertices)
    cobs = set()
    for mask in range(1 << max(0, len(verts) - 1)):
        side = {v for i, v in enumerate(verts[1:]) if mask >> i & 1}
        cobs.add(sum(bit[lab] for lab, (u, w) in g.edges.items() if (u in side) != (w in side)))
    maximal_cobs = {c for c in cobs if not any(d != c and d & c == c for d in cobs)}
    odd = [sum(bit[x] for x in c) for c in enumerate_circuits(g) if len(c) % 2]
    trans = {t for t in range(1 << n) if all(t & c for c in odd)}
    minimal_trans = {t for t in trans if all((t & ~(1 << i)) not in trans for i in range(n) if t >> i & 1)}
    return {full ^ t for t in minimal_trans} == maximal_cobs


def imbalance_homology_check(m: Map) -> bool:
    """Every imbalance is a cycle of G_D, and the imbalances form one coset of
    the boundary space of the dual (which is the coboundary space of G_M)."""
    dual = gamma(m, "dual")
    cyc = gf2.cycle_space(dual_graph(m))
    space = coboundary_space_of(m)
    if cyc.ground != space.ground:
        raise AssertionError("dual graph and G_M disagree on edge labels")
    if not cyc.contains(space.vector(imbalance(m))):
        return False
    bounds = gf2.span_sets(space.ground, [face_boundary(dual, [p[0]]) for p in fgon_corners(dual)])
    return bounds.is_subspace_of(space) and space.is_subspace_of(bounds) and space.is_subspace_of(cyc)


def dual_r_circuits(m: Map) -> list[frozenset]:
    return r_circuits(gamma(m, "dual"))


def minimal_imbalances_are_dual_r_circuits_check(m: Map, limit: int = 12) -> bool:
    """On a projective map the minimal imbalances are the dual's r-circuits."""
    return minimal_imbalances(m, limit) == set(dual_r_circuits(m))


# ------------------------------------------------------- local predicates


def is_contractible(m: Map, faces: Iterable[int]) -> bool:
    """∂(faces) is a circuit and every cycle on the edges of the faces bounds."""
    faces = list(faces)
    g = induced_graph(m)
    try:
        _circuit_walk(g, face_boundary(m, faces))
    except NotACircuit:
        return False
    polys = {p[0]: p for p in fgon_corners(m)}
    used = {m.square_of(polys[f][i]) for f in faces for i in range(0, len(polys[f]), 2)}
    sub = Multigraph.build(g.vertices, [(lab, *g.edges[lab]) for lab in g.edge_order if lab in used])
    sub_cycles = gf2.cycle_space(sub)
    ground = g.edge_order
    cycles = gf2.span_sets(ground, [sub_cycles.labels(r) for r in sub_cycles.rows])
    bounds = gf2.span_sets(ground, [face_boundary(m, [fid]) for fid in polys])
    return cycles.is_subspace_of(bounds)


def _reduces_to_empty(word: list) -> bool:
    stack: list = []
    for c in word:
        if stack and stack[-1] == c:
            stack.pop()
        else:
            stack.append(c)
    return not stack


def cycles_cross(m: Map, s1: Iterable, s2: Iterable) -> bool:
    """True iff every pair of lifts of two edge-disjoint cycles meets.

    Lifts may pair a cycle's edge ends at each vertex freely; they avoid each
    other at a vertex iff the cyclic word of ends (1 for s1, 2 for s2)
    reduces to nothing by cancelling adjacent equal letters."""
    s1, s2 = set(s1), set(s2)
    if s1 & s2:
        raise NotDisjoint("cycles share an edge")
    for s in (s1, s2):
        cycle_type(m, s)  # raises NotACycle
    idx1 = {m.index(x) for x in s1}
    idx2 = {m.index(x) for x in s2}
    for poly in vgon_corners(m):
        ends = [poly[i] >> 1 for i in range(0, len(poly), 2)]
        word = [1 if e >> 1 in idx1 else 2 for e in ends if (e >> 1) in idx1 or (e >> 1) in idx2]
        if 1 in word and 2 in word and not _reduces_to_empty(word):
            return True
    return False


def _cm_adjacency(m: Map) -> list[frozenset]:
    return [frozenset((V(x), F(x), m.a[x])) for x in m.corners]


def chordless_odd_cycles(m: Map) -> list[int]:
    """Induced odd cycles of C_M as corner bitmasks (each found from its least corner)."""
    adj = _cm_adjacency(m)
    out = set()
    for s in m.corners:
        stack = [[s]]
        while stack:
            path = stack.pop()
            for y in adj[path[-1]]:
                if y <= s or y in path or any(z in adj[y] for z in path[1:-1]):
                    continue
                if len(path) >= 2 and s in adj[y]:
                    if len(path) % 2 == 0:
                        out.add(sum(1 << z for z in path) | 1 << y)
                    continue
                stack.append(path + [y])
    return sorted(out)


def has_disjoint_odd_polygons(m: Map, count: int) -> bool:
    """Whether C_M holds ``count`` pairwise vertex-disjoint odd circuits.

    Any odd circuit contains an induced one on a subset of its corners, so
    searching chordless odd cycles suffices."""
    cycles = chordless_odd_cycles(m)

    def search(avail: int, start: int, need: int) -> bool:
        if need == 0:
            return True
        for i in range(start, len(cycles)):
            c = cycles[i]
            if c & avail == c and search(avail & ~c, i + 1, need - 1):
                return True
        return False

    return search((1 << m.n_corners) - 1, 0, count)


def disjoint_odd_polygon_bound_check(m: Map, limit: int = 12) -> bool:
    """C_M has at most ξ(M) pairwise disjoint odd polygons."""
    if m.n_squares > limit:
        raise TooLarge(f"{m.n_squares} squares exceed the enumeration limit {limit}")
    xi = sum(s.xi for s in component_surfaces(m))
    return not has_disjoint_odd_polygons(m, xi + 1)


# ----------------------------------------------------------- certificate


@dataclass(frozen=True)
class TransversalCertificate:
    """Edge-disjoint r-circuits ``omega0`` of G_M and a dual r-circuit ``r0``
    of the same size: ``r0`` is an imbalance, so it meets every r-circuit."""

    omega0: tuple  # tuples of edge labels in walking order
    r0: frozenset
    stats: dict = field(default_factory=dict, compare=False)

    @property
    def size(self) -> int:
        return len(self.r0)

    def problems(self, m: Map) -> list[str]:
        bad = []
        if len(self.omega0) != len(self.r0):
            bad.append("|Ω₀| differs from |R₀|")
        seen: set = set()
        for c in self.omega0:
            try:
                if circuit_type(m, c) != "r":
                    bad.append(f"circuit {' '.join(c)} is not orientation-reversing")
            except Exception as exc:
                bad.append(f"{' '.join(c)} is not a circuit: {exc}")
            if seen & set(c):
                bad.append("circuits share an edge")
            seen |= set(c)
        if not is_imbalance(m, self.r0):
            bad.append("R₀ is not an imbalance")
        try:
            if circuit_type(gamma(m, "dual"), self.r0) != "r":
                bad.append("R₀ is not a dual r-circuit")
        except Exception as exc:
            bad.append(f"R₀ is not a dual circuit: {exc}")
        return bad

    def verify(self, m: Map) -> None:
        bad = self.problems(m)
        if bad:
            raise AssertionError("; ".join(bad))


# ------------------------------------------------------------- PROJMINMAX


@dataclass
class ChainLevel:
    """One entry of TSTACK: ``surface`` was drawn from ``pairing``, a pairing
    on the previous map of the chain (the input for the first entry)."""

    surface: SplitSurface
    pairing: OmegaPairing
    record: Optional[SplitRecord]

    @property
    def map(self) -> Map:
        return self.surface.map


@dataclass
class SplitChain:
    """Result of Phase 1: the maps N_0, ..., N_K and the final line system."""

    m0: Map
    target: int  # least Ω-weight of an odd walk, fixed along the chain
    levels: list
    view: View
    stats: dict

    @property
    def maps(self) -> list[Map]:
        return [lv.map for lv in self.levels]


def check_projective_eulerian(m: Map) -> None:
    if not is_connected(m):
        raise NotConnected("PROJMINMAX needs a connected map")
    s = classify_surface(m)
    if s.chi != 1 or s.orientable:
        raise NotProjective(f"map lies on the {s.name}, not the projective plane")
    if not induced_graph(m).is_eulerian():
        raise NotEulerian("PROJMINMAX needs every vertex of even valency")


def _trail_circuit(frame: Frame, ends: list[int]) -> tuple:
    """An r-circuit inside a closed trail given by its leaving ends."""
    labels = frame.m.labels
    first = frame.vertex_of_end[ends[0]]
    verts, edges, pos = [first], [], {first: 0}
    circuits = []
    for e in ends:
        w = frame.vertex_of_end[e ^ 1]
        edges.append(labels[e >> 1])
        if w in pos:
            i = pos[w]
            circuits.append(tuple(edges[i:]))
            del edges[i:]
            for v in verts[i + 1:]:
                del pos[v]
            del verts[i + 1:]
        else:
            pos[w] = len(verts)
            verts.append(w)
    for c in circuits:
        if len(set(c) & frame.imbalance) % 2:
            return c
    raise AssertionError("an r-trail must contain an r-circuit")


def _min_walk_stats(pairing: OmegaPairing, stats: dict) -> tuple[int, Walk]:
    stats["dijkstra_calls"] = stats.get("dijkstra_calls", 0) + 1
    return min_odd_walk(pairing)


def split_chain(m0: Map, check: bool = True, stats: Optional[dict] = None) -> SplitChain:
    """Phase 1: split transreducers until the smooth paths are projective lines.

    N_0 redraws the input so that smooth paths meet two at a time; each split
    swaps two pairs of mates at an angular point and redraws that vertex.
    With ``check`` the least odd-walk weight is recounted after every split.
    """
    check_projective_eulerian(m0)
    stats = {} if stats is None else stats
    stats.setdefault("splits", 0)
    frame0 = Frame(m0)
    smooth0 = OmegaPairing.smooth(frame0)
    target, _ = _min_walk_stats(smooth0, stats)
    stats["ceiling"] = 2 * m0.n_squares + len(frame0.faces)
    levels = [ChainLevel(split_surface(smooth0, tag="~g", expand=True), smooth0, None)]
    while True:
        smooth = OmegaPairing.smooth(Frame(levels[-1].map))
        view = View(smooth)
        pr = find_pre_reducer(view, stats)
        if pr is None:
            break
        pr = straighten(view, pr, stats)
        t = to_transreducer(view, reducer_from_straight(view, pr), stats)
        if t.kind == 0:
            raise AssertionError("a type-0 reducer is never a transreducer")
        split_pairing, record = split(smooth, t)
        if check:
            w, _ = _min_walk_stats(split_pairing, stats)
            if w != target:
                raise AssertionError(f"split changed the least odd-walk weight from {target} to {w}")
        tag = f"~{stats['splits']}."
        levels.append(ChainLevel(split_surface(split_pairing, tag=tag), split_pairing, record))
        stats["splits"] += 1
        if stats["splits"] > stats["ceiling"]:
            raise AssertionError("split count exceeded 2|E| + f")
    if len(view.lines()) != target:
        raise AssertionError(f"{len(view.lines())} projective lines but least weight {target}")
    return SplitChain(m0, target, levels, view, stats)


def projminmax(m0: Map, check: bool = True) -> TransversalCertificate:
    """Edge-disjoint r-circuits and a dual r-circuit of equal size.

    Phase 1 (``split_chain``) ends with a system of projective lines.  Phase 2
    walks beside one line, crossing it once, then pops TSTACK and carries the
    walk down to the input one level at a time.  A carried walk keeps its
    parity and its weight under the pairing it came from; when its weight
    under the smooth pairing below is larger it is revised to a least-weight
    odd walk there.  The walk is shortened around v-gons at the end and its
    squares give R₀.
    """
    stats: dict = {"splits": 0, "revisions": 0, "initial_fallback": 0}
    chain = split_chain(m0, check, stats)
    target, view = chain.target, chain.view
    frame0 = Frame(m0)
    lines = view.lines()
    omega0 = tuple(_line_circuit(frame0, chain.levels, view, t) for t in lines)

    # the initial R: beside line 0, crossing it once
    smooth = view.omega
    walk = None
    for side in (0, 1):
        cand = parallel_walk(smooth, view, lines[0], side)
        if cand.parity() == 1 and omega_weight(smooth, cand) == target:
            walk = cand
            break
    if walk is None:
        stats["initial_fallback"] += 1
        _, walk = _min_walk_stats(smooth, stats)

    # Phase 2: pop TSTACK
    tstack = list(chain.levels)
    while tstack:
        level = tstack.pop()
        walk = transfer_walk(level.surface, level.pairing, walk)
        lower = OmegaPairing.smooth(level.pairing.frame)
        if walk.parity() != 1:
            raise AssertionError("carrying R down changed its parity")
        if omega_weight(lower, walk) != target:
            stats["revisions"] += 1
            w, walk = _min_walk_stats(lower, stats)
            if w != target:
                raise AssertionError("revision could not restore the weight")
    walk = shorten(frame0, walk)
    r0 = frozenset(m0.labels[k] for k in walk_squares(walk))
    cert = TransversalCertificate(omega0, r0, stats)
    if check:
        cert.verify(m0)
    return cert


def _line_circuit(frame0: Frame, levels: list, view: View, t: int) -> tuple:
    """The trail of line ``t`` read in the input map, cut down to an r-circuit."""
    n = view.frame.m
    known = frame0.m._label_index()
    ends = []
    for vis in view.trails[t]:
        e = vis.out
        if n.labels[e >> 1] not in known:
            continue
        for level in reversed(levels):
            e = level.surface.to_m[e]
        ends.append(e)
    return _trail_circuit(frame0, ends)


def min_transversal_general(m: Map, check: bool = True) -> tuple[int, tuple]:
    """Least r-circuit transversal of a connected projective map (any valencies).

    Doubling every edge makes the graph eulerian and doubles the answer; the
    witness is the doubled run's circuits with labels of the input, so every
    edge appears in at most two of them.  Orientable maps give (0, ())."""
    if not is_connected(m):
        raise NotConnected("min_transversal_general needs a connected map")
    s = classify_surface(m)
    if s.orientable:
        return 0, ()
    if s.chi != 1:
        raise NotProjective(f"map lies on the {s.name}, not the projective plane")
    cert = projminmax(double_edges(m), check=check)
    if cert.size % 2:
        raise AssertionError("a doubled map has an even minimum transversal")
    witness = tuple(tuple(lab.rsplit("~", 1)[0] for lab in c) for c in cert.omega0)
    return cert.size // 2, witness
