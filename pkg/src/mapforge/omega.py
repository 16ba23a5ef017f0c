"""Ω-mate pairings on a fixed map and the reducer machinery built on them.

Edge ends are the v-edges of the map, numbered ``corner >> 1`` (so square
``k`` has ends ``2k`` and ``2k + 1``).  An Ω-pairing pairs up the ends around
every vertex; following "arrive through an end, leave through its mate"
partitions the edges of G_M into closed trails.  The smooth-path pairing
mates each end with the opposite one.

Two trails cross at a vertex when their mate pairs interleave in the cyclic
order of the v-gon.  Splitting at an angular point swaps two pairs of mates;
the map never changes.  A curve's Ω-weight counts, for every passage through
a vertex, the mate pairs separated by that passage.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key
from typing import Iterable, Optional, Sequence

from .errors import MapforgeError
from .maps import (
    F,
    V,
    Map,
    balancing_partition,
    descriptor,
    fgon_corners,
    from_descriptor,
    imbalance,
    induced_graph,
    polygon_owner,
    vgon_corners,
)


class ReducerSearchFailed(MapforgeError):
    """A step of the reducer pipeline found no candidate where one must exist."""

    exit_code = 1


# ------------------------------------------------------------------ frame


class Frame:
    """Static data of a map shared by every Ω-pairing on it."""

    def __init__(self, m: Map):
        self.m = m
        self.graph = induced_graph(m)
        self.imbalance = frozenset(imbalance(m))
        self.imb_idx = {m.index(lab) for lab in self.imbalance}
        polys = vgon_corners(m)
        self.vgons = polys
        self.n_vertices = len(polys)
        self.vertex_name = [f"v{p[0]}" for p in polys]
        self.rot: list[list[int]] = []
        self.vertex_of_end = [0] * (2 * m.n_squares)
        self.pos = [0] * (2 * m.n_squares)
        for vi, poly in enumerate(polys):
            ends = [poly[i] >> 1 for i in range(0, len(poly), 2)]
            self.rot.append(ends)
            for i, e in enumerate(ends):
                self.vertex_of_end[e] = vi
                self.pos[e] = i
        fpolys = fgon_corners(m)
        self.faces = [p[0] for p in fpolys]
        self.face_index = {fid: i for i, fid in enumerate(self.faces)}
        owner = polygon_owner(fpolys, m.n_corners)
        # the two sides of square k: f-gons through its f-edges
        self.sides = [(self.face_index[owner[4 * k]], self.face_index[owner[4 * k + 1]]) for k in range(m.n_squares)]

    @property
    def n_squares(self) -> int:
        return self.m.n_squares

    def label_set(self, squares: Iterable[int]) -> frozenset:
        return frozenset(self.m.labels[k] for k in squares)

    def is_s_cycle(self, squares: Iterable[int]) -> bool:
        return len(set(squares) & self.imb_idx) % 2 == 0

    def boundary(self, faces: Iterable[int]) -> frozenset:
        fs = set(faces)
        return frozenset(k for k, (a, b) in enumerate(self.sides) if (a in fs) != (b in fs))

    def face_edges(self, faces: Iterable[int]) -> frozenset:
        fs = set(faces)
        return frozenset(k for k, (a, b) in enumerate(self.sides) if a in fs or b in fs)


def interleave(frame: Frame, p: Sequence[int], q: Sequence[int]) -> bool:
    """Whether two pairs of ends at one vertex separate each other."""
    a, b = sorted((frame.pos[p[0]], frame.pos[p[1]]))
    c, d = frame.pos[q[0]], frame.pos[q[1]]
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


# -------------------------------------------------------------- pairings


@dataclass(frozen=True)
class Visit:
    vertex: int
    inn: int  # end through which the trail arrives
    out: int  # end through which it leaves

    @property
    def pair(self) -> tuple:
        return (self.inn, self.out)


@dataclass(frozen=True)
class OmegaPairing:
    """Ω-mates: ``mates[e]`` is the end paired with end ``e`` at its vertex."""

    frame: Frame = field(repr=False, compare=False)
    mates: tuple

    @classmethod
    def smooth(cls, frame: Frame) -> "OmegaPairing":
        mates = [0] * (2 * frame.n_squares)
        for ends in frame.rot:
            d = len(ends)
            if d % 2:
                from .errors import NotEulerian

                raise NotEulerian("smooth pairing needs every vertex of even valency")
            for i, e in enumerate(ends):
                mates[e] = ends[(i + d // 2) % d]
        return cls(frame, tuple(mates))

    def check(self) -> None:
        for e, f in enumerate(self.mates):
            if self.mates[f] != e or f == e:
                raise ValueError("Ω-mates must form a fixed-point-free involution")
            if self.frame.vertex_of_end[e] != self.frame.vertex_of_end[f]:
                raise ValueError("Ω-mates must lie in one v-gon")

    def swapped(self, e1: int, e2: int) -> "OmegaPairing":
        """Replace {e1, g1}, {e2, g2} by {g1, e2}, {g2, e1} (g = mate)."""
        mates = list(self.mates)
        g1, g2 = mates[e1], mates[e2]
        mates[g1], mates[e2] = e2, g1
        mates[g2], mates[e1] = e1, g2
        return OmegaPairing(self.frame, tuple(mates))

    def pairs_at(self, vertex: int) -> list[tuple]:
        return sorted({tuple(sorted((e, self.mates[e]))) for e in self.frame.rot[vertex]})

    def trails(self) -> list[tuple]:
        """Closed trails as tuples of visits; trail ``j`` of edge ``visits[j].out >> 1``."""
        n = 2 * self.frame.n_squares
        used = [False] * n
        out = []
        for e0 in range(n):
            if used[e0] or used[e0 ^ 1]:
                continue
            visits = []
            e = e0
            while True:
                used[e] = used[e ^ 1] = True
                visits.append(Visit(self.frame.vertex_of_end[e], self.mates[e], e))
                e = self.mates[e ^ 1]
                if e == e0:
                    break
            out.append(tuple(visits))
        return out

    def crossing_count(self) -> int:
        total = 0
        for v in range(self.frame.n_vertices):
            ps = self.pairs_at(v)
            total += sum(interleave(self.frame, ps[i], ps[j]) for i in range(len(ps)) for j in range(i + 1, len(ps)))
        return total

    def is_smooth(self) -> bool:
        return self.mates == OmegaPairing.smooth(self.frame).mates


# ------------------------------------------------------------------ paths


@dataclass(frozen=True)
class Path:
    """Subpath of trail ``trail`` leaving visit ``start`` along ``length``
    consecutive edges.  ``length == 0`` is a degenerate path (one vertex);
    ``length`` equal to the trail length is the whole closed trail."""

    trail: int
    start: int
    length: int


class View:
    """Trails of one pairing with the crossing queries the algorithm needs."""

    def __init__(self, omega: OmegaPairing):
        self.omega = omega
        self.frame = omega.frame
        self.trails = omega.trails()
        self.at_vertex: dict = {}
        for t, tr in enumerate(self.trails):
            for i, vis in enumerate(tr):
                self.at_vertex.setdefault(vis.vertex, []).append((t, i))
        self._events = None

    # -- basic path data
    def L(self, t: int) -> int:
        return len(self.trails[t])

    def visit(self, t: int, i: int) -> Visit:
        return self.trails[t][i % self.L(t)]

    def edges(self, p: Path) -> list[int]:
        L = self.L(p.trail)
        return [self.trails[p.trail][(p.start + j) % L].out >> 1 for j in range(p.length)]

    def end_index(self, p: Path) -> int:
        return (p.start + p.length) % self.L(p.trail)

    def interior(self, p: Path) -> list[int]:
        """Visits strictly inside ``p``; every visit of a whole closed trail."""
        L = self.L(p.trail)
        if p.length == L:
            return [(p.start + j) % L for j in range(L)]
        return [(p.start + j) % L for j in range(1, p.length)]

    def visit_ids(self, p: Path) -> list[int]:
        if p.length == 0:
            return []
        L = self.L(p.trail)
        return sorted({(p.start + j) % L for j in range(p.length + 1)})

    def start_vertex(self, p: Path) -> int:
        return self.visit(p.trail, p.start).vertex

    def end_vertex(self, p: Path) -> int:
        return self.visit(p.trail, self.end_index(p)).vertex

    def edge_end_at_start(self, p: Path) -> int:
        return self.visit(p.trail, p.start).out

    def edge_end_at_end(self, p: Path) -> int:
        return self.visit(p.trail, self.end_index(p)).inn

    def crosses(self, a: tuple, b: tuple) -> bool:
        """Crossing of two visits given as (trail, index)."""
        if a == b:
            return False
        va, vb = self.visit(*a), self.visit(*b)
        return va.vertex == vb.vertex and interleave(self.frame, va.pair, vb.pair)

    # -- crossing events
    def events(self) -> list[tuple]:
        """All crossings: sorted pairs of visits ((t, i), (u, j)) that interleave."""
        if self._events is None:
            ev = []
            for v in sorted(self.at_vertex):
                vs = self.at_vertex[v]
                for x in range(len(vs)):
                    for y in range(x + 1, len(vs)):
                        if self.crosses(vs[x], vs[y]):
                            ev.append((vs[x], vs[y]))
            self._events = ev
        return self._events

    def trail_crossings(self, t: int, u: int) -> list[tuple]:
        return [(a, b) if a[0] == t else (b, a) for a, b in self.events() if {a[0], b[0]} == {t, u} and t != u] if t != u else [
            (a, b) for a, b in self.events() if a[0] == b[0] == t
        ]

    def inert(self, t: int) -> bool:
        """An s-trail that meets no crossing at all."""
        if not self.frame.is_s_cycle(self.edges(Path(t, 0, self.L(t)))):
            return False
        return not any(a[0] == t or b[0] == t for a, b in self.events())

    def lines(self) -> list[int]:
        return [t for t in range(len(self.trails)) if not self.frame.is_s_cycle(self.edges(Path(t, 0, self.L(t))))]

    def sequence(self, p: Path) -> list[int]:
        """Visits of ``p`` in order (once each for a whole closed trail)."""
        L = self.L(p.trail)
        n = L if p.length == L else p.length + 1
        return [(p.start + j) % L for j in range(n)]

    def self_crossings(self, p: Path) -> list[tuple]:
        """Positions (x, y) along ``p`` of visits that cross; the two end
        visits of a closed path may cross (that is its angular point)."""
        seq = self.sequence(p)
        last = len(seq) - 1 if p.length < self.L(p.trail) else None
        by_v: dict = {}
        for x, i in enumerate(seq):
            by_v.setdefault(self.visit(p.trail, i).vertex, []).append(x)
        out = []
        for xs in by_v.values():
            for a in range(len(xs)):
                for b in range(a + 1, len(xs)):
                    if (xs[a], xs[b]) == (0, last):
                        continue
                    if self.crosses((p.trail, seq[xs[a]]), (p.trail, seq[xs[b]])):
                        out.append((xs[a], xs[b]))
        return sorted(out)

    def self_crosses(self, p: Path) -> bool:
        return bool(self.self_crossings(p))


def as_view(x) -> View:
    """Accept a pairing or an existing view."""
    return x if isinstance(x, View) else View(x)


# ------------------------------------------------------------ pre-reducers


@dataclass(frozen=True)
class PreReducer:
    """(π1, π2): π1 may be degenerate; when ``flip`` the start of π1 meets the end of π2."""

    p1: Path
    p2: Path
    flip: bool = False

    def support(self, view: View) -> frozenset:
        return frozenset(view.edges(self.p1)) | frozenset(view.edges(self.p2))


def end_pairs(view: View, pr: PreReducer) -> list[tuple]:
    """The meeting points of π1 and π2 as (visit of π1, end of π1, visit of π2, end of π2)."""
    p1, p2 = pr.p1, pr.p2
    if p1.length == 0:
        t = p2.trail
        return [((t, p2.start), view.edge_end_at_start(p2), (t, view.end_index(p2)), view.edge_end_at_end(p2))]
    a = ((p1.trail, p1.start), view.edge_end_at_start(p1))
    b = ((p1.trail, view.end_index(p1)), view.edge_end_at_end(p1))
    c = ((p2.trail, p2.start), view.edge_end_at_start(p2))
    d = ((p2.trail, view.end_index(p2)), view.edge_end_at_end(p2))
    if pr.flip:
        c, d = d, c
    return [(a[0], a[1], c[0], c[1]), (b[0], b[1], d[0], d[1])]


def pre_reducer_problems(view: View, pr: PreReducer) -> list[str]:
    """Empty list iff ``pr`` is an Ω-pre-reducer."""
    p1, p2 = pr.p1, pr.p2
    bad = []
    if p2.length == 0:
        return ["π2 is degenerate"]
    e1, e2 = view.edges(p1), view.edges(p2)
    if set(e1) & set(e2):
        bad.append("π1 and π2 share an edge")
    if p1.length == 0:
        if view.start_vertex(p2) != view.end_vertex(p2):
            bad.append("degenerate π1 needs a closed π2")
        elif p2.length != view.L(p2.trail):
            if not view.crosses((p2.trail, p2.start), (p2.trail, view.end_index(p2))):
                bad.append("closed π2 does not cross itself at its ends")
    else:
        pairs = end_pairs(view, pr)
        for v1, _, v2, _ in pairs:
            if view.visit(*v1).vertex != view.visit(*v2).vertex:
                bad.append("π1 and π2 do not share their ends")
                break
            if v1 != v2 and not view.crosses(v1, v2):
                bad.append("π1 and π2 touch without crossing at an end")
        if view.self_crosses(p1):
            bad.append("π1 crosses itself")
        allowed = {frozenset((v1, v2)) for v1, _, v2, _ in pairs}
        vis1 = [(p1.trail, i) for i in view.visit_ids(p1)]
        vis2 = [(p2.trail, i) for i in view.visit_ids(p2)]
        for a in vis1:
            for b in vis2:
                if view.crosses(a, b) and frozenset((a, b)) not in allowed:
                    bad.append("π1 and π2 cross away from their ends")
                    break
            else:
                continue
            break
    if not bad and not view.frame.is_s_cycle(set(e1) ^ set(e2)):
        bad.append("eπ1 + eπ2 is an r-cycle")
    return bad


def is_pre_reducer(view: View, pr: PreReducer) -> bool:
    return not pre_reducer_problems(view, pr)


def is_straight(view: View, pr: PreReducer) -> bool:
    return is_pre_reducer(view, pr) and not view.self_crosses(pr.p2)


def _arcs(view: View, t: int, i: int, j: int) -> list[Path]:
    """Both arcs of trail ``t`` between visits ``i`` and ``j`` (forward paths)."""
    L = view.L(t)
    if i == j:
        return []
    return [Path(t, i, (j - i) % L), Path(t, j, (i - j) % L)]


def enumerate_pre_reducers(view: View, within: Optional[Iterable[int]] = None, straight: bool = False):
    """Every Ω-pre-reducer whose edges lie in ``within`` (all edges if None)."""
    allowed = None if within is None else frozenset(within)
    seen = set()

    def ok(pr):
        key = (pr.support(view), pr.p1.length == 0)
        if allowed is not None and not pr.support(view) <= allowed:
            return False
        if not (is_straight(view, pr) if straight else is_pre_reducer(view, pr)):
            return False
        sig = (pr.p1, pr.p2, pr.flip)
        if sig in seen:
            return False
        seen.add(sig)
        del key
        return True

    for t in range(len(view.trails)):
        full = Path(t, 0, view.L(t))
        if not view.inert(t):
            pr = PreReducer(Path(t, 0, 0), full)
            if ok(pr):
                yield pr
    for a, b in view.events():
        if a[0] == b[0]:
            for arc in _arcs(view, a[0], a[1], b[1]):
                pr = PreReducer(Path(arc.trail, arc.start, 0), arc)
                if ok(pr):
                    yield pr
    ev = view.events()
    for x in range(len(ev)):
        for y in range(len(ev)):
            if x == y:
                continue
            for X1, Y1 in (ev[x], ev[x][::-1]):
                for X2, Y2 in (ev[y], ev[y][::-1]):
                    if X1[0] != X2[0] or Y1[0] != Y2[0]:
                        continue
                    for q1 in _arcs(view, X1[0], X1[1], X2[1]):
                        for q2 in _arcs(view, Y1[0], Y1[1], Y2[1]):
                            # orientation: q1 runs from X1 to X2 or the reverse; match ends
                            s1 = q1.start == X1[1]
                            s2 = q2.start == Y1[1]
                            pr = PreReducer(q1, q2, flip=(s1 != s2))
                            if ok(pr):
                                yield pr


def _smallest(view: View, candidates, key_extra=None) -> Optional[PreReducer]:
    best = None
    for pr in candidates:
        sup = pr.support(view)
        key = (len(sup), sorted(sup), pr.p1.length, pr.p2.trail, pr.p2.start, pr.p2.length, pr.p1.trail, pr.p1.start)
        if best is None or key < best[0]:
            best = (key, pr)
    return None if best is None else best[1]


def find_pre_reducer(view, stats: Optional[dict] = None) -> Optional[PreReducer]:
    """Return an Ω-pre-reducer, or None when Ω is a system of projective lines.

    Triggers, in order: an s-trail that meets some crossing; a trail that
    crosses itself; two trails that cross more than once.
    """
    view = as_view(view)
    stats = stats if stats is not None else {}
    n = len(view.trails)
    for t in range(n):
        if not view.inert(t) and view.frame.is_s_cycle(view.edges(Path(t, 0, view.L(t)))):
            return PreReducer(Path(t, 0, 0), Path(t, 0, view.L(t)))
    for a, b in view.events():
        if a[0] == b[0]:
            t = a[0]
            for arc in _arcs(view, t, a[1], b[1]):
                if view.frame.is_s_cycle(view.edges(arc)):
                    return PreReducer(Path(t, arc.start, 0), arc)
    for t in range(n):
        for u in range(t + 1, n):
            ev = view.trail_crossings(t, u)
            if len(ev) < 2:
                continue
            pr = _two_crossings(view, ev)
            if pr is not None and is_pre_reducer(view, pr):
                return pr
            stats["fallbacks"] = stats.get("fallbacks", 0) + 1
            within = set(view.edges(Path(t, 0, view.L(t)))) | set(view.edges(Path(u, 0, view.L(u))))
            pr = _smallest(view, enumerate_pre_reducers(view, within))
            if pr is None:
                raise ReducerSearchFailed("two trails cross twice but no pre-reducer was found")
            return pr
    return None


def _two_crossings(view: View, ev: list) -> Optional[PreReducer]:
    """Pre-reducer from two crossings of trails t (first coordinates) and u."""
    for x in range(len(ev)):
        for y in range(x + 1, len(ev)):
            (A1, B1), (A2, B2) = ev[x], ev[y]
            if A1 == A2 or B1 == B2:
                continue
            t, u = A1[0], B1[0]
            Lt, Lu = view.L(t), view.L(u)
            alpha = Path(t, A1[1], (A2[1] - A1[1]) % Lt)
            gamma = Path(u, B1[1], (B2[1] - B1[1]) % Lu)
            delta = Path(u, B2[1], (B1[1] - B2[1]) % Lu)
            ea = set(view.edges(alpha))
            g2 = gamma if view.frame.is_s_cycle(ea ^ set(view.edges(gamma))) else delta
            g2_visits = [(u, i) for i in view.visit_ids(g2)]
            # first visit along α (after A1) crossing γ'
            hit = None
            for j in range(1, alpha.length + 1):
                a = (t, (A1[1] + j) % Lt)
                for b in g2_visits:
                    if view.crosses(a, b):
                        hit = (j, b)
                        break
                if hit:
                    break
            if hit is None:
                continue
            j, b = hit
            a1 = Path(t, A1[1], j)
            if g2 is gamma:
                c1 = Path(u, B1[1], (b[1] - B1[1]) % Lu)
                return PreReducer(a1, c1, flip=False)
            c1 = Path(u, b[1], (B1[1] - b[1]) % Lu)
            return PreReducer(a1, c1, flip=True)
    return None


def straighten(view, pr: PreReducer, stats: Optional[dict] = None) -> PreReducer:
    """Shrink a pre-reducer until π2 does not cross itself."""
    view = as_view(view)
    stats = stats if stats is not None else {}
    if not is_pre_reducer(view, pr):
        raise ValueError("input is not an Ω-pre-reducer: " + "; ".join(pre_reducer_problems(view, pr)))
    limit = view.frame.n_squares + 1
    while view.self_crosses(pr.p2):
        stats["straighten_steps"] = stats.get("straighten_steps", 0) + 1
        limit -= 1
        if limit < 0:
            raise ReducerSearchFailed("straightening did not terminate")
        nxt = _straighten_step(view, pr)
        if nxt is None or not is_pre_reducer(view, nxt) or not nxt.support(view) < pr.support(view):
            stats["fallbacks"] = stats.get("fallbacks", 0) + 1
            sup = pr.support(view)
            cands = (c for c in enumerate_pre_reducers(view, sup) if c.support(view) < sup)
            nxt = _smallest(view, cands)
            if nxt is None:
                raise ReducerSearchFailed("no smaller pre-reducer inside a non-straight one")
        pr = nxt
    return pr


def _straighten_step(view: View, pr: PreReducer) -> Optional[PreReducer]:
    p2 = pr.p2
    t = p2.trail
    L = view.L(t)
    inner = view.sequence(p2)
    # innermost self-crossing of π2: positions a < b along π2
    pairs = view.self_crossings(p2)
    if not pairs:
        return None
    best = min(pairs, key=lambda xy: (xy[1] - xy[0], xy))
    ia, ib = inner[best[0]], inner[best[1]]
    beta = Path(t, ia, (ib - ia) % L)
    if view.frame.is_s_cycle(view.edges(beta)):
        return PreReducer(Path(t, ia, 0), beta)
    beta_visits = [(t, i) for i in view.visit_ids(beta)]
    # first crossing of γ (the part of π2 after β) with β
    end2 = view.end_index(p2)
    j = ib
    while j != end2:
        j = (j + 1) % L
        for b in beta_visits:
            if view.crosses((t, j), b):
                m_ = b[1]
                b1 = Path(t, ia, (m_ - ia) % L)
                g1 = Path(t, ib, (j - ib) % L)
                closed = Path(t, m_, (j - m_) % L)
                for cand in (PreReducer(b1, g1), PreReducer(Path(t, m_, 0), closed)):
                    if is_pre_reducer(view, cand):
                        return cand
                return None
    # otherwise the part before β, walked backwards
    j = ia
    while j != p2.start:
        j = (j - 1) % L
        for b in beta_visits:
            if view.crosses((t, j), b):
                m_ = b[1]
                b2 = Path(t, m_, (ib - m_) % L)
                a1 = Path(t, j, (ia - j) % L)
                closed = Path(t, j, (m_ - j) % L)
                for cand in (PreReducer(b2, a1, flip=True), PreReducer(Path(t, j, 0), closed)):
                    if is_pre_reducer(view, cand):
                        return cand
                return None
    return None


# --------------------------------------------------------------- reducers


@dataclass(frozen=True)
class Reducer:
    faces: frozenset  # face indices (see Frame.faces for f-gon ids)
    kind: int  # 0, 1 or 2
    pre: PreReducer
    boundary: frozenset  # squares
    angular: tuple  # ((vertex, e1, e2), ...)
    trans: bool = False

    def face_ids(self, frame: Frame) -> frozenset:
        return frozenset(frame.faces[j] for j in self.faces)


def boundary_chords(view: View, pr: PreReducer) -> dict:
    """Per vertex, the pairs of ends joined by the boundary curve eπ1 + eπ2."""
    chords: dict = {}

    def add(vertex, e, f):
        chords.setdefault(vertex, []).append((e, f))

    for p in (pr.p1, pr.p2):
        for i in view.interior(p):
            vis = view.visit(p.trail, i)
            add(vis.vertex, vis.inn, vis.out)
    if not (pr.p1.length == 0 and pr.p2.length == view.L(pr.p2.trail)):
        for v1, end1, _, end2 in end_pairs(view, pr):
            add(view.visit(*v1).vertex, end1, end2)
    return chords


def region_sides(view: View, pr: PreReducer) -> list[tuple]:
    """Cut C_M along the boundary curve; return (faces, is_disc) per side.

    Corners on the same side of every boundary chord at a vertex are joined
    (with the parity of their distance around the v-gon), f-edges always
    are.  A side is a disc iff its corner graph has no odd cycle.
    """
    frame = view.frame
    m = frame.m
    n = m.n_corners
    parent = list(range(n))
    par = [0] * n

    def find(x):
        p = 0
        while parent[x] != x:
            p ^= par[x]
            x = parent[x]
        return x, p

    odd = set()

    def union(x, y, bit):
        (rx, px), (ry, py) = find(x), find(y)
        if rx == ry:
            if px ^ py ^ bit:
                odd.add(rx)
            return
        parent[rx] = ry
        par[rx] = px ^ py ^ bit
        if rx in odd:
            odd.discard(rx)
            odd.add(ry)

    chords = boundary_chords(view, pr)
    for vi, poly in enumerate(frame.vgons):
        spans = []
        for e, f in chords.get(vi, ()):
            i, j = sorted((frame.pos[e], frame.pos[f]))
            spans.append((2 * i + 1, 2 * j))
        groups: dict = {}
        for p, x in enumerate(poly):
            sig = tuple(lo <= p <= hi for lo, hi in spans)
            groups.setdefault(sig, []).append((p, x))
        for members in groups.values():
            p0, x0 = members[0]
            for p, x in members[1:]:
                union(x0, x, (p - p0) & 1)
    for x in range(n):
        union(x, F(x), 1)
    sides: dict = {}
    for j, poly in enumerate(fgon_corners(m)):
        sides.setdefault(find(poly[0])[0], set()).add(j)
    roots = {find(x)[0] for x in range(n)}
    return [(frozenset(sides.get(r, ())), r not in odd) for r in sorted(roots)]


def reducer_from_straight(view, pr: PreReducer) -> Reducer:
    """The disc bounded by eπ1 (+ eπ2)."""
    view = as_view(view)
    if not is_straight(view, pr):
        raise ValueError("reducer needs a straight Ω-pre-reducer")
    p1, p2 = pr.p1, pr.p2
    if p1.length and view.start_vertex(p1) == view.end_vertex(p1) and view.start_vertex(p2) == view.end_vertex(p2):
        if view.frame.is_s_cycle(view.edges(p1)) and view.crosses((p1.trail, p1.start), (p1.trail, view.end_index(p1))):
            pr = PreReducer(Path(p1.trail, p1.start, 0), p1)
    p1, p2 = pr.p1, pr.p2
    bnd = frozenset(set(view.edges(p1)) ^ set(view.edges(p2)))
    if p1.length == 0:
        kind = 0 if p2.length == view.L(p2.trail) else 1
    else:
        kind = 2
    angular = []
    if kind == 1:
        x = view.start_vertex(p2)
        angular.append((x, view.edge_end_at_start(p2), view.edge_end_at_end(p2)))
    elif kind == 2:
        for v1, end1, v2, end2 in end_pairs(view, pr):
            if view.crosses(v1, v2):
                angular.append((view.visit(*v1).vertex, end1, end2))
    sides = region_sides(view, pr)
    discs = [f for f, disc in sides if disc and f]
    if len(sides) != 2 or len(discs) != 1:
        raise ReducerSearchFailed("the boundary curve does not cut off exactly one disc")
    return Reducer(discs[0], kind, pr, bnd, tuple(angular))


def segments(view: View, r: Reducer) -> list[tuple]:
    """Maximal trail pieces inside R: (trail, first visit, last visit, closed)."""
    frame = view.frame
    inner = frame.face_edges(r.faces) - r.boundary
    out = []
    for t, tr in enumerate(view.trails):
        if view.inert(t):
            continue
        L = len(tr)
        flags = [(tr[j].out >> 1) in inner for j in range(L)]
        if all(flags):
            out.append((t, 0, 0, True))
            continue
        for j in range(L):
            if flags[j] and not flags[j - 1]:
                k = j
                while flags[k % L]:
                    k += 1
                out.append((t, j, k % L, False))
    return out


def trans_holds(view: View, r: Reducer) -> bool:
    """Every segment's extension crosses π1 only at one end and π2 only at the other."""
    if r.kind != 2:
        return False
    pr = r.pre
    p_vis = [(pr.p1.trail, i) for i in view.visit_ids(pr.p1)]
    q_vis = [(pr.p2.trail, i) for i in view.visit_ids(pr.p2)]
    for t, i, j, closed in segments(view, r):
        if closed:
            return False
        marks = []
        for idx in (i, j):
            a = (t, idx)
            marks.append((any(view.crosses(a, b) for b in p_vis), any(view.crosses(a, b) for b in q_vis)))
        if set(marks) != {(True, False), (False, True)}:
            return False
    return True


def is_transreducer(view: View, r: Reducer) -> bool:
    if r.kind == 1:
        return len(r.faces) == 1
    return trans_holds(view, r)


def _reducers_inside(view: View, r: Reducer):
    inside = view.frame.face_edges(r.faces)
    for pr in enumerate_pre_reducers(view, inside, straight=True):
        try:
            r2 = reducer_from_straight(view, pr)
        except ReducerSearchFailed:
            continue
        if r2.faces < r.faces and r2.kind != 0:
            yield r2


def to_transreducer(view, r: Reducer, stats: Optional[dict] = None) -> Reducer:
    """Shrink a reducer until it is a monovalent face or satisfies TRANS."""
    view = as_view(view)
    stats = stats if stats is not None else {}
    steps = 0
    while not is_transreducer(view, r):
        steps += 1
        stats["shrink_steps"] = stats.get("shrink_steps", 0) + 1
        best = None
        for r2 in _reducers_inside(view, r):
            key = (len(r2.faces), sorted(r2.faces), r2.kind)
            if best is None or key < best[0]:
                best = (key, r2)
        if best is None:
            raise ReducerSearchFailed(f"type-{r.kind} reducer is not a transreducer and has no smaller reducer inside")
        r = best[1]
        if steps > view.frame.n_squares + len(view.frame.faces):
            raise ReducerSearchFailed("shrinking did not terminate")
    return Reducer(r.faces, r.kind, r.pre, r.boundary, r.angular, True)


@dataclass(frozen=True)
class SplitRecord:
    """One TSTACK entry: the transreducer's faces and the mate swap applied."""

    faces: frozenset
    vertex: int
    e1: int
    e2: int
    before: OmegaPairing = field(repr=False)
    after: OmegaPairing = field(repr=False)


def split(omega: OmegaPairing, r: Reducer) -> tuple[OmegaPairing, SplitRecord]:
    """Swap the mates at the first angular point of a transreducer."""
    if not r.trans or not r.angular:
        raise ValueError("split needs a transreducer with an angular point")
    vertex, e1, e2 = r.angular[0]
    new = omega.swapped(e1, e2)
    return new, SplitRecord(r.faces, vertex, e1, e2, omega, new)


# ---------------------------------------------------- curves and Ω-weight


@dataclass(frozen=True)
class Walk:
    """Closed walk in C_M as a list of (kind, from corner, to corner)."""

    steps: tuple

    def __len__(self) -> int:
        return len(self.steps)

    def parity(self) -> int:
        return len(self.steps) % 2


def _step_to(m: Map, kind: str, x: int) -> int:
    return {"v": V, "f": F}[kind](x) if kind != "a" else m.a[x]


def _vertex_passes(frame: Frame, walk: Walk) -> list[tuple]:
    """Split a walk at its f-steps; return (vertex, crossed ends mod 2) per pass."""
    steps = list(walk.steps)
    if not any(k == "f" for k, _, _ in steps):
        raise ValueError("closed walk without f-steps")
    i0 = next(i for i, s in enumerate(steps) if s[0] == "f")
    steps = steps[i0 + 1:] + steps[: i0 + 1]
    passes = []
    cur: dict = {}
    vertex = None
    for kind, x, y in steps:
        if kind == "f":
            if vertex is not None:
                passes.append((vertex, frozenset(e for e, c in cur.items() if c % 2)))
            cur, vertex = {}, None
            continue
        vertex = frame.vertex_of_end[x >> 1]
        if kind == "v":
            cur[x >> 1] = cur.get(x >> 1, 0) + 1
    if vertex is not None:
        passes.append((vertex, frozenset(e for e, c in cur.items() if c % 2)))
    return passes


def omega_weight(omega: OmegaPairing, walk: Walk) -> int:
    """Sum over vertex passes of the mate pairs with exactly one end crossed."""
    total = 0
    for _, crossed in _vertex_passes(omega.frame, walk):
        total += sum(1 for e in crossed if omega.mates[e] not in crossed)
    return total


def walk_squares(walk: Walk) -> frozenset:
    """ψ^D: squares whose v-edges the walk uses an odd number of times in total."""
    cnt: dict = {}
    for kind, x, _ in walk.steps:
        if kind == "v":
            cnt[x >> 1] = cnt.get(x >> 1, 0) + 1
    per_square: dict = {}
    for e, c in cnt.items():
        if c % 2:
            per_square[e >> 1] = per_square.get(e >> 1, 0) + 1
    return frozenset(k for k, c in per_square.items() if c % 2)


def _run_moves(frame: Frame, omega: OmegaPairing):
    """Runs around v-gons: (from corner, to corner, cost, steps)."""
    m = frame.m
    for vi, poly in enumerate(frame.vgons):
        D = len(poly) // 2
        ends = frame.rot[vi]
        for i in range(D):
            crossed: list = []
            steps = []
            for k in range(1, D + 1):
                c = poly[(2 * (i + k - 1)) % (2 * D)]
                steps.append(("v", c, V(c)))
                crossed.append(ends[(i + k - 1) % D])
                cs = set(crossed)
                cost = sum(1 for e in cs if omega.mates[e] not in cs)
                yield poly[2 * i], V(c), cost, tuple(steps)
                nxt = m.a[V(c)]
                steps.append(("a", V(c), nxt))


def min_odd_walk(omega: OmegaPairing) -> tuple[int, Walk]:
    """Least Ω-weight of an odd closed walk in C_M, with a witness."""
    frame = omega.frame
    m = frame.m
    adj: dict = {x: [] for x in m.corners}
    for x in m.corners:
        adj[x].append((F(x), 0, (("f", x, F(x)),)))
        adj[x].append((m.a[x], 0, (("a", x, m.a[x]),)))
    for a, b, cost, steps in _run_moves(frame, omega):
        adj[a].append((b, cost, steps))
        back = tuple((k, y, x) for k, x, y in reversed(steps))
        adj[b].append((a, cost, back))
    # C_M without its f-edges is a union of even v-gons, so an odd closed
    # walk uses an f-edge and thus a corner 4k or 4k+1.  Starts already
    # handled are dropped: a better walk through them would have been found.
    best = None
    done: set = set()
    for s in (x for x in m.corners if x & 3 < 2):
        done.add(s)
        dist = {(s, 0): 0}
        prev: dict = {}
        heap = [(0, s, 0)]
        while heap:
            d, x, p = heapq.heappop(heap)
            if d > dist.get((x, p), math.inf):
                continue
            if best is not None and d >= best[0]:
                break
            if (x, p) == (s, 1):
                break
            for y, c, steps in adj[x]:
                if y in done and y != s:
                    continue
                key = (y, p ^ 1)
                nd = d + c
                if nd < dist.get(key, math.inf):
                    dist[key] = nd
                    prev[key] = ((x, p), steps)
                    heapq.heappush(heap, (nd, y, p ^ 1))
        if (s, 1) in dist and (best is None or dist[(s, 1)] < best[0]):
            seq = []
            node = (s, 1)
            while node != (s, 0):
                node, steps = prev[node]
                seq.append(steps)
            flat = tuple(st for steps in reversed(seq) for st in steps)
            best = (dist[(s, 1)], Walk(flat))
    if best is None:
        raise ValueError("no odd closed walk: the map is orientable")
    return best


def parallel_walk(omega: OmegaPairing, view: View, t: int, side: int = 0) -> Walk:
    """Walk beside trail ``t`` once around, then cross it to close up."""
    frame = omega.frame
    m = frame.m
    tr = view.trails[t]
    g = tr[0].out
    c0 = 2 * g + side
    c = c0
    steps = []
    for j in range(len(tr)):
        steps.append(("f", c, F(c)))
        c = F(c)
        h = c >> 1
        out = omega.mates[h]
        nxt = m.a[c]
        steps.append(("a", c, nxt))
        c = nxt
        while (c >> 1) != out:
            steps.append(("v", c, V(c)))
            c = V(c)
            nxt = m.a[c]
            steps.append(("a", c, nxt))
            c = nxt
    if c != c0:
        steps.append(("v", c, V(c)))
    return Walk(tuple(steps))


def shorten(frame: Frame, walk: Walk) -> Walk:
    """Take the side with fewer v-edges at every vertex pass."""
    m = frame.m
    steps = list(walk.steps)
    i0 = next(i for i, s in enumerate(steps) if s[0] == "f")
    steps = steps[i0:] + steps[:i0]
    out = []
    j = 0
    n = len(steps)
    while j < n:
        kind, x, y = steps[j]
        if kind == "f":
            out.append(steps[j])
            j += 1
            continue
        start = x
        while j < n and steps[j][0] != "f":
            j += 1
        end = steps[j - 1][2]
        out.extend(_vgon_path(frame, start, end))
    del m
    return Walk(tuple(out))


def _vgon_path(frame: Frame, a: int, b: int) -> list[tuple]:
    """Path along the v-gon from corner a to corner b using fewer v-edges."""
    m = frame.m
    best = None
    for first in ("v", "a"):
        path = []
        x = a
        kind = first
        guard = 0
        while x != b:
            y = V(x) if kind == "v" else m.a[x]
            path.append((kind, x, y))
            x = y
            kind = "a" if kind == "v" else "v"
            guard += 1
            if guard > 4 * m.n_squares + 4:
                raise ValueError("corners are not on one v-gon")
        nv = sum(1 for k, _, _ in path if k == "v")
        if best is None or (nv, len(path)) < best[0]:
            best = ((nv, len(path)), path)
    return best[1]


# --------------------------------------------------- split-surface map


def _circle_points(D: int, attempt: int = 0) -> list[tuple]:
    """D rational points in ccw order on the unit circle (perturbed per attempt)."""
    pts = []
    for j in range(D):
        theta = math.pi * (2 * j + 1) / D
        if attempt:
            theta += 0.3 * math.pi / D * math.sin(1.7 * attempt * (j + 1))
        t = Fraction(math.tan(theta / 2)).limit_denominator(10**6)
        pts.append(((1 - t * t) / (1 + t * t), 2 * t / (1 + t * t)))
    return pts


def _ccw(u: tuple, w: tuple) -> int:
    def half(p):
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    hu, hw = half(u), half(w)
    if hu != hw:
        return -1 if hu < hw else 1
    cr = u[0] * w[1] - u[1] * w[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def _crossings(pts: Sequence[tuple], chords: Sequence[tuple]) -> dict:
    """Per chord, its crossings with the others as (parameter, point)."""
    on_chord: dict = {c: [] for c in chords}
    for x in range(len(chords)):
        for y in range(x + 1, len(chords)):
            (i, j), (a, b) = chords[x], chords[y]
            if (i < a < j) == (i < b < j):
                continue
            p, q, r, s = pts[i], pts[j], pts[a], pts[b]
            d1 = (q[0] - p[0], q[1] - p[1])
            d2 = (s[0] - r[0], s[1] - r[1])
            den = d1[0] * d2[1] - d1[1] * d2[0]
            lam = ((r[0] - p[0]) * d2[1] - (r[1] - p[1]) * d2[0]) / den
            mu = ((r[0] - p[0]) * d1[1] - (r[1] - p[1]) * d1[0]) / den
            pt = (p[0] + lam * d1[0], p[1] + lam * d1[1])
            on_chord[chords[x]].append((lam, pt))
            on_chord[chords[y]].append((mu, pt))
    return on_chord


def _chord_arrangement(labels: Sequence[str], chords: Sequence[tuple], tag: str) -> list[tuple]:
    """Vertices of a straight chord drawing in a disc: (label sequence, rim
    position or None per entry)."""
    for attempt in range(50):
        pts = _circle_points(len(labels), attempt)
        on_chord = _crossings(pts, chords)
        through: dict = {}
        for c, marks in on_chord.items():
            for _, pt in marks:
                through.setdefault(pt, set()).add(c)
        if all(len(cs) <= 2 for cs in through.values()):
            break
    else:
        raise ValueError("could not draw the chords without triple points")
    incid: dict = {}
    for ci, c in enumerate(chords):
        i, j = c
        marks = sorted(set(on_chord[c]))
        if not marks:
            p, q = pts[i], pts[j]
            marks = [(Fraction(1, 2), ("mid", c))]
            mid = ((p[0] + q[0]) / 2, (p[1] + q[1]) / 2)
            geo = {("mid", c): mid}
        else:
            geo = {pt: pt for _, pt in marks}
        nodes = [pt for _, pt in marks]
        where = [geo[n] for n in nodes]
        for s in range(len(nodes)):
            lab_prev = labels[i] if s == 0 else f"{tag}.{ci}.{s}"
            lab_next = labels[j] if s == len(nodes) - 1 else f"{tag}.{ci}.{s + 1}"
            towards_i = pts[i] if s == 0 else where[s - 1]
            towards_j = pts[j] if s == len(nodes) - 1 else where[s + 1]
            here = where[s]
            pos_prev = i if s == 0 else None
            pos_next = j if s == len(nodes) - 1 else None
            incid.setdefault(nodes[s], []).append(((towards_i[0] - here[0], towards_i[1] - here[1]), lab_prev, pos_prev))
            incid.setdefault(nodes[s], []).append(((towards_j[0] - here[0], towards_j[1] - here[1]), lab_next, pos_next))
    out = []
    for node in sorted(incid, key=repr):
        dirs = sorted(incid[node], key=cmp_to_key(lambda a, b: _ccw(a[0], b[0])))
        out.append((tuple(lab for _, lab, _ in dirs), [p for _, _, p in dirs]))
    return out


@dataclass(frozen=True)
class SplitSurface:
    """A redrawn map N together with the correspondence of outer ends."""

    map: Map
    to_n: dict  # end of M -> end of N at the same rim point
    to_m: dict  # outer end of N -> end of M
    corner_to_m: dict  # corner of an outer end of N -> corner of M on the same side

    def project(self, base: OmegaPairing, pairing: OmegaPairing) -> OmegaPairing:
        """Ω-mates on M induced by a pairing on N (follow chords through the disc)."""
        mates = [0] * len(base.mates)
        for e, n_end in self.to_n.items():
            x = pairing.mates[n_end]
            while x not in self.to_m:
                x = pairing.mates[x ^ 1]
            mates[e] = self.to_m[x]
        return OmegaPairing(base.frame, tuple(mates))


def split_surface(omega: OmegaPairing, tag: str = "~", expand: bool = False) -> SplitSurface:
    """The virtually split map: every vertex is redrawn as straight chords
    joining mated ends, with a vertex at each crossing.  Its smooth paths are
    the Ω-trails.  Vertices whose mates are all opposite are kept as they
    are, unless ``expand`` asks for valency > 4 ones to be drawn with only
    simple crossings too."""
    frame = omega.frame
    m = frame.m
    bp = balancing_partition(m)
    A = bp.class_a
    seqs = []
    origin = []  # per sequence: list of M-ends (None for inner edges)
    for vi, poly in enumerate(frame.vgons):
        start = poly[0] if poly[0] in A else poly[1]
        corners = []
        x = start
        while True:
            corners.append(x)
            x = m.a[V(x)]
            if x == start:
                break
        ends = [c >> 1 for c in corners]
        labels = [m.square_of(c) for c in corners]
        D = len(ends)
        where = {e: i for i, e in enumerate(ends)}
        chords = sorted({tuple(sorted((i, where[omega.mates[e]]))) for i, e in enumerate(ends)})
        if all(b - a == D // 2 for a, b in chords) and (D <= 4 or not expand):
            seqs.append(tuple(labels))
            origin.append(list(ends))
        else:
            back = {lab_pos: e for lab_pos, e in zip(range(D), ends)}
            for seq, pos in _chord_arrangement(labels, chords, f"{tag}{vi}"):
                seqs.append(seq)
                origin.append([None if p is None else back[p] for p in pos])
    clash = {lab for seq in seqs for lab in seq if lab.startswith(tag)} & set(m.labels)
    if clash:
        raise ValueError(f"edge labels collide with the split tag {tag!r}")
    imb = bp.induced_imbalance
    n = from_descriptor(descriptor(seqs, imb))
    idx = {lab: k for k, lab in enumerate(n.labels)}
    seen: set = set()
    to_n, to_m, corners = {}, {}, {}
    for seq, orig in zip(seqs, origin):
        for lab, e in zip(seq, orig):
            second = lab in seen
            n_end = 2 * idx[lab] + second
            seen.add(lab)
            if e is not None:
                to_n[e] = n_end
                to_m[n_end] = e
                # class-A corners correspond (both readings start there)
                n_a = 2 * n_end + (1 if second and lab in imb else 0)
                m_a = 2 * e if 2 * e in A else 2 * e + 1
                corners[n_a] = m_a
                corners[n_a ^ 1] = m_a ^ 1
    return SplitSurface(n, to_n, to_m, corners)


def transfer_walk(ss: SplitSurface, base: OmegaPairing, walk: Walk) -> Walk:
    """Carry a closed walk of C_N down to C_M.

    Steps along outer edges map corner for corner; each stretch inside a
    redrawn vertex disc becomes a run around that v-gon of M between the
    same rim corners.  Its Ω-weight under ``base`` is at most the number of
    chords the stretch crossed in N."""
    steps = list(walk.steps)
    outer = [i for i, (k, x, _) in enumerate(steps) if k == "f" and x in ss.corner_to_m]
    if not outer:
        raise ValueError("walk never leaves a redrawn vertex")
    i0 = outer[0]
    steps = steps[i0 + 1:] + steps[: i0 + 1]
    frame = base.frame
    out: list = []
    entry = ss.corner_to_m[steps[-1][2]]
    for kind, x, y in steps:
        if kind == "f" and x in ss.corner_to_m:
            leave = ss.corner_to_m[x]
            out.extend(_vgon_path(frame, entry, leave))
            arrive = ss.corner_to_m[y]
            if arrive != F(leave):
                raise AssertionError("corner correspondence does not respect f-edges")
            out.append(("f", leave, arrive))
            entry = arrive
    return Walk(tuple(out))


def split_surface_map(omega: OmegaPairing) -> Map:
    return split_surface(omega).map


def mu_measure(omega: OmegaPairing) -> tuple[int, int]:
    """(λ, f) of the split-surface map: λ = Σ max(0, valency − 4)."""
    n = split_surface_map(omega)
    lam = sum(max(0, len(p) // 2 - 4) for p in vgon_corners(n))
    return lam, len(fgon_corners(n))


__all__ = [
    "Frame",
    "OmegaPairing",
    "Path",
    "PreReducer",
    "Reducer",
    "ReducerSearchFailed",
    "SplitRecord",
    "View",
    "as_view",
    "Visit",
    "Walk",
    "end_pairs",
    "enumerate_pre_reducers",
    "find_pre_reducer",
    "interleave",
    "is_pre_reducer",
    "is_straight",
    "is_transreducer",
    "min_odd_walk",
    "mu_measure",
    "omega_weight",
    "parallel_walk",
    "pre_reducer_problems",
    "reducer_from_straight",
    "segments",
    "shorten",
    "split",
    "SplitSurface",
    "split_surface",
    "split_surface_map",
    "straighten",
    "to_transreducer",
    "trans_holds",
    "transfer_walk",
    "walk_squares",
]
