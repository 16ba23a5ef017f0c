"""Maps as 3-edge-colored cubic graphs.

A map with ``n`` squares has corners ``0 .. 4n-1``; square ``k`` owns corners
``4k .. 4k+3`` with fixed local roles::

    4k --v-- 4k+1 --f-- 4k+2 --v-- 4k+3 --f-- 4k

so ``v(x) = x ^ 1``, ``f(x) = x ^ 3`` and the square diagonal ``z(x) = x ^ 2``.
Only the third matching ``a`` is free data.  Square ``k`` carries the edge
label ``labels[k]``; the ``v``-edge ``{4k, 4k+1}`` is the "tail" end of the
edge in the induced graph and ``{4k+2, 4k+3}`` the "head" end.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from . import gf2
from .errors import (
    AxiomViolation,
    BadCornerCount,
    FixedPoint,
    MalformedDescriptor,
    MatchingOverlap,
    NotConnected,
    NotSquares,
    ValidationError,
)
from .graph import Multigraph


def label_key(label: str):
    """Natural sort key: digit runs compare numerically."""
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", str(label)))


def sorted_labels(labels: Iterable[str]) -> list[str]:
    return sorted(labels, key=label_key)


def V(x: int) -> int:
    return x ^ 1


def F(x: int) -> int:
    return x ^ 3


def Z(x: int) -> int:
    return x ^ 2


@dataclass(frozen=True)
class Map:
    """Immutable map: square labels plus the ``a`` involution on corners."""

    labels: tuple
    a: tuple
    names: Optional[tuple] = field(default=None, compare=False, repr=False)

    # -- basic accessors --------------------------------------------------
    @property
    def n_squares(self) -> int:
        return len(self.labels)

    @property
    def n_corners(self) -> int:
        return len(self.a)

    @property
    def corners(self) -> range:
        return range(len(self.a))

    def v(self, x: int) -> int:
        return x ^ 1

    def f(self, x: int) -> int:
        return x ^ 3

    def z(self, x: int) -> int:
        return x ^ 2

    def square_of(self, x: int) -> str:
        return self.labels[x >> 2]

    def index(self, label) -> int:
        return self._label_index()[label]

    def _label_index(self) -> dict:
        cache = self.__dict__.get("_lab_idx")
        if cache is None:
            cache = {lab: k for k, lab in enumerate(self.labels)}
            object.__setattr__(self, "_lab_idx", cache)
        return cache

    def matching(self, name: str):
        return {"v": V, "f": F, "z": Z, "a": self.a.__getitem__}[name]

    def relabel(self, mapping: Mapping) -> "Map":
        """Rename squares; labels missing from ``mapping`` are kept."""
        new = tuple(mapping.get(lab, lab) for lab in self.labels)
        if len(set(new)) != len(new):
            raise ValidationError("relabeling must stay injective")
        return Map(new, self.a)

    def __repr__(self) -> str:
        return f"Map(squares={self.n_squares}, labels={list(self.labels)[:6]}{'...' if self.n_squares > 6 else ''})"


# ------------------------------------------------------------------ polygons


def trace_polygons(m: Map, first) -> list[tuple[int, ...]]:
    """Alternating polygons of ``first`` and ``a``; each starts at its least
    corner and leaves it along ``first``.  Sorted by least corner."""
    seen = [False] * m.n_corners
    out = []
    a = m.a
    for x in m.corners:
        if seen[x]:
            continue
        poly = []
        y = x
        while True:
            poly.append(y)
            seen[y] = True
            y2 = first(y)
            poly.append(y2)
            seen[y2] = True
            y = a[y2]
            if y == x:
                break
        out.append(tuple(poly))
    return out


def vgon_corners(m: Map) -> list[tuple[int, ...]]:
    return trace_polygons(m, V)


def fgon_corners(m: Map) -> list[tuple[int, ...]]:
    return trace_polygons(m, F)


def zgon_corners(m: Map) -> list[tuple[int, ...]]:
    return trace_polygons(m, Z)


def polygon_owner(polys: Sequence[Sequence[int]], n_corners: int) -> list[int]:
    """corner -> id (least corner) of the polygon containing it."""
    owner = [0] * n_corners
    for p in polys:
        pid = min(p)
        for x in p:
            owner[x] = pid
    return owner


def polygon_graph(m: Map, polys: Sequence[Sequence[int]], prefix: str, matching=V) -> Multigraph:
    """Graph whose vertices are the given (matching, a)-polygons and whose
    edges are the squares.  The ends of square k are the polygons through its
    two ``matching``-edges: the one at corner 4k and the other one."""
    owner = polygon_owner(polys, m.n_corners)
    other = {V: 2, F: 1, Z: 1}[matching]
    verts = [f"{prefix}{min(p)}" for p in polys]
    edges = [(lab, f"{prefix}{owner[4 * k]}", f"{prefix}{owner[4 * k + other]}") for k, lab in enumerate(m.labels)]
    return Multigraph.build(verts, edges)


def induced_graph(m: Map) -> Multigraph:
    """G_M: vertices are v-gons (named ``v<least corner>``), edges are squares."""
    return polygon_graph(m, vgon_corners(m), "v", V)


# ----------------------------------------------------------------- validation


def validate_map(
    corners: Sequence[Hashable],
    v: Mapping,
    f: Mapping,
    a: Mapping,
    square_of: Optional[Mapping] = None,
    strict: bool = False,
) -> Map:
    """Build a Map from arbitrary corner names and three involutions.

    ``square_of`` optionally names the square of each corner; otherwise
    squares are labelled ``e0, e1, ...`` in order of first corner.  With
    ``strict=True`` the cubic graph must be simple, i.e. ``a`` may not
    coincide with ``v`` or ``f`` at any corner.
    """
    corners = list(corners)
    if len(set(corners)) != len(corners):
        raise ValidationError("duplicate corner names")
    if len(corners) % 4:
        raise BadCornerCount(f"{len(corners)} corners is not a multiple of 4")
    cset = set(corners)
    for name, inv in (("v", v), ("f", f), ("a", a)):
        for x in corners:
            if x not in inv or inv[x] not in cset:
                raise ValidationError(f"{name} is not defined on corner {x!r}")
            if inv[x] == x:
                raise FixedPoint(f"{name} fixes corner {x!r}")
            if inv[inv[x]] != x:
                raise ValidationError(f"{name} is not an involution at {x!r}")
    for x in corners:
        if v[x] == f[x]:
            raise MatchingOverlap(f"v and f coincide at {x!r}")
        if strict and a[x] in (v[x], f[x]):
            raise MatchingOverlap(f"a coincides with {'v' if a[x] == v[x] else 'f'} at {x!r}")
        z1 = v[f[x]]
        if z1 == x or f[v[x]] != z1 or v[f[z1]] != x:
            raise NotSquares(f"v and f do not close a square at {x!r}")
    pos = {x: i for i, x in enumerate(corners)}
    internal: dict = {}
    labels = []
    for x in corners:
        if x in internal:
            continue
        k = len(labels)
        c = [x, v[x], f[v[x]], v[f[v[x]]]]
        for i, y in enumerate(c):
            internal[y] = 4 * k + i
        if square_of is not None:
            labs = {square_of[y] for y in c}
            if len(labs) != 1:
                raise ValidationError(f"square of corner {x!r} has inconsistent labels {sorted(map(str, labs))}")
            labels.append(labs.pop())
        else:
            labels.append(f"e{k}")
    if len(set(labels)) != len(labels):
        raise ValidationError("two squares share a label")
    amap = [0] * len(corners)
    for x in corners:
        amap[internal[x]] = internal[a[x]]
    names = [None] * len(corners)
    for x in corners:
        names[internal[x]] = x
    del pos
    return Map(tuple(labels), tuple(amap), tuple(names))


def check_map(m: Map) -> None:
    """Re-verify the structural invariants of an already-built Map."""
    if len(m.a) != 4 * len(m.labels):
        raise BadCornerCount("corner count must be four times the square count")
    if len(set(m.labels)) != len(m.labels):
        raise ValidationError("duplicate square labels")
    for x, y in enumerate(m.a):
        if not 0 <= y < len(m.a):
            raise ValidationError(f"a sends {x} outside the corner set")
        if y == x:
            raise FixedPoint(f"a fixes corner {x}")
        if m.a[y] != x:
            raise ValidationError(f"a is not an involution at {x}")


def make_map(labels: Sequence, a: Sequence[int]) -> Map:
    m = Map(tuple(labels), tuple(a))
    check_map(m)
    return m


def disjoint_union(*maps: Map) -> Map:
    labels: list = []
    a: list = []
    for m in maps:
        off = len(a)
        labels.extend(m.labels)
        a.extend(y + off for y in m.a)
    return make_map(labels, a)


EMPTY = Map((), ())


# ---------------------------------------------------------------- components


def components(m: Map) -> list[frozenset]:
    """Corner sets of the connected components of C_M (squares are kept whole)."""
    parent = list(range(m.n_squares))

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    for x, y in enumerate(m.a):
        rx, ry = find(x >> 2), find(y >> 2)
        if rx != ry:
            parent[rx] = ry
    groups = defaultdict(set)
    for k in range(m.n_squares):
        groups[find(k)].update(range(4 * k, 4 * k + 4))
    return sorted((frozenset(g) for g in groups.values()), key=min)


def is_connected(m: Map) -> bool:
    return len(components(m)) == 1


def restrict(m: Map, corner_set: Iterable[int]) -> Map:
    """Sub-map on a union of components, squares renumbered in order."""
    ks = sorted({x >> 2 for x in corner_set})
    new_index = {k: i for i, k in enumerate(ks)}
    a = []
    for k in ks:
        for i in range(4):
            y = m.a[4 * k + i]
            a.append(4 * new_index[y >> 2] + (y & 3))
    return Map(tuple(m.labels[k] for k in ks), tuple(a))


# ------------------------------------------------------------------ surfaces


@dataclass(frozen=True)
class SurfaceClass:
    chi: int
    xi: int
    orientable: bool
    name: str

    def as_dict(self) -> dict:
        return {"chi": self.chi, "xi": self.xi, "orientable": self.orientable, "surface": self.name}


def surface_name(chi: int, orientable: bool, sphere_word: str = "sphere") -> str:
    if chi == 2:
        return sphere_word
    if chi == 1:
        return "projective-plane"
    if chi == 0:
        return "torus" if orientable else "klein-bottle"
    return f"{'orientable' if orientable else 'nonorientable'}-xi{2 - chi}"


def surface_from_chi(chi: int, orientable: bool, sphere_word: str = "sphere") -> SurfaceClass:
    return SurfaceClass(chi, 2 - chi, orientable, surface_name(chi, orientable, sphere_word))


def euler_characteristic(m: Map) -> int:
    """#v-gons - #squares + #f-gons (summed over components)."""
    return len(vgon_corners(m)) - m.n_squares + len(fgon_corners(m))


def is_orientable(m: Map) -> bool:
    """C_M is bipartite.

    Inside a square both v and f flip the bit ``x & 1``, so a 2-coloring is
    ``(x & 1) ^ flip[square]``; search for per-square flips that make every
    a-edge bichromatic.
    """
    flip = [None] * m.n_squares
    for s in range(m.n_squares):
        if flip[s] is not None:
            continue
        flip[s] = 0
        stack = [s]
        while stack:
            k = stack.pop()
            for i in range(4):
                x = 4 * k + i
                y = m.a[x]
                cx = (x & 1) ^ flip[k]
                k2 = y >> 2
                need = 1 - cx  # color of y must differ
                f2 = need ^ (y & 1)
                if flip[k2] is None:
                    flip[k2] = f2
                    stack.append(k2)
                elif flip[k2] != f2:
                    return False
    return True


def classify_surface(m: Map) -> SurfaceClass:
    if not is_connected(m):
        raise NotConnected("classify_surface needs a connected map")
    return surface_from_chi(euler_characteristic(m), is_orientable(m))


def component_surfaces(m: Map) -> list[SurfaceClass]:
    return [classify_surface(restrict(m, c)) for c in components(m)]


# ---------------------------------------------------------- balancing partition


@dataclass(frozen=True)
class BalancingPartition:
    class_a: frozenset
    class_b: frozenset
    induced_imbalance: frozenset


def balancing_partition(m: Map) -> BalancingPartition:
    """Put the least corner of every v-gon in class A and alternate around it."""
    cls = [0] * m.n_corners
    for poly in vgon_corners(m):
        for i, x in enumerate(poly):
            cls[x] = i & 1
    return _partition_from_classes(m, cls)


def _partition_from_classes(m: Map, cls: Sequence[int]) -> BalancingPartition:
    a_set = frozenset(x for x in m.corners if cls[x] == 0)
    b_set = frozenset(x for x in m.corners if cls[x] == 1)
    imb = frozenset(m.labels[k] for k in range(m.n_squares) if cls[4 * k] != cls[4 * k + 2])
    return BalancingPartition(a_set, b_set, imb)


def check_balancing_partition(m: Map, bp: BalancingPartition) -> bool:
    A = bp.class_a
    if A & bp.class_b or len(A) + len(bp.class_b) != m.n_corners:
        return False
    for x in m.corners:
        if (x in A) == (V(x) in A):
            return False
        if (x in A) != (m.a[V(x)] in A):
            return False
    imb = {m.labels[k] for k in range(m.n_squares) if (4 * k in A) != (4 * k + 2 in A)}
    return imb == set(bp.induced_imbalance)


def imbalance(m: Map) -> frozenset:
    return balancing_partition(m).induced_imbalance


def coboundary_space_of(m: Map) -> gf2.Gf2Space:
    """V: the coboundary space of G_M over the square labels."""
    return gf2.coboundary_space(induced_graph(m))


def is_imbalance(m: Map, s: Iterable) -> bool:
    space = coboundary_space_of(m)
    return space.contains(space.vector(imbalance(m)) ^ space.vector(set(s)))


# ---------------------------------------------------------------- descriptors


@dataclass(frozen=True)
class Descriptor:
    """A v-ordering (cyclic label sequences) together with an imbalance."""

    v_ordering: tuple
    imbalance: frozenset
    names: Optional[tuple] = field(default=None, compare=False)

    def labels(self) -> list[str]:
        return sorted_labels({lab for seq in self.v_ordering for lab in seq})

    def validate(self) -> None:
        count: dict = defaultdict(int)
        for seq in self.v_ordering:
            if len(seq) == 0:
                raise MalformedDescriptor("empty v-gon sequence")
            for lab in seq:
                count[lab] += 1
        bad = sorted_labels(str(lab) for lab, c in count.items() if c != 2)
        if bad:
            raise MalformedDescriptor(f"labels not occurring exactly twice: {' '.join(bad)}")
        extra = set(self.imbalance) - set(count)
        if extra:
            raise MalformedDescriptor(f"imbalance mentions unknown labels: {' '.join(sorted_labels(map(str, extra)))}")
        if self.names is not None and len(self.names) != len(self.v_ordering):
            raise MalformedDescriptor("one name per v-gon required")


def descriptor(v_ordering: Iterable[Iterable[str]], imbalance_set: Iterable[str] = ()) -> Descriptor:
    return Descriptor(tuple(tuple(s) for s in v_ordering), frozenset(imbalance_set))


def from_descriptor(d: Descriptor) -> Map:
    """Reconstruct the map of a descriptor.

    The corners are paired consistently with the v-ordering so that every
    square comes out balanced (first occurrence uses the v-edge ``{4k,4k+1}``
    with ``4k`` in class A, second occurrence the v-edge ``{4k+2,4k+3}`` with
    ``4k+2`` in class A).  Then, for each square in the requested imbalance,
    the incidences at the ends of its second v-edge are interchanged, which
    puts ``4k+3`` in class A instead.
    """
    d.validate()
    labels = d.labels()
    idx = {lab: k for k, lab in enumerate(labels)}
    imb = set(d.imbalance)
    seen: set = set()
    a = [None] * (4 * len(labels))
    for seq in d.v_ordering:
        a_side = []
        for lab in seq:
            k = idx[lab]
            if lab not in seen:
                seen.add(lab)
                a_side.append(4 * k)
            else:
                a_side.append(4 * k + (3 if lab in imb else 2))
        m_len = len(a_side)
        for j in range(m_len):
            b_corner = a_side[j] ^ 1
            nxt = a_side[(j + 1) % m_len]
            a[b_corner] = nxt
            a[nxt] = b_corner
    return make_map(labels, a)


def to_descriptor(m: Map, partition: Optional[BalancingPartition] = None) -> Descriptor:
    bp = partition or balancing_partition(m)
    A = bp.class_a
    seqs = []
    names = []
    for poly in vgon_corners(m):
        start = poly[0] if poly[0] in A else poly[1]
        seq = []
        x = start
        while True:
            seq.append(m.square_of(x))
            x = m.a[V(x)]
            if x == start:
                break
        seqs.append(tuple(seq))
        names.append(f"v{min(poly)}")
    return Descriptor(tuple(seqs), bp.induced_imbalance, tuple(names))


# --------------------------------------------------------------------- a-maps


@dataclass(frozen=True)
class AMap:
    """Permutation triple (R, Θ, Φ) on corners 0..len-1."""

    R: tuple
    Theta: tuple
    Phi: tuple

    @property
    def size(self) -> int:
        return len(self.R)


def check_amap(am: AMap) -> None:
    """Raise AxiomViolation naming the first failing axiom."""
    n = am.size
    R, T, P = am.R, am.Theta, am.Phi
    for perm, name in ((R, "R"), (T, "Theta"), (P, "Phi")):
        if len(perm) != n or sorted(perm) != list(range(n)):
            raise AxiomViolation("am1", f"{name} is not a permutation of the ground set")
    for x in range(n):
        if T[P[x]] != P[T[x]] or T[T[x]] != x or P[P[x]] != x:
            raise AxiomViolation("am1", f"fails at {x}")
    for x in range(n):
        if len({x, T[x], P[x], T[P[x]]}) != 4:
            raise AxiomViolation("am2", f"x, Θx, Φx, ΘΦx not distinct at {x}")
    Rinv = [0] * n
    for x, y in enumerate(R):
        Rinv[y] = x
    for x in range(n):
        if R[T[x]] != T[Rinv[x]]:
            raise AxiomViolation("am3", f"RΘ ≠ ΘR⁻¹ at {x}")
    seen = [False] * n
    for x in range(n):
        if seen[x]:
            continue
        orbit = []
        y = x
        while not seen[y]:
            seen[y] = True
            orbit.append(y)
            y = R[y]
        oset = set(orbit)
        for y in orbit:
            if T[y] in oset:
                raise AxiomViolation("am4", f"Θ{y} lies in the R-orbit of {y}")


def to_amap(m: Map) -> AMap:
    n = m.n_corners
    am = AMap(tuple(m.a[V(x)] for x in range(n)), tuple(V(x) for x in range(n)), tuple(F(x) for x in range(n)))
    check_amap(am)
    return am


def from_amap(am: AMap, labels: Optional[Sequence] = None) -> Map:
    check_amap(am)
    n = am.size
    a = {x: am.R[am.Theta[x]] for x in range(n)}
    v = {x: am.Theta[x] for x in range(n)}
    f = {x: am.Phi[x] for x in range(n)}
    sq = None
    if labels is not None:
        sq = {}
        done = set()
        k = 0
        for x in range(n):
            if x in done:
                continue
            orb = {x, v[x], f[x], v[f[x]]}
            done |= orb
            for y in orb:
                sq[y] = labels[k]
            k += 1
    return validate_map(range(n), v, f, a, sq)


def amap_orientable(am: AMap) -> bool:
    """Orientable iff ⟨R, ΘΦ⟩ has two orbits inside each ⟨R, Θ, Φ⟩ orbit."""
    n = am.size
    TP = [am.Theta[am.Phi[x]] for x in range(n)]

    def orbits(gens):
        seen = [-1] * n
        count = 0
        for s in range(n):
            if seen[s] >= 0:
                continue
            seen[s] = count
            stack = [s]
            while stack:
                x = stack.pop()
                for g in gens:
                    y = g[x]
                    if seen[y] < 0:
                        seen[y] = count
                        stack.append(y)
            count += 1
        return count

    return orbits([am.R, TP]) == 2 * orbits([am.R, am.Theta, am.Phi])
