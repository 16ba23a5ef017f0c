"""Named example maps and seeded random generators."""

from __future__ import annotations

import math
import random
from typing import Optional, Sequence

from .maps import Descriptor, Map, descriptor, euler_characteristic, from_descriptor, is_connected, is_orientable


def planar_descriptor(coords: dict, edges: Sequence[tuple]) -> Descriptor:
    """Rotation system of a straight-line plane drawing (counterclockwise).

    ``edges`` are ``(label, u, w)``; the imbalance is empty.
    """
    around: dict = {x: [] for x in coords}
    for lab, u, w in edges:
        (x1, y1), (x2, y2) = coords[u], coords[w]
        around[u].append((math.atan2(y2 - y1, x2 - x1), lab))
        around[w].append((math.atan2(y1 - y2, x1 - x2), lab))
    seqs = []
    names = []
    for x in coords:
        seqs.append(tuple(lab for _, lab in sorted(around[x])))
        names.append(str(x))
    return Descriptor(tuple(seqs), frozenset(), tuple(names))


def _edge(u, w) -> tuple:
    return (f"{u}-{w}", u, w)


def cube_descriptor() -> Descriptor:
    coords = {
        1: (-2, -2), 2: (2, -2), 3: (2, 2), 4: (-2, 2),
        5: (-1, -1), 6: (1, -1), 7: (1, 1), 8: (-1, 1),
    }
    edges = [_edge(1, 2), _edge(2, 3), _edge(3, 4), _edge(1, 4),
             _edge(5, 6), _edge(6, 7), _edge(7, 8), _edge(5, 8),
             _edge(1, 5), _edge(2, 6), _edge(3, 7), _edge(4, 8)]
    return planar_descriptor(coords, edges)


def cube() -> Map:
    """The cube graph embedded in the sphere (8 vertices, 12 edges, 6 faces)."""
    return from_descriptor(cube_descriptor())


def tetrahedron_descriptor() -> Descriptor:
    coords = {1: (0, 3), 2: (-3, -2), 3: (3, -2), 4: (0, 0)}
    edges = [_edge(1, 2), _edge(2, 3), _edge(1, 3), _edge(1, 4), _edge(2, 4), _edge(3, 4)]
    return planar_descriptor(coords, edges)


def tetrahedron() -> Map:
    return from_descriptor(tetrahedron_descriptor())


def k4_doubled_edge_descriptor() -> Descriptor:
    """Planar K4 with the edge 1-2 doubled (two parallel chords)."""
    coords = {1: (0, 3), 2: (-3, -2), 3: (3, -2), 4: (0, 0)}
    d = tetrahedron_descriptor()
    seqs = []
    for name, seq in zip(d.names, d.v_ordering):
        new = []
        for lab in seq:
            new.append(lab)
            if lab == "1-2":
                new.append("1-2b")
        # vertex 2 sees the two parallel edges in the opposite order
        if name == "2":
            i = new.index("1-2")
            new[i], new[i + 1] = new[i + 1], new[i]
        seqs.append(tuple(new))
    del coords
    return Descriptor(tuple(seqs), frozenset(), d.names)


def loop(imbalance: bool = False, label: str = "x") -> Map:
    """One vertex with one loop: sphere (balanced) or projective plane."""
    return from_descriptor(descriptor([(label, label)], [label] if imbalance else []))


def projective_loop() -> Map:
    return loop(True)


def single_edge() -> Map:
    """One edge joining two distinct vertices, on the sphere."""
    return from_descriptor(descriptor([("x",), ("x",)]))


def random_descriptor(n_edges: int, seed: int, rng: Optional[random.Random] = None,
                      n_vertices: Optional[int] = None, imbalance_prob: float = 0.5) -> Descriptor:
    """Shuffle the 2n edge ends into random cyclic blocks; random imbalance.

    A test utility, not a uniform sampler of maps.
    """
    rng = rng or random.Random(seed)
    labels = [f"e{i}" for i in range(n_edges)]
    slots = labels + labels
    rng.shuffle(slots)
    if n_vertices is None:
        n_vertices = rng.randint(1, max(1, n_edges))
    n_vertices = max(1, min(n_vertices, 2 * n_edges))
    cuts = sorted(rng.sample(range(1, 2 * n_edges), n_vertices - 1)) if n_vertices > 1 else []
    blocks = []
    prev = 0
    for c in cuts + [2 * n_edges]:
        blocks.append(tuple(slots[prev:c]))
        prev = c
    imb = [lab for lab in labels if rng.random() < imbalance_prob]
    return descriptor(blocks, imb)


def random_map(n_edges: int, seed: int, connected: bool = True, **kw) -> Map:
    """Seeded random map with ``n_edges`` squares (retries until connected)."""
    rng = random.Random(seed)
    while True:
        m = from_descriptor(random_descriptor(n_edges, seed, rng=rng, **kw))
        if not connected or is_connected(m):
            return m


def random_maps(count: int, seed: int, max_edges: int = 14, min_edges: int = 1, connected: bool = True):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(min_edges, max_edges)
        yield random_map(n, rng.randrange(1 << 30), connected=connected)


def random_eulerian_descriptor(n_edges: int, rng: random.Random, imbalance_prob: float = 0.5) -> Descriptor:
    """Like random_descriptor but every block (vertex) has even length."""
    labels = [f"e{i}" for i in range(n_edges)]
    slots = labels + labels
    rng.shuffle(slots)
    n_vertices = rng.randint(1, n_edges)
    cuts = sorted(rng.sample(range(1, n_edges), n_vertices - 1)) if n_vertices > 1 else []
    blocks = []
    prev = 0
    for c in cuts + [n_edges]:
        blocks.append(tuple(slots[2 * prev:2 * c]))
        prev = c
    imb = [lab for lab in labels if rng.random() < imbalance_prob]
    return descriptor(blocks, imb)


def random_projective_eulerian(n_edges: int, seed: int, max_tries: int = 100000) -> Map:
    """Seeded connected eulerian map on the projective plane."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        m = from_descriptor(random_eulerian_descriptor(n_edges, rng))
        if is_connected(m) and euler_characteristic(m) == 1 and not is_orientable(m):
            return m
    raise RuntimeError(f"no projective eulerian map with {n_edges} edges found")


def random_projective_eulerian_maps(count: int, seed: int, max_edges: int = 14, min_edges: int = 2):
    rng = random.Random(seed)
    for _ in range(count):
        n = rng.randint(min_edges, max_edges)
        yield random_projective_eulerian(n, rng.randrange(1 << 30))


def projective_lines(k: int, simple: bool = True) -> Map:
    """k projective lines: k loops through one vertex, each crossing every other.

    With ``simple`` the common point is pulled apart so that the lines meet
    two at a time (the generic arrangement of k lines)."""
    labels = [f"l{i}" for i in range(k)]
    m = from_descriptor(descriptor([labels + labels], labels))
    if not simple or k < 3:
        return m
    from .omega import Frame, OmegaPairing, split_surface

    return split_surface(OmegaPairing.smooth(Frame(m)), tag="p", expand=True).map
