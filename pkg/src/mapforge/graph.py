"""A tiny labeled multigraph (loops and parallel edges allowed)."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Hashable, Iterable


@dataclass(frozen=True)
class Multigraph:
    vertices: tuple
    edges: dict  # label -> (end, end); insertion order is the edge order
    edge_order: tuple = field(default=())

    @classmethod
    def build(cls, vertices: Iterable[Hashable], edges: Iterable[tuple]) -> "Multigraph":
        verts = tuple(vertices)
        vset = set(verts)
        emap = {}
        for lab, u, w in edges:
            if u not in vset or w not in vset:
                raise ValueError(f"edge {lab!r} has an endpoint outside the vertex set")
            if lab in emap:
                raise ValueError(f"duplicate edge label {lab!r}")
            emap[lab] = (u, w)
        return cls(verts, emap, tuple(emap))

    def degree(self, x) -> int:
        return sum((u == x) + (w == x) for u, w in self.edges.values())

    def degrees(self) -> dict:
        d = {x: 0 for x in self.vertices}
        for u, w in self.edges.values():
            d[u] += 1
            d[w] += 1
        return d

    def is_eulerian(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees().values())

    def incidence(self) -> dict:
        inc = defaultdict(list)
        for lab, (u, w) in self.edges.items():
            inc[u].append(lab)
            if w != u:
                inc[w].append(lab)
        return inc

    def components(self) -> list[frozenset]:
        parent = {x: x for x in self.vertices}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, w in self.edges.values():
            ru, rw = find(u), find(w)
            if ru != rw:
                parent[ru] = rw
        groups = defaultdict(set)
        for x in self.vertices:
            groups[find(x)].add(x)
        return [frozenset(g) for g in groups.values()]

    def n_components(self) -> int:
        return len(self.components())

    def is_connected(self) -> bool:
        return len(self.vertices) > 0 and self.n_components() == 1

    def loops(self) -> list:
        return [lab for lab, (u, w) in self.edges.items() if u == w]

    def is_bipartite(self) -> bool:
        color = {}
        inc = self.incidence()
        for s in self.vertices:
            if s in color:
                continue
            color[s] = 0
            stack = [s]
            while stack:
                x = stack.pop()
                for lab in inc[x]:
                    u, w = self.edges[lab]
                    if u == w:
                        return False
                    y = w if u == x else u
                    if y not in color:
                        color[y] = 1 - color[x]
                        stack.append(y)
                    elif color[y] == color[x]:
                        return False
        return True

    def independence_number(self) -> int:
        """Brute-force maximum independent set size (small graphs only)."""
        verts = list(self.vertices)
        idx = {x: i for i, x in enumerate(verts)}
        nbr = [0] * len(verts)
        for u, w in self.edges.values():
            nbr[idx[u]] |= 1 << idx[w]
            nbr[idx[w]] |= 1 << idx[u]
        best = 0

        def grow(cand: int, size: int):
            nonlocal best
            if size + bin(cand).count("1") <= best:
                return
            if not cand:
                best = max(best, size)
                return
            i = (cand & -cand).bit_length() - 1
            if not (nbr[i] >> i) & 1:
                grow(cand & ~nbr[i] & ~(1 << i), size + 1)
            grow(cand & ~(1 << i), size)

        grow((1 << len(verts)) - 1, 0)
        return best

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for x in self.vertices:
            lines.append(f'  "{x}";')
        for lab, (u, w) in self.edges.items():
            lines.append(f'  "{u}" -- "{w}" [label="{lab}"];')
        lines.append("}")
        return "\n".join(lines)
