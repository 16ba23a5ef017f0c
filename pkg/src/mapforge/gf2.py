"""GF(2) subspaces over an ordered ground set, stored as int bitsets.

Bit ``i`` of a vector stands for ``ground[i]``.  Every space keeps its basis
in fully reduced row-echelon form (pivot = lowest set bit, pivots strictly
increasing), so two spaces over the same ground are equal exactly when their
row tuples are equal.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence

from .errors import GroundMismatch, NotSubspace
from .graph import Multigraph


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def reduce_rows(vectors: Iterable[int]) -> tuple[int, ...]:
    """Return the canonical reduced echelon basis spanning ``vectors``."""
    pivots: dict[int, int] = {}
    for vec in vectors:
        for p, row in pivots.items():
            if (vec >> p) & 1:
                vec ^= row
        if not vec:
            continue
        p = _low_bit(vec)
        for q in list(pivots):
            if (pivots[q] >> p) & 1:
                pivots[q] ^= vec
        pivots[p] = vec
    return tuple(pivots[p] for p in sorted(pivots))


def rank(vectors: Iterable[int]) -> int:
    return len(reduce_rows(vectors))


def weight(x: int) -> int:
    return bin(x).count("1")


@dataclass(frozen=True)
class Gf2Space:
    """A subspace of GF(2)^ground with a canonical basis."""

    ground: tuple
    rows: tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    @property
    def size(self) -> int:
        return len(self.ground)

    def _index(self) -> dict:
        return {g: i for i, g in enumerate(self.ground)}

    def vector(self, labels: Iterable[Hashable]) -> int:
        """Characteristic vector of a label set (labels may repeat; mod 2)."""
        idx = self._index()
        out = 0
        for lab in labels:
            out ^= 1 << idx[lab]
        return out

    def labels(self, vec: int) -> frozenset:
        return frozenset(self.ground[i] for i in range(len(self.ground)) if (vec >> i) & 1)

    def reduce(self, vec: int) -> int:
        for row in self.rows:
            p = _low_bit(row)
            if (vec >> p) & 1:
                vec ^= row
        return vec

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0

    def __contains__(self, vec: int) -> bool:
        return self.contains(vec)

    def is_subspace_of(self, other: "Gf2Space") -> bool:
        _check_ground(self, other)
        return all(other.contains(r) for r in self.rows)

    def elements(self):
        """Iterate over all 2**dim vectors (Gray-code order)."""
        acc = 0
        yield acc
        for k in range(1, 1 << self.dim):
            acc ^= self.rows[_low_bit(k)]
            yield acc

    def support(self) -> int:
        out = 0
        for r in self.rows:
            out |= r
        return out


def _check_ground(*spaces: Gf2Space) -> None:
    g = spaces[0].ground
    for s in spaces[1:]:
        if s.ground != g:
            raise GroundMismatch("spaces live over different ground sets")


def span(ground: Sequence, vectors: Iterable[int] = ()) -> Gf2Space:
    ground = tuple(ground)
    full = (1 << len(ground)) - 1
    vecs = list(vectors)
    for v in vecs:
        if v & ~full:
            raise GroundMismatch("vector has bits outside the ground set")
    return Gf2Space(ground, reduce_rows(vecs))


def span_sets(ground: Sequence, sets: Iterable[Iterable[Hashable]]) -> Gf2Space:
    """Span of label sets (each set summed mod 2 into a vector)."""
    ground = tuple(ground)
    idx = {g: i for i, g in enumerate(ground)}
    vecs = []
    for s in sets:
        v = 0
        for lab in s:
            if lab not in idx:
                raise GroundMismatch(f"label {lab!r} not in ground set")
            v ^= 1 << idx[lab]
        vecs.append(v)
    return Gf2Space(ground, reduce_rows(vecs))


def member(space: Gf2Space, vec: int) -> bool:
    return space.contains(vec)


def dim(space: Gf2Space) -> int:
    return space.dim


def sum_space(a: Gf2Space, b: Gf2Space) -> Gf2Space:
    _check_ground(a, b)
    return Gf2Space(a.ground, reduce_rows(a.rows + b.rows))


def perp(a: Gf2Space) -> Gf2Space:
    """Orthogonal complement under the standard dot product."""
    n = len(a.ground)
    pivots = {_low_bit(r): r for r in a.rows}
    out = []
    # Each free column j gives the kernel vector e_j + sum of pivot columns
    # whose row has bit j set.
    for j in range(n):
        if j in pivots:
            continue
        vec = 1 << j
        for p, row in pivots.items():
            if (row >> j) & 1:
                vec |= 1 << p
        out.append(vec)
    return Gf2Space(a.ground, reduce_rows(out))


def intersect(a: Gf2Space, b: Gf2Space) -> Gf2Space:
    """A ∩ B computed as (A⊥ + B⊥)⊥."""
    _check_ground(a, b)
    return perp(sum_space(perp(a), perp(b)))


def quotient_dim(a: Gf2Space, b: Gf2Space) -> int:
    """dim(A/B); raises NotSubspace unless B ⊆ A."""
    if not b.is_subspace_of(a):
        raise NotSubspace("quotient needs B contained in A")
    return a.dim - b.dim


def zero(ground: Sequence) -> Gf2Space:
    return Gf2Space(tuple(ground), ())


def full(ground: Sequence) -> Gf2Space:
    ground = tuple(ground)
    return Gf2Space(ground, tuple(1 << i for i in range(len(ground))))


def image(ground: Sequence, columns: Sequence[int]) -> Gf2Space:
    """Image of the linear map sending basis vector i to ``columns[i]``."""
    return span(ground, columns)


def kernel(domain: Sequence, columns: Sequence[int]) -> Gf2Space:
    """Kernel of the linear map sending basis vector i to ``columns[i]``."""
    # Track combinations: row = (image << n) | combination bits.
    n = len(columns)
    pivots: dict[int, int] = {}
    ker = []
    for i, col in enumerate(columns):
        vec = (col << n) | (1 << i)
        for p, row in pivots.items():
            if (vec >> p) & 1:
                vec ^= row
        high = vec >> n
        if high == 0:
            ker.append(vec & ((1 << n) - 1))
            continue
        p = _low_bit(high) + n
        for q in list(pivots):
            if (pivots[q] >> p) & 1:
                pivots[q] ^= vec
        pivots[p] = vec
    return Gf2Space(tuple(domain), reduce_rows(ker))


def apply(columns: Sequence[int], vec: int) -> int:
    out = 0
    i = 0
    while vec:
        if vec & 1:
            out ^= columns[i]
        vec >>= 1
        i += 1
    return out


def compose(outer: Sequence[int], inner: Sequence[int]) -> list[int]:
    """Columns of outer∘inner."""
    return [apply(outer, c) for c in inner]


def coset_min_weight(offset: int, space: Gf2Space, limit: int = 24) -> tuple[int, int]:
    """Minimum Hamming weight in ``offset + space`` by full enumeration.

    Returns ``(weight, vector)``; ties break toward the smaller integer.
    """
    if space.dim > limit:
        from .errors import TooLarge

        raise TooLarge(f"coset enumeration over dimension {space.dim} exceeds {limit}")
    best = None
    for e in space.elements():
        v = offset ^ e
        key = (weight(v), v)
        if best is None or key < best:
            best = key
    return best


# ---------------------------------------------------------------- graphs


def coboundary(g: Multigraph, vertices: Iterable[Hashable]) -> frozenset:
    """δ(S): edges with exactly one end in S (loops never)."""
    s = set(vertices)
    return frozenset(e for e, (u, w) in g.edges.items() if (u in s) != (w in s))


def coboundary_space(g: Multigraph) -> Gf2Space:
    ground = g.edge_order
    return span_sets(ground, (coboundary(g, [x]) for x in g.vertices))


def cycle_space(g: Multigraph) -> Gf2Space:
    return perp(coboundary_space(g))


def bicycle_space(g: Multigraph) -> Gf2Space:
    return intersect(cycle_space(g), coboundary_space(g))


__all__ = [
    "Gf2Space",
    "apply",
    "bicycle_space",
    "coboundary",
    "coboundary_space",
    "compose",
    "coset_min_weight",
    "cycle_space",
    "dim",
    "full",
    "image",
    "intersect",
    "kernel",
    "member",
    "perp",
    "quotient_dim",
    "rank",
    "reduce_rows",
    "span",
    "span_sets",
    "sum_space",
    "weight",
    "zero",
]
