"""Gauss codes, interlace graphs and crossing functions.

A Gauss code is a cyclic sequence in which every symbol occurs twice.  A
2-colored code splits the symbols into black and white; the white symbols
are the imbalance of the one-v-gon map whose v-ordering is the code.  The
surface of such a coloring is the surface of that map's phial.

Subsets of symbols are int bitsets indexed by ``GaussCode.symbols``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from . import gf2
from .errors import NotConnected, ParseError, SymbolCountNotTwo, TooLarge
from .graph import Multigraph
from .maps import Map, SurfaceClass, descriptor, from_descriptor, sorted_labels, surface_from_chi


@dataclass(frozen=True)
class GaussCode:
    seq: tuple
    symbols: tuple  # natural sort order; bit i of a subset is symbols[i]

    @classmethod
    def of(cls, seq: Iterable) -> "GaussCode":
        seq = tuple(str(s) for s in seq)
        count: dict = {}
        for s in seq:
            count[s] = count.get(s, 0) + 1
        bad = [s for s, c in count.items() if c != 2]
        if bad:
            raise SymbolCountNotTwo(f"symbols not occurring exactly twice: {' '.join(sorted_labels(bad))}")
        return cls(seq, tuple(sorted_labels(count)))

    def __len__(self) -> int:
        return len(self.seq)

    @property
    def n(self) -> int:
        return len(self.symbols)

    def index(self) -> dict:
        return {s: i for i, s in enumerate(self.symbols)}

    def vector(self, syms: Iterable) -> int:
        idx = self.index()
        out = 0
        for s in syms:
            out |= 1 << idx[str(s)]
        return out

    def subset(self, vec: int) -> frozenset:
        return frozenset(s for i, s in enumerate(self.symbols) if (vec >> i) & 1)

    def positions(self) -> dict:
        pos: dict = {}
        for i, s in enumerate(self.seq):
            pos.setdefault(s, []).append(i)
        return pos

    def __str__(self) -> str:
        return " ".join(self.seq)


@dataclass(frozen=True)
class ColoredGaussCode:
    code: GaussCode
    black: frozenset

    def __post_init__(self):
        extra = set(self.black) - set(self.code.symbols)
        if extra:
            raise SymbolCountNotTwo(f"black symbols not in the code: {' '.join(sorted_labels(extra))}")

    @property
    def white(self) -> frozenset:
        return frozenset(self.code.symbols) - self.black

    def swapped(self) -> "ColoredGaussCode":
        """The complementary coloring (the antimap of the same one-v-gon map)."""
        return ColoredGaussCode(self.code, self.white)


def colored(seq: Iterable, black: Iterable = ()) -> ColoredGaussCode:
    return ColoredGaussCode(GaussCode.of(seq), frozenset(str(b) for b in black))


def parse_code(text: str) -> GaussCode:
    """Parse ``1 2 1 2``, ``1,2,1,2`` or ``(1,2,1,2)``."""
    toks = [t for t in re.split(r"[\s,()]+", text.strip()) if t]
    if not toks:
        raise ParseError("empty Gauss code")
    return GaussCode.of(toks)


def pn_code(n: int) -> GaussCode:
    """(1, ..., n, 1, ..., n): every pair of symbols interlaces."""
    if n < 1:
        raise ValueError("n must be at least 1")
    half = [str(i) for i in range(1, n + 1)]
    return GaussCode.of(half + half)


# ---------------------------------------------------------------- interlace


def interlace_sets(code: GaussCode) -> list[int]:
    """i(y) as a bitset for each symbol, in symbol order."""
    pos = code.positions()
    idx = code.index()
    out = [0] * code.n
    for y, (p1, p2) in pos.items():
        inside = 0
        for s in code.seq[p1 + 1:p2]:
            inside ^= 1 << idx[s]
        out[idx[y]] = inside  # symbols seen once between the two y's
    return out


def interlace(code: GaussCode) -> Multigraph:
    """Simple graph on the symbols; edge ``y|z`` when y and z interlace."""
    rows = interlace_sets(code)
    edges = []
    for i, y in enumerate(code.symbols):
        for j in range(i + 1, code.n):
            if (rows[i] >> j) & 1:
                edges.append((f"{y}|{code.symbols[j]}", y, code.symbols[j]))
    return Multigraph.build(code.symbols, edges)


def odd_even_split(code: GaussCode) -> tuple[frozenset, frozenset]:
    """(ODD, EVEN): symbols interlaced with an odd / even number of others."""
    rows = interlace_sets(code)
    odd = frozenset(y for y, r in zip(code.symbols, rows) if gf2.weight(r) % 2)
    return odd, frozenset(code.symbols) - odd


def _pair_sum(rows: Sequence[int], i: int, j: int) -> int:
    """|i(y) ∩ i(z)| + |i(y)|·|i(z)| mod 2."""
    return (gf2.weight(rows[i] & rows[j]) + gf2.weight(rows[i]) * gf2.weight(rows[j])) & 1


# --------------------------------------------------------- crossing function


@dataclass(frozen=True)
class CrossingFunction:
    """c = i + t as GF(2) columns over the symbols of a code."""

    symbols: tuple
    i_cols: tuple
    t_cols: tuple

    @property
    def columns(self) -> tuple:
        return tuple(a ^ b for a, b in zip(self.i_cols, self.t_cols))

    def __call__(self, vec: int) -> int:
        return gf2.apply(self.columns, vec)

    def squared_plus(self) -> list[int]:
        """Columns of c + c² (equal to c~ ∘ c for the swapped coloring)."""
        cols = self.columns
        return [gf2.apply(cols, c) ^ c for c in cols]

    def matrix(self) -> list[list[int]]:
        """Row-major 0/1 matrix: entry [r][c] is bit r of column c."""
        cols = self.columns
        n = len(cols)
        return [[(cols[c] >> r) & 1 for c in range(n)] for r in range(n)]

    def image(self) -> gf2.Gf2Space:
        return gf2.image(self.symbols, self.columns)

    def kernel(self) -> gf2.Gf2Space:
        return gf2.kernel(self.symbols, self.columns)


def crossing_function(c: ColoredGaussCode) -> CrossingFunction:
    code = c.code
    t_cols = tuple((1 << i) if y in c.black else 0 for i, y in enumerate(code.symbols))
    cf = CrossingFunction(code.symbols, tuple(interlace_sets(code)), t_cols)
    assert cf.image().dim + cf.kernel().dim == code.n, "rank-nullity failed for a crossing function"
    return cf


def compose(outer: CrossingFunction, inner: CrossingFunction) -> list[int]:
    return gf2.compose(outer.columns, inner.columns)


# ----------------------------------------------------------------- the map


def code_to_map(c: ColoredGaussCode) -> Map:
    """The one-v-gon map P whose v-ordering is the code and whose imbalance
    is the white set.  Its phial M carries the realization."""
    return from_descriptor(descriptor([c.code.seq], c.white))


def surface_of_coloring(c: ColoredGaussCode) -> SurfaceClass:
    """Surface of the phial of ``code_to_map(c)``.

    ξ is the rank of c + c²; the surface is orientable exactly when the
    interlace graph is eulerian.
    """
    cf = crossing_function(c)
    xi = gf2.rank(cf.squared_plus())
    orientable = all(gf2.weight(r) % 2 == 0 for r in cf.i_cols)
    return surface_from_chi(2 - xi, orientable, sphere_word="plane")


def eq_condition_holds(c: ColoredGaussCode) -> bool:
    """For all y ≠ z: |i(y)∩i(z)| + |i(y)||i(z)| is odd iff y, z interlace
    and have the same color."""
    code = c.code
    rows = interlace_sets(code)
    black = [y in c.black for y in code.symbols]
    for i in range(code.n):
        for j in range(i + 1, code.n):
            same = bool((rows[i] >> j) & 1) and black[i] == black[j]
            if bool(_pair_sum(rows, i, j)) != same:
                return False
    return True


def squared_crossing_condition_holds(c: ColoredGaussCode) -> bool:
    """(c+c²)(x) is empty for x in EVEN and equals ODD for x in ODD."""
    code = c.code
    odd, _ = odd_even_split(code)
    odd_vec = code.vector(odd)
    cols = crossing_function(c).squared_plus()
    for i, y in enumerate(code.symbols):
        if cols[i] != (odd_vec if y in odd else 0):
            return False
    return True


def crossing_algebra_checks(c: ColoredGaussCode) -> dict:
    """The space identities of a crossing function against M = phial(P).

    With V, F the coboundary spaces of G_M and G_D: Im(c) = V⊥, Ker(c) = V,
    c + c~ is the identity, Im(c~ ∘ c) = V⊥ ∩ F⊥ and its dimension is ξ(M).
    """
    from .orbit import dual_graph, gamma
    from .maps import classify_surface, induced_graph

    code = c.code
    m = gamma(code_to_map(c), "phial")
    ground = code.symbols
    if tuple(m.labels) != ground:
        raise AssertionError("phial labels are not the code's symbols")
    v = gf2.coboundary_space(induced_graph(m))
    f = gf2.coboundary_space(dual_graph(m))
    vperp = gf2.perp(v)
    cf = crossing_function(c)
    cs = crossing_function(c.swapped())
    comp = gf2.image(ground, compose(cs, cf))

    def same(a: gf2.Gf2Space, b: gf2.Gf2Space) -> bool:
        return a.is_subspace_of(b) and b.is_subspace_of(a)

    return {
        "image_is_cycle_space": same(cf.image(), vperp),
        "kernel_is_coboundary_space": same(cf.kernel(), v),
        "sum_with_swap_is_identity": all(x ^ y == 1 << i for i, (x, y) in enumerate(zip(cf.columns, cs.columns))),
        "composite_image_is_v_perp_f_perp": same(comp, gf2.intersect(vperp, gf2.perp(f))),
        "composite_rank_is_xi": comp.dim == classify_surface(m).xi,
    }


# --------------------------------------------------------- realizability


@dataclass(frozen=True)
class RealizationSet:
    """Every coloring realizing a code with ξ ≤ 1."""

    code: GaussCode
    T: frozenset  # interlace edges whose ends must get different colors
    n_components: int
    colorings: tuple  # black sets, one per element of the coset
    surfaces: tuple

    def has_plane(self) -> bool:
        return any(s.xi == 0 for s in self.surfaces)

    def has_projective(self) -> bool:
        return any(s.xi == 1 for s in self.surfaces)


def realize_xi_le_1(x: GaussCode, max_components: int = 20) -> Optional[RealizationSet]:
    """All colorings satisfying (EQ), or None when there are none.

    Condition (i) must hold on every non-interlaced pair; then the
    interlaced pairs with even sum must be exactly the bichromatic ones,
    which is a 2-coloring problem on each component of the interlace graph.
    """
    rows = interlace_sets(x)
    n = x.n
    for i in range(n):
        for j in range(i + 1, n):
            if not (rows[i] >> j) & 1 and _pair_sum(rows, i, j):
                return None
    # differ[i][j] = 1 when the colors of i and j must differ
    colour = [-1] * n
    comps = []
    T = set()
    for i in range(n):
        for j in range(i + 1, n):
            if (rows[i] >> j) & 1 and not _pair_sum(rows, i, j):
                T.add(f"{x.symbols[i]}|{x.symbols[j]}")
    for s in range(n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        comp = [s]
        stack = [s]
        while stack:
            i = stack.pop()
            nb = rows[i]
            while nb:
                j = (nb & -nb).bit_length() - 1
                nb &= nb - 1
                want = colour[i] ^ (1 - _pair_sum(rows, i, j))
                if colour[j] < 0:
                    colour[j] = want
                    comp.append(j)
                    stack.append(j)
                elif colour[j] != want:
                    return None
        comps.append(comp)
    p = len(comps)
    if p > max_components:
        raise TooLarge(f"{p} interlace components give 2^{p} colorings; limit is {max_components}")
    masks = []
    for comp in comps:
        ones = 0
        allc = 0
        for i in comp:
            allc |= 1 << i
            if colour[i]:
                ones |= 1 << i
        masks.append((ones, allc))
    colorings = []
    for choice in range(1 << p):
        black = 0
        for k, (ones, allc) in enumerate(masks):
            black |= (ones ^ allc) if (choice >> k) & 1 else ones
        colorings.append(x.subset(black))
    surfaces = tuple(surface_of_coloring(ColoredGaussCode(x, b)) for b in colorings)
    return RealizationSet(x, frozenset(T), p, tuple(colorings), surfaces)


def rosenstiehl_planar(x: GaussCode) -> bool:
    """Plane realizability: I_X eulerian, non-interlaced pairs share an even
    number of interlaced symbols, and the interlaced pairs sharing an even
    number form a coboundary of I_X."""
    rows = interlace_sets(x)
    if any(gf2.weight(r) % 2 for r in rows):
        return False
    n = x.n
    for i in range(n):
        for j in range(i + 1, n):
            if not (rows[i] >> j) & 1 and gf2.weight(rows[i] & rows[j]) % 2:
                return False
    ig = interlace(x)
    T = [f"{x.symbols[i]}|{x.symbols[j]}" for i in range(n) for j in range(i + 1, n)
         if (rows[i] >> j) & 1 and gf2.weight(rows[i] & rows[j]) % 2 == 0]
    space = gf2.coboundary_space(ig)
    return space.contains(space.vector(T))


def oracle_realize(x: GaussCode, max_xi: int = 1, limit: int = 24):
    """Exhaustive search over all 2^n colorings.

    Returns ``(black set, SurfaceClass)`` of least ξ (ties broken by the
    smaller bitset), or None when no coloring reaches ``max_xi``.
    """
    if x.n > limit:
        raise TooLarge(f"{x.n} symbols exceed the oracle limit of {limit}")
    best = None
    for b in range(1 << x.n):
        s = surface_of_coloring(ColoredGaussCode(x, x.subset(b)))
        if s.xi <= max_xi and (best is None or (s.xi, b) < best[0]):
            best = ((s.xi, b), s)
    if best is None:
        return None
    return x.subset(best[0][1]), best[1]


def oracle_colorings(x: GaussCode, max_xi: int = 1, limit: int = 16) -> list[frozenset]:
    """Every coloring whose surface has ξ ≤ max_xi (exhaustive)."""
    if x.n > limit:
        raise TooLarge(f"{x.n} symbols exceed the oracle limit of {limit}")
    out = []
    for b in range(1 << x.n):
        black = x.subset(b)
        if surface_of_coloring(ColoredGaussCode(x, black)).xi <= max_xi:
            out.append(black)
    return out


def random_code(n_symbols: int, seed: int, rng=None) -> GaussCode:
    import random

    rng = rng or random.Random(seed)
    seq = [str(i) for i in range(1, n_symbols + 1)] * 2
    rng.shuffle(seq)
    return GaussCode.of(seq)


# ------------------------------------------------------------ path merging


@dataclass(frozen=True)
class MergeStep:
    """One merge: symbol ``edge`` became the digon ``(first, second)``."""

    edge: str
    first: str
    second: str


def merge_to_single_path(sequences: Sequence[Sequence[str]]) -> tuple[GaussCode, list[MergeStep]]:
    """Merge cyclic crossing sequences (one per vertex) into one Gauss code.

    Each step picks the first symbol shared by two different sequences
    ``(e, R)`` and ``(e, T)`` and replaces them by ``(e', e'', R, e', e'', T)``.
    """
    seqs = [list(map(str, s)) for s in sequences]
    if not seqs or not any(seqs):
        raise NotConnected("nothing to merge")
    count: dict = {}
    for s in seqs:
        for e in s:
            count[e] = count.get(e, 0) + 1
    bad = [e for e, c in count.items() if c != 2]
    if bad:
        raise SymbolCountNotTwo(f"symbols not occurring exactly twice: {' '.join(sorted_labels(bad))}")
    ledger: list[MergeStep] = []
    used = set(count)
    while len(seqs) > 1:
        where: dict = {}
        pick = None
        for k, s in enumerate(seqs):
            for e in s:
                if e in where and where[e] != k:
                    pick = (e, where[e], k)
                    break
                where.setdefault(e, k)
            if pick:
                break
        if pick is None:
            raise NotConnected("the sequences do not form a connected graph")
        e, k1, k2 = pick
        first, second = _fresh(e, used, 1), None
        used.add(first)
        second = _fresh(e, used, 2)
        used.add(second)
        s1, s2 = seqs[k1], seqs[k2]
        i1, i2 = s1.index(e), s2.index(e)
        R = s1[i1 + 1:] + s1[:i1]
        T = s2[i2 + 1:] + s2[:i2]
        merged = [first, second] + R + [first, second] + T
        seqs = [s for k, s in enumerate(seqs) if k not in (k1, k2)] + [merged]
        ledger.append(MergeStep(e, first, second))
    return GaussCode.of(seqs[0]), ledger


def _fresh(base: str, used: set, which: int) -> str:
    cand = f"{base}'" if which == 1 else f"{base}''"
    while cand in used:
        cand += "*"
    return cand


def unmerge(code: Sequence[str], ledger: Sequence[MergeStep]) -> list[tuple]:
    """Undo a merge ledger: shrink each digon back into one crossing."""
    seqs = [list(code)]
    for step in reversed(ledger):
        for k, s in enumerate(seqs):
            if step.first in s:
                break
        else:
            raise ValueError(f"digon {step.first} not found")
        s = seqs.pop(k)
        i = s.index(step.first)
        s = s[i:] + s[:i]  # starts with first, second
        j = s.index(step.first, 1)
        if s[1] != step.second or s[j + 1] != step.second:
            raise ValueError(f"digon {step.first},{step.second} was disturbed")
        seqs.append(tuple([step.edge] + s[2:j]))
        seqs.append(tuple([step.edge] + s[j + 2:]))
        seqs = [list(x) for x in seqs]
    return [tuple(s) for s in seqs]


def same_cyclic(a: Sequence, b: Sequence) -> bool:
    """Equal as cyclic sequences, up to rotation and reversal."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    if not a:
        return True
    for cand in (b, b[::-1]):
        doubled = cand + cand
        for i in range(len(a)):
            if doubled[i:i + len(a)] == a:
                return True
    return False


# ------------------------------------------------------------ reflexivity


def signed_gauss_code(signed: Sequence[tuple]) -> ColoredGaussCode:
    """Black symbols are those traversed twice with the same sign."""
    signs: dict = {}
    for sgn, x in signed:
        signs.setdefault(str(x), []).append(sgn)
    code = GaussCode.of(str(x) for _, x in signed)
    return ColoredGaussCode(code, frozenset(x for x, s in signs.items() if s[0] == s[1]))


def omega_digraph(signed: Sequence[tuple]) -> Multigraph:
    """Ω(π′) for a cyclic sequence of ``(sign, symbol)`` pairs, sign ±1.

    Each dart has a head and a tail; each consecutive pair identifies one
    end of the first with one end of the second.  Edge ``x`` of the result
    runs from tail(x) to head(x).
    """
    syms = list(dict.fromkeys(str(x) for _, x in signed))
    parent: dict = {}
    for x in syms:
        parent[("t", x)] = ("t", x)
        parent[("h", x)] = ("h", x)

    def find(u):
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    n = len(signed)
    for i in range(n):
        s1, x = signed[i]
        s2, y = signed[(i + 1) % n]
        end_x = "h" if s1 > 0 else "t"
        end_y = "t" if s2 > 0 else "h"
        ra, rb = find((end_x, str(x))), find((end_y, str(y)))
        if ra != rb:
            parent[ra] = rb
    roots = {}
    for key in parent:
        r = find(key)
        roots.setdefault(r, f"w{len(roots)}")
    verts = list(roots.values())
    edges = [(x, roots[find(("t", x))], roots[find(("h", x))]) for x in syms]
    return Multigraph.build(verts, edges)


def is_reflexive(L: Multigraph, signed: Sequence[tuple]) -> bool:
    """Ω(π′) equals L: no vertex of L needs two Ω-vertices."""
    return len(omega_digraph(signed).vertices) == len([v for v in L.vertices if L.degree(v) > 0])


def zigzag_signed(m: Map) -> list[tuple]:
    """The first z-gon of ``m`` as a signed edge sequence of G_m.

    A z-edge crosses its square from the tail v-edge (corners 4k, 4k+1) to
    the head v-edge or back; the first direction is ``+1``.
    """
    from .maps import zgon_corners

    poly = zgon_corners(m)[0]
    out = []
    for i in range(0, len(poly), 2):
        x = poly[i]
        out.append((1 if (x & 2) == 0 else -1, m.square_of(x)))
    return out
