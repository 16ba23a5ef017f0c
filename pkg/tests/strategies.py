"""Hypothesis strategies built on the seeded fixture generators."""

from hypothesis import strategies as st

from mapforge.fixtures import random_map, random_projective_eulerian
from mapforge.gauss import ColoredGaussCode, random_code

seeds = st.integers(min_value=0, max_value=2**31 - 1)


@st.composite
def maps(draw, max_edges=12, connected=True):
    return random_map(draw(st.integers(1, max_edges)), draw(seeds), connected=connected)


@st.composite
def projective_eulerian_maps(draw, max_edges=12):
    return random_projective_eulerian(draw(st.integers(2, max_edges)), draw(seeds))


@st.composite
def codes(draw, max_symbols=10):
    return random_code(draw(st.integers(1, max_symbols)), draw(seeds))


@st.composite
def colored_codes(draw, max_symbols=10):
    code = draw(codes(max_symbols))
    return ColoredGaussCode(code, code.subset(draw(st.integers(0, (1 << code.n) - 1))))
