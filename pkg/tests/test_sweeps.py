import pytest

from mapforge.errors import UnknownSuite
from mapforge.io import parse_map
from mapforge.sweeps import SUITES, Suite, run_sweep


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_clean(name):
    rep = run_sweep(name, 30, seed=5)
    assert rep.violations == 0 and rep.reproducer is None


def test_sweep_is_deterministic():
    a = run_sweep("deficiency", 20, seed=3).lines()
    b = run_sweep("deficiency", 20, seed=3).lines()
    assert a == b


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        run_sweep("nope", 1, 1)


def test_violations_are_minimized():
    base = SUITES["absorption"]
    broken = Suite("small", base.make, lambda m: m.n_squares < 3, base.shrink, base.show)
    SUITES["small"] = broken
    try:
        rep = run_sweep("small", 30, seed=2)
    finally:
        del SUITES["small"]
    assert rep.violations > 0
    assert parse_map(rep.reproducer).n_squares == 3
    assert rep.lines()[-1].startswith("  ")


def test_crash_counts_as_violation():
    base = SUITES["absorption"]

    def boom(m):
        raise RuntimeError("boom")

    SUITES["boom"] = Suite("boom", base.make, boom, base.shrink, base.show)
    try:
        rep = run_sweep("boom", 7, seed=2)
    finally:
        del SUITES["boom"]
    assert rep.violations == 7
    assert parse_map(rep.reproducer).n_squares == 1
