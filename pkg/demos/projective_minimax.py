"""Minimum transversal of the orientation-reversing circuits of a projective map,
with the matching family of edge-disjoint circuits as a certificate."""

import sys

from mapforge.fixtures import random_projective_eulerian
from mapforge.transversal import oracle_min_transversal, projminmax


def main(edges=12, seed=7):
    m = random_projective_eulerian(edges, seed)
    cert = projminmax(m)
    print(f"map with {m.n_squares} edges, seed {seed}")
    print(f"splits before the smooth paths became projective lines: {cert.stats['splits']}")
    print(f"transversal R0 ({cert.size} edges): {' '.join(sorted(cert.r0))}")
    for i, c in enumerate(cert.omega0, 1):
        print(f"disjoint r-circuit {i}: {' '.join(c)}")
    print(f"brute-force minimum: {oracle_min_transversal(m)}")


if __name__ == "__main__":
    main(*map(int, sys.argv[1:3]))
