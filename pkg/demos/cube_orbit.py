"""Surfaces and deficiencies of the six maps obtained from the cube."""

from mapforge.fixtures import cube
from mapforge.maps import classify_surface
from mapforge.orbit import GAMMA_TAGS, gamma
from mapforge.richness import deficiency, space_triple


def main():
    m = cube()
    t = space_triple(m)
    print(f"cube: {m.n_squares} squares, dim V={t.V.dim} F={t.F.dim} Z={t.Z.dim}")
    for tag in GAMMA_TAGS:
        x = gamma(m, tag)
        s = classify_surface(x)
        rep = deficiency(x)
        print(f"{tag:>10}: chi={s.chi:>2} orientable={s.orientable!s:<5} {s.name:<18} def={rep.deficiency}")


if __name__ == "__main__":
    main()
