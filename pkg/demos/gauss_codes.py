"""Which surfaces realize a Gauss code: a planar example and the codes P_n."""

from mapforge.gauss import ColoredGaussCode, parse_code, pn_code, realize_xi_le_1, surface_of_coloring


def main():
    x = parse_code("1 3 4 6 7 2 3 9 6 5 2 1 8 7 5 4 9 8")
    r = realize_xi_le_1(x)
    print(f"code {x}: {len(r.colorings)} colorings with xi <= 1")
    for black, s in zip(r.colorings, r.surfaces):
        print(f"  black={{{' '.join(sorted(black, key=x.symbols.index))}}} -> {s.name}")
    print()
    print(" n  monochromatic      mixed")
    for n in range(1, 9):
        code = pn_code(n)
        names = {surface_of_coloring(ColoredGaussCode(code, code.subset(b))).name for b in range(1 << n)}
        mono = surface_of_coloring(ColoredGaussCode(code, frozenset())).name
        mixed = sorted(names - {mono}) or ["-"]
        print(f"{n:>2}  {mono:<18} {', '.join(mixed)}")


if __name__ == "__main__":
    main()
