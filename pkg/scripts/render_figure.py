"""Write depth diagrams (outer covers above, inner approximations below) for K_1..K_lmax."""
import argparse
from pathlib import Path

from cantorval import (DiagramSpec, attractor_cover, hull, inner_approximation,
                       inner_interval, psi_family, render_svg)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", type=int, default=3)
    ap.add_argument("--depth", type=int, default=4)
    ap.add_argument("--out", type=Path, default=Path("figures"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for l in range(1, args.lmax + 1):
        psi = psi_family(l)
        rows = [(f"cover n={n}", attractor_cover(psi, n)) for n in range(args.depth + 1)]
        rows += [(f"inner n={n}", inner_approximation(l, n)) for n in range(args.depth + 1)]
        spec = DiagramSpec(rows, highlight=inner_interval(l), x_range=hull(psi))
        path = args.out / f"K_{l}.svg"
        path.write_text(render_svg(spec))
        print(path)


if __name__ == "__main__":
    main()
