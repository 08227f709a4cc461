"""Print the computable facts about K_l for a range of l, side by side with their closed forms."""
import argparse
import math
from fractions import Fraction

from cantorval import (attractor_cover, boundary_box_count, boundary_dimension,
                       dimension_fit, inner_approximation, kakeya_classify,
                       kl_series, measure, moran_dimension, n_moran_solve, psi_family)
from cantorval.family import inner_interval, interior_measure_closed_form
from cantorval.numerics import contains_interval


def report(l, depth, box_depths):
    psi = psi_family(l)
    print(f"== l = {l}  (base {2 * l + 2}, digits {[int(g.shift * (2 * l + 2)) for g in psi.maps]})")
    print(f"  kakeya verdict        : {kakeya_classify(kl_series(l)).to_json()}")
    print(f"  similarity dimension  : {moran_dimension(psi.ratios):.15f}")
    print(f"  boundary dim (closed) : {boundary_dimension(l):.15f}")
    print(f"  boundary dim (series) : {n_moran_solve(2 * l, Fraction(1, 2 * l + 2), 1e-13):.15f}")
    print("  n  cover measure            inner measure            closed form   I in cover")
    for n in range(depth + 1):
        cover = attractor_cover(psi, n)
        inner = inner_approximation(l, n)
        print(f"  {n:<2} {str(measure(cover)):<24} {str(measure(inner)):<24} "
              f"{float(interior_measure_closed_form(l, n)):.8f}    "
              f"{contains_interval(cover, inner_interval(l))}")
    counts = [boundary_box_count(l, n) for n in box_depths]
    slope = dimension_fit(counts)
    print(f"  box counts {[c.count for c in counts]} -> slope {slope:.5f} "
          f"(target {math.log(2 * l + 1) / math.log(2 * l + 2):.5f})")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lmax", type=int, default=3)
    ap.add_argument("--depth", type=int, default=6)
    args = ap.parse_args()
    for l in range(1, args.lmax + 1):
        top = {1: 10, 2: 7, 3: 6}.get(l, 5)
        report(l, args.depth, range(top - 4, top + 1))


if __name__ == "__main__":
    main()
