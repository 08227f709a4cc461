"""Grid counting on the boundary approximation of K_l and log-log slope fitting."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .family import FamilyParams, inner_approximation, psi_family
from .ifs import attractor_cover
from .numerics import (IntervalSet, format_rational, intersection_measure, measure,
                       scale_shift)


@dataclass(frozen=True)
class GridCount:
    depth: int
    box_size: Fraction
    count: int

    def to_json(self) -> dict:
        return {"depth": self.depth, "count": self.count,
                "box_size": format_rational(self.box_size)}


def _box_coords(s: IntervalSet, start: Fraction, width: Fraction):
    """Endpoints of ``s`` in box units, as (numerators, common divisor)."""
    den = math.lcm(s.den, start.denominator)
    lo, hi = s.rescaled(den)
    offset = -start.numerator * (den // start.denominator)
    divisor = den * width.numerator
    lo = scale_shift(scale_shift(lo, 1, offset), width.denominator)
    hi = scale_shift(scale_shift(hi, 1, offset), width.denominator)
    return lo, hi, divisor


def _box_ranges(lo: np.ndarray, hi: np.ndarray, boxes: int) -> IntervalSet:
    """Inclusive index ranges ``lo..hi`` as the integer interval set ``[lo, hi+1]``."""
    lo = np.maximum(lo, 0)
    hi = np.minimum(hi, boxes - 1)
    keep = lo <= hi
    lo, hi = lo[keep], hi[keep]
    if lo.dtype == object:
        lo, hi = lo.astype(object), hi.astype(object)
    return IntervalSet.from_numerators(lo, hi + 1, 1)


def count_boundary_boxes(cover: IntervalSet, interior: IntervalSet,
                         start: Fraction, width: Fraction, boxes: int) -> int:
    """Boxes ``[start + j w, start + (j+1) w]`` meeting ``cover`` but not inside
    the open interior of ``interior``.

    Box indices are handled as integer ranges, so the cost is linear in the
    number of components rather than the number of boxes.
    """
    start, width = Fraction(start), Fraction(width)
    empty = IntervalSet()
    hits = inside = empty
    if cover:
        lo, hi, d = _box_coords(cover, start, width)
        # closed box j meets [a, b] iff ceil(a) - 1 <= j <= floor(b)
        hits = _box_ranges(-((-lo) // d) - 1, hi // d, boxes)
    if interior:
        lo, hi, d = _box_coords(interior, start, width)
        # closed box j sits inside (a, b) iff floor(a) + 1 <= j <= ceil(b) - 2
        inside = _box_ranges(lo // d + 1, -((-hi) // d) - 2, boxes)
    return int(measure(hits) - intersection_measure(hits, inside))


def boundary_box_count(l: int, n: int, max_leaves: int | None = None) -> GridCount:
    params = FamilyParams(l)
    boxes = params.base ** n
    width = params.hull.length / boxes
    cover = attractor_cover(psi_family(l), n, max_leaves)
    interior = inner_approximation(l, n, max_leaves)
    count = count_boundary_boxes(cover, interior, params.hull.lo, width, boxes)
    return GridCount(n, width, count)


def dimension_fit(counts: Sequence[GridCount]) -> float:
    """Least-squares slope of ``log count`` against ``-log box_size``.

    Box sizes shrink by ``2l+2`` per level, so this is the slope against
    ``n log(2l+2)`` up to an additive shift.
    """
    if len(counts) < 2:
        raise ValueError("need at least two grid counts")
    if len({c.depth for c in counts}) != len(counts):
        raise ValueError("depths must be distinct")
    if any(c.count < 1 for c in counts):
        raise ValueError("counts must be positive")
    x = np.array([-math.log(c.box_size) for c in counts])
    y = np.array([math.log(c.count) for c in counts])
    slope, _ = np.polyfit(x, y, 1)
    return float(slope)
