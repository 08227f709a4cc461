"""Iterated function systems of increasing similarities on the line."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .numerics import (Interval, IntervalSet, as_rational, check_guard,
                       format_rational, merge_union, pairwise_measure_disjoint,
                       parse_rational, scale_shift)


@dataclass(frozen=True)
class Similarity:
    """``x -> ratio * x + shift`` with ``0 < ratio < 1``."""

    ratio: Fraction
    shift: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ratio", as_rational(self.ratio))
        object.__setattr__(self, "shift", as_rational(self.shift))
        if not 0 < self.ratio < 1:
            raise ValueError(f"ratio {self.ratio} is not in (0, 1)")

    def __call__(self, x: Fraction) -> Fraction:
        return self.ratio * x + self.shift

    @property
    def fixed_point(self) -> Fraction:
        return self.shift / (1 - self.ratio)

    def compose(self, inner: "Similarity") -> "Similarity":
        """``self o inner``"""
        return Similarity(self.ratio * inner.ratio, self.ratio * inner.shift + self.shift)

    def image(self, x):
        """Image of an Interval or IntervalSet."""
        return x.affine(self.ratio, self.shift)

    def to_json(self) -> dict:
        return {"ratio": format_rational(self.ratio), "shift": format_rational(self.shift)}


@dataclass(frozen=True)
class IFS:
    maps: tuple[Similarity, ...]

    def __post_init__(self):
        object.__setattr__(self, "maps", tuple(self.maps))
        if not self.maps:
            raise ValueError("an IFS needs at least one map")

    def __len__(self):
        return len(self.maps)

    def __getitem__(self, digit: int) -> Similarity:
        """1-based access, matching address digits."""
        if not 1 <= digit <= len(self.maps):
            raise IndexError(f"digit {digit} outside 1..{len(self.maps)}")
        return self.maps[digit - 1]

    @property
    def ratios(self) -> list[Fraction]:
        return [f.ratio for f in self.maps]

    def to_json(self) -> dict:
        return {"maps": [f.to_json() for f in self.maps]}

    @classmethod
    def from_json(cls, obj: dict) -> "IFS":
        return cls(tuple(Similarity(parse_rational(m["ratio"]), parse_rational(m["shift"]))
                         for m in obj["maps"]))


def hull(f: IFS) -> Interval:
    # attractor extremes are fixed points of the extremal maps
    fixed = [g.fixed_point for g in f.maps]
    return Interval(min(fixed), max(fixed))


def compose_address(f: IFS, address: Sequence[int]) -> Similarity | None:
    """``f_{a_1} o ... o f_{a_n}``; ``None`` for the empty address (identity)."""
    g = None
    for digit in reversed(address):
        h = f[digit]
        g = h if g is None else h.compose(g)
    return g


def project(f: IFS, address: Sequence[int]) -> Interval:
    """Cylinder of a finite address: the hull pushed through the composed maps."""
    g = compose_address(f, address)
    h = hull(f)
    return h if g is None else g.image(h)


def hutchinson_power(f: IFS, seed: IntervalSet, depth: int,
                     keep_seed: bool = False) -> IntervalSet:
    """``F^depth(seed)`` for the Hutchinson operator ``F(X) = U f_i(X)``.

    With ``keep_seed`` the result is ``seed u F(seed) u ... u F^depth(seed)``,
    computed as the iteration ``X -> seed u F(X)``. Endpoints stay integer
    numerators; the common denominator gains a factor ``lcm(denominators)``
    per level.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if not seed:
        return seed
    step = math.lcm(*(g.ratio.denominator for g in f.maps),
                    *(g.shift.denominator for g in f.maps))
    coeffs = [(int(g.ratio * step), g.shift * step) for g in f.maps]
    lo, hi, scale = seed.lo_num, seed.hi_num, seed.den
    grown = 1
    for _ in range(depth):
        los, his = [], []
        for r, t in coeffs:
            shift = int(t * scale)
            los.append(scale_shift(lo, r, shift))
            his.append(scale_shift(hi, r, shift))
        scale *= step
        grown *= step
        if keep_seed:
            los.append(scale_shift(seed.lo_num, grown))
            his.append(scale_shift(seed.hi_num, grown))
        if any(a.dtype == object for a in los + his):
            los = [a.astype(object) for a in los]
            his = [a.astype(object) for a in his]
        lo, hi = merge_union(np.concatenate(los), np.concatenate(his))
    return IntervalSet.from_numerators(lo, hi, scale, merged=True)


def attractor_cover(f: IFS, depth: int, max_leaves: int | None = None) -> IntervalSet:
    """Union of all depth-``depth`` cylinders; a compact superset of the attractor."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    check_guard(len(f) ** depth, max_leaves, f"attractor cover at depth {depth}")
    return hutchinson_power(f, IntervalSet((hull(f),)), depth)


def moran_dimension(ratios: Sequence, tol: float = 1e-12) -> float:
    """Similarity dimension: the root ``s`` of ``sum(r_i ** s) = 1``."""
    if not ratios:
        raise ValueError("need at least one ratio")
    if not tol > 0:
        raise ValueError("tol must be positive")
    rs = [as_rational(r) for r in ratios]
    if any(not 0 < r < 1 for r in rs):
        raise ValueError("ratios must lie in (0, 1)")
    n = len(rs)
    if n == 1:
        return 0.0
    if len(set(rs)) == 1 and n * rs[0] <= 1:
        return math.log(n) / math.log(1 / rs[0])
    logs = [math.log(r) for r in rs]

    def excess(s):
        return math.fsum(math.exp(s * lr) for lr in logs) - 1.0

    lo, hi = 0.0, 1.0
    while excess(hi) >= 0:
        lo, hi = hi, 2 * hi
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if excess(mid) >= 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def osc_check(f: IFS, v: IntervalSet, container: IntervalSet | None = None) -> bool:
    """Finite evidence for the open set condition with candidate ``V``.

    ``v`` holds the closures of the components of ``V``. Checks that the
    images ``f_i(v)`` overlap only in null sets and that each lies inside
    ``container`` (``v`` itself unless given).
    """
    images = [g.image(v) for g in f.maps]
    target = v if container is None else container
    return pairwise_measure_disjoint(images) and all(im.issubset(target) for im in images)

