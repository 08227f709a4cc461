"""Exact rationals and a normalized algebra of finite unions of closed intervals.

Every coordinate in the package is exact. An :class:`IntervalSet` stores its
endpoints as integer numerators over one shared denominator, in numpy arrays
(int64 while values stay below 2**62, Python ints beyond that), so covers with
millions of components never materialize a Fraction per endpoint.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

Rational = Fraction

DEFAULT_MAX_LEAVES = 2 ** 24

INT64_SAFE = 2 ** 62


class EnumerationGuardExceeded(ValueError):
    """Raised when a combinatorial enumeration would exceed its leaf budget."""


def check_guard(leaves: int, max_leaves: int | None, what: str) -> None:
    limit = DEFAULT_MAX_LEAVES if max_leaves is None else max_leaves
    if leaves > limit:
        raise EnumerationGuardExceeded(
            f"{what} needs {leaves} leaves, guard is {limit}")


def as_rational(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings. Floats are refused."""
    if isinstance(x, float):
        raise TypeError("floats are not accepted as exact rationals")
    return Fraction(x)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_decimal(x: Fraction, places: int) -> str:
    """Round ``x`` half away from zero to ``places`` decimals, exactly."""
    x = Fraction(x)
    scale = 10 ** places
    scaled = abs(x) * scale
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    sign = "-" if x < 0 and q else ""
    if places == 0:
        return f"{sign}{q}"
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{places}d}"


@dataclass(frozen=True, order=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, other: "Interval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def affine(self, ratio: Fraction, shift: Fraction) -> "Interval":
        """Image under ``x -> ratio*x + shift`` with ``ratio > 0``."""
        return Interval(ratio * self.lo + shift, ratio * self.hi + shift)

    def reflect(self, center: Fraction) -> "Interval":
        return Interval(2 * center - self.hi, 2 * center - self.lo)

    def __repr__(self):
        return f"[{self.lo}, {self.hi}]"


# -- integer-array helpers ---------------------------------------------------

def int_array(values) -> np.ndarray:
    """int64 array when every value is safely small, else an object array."""
    values = list(values) if not isinstance(values, np.ndarray) else values
    if isinstance(values, np.ndarray) and values.dtype == np.int64:
        return values
    big = any(abs(int(v)) >= INT64_SAFE for v in values)
    return np.array([int(v) for v in values], dtype=object if big else np.int64)


def _max_abs(a: np.ndarray) -> int:
    if a.size == 0:
        return 0
    return max(abs(int(a.min())), abs(int(a.max())))


def scale_shift(a: np.ndarray, mult: int, add: int = 0) -> np.ndarray:
    """``a * mult + add`` without int64 overflow."""
    if a.dtype != object and _max_abs(a) * abs(mult) + abs(add) >= INT64_SAFE:
        a = a.astype(object)
    return a * mult + add if add else a * mult


def exact_sum(a: np.ndarray) -> int:
    if a.dtype == object or _max_abs(a) * a.size >= INT64_SAFE:
        return sum(int(v) for v in a)
    return int(a.sum())


def merge_union(lo: np.ndarray, hi: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Union of closed intervals ``[lo[k], hi[k]]`` as sorted component arrays.

    Sorting both endpoint arrays independently is enough: a gap lies between
    the k-th smallest right end and the (k+1)-th smallest left end exactly
    when the latter is strictly larger. Touching intervals therefore merge.
    """
    if lo.size == 0:
        return lo, hi
    L = np.sort(lo, kind="stable")
    H = np.sort(hi, kind="stable")
    breaks = np.nonzero(L[1:] > H[:-1])[0]
    new_lo = np.concatenate((L[:1], L[breaks + 1]))
    new_hi = np.concatenate((H[breaks], H[-1:]))
    return new_lo, new_hi


def same_dtype(a: np.ndarray, b: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    if a.dtype == object or b.dtype == object:
        return a.astype(object), b.astype(object)
    return a, b


class IntervalSet:
    """Sorted, pairwise disjoint, non-adjacent closed intervals.

    ``IntervalSet(intervals)`` trusts that ``intervals`` is already normalized;
    use :func:`normalize` for arbitrary input. The representation is canonical
    (numerators and denominator share no common factor), so equality is
    structural.
    """

    def __init__(self, intervals: Iterable[Interval] = ()):
        ivs = tuple(intervals)
        den = math.lcm(1, *(iv.lo.denominator for iv in ivs), *(iv.hi.denominator for iv in ivs))
        lo = int_array([iv.lo.numerator * (den // iv.lo.denominator) for iv in ivs])
        hi = int_array([iv.hi.numerator * (den // iv.hi.denominator) for iv in ivs])
        self._set(lo, hi, den)

    def _set(self, lo, hi, den):
        if lo.size:
            g = math.gcd(int(np.gcd.reduce(lo)), int(np.gcd.reduce(hi)), den)
        else:
            g = den
        if g > 1:
            lo, hi, den = lo // g, hi // g, den // g
        if lo.dtype == object and lo.size and max(_max_abs(lo), _max_abs(hi)) < INT64_SAFE:
            lo, hi = lo.astype(np.int64), hi.astype(np.int64)
        lo.flags.writeable = False
        hi.flags.writeable = False
        self.lo_num, self.hi_num, self.den = lo, hi, den

    @classmethod
    def from_numerators(cls, lo: np.ndarray, hi: np.ndarray, den: int,
                        merged: bool = False) -> "IntervalSet":
        """Set with components ``[lo[k]/den, hi[k]/den]``; merges unless ``merged``."""
        if not merged:
            lo, hi = merge_union(lo, hi)
        s = cls.__new__(cls)
        s._set(lo, hi, den)
        return s

    @classmethod
    def of(cls, *pairs) -> "IntervalSet":
        """``IntervalSet.of((0, 1), ("1/2", 2))`` convenience constructor."""
        return normalize(Interval(as_rational(a), as_rational(b)) for a, b in pairs)

    @cached_property
    def intervals(self) -> tuple[Interval, ...]:
        d = self.den
        return tuple(Interval(Fraction(int(a), d), Fraction(int(b), d))
                     for a, b in zip(self.lo_num, self.hi_num))

    def __iter__(self):
        return iter(self.intervals)

    def __len__(self):
        return int(self.lo_num.size)

    def __bool__(self):
        return bool(self.lo_num.size)

    def __eq__(self, other):
        if not isinstance(other, IntervalSet):
            return NotImplemented
        return (self.den == other.den and len(self) == len(other)
                and bool(np.all(self.lo_num == other.lo_num))
                and bool(np.all(self.hi_num == other.hi_num)))

    def __hash__(self):
        return hash((self.den, tuple(int(v) for v in self.lo_num),
                     tuple(int(v) for v in self.hi_num)))

    def __repr__(self):
        if len(self) > 12:
            head = ", ".join(map(repr, self.intervals[:3]))
            return f"{{{head}, ... {len(self)} components}}"
        return "{" + ", ".join(map(repr, self.intervals)) + "}"

    @property
    def lo(self) -> Fraction:
        return Fraction(int(self.lo_num[0]), self.den)

    @property
    def hi(self) -> Fraction:
        return Fraction(int(self.hi_num[-1]), self.den)

    @property
    def measure(self) -> Fraction:
        return measure(self)

    def rescaled(self, den: int) -> tuple[np.ndarray, np.ndarray]:
        """Numerators over ``den``, which must be a multiple of ``self.den``."""
        k = den // self.den
        return scale_shift(self.lo_num, k), scale_shift(self.hi_num, k)

    def affine(self, ratio, shift) -> "IntervalSet":
        """Image under ``x -> ratio * x + shift`` with ``ratio > 0``."""
        ratio, shift = as_rational(ratio), as_rational(shift)
        if ratio <= 0:
            raise ValueError("only increasing maps are supported")
        base = self.den * ratio.denominator
        den = math.lcm(base, shift.denominator)
        mult = ratio.numerator * (den // base)
        add = shift.numerator * (den // shift.denominator)
        return IntervalSet.from_numerators(scale_shift(self.lo_num, mult, add),
                                           scale_shift(self.hi_num, mult, add), den, merged=True)

    def reflect(self, center) -> "IntervalSet":
        c = as_rational(center)
        den = math.lcm(self.den, c.denominator)
        lo, hi = self.rescaled(den)
        twice = 2 * c.numerator * (den // c.denominator)
        return IntervalSet.from_numerators(scale_shift(hi[::-1], -1, twice),
                                           scale_shift(lo[::-1], -1, twice), den, merged=True)

    def issubset(self, other: "IntervalSet") -> bool:
        """Every component of ``self`` lies inside one component of ``other``."""
        if not self:
            return True
        if not other:
            return False
        den = math.lcm(self.den, other.den)
        a_lo, a_hi = self.rescaled(den)
        b_lo, b_hi = other.rescaled(den)
        a_lo, b_lo = same_dtype(a_lo, b_lo)
        a_hi, b_hi = same_dtype(a_hi, b_hi)
        idx = np.searchsorted(b_lo, a_lo, side="right") - 1
        if np.any(idx < 0):
            return False
        return bool(np.all(b_hi[idx] >= a_hi))

    def union(self, *others: "IntervalSet") -> "IntervalSet":
        return union_all((self, *others))


def union_all(sets: Sequence[IntervalSet]) -> IntervalSet:
    sets = [s for s in sets if s]
    if not sets:
        return IntervalSet()
    den = math.lcm(*(s.den for s in sets))
    parts = [s.rescaled(den) for s in sets]
    use_object = any(lo.dtype == object for lo, _ in parts)
    cast = (lambda a: a.astype(object)) if use_object else (lambda a: a)
    lo = np.concatenate([cast(p[0]) for p in parts])
    hi = np.concatenate([cast(p[1]) for p in parts])
    return IntervalSet.from_numerators(lo, hi, den)


def normalize(raw: Iterable[Interval]) -> IntervalSet:
    """Canonical form of a finite union of closed intervals.

    Overlapping and touching intervals are merged; a point interval survives
    only when it is isolated.
    """
    items = []
    for iv in raw:
        if not isinstance(iv, Interval):
            iv = Interval(*iv)
        items.append(iv)
    if not items:
        return IntervalSet()
    den = math.lcm(*(iv.lo.denominator for iv in items), *(iv.hi.denominator for iv in items))
    lo = int_array([iv.lo.numerator * (den // iv.lo.denominator) for iv in items])
    hi = int_array([iv.hi.numerator * (den // iv.hi.denominator) for iv in items])
    lo, hi = same_dtype(lo, hi)
    return IntervalSet.from_numerators(lo, hi, den)


def measure(s: IntervalSet) -> Fraction:
    return Fraction(exact_sum(s.hi_num) - exact_sum(s.lo_num), s.den)


def contains_interval(s: IntervalSet, t: Interval) -> bool:
    """True iff ``t`` lies inside a single member of the normalized set ``s``."""
    if not s:
        return False
    # lo_num[k] / den <= t.lo  <=>  lo_num[k] <= floor(t.lo * den)
    x = t.lo * s.den
    key = x.numerator // x.denominator
    if s.lo_num.dtype != object and abs(key) >= INT64_SAFE:
        k = len(s) if key > 0 else 0
    else:
        k = int(np.searchsorted(s.lo_num, key, side="right"))
    if k == 0:
        return False
    return Fraction(int(s.hi_num[k - 1]), s.den) >= t.hi


def intersection_measure(a: IntervalSet, b: IntervalSet) -> Fraction:
    # lambda(A n B) = lambda(A) + lambda(B) - lambda(A u B)
    return measure(a) + measure(b) - measure(union_all((a, b)))


def measure_disjoint(a: IntervalSet, b: IntervalSet) -> bool:
    """True iff ``a`` and ``b`` meet in a set of measure zero."""
    return intersection_measure(a, b) == 0


def pairwise_measure_disjoint(sets: Sequence[IntervalSet]) -> bool:
    # lambda(union) == sum(lambda) iff every pairwise overlap is null
    return measure(union_all(sets)) == sum((measure(s) for s in sets), Fraction(0))


def interval_to_json(iv: Interval) -> list[str]:
    return [format_rational(iv.lo), format_rational(iv.hi)]


def interval_set_to_json(s: IntervalSet) -> dict:
    return {"intervals": [interval_to_json(iv) for iv in s.intervals]}


def interval_set_from_json(obj: dict) -> IntervalSet:
    return normalize(Interval(parse_rational(a), parse_rational(b))
                     for a, b in obj["intervals"])
