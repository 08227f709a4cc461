"""Multigeometric series, their tails, Kakeya classification and subsum covers."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .numerics import (Interval, IntervalSet, as_rational, check_guard,
                       format_rational, normalize, parse_rational)


@dataclass(frozen=True)
class MultigeometricSeries:
    """``k_1 + ... + k_m + k_1 q + ... + k_m q + k_1 q^2 + ...``"""

    coeffs: tuple[Fraction, ...]
    ratio: Fraction

    def __post_init__(self):
        coeffs = tuple(as_rational(k) for k in self.coeffs)
        ratio = as_rational(self.ratio)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "ratio", ratio)
        if not coeffs:
            raise ValueError("a multigeometric series needs at least one coefficient")
        if any(k <= 0 for k in coeffs):
            raise ValueError("coefficients must be positive")
        if any(a < b for a, b in zip(coeffs, coeffs[1:])):
            raise ValueError("coefficients must be non-increasing")
        if not 0 < ratio < 1:
            raise ValueError("ratio must lie in (0, 1)")
        if coeffs[-1] < coeffs[0] * ratio:
            raise ValueError("terms are not monotone: k_m < k_1 * q")

    @property
    def period(self) -> int:
        return len(self.coeffs)

    @property
    def total(self) -> Fraction:
        return sum(self.coeffs, Fraction(0)) / (1 - self.ratio)

    def to_json(self) -> dict:
        return {"coeffs": [format_rational(k) for k in self.coeffs],
                "ratio": format_rational(self.ratio)}

    @classmethod
    def from_json(cls, obj: dict) -> "MultigeometricSeries":
        return cls(tuple(parse_rational(k) for k in obj["coeffs"]),
                   parse_rational(obj["ratio"]))


def geometric(ratio) -> MultigeometricSeries:
    """The series ``q + q^2 + q^3 + ...``, so that ``u_n = q^n``."""
    q = as_rational(ratio)
    return MultigeometricSeries((q,), q)


def kl_series(l: int) -> MultigeometricSeries:
    if l < 1:
        raise ValueError("l must be a positive integer")
    base = 2 * l + 2
    coeffs = (Fraction(2 * l + 1, base),) + (Fraction(2, base),) * l
    return MultigeometricSeries(coeffs, Fraction(1, base))


def term(s: MultigeometricSeries, n: int) -> Fraction:
    """``u_n`` under block indexing, ``n >= 1``."""
    if n < 1:
        raise ValueError("terms are indexed from 1")
    block, r = divmod(n - 1, s.period)
    return s.coeffs[r] * s.ratio ** block


def tail(s: MultigeometricSeries, n: int) -> Fraction:
    """``U_n``, the sum of all terms after the n-th, in closed form."""
    if n < 0:
        raise ValueError("tail index must be non-negative")
    block, r = divmod(n, s.period)
    rest_of_block = sum(s.coeffs[r:], Fraction(0))
    later_blocks = s.ratio * sum(s.coeffs, Fraction(0)) / (1 - s.ratio)
    return s.ratio ** block * (rest_of_block + later_blocks)


class VerdictKind(str, enum.Enum):
    FINITE_UNION_OF_INTERVALS = "FiniteUnionOfIntervals"
    CANTOR_SET = "CantorSet"
    NOT_KAKEYA = "NotKakeya"


@dataclass(frozen=True)
class KakeyaVerdict:
    """Classification plus a finite description of ``{n : u_n > U_n}``.

    The witness set is ``transient`` together with every ``n >= 1`` whose
    residue ``n mod period`` lies in ``residues``.
    """

    kind: VerdictKind
    transient: tuple[int, ...]
    residues: tuple[int, ...]
    period: int

    def is_witness(self, n: int) -> bool:
        return n in self.transient or n % self.period in self.residues

    def to_json(self) -> dict:
        return {"kind": self.kind.value,
                "witness_transient": list(self.transient),
                "witness_residues_mod_m": list(self.residues)}


def kakeya_classify(s: MultigeometricSeries) -> KakeyaVerdict:
    """Exact verdict from the sign of ``u_n - U_n`` over two periods.

    Both ``u_{n+m} = q u_n`` and ``U_{n+m} = q U_n`` hold, so the sign pattern
    repeats with period ``m``; the second period fixes the residues and the
    first period contributes whatever it does not already explain.
    """
    m = s.period
    residues = tuple(sorted({n % m for n in range(m + 1, 2 * m + 1)
                             if term(s, n) > tail(s, n)}))
    transient = tuple(n for n in range(1, m + 1)
                      if term(s, n) > tail(s, n) and n % m not in residues)
    if not residues:
        kind = VerdictKind.FINITE_UNION_OF_INTERVALS
    elif len(residues) == m:
        kind = VerdictKind.CANTOR_SET
    else:
        kind = VerdictKind.NOT_KAKEYA
    return KakeyaVerdict(kind, transient, residues, m)


def subsum_values(terms: Sequence[Fraction]) -> list[Fraction]:
    """Sorted distinct values of all 0/1 combinations of ``terms``."""
    sums = {Fraction(0)}
    for u in terms:
        sums |= {p + u for p in sums}
    return sorted(sums)


def subsum_cover(s: MultigeometricSeries, n: int,
                 max_leaves: int | None = None) -> IntervalSet:
    """Union of ``[p, p + U_n]`` over all subsums ``p`` of the first n terms."""
    if n < 0:
        raise ValueError("depth must be non-negative")
    check_guard(2 ** n, max_leaves, f"subsum cover with {n} terms")
    pad = tail(s, n)
    prefixes = subsum_values([term(s, i) for i in range(1, n + 1)])
    return normalize(Interval(p, p + pad) for p in prefixes)
