"""The Cantorval family K_l.

``K_l`` is the attractor of ``2l+2`` maps ``x -> (x + d) / (2l+2)`` with ``d``
running through the digit set ``T_l = {0, 2, ..., 2l, 2l+1, 2l+3, ..., 4l+1}``,
equivalently the achievement set of :func:`cantorval.series.kl_series`.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ifs import IFS, Similarity, hutchinson_power
from .numerics import Interval, IntervalSet, as_rational, check_guard


class DigitOracleFailure(RuntimeError):
    """The digit conversion produced a word whose value or alphabet is wrong."""


def _check_l(l: int) -> int:
    if not isinstance(l, int) or isinstance(l, bool) or l < 1:
        raise ValueError(f"l must be a positive integer, got {l!r}")
    return l


@dataclass(frozen=True)
class FamilyParams:
    l: int

    def __post_init__(self):
        _check_l(self.l)

    @property
    def base(self) -> int:
        return 2 * self.l + 2

    @property
    def hull(self) -> Interval:
        return Interval(Fraction(0), Fraction(4 * self.l + 1, 2 * self.l + 1))

    @property
    def midpoint(self) -> Fraction:
        return Fraction(4 * self.l + 1, 4 * self.l + 2)

    @property
    def inner(self) -> Interval:
        return inner_interval(self.l)


def digit_set(l: int) -> tuple[int, ...]:
    _check_l(l)
    return tuple(range(0, 2 * l + 1, 2)) + tuple(range(2 * l + 1, 4 * l + 2, 2))


def psi_family(l: int) -> IFS:
    base = 2 * _check_l(l) + 2
    return IFS(tuple(Similarity(Fraction(1, base), Fraction(d, base)) for d in digit_set(l)))


class Alphabet(str, enum.Enum):
    FULL = "full"
    RESTRICTED = "restricted"


@dataclass(frozen=True)
class DigitWord:
    digits: tuple[int, ...]
    l: int
    alphabet: Alphabet = Alphabet.FULL

    def __post_init__(self):
        object.__setattr__(self, "digits", tuple(int(d) for d in self.digits))
        object.__setattr__(self, "alphabet", Alphabet(self.alphabet))
        _check_l(self.l)
        allowed = (set(digit_set(self.l)) if self.alphabet is Alphabet.RESTRICTED
                   else set(range(2 * self.l + 2)))
        bad = [d for d in self.digits if d not in allowed]
        if bad:
            raise ValueError(f"digits {bad} not in the {self.alphabet.value} alphabet for l={self.l}")

    @property
    def value(self) -> Fraction:
        return word_value(self.digits, 2 * self.l + 2)

    def to_json(self) -> dict:
        return {"digits": list(self.digits), "alphabet": self.alphabet.value, "l": self.l}

    @classmethod
    def from_json(cls, obj: dict) -> "DigitWord":
        return cls(tuple(obj["digits"]), int(obj["l"]), Alphabet(obj["alphabet"]))


def word_value(digits: Sequence[int], base: int) -> Fraction:
    acc = 0
    for d in digits:
        acc = acc * base + d
    return Fraction(acc, base ** len(digits))


def expand(a, l: int, k: int) -> DigitWord:
    """First ``k`` greedy base-(2l+2) digits of ``a``, capped at ``2l+1``.

    The cap makes ``a = 1`` expand as ``(2l+1, 2l+1, ...)``.
    """
    a = as_rational(a)
    base = 2 * _check_l(l) + 2
    if not 0 <= a <= 1:
        raise ValueError(f"{a} is outside [0, 1]")
    if k < 1:
        raise ValueError("k must be positive")
    digits = []
    for _ in range(k):
        a *= base
        d = min(math.floor(a), base - 1)
        digits.append(d)
        a -= d
    return DigitWord(tuple(digits), l, Alphabet.FULL)


def convert_digits(w: DigitWord) -> DigitWord:
    """Rewrite a full-alphabet word starting with ``2l+1`` over ``T_l``.

    Right-to-left pass. A position "borrows" when it outputs ``x + 2l + 2``
    in place of ``x``; the position to its left then pays with a ``-1``. The
    borrow flag is read off the neighbour exactly as in the case table:
    no borrow iff ``b_{i+1}`` is ``a_{i+1}`` or ``a_{i+1} - 1``.
    """
    l = w.l
    digits = w.digits
    if w.alphabet is not Alphabet.FULL:
        raise ValueError("convert_digits expects a full-alphabet word")
    if not digits:
        raise ValueError("empty word")
    if digits[0] != 2 * l + 1:
        raise ValueError(f"first digit must be {2 * l + 1}, got {digits[0]}")
    t = set(digit_set(l))
    inner_t = t - {0, 2 * l + 1}
    k = len(digits)
    b = [0] * k

    def borrowed(i):
        # did position i (0-based) borrow from position i - 1?
        return b[i] not in (digits[i] - 1, digits[i])

    a = digits[k - 1]
    b[k - 1] = a if a in t else a + 2 * l + 2
    for i in range(k - 2, 0, -1):
        a = digits[i]
        if not borrowed(i + 1):
            b[i] = a if a in t else a + 2 * l + 2
        elif a == 0:
            b[i] = 2 * l + 1
        elif a == 2 * l + 1:
            b[i] = 2 * l
        elif a in inner_t:
            b[i] = a + 2 * l + 1
        else:
            b[i] = a - 1
    if k > 1:
        b[0] = 2 * l if borrowed(1) else 2 * l + 1
    else:
        b[0] = 2 * l + 1

    if any(d not in t for d in b) or word_value(b, 2 * l + 2) != w.value:
        raise DigitOracleFailure(f"conversion of {digits} gave {tuple(b)}")
    return DigitWord(tuple(b), l, Alphabet.RESTRICTED)


def digits_needed(eps, base: int) -> int:
    """Smallest ``k`` exceeding ``ceil(-log eps / log base)``, in exact arithmetic."""
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    j = 0
    while Fraction(base) ** j * eps < 1:
        j += 1
    return max(j + 1, 1)


def approximate_point(a, l: int, eps) -> Fraction:
    """A finite ``T_l``-expansion value within ``eps`` of ``a``."""
    a = as_rational(a)
    base = 2 * _check_l(l) + 2
    if not Fraction(base - 1, base) <= a <= 1:
        raise ValueError(f"{a} is outside [{base - 1}/{base}, 1]")
    word = convert_digits(expand(a, l, digits_needed(eps, base)))
    return word.value


def inner_interval(l: int) -> Interval:
    _check_l(l)
    return Interval(Fraction(2 * l, 2 * l + 1), Fraction(1))


def lemma3_maps(l: int, n: int) -> list[Similarity]:
    """Maps of the disjoint copies of ``K_l`` lying outside the inner interval.

    For each ``k`` in ``0..n``: ``psi_{l+1}^k o psi_i`` for ``i`` in ``1..l`` and
    ``psi_{l+2}^k o psi_j`` for ``j`` in ``l+3..2l+2``.
    """
    psi = psi_family(l)
    left, right = psi[l + 1], psi[l + 2]
    out = []
    left_pow = right_pow = None
    for k in range(n + 1):
        for i in range(1, l + 1):
            out.append(psi[i] if left_pow is None else left_pow.compose(psi[i]))
        for j in range(l + 3, 2 * l + 3):
            out.append(psi[j] if right_pow is None else right_pow.compose(psi[j]))
        left_pow = left if left_pow is None else left.compose(left_pow)
        right_pow = right if right_pow is None else right.compose(right_pow)
    return out


def inner_approximation(l: int, n: int, max_leaves: int | None = None) -> IntervalSet:
    """Union of ``f_sigma(I)`` over every address of length at most ``n``."""
    if n < 0:
        raise ValueError("depth must be non-negative")
    psi = psi_family(l)
    check_guard(sum(len(psi) ** k for k in range(n + 1)), max_leaves,
                f"inner approximation at depth {n}")
    return hutchinson_power(psi, IntervalSet((inner_interval(l),)), n, keep_seed=True)


def interior_measure_partial(l: int, n: int) -> Fraction:
    """Partial sum of the interior measure series through scale ``(2l+2)^-n``."""
    _check_l(l)
    if n < 0:
        raise ValueError("n must be non-negative")
    odd, base = 2 * l + 1, 2 * l + 2
    return Fraction(1, odd) + sum(
        (Fraction(2 * l * odd ** (k - 1), odd * base ** k) for k in range(1, n + 1)),
        Fraction(0))


def interior_measure_closed_form(l: int, n: int) -> Fraction:
    _check_l(l)
    return 1 - Fraction(2 * l, 2 * l + 1) * Fraction(2 * l + 1, 2 * l + 2) ** n


def boundary_dimension(l: int) -> float:
    _check_l(l)
    return math.log(2 * l + 1) / math.log(2 * l + 2)


def n_moran_solve(copies: int, ratio, tol: float = 1e-12) -> float:
    """Root ``s > 0`` of ``sum_{n>=1} copies * ratio**(n s) = 1``.

    The geometric series sums to ``c x / (1 - x)`` with ``x = ratio**s``;
    that expression is bisected directly.
    """
    ratio = as_rational(ratio)
    if not isinstance(copies, int) or copies < 1:
        raise ValueError("copies must be a positive integer")
    if not 0 < ratio < 1:
        raise ValueError("ratio must lie in (0, 1)")
    if not tol > 0:
        raise ValueError("tol must be positive")
    log_r = math.log(ratio)

    def excess(s):
        x = math.exp(s * log_r)
        return copies * x / (1 - x) - 1

    lo, hi = 0.0, 1.0
    while excess(hi) > 0:
        lo, hi = hi, 2 * hi
    while hi - lo >= tol:
        mid = (lo + hi) / 2
        if excess(mid) > 0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
