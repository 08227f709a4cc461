"""Exact computations on self-similar sets of the line and the Cantorval family K_l."""
from .numerics import (DEFAULT_MAX_LEAVES, EnumerationGuardExceeded, Interval,
                       IntervalSet, Rational, contains_interval, measure,
                       measure_disjoint, normalize)
from .series import (KakeyaVerdict, MultigeometricSeries, VerdictKind, geometric,
                     kakeya_classify, kl_series, subsum_cover, tail, term)
from .ifs import (IFS, Similarity, attractor_cover, hull, moran_dimension,
                  osc_check, project)
from .family import (Alphabet, DigitOracleFailure, DigitWord, FamilyParams,
                     approximate_point, boundary_dimension, convert_digits,
                     digit_set, expand, inner_approximation, inner_interval,
                     interior_measure_partial, lemma3_maps, n_moran_solve,
                     psi_family)
from .fractal_dim import GridCount, boundary_box_count, dimension_fit
from .render import DiagramSpec, render_svg

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_MAX_LEAVES", "EnumerationGuardExceeded", "Interval", "IntervalSet",
    "Rational", "contains_interval", "measure", "measure_disjoint", "normalize",
    "KakeyaVerdict", "MultigeometricSeries", "VerdictKind", "geometric",
    "kakeya_classify", "kl_series", "subsum_cover", "tail", "term",
    "IFS", "Similarity", "attractor_cover", "hull", "moran_dimension", "osc_check",
    "project", "Alphabet", "DigitOracleFailure", "DigitWord", "FamilyParams",
    "approximate_point", "boundary_dimension", "convert_digits", "digit_set",
    "expand", "inner_approximation", "inner_interval", "interior_measure_partial",
    "lemma3_maps", "n_moran_solve", "psi_family", "GridCount", "boundary_box_count",
    "dimension_fit", "DiagramSpec", "render_svg",
]
