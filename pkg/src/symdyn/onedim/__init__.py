"""One-dimensional sofic shift calculus."""

from .shift import SoficShift, parse_shift, equal_shifts, language_subset, as_word, word_str
from .extenders import ExtenderClassTable, extender_classes
from .cylinders import CylinderCount, Finite, INFINITE, cylinder_cardinality
from .derive import RankReport, derivative, rank_chain
from .count import CountabilityResult, ParseStructure, countability

__all__ = [
    "SoficShift",
    "parse_shift",
    "equal_shifts",
    "language_subset",
    "as_word",
    "word_str",
    "ExtenderClassTable",
    "extender_classes",
    "CylinderCount",
    "Finite",
    "INFINITE",
    "cylinder_cardinality",
    "RankReport",
    "derivative",
    "rank_chain",
    "CountabilityResult",
    "ParseStructure",
    "countability",
]
