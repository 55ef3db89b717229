"""Two-dimensional shifts of finite type."""

from . import engine
from .builtins import (arrow_base, arrow_row, arrow_rule, arrow_step,
                       broken_cone, builtins, diamond_shift, grid_shift,
                       quarter_plane, sft_from_sample)
from .io import read_pattern, read_tileset, write_pattern, write_tileset
from .ops import (StripProjection, ca_spacetime_sft, extract_ca,
                  periodic_search, product, rule_respects_base, strip_sft,
                  transform)
from .probes import (AdmissibilityVerdict, admissibility_probe,
                     count_patterns, determinism_probe, enumerate_patterns,
                     south_map)
from .render import COLOR_TABLE, default_palette, render
from .types import (
    CARule,
    DeterminismVerdict,
    FinitePatternSFT,
    IDENTITY,
    LatticeMap,
    Pattern2D,
    ROT90,
    from_forbidden,
    pattern_from_rows,
)
from .validity import locally_valid

__all__ = [
    "AdmissibilityVerdict",
    "CARule",
    "COLOR_TABLE",
    "DeterminismVerdict",
    "FinitePatternSFT",
    "IDENTITY",
    "LatticeMap",
    "Pattern2D",
    "ROT90",
    "StripProjection",
    "admissibility_probe",
    "arrow_base",
    "arrow_row",
    "arrow_rule",
    "arrow_step",
    "broken_cone",
    "builtins",
    "ca_spacetime_sft",
    "count_patterns",
    "default_palette",
    "determinism_probe",
    "diamond_shift",
    "engine",
    "enumerate_patterns",
    "extract_ca",
    "from_forbidden",
    "grid_shift",
    "locally_valid",
    "pattern_from_rows",
    "periodic_search",
    "product",
    "quarter_plane",
    "read_pattern",
    "read_tileset",
    "render",
    "rule_respects_base",
    "sft_from_sample",
    "south_map",
    "strip_sft",
    "transform",
    "write_pattern",
    "write_tileset",
]
