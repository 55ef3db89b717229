"""Computation cones: machine runs swept into expanding 2D zones."""

from .rows import PRESTART, RowWord
from .compile import SymbolicRowSFT, Simulation, compile_cone, row_successors, simulate
from .lower import (decode_row, encode_row, head_symbol, lower_to_tiles,
                    parse_head, tile_alphabet)
from .validate import CrossValidation, cross_validate

__all__ = [
    "PRESTART",
    "RowWord",
    "SymbolicRowSFT",
    "Simulation",
    "compile_cone",
    "row_successors",
    "simulate",
    "decode_row",
    "encode_row",
    "head_symbol",
    "lower_to_tiles",
    "parse_head",
    "tile_alphabet",
    "CrossValidation",
    "cross_validate",
]
