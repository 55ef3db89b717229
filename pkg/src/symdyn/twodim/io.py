"""Tileset and pattern files.

Tilesets: JSON objects {"alphabet": [symbol], "shape": [[dx, dy]],
"allowed": [[symbol, ...]]} with one allowed entry per pattern, symbols
listed in shape order.  Patterns: JSON arrays [[x, y, symbol], ...].
Symbols must be strings.  Output is deterministic: sorted, one fixed
layout.
"""

import json

from ..errors import DomainError
from .types import FinitePatternSFT, Pattern2D


def _check_symbols(symbols):
    bad = [s for s in symbols if not isinstance(s, str)]
    if bad:
        raise DomainError("only string symbols can be serialized: %r"
                          % (bad[:3],))


def write_tileset(X, path):
    _check_symbols(X.alphabet)
    doc = {
        "alphabet": list(X.alphabet),
        "shape": [list(c) for c in X.shape],
        "allowed": sorted(list(p) for p in X.allowed),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh, ensure_ascii=False, sort_keys=True, indent=1)
        fh.write("\n")
    return path


def read_tileset(path, name=None):
    with open(path) as fh:
        doc = json.load(fh)
    try:
        alphabet = tuple(doc["alphabet"])
        shape = tuple((int(dx), int(dy)) for dx, dy in doc["shape"])
        allowed = frozenset(tuple(p) for p in doc["allowed"])
    except (KeyError, TypeError, ValueError) as e:
        raise DomainError("malformed tileset file: %s" % (e,))
    return FinitePatternSFT(alphabet, shape, allowed, name=name)


def write_pattern(P, path):
    _check_symbols([s for _, s in P.cells])
    doc = [[x, y, s] for (x, y), s in P.cells]
    with open(path, "w") as fh:
        json.dump(doc, fh, ensure_ascii=False, sort_keys=True, indent=0)
        fh.write("\n")
    return path


def read_pattern(path):
    with open(path) as fh:
        doc = json.load(fh)
    try:
        cells = {(int(x), int(y)): s for x, y, s in doc}
        if len(cells) != len(doc):
            raise DomainError("duplicate cells in pattern file")
    except (TypeError, ValueError) as e:
        raise DomainError("malformed pattern file: %s" % (e,))
    return Pattern2D(tuple(sorted(cells.items())))
