"""Core types for two-dimensional shifts of finite type.

An SFT is presented by the allowed patterns on a finite window shape: a
configuration is valid when every translate of the shape reads an allowed
pattern.  A converter from forbidden-pattern lists is provided.  Coordinates
are (x, y) with x growing right and y growing up.
"""

import itertools
from dataclasses import dataclass, field

from ..errors import DomainError


def _norm_shape(shape):
    out = tuple(sorted((int(dx), int(dy)) for dx, dy in shape))
    if not out:
        raise DomainError("shape must be nonempty")
    if len(set(out)) != len(out):
        raise DomainError("shape offsets must be distinct")
    return out


@dataclass(frozen=True)
class FinitePatternSFT:
    alphabet: tuple
    shape: tuple
    allowed: frozenset
    name: str = None

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "shape", _norm_shape(self.shape))
        allowed = frozenset(tuple(p) for p in self.allowed)
        object.__setattr__(self, "allowed", allowed)
        syms = set(self.alphabet)
        if len(syms) != len(self.alphabet):
            raise DomainError("alphabet symbols must be distinct")
        for pat in allowed:
            if len(pat) != len(self.shape):
                raise DomainError("allowed pattern arity must match shape size")
            if not set(pat) <= syms:
                raise DomainError("allowed pattern uses symbol outside alphabet")

    @property
    def extent(self):
        xs = [dx for dx, _ in self.shape]
        ys = [dy for _, dy in self.shape]
        return (max(xs) - min(xs) + 1, max(ys) - min(ys) + 1)

    def __repr__(self):
        tag = self.name or "sft"
        return "FinitePatternSFT(%s: %d symbols, %d-cell shape, %d allowed)" % (
            tag, len(self.alphabet), len(self.shape), len(self.allowed))


def from_forbidden(alphabet, shape, forbidden):
    """Presentation by forbidden patterns: allowed = full shape set minus them."""
    shape = _norm_shape(shape)
    bad = {tuple(p) for p in forbidden}
    allowed = frozenset(p for p in itertools.product(tuple(alphabet), repeat=len(shape))
                        if p not in bad)
    return FinitePatternSFT(tuple(alphabet), shape, allowed)


@dataclass(frozen=True)
class Pattern2D:
    """A finite partial configuration: a map from cells to symbols."""

    cells: tuple

    def __init__(self, cells):
        if isinstance(cells, dict):
            items = cells.items()
        else:
            items = ((tuple(c), s) for c, s in cells)
        norm = tuple(sorted(((int(x), int(y)), s) for (x, y), s in items))
        coords = [c for c, _ in norm]
        if len(set(coords)) != len(coords):
            raise DomainError("pattern assigns a cell twice")
        object.__setattr__(self, "cells", norm)

    def as_dict(self):
        return dict(self.cells)

    @property
    def domain(self):
        return frozenset(c for c, _ in self.cells)

    def get(self, x, y, default=None):
        return self.as_dict().get((x, y), default)

    def bbox(self):
        if not self.cells:
            return None
        xs = [x for (x, _), _ in self.cells]
        ys = [y for (_, y), _ in self.cells]
        return (min(xs), min(ys), max(xs), max(ys))

    def translate(self, dx, dy):
        return Pattern2D({(x + dx, y + dy): s for (x, y), s in self.cells})

    def __len__(self):
        return len(self.cells)


def pattern_from_rows(rows, x0=0, y0=0):
    """Build a pattern from a list of rows given top row first.

    rows[0] is the topmost row; each row is a sequence of symbols (or a
    string, one symbol per character) starting at x0.  None cells are
    skipped.
    """
    cells = {}
    height = len(rows)
    for j, row in enumerate(rows):
        y = y0 + height - 1 - j
        for i, s in enumerate(row):
            if s is not None:
                cells[(x0 + i, y)] = s
    return Pattern2D(cells)


@dataclass(frozen=True)
class LatticeMap:
    """An element of SL2(Z) acting on the plane: (x,y) -> (ax+by, cx+dy)."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise DomainError("lattice map must have determinant 1")

    def apply(self, cell):
        x, y = cell
        return (self.a * x + self.b * y, self.c * x + self.d * y)

    def compose(self, other):
        return LatticeMap(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self):
        return LatticeMap(self.d, -self.b, -self.c, self.a)

    def apply_pattern(self, P):
        return Pattern2D({self.apply(c): s for c, s in P.cells})


IDENTITY = LatticeMap(1, 0, 0, 1)
ROT90 = LatticeMap(0, -1, 1, 0)


@dataclass(frozen=True)
class CARule:
    """A one-dimensional local rule: the row below is f of the row above.

    `table` maps admissible windows of length 2*radius+1 (tuples of symbols)
    to the symbol produced below the window's center.
    """

    base: object
    radius: int
    table: tuple

    def __init__(self, base, radius, table):
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "radius", int(radius))
        if isinstance(table, dict):
            items = table.items()
        else:
            items = table
        norm = tuple(sorted((tuple(w), s) for w, s in items))
        for w, _ in norm:
            if len(w) != 2 * self.radius + 1:
                raise DomainError("table window length must be 2*radius+1")
        object.__setattr__(self, "table", norm)

    def as_dict(self):
        return dict(self.table)

    def __call__(self, window):
        table = self.as_dict()
        key = tuple(window)
        if key not in table:
            raise DomainError("window %r not in rule table" % (key,))
        return table[key]

    def apply_row(self, row):
        """Apply the rule to a finite row, shrinking by radius on each side."""
        r = self.radius
        table = self.as_dict()
        row = tuple(row)
        if len(row) < 2 * r + 1:
            return ()
        return tuple(table[row[i - r:i + r + 1]] for i in range(r, len(row) - r))


@dataclass(frozen=True)
class DeterminismVerdict:
    """Outcome of a directional determinism probe.

    `counterexample` holds two patterns on the probed window that are locally
    valid, depth-extendable, agree strictly behind the front and differ at
    the origin; None means no such pair was found at this window and depth,
    which is evidence, not proof, of determinism.
    """

    direction: tuple
    window: int
    depth: int
    counterexample: tuple = None

    @property
    def deterministic_evidence(self):
        return self.counterexample is None

    def __repr__(self):
        if self.counterexample is None:
            return "NoCounterexample(window=%d, depth=%d)" % (self.window, self.depth)
        return "Counterexample(window=%d, depth=%d)" % (self.window, self.depth)
