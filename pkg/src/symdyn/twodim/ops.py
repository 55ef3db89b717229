"""Operations on 2D SFTs: lattice transforms, products, strip projections,
periodic points, and conversions between SFTs and cellular automata."""

import itertools
from dataclasses import dataclass

from ..caps import get_cap
from ..errors import DomainError, ResourceError
from ..onedim import SoficShift
from . import engine
from .types import CARule, FinitePatternSFT, Pattern2D


def transform(X, A):
    """The image SFT A(X): a configuration x is valid in X exactly when the
    configuration y with y(A(c)) = x(c) is valid in the result."""
    mapped = [A.apply(c) for c in X.shape]
    order = sorted(range(len(mapped)), key=lambda i: mapped[i])
    shape = tuple(mapped[i] for i in order)
    allowed = frozenset(tuple(p[i] for i in order) for p in X.allowed)
    return FinitePatternSFT(X.alphabet, shape, allowed, name=X.name)


def product(X, Y):
    """The product SFT: configurations are pairs (x, y) with x valid in X
    and y valid in Y, over the pair alphabet."""
    alphabet = tuple((a, b) for a in X.alphabet for b in Y.alphabet)
    shape = tuple(sorted(set(X.shape) | set(Y.shape)))
    xi = [shape.index(c) for c in X.shape]
    yi = [shape.index(c) for c in Y.shape]
    allowed = frozenset(_pair_windows(X, Y, shape, xi, yi))
    name = None
    if X.name and Y.name:
        name = "%s*%s" % (X.name, Y.name)
    return FinitePatternSFT(alphabet, shape, allowed, name=name)


def _pair_windows(X, Y, shape, xi, yi):
    """All pair windows on the unified shape whose projections are allowed."""
    for px in X.allowed:
        for py in Y.allowed:
            cells = {}
            for i, s in zip(xi, px):
                cells[i] = (s, None)
            for i, s in zip(yi, py):
                if i in cells:
                    cells[i] = (cells[i][0], s)
                else:
                    cells[i] = (None, s)
            # cells not covered by one factor range over that alphabet
            opts = []
            for i in range(len(shape)):
                a, b = cells.get(i, (None, None))
                avals = (a,) if a is not None else X.alphabet
                bvals = (b,) if b is not None else Y.alphabet
                opts.append([(u, v) for u in avals for v in bvals])
            for combo in itertools.product(*opts):
                yield tuple(combo)


@dataclass(frozen=True)
class StripProjection:
    """Height-h strip of a 2D SFT as one-dimensional sofic shifts.

    `columns` is the shift over h-column symbols (bottom-to-top tuples);
    `rows` is its bottom-row projection, a sofic over-approximation of the
    set of rows occurring in the 2D SFT.
    """

    columns: object
    rows: object


def strip_sft(X, h):
    """Present the locally valid Z x [0,h) strips of X as a sofic shift.

    States are (W-1)-column overlaps where W is the shape's x-extent; an
    edge consumes one new column when the full W-column block is locally
    valid.  Returns both the column shift and the bottom-row projection.
    """
    W, H = X.extent
    if h < H:
        raise DomainError("strip height %d below shape extent %d" % (h, H))
    S = len(X.alphabet)
    if S ** h > get_cap("column_alphabet"):
        raise ResourceError(
            "column_alphabet",
            "%d column symbols exceed the cap" % S ** h)
    sp = engine.box_space(X, 0, 0, W, h)
    blocks = []
    for sol in sp.solutions():
        pat = sp.to_pattern(sol).as_dict()
        blocks.append(tuple(tuple(pat[(x, y)] for y in range(h))
                            for x in range(W)))
    states = {}

    def state_id(cols):
        if cols not in states:
            states[cols] = len(states)
        return states[cols]

    col_edges = set()
    row_edges = set()
    for b in blocks:
        src = state_id(b[:-1] if W > 1 else ())
        dst = state_id(b[1:] if W > 1 else ())
        col_edges.add((src, b[-1], dst))
        row_edges.add((src, b[-1][0], dst))
    n = max(len(states), 1)
    columns = SoficShift.from_presentation_graph(n, col_edges)
    rows = SoficShift.from_presentation_graph(n, row_edges,
                                              declared_alphabet=X.alphabet)
    return StripProjection(columns, rows)


def periodic_search(X, p, q):
    """All doubly periodic configurations with periods (p,0) and (0,q),
    as patterns on one fundamental domain [0,p) x [0,q)."""
    if p < 1 or q < 1:
        raise DomainError("periods must be positive")
    sp = engine.torus_space(X, p, q)
    return [sp.to_pattern(sol) for sol in sp.solutions()]


def rule_respects_base(f, max_extra=3):
    """Check f(Y) stays in Y on all base words up to length 2r+1+max_extra.

    Applies the rule to every admissible word long enough to produce output
    and verifies the output is again admissible.  Raises DomainError when
    the table misses an admissible window or produces a word outside the
    base shift.
    """
    Y = f.base
    r = f.radius
    table = f.as_dict()
    for extra in range(max_extra + 1):
        for w in Y.words_of_length(2 * r + 1 + extra):
            for i in range(extra + 1):
                if w[i:i + 2 * r + 1] not in table:
                    raise DomainError(
                        "rule table misses admissible window %r"
                        % (w[i:i + 2 * r + 1],))
            out = f.apply_row(w)
            if not Y.contains_word(out):
                raise DomainError(
                    "rule output %r leaves the base shift" % (out,))
    return True


def ca_spacetime_sft(Y, f, name=None):
    """The spacetime SFT of a cellular automaton running downward.

    Configurations stack rows of the base shift with each row the f-image
    of the row above.  Rows are constrained through their length-(2r+1)
    windows, which is exact when Y is a (2r+1)-step SFT and otherwise a
    local over-approximation of Y-membership.
    """
    rule_respects_base(f)
    r = f.radius
    L = 2 * r + 1
    table = f.as_dict()
    words = Y.words_of_length(L)
    shape = tuple((dx, dy) for dx in range(-r, r + 1) for dy in (0, 1))
    allowed = set()
    for t in words:
        img = table[t]
        for b in words:
            if b[r] != img:
                continue
            win = []
            for i in range(L):
                win.append(b[i])
                win.append(t[i])
            allowed.add(tuple(win))
    alphabet = tuple(Y.alphabet)
    return FinitePatternSFT(alphabet, shape, frozenset(allowed), name=name)


def extract_ca(X, r):
    """Recover a radius-r map sending each row to the row below, if any.

    X must have vertical shape extent 2.  Enumerates locally valid 2-row
    stacks wide enough to contain a full window, reads off (top window ->
    bottom center) entries, and returns a CARule over the strip projection's
    row shift.  Returns None when two stacks disagree on the center or some
    admissible row window never appears above a valid completion.
    """
    W, H = X.extent
    if H != 2:
        raise DomainError("vertical shape extent must be 2, got %d" % H)
    L = 2 * r + 1
    width = max(L, W)
    if width % 2 != L % 2:
        width += 1
    pad = (width - L) // 2
    strip = strip_sft(X, 2)
    Y = strip.rows
    sp = engine.box_space(X, 0, 0, width, 2)
    seen = {}
    for sol in sp.solutions():
        pat = sp.to_pattern(sol).as_dict()
        top = tuple(pat[(x, 1)] for x in range(pad, pad + L))
        center = pat[(pad + r, 0)]
        seen.setdefault(top, set()).add(center)
    table = {}
    for w in Y.words_of_length(L):
        centers = seen.get(w, ())
        if len(centers) != 1:
            return None
        table[w] = next(iter(centers))
    return CARule(Y, r, table)
