"""Built-in example tilesets.

grid_shift and quarter_plane read their allowed 2x2 windows off embedded
sample configurations.  broken_cone is the spacetime SFT of a bouncing-arrow
cellular automaton on a one-dimensional base shift.  diamond_shift encodes
nested diamond pairs on a dedicated line with decrement signals; its allowed
windows are harvested from painted sample configurations.
"""

from ..errors import DomainError
from ..onedim import SoficShift
from .ops import ca_spacetime_sft
from .types import CARule, FinitePatternSFT, pattern_from_rows

_SHAPE_2X2 = ((0, 0), (0, 1), (1, 0), (1, 1))

# square grid of side 4 drawn twice, with the dividing lines of 1s and a
# 2 at each crossing; every 2x2 window of an arbitrarily large grid
# configuration already occurs here
GRID_SAMPLE = [
    "1111211112",
    "1112011120",
    "1120011200",
    "1200012000",
    "2000020000",
    "1111211112",
    "1112011120",
    "1120011200",
    "1200012000",
    "2000020000",
]

# a quarter-plane of 0s meeting a quarter-plane of 2s on a lower half of 1s
QUARTER_SAMPLE = [
    "00002222",
    "00002222",
    "00002222",
    "00002222",
    "11111111",
    "11111111",
    "11111111",
    "11111111",
]


def sft_from_sample(rows, name=None):
    """The SFT allowing exactly the 2x2 windows of a sample configuration."""
    P = pattern_from_rows(rows)
    cells = P.as_dict()
    allowed = set()
    for (x, y) in cells:
        if (x + 1, y + 1) in cells:
            allowed.add((cells[(x, y)], cells[(x, y + 1)],
                         cells[(x + 1, y)], cells[(x + 1, y + 1)]))
    alphabet = tuple(sorted(set(cells.values())))
    return FinitePatternSFT(alphabet, _SHAPE_2X2, frozenset(allowed),
                            name=name)


def grid_shift():
    """Square grids of every size: 0-cells fenced by lines of 1s with 2s at
    the crossings.  The rectangles are forced to be squares."""
    return sft_from_sample(GRID_SAMPLE, name="grid_shift")


def quarter_plane():
    """A quarter-plane of 0s and one of 2s over a half-plane of 1s."""
    return sft_from_sample(QUARTER_SAMPLE, name="quarter_plane")


# -- bouncing-arrow automaton -----------------------------------------------

ARROW_ALPHABET = ("0", "ℓ", "←", "→", "r", "1")

_L = "ℓ"
_LEFT = "←"
_RIGHT = "→"


def arrow_base():
    """Rows of the form 0* l* d r* 1* with exactly one arrow d.

    Presented as a walk graph whose states remember which block the row is
    in; the arrow may be preceded by 0s and ls and followed by rs and 1s.
    """
    edges = {
        (0, "0", 0), (0, _L, 1), (1, _L, 1),
        (0, _LEFT, 2), (0, _RIGHT, 2), (1, _LEFT, 2), (1, _RIGHT, 2),
        (2, "r", 3), (2, "1", 4), (3, "r", 3), (3, "1", 4), (4, "1", 4),
    }
    return SoficShift.from_presentation_graph(5, edges,
                                              declared_alphabet=ARROW_ALPHABET)


def arrow_row(a, d, b, pad=8):
    """The row 0^pad l^a d r^b 1^pad as a symbol tuple."""
    if d not in (_LEFT, _RIGHT):
        raise DomainError("arrow must be one of %r" % ((_LEFT, _RIGHT),))
    return ("0",) * pad + (_L,) * a + (d,) + ("r",) * b + ("1",) * pad


def arrow_step(a, d, b):
    """One move of the bouncing arrow: the (a, d, b) triple of the next row.

    The arrow walks left eating two ls per step and growing the r block by
    one; at the left wall it turns and walks right eating three rs per step
    and growing the l block by two; at the right wall it turns again.  The
    left border of the l-block never moves, the right border of the r-block
    moves one step left per row except when a right-walking arrow turns.
    """
    if d == _LEFT:
        if a >= 2:
            return (a - 2, _LEFT, b + 1)
        if b == 0:
            return (0, _RIGHT, 0)
        return (a, _RIGHT, b - 1)
    if b >= 3:
        return (a + 2, _RIGHT, b - 3)
    return (a, _LEFT, 0)


def _arrow_image(a, d, b, pad):
    """The full successor row of 0^pad l^a d r^b 1^..., same length."""
    n = pad + a + 1 + b + pad
    a2, d2, b2 = arrow_step(a, d, b)
    core = (_L,) * a2 + (d2,) + ("r",) * b2
    return ("0",) * pad + core + ("1",) * (n - pad - len(core))


ARROW_RADIUS = 3


def arrow_rule():
    """The local rule of the bouncing arrow, radius 3.

    Derived by sliding a window over enough sample rows and their images to
    saturate every admissible window; an inconsistency would mean the step
    function is not radius-3 local, so it is asserted away.
    """
    Y = arrow_base()
    r = ARROW_RADIUS
    pad = 2 * r + 4
    table = {}
    for d in (_LEFT, _RIGHT):
        for a in range(0, 2 * r + 7):
            for b in range(0, 2 * r + 7):
                row = arrow_row(a, d, b, pad)
                img = _arrow_image(a, d, b, pad)
                for p in range(len(row) - 2 * r):
                    win = row[p:p + 2 * r + 1]
                    out = img[p + r]
                    if table.setdefault(win, out) != out:
                        raise DomainError(
                            "window %r maps two ways; radius too small"
                            % (win,))
                    table[win] = out
    return CARule(Y, r, table)


def broken_cone():
    """Spacetime SFT of the bouncing arrow, running downward."""
    return ca_spacetime_sft(arrow_base(), arrow_rule(), name="broken_cone")


# -- nested diamonds on a dedicated line ------------------------------------

# upper-half symbols: regions by nesting depth, diamond edges, the red
# decrement signal (S*) and its overlaps with blue edges and corners
_UP_REGION = ("s0", "s1", "s2")
_UP_SIG = {"s0": "S0", "s1": "S1",
           "B/": "SB/", "B\\": "SB\\", "BC": "SBC"}
# lower-half mirror: blue decrement signal (Z*) over red edges and corners
_DN_REGION = ("t0", "t1", "t2")
_DN_SIG = {"t0": "Z0", "t1": "Z1",
           "r/": "Zr/", "r\\": "Zr\\", "rc": "Zrc"}

DIAMOND_ALPHABET = (
    "s0", "s1", "s2", "R/", "R\\", "B/", "B\\", "RC", "BC",
    "S0", "S1", "SB/", "SB\\", "SBC",
    "t0", "t1", "t2", "r/", "r\\", "b/", "b\\", "rc", "bc",
    "Z0", "Z1", "Zr/", "Zr\\", "Zrc",
    "out", "BLo", "gbl", "RLi", "ib", "RRi", "gbr", "BRo",
    "RLo", "grl", "BLi", "ir", "BRi", "grr", "RRo",
)


def _paint_diamond(canvas, X, s, color):
    """Edges and top/bottom corners of a size-s diamond with left line
    corner at x=X.  Line cells are painted separately."""
    up = {"R": ("R/", "R\\", "RC"), "B": ("B/", "B\\", "BC")}[color]
    dn = {"R": ("r/", "r\\", "rc"), "B": ("b/", "b\\", "bc")}[color]
    for j in range(1, s):
        canvas[(X + j, j)] = up[0]
        canvas[(X + 2 * s - j, j)] = up[1]
        canvas[(X + j, -j)] = dn[0]
        canvas[(X + 2 * s - j, -j)] = dn[1]
    canvas[(X + s, s)] = up[2]
    canvas[(X + s, -s)] = dn[2]


def _inside(X, s, x, y):
    j = abs(y)
    return j < s and X + j < x < X + 2 * s - j


def _paint_config(pairs, gap=2, pad=6):
    """A full sample configuration as a cell dict.

    pairs: list of (red_size, blue_size, inner_left_gap); red sizes must
    decrease and blue sizes increase by exactly 1 left to right, matching
    the decrement signals.  Returns (canvas, x_range, y_range).
    """
    height = max([r + 2 for r, b, _ in pairs]
                 + [b + 2 for r, b, _ in pairs] + [3])
    spans = []
    x = pad
    geoms = []
    for r, b, gl in pairs:
        outer, inner = max(r, b), min(r, b)
        if r == b:
            raise DomainError("equal sizes would overlap completely")
        if not 1 <= gl <= 2 * (outer - inner) - 1:
            raise DomainError("inner diamond does not fit")
        L = x
        geoms.append((L, r, b, gl))
        x = L + 2 * outer + 1 + gap
        spans.append((L, L + 2 * outer))
    width = x - gap + pad
    canvas = {}
    for cx in range(width):
        for cy in range(1, height + 1):
            canvas[(cx, cy)] = "s0"
            canvas[(cx, -cy)] = "t0"
        canvas[(cx, 0)] = "out"
    # regions by nesting depth
    for L, r, b, gl in geoms:
        outer, inner = max(r, b), min(r, b)
        for cx in range(L, L + 2 * outer + 1):
            for cy in list(range(1, height + 1)) + \
                    list(range(-height, 0)):
                depth = _inside(L, outer, cx, cy) + \
                    _inside(L + gl, inner, cx, cy)
                if depth:
                    reg = _UP_REGION if cy > 0 else _DN_REGION
                    canvas[(cx, cy)] = reg[depth]
    # line cells and edges
    for L, r, b, gl in geoms:
        outer, inner = max(r, b), min(r, b)
        blue_outer = b > r
        oc, ic = ("B", "R") if blue_outer else ("R", "B")
        _paint_diamond(canvas, L, outer, oc)
        _paint_diamond(canvas, L + gl, inner, ic)
        names = (("BLo", "gbl", "RLi", "ib", "RRi", "gbr", "BRo")
                 if blue_outer else
                 ("RLo", "grl", "BLi", "ir", "BRi", "grr", "RRo"))
        lc, gi, li, mid, ri, go, rc_ = names
        canvas[(L, 0)] = lc
        for cx in range(L + 1, L + gl):
            canvas[(cx, 0)] = gi
        canvas[(L + gl, 0)] = li
        for cx in range(L + gl + 1, L + gl + 2 * inner):
            canvas[(cx, 0)] = mid
        canvas[(L + gl + 2 * inner, 0)] = ri
        for cx in range(L + gl + 2 * inner + 1, L + 2 * outer):
            canvas[(cx, 0)] = go
        canvas[(L + 2 * outer, 0)] = rc_
    # decrement signals: red chain rightward above, blue chain leftward below
    red = [(L + (0 if r > b else gl) + r, r) for L, r, b, gl in geoms]
    blue = [(L + (0 if b > r else gl) + b, b) for L, r, b, gl in geoms]
    segs = []
    segs.append([(cx, red[0][1] + 1) for cx in range(0, red[0][0] + 1)])
    for i in range(len(red)):
        end = red[i + 1][0] if i + 1 < len(red) else width - 1
        segs.append([(cx, red[i][1])
                     for cx in range(red[i][0] + 1, end + 1)])
    for cells in segs:
        for c in cells:
            canvas[c] = _UP_SIG[canvas[c]]
    segs = []
    segs.append([(cx, -(blue[-1][1] + 1))
                 for cx in range(blue[-1][0], width)])
    for i in range(len(blue) - 1, -1, -1):
        end = blue[i - 1][0] if i > 0 else 0
        segs.append([(cx, -blue[i][1])
                     for cx in range(end, blue[i][0])])
    for cells in segs:
        for c in cells:
            canvas[c] = _DN_SIG[canvas[c]]
    return canvas, width, height


def _plain_configs():
    """Degenerate samples: seas, the bare line, unabsorbed signals."""
    out = []
    W, H = 14, 5
    for fill in ("s0", "t0"):
        out.append({(x, y): fill for x in range(W)
                    for y in range(-H, H + 1)})
    base = {}
    for x in range(W):
        for y in range(1, H + 1):
            base[(x, y)] = "s0"
            base[(x, -y)] = "t0"
        base[(x, 0)] = "out"
    out.append(base)
    for h in (1, 2, 3):
        c = dict(base)
        for x in range(W):
            c[(x, h)] = "S0"
        out.append(c)
        c = dict(base)
        for x in range(W):
            c[(x, -h)] = "Z0"
        out.append(c)
        c = {(x, y): "s0" for x in range(W) for y in range(-H, H + 1)}
        for x in range(W):
            c[(x, h)] = "S0"
        out.append(c)
    return out


def _diamond_samples():
    """Painted configurations covering the local window vocabulary."""
    samples = list(_plain_configs())

    def add(pairs, gap=2):
        try:
            canvas, _, _ = _paint_config(pairs, gap=gap)
        except DomainError:
            return
        samples.append(canvas)

    for r in range(1, 6):
        for b in range(1, 6):
            if r == b:
                continue
            for gl in range(1, 2 * abs(r - b)):
                add([(r, b, gl)])
    # consecutive pairs: red sizes step down, blue sizes step up, always by
    # exactly 1, never equal within a pair (start from an odd difference)
    chains = [
        [(2, 1, 1), (1, 2, 1)],
        [(3, 2, 1), (2, 3, 1)],
        [(4, 3, 1), (3, 4, 1)],
        [(4, 1, 2), (3, 2, 1), (2, 3, 1)],
        [(4, 1, 5), (3, 2, 1), (2, 3, 1)],
        [(5, 2, 1), (4, 3, 1), (3, 4, 1), (2, 5, 4)],
        [(5, 4, 1), (4, 5, 1)],
    ]
    for pairs in chains:
        for gap in (0, 1, 3):
            add(pairs, gap=gap)
    return samples


def diamond_shift():
    """Nested red/blue diamond pairs on a dedicated horizontal line.

    Diamond edges have slope +-1 and their left/right corners sit on the
    line.  Each pair nests one red and one blue diamond, strictly one
    inside the other.  Every red top corner absorbs a decrement signal
    arriving one tile above it and emits one rightward at its own height,
    so red sizes decrease by exactly 1 to the right; blue bottom corners
    mirror this below the line, leftward.  Allowed 2x2 windows are
    harvested from painted sample configurations.
    """
    allowed = set()
    for canvas in _diamond_samples():
        for (x, y), s in canvas.items():
            if (x + 1, y + 1) in canvas and (x, y + 1) in canvas \
                    and (x + 1, y) in canvas:
                allowed.add((s, canvas[(x, y + 1)],
                             canvas[(x + 1, y)], canvas[(x + 1, y + 1)]))
    return FinitePatternSFT(DIAMOND_ALPHABET, _SHAPE_2X2,
                            frozenset(allowed), name="diamond_shift")


def builtins():
    """The named example tilesets."""
    return {
        "grid_shift": grid_shift(),
        "quarter_plane": quarter_plane(),
        "broken_cone": broken_cone(),
        "diamond_shift": diamond_shift(),
    }
