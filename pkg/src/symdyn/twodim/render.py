"""Deterministic pattern rendering: PNG or SVG, chosen by file extension.

Colors carry the short labels used throughout: W, Gr, DGr, O, DO, R, DR,
LR, G, DG, B, DB, LB, Y, DY.  The same pattern and palette always produce
byte-identical output.
"""

from ..errors import DomainError

COLOR_TABLE = {
    "W": (255, 255, 255),
    "Gr": (150, 150, 150),
    "DGr": (80, 80, 80),
    "O": (255, 165, 0),
    "DO": (200, 110, 0),
    "R": (220, 50, 50),
    "DR": (140, 20, 20),
    "LR": (250, 160, 160),
    "G": (60, 180, 60),
    "DG": (20, 110, 20),
    "B": (70, 90, 230),
    "DB": (20, 30, 140),
    "LB": (160, 190, 250),
    "Y": (240, 220, 40),
    "DY": (170, 150, 10),
}

# symbols picked up in sorted order cycle through these labels, so small
# alphabets like {0,1,2} come out white / gray / red
LABEL_CYCLE = ("W", "Gr", "R", "B", "G", "Y", "O", "LB", "LR",
               "DGr", "DR", "DB", "DG", "DY", "DO")

BACKGROUND = (0, 0, 0)


def _as_rgb(spec):
    if isinstance(spec, str):
        if spec in COLOR_TABLE:
            return COLOR_TABLE[spec]
        if spec.startswith("#") and len(spec) == 7:
            return tuple(int(spec[i:i + 2], 16) for i in (1, 3, 5))
        raise DomainError("unknown color %r" % (spec,))
    rgb = tuple(spec)
    if len(rgb) != 3 or not all(isinstance(v, int) and 0 <= v <= 255
                                for v in rgb):
        raise DomainError("colors are labels, #rrggbb or RGB triples")
    return rgb


def default_palette(symbols):
    """Label assignment for a symbol set, stable under sorting."""
    symbols = sorted(set(symbols), key=lambda s: (repr(type(s)), s))
    return {s: LABEL_CYCLE[i % len(LABEL_CYCLE)]
            for i, s in enumerate(symbols)}


def render(P, path, palette=None, cell=16):
    """Draw a pattern to `path` (.png or .svg), one square per cell.

    `palette` maps symbols to color labels, #rrggbb strings or RGB
    triples; missing symbols get stable defaults.  Cells absent from the
    pattern's bounding box are drawn in the black background color.
    """
    if len(P) == 0:
        raise DomainError("cannot render an empty pattern")
    if cell < 1:
        raise DomainError("cell size must be positive")
    colors = {s: _as_rgb(c)
              for s, c in default_palette(s for _, s in P.cells).items()}
    for s, c in (palette or {}).items():
        colors[s] = _as_rgb(c)
    x0, y0, x1, y1 = P.bbox()
    w, h = x1 - x0 + 1, y1 - y0 + 1
    grid = {}
    for (x, y), s in P.cells:
        grid[(x - x0, y1 - y)] = colors[s]
    if path.endswith(".png"):
        _write_png(path, grid, w, h, cell)
    elif path.endswith(".svg"):
        _write_svg(path, grid, w, h, cell)
    else:
        raise DomainError("unsupported extension: %r" % (path,))
    return path


def _write_png(path, grid, w, h, cell):
    from PIL import Image

    img = Image.new("RGB", (w * cell, h * cell), BACKGROUND)
    px = img.load()
    for (cx, cy), rgb in grid.items():
        for dx in range(cell):
            for dy in range(cell):
                px[cx * cell + dx, cy * cell + dy] = rgb
    img.save(path, format="PNG")


def _write_svg(path, grid, w, h, cell):
    lines = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%d" height="%d">'
        % (w * cell, h * cell),
        '<rect width="%d" height="%d" fill="#%02x%02x%02x"/>'
        % ((w * cell, h * cell) + BACKGROUND),
    ]
    for (cx, cy) in sorted(grid):
        rgb = grid[(cx, cy)]
        lines.append(
            '<rect x="%d" y="%d" width="%d" height="%d" '
            'fill="#%02x%02x%02x"/>'
            % (cx * cell, cy * cell, cell, cell, rgb[0], rgb[1], rgb[2]))
    lines.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")
