"""Bounded enumeration, admissibility and directional determinism probes.

These are semi-decision procedures: a Blocked or Counterexample answer is a
certificate, while Extendable / NoCounterexample only report that a bounded
search found nothing, at an explicitly stated window and depth.
"""

from dataclasses import dataclass

from ..errors import DomainError
from . import engine
from .ops import transform
from .types import DeterminismVerdict, LatticeMap, Pattern2D


def enumerate_patterns(X, w, h, depth=0, max_results=None):
    """All w x h patterns on [0,w) x [0,h) that are locally valid and
    depth-extendable, in lexicographic order (top-down raster, alphabet
    order).  depth=0 means locally valid only."""
    sp = engine.box_space(X, 0, 0, w, h)
    pats = [sp.to_pattern(s) for s in sp.solutions(max_results=max_results)]
    if depth > 0:
        pats = [p for p in pats
                if admissibility_probe(X, p, depth).extendable]
    return pats


def count_patterns(X, w, h, depth=0):
    """Number of patterns enumerate_patterns would return."""
    if depth == 0:
        return engine.box_space(X, 0, 0, w, h).count()
    return len(enumerate_patterns(X, w, h, depth))


@dataclass(frozen=True)
class AdmissibilityVerdict:
    """Outcome of an extension search around a pattern.

    `depth` is the margin reached: the requested one when extendable, else
    the largest margin at which a completion still exists (-1 when even the
    pattern's own bounding box cannot be completed).
    """

    extendable: bool
    depth: int

    def __repr__(self):
        tag = "Extendable" if self.extendable else "Blocked"
        return "%s(depth=%d)" % (tag, self.depth)


def _margin_completion(X, P, m):
    bb = P.bbox()
    if bb is None:
        x0, y0, x1, y1 = -m, -m, m, m
    else:
        x0, y0, x1, y1 = bb
        x0 -= m
        y0 -= m
        x1 += m
        y1 += m
    sp = engine.box_space(X, x0, y0, x1 - x0 + 1, y1 - y0 + 1,
                          fixed=P.as_dict())
    return sp.first() is not None


def admissibility_probe(X, P, k):
    """Can P be completed to a locally valid pattern with margin k?

    Extension at a larger margin restricts to one at a smaller margin, so
    the largest achievable margin is found by scanning upward.
    """
    if k < 0:
        raise DomainError("margin must be nonnegative")
    if _margin_completion(X, P, k):
        return AdmissibilityVerdict(True, k)
    best = -1
    for m in range(k):
        if _margin_completion(X, P, m):
            best = m
        else:
            break
    return AdmissibilityVerdict(False, best)


def _egcd(a, b):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def south_map(direction):
    """A determinant-1 lattice map taking the direction's half-plane south.

    The image row coordinate of a cell v is -(v . direction), so the open
    half-plane the direction points into becomes {y < 0} and the level
    lines of the direction become horizontal rows.  The direction vector
    itself lands somewhere in the south half-plane, not necessarily on
    (0,-1).
    """
    vx, vy = direction
    g, s, t = _egcd(vx, vy)
    if g < 0:
        g, s, t = -g, -s, -t
    if g != 1:
        raise DomainError("direction components must be coprime, got %r"
                          % (direction,))
    return LatticeMap(-t, s, -vx, -vy)


def determinism_probe(X, direction, window, depth):
    """Search for a witness that X is not deterministic in a direction.

    The SFT is rotated so the direction's half-plane becomes the south one,
    then one search looks for two locally valid, depth-extendable patterns
    on the probe box [-i,i] x [0,i] (i = window) that agree on rows 1..i
    and differ at the origin.  Both patterns are searched at once: the agreement rows are
    shared cells, the rest is doubled, and one extra constraint forces the
    origin cells apart.  Counterexample patterns are reported in the rotated
    frame, i.e. they are valid for transform(X, south_map(direction)).
    """
    i, k = window, depth
    if i < 1:
        raise DomainError("window must be at least 1")
    if k < 0:
        raise DomainError("depth must be nonnegative")
    A = south_map(direction)
    Xr = transform(X, A)
    codes = engine.sft_codes(Xr)
    shared = {(x, y) for x in range(-i, i + 1) for y in range(1, i + 1)}
    box = [(x, y) for x in range(-i - k, i + k + 1)
           for y in range(-k, i + k + 1)]

    def cid(copy, c):
        return ("s", c) if c in shared else (copy, c)

    cells = []
    for y in range(i + k, -k - 1, -1):
        for x in range(-i - k, i + k + 1):
            c = (x, y)
            if c in shared:
                cells.append(("s", c))
            else:
                cells.append(("a", c))
                cells.append(("b", c))
    windows = []
    seen = set()
    for copy in ("a", "b"):
        for cs, _ in engine.geometric_windows(Xr, box, codes):
            ids = tuple(cid(copy, c) for c in cs)
            if ids not in seen:
                seen.add(ids)
                windows.append((ids, codes))
    S = Xr.alphabet
    differ = engine.pack_codes(
        S, [(u, v) for u in S for v in S if u != v], 2)
    windows.append(((("a", (0, 0)), ("b", (0, 0))), differ))
    sp = engine.SearchSpace(S, cells, windows)
    sol = sp.first()
    if sol is None:
        return DeterminismVerdict(tuple(direction), i, k, None)
    probe_box = [(x, y) for x in range(-i, i + 1) for y in range(0, i + 1)]
    pa = sp.to_pattern(sol, keep={cid("a", c): c for c in probe_box})
    pb = sp.to_pattern(sol, keep={cid("b", c): c for c in probe_box})
    return DeterminismVerdict(tuple(direction), i, k, (pa, pb))
