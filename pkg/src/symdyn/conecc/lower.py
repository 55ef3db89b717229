"""Lower a symbolic row relation to a finite tileset.

Each cell of the plane carries a product symbol: a geometry track over
{0, l, head, r, 1} and one two-valued track {C, 1} per machine counter.  A
row word phi((m_left, head, m_right), counters) becomes the bi-infinite row
with 0s left of the border, l^m_left, the head symbol, r^m_right, then 1s,
with counter track i showing C exactly on cells [0, counters[i-1]).  The
vertical relation is enforced by allowed patterns of height 2 and width 5:
borders and heads move by at most two cells per row, and a counter edge
moves only when the head sits on it, so a width-5 window always sees enough
context.

The allowed set is harvested from representative row pairs.  Window contents
depend only on distances clipped at the window width, so a bounded sample of
zone sizes and counter values saturates the set.  Counter tracks are sampled
concretely only where the window shows a head; elsewhere their possible
contents are a closed set of run patterns added by an exact product step.

Two filters tighten the harvest without touching any run of the machine: a
left-moving head that has already applied its update keeps its counter edge
at offset at least d from itself, and the flags a head still carries at the
left border must match some transition into its state that is compatible
with the counter signs visible there.  Rows violating either bound occur in
no evolution, and dropping them makes every remaining row's predecessor
unique, so the stack relation can also be read downward.
"""

import itertools
import re

from ..caps import get_cap
from ..errors import DomainError, ResourceError
from ..twodim.types import FinitePatternSFT
from .compile import row_successors
from .rows import PRESTART, PHASES, RowWord

WINDOW = 5
_NAME_OK = re.compile(r"^[^|\[\],]+$")


def head_symbol(phase, state, counter, delta):
    return "h[%s,%s,%d,%d]" % (phase, state, counter, delta)


def parse_head(sym):
    if not (sym.startswith("h[") and sym.endswith("]")):
        return None
    fields = sym[2:-1].split(",")
    if len(fields) != 4:
        return None
    phase, state, counter, delta = fields
    return (phase, state, int(counter), int(delta))


def _check_names(M):
    for q in M.states:
        if not _NAME_OK.match(q):
            raise DomainError("state name %r cannot be used in tile symbols" % (q,))


def _geometry_cells(row, lo, hi):
    """Geometry track of `row` on positions [lo, hi)."""
    if row is PRESTART:
        return tuple("0" if x < 0 else "1" for x in range(lo, hi))
    head = head_symbol(*row.head)
    out = []
    for x in range(lo, hi):
        if x < 0:
            out.append("0")
        elif x < row.m_left:
            out.append("l")
        elif x == row.m_left:
            out.append(head)
        elif x <= row.m_left + row.m_right:
            out.append("r")
        else:
            out.append("1")
    return tuple(out)


def _counter_cells(value, lo, hi):
    return tuple("C" if 0 <= x < value else "1" for x in range(lo, hi))


def combine(geometry, tracks):
    """Zip a geometry cell sequence with per-counter track sequences."""
    return tuple("|".join((geometry[i],) + tuple(tr[i] for tr in tracks))
                 for i in range(len(geometry)))


def encode_row(S, row, lo, hi):
    """The combined tile symbols of `row` on positions [lo, hi)."""
    k = S.machine.k
    values = (0,) * k if row is PRESTART else row.counters
    geometry = _geometry_cells(row, lo, hi)
    tracks = [_counter_cells(v, lo, hi) for v in values]
    return combine(geometry, tracks)


def decode_row(S, symbols, lo):
    """Parse combined symbols on positions [lo, lo+len) back to a row.

    The span must show the whole zone plus quiescent margins: at least one
    leading 0 cell and one trailing all-1 cell, with every counter run
    ending inside the span.  Returns a RowWord, PRESTART, or None when the
    cells encode no row.
    """
    k = S.machine.k
    parts = [s.split("|") for s in symbols]
    if any(len(p) != k + 1 for p in parts):
        return None
    if lo > -1 or len(parts) <= -lo:
        return None
    for idx in range(-lo):
        if parts[idx][0] != "0" or any(parts[idx][i] != "1" for i in range(1, k + 1)):
            return None
    body = parts[-lo:]
    geo = [p[0] for p in body]
    if "0" in geo:
        return None
    counters = []
    for i in range(1, k + 1):
        bits = [p[i] for p in body]
        n = 0
        while n < len(bits) and bits[n] == "C":
            n += 1
        if n == len(bits) or any(b == "C" for b in bits[n:]):
            return None
        counters.append(n)
    idx = 0
    m_left = 0
    while idx < len(geo) and geo[idx] == "l":
        m_left += 1
        idx += 1
    if idx >= len(geo):
        return None
    head = parse_head(geo[idx])
    if head is None:
        if m_left == 0 and all(c == "1" for c in geo):
            if any(counters):
                return None
            return PRESTART
        return None
    idx += 1
    m_right = 0
    while idx < len(geo) and geo[idx] == "r":
        m_right += 1
        idx += 1
    if idx >= len(geo) or any(c != "1" for c in geo[idx:]):
        return None
    phase, state, counter, delta = head
    if phase not in PHASES or state not in S.machine.states:
        return None
    if not 1 <= counter <= k or delta not in (-1, 0, 1):
        return None
    return RowWord(m_left, phase, state, counter, delta, m_right, tuple(counters))


def _free_patterns(bo, border_visible, sign):
    """Counter-track window contents available to an unsampled track.

    `bo` leading cells sit left of the border and are forced to 1.  A
    zero-test constraint forbids C entirely; a positive-test constraint
    with the border in view forces at least one C cell.
    """
    width = WINDOW - bo
    if sign == "Z":
        return ("1" * WINDOW,)
    amin = 1 if (sign == "P" and border_visible and width >= 1) else 0
    return tuple("1" * bo + "C" * a + "1" * (WINDOW - bo - a)
                 for a in range(amin, width + 1))


def _slide(records, r_bottom, r_top, span_lo, span_hi, fixed_values=(),
           always_fix=False, sigma=()):
    """Add the 2x5 window records of one row pair to `records`.

    `fixed_values` lists (track, bottom value, top value) for tracks whose
    contents are concrete in this pair; they are recorded only for windows
    that show a head (where track content is actually constrained), that
    contain an actual track change, or for every window when `always_fix`
    is set.
    """
    g_bottom = _geometry_cells(r_bottom, span_lo, span_hi)
    g_top = _geometry_cells(r_top, span_lo, span_hi)
    tracks = [(i, _counter_cells(bv, span_lo, span_hi),
               _counter_cells(tv, span_lo, span_hi))
              for i, bv, tv in fixed_values]
    for off in range(span_hi - span_lo - WINDOW + 1):
        x0 = span_lo + off
        t0b = g_bottom[off:off + WINDOW]
        t0t = g_top[off:off + WINDOW]
        if tracks and (always_fix
                       or any(c.startswith("h[") for c in t0b + t0t)
                       or any(cb[off:off + WINDOW] != ct[off:off + WINDOW]
                              for _, cb, ct in tracks)):
            fixed = tuple((i, cb[off:off + WINDOW], ct[off:off + WINDOW])
                          for i, cb, ct in tracks)
        else:
            fixed = ()
        records.add((t0b, t0t, fixed, sigma, x0 <= 0))


def _inverse_enabled(t, signs):
    """Could `t` have produced a configuration whose counter signs are `signs`?

    `signs` maps counter index to "Z" or "P".  Tests leave counters alone, so
    they must agree with the sign they tested; a move must not have come from
    a negative value.
    """
    if t.kind == "test":
        return signs[t.counter] == t.arg
    if signs[t.counter] == "Z":
        return t.arg <= 0
    return True


def _stale_flags(M, state, signs):
    """Head flags that can lawfully sit on a border row in `state`.

    The flags a head carries at the left border are the ones installed by
    the transition taken one sweep earlier, so they must match some
    transition into `state` that is compatible with the visible counter
    signs.  Pinning them down keeps the border step invertible row by row.
    """
    flags = set()
    for t in M.delta:
        if t.dst == state and _inverse_enabled(t, signs):
            flags.add((1, 0) if t.kind == "test" else (t.counter, t.arg))
    return flags


def _harvest(S, bound):
    """Window records from representative row pairs."""
    M = S.machine
    k = M.k
    records = set()
    sizes = range(0, bound + 1)

    # Sweep-interior pairs: one successor, only the head's track can change.
    for ph in PHASES:
        for q in M.states:
            for i in range(1, k + 1):
                for d in (-1, 0, 1):
                    for m_l in sizes:
                        if ph != "R" and m_l == 0:
                            continue
                        for m_r in sizes:
                            for n in range(0, m_l + bound + 3):
                                # A head that already applied its update keeps
                                # its counter edge at offset >= d; rows below
                                # that bound occur in no evolution and would
                                # make the step ambiguous read downward.
                                if ph == "L0" and n - m_l < d:
                                    continue
                                proxy = tuple(n if j == i - 1 else 0 for j in range(k))
                                r = RowWord(m_l, ph, q, i, d, m_r, proxy)
                                for r2 in row_successors(S, r):
                                    hi = max(r.width, r2.width) + WINDOW
                                    _slide(records, r, r2, -(WINDOW + 1), hi,
                                           fixed_values=((i, n, r2.counters[i - 1]),))

    # Border pairs: a transition fires against the counter signs visible at
    # the border.  Pairs are harvested per full sign vector so that both the
    # chosen transition and the leftover head flags agree with the signs.
    for q in M.states:
        for signs_tuple in itertools.product("ZP", repeat=k):
            signs = {i: signs_tuple[i - 1] for i in range(1, k + 1)}
            sigma = tuple(sorted(signs.items()))
            outs = [t for t in M.outgoing(q)
                    if t.kind != "test" or signs[t.counter] == t.arg]
            if not outs:
                continue
            stale = sorted(_stale_flags(M, q, signs))
            for m_r in sizes:
                if m_r == 0:
                    # Only the base row has an empty right segment, and it
                    # carries the fixed initial flags over zero counters.
                    if q != M.initial or "P" in signs_tuple:
                        continue
                    flag_options = [(1, 0)]
                else:
                    flag_options = stale
                for i, d in flag_options:
                    r = RowWord(0, "L0", q, i, d, m_r, (0,) * k)
                    for t in outs:
                        if t.kind == "test":
                            top = ("R", t.dst, 1, 0)
                        else:
                            top = ("R", t.dst, t.counter, t.arg)
                        r2 = RowWord(0, top[0], top[1], top[2], top[3],
                                     m_r + 1, (0,) * k)
                        _slide(records, r, r2, -(WINDOW + 1),
                               r2.width + WINDOW, sigma=sigma)

    # Start pairs: the pre-start row repeats or hands over to the base row.
    base = S.base_row()
    zeros = tuple((i, 0, 0) for i in range(1, k + 1))
    span = 2 * (WINDOW + 1)
    _slide(records, PRESTART, PRESTART, -(WINDOW + 1), span,
           fixed_values=zeros, always_fix=True)
    _slide(records, PRESTART, base, -(WINDOW + 1), span,
           fixed_values=zeros, always_fix=True)
    return records


def _expand(records, k):
    allowed = set()
    for t0b, t0t, fixed, sigma, border_visible in records:
        bo = 0
        for c in t0b:
            if c != "0":
                break
            bo += 1
        signs = dict(sigma)
        concrete = {i: (cb, ct) for i, cb, ct in fixed}
        options = []
        for i in range(1, k + 1):
            if i in concrete:
                options.append((concrete[i],))
            else:
                pats = _free_patterns(bo, border_visible, signs.get(i))
                options.append(tuple((p, p) for p in pats))
        for combo in itertools.product(*options):
            bottom = combine(t0b, [c[0] for c in combo])
            top = combine(t0t, [c[1] for c in combo])
            window = []
            for dx in range(WINDOW):
                window.append(bottom[dx])
                window.append(top[dx])
            allowed.add(tuple(window))
    return allowed


def tile_alphabet(M):
    """The full product alphabet for M's lowered cone."""
    geometry = ["0", "l", "r", "1"]
    for ph in PHASES:
        for q in M.states:
            for i in range(1, M.k + 1):
                for d in (-1, 0, 1):
                    geometry.append(head_symbol(ph, q, i, d))
    bits = list(itertools.product(*(("C", "1") for _ in range(M.k))))
    return tuple(sorted("|".join((g,) + b) for g in geometry for b in bits))


def lower_to_tiles(S, bound=7):
    """Produce the finite tileset whose vertical pairs realize the row relation.

    The result is an SFT with a height-2, width-5 shape over the product
    alphabet.  Every chain of the row relation gives a valid tiling, and
    every valid two-row stack decodes to a related pair of rows.
    """
    M = S.machine
    _check_names(M)
    alphabet = tile_alphabet(M)
    cap = get_cap("column_alphabet")
    if len(alphabet) > cap:
        raise ResourceError(
            "column_alphabet",
            "lowered alphabet needs %d symbols, cap is %d" % (len(alphabet), cap),
            partial=len(alphabet))
    records = _harvest(S, bound)
    allowed = _expand(records, M.k)
    shape = tuple((dx, dy) for dx in range(WINDOW) for dy in (0, 1))
    return FinitePatternSFT(alphabet, shape, frozenset(allowed), name="cone")
