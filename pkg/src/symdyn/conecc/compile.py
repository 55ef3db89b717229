"""Compile a counter machine into a symbolic row relation.

The relation R sends each row to its possible successors one row up.  A
machine step is spread over one sweep: at the left border the head picks an
outgoing transition and starts moving right; at the right border it turns
and walks back, applying the pending counter update when it passes the cell
whose index equals the counter's value; arriving at the left border again it
picks the next transition.  The zone grows by exactly one cell per row.
"""

from dataclasses import dataclass, field

from ..errors import DomainError
from .rows import PRESTART, RowWord
from ..machines.core import Config, Transition


@dataclass(frozen=True)
class SymbolicRowSFT:
    """Row relation of a compiled cone, backed by a counter machine."""

    machine: object

    def base_row(self):
        return RowWord(0, "L0", self.machine.initial, 1, 0, 0, (0,) * self.machine.k)

    def start_rows(self):
        return {PRESTART}

    def successors(self, row):
        return row_successors(self, row)


def compile_cone(machine):
    """Build the symbolic row relation for a counter machine."""
    return SymbolicRowSFT(machine)


def _border_options(S, row):
    """Enabled transitions at a left-border row, with the head each induces.

    Tests are resolved on the spot against the row's counters, so the head
    departs carrying a no-op update (counter 1, delta 0).  Moves depart
    carrying their update.  Returns [(transition, head)] in canonical order.
    """
    M = S.machine
    options = []
    for t in M.outgoing(row.state):
        if t.kind == "test":
            value = row.counters[t.counter - 1]
            if (t.arg == "Z") == (value == 0):
                options.append((t, ("R", t.dst, 1, 0)))
        else:
            options.append((t, ("R", t.dst, t.counter, t.arg)))
    return options


def row_successors(S, row):
    """The set of rows that may sit directly above `row`."""
    if row is PRESTART:
        return {PRESTART, S.base_row()}
    if row.phase == "R":
        if row.m_right >= 1:
            return {RowWord(row.m_left + 2, "R", row.state, row.counter, row.delta,
                            row.m_right - 1, row.counters)}
        return {RowWord(row.m_left, "L1", row.state, row.counter, row.delta,
                        1, row.counters)}
    carry = 1 if row.phase == "L1" else 0
    if row.m_left >= 1:
        pos = row.m_left - 1
        phase, counters = row.phase, row.counters
        if row.counters[row.counter - 1] == pos:
            value = pos + carry * row.delta
            if value < 0:
                return set()
            phase = "L0"
            counters = row.counters[:row.counter - 1] + (value,) + row.counters[row.counter:]
        return {RowWord(pos, phase, row.state, row.counter, row.delta,
                        row.m_right + 2, counters)}
    if carry:
        return set()
    return {RowWord(0, head[0], head[1], head[2], head[3], row.m_right + 1, row.counters)
            for _, head in _border_options(S, row)}


@dataclass
class Simulation:
    """Rows produced by a cone run, with the sweep-to-step alignment.

    `alignment[s]` is the machine configuration at the s-th left-border row;
    entry 0 is the start configuration at the base row.  In row mode
    `border_indices[s]` locates that row inside `rows`.  `stuck` is set when
    the run halts before completing the requested sweeps.
    """

    rows: list = field(default_factory=list)
    border_indices: list = field(default_factory=list)
    alignment: list = field(default_factory=list)
    sweeps: int = 0
    stuck: str = None

    @property
    def border_rows(self):
        if self.rows and self.border_indices:
            return [self.rows[i] for i in self.border_indices]
        return self._border_rows

    _border_rows: list = field(default_factory=list)


def _sweep_closed_form(S, border, head):
    """Jump a whole sweep from one left-border row to the next.

    Width grows from w to 4w + 2.  Returns the next border row, or None when
    the sweep dies (update would go negative, or the carry is never consumed
    because the counter value lies beyond the turning point).
    """
    m_r = border.m_right
    turn_left = 2 * (m_r + 1)
    state, i, d = head[1], head[2], head[3]
    counters = border.counters
    if d != 0:
        if counters[i - 1] > turn_left - 1:
            return None
        value = counters[i - 1] + d
        if value < 0:
            return None
        counters = counters[:i - 1] + (value,) + counters[i:]
    else:
        if counters[i - 1] > turn_left - 1:
            return None
    return RowWord(0, "L0", state, i, d, 4 * m_r + 5, counters)


def simulate(S, guidance=(), sweeps=1, mode="rows"):
    """Run a cone from its base row for a number of completed sweeps.

    `guidance` supplies indices into the canonically sorted successor set,
    consumed only at left-border rows offering two or more successors.  An
    index that picks no available successor raises DomainError naming the
    sweep.  Mode "rows" materialises every row (zone width quadruples per
    sweep, so keep `sweeps` small); mode "sweeps" jumps border to border in
    constant space and leaves `rows` empty.
    """
    base = S.base_row()
    sim = Simulation()
    sim.alignment.append(Config(base.state, base.counters))
    guidance = list(guidance)
    g = 0

    if mode == "sweeps":
        sim._border_rows = [base]
        cur = base
        while sim.sweeps < sweeps:
            options = _border_options(S, cur)
            rows = sorted({RowWord(0, h[0], h[1], h[2], h[3], cur.m_right + 1, cur.counters)
                           for _, h in options}, key=RowWord.sort_key)
            if not rows:
                sim.stuck = "no-successor"
                return sim
            if len(rows) >= 2:
                if g >= len(guidance):
                    sim.stuck = "needs-choice"
                    return sim
                idx = guidance[g]
                g += 1
                if not 0 <= idx < len(rows):
                    raise DomainError(
                        "sweep %d: guidance index %r does not select an enabled choice"
                        % (sim.sweeps + 1, idx))
                chosen = rows[idx]
            else:
                chosen = rows[0]
            nxt = _sweep_closed_form(S, cur, chosen.head)
            if nxt is None:
                sim.stuck = "no-successor"
                return sim
            cur = nxt
            sim.sweeps += 1
            sim._border_rows.append(cur)
            sim.alignment.append(Config(cur.state, cur.counters))
        return sim

    if mode != "rows":
        raise DomainError("mode must be 'rows' or 'sweeps'")
    sim.rows.append(base)
    sim.border_indices.append(0)
    cur = base
    while sim.sweeps < sweeps:
        succ = sorted(row_successors(S, cur), key=RowWord.sort_key)
        if not succ:
            sim.stuck = "no-successor"
            return sim
        if len(succ) >= 2:
            if g >= len(guidance):
                sim.stuck = "needs-choice"
                return sim
            idx = guidance[g]
            g += 1
            if not 0 <= idx < len(succ):
                raise DomainError(
                    "sweep %d: guidance index %r does not select an enabled choice"
                    % (sim.sweeps + 1, idx))
            cur = succ[idx]
        else:
            cur = succ[0]
        sim.rows.append(cur)
        if cur.phase == "L0" and cur.m_left == 0 and len(sim.rows) > 1:
            sim.sweeps += 1
            sim.border_indices.append(len(sim.rows) - 1)
            sim.alignment.append(Config(cur.state, cur.counters))
    return sim
