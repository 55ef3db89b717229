"""Nondeterministic counter machines.

A machine is (k, states, delta, initial, final). Transitions either test a
counter against zero/positive or move it by -1/0/+1. A decrement is enabled
only when the counter is positive, so the step relation is total on valid
configurations and never goes below zero.
"""

from dataclasses import dataclass, field
from functools import lru_cache

from ..caps import get_cap
from ..errors import DomainError, ResourceError


@dataclass(frozen=True)
class Transition:
    src: str
    kind: str  # "test" | "move"
    counter: int  # 1-based
    arg: object  # "Z"/"P" for test, -1/0/+1 for move
    dst: str

    def sort_key(self):
        return (self.src, self.kind, self.counter, str(self.arg), self.dst)


@dataclass(frozen=True)
class Config:
    state: str
    counters: tuple

    def __repr__(self):
        return "(%s,%s)" % (self.state, list(self.counters))


@dataclass(frozen=True)
class CounterMachine:
    k: int
    states: tuple
    delta: tuple
    initial: str
    final: str
    interior: frozenset = field(default_factory=frozenset)  # gadget states
    start: tuple = None  # counter values at the start, zeros when absent

    def __post_init__(self):
        names = set(self.states)
        if self.initial not in names or self.final not in names:
            raise DomainError("initial/final must be declared states")
        if self.start is not None and len(self.start) != self.k:
            raise DomainError("start values must list one value per counter")
        for t in self.delta:
            if t.src not in names or t.dst not in names:
                raise DomainError("transition uses undeclared state: %r" % (t,))
            if not 1 <= t.counter <= self.k:
                raise DomainError("counter index out of range: %r" % (t,))
            if t.kind == "test" and t.arg not in ("Z", "P"):
                raise DomainError("test arg must be Z or P: %r" % (t,))
            if t.kind == "move" and t.arg not in (-1, 0, 1):
                raise DomainError("move arg must be -1, 0 or +1: %r" % (t,))
            if t.kind not in ("test", "move"):
                raise DomainError("unknown transition kind: %r" % (t,))
            if t.src == self.final:
                raise DomainError("final state must have no outgoing transitions")

    def start_config(self):
        values = self.start if self.start is not None else (0,) * self.k
        return Config(self.initial, tuple(values))

    def outgoing(self, state):
        return _outgoing_map(self).get(state, ())

    def validate_warnings(self):
        """Heuristic static warnings: decrements not obviously guarded by a
        positivity test on the same counter immediately upstream."""
        guarded = {
            (t.dst, t.counter) for t in self.delta if t.kind == "test" and t.arg == "P"
        }
        warnings = []
        for t in self.delta:
            if t.kind == "move" and t.arg == -1:
                if (t.src, t.counter) not in guarded:
                    warnings.append("unguarded decrement: %r" % (t,))
        return warnings


@lru_cache(maxsize=256)
def _outgoing_map(M):
    by_src = {}
    for t in sorted(M.delta, key=Transition.sort_key):
        by_src.setdefault(t.src, []).append(t)
    return {src: tuple(ts) for src, ts in by_src.items()}


def _enabled(t, config):
    if t.src != config.state:
        return False
    value = config.counters[t.counter - 1]
    if t.kind == "test":
        return value == 0 if t.arg == "Z" else value > 0
    if t.arg == -1:
        return value > 0
    return True


def _apply(t, config):
    if t.kind == "test":
        return Config(t.dst, config.counters)
    c = list(config.counters)
    c[t.counter - 1] += t.arg
    return Config(t.dst, tuple(c))


def apply_transition(t, config):
    """Configuration after taking t; the caller checks enabledness."""
    return _apply(t, config)


def enabled_transitions(M, config):
    return [t for t in M.outgoing(config.state) if _enabled(t, config)]


def successors(M, config):
    """All configurations reachable in one step."""
    return {_apply(t, config) for t in enabled_transitions(M, config)}


def predecessors(M, config):
    """All configurations with `config` among their successors, by inverting
    each transition form."""
    out = set()
    for t in M.delta:
        if t.dst != config.state:
            continue
        value = config.counters[t.counter - 1]
        if t.kind == "test":
            if (t.arg == "Z") == (value == 0):
                out.add(Config(t.src, config.counters))
        else:
            before = value - t.arg
            if before < 0:
                continue
            c = list(config.counters)
            c[t.counter - 1] = before
            out.add(Config(t.src, tuple(c)))
    return out


@dataclass
class Trace:
    configs: list
    steps: list  # transitions taken
    choices: list  # successor indices consumed at branch points
    stopped: str  # "steps" | "stuck" | "needs-choice"

    @property
    def final(self):
        return self.configs[-1]

    def __len__(self):
        return len(self.steps)


def run_bounded(M, steps, guidance=None, cap=None, start=None):
    """Traces of length <= steps from the start configuration.

    guidance None: every maximal trace (resource error past the cap).
    guidance list: the single trace following the given branch indices;
    deterministic steps consume no guidance.
    """
    if cap is None:
        cap = get_cap("enum_results")
    c0 = start if start is not None else M.start_config()
    if guidance is not None:
        cfg = c0
        trace = Trace([cfg], [], [], "steps")
        gi = 0
        for _ in range(steps):
            opts = enabled_transitions(M, cfg)
            if not opts:
                trace.stopped = "stuck"
                break
            if len(opts) == 1:
                t = opts[0]
            else:
                if gi >= len(guidance):
                    trace.stopped = "needs-choice"
                    break
                t = opts[guidance[gi]]
                trace.choices.append(guidance[gi])
                gi += 1
            cfg = _apply(t, cfg)
            trace.steps.append(t)
            trace.configs.append(cfg)
        return [trace]

    done = []
    frontier = [Trace([c0], [], [], "steps")]
    for _ in range(steps):
        nxt = []
        for tr in frontier:
            opts = enabled_transitions(M, tr.final)
            if not opts:
                tr.stopped = "stuck"
                done.append(tr)
                continue
            for i, t in enumerate(opts):
                branch = Trace(
                    tr.configs + [_apply(t, tr.final)],
                    tr.steps + [t],
                    tr.choices + ([i] if len(opts) > 1 else []),
                    "steps",
                )
                nxt.append(branch)
            if len(done) + len(nxt) > cap:
                raise ResourceError(
                    "enum_results", "trace enumeration exceeded cap %d" % cap
                )
        frontier = nxt
        if not frontier:
            break
    return done + frontier
