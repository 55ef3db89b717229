"""Structured macro language over counter machines.

Programs are nested lists or tuples:

    ("seq", stmt, ...)          run statements in order
    ("loop", stmt, ...)         repeat body until a break
    ("break",)                  leave the innermost loop
    ("if-zero", i, then, else)  branch on counter i == 0
    ("if-pos", i, then, else)   branch on counter i > 0
    ("choose", a, b)            nondeterministic branch, both always enabled
    ("inc", i) / ("dec", i)     move counter i
    ("nop", t)                  t idle steps, t >= 1
    ("accept",)                 enter the final state
    ("reject",)                 enter a stuck non-final state

Every construct costs a fixed number of steps regardless of counter values
(branch arms cost their own bodies plus one joining step), so arms padded
with nop take equal time. Falling off the end of the program accepts.
"""

from .core import CounterMachine, Transition
from ..errors import DomainError


class _Builder:
    def __init__(self, k):
        self.k = k
        self.n = 0
        self.delta = []
        self.states = []
        self.used_reject = False

    def fresh(self):
        name = "s%d" % self.n
        self.n += 1
        self.states.append(name)
        return name

    def edge(self, src, kind, counter, arg, dst):
        self.delta.append(Transition(src, kind, counter, arg, dst))

    def counter(self, i, where):
        if not isinstance(i, int) or not 1 <= i <= self.k:
            raise DomainError("counter %r out of range in %s" % (i, where))
        return i


def _normalize(prog):
    if isinstance(prog, str):
        return (prog,)
    if isinstance(prog, (list, tuple)) and prog and isinstance(prog[0], str):
        return tuple(prog)
    raise DomainError("malformed macro statement: %r" % (prog,))


def _compile(b, prog, entry, loop_exit):
    """Emit transitions for prog starting at entry; returns the fall-through
    state, a fresh orphan when the statement never falls through."""
    prog = _normalize(prog)
    op = prog[0]
    if op == "seq":
        cur = entry
        for stmt in prog[1:]:
            cur = _compile(b, stmt, cur, loop_exit)
        return cur
    if op == "loop":
        exit_state = b.fresh()
        tail = entry
        for stmt in prog[1:]:
            tail = _compile(b, stmt, tail, exit_state)
        b.edge(tail, "move", 1, 0, entry)
        return exit_state
    if op == "break":
        if loop_exit is None:
            raise DomainError("break outside loop")
        b.edge(entry, "move", 1, 0, loop_exit)
        return b.fresh()
    if op in ("if-zero", "if-pos"):
        if len(prog) != 4:
            raise DomainError("%s takes a counter and two arms" % op)
        i = b.counter(prog[1], op)
        zero_first = op == "if-zero"
        a_head, b_head, join = b.fresh(), b.fresh(), b.fresh()
        b.edge(entry, "test", i, "Z" if zero_first else "P", a_head)
        b.edge(entry, "test", i, "P" if zero_first else "Z", b_head)
        for head, arm in ((a_head, prog[2]), (b_head, prog[3])):
            tail = _compile(b, arm, head, loop_exit)
            b.edge(tail, "move", 1, 0, join)
        return join
    if op == "choose":
        if len(prog) != 3:
            raise DomainError("choose takes two arms")
        a_head, b_head, join = b.fresh(), b.fresh(), b.fresh()
        b.edge(entry, "move", 1, 0, a_head)
        b.edge(entry, "move", 1, 0, b_head)
        for head, arm in ((a_head, prog[1]), (b_head, prog[2])):
            tail = _compile(b, arm, head, loop_exit)
            b.edge(tail, "move", 1, 0, join)
        return join
    if op == "inc" or op == "dec":
        i = b.counter(prog[1], op)
        nxt = b.fresh()
        b.edge(entry, "move", i, 1 if op == "inc" else -1, nxt)
        return nxt
    if op == "nop":
        t = prog[1]
        if not isinstance(t, int) or t < 1:
            raise DomainError("nop takes a positive step count")
        cur = entry
        for _ in range(t):
            nxt = b.fresh()
            b.edge(cur, "move", 1, 0, nxt)
            cur = nxt
        return cur
    if op == "accept":
        b.edge(entry, "move", 1, 0, "acc")
        return b.fresh()
    if op == "reject":
        b.used_reject = True
        b.edge(entry, "move", 1, 0, "rej")
        return b.fresh()
    raise DomainError("unknown macro construct: %r" % (op,))


def compile_macro(prog, k=1):
    """Compile a macro program into a k-counter machine. The final state is
    "acc"; "rej" is a stuck non-final sink."""
    if k < 1:
        raise DomainError("macro machines need at least one counter")
    b = _Builder(k)
    entry = b.fresh()
    tail = _compile(b, prog, entry, None)
    b.edge(tail, "move", 1, 0, "acc")
    states = b.states + ["acc"] + (["rej"] if b.used_reject else [])
    return CounterMachine(k, tuple(states), tuple(b.delta), entry, "acc")
