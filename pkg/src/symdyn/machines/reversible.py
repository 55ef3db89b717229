"""Reversibility analysis and the history-recording transform.

A machine is reversible when every reachable configuration has at most one
predecessor inside the reachable set. to_reversible(M) adds two counters, a
history h and a scratch s, and records at each state with several incoming
transitions which one was used, as a digit appended to h in a fixed base.
One step of M corresponds to one transition or one gadget pass of the result,
with all intermediate states fresh and deterministic.
"""

from dataclasses import dataclass
from collections import deque

from .core import CounterMachine, Transition, predecessors, successors
from ..errors import DomainError


@dataclass
class ReversibilityReport:
    reversible: bool
    explored: int
    counterexample: object  # (config, sorted predecessor list) or None
    static_ok: bool
    static_conflicts: list

    def __repr__(self):
        if self.reversible:
            return "Reversible(explored=%d)" % self.explored
        return "Counterexample(%r)" % (self.counterexample,)


def _inverse_constraints(t):
    """Sign constraints on a target configuration under which the inverse of t
    is applicable, as {counter: 'Z'|'P'}."""
    if t.kind == "test":
        return {t.counter: t.arg}
    if t.arg == 1:
        return {t.counter: "P"}
    return {}


def _inverse_effect(t):
    if t.kind == "move" and t.arg != 0:
        return (t.counter, -t.arg)
    return None


def static_inverse_check(M):
    """Sufficient condition: no two transitions into the same state are
    simultaneously inverse-enabled under any zero/positive sign vector.
    Pairs whose inverses always produce the same predecessor are harmless
    and skipped."""
    conflicts = []
    by_dst = {}
    for t in M.delta:
        by_dst.setdefault(t.dst, []).append(t)
    for dst, ts in sorted(by_dst.items()):
        ts = sorted(ts, key=Transition.sort_key)
        for i in range(len(ts)):
            for j in range(i + 1, len(ts)):
                u, w = ts[i], ts[j]
                if u.src == w.src and _inverse_effect(u) == _inverse_effect(w):
                    continue
                a = _inverse_constraints(u)
                b = _inverse_constraints(w)
                if all(a[c] == b[c] for c in a.keys() & b.keys()):
                    conflicts.append((u, w))
    return conflicts


def reversibility_probe(M, budget=10000):
    """Breadth-first search of reachable configurations, reporting the first
    one with two or more predecessors inside the explored set."""
    conflicts = static_inverse_check(M)
    seen = {M.start_config()}
    queue = deque(seen)
    order = []
    while queue and len(order) < budget:
        cfg = queue.popleft()
        order.append(cfg)
        for nxt in sorted(successors(M, cfg), key=repr):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    explored = set(order)
    for cfg in order:
        preds = sorted(predecessors(M, cfg) & explored, key=repr)
        if len(preds) >= 2:
            return ReversibilityReport(False, len(order), (cfg, preds), False, conflicts)
    return ReversibilityReport(True, len(order), None, not conflicts, conflicts)


def _fresh_prefix(states):
    prefix = "r."
    while any(s.startswith(prefix) for s in states):
        prefix = "_" + prefix
    return prefix


def recording_base(M):
    """Digit base used by the history counter: one above the largest
    in-degree, so every recorded digit is nonzero."""
    indeg = {}
    for t in M.delta:
        indeg[t.dst] = indeg.get(t.dst, 0) + 1
    return max([2] + [indeg[q] + 1 for q in indeg])


def to_reversible(M):
    """History-recording transform.

    The result has k+2 counters: h = k+1, s = k+2. Targets with a single
    incoming transition keep it unchanged. A target q with m >= 2 incoming
    transitions gets one gadget per transition: the original step lands in
    fresh states that drain h into s while multiplying by a global base,
    add the transition's index as a digit, then drain s back into h and
    enter q. Interiors are deterministic, s returns to zero, and distinct
    incoming transitions leave distinct digits, so steps become injective
    on reachable configurations.
    """
    base = recording_base(M)
    h = M.k + 1
    s = M.k + 2
    pre = _fresh_prefix(M.states)

    states = list(M.states)
    used = set(states)
    delta = []
    interior = set()

    def fresh(name):
        st = pre + name
        while st in used:
            st += "'"
        used.add(st)
        states.append(st)
        interior.add(st)
        return st

    by_dst = {}
    for t in sorted(M.delta, key=Transition.sort_key):
        by_dst.setdefault(t.dst, []).append(t)

    for q in sorted(by_dst):
        ts = by_dst[q]
        if len(ts) == 1:
            delta.append(ts[0])
            continue
        # shared unload phase: s holds base*h + digit, drain it back into h
        m0 = fresh("%s.u" % q)
        u1 = fresh("%s.u1" % q)
        u2 = fresh("%s.u2" % q)
        delta.append(Transition(m0, "test", s, "P", u1))
        delta.append(Transition(u1, "move", s, -1, u2))
        delta.append(Transition(u2, "move", h, 1, m0))
        delta.append(Transition(m0, "test", s, "Z", q))
        for j, t in enumerate(ts, start=1):
            # private load phase: drain h, writing base increments of s per unit
            l0 = fresh("%s.%d.l" % (q, j))
            delta.append(Transition(t.src, t.kind, t.counter, t.arg, l0))
            d1 = fresh("%s.%d.d" % (q, j))
            delta.append(Transition(l0, "test", h, "P", d1))
            cur = fresh("%s.%d.d0" % (q, j))
            delta.append(Transition(d1, "move", h, -1, cur))
            for i in range(base):
                nxt = l0 if i == base - 1 else fresh("%s.%d.d%d" % (q, j, i + 1))
                delta.append(Transition(cur, "move", s, 1, nxt))
                cur = nxt
            # digit j, then hand off to the shared unload phase
            cur = l0
            tag = fresh("%s.%d.j0" % (q, j))
            delta.append(Transition(cur, "test", h, "Z", tag))
            cur = tag
            for i in range(j):
                nxt = m0 if i == j - 1 else fresh("%s.%d.j%d" % (q, j, i + 1))
                delta.append(Transition(cur, "move", s, 1, nxt))
                cur = nxt
    start = None if M.start is None else tuple(M.start) + (0, 0)
    return CounterMachine(
        M.k + 2,
        tuple(states),
        tuple(delta),
        M.initial,
        M.final,
        frozenset(M.interior) | frozenset(interior),
        start,
    )
