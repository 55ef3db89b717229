"""Countability of a sofic shift and parse structures for countable ones.

Uncountability is witnessed by a figure-eight: a state of the deterministic
walk graph with two distinct first-return loops, which inject all two-sided
binary sequences. When no figure-eight exists every strongly connected
component is a simple cycle, and every point decomposes as a left-periodic
tail, finitely many pumped cycles joined by bridge words, and a
right-periodic tail; the tuple set enumerates these families from the
condensation.
"""

from collections import deque
from dataclasses import dataclass

from ..caps import get_cap
from ..errors import ResourceError
from .automata import strongly_connected
from .shift import word_str


@dataclass(frozen=True)
class ParseStructure:
    """Families (u0, v1, u1, ..., vm, um) denoting points
    inf^u0 . v1 . u1^n1 . ... . vm . um^inf (interior cycles pumped)."""

    tuples: tuple


@dataclass(frozen=True)
class CountabilityResult:
    countable: bool
    structure: object = None  # ParseStructure when countable
    witness: object = None  # (state, loop word, loop word) otherwise

    def __repr__(self):
        if self.countable:
            return "Countable(%d families)" % len(self.structure.tuples)
        return "Uncountable(witness=%r)" % (self.witness,)


def _scc_data(wg):
    ncomp, comp = strongly_connected(wg.n, wg.succ)
    members = [[] for _ in range(ncomp)]
    for q in range(wg.n):
        members[comp[q]].append(q)
    return ncomp, comp, members


def _internal_edges(wg, comp, q):
    return [(sym, t) for sym, t in sorted(wg.delta[q].items()) if comp[t] == comp[q]]


def _shortest_path_word(wg, comp, src, dst):
    """BFS word from src to dst inside one component."""
    if src == dst:
        return ()
    seen = {src: ()}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for sym, v in sorted(wg.delta[u].items()):
            if comp[v] != comp[src] or v in seen:
                continue
            seen[v] = seen[u] + (sym,)
            if v == dst:
                return seen[v]
            queue.append(v)
    raise AssertionError("unreachable inside an SCC")


def _figure_eight(wg):
    """A state with two distinct first-return loops, or None."""
    ncomp, comp, members = _scc_data(wg)
    for q in range(wg.n):
        internal = _internal_edges(wg, comp, q)
        if len(internal) >= 2:
            (s1, t1), (s2, t2) = internal[0], internal[1]
            loop1 = (s1,) + _shortest_path_word(wg, comp, t1, q)
            loop2 = (s2,) + _shortest_path_word(wg, comp, t2, q)
            return q, word_str(loop1), word_str(loop2)
    return None


def _cycle_word_from(wg, comp, state):
    """Label word around a simple-cycle component, anchored at `state`."""
    word = []
    cur = state
    while True:
        ((sym, nxt),) = _internal_edges(wg, comp, cur)
        word.append(sym)
        cur = nxt
        if cur == state:
            return tuple(word)


def _bridge_routes(wg, comp, is_cycle_comp, src_comp):
    """Direct routes from component src_comp to other cycle components:
    (exit state, word, entry state, target comp). Intermediate states are
    transient (not in any cycle component)."""
    routes = []
    for x in sorted(c for c in range(wg.n) if comp[c] == src_comp):
        stack = [(x, ())]
        while stack:
            u, word = stack.pop()
            for sym, v in sorted(wg.delta[u].items(), reverse=True):
                if u == x and comp[v] == src_comp:
                    continue  # internal edge, not a departure
                cv = comp[v]
                if is_cycle_comp[cv]:
                    routes.append((x, word + (sym,), v, cv))
                else:
                    stack.append((v, word + (sym,)))
    return routes


def countability(X):
    """Countable(ParseStructure) or Uncountable(witness).

    >>> from .shift import parse_shift
    >>> countability(parse_shift(forbidden=["11"], alphabet="01")).countable
    False
    >>> countability(parse_shift("0*1*2*")).countable
    True
    """
    wg = X.walks
    if wg.n == 0:
        return CountabilityResult(True, ParseStructure(()))
    fig8 = _figure_eight(wg)
    if fig8 is not None:
        return CountabilityResult(False, witness=fig8)

    ncomp, comp, members = _scc_data(wg)
    is_cycle_comp = [False] * ncomp
    for c in range(ncomp):
        q = members[c][0]
        if len(members[c]) > 1 or q in wg.delta[q].values():
            is_cycle_comp[c] = True

    routes_from = {
        c: _bridge_routes(wg, comp, is_cycle_comp, c)
        for c in range(ncomp)
        if is_cycle_comp[c]
    }

    cap = get_cap("parse_tuples")
    tuples = []
    # paths through cycle components; state = (entry state of current comp,
    # words accumulated so far)
    for c0 in range(ncomp):
        if not is_cycle_comp[c0]:
            continue
        # anchor choice: route exits for m >= 1, smallest state for m = 0
        base = min(members[c0])
        tuples.append((word_str(_cycle_word_from(wg, comp, base)),))
        stack = [(c0, None, ())]
        while stack:
            cur, entry, acc = stack.pop()
            for x, beta, e, target in routes_from[cur]:
                if entry is None:
                    u_prev = _cycle_word_from(wg, comp, x)
                    alpha = ()
                else:
                    u_prev = _cycle_word_from(wg, comp, entry)
                    alpha = _shortest_path_word(wg, comp, entry, x)
                parts = acc + (word_str(u_prev), word_str(alpha + beta))
                u_here = _cycle_word_from(wg, comp, e)
                tuples.append(parts + (word_str(u_here),))
                if len(tuples) > cap:
                    raise ResourceError(
                        "parse_tuples", "parse-structure enumeration exceeded cap"
                    )
                stack.append((target, e, parts))
    return CountabilityResult(True, ParseStructure(tuple(sorted(tuples))))
