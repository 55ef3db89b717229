"""Topological derivative and rank chain of a sofic shift.

A word belongs to the derivative's language iff its cylinder is infinite,
which happens iff it has a run starting at a state with infinitely many
left tails or ending at a state with infinitely many right tails. Both
state properties are decidable by the ray criterion, so the derivative is
again sofic and is built as an explicit presentation.
"""

from dataclasses import dataclass

from ..errors import ResourceError
from .cylinders import has_infinite_rays, reverse_subset_graph
from .shift import SoficShift, equal_shifts


def _tail_rich_states(X):
    """(left_rich, right_rich): states of the walk graph with infinitely many
    distinct left (resp. right) tail label sequences."""
    wg = X.walks
    right_rich = {q for q in range(wg.n) if has_infinite_rays(wg.delta, [q])}
    left_rich = set()
    for p in range(wg.n):
        rsucc = reverse_subset_graph(wg, [p])
        if has_infinite_rays(rsucc, [0]):
            left_rich.add(p)
    return left_rich, right_rich


def derivative(X):
    """The shift X minus its isolated points.

    >>> from .shift import parse_shift, equal_shifts
    >>> equal_shifts(derivative(parse_shift("0*10*")), parse_shift("0*"))
    True
    """
    wg = X.walks
    if wg.n == 0:
        return SoficShift.empty(X.alphabet)
    left_rich, right_rich = _tail_rich_states(X)
    # two copies of the walk graph: copy 0 accepts runs from a left-rich
    # state, copy 1 accepts runs into a right-rich state
    n = 2 * wg.n
    edges = set()
    for q in range(wg.n):
        for sym, t in wg.delta[q].items():
            edges.add((q, sym, t))
            edges.add((wg.n + q, sym, wg.n + t))
    initials = set(left_rich) | {wg.n + q for q in range(wg.n)}
    finals = set(range(wg.n)) | {wg.n + q for q in right_rich}
    return SoficShift.from_nfa(n, edges, initials, finals, X.alphabet)


@dataclass
class RankReport:
    chain: list  # [X^(0), ..., X^(rank)], empty for the empty shift
    rank: int
    ranked: bool


def rank_chain(X, max_steps=4096):
    """Iterate the derivative to its fixpoint.

    rank = number of strict derivative steps; ranked = the fixpoint is empty.
    """
    if X.is_empty():
        return RankReport([], 0, True)
    chain = [X]
    for _ in range(max_steps):
        nxt = derivative(chain[-1])
        if equal_shifts(nxt, chain[-1]):
            return RankReport(chain, len(chain) - 1, chain[-1].is_empty())
        chain.append(nxt)
    raise ResourceError("monoid_size", "rank chain failed to stabilize")
