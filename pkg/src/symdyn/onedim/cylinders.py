"""Exact cylinder cardinality.

The cylinder of a word w is {x in X : x[0..|w|) = w}. Decompose each point
as (left tail, w-run, right tail) over the deterministic walk graph. Right
tails from a state q are label-distinct infinite paths; there are infinitely
many iff a branching state is reachable from a cycle reachable from q.
Left tails are made label-distinct by determinizing the reversed graph from
the set of w-run start states; the same ray criterion applies there. In the
finite case both sides decompose into eventually periodic rays which are
enumerated and deduplicated via normal forms.
"""

from dataclasses import dataclass, field

from ..caps import get_cap
from ..errors import ResourceError
from .automata import cycle_states, strongly_connected
from .shift import as_word


@dataclass(frozen=True)
class CylinderCount:
    infinite: bool
    count: object = None  # int when finite
    certificate: object = field(default=None, compare=False)

    def __repr__(self):
        if self.infinite:
            return "Infinite"
        return "Finite(%d)" % self.count


def Finite(n):
    return CylinderCount(False, n)


INFINITE = CylinderCount(True)


# -- eventually periodic normal forms ----------------------------------


def primitive_root(c):
    """Shortest word whose power equals c."""
    n = len(c)
    for d in range(1, n + 1):
        if n % d == 0 and c[:d] * (n // d) == c:
            return c[:d]
    return c


def normal_right(stem, cycle):
    """Normal form of the right-infinite word stem . cycle^inf."""
    c = primitive_root(tuple(cycle))
    v = list(stem)
    while v and v[-1] == c[-1]:
        c = (c[-1],) + c[:-1]
        v.pop()
    return (tuple(v), c)


def normal_left(stem, cycle):
    """Normal form of the left-infinite word inf^cycle . stem (period on the
    left, stem adjacent to the origin)."""
    c = primitive_root(tuple(cycle))
    v = list(stem)
    while v and v[0] == c[0]:
        c = c[1:] + c[:1]
        v = v[1:]
    return (c, tuple(v))


# -- ray analysis on deterministic labeled graphs ----------------------
# graphs are given as succs: list of {symbol: node}


def _descendants(succs, roots):
    seen = set(roots)
    stack = list(roots)
    while stack:
        u = stack.pop()
        for v in succs[u].values():
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def _cycle_nodes(succs, within):
    idx = sorted(within)
    pos = {u: i for i, u in enumerate(idx)}
    adj = [[pos[v] for v in succs[u].values() if v in within] for u in idx]
    ncomp, comp = strongly_connected(len(idx), adj)
    size = [0] * ncomp
    for i in range(len(idx)):
        size[comp[i]] += 1
    out = set()
    for i, u in enumerate(idx):
        if size[comp[i]] > 1 or u in succs[u].values():
            out.add(u)
    return out


def has_infinite_rays(succs, roots):
    """True iff the set of label-distinct infinite paths from `roots` is
    infinite: some branching node is reachable from a cycle reachable from
    the roots."""
    region = _descendants(succs, roots)
    cyc = _cycle_nodes(succs, region)
    after_cycle = _descendants(succs, cyc) if cyc else set()
    return any(len(succs[u]) >= 2 for u in after_cycle)


def enumerate_rays(succs, root, cap=None):
    """All infinite paths from `root`, as (stem, cycle) label pairs.

    Only valid when has_infinite_rays is false: then every node reachable
    from a cycle continues deterministically, and the branch region is a DAG.
    """
    if cap is None:
        cap = get_cap("ray_count")
    region = _descendants(succs, [root])
    cyc = _cycle_nodes(succs, region)
    tailzone = _descendants(succs, cyc) if cyc else set()

    def tail_from(u):
        # unique continuation: follow single edges until a node repeats
        seen = {u: 0}
        syms = []
        cur = u
        while True:
            (sym, nxt), = succs[cur].items()
            syms.append(sym)
            if nxt in seen:
                j = seen[nxt]
                return tuple(syms[:j]), tuple(syms[j:])
            seen[nxt] = len(syms)
            cur = nxt

    out = []
    stack = [(root, ())]
    while stack:
        u, prefix = stack.pop()
        if u in tailzone:
            stem, cycle = tail_from(u)
            out.append(normal_right(prefix + stem, cycle))
            if len(out) > cap:
                raise ResourceError("ray_count", "ray enumeration exceeded cap")
            continue
        for sym, v in sorted(succs[u].items(), key=lambda kv: repr(kv[0])):
            stack.append((v, prefix + (sym,)))
    return out


# -- the reversed subset graph ------------------------------------------


def reverse_subset_graph(wg, seed):
    """Determinization of the reversed walk graph from `seed`.

    Nodes are nonempty state subsets; an edge S -a-> T collects every state
    with an a-edge into S. Infinite paths from the seed node are in bijection
    with the left-infinite label sequences readable into the seed set.
    """
    cap = get_cap("subset_states")
    root = frozenset(seed)
    ids = {root: 0}
    succs = [dict()]
    queue = [root]
    while queue:
        cur = queue.pop()
        i = ids[cur]
        for sym in wg.alphabet:
            prev = set()
            for s in cur:
                prev.update(wg.rdelta[s].get(sym, ()))
            if not prev:
                continue
            t = frozenset(prev)
            j = ids.get(t)
            if j is None:
                j = len(ids)
                if j >= cap:
                    raise ResourceError(
                        "subset_states", "reverse determinization exceeded cap"
                    )
                ids[t] = j
                succs.append(dict())
                queue.append(t)
            succs[i][sym] = j
    return succs


def eventual_image(wg, word):
    """States receiving arbitrarily long chains of `word`-steps."""
    fmap = wg.word_map(word)
    img = set(range(wg.n))
    while True:
        nxt = {fmap[p] for p in img if fmap[p] >= 0}
        if nxt == img:
            return img
        img = nxt


def left_ray_states(wg, cyc, stem):
    """States into which the left-infinite word inf^cyc . stem is readable."""
    ev = eventual_image(wg, cyc)
    fmap = wg.word_map(stem)
    return {fmap[p] for p in ev if fmap[p] >= 0}


def cylinder_cardinality(X, w):
    """Exact cardinality of the cylinder of w, Finite(n) or Infinite.

    >>> from .shift import parse_shift
    >>> cylinder_cardinality(parse_shift("0*10*"), "1")
    Finite(1)
    >>> cylinder_cardinality(parse_shift("a*b*c*"), "b")
    Infinite
    """
    w = as_word(w)
    wg = X.walks
    if wg.n == 0:
        return Finite(0)
    fmap = wg.word_map(w)
    starts = [p for p in range(wg.n) if fmap[p] >= 0]
    if not starts:
        return Finite(0)
    targets = sorted({fmap[p] for p in starts})
    for q in targets:
        if has_infinite_rays(wg.delta, [q]):
            return CylinderCount(True, certificate=("right", q))
    rsucc = reverse_subset_graph(wg, starts)
    if has_infinite_rays(rsucc, [0]):
        return CylinderCount(True, certificate=("left", tuple(starts)))
    total = 0
    for rev_stem, rev_cycle in enumerate_rays(rsucc, 0):
        lcyc, lstem = normal_left(rev_stem[::-1], rev_cycle[::-1])
        entered = left_ray_states(wg, lcyc, lstem)
        rights = set()
        for p in entered:
            if fmap[p] >= 0:
                rights.update(enumerate_rays(wg.delta, fmap[p]))
        total += len(rights)
    return Finite(total)
