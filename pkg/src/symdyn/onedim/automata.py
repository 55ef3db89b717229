"""Finite automaton machinery for factor languages.

A shift is presented by a finite labeled graph whose bi-infinite walks spell
out the shift's points. Finite factor languages are handled as NFAs with
explicit initial/final sets and canonicalized into a minimal partial DFA
(every state accepting, missing edges mean rejection).

Symbols are arbitrary hashable values; parsed regular expressions use
single-character symbols, programmatic constructions may use tuples.
"""

from dataclasses import dataclass

from ..caps import get_cap
from ..errors import DomainError, ResourceError


@dataclass(frozen=True)
class Presentation:
    """Labeled graph, all states implicitly initial and final.

    Invariant (after bi_infinite_core): every state lies on a bi-infinite
    walk, and every alphabet symbol labels at least one edge.
    """

    n: int
    alphabet: tuple
    edges: tuple  # sorted tuples (src, symbol, dst)


@dataclass(frozen=True)
class DFA:
    """Partial deterministic automaton; every state accepts."""

    n: int
    alphabet: tuple
    delta: tuple  # one dict {symbol: state} per state
    root: int  # -1 when n == 0


def sort_symbols(symbols):
    return tuple(sorted(set(symbols), key=lambda s: (repr(type(s)), s)))


class _RegexParser:
    """Recursive-descent parser producing a Thompson epsilon-NFA.

    Dialect: single-character symbols, juxtaposition for concatenation,
    '+' for union, '*' for Kleene star, parentheses; whitespace ignored.
    """

    RESERVED = set("()*+")

    def __init__(self, text):
        self.text = text
        self.pos = 0
        self.n = 0
        self.eps = []
        self.edges = []

    def _new(self):
        s = self.n
        self.n += 1
        return s

    def _peek(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        if self.pos < len(self.text):
            return self.text[self.pos]
        return None

    def parse(self):
        start, end = self._union()
        if self._peek() is not None:
            raise DomainError(
                "syntax error at position %d: unexpected %r"
                % (self.pos, self.text[self.pos])
            )
        return start, end

    def _union(self):
        start, end = self._concat()
        while self._peek() == "+":
            self.pos += 1
            s2, e2 = self._concat()
            ns, ne = self._new(), self._new()
            self.eps += [(ns, start), (ns, s2), (end, ne), (e2, ne)]
            start, end = ns, ne
        return start, end

    def _concat(self):
        frags = []
        while True:
            c = self._peek()
            if c is None or c in ")+":
                break
            frags.append(self._starred())
        if not frags:
            s = self._new()
            return s, s
        start, end = frags[0]
        for s2, e2 in frags[1:]:
            self.eps.append((end, s2))
            end = e2
        return start, end

    def _starred(self):
        c = self._peek()
        if c == "(":
            self.pos += 1
            start, end = self._union()
            if self._peek() != ")":
                raise DomainError(
                    "syntax error at position %d: expected ')'" % self.pos
                )
            self.pos += 1
        elif c == "*":
            raise DomainError("syntax error at position %d: dangling '*'" % self.pos)
        else:
            start, end = self._new(), self._new()
            self.edges.append((start, c, end))
            self.pos += 1
        while self._peek() == "*":
            self.pos += 1
            ns, ne = self._new(), self._new()
            self.eps += [(ns, start), (ns, ne), (end, start), (end, ne)]
            start, end = ns, ne
        return start, end


def regex_nfa(text):
    """Parse `text` and return (n, edges, initials, finals) without epsilons."""
    p = _RegexParser(text)
    start, end = p.parse()
    # epsilon closure
    adj = [[] for _ in range(p.n)]
    for a, b in p.eps:
        adj[a].append(b)
    closure = []
    for s in range(p.n):
        seen = {s}
        stack = [s]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        closure.append(seen)
    out = [[] for _ in range(p.n)]
    for src, sym, dst in p.edges:
        out[src].append((sym, dst))
    edges = set()
    finals = set()
    for s in range(p.n):
        for q in closure[s]:
            for sym, dst in out[q]:
                edges.add((s, sym, dst))
        if end in closure[s]:
            finals.add(s)
    return p.n, edges, {start}, finals


def trim_nfa(n, edges, initials, finals):
    """Keep states reachable from an initial and co-reachable to a final."""
    fwd = [[] for _ in range(n)]
    bwd = [[] for _ in range(n)]
    for src, _, dst in edges:
        fwd[src].append(dst)
        bwd[dst].append(src)

    def reach(seed, adj):
        seen = set(seed)
        stack = list(seed)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    live = reach(initials, fwd) & reach(finals, bwd)
    order = sorted(live)
    remap = {s: i for i, s in enumerate(order)}
    new_edges = {
        (remap[a], sym, remap[b]) for a, sym, b in edges if a in live and b in live
    }
    return (
        len(order),
        new_edges,
        {remap[s] for s in initials if s in live},
        {remap[s] for s in finals if s in live},
    )


def strongly_connected(n, succ):
    """Iterative Tarjan. Returns (count, comp_id); components in reverse
    topological order, so every edge goes from a higher id to a lower or
    equal one."""
    UNSEEN = -1
    index = [UNSEEN] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [UNSEEN] * n
    stack = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != UNSEEN:
            continue
        work = [(root, 0)]
        while work:
            v, pi = work[-1]
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            for i in range(pi, len(succ[v])):
                w = succ[v][i]
                if index[w] == UNSEEN:
                    work[-1] = (v, i + 1)
                    work.append((w, 0))
                    recurse = True
                    break
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recurse:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
            work.pop()
            if work:
                u, _ = work[-1]
                low[u] = min(low[u], low[v])
    return ncomp, comp


def cycle_states(n, edges):
    """States lying on some directed cycle (self-loops included)."""
    succ = [[] for _ in range(n)]
    for a, _, b in edges:
        succ[a].append(b)
    ncomp, comp = strongly_connected(n, succ)
    size = [0] * ncomp
    for s in range(n):
        size[comp[s]] += 1
    on_cycle = set()
    selfloop = {a for a, _, b in edges if a == b}
    for s in range(n):
        if size[comp[s]] > 1 or s in selfloop:
            on_cycle.add(s)
    return on_cycle


def bi_infinite_core(n, edges):
    """Restrict a graph to states lying on bi-infinite walks.

    A state qualifies iff it is reachable from a cycle and can reach a cycle.
    Returns (m, new_edges, old_of_new) with states renumbered.
    """
    cyc = cycle_states(n, edges)
    fwd = [[] for _ in range(n)]
    bwd = [[] for _ in range(n)]
    for a, _, b in edges:
        fwd[a].append(b)
        bwd[b].append(a)

    def closure(seed, adj):
        seen = set(seed)
        stack = list(seed)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    live = closure(cyc, fwd) & closure(cyc, bwd)
    order = sorted(live)
    remap = {s: i for i, s in enumerate(order)}
    new_edges = tuple(
        sorted(
            (remap[a], sym, remap[b])
            for a, sym, b in edges
            if a in live and b in live
        )
    )
    return len(order), new_edges, order


def presentation_from_nfa(n, edges, initials, finals):
    """Presentation of B^{-1}(L) for the language L of the given NFA.

    The bi-extendable factors of L are exactly the path words of the trimmed
    graph's bi-infinite core, so the core (all states initial/final) presents
    the shift of points all of whose factors are factors of L.
    """
    n, edges, initials, finals = trim_nfa(n, edges, initials, finals)
    m, core_edges, _ = bi_infinite_core(n, edges)
    used = sort_symbols(sym for _, sym, _ in core_edges)
    return Presentation(m, used, core_edges)


def follower_dfa(pres, cap=None):
    """Determinize a presentation by the subset construction seeded with the
    full state set; reachable subsets are the follower sets of words."""
    if cap is None:
        cap = get_cap("subset_states")
    if pres.n == 0:
        return DFA(0, pres.alphabet, (), -1)
    step = {}
    for a, sym, b in pres.edges:
        step.setdefault((a, sym), set()).add(b)
    root = frozenset(range(pres.n))
    ids = {root: 0}
    delta = [{}]
    queue = [root]
    while queue:
        cur = queue.pop()
        i = ids[cur]
        for sym in pres.alphabet:
            nxt = set()
            for s in cur:
                nxt |= step.get((s, sym), set())
            if not nxt:
                continue
            nxt = frozenset(nxt)
            j = ids.get(nxt)
            if j is None:
                j = len(ids)
                if j >= cap:
                    raise ResourceError(
                        "subset_states",
                        "subset construction exceeded %d states" % cap,
                    )
                ids[nxt] = j
                delta.append({})
                queue.append(nxt)
            delta[i][sym] = j
    return DFA(len(ids), pres.alphabet, tuple(delta), 0)


def minimize_partial(dfa):
    """Moore refinement for a partial DFA in which every state accepts.

    Two states merge iff they have identical right languages; the result is
    the minimal partial DFA of the language, rooted at the old root's class.
    """
    if dfa.n == 0:
        return dfa
    block = [0] * dfa.n
    nblocks = 1
    while True:
        sigs = {}
        newblock = [0] * dfa.n
        for q in range(dfa.n):
            sig = (
                block[q],
                tuple(
                    (sym, block[dfa.delta[q][sym]]) if sym in dfa.delta[q] else (sym, -1)
                    for sym in dfa.alphabet
                ),
            )
            b = sigs.get(sig)
            if b is None:
                b = len(sigs)
                sigs[sig] = b
            newblock[q] = b
        if len(sigs) == nblocks:
            break
        block = newblock
        nblocks = len(sigs)
    delta = [dict() for _ in range(nblocks)]
    for q in range(dfa.n):
        for sym, t in dfa.delta[q].items():
            delta[block[q]][sym] = block[t]
    return DFA(nblocks, dfa.alphabet, tuple(delta), block[dfa.root])


def canonical_key(dfa):
    """Isomorphism-invariant key of a rooted minimal DFA.

    BFS from the root with symbols in sorted order yields a canonical state
    numbering; the key is the renumbered edge list.
    """
    if dfa.n == 0:
        return (0, ())
    order = {dfa.root: 0}
    queue = [dfa.root]
    qi = 0
    while qi < len(queue):
        q = queue[qi]
        qi += 1
        for sym in dfa.alphabet:
            t = dfa.delta[q].get(sym)
            if t is not None and t not in order:
                order[t] = len(order)
                queue.append(t)
    edges = tuple(
        sorted(
            (order[q], sym, order[t])
            for q in order
            for sym, t in dfa.delta[q].items()
        )
    )
    return (len(order), edges)


class WalkGraph:
    """Deterministic labeled graph trimmed to its bi-infinite core.

    Carries forward partial maps (delta), reverse adjacency (rdelta), and the
    symbol set. Points of the shift are the bi-infinite walks.
    """

    def __init__(self, n, alphabet, delta):
        self.n = n
        self.alphabet = alphabet
        self.delta = delta  # list of {symbol: state}
        self.rdelta = [dict() for _ in range(n)]  # {symbol: [sources]}
        for q in range(n):
            for sym, t in delta[q].items():
                self.rdelta[t].setdefault(sym, []).append(q)
        self.succ = [sorted(set(d.values())) for d in delta]
        self.outdeg = [len(d) for d in delta]

    def apply_word(self, starts, word):
        """Image of a state set under a word; None entries dropped."""
        cur = set(starts)
        for sym in word:
            cur = {self.delta[q][sym] for q in cur if sym in self.delta[q]}
            if not cur:
                break
        return cur

    def word_map(self, word):
        """Partial map induced by `word` as a tuple (target or -1 per state)."""
        out = []
        for q in range(self.n):
            cur = q
            for sym in word:
                cur = self.delta[cur].get(sym, -1)
                if cur < 0:
                    break
            out.append(cur)
        return tuple(out)


def walk_core(dfa):
    """Bi-infinite core of a DFA's graph as a WalkGraph."""
    edges = tuple(
        (q, sym, t) for q in range(dfa.n) for sym, t in dfa.delta[q].items()
    )
    m, core_edges, _ = bi_infinite_core(dfa.n, edges)
    delta = [dict() for _ in range(m)]
    for a, sym, b in core_edges:
        delta[a][sym] = b
    alphabet = sort_symbols(sym for _, sym, _ in core_edges)
    return WalkGraph(m, alphabet, delta)


def forbidden_nfa(alphabet, forbidden):
    """NFA whose language is the set of words over `alphabet` avoiding every
    word in `forbidden` as a factor (built on a de Bruijn graph of
    (m-1)-grams, m the longest forbidden word)."""
    alphabet = sort_symbols(alphabet)
    words = [tuple(w) for w in forbidden]
    if any(len(w) == 0 for w in words):
        return 0, set(), set(), set()
    if not words:
        edges = {(0, sym, 0) for sym in alphabet}
        return 1, edges, {0}, {0}

    def clean(u):
        return not any(
            u[i : i + len(f)] == f for f in words for i in range(len(u) - len(f) + 1)
        )

    m = max(len(w) for w in words)
    k = m - 1
    if k == 0:
        bad = {w[0] for w in words}
        edges = {(0, sym, 0) for sym in alphabet if sym not in bad}
        return 1, edges, {0}, {0}
    cap = get_cap("enum_nodes")
    states = []
    grams = [()]
    for _ in range(k):
        grams = [g + (a,) for g in grams for a in alphabet]
        if len(grams) > cap:
            raise ResourceError("enum_nodes", "de Bruijn graph exceeds cap")
    states = [g for g in grams if clean(g)]
    ids = {g: i for i, g in enumerate(states)}
    edges = set()
    for g in states:
        for a in alphabet:
            ext = g + (a,)
            if clean(ext):
                edges.add((ids[g], a, ids[ext[1:]]))
    return len(states), edges, set(ids.values()), set(ids.values())
