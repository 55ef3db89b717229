"""Independent brute-force oracles.

These deliberately avoid the library's canonicalization, minimization and
ray analysis: they work by direct dynamic programming over a raw
presentation graph (states all initial and final), so agreement with the
library is evidence, not circularity. Expected values quoted in the tests
were computed with these oracles and then frozen.
"""

import itertools


def graph_data(shift):
    """Raw presentation graph of a shift as (n, edges)."""
    pres = shift.presentation
    return pres.n, list(pres.edges)


def _step_maps(n, edges):
    fwd = {}
    bwd = {}
    syms = set()
    for a, sym, b in edges:
        fwd.setdefault(sym, {}).setdefault(a, set()).add(b)
        bwd.setdefault(sym, {}).setdefault(b, set()).add(a)
        syms.add(sym)
    return sorted(syms, key=repr), fwd, bwd


def readable(n, edges, word):
    """Word readable somewhere in the graph (all states initial/final)."""
    cur = set(range(n))
    _, fwd, _ = _step_maps(n, edges)
    for sym in word:
        step = fwd.get(sym, {})
        cur = set().union(*(step.get(s, set()) for s in cur)) if cur else set()
        if not cur:
            return False
    return True


def word_relation(n, edges, word):
    """Set of (p, q) such that the graph reads `word` from p to q."""
    rel = {(p, p) for p in range(n)}
    _, fwd, _ = _step_maps(n, edges)
    for sym in word:
        step = fwd.get(sym, {})
        rel = {(p, q2) for p, q in rel for q2 in step.get(q, ())}
    return rel


def bi_extension_counts(n, edges, word, radius):
    """N_r for r = 0..radius: the number of distinct pairs (u, v) with
    |u| = |v| = r and u+word+v readable in the graph.

    Distinct-word counting uses subset states: the end-state set of u is a
    function of u, so counting words per subset is exact. This is plain DP,
    no minimization involved.
    """
    syms, fwd, bwd = _step_maps(n, edges)
    rel = word_relation(n, edges, word)
    if not rel:
        return [0] * (radius + 1)
    full = frozenset(range(n))

    # left words u, tracked by end-state set T(u); counts of distinct u
    left = {full: 1}
    # memoized count of distinct right words of length k readable from set S
    gmemo = {}

    def g(k, S):
        if k == 0:
            return 1
        key = (k, S)
        val = gmemo.get(key)
        if val is not None:
            return val
        total = 0
        for sym in syms:
            step = fwd.get(sym, {})
            T = frozenset().union(*(step.get(s, frozenset()) for s in S))
            if T:
                total += g(k - 1, T)
        gmemo[key] = total
        return total

    def image_after_word(T):
        return frozenset(q for (p, q) in rel if p in T)

    out = []
    for r in range(radius + 1):
        if r > 0:
            nxt = {}
            for T, cnt in left.items():
                for sym in syms:
                    step = fwd.get(sym, {})
                    T2 = frozenset().union(*(step.get(s, frozenset()) for s in T))
                    if T2:
                        nxt[T2] = nxt.get(T2, 0) + cnt
            left = nxt
        total = 0
        for T, cnt in left.items():
            Q = image_after_word(T)
            if Q:
                total += cnt * g(r, Q)
        out.append(total)
    return out


def cylinder_oracle(shift, word, radius=None):
    """('infinite', None) or ('finite', count) by extension-pair growth."""
    n, edges = graph_data(shift)
    if n == 0:
        return ("finite", 0)
    if radius is None:
        radius = 2 * n * n
    counts = bi_extension_counts(n, edges, tuple(word), radius)
    if counts[-1] > counts[-2] if radius >= 1 else counts[-1] > 0:
        return ("infinite", None)
    return ("finite", counts[-1])


def derivative_language_oracle(shift, words):
    """Subset of `words` whose cylinders the growth oracle calls infinite."""
    out = set()
    for w in words:
        kind, _ = cylinder_oracle(shift, w)
        if kind == "infinite":
            out.add(tuple(w))
    return out


def extender_class_count(shift, max_word=6, max_context=6):
    """Group all words of length <= max_word (empty word included) by their
    full (left, right) context sets with context length <= max_context.

    The literal double loop over contexts is folded by noting that the
    context test only depends on the end-state set of the left context and
    the start-state set of the right context; grouping contexts by those
    sets is lossless, so this is the same partition the naive loop builds.
    """
    n, edges = graph_data(shift)
    syms, fwd, bwd = _step_maps(n, edges)
    alphabet = syms

    def all_words(maxlen):
        for ln in range(maxlen + 1):
            yield from itertools.product(alphabet, repeat=ln)

    def end_set(word):
        cur = frozenset(range(n))
        for sym in word:
            step = fwd.get(sym, {})
            cur = frozenset().union(*(step.get(s, frozenset()) for s in cur))
            if not cur:
                break
        return cur

    def start_set(word):
        cur = frozenset(range(n))
        for sym in reversed(word):
            step = bwd.get(sym, {})
            cur = frozenset().union(*(step.get(s, frozenset()) for s in cur))
            if not cur:
                break
        return cur

    left_sets = sorted({end_set(u) for u in all_words(max_context)}, key=sorted)
    right_sets = sorted({start_set(v) for v in all_words(max_context)}, key=sorted)

    classes = {}
    for w in all_words(max_word):
        rel = word_relation(n, edges, w)
        fingerprint = frozenset(
            (i, j)
            for i, T in enumerate(left_sets)
            for j, S in enumerate(right_sets)
            if any(p in T and q in S for (p, q) in rel)
        )
        classes.setdefault(fingerprint, []).append(w)
    return len(classes)


def enumerate_points_by_window(shift, window):
    """All words of length `window` occurring in the shift, by raw DP."""
    n, edges = graph_data(shift)
    syms, fwd, _ = _step_maps(n, edges)
    # a word occurs iff readable and bi-extendable; over the trimmed
    # presentation readability is enough
    words = set()
    frontier = {(p, ()) for p in range(n)}
    for _ in range(window):
        nxt = set()
        for p, w in frontier:
            for sym in syms:
                for q in fwd.get(sym, {}).get(p, ()):
                    nxt.add((q, w + (sym,)))
        frontier = nxt
    return {w for _, w in frontier}


# ---- computation cone helpers ----------------------------------------------


def tile_window_maps(X):
    """Index a height-2 width-5 tileset for left-to-right top completion.

    Returns (starts, step): `starts[bottom5]` is the set of top 5-tuples
    allowed over an initial bottom window, and `step[(bottom5, top4)]` the
    set of symbols that may extend a top whose last four cells are `top4`
    over the next bottom window.
    """
    starts = {}
    step = {}
    for w in X.allowed:
        bot, top = w[0::2], w[1::2]
        starts.setdefault(bot, set()).add(top)
        step.setdefault((bot, top[:4]), set()).add(top[4])
    return starts, step


def valid_tops(bottom, starts, step):
    """All rows t with len(t) = len(bottom) whose stack over `bottom` is
    locally valid, by depth-first sliding-window completion."""
    n = len(bottom)
    out = []

    def rec(top):
        if len(top) == n:
            out.append(tuple(top))
            return
        off = len(top) - 4
        for s in sorted(step.get((bottom[off:off + 5], tuple(top[-4:])), ())):
            top.append(s)
            rec(top)
            top.pop()

    for t in sorted(starts.get(bottom[0:5], ())):
        rec(list(t))
    return out


def expected_cone_tops(M, S, row):
    """Successor rows that can appear above `row` in the lowered tileset.

    Rows that occur in no evolution have no valid continuation upward: a
    left-moving head that already applied its update keeps its counter edge
    at offset at least d from itself, and the flags left on a border row
    must have been installed by some transition into its state that is
    compatible with the counter values there (the base row is the one
    exception, with its fixed initial flags).  Every other row continues
    exactly per the row relation.
    """
    from symdyn.conecc import row_successors

    if row.phase == "L0":
        if row.counters[row.counter - 1] - row.m_left < row.delta:
            return set()
        if row.m_left == 0:
            flags = set()
            if row.m_right == 0:
                if row.state == M.initial and not any(row.counters):
                    flags.add((1, 0))
            else:
                for t in M.delta:
                    if t.dst != row.state:
                        continue
                    if t.kind == "test":
                        if (t.arg == "Z") == (row.counters[t.counter - 1] == 0):
                            flags.add((1, 0))
                    elif not (row.counters[t.counter - 1] == 0 and t.arg > 0):
                        flags.add((t.counter, t.arg))
            if (row.counter, row.delta) not in flags:
                return set()
    return row_successors(S, row)


# ---- counter machine helpers ----------------------------------------------


def surface_successors(M, config, surface, step_limit=200000):
    """Surface configurations reachable from config by one enabled transition
    followed by interior steps only. Dead ends inside the interior are
    dropped. Asserts that interior states are deterministic along the way."""
    from symdyn.machines import apply_transition, enabled_transitions

    out = set()
    for t in enabled_transitions(M, config):
        c = apply_transition(t, config)
        steps = 0
        while c is not None and c.state not in surface:
            opts = enabled_transitions(M, c)
            assert len(opts) <= 1, "interior state %s branches" % c.state
            c = apply_transition(opts[0], c) if opts else None
            steps += 1
            assert steps < step_limit, "interior did not terminate"
        if c is not None:
            out.add(c)
    return out


def machine_bits(forbidden, W, configs):
    """Bit sequence spelled by a run of a bit-guessing word machine,
    recovered from the visited surface states via the factor automaton."""
    from symdyn.machines.algorithms import factor_automaton

    seq = [c.state for c in configs if c.state in set(W.states)]
    _, table = factor_automaton(forbidden)
    name = {"w" + u: u for u, _ in table}
    bits = []
    for a, b in zip(seq, seq[1:]):
        u = name[a]
        for bit in "01":
            v = table[u, bit]
            target = "rej" if v is None else "w" + v
            if target == b:
                bits.append(int(bit))
                break
        else:
            raise AssertionError("no bit explains %s -> %s" % (a, b))
    return bits


def run_by_bits(M, W, forbidden, bits, max_steps, lookahead=20000):
    """Run M choosing branches by bit values rather than branch indices.

    At a branch (always at a state of the word machine W) each option is
    followed through deterministic interior states to find which W-state it
    reaches; the option matching the factor automaton's move for the next
    bit is taken. Returns (configs, stuck, consumed_bits)."""
    from symdyn.machines import apply_transition, enabled_transitions
    from symdyn.machines.algorithms import factor_automaton

    _, table = factor_automaton(forbidden)
    surface = set(W.states)
    pending = list(bits)
    consumed = []
    cfg = M.start_config()
    configs = [cfg]
    stuck = False
    for _ in range(max_steps):
        opts = enabled_transitions(M, cfg)
        if not opts:
            stuck = True
            break
        if len(opts) == 1:
            t = opts[0]
        else:
            assert cfg.state in surface, "branch at %s" % cfg.state
            if not pending:
                break
            b = pending.pop(0)
            nxt = table[cfg.state[1:], str(b)]
            wanted = "rej" if nxt is None else "w" + nxt
            t = None
            for opt in opts:
                c = apply_transition(opt, cfg)
                hops = 0
                while c is not None and c.state not in surface and c.state != "rej":
                    inner = enabled_transitions(M, c)
                    c = apply_transition(inner[0], c) if inner else None
                    hops += 1
                    if hops >= lookahead:
                        c = None
                if c is not None and c.state == wanted:
                    t = opt
                    break
            assert t is not None, "no option reaches %s" % wanted
            consumed.append(b)
        cfg = apply_transition(t, cfg)
        configs.append(cfg)
    return configs, stuck, consumed


def brute_box_patterns(X, w, h):
    """All valid w x h fillings of [0,w) x [0,h): plain dict recursion,
    early window checks, no search-engine involvement."""
    cells = [(x, y) for y in range(h - 1, -1, -1) for x in range(w)]
    pos = {c: i for i, c in enumerate(cells)}
    shape = X.shape
    checks = [[] for _ in cells]
    for ax in range(w):
        for ay in range(h):
            win = tuple((ax + dx, ay + dy) for dx, dy in shape)
            if all(c in pos for c in win):
                checks[max(pos[c] for c in win)].append(win)
    out = []
    assign = {}

    def rec(i):
        if i == len(cells):
            out.append(tuple(sorted(assign.items())))
            return
        for s in X.alphabet:
            assign[cells[i]] = s
            if all(tuple(assign[c] for c in win) in X.allowed
                   for win in checks[i]):
                rec(i + 1)
        del assign[cells[i]]

    rec(0)
    return set(out)
