"""Machine builders for the two guess-and-check search schemes.

build_alg1 wraps a pluggable predicate in nondeterministic guessing: pick an
arity k up to a bound, guess a parameter and k witness values into counters,
then probe every value of one more counter in an endless check loop. A trace
survives forever exactly when the predicate never rejects along it.

build_alg2 guesses an infinite bit sequence one choice at a time and rejects
as soon as the sequence read so far contains a forbidden factor. The word
automaton is built first, then made reversible, then reduced to two counters.
"""

from .core import CounterMachine, Transition
from .macro import compile_macro
from .reversible import to_reversible
from .twocounter import to_two_counters


def guess_into(counter):
    """Macro loop leaving an arbitrary value in the given counter."""
    return ("loop", ("choose", ("break",), ("inc", counter)))


def build_alg1(predicate=("seq",), max_k=3, scratch=0):
    """Machine for the guess-and-check scheme.

    Counter layout: 1 holds the guessed parameter, 2..max_k+1 the guessed
    witnesses, max_k+2 the probe value swept 0, 1, 2, ... by the check loop.
    `predicate` is a macro fragment run once per probe value; it falls
    through to keep the trace alive and runs ("reject",) to kill it.
    `scratch` extra counters are appended for the predicate's own use.
    """
    probe = max_k + 2

    def with_arity(k):
        body = [guess_into(1)]
        for i in range(k):
            body.append(guess_into(2 + i))
        body.append(("loop", predicate, ("inc", probe)))
        return ("seq",) + tuple(body)

    prog = with_arity(max_k)
    for k in range(max_k - 1, -1, -1):
        prog = ("choose", with_arity(k), prog)
    return compile_macro(prog, probe + scratch)


def factor_automaton(forbidden):
    """Deterministic automaton over bits 0/1 tracking the longest suffix that
    is a prefix of a forbidden word; None marks a completed forbidden factor."""
    words = sorted(set(forbidden))
    prefixes = {""}
    for w in words:
        for i in range(1, len(w)):
            prefixes.add(w[:i])
    table = {}
    for u in sorted(prefixes):
        for b in "01":
            s = u + b
            if any(s.endswith(w) for w in words):
                table[u, b] = None
                continue
            while s and s not in prefixes:
                s = s[1:]
            table[u, b] = s
    return sorted(prefixes), table


def word_machine(forbidden):
    """One-counter machine guessing bits, stuck once a forbidden factor has
    been read. Bit b at state u is the edge to the automaton successor of
    (u, b), with completed factors routed to the stuck state."""
    if "" in forbidden:
        return CounterMachine(1, ("rej", "acc"), (), "rej", "acc")
    prefixes, table = factor_automaton(forbidden)
    name = {u: "w" + u for u in prefixes}
    states = [name[u] for u in prefixes] + ["rej", "acc"]
    delta = []
    for u in prefixes:
        for b in "01":
            v = table[u, b]
            delta.append(Transition(name[u], "move", 1, 0, "rej" if v is None else name[v]))
    return CounterMachine(1, tuple(states), tuple(delta), name[""], "acc")


def build_alg2(forbidden, stages=False):
    """Bit-guessing machine for the forbidden-factor check, piped through the
    history-recording and two-counter transforms. With stages=True, returns
    the triple (word machine, reversible form, two-counter form)."""
    W = word_machine(forbidden)
    R = to_reversible(W)
    T = to_two_counters(R)
    return (W, R, T) if stages else T
