"""Seeded random corpora for property suites.

Everything here is a pure function of the seed so test runs and CLI
invocations are reproducible.
"""

import random

from .onedim.shift import SoficShift


def random_shift(seed, max_states=6, max_symbols=3):
    """Random nonempty sofic shift from a random labeled graph.

    Every state gets at least one outgoing edge, so the graph always
    contains a cycle and the shift is nonempty.
    """
    rng = random.Random("shift-%r" % (seed,))
    n = rng.randint(1, max_states)
    alphabet = "abc"[: rng.randint(1, max_symbols)]
    edges = set()
    for s in range(n):
        for _ in range(rng.randint(1, 2)):
            edges.add((s, rng.choice(alphabet), rng.randrange(n)))
    # a few extra edges for variety
    for _ in range(rng.randint(0, n)):
        edges.add((rng.randrange(n), rng.choice(alphabet), rng.randrange(n)))
    return SoficShift.from_presentation_graph(n, edges, tuple(alphabet))


def random_machine(seed, max_counters=3, max_states=6):
    """Random nondeterministic counter machine (see machines.core)."""
    from .machines.core import CounterMachine, Transition

    rng = random.Random("machine-%r" % (seed,))
    k = rng.randint(1, max_counters)
    nstates = rng.randint(2, max_states)
    states = ["q%d" % i for i in range(nstates)]
    initial = states[0]
    final = states[-1]
    delta = []
    for q in states[:-1]:
        for _ in range(rng.randint(1, 3)):
            target = rng.choice(states)
            i = rng.randint(1, k)
            if rng.random() < 0.5:
                delta.append(Transition(q, "test", i, rng.choice(["Z", "P"]), target))
            else:
                delta.append(Transition(q, "move", i, rng.choice([-1, 0, 1]), target))
    # dedupe while keeping order
    seen = set()
    uniq = []
    for t in delta:
        if t not in seen:
            seen.add(t)
            uniq.append(t)
    return CounterMachine(k, tuple(states), tuple(uniq), initial, final)
