"""Reduction of a reversible k-counter machine to two counters.

Counter values (m1..mk) are carried as the single value v = p1^m1 * ... *
pk^mk in counter 1, with counter 2 as scratch. Increment and decrement
become multiplication and division loops, zero tests become divisibility
checks with the remainder tracked in the state. One step of the input
corresponds to one edge or one gadget pass, interiors deterministic, and
the scratch counter returns to zero at every surface state.
"""

from .core import CounterMachine, Transition
from .reversible import reversibility_probe
from ..errors import DomainError

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


def primes_for(k):
    if k > len(_PRIMES):
        raise DomainError("prime encoding supports at most %d counters" % len(_PRIMES))
    return _PRIMES[:k]


def encode_counters(counters):
    v = 1
    for p, m in zip(primes_for(len(counters)), counters):
        v *= p**m
    return v


def decode_value(v, k):
    """Counter vector encoded by v, or None if v has other prime factors."""
    if v <= 0:
        return None
    out = []
    for p in primes_for(k):
        m = 0
        while v % p == 0:
            v //= p
            m += 1
        out.append(m)
    return tuple(out) if v == 1 else None


def _fresh_prefix(states):
    prefix = "t."
    while any(s.startswith(prefix) for s in states):
        prefix = "_" + prefix
    return prefix


def to_two_counters(M, budget=10000):
    """Prime-encoding transform. Requires a reversible input; the probe runs
    first and a counterexample aborts the construction."""
    report = reversibility_probe(M, budget)
    if not report.reversible:
        raise DomainError(
            "input machine is not reversible, counterexample %r" % (report.counterexample,)
        )
    ps = primes_for(M.k)
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

    def transfer_back(tag, target):
        """Drain counter 2 into counter 1, then enter target."""
        t0 = fresh(tag + "b")
        u1 = fresh(tag + "b1")
        u2 = fresh(tag + "b2")
        delta.append(Transition(t0, "test", 2, "P", u1))
        delta.append(Transition(u1, "move", 2, -1, u2))
        delta.append(Transition(u2, "move", 1, 1, t0))
        delta.append(Transition(t0, "test", 2, "Z", target))
        return t0

    by_src = {}
    for idx, t in enumerate(sorted(M.delta, key=Transition.sort_key)):
        by_src.setdefault(t.src, []).append((idx, t))

    for src in sorted(by_src):
        moves = [(i, t) for i, t in by_src[src] if t.kind == "move"]
        tests = [(i, t) for i, t in by_src[src] if t.kind == "test"]

        for idx, t in moves:
            c = ps[t.counter - 1]
            tag = "%d." % idx
            if t.arg == 0:
                delta.append(Transition(src, "move", 1, 0, t.dst))
                continue
            head = fresh(tag + "h")
            delta.append(Transition(src, "move", 1, 0, head))
            back = transfer_back(tag, t.dst)
            if t.arg == 1:
                # multiply: each unit of counter 1 becomes c units of scratch
                a = fresh(tag + "m")
                delta.append(Transition(head, "test", 1, "P", a))
                cur = fresh(tag + "m0")
                delta.append(Transition(a, "move", 1, -1, cur))
                for i in range(c):
                    nxt = head if i == c - 1 else fresh(tag + "m%d" % (i + 1))
                    delta.append(Transition(cur, "move", 2, 1, nxt))
                    cur = nxt
            else:
                # divide: c units of counter 1 become one unit of scratch;
                # a non-multiple strands mid-chain, matching a disabled step
                a = fresh(tag + "d")
                delta.append(Transition(head, "test", 1, "P", a))
                cur = a
                for i in range(c):
                    nxt = fresh(tag + "d%d" % (i + 1))
                    delta.append(Transition(cur, "move", 1, -1, nxt))
                    cur = nxt
                delta.append(Transition(cur, "move", 2, 1, head))
            delta.append(Transition(head, "test", 1, "Z", back))

        by_counter = {}
        for idx, t in tests:
            by_counter.setdefault(t.counter, []).append((idx, t))
        for counter in sorted(by_counter):
            zs = [(i, t) for i, t in by_counter[counter] if t.arg == "Z"]
            pz = [(i, t) for i, t in by_counter[counter] if t.arg == "P"]
            c = ps[counter - 1]
            for slot in range(max(len(zs), len(pz))):
                z_dst = zs[slot][1].dst if slot < len(zs) else None
                p_dst = pz[slot][1].dst if slot < len(pz) else None
                tag = "%s.%d.%d." % (src, counter, slot)
                # remainder of counter 1 mod c, tracked in the state while
                # draining into scratch, then restored
                heads = [fresh(tag + "n%d" % r) for r in range(c)]
                delta.append(Transition(src, "move", 1, 0, heads[0]))
                for r in range(c):
                    e = fresh(tag + "e%d" % r)
                    f = fresh(tag + "f%d" % r)
                    delta.append(Transition(heads[r], "test", 1, "P", e))
                    delta.append(Transition(e, "move", 1, -1, f))
                    delta.append(Transition(f, "move", 2, 1, heads[(r + 1) % c]))
                    # counter is zero iff remainder nonzero
                    dst = p_dst if r == 0 else z_dst
                    if dst is None:
                        out = fresh(tag + "x%d" % r)  # dead end, step disabled
                        back = transfer_back(tag + "%d." % r, out)
                    else:
                        back = transfer_back(tag + "%d." % r, dst)
                    delta.append(Transition(heads[r], "test", 1, "Z", back))

    base_values = M.start if M.start is not None else (0,) * M.k
    start = (encode_counters(base_values), 0)
    return CounterMachine(
        2,
        tuple(states),
        tuple(delta),
        M.initial,
        M.final,
        frozenset(M.interior) | frozenset(interior),
        start,
    )
