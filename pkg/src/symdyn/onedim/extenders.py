"""Extender-set classes via the transition monoid of the canonical form.

On a minimal partial DFA of the factor language, two words have equal
extender sets exactly when they induce the same partial map on states:
distinct states have distinct right languages, and every state is the
follower class of some left context. So the monoid size is the exact number
of extender sets (the empty word's identity element counts as one class).
"""

from dataclasses import dataclass, field

from ..caps import get_cap
from ..errors import DomainError, ResourceError
from .shift import as_word, word_str


def _transform(dfa, word):
    out = []
    for q in range(dfa.n):
        cur = q
        for sym in word:
            cur = dfa.delta[cur].get(sym, -1)
            if cur < 0:
                break
        out.append(cur)
    return tuple(out)


@dataclass
class ExtenderClassTable:
    class_count: int
    representatives: list  # shortest word per class, length-lex order
    transforms: dict  # representative word -> partial-map tuple
    _index: dict = field(repr=False)  # partial-map tuple -> representative
    _dfa: object = field(repr=False)

    def classify(self, word):
        """Representative of the class containing `word`."""
        return self._index[_transform(self._dfa, as_word(word))]


def extender_classes(X, cap=None):
    """Partition words by their transition-monoid element.

    >>> from .shift import parse_shift
    >>> extender_classes(parse_shift("a*")).class_count
    1
    """
    if X.is_empty():
        raise DomainError("extender_classes needs a nonempty shift")
    if cap is None:
        cap = get_cap("monoid_size")
    dfa = X.canonical
    identity = tuple(range(dfa.n))
    index = {identity: ()}
    queue = [((), identity)]
    qi = 0
    while qi < len(queue):
        word, t = queue[qi]
        qi += 1
        for sym in dfa.alphabet:
            nt = tuple(
                dfa.delta[t[q]].get(sym, -1) if t[q] >= 0 else -1
                for q in range(dfa.n)
            )
            if nt not in index:
                if len(index) >= cap:
                    raise ResourceError(
                        "monoid_size",
                        "transition monoid exceeded %d elements" % cap,
                        partial=len(index),
                    )
                index[nt] = word + (sym,)
                queue.append((word + (sym,), nt))
    reps = sorted(index.values(), key=lambda w: (len(w), w))
    rep_index = {t: word_str(w) for t, w in index.items()}
    return ExtenderClassTable(
        class_count=len(index),
        representatives=[word_str(w) for w in reps],
        transforms={word_str(w): t for t, w in index.items()},
        _index=rep_index,
        _dfa=dfa,
    )
