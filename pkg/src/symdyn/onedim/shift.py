"""Sofic shifts as labeled-graph presentations with canonical forms."""

from ..errors import DomainError
from . import automata
from .automata import DFA, Presentation, WalkGraph


def as_word(w):
    """Normalize a word to a tuple of symbols (strings split into chars)."""
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def word_str(w):
    """Render a word compactly: join single-char symbols, else keep a tuple."""
    if all(isinstance(s, str) and len(s) == 1 for s in w):
        return "".join(w)
    return tuple(w)


class SoficShift:
    """A one-dimensional sofic shift.

    Stores a trimmed presentation (labeled graph, bi-infinite walks are the
    points) and a canonical form: the minimal partial DFA of the factor
    language, unique up to nothing at all thanks to BFS renumbering, so
    structural equality of canonical keys decides shift equality.
    """

    def __init__(self, presentation, declared_alphabet=None):
        self.presentation = presentation
        base = declared_alphabet if declared_alphabet is not None else ()
        self.alphabet = automata.sort_symbols(
            tuple(base) + tuple(presentation.alphabet)
        )
        dfa = automata.follower_dfa(presentation)
        self.canonical = automata.minimize_partial(dfa)
        self.walks = automata.walk_core(self.canonical)
        self.key = automata.canonical_key(self.canonical)

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_nfa(cls, n, edges, initials, finals, declared_alphabet=None):
        pres = automata.presentation_from_nfa(n, edges, initials, finals)
        return cls(pres, declared_alphabet)

    @classmethod
    def from_presentation_graph(cls, n, edges, declared_alphabet=None):
        """Presentation given directly: all states initial and final."""
        states = set(range(n))
        return cls.from_nfa(n, set(edges), states, states, declared_alphabet)

    @classmethod
    def empty(cls, declared_alphabet=()):
        return cls(Presentation(0, (), ()), declared_alphabet)

    # -- basic queries --------------------------------------------------

    def is_empty(self):
        return self.walks.n == 0

    def contains_word(self, w):
        """Factor membership: does w occur in some point of the shift?"""
        w = as_word(w)
        if self.canonical.n == 0:
            return False
        q = self.canonical.root
        for sym in w:
            q = self.canonical.delta[q].get(sym)
            if q is None:
                return False
        return True

    def words_of_length(self, length):
        """All factors of exactly the given length, sorted."""
        if self.canonical.n == 0:
            return []
        level = {(): self.canonical.root}
        for _ in range(length):
            nxt = {}
            for w, q in level.items():
                for sym, t in self.canonical.delta[q].items():
                    nxt[w + (sym,)] = t
            level = nxt
        return sorted(level.keys())

    def __repr__(self):
        return "SoficShift(states=%d, alphabet=%s)" % (
            self.canonical.n,
            list(self.alphabet),
        )


def parse_shift(expr=None, forbidden=None, alphabet=None):
    """Build a sofic shift.

    Either `expr` is a regular expression (the shift is the set of points all
    of whose factors are factors of the expression's language) or `forbidden`
    is a list of words none of which may occur, over an explicit `alphabet`.

    >>> X = parse_shift("a*b*c*")
    >>> X.contains_word("abc"), X.contains_word("ba")
    (True, False)
    >>> G = parse_shift(forbidden=["11"], alphabet="01")
    >>> G.contains_word("0101"), G.contains_word("110")
    (True, False)
    """
    if (expr is None) == (forbidden is None):
        raise DomainError("give exactly one of expr or forbidden")
    if expr is not None:
        n, edges, initials, finals = automata.regex_nfa(expr)
        declared = alphabet if alphabet is not None else ()
        return SoficShift.from_nfa(n, edges, initials, finals, as_word(declared))
    if alphabet is None:
        raise DomainError("forbidden-word shifts need an explicit alphabet")
    alphabet = as_word(alphabet)
    words = [as_word(w) for w in forbidden]
    n, edges, initials, finals = automata.forbidden_nfa(alphabet, words)
    return SoficShift.from_nfa(n, edges, initials, finals, alphabet)


def equal_shifts(X, Y):
    """True iff the two shifts have the same points (canonical forms match)."""
    return X.key == Y.key


def language_subset(X, Y):
    """True iff every factor of X is a factor of Y (exact, via product DFA)."""
    if X.canonical.n == 0:
        return True
    if Y.canonical.n == 0:
        return False
    seen = {(X.canonical.root, Y.canonical.root)}
    stack = [(X.canonical.root, Y.canonical.root)]
    while stack:
        p, q = stack.pop()
        for sym, pt in X.canonical.delta[p].items():
            qt = Y.canonical.delta[q].get(sym)
            if qt is None:
                return False
            if (pt, qt) not in seen:
                seen.add((pt, qt))
                stack.append((pt, qt))
    return True
