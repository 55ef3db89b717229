"""Symbolic rows of a computation cone.

A row is either the quiescent pre-start row (all ones right of the origin)
or phi((m_left, head, m_right), counters): a zone of width m_left + 1 +
m_right holding a zig zag head, with one counter track per machine counter.
The head is (phase, state, counter index, pending delta); phase R moves
right, L1 moves left carrying an unconsumed counter update, L0 moves left
with the update already applied.
"""

from dataclasses import dataclass

from ..errors import DomainError

PHASES = ("R", "L0", "L1")


@dataclass(frozen=True)
class RowWord:
    m_left: int
    phase: str
    state: str
    counter: int
    delta: int
    m_right: int
    counters: tuple

    def __post_init__(self):
        if self.m_left < 0 or self.m_right < 0:
            raise DomainError("zone segments must be nonnegative")
        if self.phase not in PHASES:
            raise DomainError("phase must be one of %r" % (PHASES,))
        if self.delta not in (-1, 0, 1):
            raise DomainError("head delta must be -1, 0 or +1")
        if self.counter < 1:
            raise DomainError("head counter index is 1-based")
        if any(n < 0 for n in self.counters):
            raise DomainError("counters must be nonnegative")

    @property
    def width(self):
        return self.m_left + 1 + self.m_right

    @property
    def head(self):
        return (self.phase, self.state, self.counter, self.delta)

    def sort_key(self):
        return (self.m_left, self.m_right, self.phase, self.state, self.counter, self.delta, self.counters)

    def __repr__(self):
        arrow = {"R": ">", "L0": "<0", "L1": "<1"}[self.phase]
        return "phi((%d,(%s,%s,%d,%+d),%d),%r)" % (
            self.m_left, arrow, self.state, self.counter, self.delta, self.m_right, list(self.counters),
        )


class _PreStart:
    """The row below the cone base: zeros left of the origin, ones right."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "prestart"

    def sort_key(self):
        return (-1,)


PRESTART = _PreStart()
