from .core import (
    CounterMachine,
    Config,
    Trace,
    Transition,
    apply_transition,
    enabled_transitions,
    predecessors,
    run_bounded,
    successors,
)
from .reversible import (
    ReversibilityReport,
    recording_base,
    reversibility_probe,
    static_inverse_check,
    to_reversible,
)
from .twocounter import decode_value, encode_counters, to_two_counters
from .macro import compile_macro
from .algorithms import build_alg1, build_alg2, guess_into, word_machine

__all__ = [
    "CounterMachine",
    "Config",
    "Trace",
    "Transition",
    "apply_transition",
    "enabled_transitions",
    "predecessors",
    "run_bounded",
    "successors",
    "ReversibilityReport",
    "recording_base",
    "reversibility_probe",
    "static_inverse_check",
    "to_reversible",
    "decode_value",
    "encode_counters",
    "to_two_counters",
    "compile_macro",
    "build_alg1",
    "build_alg2",
    "guess_into",
    "word_machine",
]
