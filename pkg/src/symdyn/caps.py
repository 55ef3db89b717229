"""Resource caps.

Every potentially explosive computation (determinization, monoid closure,
backtracking enumeration) consults a named cap. The SYMDYN_CAP environment
variable overrides all defaults at once; individual calls can pass explicit
caps where the API exposes them.
"""

import os

DEFAULT_CAPS = {
    "subset_states": 1 << 16,
    "monoid_size": 1 << 16,
    "enum_results": 1 << 20,
    "enum_nodes": 1 << 24,
    "parse_tuples": 4096,
    "column_alphabet": 4096,
    "poset_horizon": 1 << 20,
    "ray_count": 1 << 20,
}


def get_cap(name):
    env = os.environ.get("SYMDYN_CAP")
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_CAPS[name]
