"""Consistency checks between a machine, its cone, and its tileset."""

from dataclasses import dataclass

from ..caps import get_cap
from ..errors import ResourceError
from ..machines.core import Config, run_bounded
from ..machines.reversible import reversibility_probe
from .compile import _border_options, _sweep_closed_form, compile_cone, row_successors
from .rows import PRESTART, RowWord


def _machine_behaviors(M, steps):
    """Config sequences of all bounded runs, deduplicated.

    Two transitions with the same effect give one behavior, matching the
    cone, whose branch points are distinct successor rows.
    """
    return {tuple(tr.configs) for tr in run_bounded(M, steps)}


def _cone_behaviors(S, sweeps, cap):
    """Aligned config sequences of all cone runs of at most `sweeps` sweeps.

    A branch whose sweep dies before reaching the next left border
    corresponds to a disabled machine step and contributes nothing; if no
    branch survives, the run is stuck at the current border.
    """
    out = set()

    def rec(border, seq):
        if len(out) >= cap:
            raise ResourceError("enum_results",
                                "more than %d cone behaviors" % cap,
                                partial=len(out))
        if len(seq) - 1 >= sweeps:
            out.add(tuple(seq))
            return
        rows = {RowWord(0, h[0], h[1], h[2], h[3], border.m_right + 1,
                        border.counters)
                for _, h in _border_options(S, border)}
        nexts = [nxt for row in sorted(rows, key=RowWord.sort_key)
                 for nxt in [_sweep_closed_form(S, border, row.head)]
                 if nxt is not None]
        if not nexts:
            out.add(tuple(seq))
            return
        for nxt in nexts:
            rec(nxt, seq + [Config(nxt.state, nxt.counters)])

    base = S.base_row()
    rec(base, [Config(base.state, base.counters)])
    return out


def _reachable_rows(S, width_limit, cap):
    """BFS over row successors from the pre-start row, bounded by zone width."""
    seen = {PRESTART, S.base_row()}
    frontier = list(seen)
    edges = []
    while frontier:
        nxt = []
        for r in frontier:
            for r2 in row_successors(S, r):
                if r2 is not PRESTART and r2.width > width_limit:
                    continue
                edges.append((r, r2))
                if r2 not in seen:
                    seen.add(r2)
                    nxt.append(r2)
                    if len(seen) > cap:
                        raise ResourceError(
                            "enum_results",
                            "more than %d reachable rows" % cap,
                            partial=len(seen))
        frontier = nxt
    return seen, edges


@dataclass
class CrossValidation:
    machine_behaviors: int
    cone_behaviors: int
    behaviors_match: bool
    reversible: bool
    rows_enumerated: int
    row_step_injective: bool
    injectivity_witness: tuple = None
    determinism: object = None

    @property
    def ok(self):
        if not self.behaviors_match:
            return False
        if self.reversible and not self.row_step_injective:
            return False
        if self.determinism is not None and self.determinism.counterexample:
            return False
        return True

    def __repr__(self):
        return ("CrossValidation(behaviors %d=%d %s, reversible=%s, "
                "rows=%d, injective=%s, ok=%s)" % (
                    self.machine_behaviors, self.cone_behaviors,
                    "match" if self.behaviors_match else "MISMATCH",
                    self.reversible, self.rows_enumerated,
                    self.row_step_injective, self.ok))


def cross_validate(M, sweeps=20, width_limit=30, probe_window=0,
                   probe_depth=3, budget=10000):
    """Check machine-versus-cone agreement and, for reversible machines,
    backward determinism of the cone.

    Compares the set of bounded machine behaviors with the sweep-aligned
    cone behaviors, enumerates reachable rows up to `width_limit` and tests
    that no two of them share a successor, and, when `probe_window` > 0,
    lowers the cone to tiles and probes determinism toward the south.
    """
    S = compile_cone(M)
    cap = get_cap("enum_results")
    machine = _machine_behaviors(M, sweeps)
    cone = _cone_behaviors(S, sweeps, cap)

    rows, edges = _reachable_rows(S, width_limit, cap)
    preds = {}
    witness = None
    for r, r2 in edges:
        preds.setdefault(r2, set()).add(r)
    for r2 in sorted(preds, key=lambda x: x.sort_key()):
        sources = preds[r2]
        if len(sources) > 1:
            pair = sorted(sources, key=lambda x: x.sort_key())[:2]
            witness = (pair[0], pair[1], r2)
            break

    rep = reversibility_probe(M, budget=budget)

    verdict = None
    if probe_window:
        from ..twodim.probes import determinism_probe
        from .lower import lower_to_tiles
        tiles = lower_to_tiles(S)
        verdict = determinism_probe(tiles, (0, -1), probe_window, probe_depth)

    return CrossValidation(
        machine_behaviors=len(machine),
        cone_behaviors=len(cone),
        behaviors_match=machine == cone,
        reversible=rep.reversible,
        rows_enumerated=len(rows),
        row_step_injective=witness is None,
        injectivity_witness=witness,
        determinism=verdict,
    )
