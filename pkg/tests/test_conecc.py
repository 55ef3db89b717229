import itertools

import pytest

from symdyn.conecc import (
    PRESTART,
    RowWord,
    compile_cone,
    cross_validate,
    decode_row,
    encode_row,
    head_symbol,
    lower_to_tiles,
    parse_head,
    row_successors,
    simulate,
    tile_alphabet,
)
from symdyn.errors import DomainError, ResourceError
from symdyn.machines import Config, CounterMachine, Transition, run_bounded
from symdyn.twodim import locally_valid, pattern_from_rows

from oracles import expected_cone_tops, tile_window_maps, valid_tops


def inc_loop():
    return CounterMachine(
        1, ("q0", "qf"), (Transition("q0", "move", 1, 1, "q0"),), "q0", "qf"
    )


def chooser():
    return CounterMachine(
        1,
        ("q0", "qf"),
        (
            Transition("q0", "move", 1, 0, "q0"),
            Transition("q0", "move", 1, 1, "q0"),
        ),
        "q0",
        "qf",
    )


def dec_stuck():
    # the very first step would drive the counter negative
    return CounterMachine(
        1, ("q0", "qf"), (Transition("q0", "move", 1, -1, "q0"),), "q0", "qf"
    )


def rejecting():
    # reaches q1 with counter 1, where only a zero test waits
    return CounterMachine(
        1,
        ("q0", "q1", "qf"),
        (
            Transition("q0", "move", 1, 1, "q1"),
            Transition("q1", "test", 1, "Z", "q1"),
        ),
        "q0",
        "qf",
    )


def merging():
    # two branches rejoin at qm with equal counters: not reversible
    return CounterMachine(
        2,
        ("q0", "qa", "qb", "qm", "qf"),
        (
            Transition("q0", "move", 1, 1, "qa"),
            Transition("q0", "move", 2, 1, "qb"),
            Transition("qa", "move", 2, 1, "qm"),
            Transition("qb", "move", 1, 1, "qm"),
            Transition("qm", "move", 1, 1, "qm"),
        ),
        "q0",
        "qf",
    )


def mixed2():
    # two counters, tests both ways, moves in both directions
    return CounterMachine(
        2,
        ("a", "b", "f"),
        (
            Transition("a", "move", 1, 1, "b"),
            Transition("b", "test", 1, "P", "a"),
            Transition("a", "move", 2, 1, "a"),
            Transition("b", "move", 1, -1, "f"),
        ),
        "a",
        "f",
    )


# ---- row relation ----------------------------------------------------------


def test_prestart_successors():
    S = compile_cone(inc_loop())
    base = RowWord(0, "L0", "q0", 1, 0, 0, (0,))
    assert S.base_row() == base
    assert row_successors(S, PRESTART) == {PRESTART, base}


def test_rightward_step():
    S = compile_cone(inc_loop())
    r = RowWord(2, "R", "q0", 1, 1, 3, (0,))
    assert row_successors(S, r) == {RowWord(4, "R", "q0", 1, 1, 2, (0,))}


def test_turn_at_right_edge():
    S = compile_cone(inc_loop())
    r = RowWord(2, "R", "q0", 1, 1, 0, (0,))
    assert row_successors(S, r) == {RowWord(2, "L1", "q0", 1, 1, 1, (0,))}


def test_leftward_flip_applies_update():
    M = CounterMachine(
        2, ("q", "qf"), (Transition("q", "move", 2, 1, "q"),), "q", "qf"
    )
    S = compile_cone(M)
    r = RowWord(3, "L1", "q", 2, 1, 0, (0, 2))
    assert row_successors(S, r) == {RowWord(2, "L0", "q", 2, 1, 2, (0, 3))}


def test_leftward_pass_keeps_carry():
    S = compile_cone(inc_loop())
    r = RowWord(3, "L1", "q0", 1, 1, 0, (1,))
    assert row_successors(S, r) == {RowWord(2, "L1", "q0", 1, 1, 2, (1,))}


def test_carry_at_border_is_dead_end():
    S = compile_cone(inc_loop())
    assert row_successors(S, RowWord(0, "L1", "q0", 1, 1, 2, (0,))) == set()


def test_update_below_zero_is_dead_end():
    S = compile_cone(dec_stuck())
    r = RowWord(1, "L1", "q0", 1, -1, 0, (0,))
    assert row_successors(S, r) == set()


def test_border_branches_per_enabled_transition():
    S = compile_cone(chooser())
    got = row_successors(S, S.base_row())
    assert got == {
        RowWord(0, "R", "q0", 1, 0, 1, (0,)),
        RowWord(0, "R", "q0", 1, 1, 1, (0,)),
    }


def test_border_respects_test_guards():
    S = compile_cone(rejecting())
    stuck = RowWord(0, "L0", "q1", 1, 1, 5, (1,))
    assert row_successors(S, stuck) == set()
    zero = RowWord(0, "L0", "q1", 1, 0, 5, (0,))
    assert row_successors(S, zero) == {RowWord(0, "R", "q1", 1, 0, 6, (0,))}


def test_width_grows_by_one_per_step():
    S = compile_cone(chooser())
    frontier = [S.base_row()]
    for _ in range(12):
        nxt = []
        for r in frontier:
            for r2 in row_successors(S, r):
                assert r2.width == r.width + 1
                nxt.append(r2)
        frontier = nxt
    assert frontier


def test_rowword_validation():
    with pytest.raises(DomainError):
        RowWord(-1, "R", "q", 1, 0, 0, (0,))
    with pytest.raises(DomainError):
        RowWord(0, "left", "q", 1, 0, 0, (0,))
    with pytest.raises(DomainError):
        RowWord(0, "R", "q", 0, 0, 0, (0,))
    with pytest.raises(DomainError):
        RowWord(0, "R", "q", 1, 2, 0, (0,))
    with pytest.raises(DomainError):
        RowWord(0, "R", "q", 1, 0, 0, (-1,))


# ---- simulation ------------------------------------------------------------


def test_increment_alignment_matches_direct_run():
    M = inc_loop()
    sim = simulate(compile_cone(M), sweeps=3)
    assert sim.stuck is None
    assert sim.alignment == [
        Config("q0", (0,)),
        Config("q0", (1,)),
        Config("q0", (2,)),
        Config("q0", (3,)),
    ]
    (trace,) = run_bounded(M, 3)
    assert sim.alignment == list(trace.configs)


def test_zone_width_is_row_count_plus_one():
    sim = simulate(compile_cone(inc_loop()), sweeps=3)
    for n, row in enumerate(sim.rows):
        assert row.width == n + 1


def test_border_rows_and_indices():
    sim = simulate(compile_cone(inc_loop()), sweeps=3)
    assert sim.border_indices == [0, 5, 25, 105]
    assert [r.m_right for r in sim.border_rows] == [0, 5, 25, 105]
    assert all(r.m_left == 0 and r.phase == "L0" for r in sim.border_rows)


def test_sweep_mode_agrees_with_row_mode():
    S = compile_cone(inc_loop())
    by_rows = simulate(S, sweeps=3)
    by_sweeps = simulate(S, sweeps=3, mode="sweeps")
    assert by_sweeps.rows == []
    assert by_sweeps.border_rows == by_rows.border_rows
    assert by_sweeps.alignment == by_rows.alignment
    assert by_sweeps.sweeps == by_rows.sweeps == 3


def test_sweep_mode_runs_long():
    sim = simulate(compile_cone(inc_loop()), sweeps=50, mode="sweeps")
    assert sim.sweeps == 50
    assert sim.alignment[-1] == Config("q0", (50,))


def test_counter_updated_once_per_sweep():
    sim = simulate(compile_cone(inc_loop()), sweeps=3)
    changes = sum(
        1
        for a, b in zip(sim.rows, sim.rows[1:])
        if a.counters != b.counters
    )
    assert changes == 3


def test_guidance_selects_branches():
    M = chooser()
    sim = simulate(compile_cone(M), guidance=(1, 0, 1), sweeps=3)
    assert [c.counters for c in sim.alignment] == [(0,), (1,), (1,), (2,)]
    assert tuple(sim.alignment) in {
        tuple(tr.configs) for tr in run_bounded(M, 3)
    }


def test_guidance_error_names_sweep():
    S = compile_cone(chooser())
    with pytest.raises(DomainError, match="sweep 1"):
        simulate(S, guidance=(5,), sweeps=1)
    with pytest.raises(DomainError, match="sweep 2"):
        simulate(S, guidance=(0, 9), sweeps=2, mode="sweeps")


def test_simulation_stops_when_guidance_runs_out():
    sim = simulate(compile_cone(chooser()), sweeps=2)
    assert sim.stuck == "needs-choice"
    assert sim.sweeps == 0


def test_rejecting_machine_gets_stuck():
    sim = simulate(compile_cone(rejecting()), sweeps=3)
    assert sim.stuck == "no-successor"
    assert sim.sweeps == 1
    assert sim.alignment[-1] == Config("q1", (1,))


def test_negative_update_kills_sweep():
    sim = simulate(compile_cone(dec_stuck()), sweeps=2)
    assert sim.stuck == "no-successor"
    assert sim.sweeps == 0
    sim2 = simulate(compile_cone(dec_stuck()), sweeps=2, mode="sweeps")
    assert sim2.stuck == "no-successor"


def test_bad_mode_rejected():
    with pytest.raises(DomainError):
        simulate(compile_cone(inc_loop()), sweeps=1, mode="diagonal")


# ---- lowering --------------------------------------------------------------


def test_head_symbol_roundtrip():
    sym = head_symbol("L0", "q0", 1, 1)
    assert sym == "h[L0,q0,1,1]"
    assert parse_head(sym) == ("L0", "q0", 1, 1)
    assert parse_head("l") is None


def test_encoding_example():
    S = compile_cone(inc_loop())
    r = RowWord(1, "L0", "q0", 1, 1, 1, (2,))
    assert encode_row(S, r, -2, 5) == (
        "0|1",
        "0|1",
        "l|C",
        "h[L0,q0,1,1]|C",
        "r|1",
        "1|1",
        "1|1",
    )


def test_decode_inverts_encode():
    S = compile_cone(mixed2())
    rows = [PRESTART, S.base_row()]
    for m_l, ph, i, d, m_r, n1, n2 in itertools.product(
        (0, 1, 3), ("R", "L0", "L1"), (1, 2), (-1, 0, 1), (0, 2), (0, 2), (0, 1)
    ):
        rows.append(RowWord(m_l, ph, "b", i, d, m_r, (n1, n2)))
    for r in rows:
        width = 1 if r is PRESTART else r.width
        enc = encode_row(S, r, -3, width + 4)
        assert decode_row(S, enc, -3) == r


def test_decode_rejects_malformed_spans():
    S = compile_cone(inc_loop())
    r = RowWord(1, "L0", "q0", 1, 1, 1, (2,))
    enc = encode_row(S, r, -2, 5)
    # no leading quiescent margin
    assert decode_row(S, encode_row(S, r, 0, 5), 0) is None
    # counter run still open at the right edge
    assert decode_row(S, encode_row(S, r, -2, 2), -2) is None
    # zone interrupted by a border cell
    broken = enc[:4] + ("0|1",) + enc[5:]
    assert decode_row(S, broken, -2) is None
    # two heads
    double = enc[:4] + (enc[3],) + enc[5:]
    assert decode_row(S, double, -2) is None
    # all-ones row with a counter mark is no prestart row
    assert decode_row(S, ("0|1", "1|C", "1|1", "1|1"), -1) is None


def test_tile_alphabet_size_is_product():
    M = inc_loop()
    alpha = tile_alphabet(M)
    assert len(alpha) == (4 + 9 * M.k * len(M.states)) * 2 ** M.k
    M2 = mixed2()
    assert len(tile_alphabet(M2)) == (4 + 9 * 2 * 3) * 4


def test_lowered_tileset_shape():
    X = lower_to_tiles(compile_cone(inc_loop()))
    assert X.alphabet == tile_alphabet(inc_loop())
    assert X.shape == tuple((dx, dy) for dx in range(5) for dy in (0, 1))
    assert X.name == "cone"
    assert all(len(w) == 10 for w in X.allowed)


def test_lowering_rejects_symbol_clashes():
    M = CounterMachine(
        1, ("q|0", "qf"), (Transition("q|0", "move", 1, 1, "q|0"),), "q|0", "qf"
    )
    with pytest.raises(DomainError):
        lower_to_tiles(compile_cone(M))


def test_lowering_respects_alphabet_cap():
    states = tuple("s%d" % i for i in range(240))
    M = CounterMachine(1, states, (), "s0", "s1")
    with pytest.raises(ResourceError) as err:
        lower_to_tiles(compile_cone(M))
    assert err.value.cap_name == "column_alphabet"


def test_simulated_stack_tiles_validly():
    S = compile_cone(inc_loop())
    X = lower_to_tiles(S)
    sim = simulate(S, sweeps=3)
    lo, hi = -7, max(r.width for r in sim.rows) + 7
    enc = [encode_row(S, r, lo, hi) for r in sim.rows]
    pat = pattern_from_rows(enc[::-1], x0=lo, y0=0)
    assert locally_valid(X, pat)

    flaw = next(
        i for i, s in enumerate(enc[2]) if s.startswith("l|")
    )
    enc[2] = enc[2][:flaw] + ("1|1",) + enc[2][flaw + 1:]
    assert not locally_valid(X, pattern_from_rows(enc[::-1], x0=lo, y0=0))


def test_prestart_padding_tiles_validly():
    S = compile_cone(inc_loop())
    X = lower_to_tiles(S)
    lo, hi = -7, 9
    pre = encode_row(S, PRESTART, lo, hi)
    base = encode_row(S, S.base_row(), lo, hi)
    pat = pattern_from_rows([base, pre, pre], x0=lo, y0=0)
    assert locally_valid(X, pat)


def _exhaustive_tops_check(M, rows):
    S = compile_cone(M)
    X = lower_to_tiles(S)
    starts, step = tile_window_maps(X)
    for r in rows:
        expect = (
            row_successors(S, r)
            if r is PRESTART
            else expected_cone_tops(M, S, r)
        )
        width = 1 if r is PRESTART else r.width
        lo = -7
        hi = max([width] + [s.width for s in expect if s is not PRESTART]) + 7
        bottom = encode_row(S, r, lo, hi)
        got = set()
        for top in valid_tops(bottom, starts, step):
            decoded = decode_row(S, top, lo)
            assert decoded is not None, (r, top)
            got.add(decoded)
        assert got == expect, r


def test_every_valid_stack_is_a_row_step_one_counter():
    M = inc_loop()
    rows = [PRESTART]
    for m_l, ph, d, m_r in itertools.product(
        range(6), ("R", "L0", "L1"), (-1, 0, 1), range(5)
    ):
        for n in range(0, m_l + 7):
            rows.append(RowWord(m_l, ph, "q0", 1, d, m_r, (n,)))
    _exhaustive_tops_check(M, rows)


def test_every_valid_stack_is_a_row_step_two_counters():
    M = mixed2()
    rows = [PRESTART]
    for m_l, ph, q, i, d, m_r in itertools.product(
        range(3), ("R", "L0", "L1"), ("a", "b", "f"), (1, 2), (-1, 0, 1),
        range(3)
    ):
        for n1 in range(0, m_l + 3):
            for n2 in (0, 2):
                rows.append(RowWord(m_l, ph, q, i, d, m_r, (n1, n2)))
    _exhaustive_tops_check(M, rows)


# ---- cross-validation ------------------------------------------------------


def test_cross_validate_increment():
    rep = cross_validate(inc_loop(), sweeps=20)
    assert rep.behaviors_match
    assert rep.machine_behaviors == rep.cone_behaviors == 1
    assert rep.reversible
    assert rep.row_step_injective
    assert rep.injectivity_witness is None
    # one deterministic chain: the prestart row plus widths 1..30
    assert rep.rows_enumerated == 31
    assert rep.ok


def test_cross_validate_chooser_agreement():
    rep = cross_validate(chooser(), sweeps=8)
    assert rep.behaviors_match
    assert rep.machine_behaviors == 2 ** 8
    assert rep.ok


def test_cross_validate_finds_merge_witness():
    rep = cross_validate(merging(), sweeps=6)
    assert rep.behaviors_match
    assert not rep.reversible
    assert not rep.row_step_injective
    a, b, c = rep.injectivity_witness
    assert a != b
    S = compile_cone(merging())
    assert c in row_successors(S, a)
    assert c in row_successors(S, b)


def test_cross_validate_stuck_machines_agree():
    for M in (dec_stuck(), rejecting()):
        rep = cross_validate(M, sweeps=10)
        assert rep.behaviors_match
        assert rep.ok
