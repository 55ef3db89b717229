import pytest

from symdyn.corpus import random_shift
from symdyn.errors import DomainError, ResourceError
from symdyn.onedim import (
    Finite,
    INFINITE,
    SoficShift,
    countability,
    cylinder_cardinality,
    derivative,
    equal_shifts,
    extender_classes,
    language_subset,
    parse_shift,
    rank_chain,
    word_str,
)

from oracles import (
    cylinder_oracle,
    derivative_language_oracle,
    enumerate_points_by_window,
    extender_class_count,
)


# -- parse_shift --------------------------------------------------------


def test_parse_regex_membership():
    X = parse_shift("a*b*c*")
    assert X.contains_word("abc")
    assert not X.contains_word("ba")


def test_parse_forbidden_membership():
    G = parse_shift(forbidden=["11"], alphabet="01")
    assert G.contains_word("0101")
    assert not G.contains_word("110")


def test_parse_syntax_error_reports_position():
    with pytest.raises(DomainError) as err:
        parse_shift("a*(b")
    assert "position" in str(err.value)


def test_parse_empty_shift_permitted():
    # the empty word's shift has no bi-infinite points
    X = parse_shift("()")
    assert X.is_empty()


# -- extender_classes ----------------------------------------------------


def test_extender_one_letter_full_shift():
    assert extender_classes(parse_shift("a*")).class_count == 1


def test_extender_abc_matches_brute_force():
    X = parse_shift("a*b*c*")
    table = extender_classes(X)
    assert table.class_count == extender_class_count(X)
    assert table.class_count == 8  # frozen from the oracle


def test_extender_golden_mean_matches_brute_force():
    G = parse_shift(forbidden=["11"], alphabet="01")
    table = extender_classes(G)
    assert table.class_count == extender_class_count(G)
    assert table.class_count == 6  # frozen from the oracle


def test_extender_classify_and_representatives():
    G = parse_shift(forbidden=["11"], alphabet="01")
    table = extender_classes(G)
    assert table.representatives[0] == ""
    assert table.classify("010") == table.classify("0")
    assert table.classify("11") == table.classify("0110")


def test_extender_cap_raises():
    X = parse_shift("a*b*c*")
    with pytest.raises(ResourceError):
        extender_classes(X, cap=3)


def test_extender_empty_shift_rejected():
    with pytest.raises(DomainError):
        extender_classes(SoficShift.empty())


# -- cylinder_cardinality ------------------------------------------------


def test_cylinder_single_one():
    assert cylinder_cardinality(parse_shift("0*10*"), "1") == Finite(1)


def test_cylinder_full_one_letter():
    assert cylinder_cardinality(parse_shift("a*"), "a") == Finite(1)


def test_cylinder_infinite():
    assert cylinder_cardinality(parse_shift("a*b*c*"), "b") == INFINITE


def test_cylinder_non_factor_is_zero():
    assert cylinder_cardinality(parse_shift("a*b*c*"), "ba") == Finite(0)


def test_cylinder_empty_word_counts_points():
    # B^-1(0*+1*+2*) has exactly the three uniform points
    X = parse_shift("0* + 1* + 2*")
    assert cylinder_cardinality(X, "") == Finite(3)


@pytest.mark.parametrize("expr", ["0*10*", "a*b*c*", "0*1*2*", "0* + 1*"])
def test_cylinder_agrees_with_growth_oracle(expr):
    X = parse_shift(expr)
    for length in range(0, 4):
        for w in {tuple(w) for w in X.words_of_length(length)}:
            got = cylinder_cardinality(X, w)
            kind, count = cylinder_oracle(X, w)
            if kind == "infinite":
                assert got.infinite, (w, got)
            else:
                assert not got.infinite and got.count == count, (w, got, count)


# -- derivative ----------------------------------------------------------


def test_derivative_abc():
    X = parse_shift("a*b*c*")
    assert equal_shifts(derivative(X), parse_shift("a*b* + b*c*"))


def test_derivative_full_shift_fixed():
    X = parse_shift("(0+1)*")
    assert equal_shifts(derivative(X), X)


def test_derivative_isolated_point_removed():
    assert equal_shifts(derivative(parse_shift("0*10*")), parse_shift("0*"))


@pytest.mark.parametrize("seed", range(12))
def test_derivative_language_monotone_on_corpus(seed):
    X = random_shift(seed)
    assert language_subset(derivative(X), X)


@pytest.mark.parametrize("expr", ["a*b*c*", "0*10*", "0*1*2*"])
def test_derivative_matches_growth_oracle(expr):
    X = parse_shift(expr)
    words = set()
    for length in range(0, 5):
        words |= {tuple(w) for w in X.words_of_length(length)}
    expected = derivative_language_oracle(X, words)
    D = derivative(X)
    got = {w for w in words if D.contains_word(w)}
    assert got == expected


# -- rank_chain ----------------------------------------------------------


def test_rank_chain_012():
    report = rank_chain(parse_shift("0*1*2*"))
    assert report.rank == 3
    assert report.ranked
    assert len(report.chain) == 4
    assert equal_shifts(report.chain[1], parse_shift("0*1* + 1*2*"))
    assert equal_shifts(report.chain[2], parse_shift("0* + 1* + 2*"))
    assert report.chain[3].is_empty()


def test_rank_chain_empty():
    report = rank_chain(SoficShift.empty())
    assert (report.rank, report.ranked, report.chain) == (0, True, [])


def test_rank_chain_full_shift():
    report = rank_chain(parse_shift("(0+1)*"))
    assert report.rank == 0
    assert not report.ranked


def test_rank_chain_fixpoint_idempotent():
    report = rank_chain(parse_shift("0*1*2*"))
    fix = report.chain[-1]
    assert equal_shifts(derivative(fix), fix)


# -- countability --------------------------------------------------------


def test_countability_golden_mean_witness():
    res = countability(parse_shift(forbidden=["11"], alphabet="01"))
    assert not res.countable
    _, loop1, loop2 = res.witness
    assert {loop1, loop2} == {"0", "10"}


def test_countability_012_families():
    res = countability(parse_shift("0*1*2*"))
    assert res.countable
    assert set(res.structure.tuples) == {
        ("0",),
        ("1",),
        ("2",),
        ("0", "1", "1"),
        ("0", "2", "2"),
        ("1", "2", "2"),
        ("0", "1", "1", "2", "2"),
    }


def test_countability_one_letter():
    res = countability(parse_shift("a*"))
    assert res.countable
    assert res.structure.tuples == (("a",),)


def _family_windows(tup, window, pumps):
    """Sample windows of the family inf^u0 v1 u1^n ... vm um^inf."""
    tup = [tuple(part) for part in tup]
    u0, rest = tup[0], tup[1:]
    m = len(rest) // 2
    out = set()
    for exps in _exp_vectors(max(0, m - 1), pumps):
        mid = ()
        for j in range(m - 1):
            mid += rest[2 * j]  # v_{j+1}
            mid += rest[2 * j + 1] * exps[j]  # interior u_{j+1}, pumped
        if m >= 1:
            mid += rest[2 * (m - 1)]  # v_m
            um = rest[2 * m - 1]
        else:
            um = u0
        reps = window + 2
        full = u0 * reps + mid + um * reps
        for i in range(len(full) - window + 1):
            out.add(full[i : i + window])
    return out


def _exp_vectors(k, pumps):
    if k == 0:
        return [()]
    out = []
    for v in _exp_vectors(k - 1, pumps):
        for e in range(pumps + 1):
            out.append(v + (e,))
    return out


@pytest.mark.parametrize("expr", ["0*1*2*", "a*", "0*10*"])
def test_countable_families_cover_language(expr):
    X = parse_shift(expr)
    res = countability(X)
    assert res.countable
    window = 12
    covered = set()
    for tup in res.structure.tuples:
        covered |= _family_windows(tup, window, pumps=window + 2)
    exact = enumerate_points_by_window(X, window)
    assert exact <= covered
    assert covered <= exact


@pytest.mark.parametrize("seed", range(20))
def test_countability_matches_rank_on_corpus(seed):
    X = random_shift(seed)
    assert countability(X).countable == rank_chain(X).ranked


# -- equal_shifts --------------------------------------------------------


def test_equal_across_presentations():
    assert equal_shifts(parse_shift("a*b*"), parse_shift("a*a*b*b* + a*"))


def test_shift_differs_from_derivative():
    X = parse_shift("a*b*c*")
    assert not equal_shifts(X, derivative(X))


def test_rank_bounded_by_class_count_small_corpus():
    for seed in range(15):
        X = random_shift(seed)
        assert rank_chain(X).rank <= extender_classes(X).class_count
