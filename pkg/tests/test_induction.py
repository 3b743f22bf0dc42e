from fractions import Fraction

import pytest

from segre_secant import (
    check_lemma_conditions,
    classify,
    dagger_value,
    ddagger_value,
    f_value,
    g_value,
    invariants,
    replay_main_theorem,
    route_case,
)
from segre_secant.induction import (
    case_a_f_bound,
    case_b_f_bound,
    case_e_g_bound,
)


def test_f_spot_value():
    # 78 - 20 - 2*15 with the (2, 1, 5, 1) remainder equal to 2
    assert invariants(2, 1, 5, 1).r == 2
    assert f_value(1, 3, 5) == Fraction(28)


def test_f_case_b_bound_at_n4():
    assert case_b_f_bound(4) == Fraction(4)
    assert f_value(1, 4, 4) == Fraction(100)
    assert f_value(1, 4, 4) >= case_b_f_bound(4) > 0


def test_f_case_a_bound_positive():
    for n in range(3, 8):
        assert case_a_f_bound(n) > 0


def test_g_spot_values():
    assert g_value(3, 1) == Fraction(-1)
    assert g_value(3, 2) == Fraction(-2)
    for d in range(1, 7):
        expected = Fraction(6 - 10 * d, 4) if d % 2 == 1 else Fraction(12 - 10 * d, 4)
        assert g_value(3, d) == expected


def test_g_case_e_chain_at_n4():
    assert case_e_g_bound(4) == Fraction(-4, 5)
    assert g_value(4, 1) == Fraction(-4)
    assert g_value(4, 1) <= case_e_g_bound(4) < 0


def test_dagger_closed_form_for_34_column():
    # dagger at (3, 4, b) equals (3(b+1) - r(2,1,4,b)) / 4 >= (3(b+1) - 3)/4 >= 0
    for b in range(1, 8):
        r = invariants(2, 1, 4, b).r
        value = dagger_value(3, 4, b)
        assert Fraction(value) == Fraction(3 * (b + 1) - r, 4)
        assert value >= Fraction(3 * (b + 1) - 3, 4) >= 0


def test_ddagger_closed_form_case_c():
    # at (3, 4, b) with b odd: (-5(b+1) + 3r)/4 <= -1/4, an integer, so <= -1
    for b in (1, 3, 5):
        r = invariants(2, 1, 4, b).r
        value = ddagger_value(3, 4, b)
        assert Fraction(value) == Fraction(-5 * (b + 1) + 3 * r, 4)
        assert value <= -1


def test_lemma_conditions_34_column():
    report = check_lemma_conditions(3, 4, 1)
    assert report.cond1 and report.cond3star
    assert not report.base_case


def test_lemma_conditions_cond4_via_f():
    report = check_lemma_conditions(3, 5, 1)
    assert report.cond4
    assert f_value(1, 3, 5) >= 0


def test_lemma_conditions_base_case_flag():
    report = check_lemma_conditions(2, 4, 2)
    assert report.base_case  # n = 2 sits below the inductive region
    assert isinstance(report.cond1, bool)


def test_lemma_conditions_a2_leaves_cond4_undefined():
    report = check_lemma_conditions(3, 2, 2)
    assert report.cond4 is None and report.cond4star is None
    assert "cond4" not in report.witnesses


def test_lemma_conditions_validation():
    with pytest.raises(ValueError):
        check_lemma_conditions(1, 4, 1)
    with pytest.raises(ValueError):
        check_lemma_conditions(3, 1, 1)


def test_witnesses_match_booleans():
    report = check_lemma_conditions(4, 5, 2)
    lhs, rhs = report.witnesses["cond2"]
    assert report.cond2 == (lhs >= rhs)
    lhs, rhs = report.witnesses["cond4"]
    assert report.cond4 == (lhs <= rhs)
    lhs, rhs = report.witnesses["cond1"]
    assert report.cond1 == (lhs == rhs)


def test_implication_chain_on_grid():
    for n in range(2, 7):
        for a in range(3, 9):
            for b in range(1, 7):
                rep = check_lemma_conditions(n, a, b)
                if rep.cond4:
                    assert rep.cond2, (n, a, b)
                    assert rep.cond4star, (n, a, b)
                if rep.cond2:
                    assert rep.cond2star, (n, a, b)
                if rep.cond3star:
                    assert rep.cond3, (n, a, b)


def test_route_case_partition():
    assert route_case(3, 5, 2) == "a"
    assert route_case(4, 4, 3) == "b"
    assert route_case(3, 4, 3) == "c"
    assert route_case(3, 4, 2) == "d"
    assert route_case(5, 4, 4) == "e"
    with pytest.raises(ValueError):
        route_case(2, 4, 1)
    with pytest.raises(ValueError):
        route_case(3, 3, 1)


def test_replay_default_grid_all_pass():
    report = replay_main_theorem(6, 8, 6)
    assert report.all_passed
    assert len(report.cells) == 4 * 5 * 6
    counts = report.case_counts()
    assert all(counts[case] > 0 for case in "abcde")


def test_replay_routed_witness_cells():
    report = replay_main_theorem(4, 4, 2)
    by_cell = {(c.n, c.a, c.b): c for c in report.cells}
    d_cell = by_cell[(3, 4, 2)]
    assert d_cell.case == "d" and d_cell.g == Fraction(-1) and d_cell.passed
    e_cell = by_cell[(4, 4, 2)]
    assert e_cell.case == "e" and e_cell.g < 0 and e_cell.g <= case_e_g_bound(4)


def test_replay_base_attributions_cover_imported_results():
    report = replay_main_theorem(3, 4, 1)
    tags = {(n, a): rule for n, a, rule in report.base_attributions}
    assert tags[(1, 4)] == "cgg-p1p1"
    assert tags[(2, 4)] == "baur-draisma"
    assert tags[(3, 1)] == "chiantini-ciliberto"
    assert tags[(3, 2)] == "abrescia-2b"
    assert tags[(3, 3)] == "abrescia-3b"
    assert (3, 4) not in tags  # inductive cell, checked not attributed


def test_replay_bounds_validation():
    with pytest.raises(ValueError):
        replay_main_theorem(2, 8, 6)
    with pytest.raises(ValueError):
        replay_main_theorem(3, 3, 6)
    with pytest.raises(ValueError):
        replay_main_theorem(3, 4, 0)


def test_lemma_hypotheses_imply_nondefective_classification():
    # Wherever the replay certifies a cell, the closed form must agree that
    # no secant variety of that embedding is defective.
    report = replay_main_theorem(5, 6, 3)
    for cell in report.cells:
        assert cell.passed
        qstar = invariants(cell.n, 1, cell.a, cell.b).qstar
        for s in range(1, qstar + 2):
            assert not classify(cell.n, cell.a, cell.b, s).defective, (cell.n, cell.a, cell.b, s)
