from __future__ import annotations

import pytest

from fdes import (
    AlphabetError,
    FuzzyAutomaton,
    FuzzyMatrix,
    HypothesisError,
    UncontrollabilityMap,
    build_plus,
    check_range,
    check_simulation,
    check_target,
    grade,
    greatest_simulation,
    is_uc_compatible,
    language_controllable,
    parallel_compose,
    simulation_equivalent,
)
from fdes.synthesis import language_controllability_violation

import properties as laws
from worked_examples import S, S2, example1, example4, example5, example6


def test_uncontrollability_map():
    uc = UncontrollabilityMap({S: "0.7", S2: "0.6"})
    assert uc[S] == grade("0.7")
    assert uc.controllability(S) + uc[S] == grade(1)
    with pytest.raises(AlphabetError):
        uc["nope"]


class TestCompatibility:
    def test_example4(self):
        r, uc = example4()
        assert not is_uc_compatible(r, uc)
        assert is_uc_compatible(build_plus(r, uc), uc)

    def test_zero_map(self):
        g = example1()
        assert is_uc_compatible(g, UncontrollabilityMap.zero(g.alphabet))

    def test_unmapped_event(self):
        with pytest.raises(AlphabetError):
            is_uc_compatible(example1(), UncontrollabilityMap({S: "0.1"}))


class TestBuildPlus:
    def test_example4(self):
        r, uc = example4()
        plus = build_plus(r, uc)
        assert plus.events[S] == FuzzyMatrix([["0.8", "0.4", 0], ["0.3", 0, "0.7"], [0, 0, "0.7"]])
        assert plus.events[S2] == FuzzyMatrix([[0, "0.5", "0.6"], ["0.3", "0.7", 0], [0, 0, "0.6"]])
        assert plus.initial == FuzzyMatrix([[1, 0, 0]])
        assert plus.marked == FuzzyMatrix([[0, 1, 0]])

    def test_example5(self):
        _, r, uc = example5()
        plus = build_plus(r, uc)
        assert plus.events[S] == FuzzyMatrix([["0.4", "0.8", 0], [0, "0.4", "0.8"], [0, 0, "0.8"]])
        assert plus.events[S2] == FuzzyMatrix([["0.4", "0.9", 0], ["0.2", "0.4", 0], [0, 0, "0.1"]])

    def test_example6(self):
        _, r, uc = example6()
        plus = build_plus(r, uc)
        assert plus.initial == FuzzyMatrix([["0.7", "0.7", 0, 0]])
        assert plus.marked == FuzzyMatrix([[1, 1, 1, 0]])
        assert plus.events[S] == FuzzyMatrix(
            [[0, 0, 1, 0], [0, 0, 0, "0.8"], [0, 0, 0, "0.8"], [0, 0, 0, "0.8"]]
        )
        assert plus.events[S2] == FuzzyMatrix(
            [[0, 0, 0, "0.2"], [0, 0, 1, 0], [0, 0, 0, "0.2"], [0, 0, 0, "0.2"]]
        )

    def test_zero_map_adds_dead_state(self):
        g = example1()
        plus = build_plus(g, UncontrollabilityMap.zero(g.alphabet))
        for label, m in plus.events.items():
            assert all(row[-1] == 0 for row in m.rows)
            assert m.rows[-1] == (grade(0),) * 3
            assert [row[:2] for row in m.rows[:2]] == list(g.events[label].rows)


class TestTarget:
    def test_example5_controllable(self):
        g, r, uc = example5()
        report = check_target(g, r, uc)
        assert report.verdict == "controllable"
        assert report.supervisor == build_plus(r, uc)
        assert check_simulation(r, g, FuzzyMatrix.identity(2)).holds
        printed = FuzzyMatrix(
            [[1, "0.4", "0.4", "0.4", "0.4", "0.4"], ["0.4", "0.4", "0.4", "0.4", "0.9", "0.4"]]
        ).transpose()
        w = report.condition2.witness.phi
        assert printed <= w
        closed = parallel_compose(g, report.supervisor)
        assert check_simulation(closed, r, w).holds
        assert check_simulation(closed, r, printed).holds
        assert simulation_equivalent(closed, r)

    def test_example6_not_controllable(self):
        g, r, uc = example6()
        report = check_target(g, r, uc)
        assert report.verdict == "not_controllable"
        assert report.supervisor is None
        assert report.condition1.holds
        assert report.failing == ["condition2"]
        assert greatest_simulation(parallel_compose(g, build_plus(r, uc)), r) is None

    def test_self_with_zero_map(self):
        g = example1()
        report = check_target(g, g, UncontrollabilityMap.zero(g.alphabet))
        assert report.controllable

    def test_alphabet_mismatch(self):
        g = example1()
        other = FuzzyAutomaton(1, {"x": [[1]]}, [1], [1])
        with pytest.raises(AlphabetError):
            check_target(g, other, UncontrollabilityMap({S: 0, S2: 0, "x": 0}))


class TestRange:
    def test_degenerate_equals_target(self):
        for fixture in (example5, example6):
            g, r, uc = fixture()
            a, b = check_range(g, r, r, uc), check_target(g, r, uc)
            assert (a.verdict, a.failing) == (b.verdict, b.failing)

    def test_self_with_zero_map(self):
        g = example1()
        assert check_range(g, g, g, UncontrollabilityMap.zero(g.alphabet)).controllable

    def test_hypothesis_enforced(self):
        g, r, uc = example5()
        # generates every string with degree 1, which r cannot match
        lower = FuzzyAutomaton(1, {S: [[1]], S2: [[1]]}, [1], [1], name="R1")
        with pytest.raises(HypothesisError):
            check_range(g, lower, r, uc)


class TestLanguageControllability:
    def test_example6(self):
        g, r, uc = example6()
        assert language_controllable(g, r, uc)

    def test_zero_map(self):
        g, r, _ = example6()
        assert language_controllable(g, r, UncontrollabilityMap.zero(g.alphabet))
        assert language_controllable(r, g, UncontrollabilityMap.zero(g.alphabet))

    def test_single_state_violation_at_empty_string(self):
        g = FuzzyAutomaton(1, {S: [["0.8"]]}, [1], [1], name="G")
        r = FuzzyAutomaton(1, {S: [["0.2"]]}, [1], [1], name="R")
        uc = UncontrollabilityMap({S: 1})
        assert language_controllability_violation(g, r, uc) == ((), S)
        assert not language_controllable(g, r, uc)


@pytest.mark.parametrize(
    "law",
    [
        laws.law_plus_simulates,
        laws.law_plus_below_compatible,
        laws.law_compatible_keeps_uncontrollable,
        laws.law_target_sound,
        laws.law_range_sound,
        laws.law_target_implies_language,
        laws.law_range_degenerates,
    ],
    ids=lambda f: f.__name__,
)
def test_laws_sampled(law):
    hits, failures, messages = laws.run_law(law, 80, seed=202)
    assert failures == 0, messages[:3]
    assert hits > 0
