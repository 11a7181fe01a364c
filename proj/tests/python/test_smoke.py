import pathlib

import pytest

import betauto

FIXTURES = pathlib.Path(__file__).resolve().parents[2] / "fixtures"
INTRO = {"beta": {"minpoly": [-3, 1]}, "digits": [0, 1, 3]}


def test_intro_relations():
    s = betauto.Semigroup(INTRO)
    assert s.relations.num_states == 3
    assert not s.is_free
    assert s.alphabet == ["0", "1", "3"]


def test_intro_reduce_and_growth():
    s = betauto.Semigroup(INTRO)
    assert s.reduce("10") == "03"
    assert s.reduce("110") == "033"
    assert s.equivalent("110", "033")
    assert not s.equivalent("0", "1")
    assert s.verify("10", "03")
    g = s.growth(6, candidate=[1, -3, 1])
    assert g["counts"] == ["1", "3", "8", "21", "55", "144", "377"]
    assert g["lambda"]["lo"] == pytest.approx(2.6180339887, abs=1e-9)
    assert g["pi_check"]["certified"]
    assert s.reduced().count_series(4) == [1, 3, 8, 21, 55]
    assert s.reduced("revlex").accepts([2, 0])


def test_multiplier_round_trip():
    s = betauto.Semigroup(INTRO)
    m = s.multiplier(0)
    back = betauto.automaton_from_json(m.to_json())
    assert betauto.isomorphic(back, m)
    assert "digraph" in m.to_dot("m0")


def test_fixture_file_and_freeness():
    s = betauto.Semigroup(FIXTURES / "kenyon_1_5.json")
    assert s.is_free
    assert betauto.kenyon_criterion(1, 5) == "free"
    golden = {"beta": {"minpoly": [-1, -1, 1]}, "digits": [0, 1]}
    assert betauto.mahler_nonfree_check(golden) == "non-free"
    quartic = {"beta": {"minpoly": [1, -3, -3, -3, 1]}, "digits": [0, 1]}
    assert betauto.quick_free_sufficient(quartic) == "free"


def test_salem_errors():
    salem = FIXTURES / "salem.json"
    assert betauto.describe_context(salem)["blocked"]
    with pytest.raises(betauto.Blocked):
        betauto.Semigroup(salem)
    with pytest.raises(betauto.CapExceeded):
        betauto.Semigroup(salem, max_states=2000, force=True)
    with pytest.raises(betauto.BetautoError):
        betauto.Semigroup({"beta": {"minpoly": [-3, 1]}, "digits": []})


def test_transcendental_matches_base_three():
    formal = betauto.Semigroup({"beta": "transcendental", "digits": [[0], [1], [0, 1]]})
    assert betauto.isomorphic(formal.relations, betauto.Semigroup(INTRO).relations)
