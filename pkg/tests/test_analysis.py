"""Prediction-rule tests: profile construction against a brute oracle,
frozen examples for each rule, and exhaustive soundness sweeps that
compare every fired prediction with the real playout."""

from __future__ import annotations

import random

import pytest

from noflip.analysis import (
    Prediction,
    all_predictions,
    predict_by_runs,
    predict_large_overlap,
    predict_special_strings,
    run_profile,
)
from noflip.engine import OutcomeKind, TossString, play

ALICE_WINS = OutcomeKind.ALICE_WINS
BOB_WINS = OutcomeKind.BOB_WINS
INFINITE = OutcomeKind.INFINITE


def ts(text: str) -> TossString:
    return TossString.from_text(text)


def all_pairs(n: int):
    for a_code in range(1 << n):
        for b_code in range(1 << n):
            if a_code != b_code:
                yield TossString(n, a_code), TossString(n, b_code)


def brute_longest_run(text: str, letter: str) -> int:
    best = run = 0
    for ch in text:
        run = run + 1 if ch == letter else 0
        best = max(best, run)
    return best


class TestRunProfile:
    def test_frozen_example(self):
        profile = run_profile(ts("HHTH"))
        assert profile.heads == (1, 2, 2, 2)
        assert profile.tails == (0, 0, 1, 1)

    def test_constant_string(self):
        profile = run_profile(ts("TTTT"))
        assert profile.heads == (0, 0, 0, 0)
        assert profile.tails == (1, 2, 3, 4)

    def test_matches_brute_force_on_every_prefix(self):
        rng = random.Random(7)
        for _ in range(200):
            n = rng.randint(1, 14)
            s = TossString(n, rng.randrange(1 << n))
            profile = run_profile(s)
            for p in range(1, n + 1):
                assert profile.h(p) == brute_longest_run(s.text[:p], "H")
                assert profile.t(p) == brute_longest_run(s.text[:p], "T")

    def test_profiles_never_decrease(self):
        for n in range(1, 7):
            for code in range(1 << n):
                profile = run_profile(TossString(n, code))
                assert list(profile.heads) == sorted(profile.heads)
                assert list(profile.tails) == sorted(profile.tails)


class TestPredictByRuns:
    def test_doubled_openings_are_infinite(self):
        assert predict_by_runs(ts("HH"), ts("TT")) == Prediction(
            "run-length-gap", INFINITE
        )
        assert predict_by_runs(ts("HHTH"), ts("TTHT")) is not None
        assert predict_by_runs(ts("TTHH"), ts("HHTT")) is not None

    def test_gap_visible_only_in_a_longer_prefix(self):
        # Gaps open at p = 5: HTHHH vs THTTT.
        assert predict_by_runs(ts("HTHHH"), ts("THTTT")) is not None

    def test_silent_on_close_strings(self):
        assert predict_by_runs(ts("HTHT"), ts("HTHH")) is None
        assert predict_by_runs(ts("HHTT"), ts("THHH")) is None

    def test_fired_predictions_are_sound(self):
        for n in range(2, 7):
            for alice, bob in all_pairs(n):
                fired = predict_by_runs(alice, bob)
                if fired is not None:
                    assert play(alice, bob)[0].is_infinite, (alice, bob)


class TestPredictLargeOverlap:
    def test_equal_but_last_even_length(self):
        fired = predict_large_overlap(ts("HHTH"), ts("HHTT"))
        assert fired == Prediction("equal-but-last", BOB_WINS, tosses=4)

    def test_equal_but_last_odd_length(self):
        fired = predict_large_overlap(ts("HTT"), ts("HTH"))
        assert fired == Prediction("equal-but-last", ALICE_WINS, tosses=3)

    def test_one_step_shadow(self):
        fired = predict_large_overlap(ts("HTTH"), ts("HHTT"))
        assert fired == Prediction("one-step-shadow", BOB_WINS)
        outcome, trace = play(ts("HTTH"), ts("HHTT"))
        assert outcome.kind is BOB_WINS
        assert trace.text == "HHTT"

    def test_one_step_shadow_under_complement(self):
        fired = predict_large_overlap(ts("THHT"), ts("TTHH"))
        assert fired == Prediction("one-step-shadow", BOB_WINS)

    def test_two_step_shadow(self):
        fired = predict_large_overlap(ts("HHTT"), ts("HTHH"))
        assert fired == Prediction("two-step-shadow", BOB_WINS)

    def test_two_step_shadow_needs_length_four(self):
        assert predict_large_overlap(ts("HHT"), ts("HTH")) is None

    def test_silent_without_overlap(self):
        assert predict_large_overlap(ts("HHTT"), ts("THHH")) is None

    def test_fired_predictions_are_sound(self):
        for n in range(1, 7):
            for alice, bob in all_pairs(n):
                fired = predict_large_overlap(alice, bob)
                if fired is None:
                    continue
                outcome, _ = play(alice, bob)
                assert outcome.kind is fired.kind, (alice, bob, fired)
                if fired.tosses is not None:
                    assert outcome.tosses == fired.tosses, (alice, bob, fired)


class TestPredictSpecialStrings:
    def test_constant_alice_near_match_exception(self):
        fired = predict_special_strings(ts("HHH"), ts("HHT"))
        assert fired == Prediction("constant-alice", ALICE_WINS, tosses=3)

    def test_constant_alice_odd_positions(self):
        fired = predict_special_strings(ts("HHHH"), ts("HTHT"))
        assert fired == Prediction("constant-alice", BOB_WINS, tosses=4)

    def test_constant_alice_even_positions(self):
        fired = predict_special_strings(ts("HHHH"), ts("THTH"))
        assert fired == Prediction("constant-alice", BOB_WINS, tosses=5)
        outcome, _ = play(ts("HHHH"), ts("THTH"))
        assert outcome.kind is BOB_WINS and outcome.tosses == 5

    def test_constant_alice_otherwise_infinite(self):
        fired = predict_special_strings(ts("HHHH"), ts("TTHH"))
        assert fired == Prediction("constant-alice", INFINITE)

    def test_constant_bob_near_match_exception(self):
        fired = predict_special_strings(ts("HHHT"), ts("HHHH"))
        assert fired == Prediction("constant-bob", BOB_WINS, tosses=4)

    def test_constant_bob_even_positions(self):
        fired = predict_special_strings(ts("THTH"), ts("HHHH"))
        assert fired == Prediction("constant-bob", ALICE_WINS, tosses=4)

    def test_constant_bob_odd_positions(self):
        fired = predict_special_strings(ts("HTHT"), ts("HHHH"))
        assert fired == Prediction("constant-bob", ALICE_WINS, tosses=5)

    def test_constant_complement_closure(self):
        fired = predict_special_strings(ts("TTTT"), ts("HTHT"))
        assert fired == Prediction("constant-alice", BOB_WINS, tosses=5)

    @pytest.mark.parametrize("tail", ["HH", "HT", "TH", "TT"])
    def test_alternating_beats_doubled_openings(self, tail):
        fired = predict_special_strings(ts("HTHT"), ts("TT" + tail))
        if tail == "TT":
            # The doubled opponent is constant, so the constant rule speaks.
            assert fired == Prediction("constant-bob", ALICE_WINS, tosses=4)
        else:
            assert fired == Prediction("alternating-vs-doubled", ALICE_WINS, tosses=4)

    def test_alternating_bob_wins_one_later(self):
        fired = predict_special_strings(ts("TTHH"), ts("HTHT"))
        assert fired == Prediction("alternating-vs-doubled", BOB_WINS, tosses=5)

    def test_silent_on_generic_pairs(self):
        assert predict_special_strings(ts("HHTT"), ts("THHH")) is None
        assert predict_special_strings(ts("HTHH"), ts("THTT")) is None

    def test_fired_predictions_are_sound(self):
        for n in range(1, 7):
            for alice, bob in all_pairs(n):
                fired = predict_special_strings(alice, bob)
                if fired is None:
                    continue
                outcome, _ = play(alice, bob)
                assert outcome.kind is fired.kind, (alice, bob, fired)
                if fired.tosses is not None:
                    assert outcome.tosses == fired.tosses, (alice, bob, fired)


class TestMutualConsistency:
    def test_all_fired_predictions_agree_with_each_other(self):
        for n in range(1, 7):
            for alice, bob in all_pairs(n):
                kinds = {p.kind for p in all_predictions(alice, bob)}
                assert len(kinds) <= 1, (alice, bob, kinds)

    def test_validation_matches_engine(self):
        with pytest.raises(ValueError):
            predict_by_runs(ts("HT"), ts("HT"))
        with pytest.raises(ValueError):
            predict_large_overlap(ts("HT"), ts("HTT"))
