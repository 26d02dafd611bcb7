import json

import pytest

from noflip import cli, enumeration
from noflip.enumeration import VerifyReport


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestSimulate:
    def test_text_output(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--alice", "HHTT", "--bob", "THHH", "--states"
        )
        lines = out.splitlines()
        assert code == 0
        assert lines[0] == "BobWins at toss 8"
        assert lines[1] == "trace: HTHHTHHH"
        assert lines[2].startswith("states: (0,0,A,0), (1,0,B,1)")
        assert lines[2].endswith("(2,4,A,8)")
        assert lines[2].count("(") == 9

    def test_json_finite(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--alice", "HTHT", "--bob", "HHTH",
            "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["outcome"] == {"kind": "bob_wins", "tosses": 4}
        assert len(doc["trace"]) == 4
        assert "states" not in doc

    def test_json_infinite_with_states(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--alice", "HH", "--bob", "TT",
            "--states", "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc["outcome"] == {"kind": "infinite", "entry": 1, "period": 2}
        assert doc["trace"] == "HTH"
        assert doc["states"][0] == [0, 0, "A", 0]
        assert len(doc["states"]) == 4

    def test_predictions_shown(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--alice", "HH", "--bob", "TT", "--predict"
        )
        assert code == 0
        assert "predicted: run-length-gap -> infinite" in out

    def test_predictions_can_be_empty(self, capsys):
        code, out, _ = run_cli(
            capsys, "simulate", "--alice", "HTT", "--bob", "THH", "--predict"
        )
        assert code == 0
        assert "predicted: none" in out

    def test_bad_letters_are_usage_errors(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--alice", "HX", "--bob", "HH")
        assert code == 2
        assert err.startswith("noflip:")

    def test_unequal_lengths_are_usage_errors(self, capsys):
        code, _, err = run_cli(capsys, "simulate", "--alice", "H", "--bob", "HH")
        assert code == 2
        assert err.startswith("noflip:")

    @pytest.mark.parametrize("n", [2, 3])
    def test_trace_round_trips(self, capsys, n):
        # The printed trace must itself witness the printed outcome: the
        # first completion happens exactly at the final toss for finite
        # games, and never happens for repeating ones.
        from noflip import TossString

        for a_code in range(1 << n):
            for b_code in range(1 << n):
                if a_code == b_code:
                    continue
                alice = TossString(n, a_code).text
                bob = TossString(n, b_code).text
                code, out, _ = run_cli(
                    capsys, "simulate", "--alice", alice, "--bob", bob,
                    "--format", "json",
                )
                assert code == 0
                doc = json.loads(out)
                trace = doc["trace"]
                outcome = doc["outcome"]
                if outcome["kind"] == "infinite":
                    entry, period = outcome["entry"], outcome["period"]
                    extended = trace
                    while len(extended) < len(trace) + 2 * period:
                        j = entry + (len(extended) - entry) % period
                        extended += trace[j]
                    full, winner = extended, None
                else:
                    assert len(trace) == outcome["tosses"]
                    full = trace
                    winner = alice if outcome["kind"] == "alice_wins" else bob
                for stop in range(1, len(full) + 1):
                    prefix = full[:stop]
                    done = prefix.endswith(alice) or prefix.endswith(bob)
                    expected = winner is not None and stop == len(trace)
                    assert done == expected
                if winner is not None:
                    assert full.endswith(winner)


class TestForce:
    def test_found_text(self, capsys):
        code, out, _ = run_cli(
            capsys, "force", "--role", "bob", "--goal", "win",
            "--opponent", "HTHH",
        )
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "found: THTH via flip-before-first-double"
        assert lines[1] == "verified: BobWins at toss 5"

    def test_impossible_text(self, capsys):
        code, out, _ = run_cli(
            capsys, "force", "--role", "alice", "--goal", "loss",
            "--opponent", "HHH",
        )
        assert code == 0
        assert out.strip() == "impossible (odd-length-constant-opponent)"

    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "force", "--role", "alice", "--goal", "win",
            "--opponent", "HTHH", "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc == {
            "status": "found",
            "method": "flip-first-letter",
            "constructed": "THTH",
            "outcome": {"kind": "alice_wins", "tosses": 4},
        }

    def test_search_cap_controls_the_fallback(self, capsys):
        code, out, _ = run_cli(
            capsys, "force", "--role", "bob", "--goal", "loss",
            "--opponent", "HHTTHHTTHH", "--search-cap", "9",
        )
        assert code == 3
        assert "unknown" in out
        code, out, _ = run_cli(
            capsys, "force", "--role", "bob", "--goal", "loss",
            "--opponent", "HHTTHHTTHH", "--search-cap", "10",
        )
        assert code == 0
        assert out.splitlines()[0] == "found: HHHTTHHTTT via exhaustive-search"


class TestEnumerate:
    def test_census_csv(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--n", "1..4", "--format", "csv"
        )
        assert code == 0
        assert out.splitlines() == [
            "n,total,bob_wins,alice_wins,infinite",
            "1,2,0,2,0",
            "2,12,6,4,2",
            "3,56,16,26,14",
            "4,240,84,64,92",
        ]

    def test_census_json_proportions(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--n", "4", "--format", "json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["bob_proportion"] == 0.35
        assert '"alice_proportion": 0.266666666666667' in out
        assert '"infinite_proportion": 0.383333333333333' in out

    def test_census_text(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "2")
        assert code == 0
        assert out.strip() == "n=2: 12 games, 6 bob wins, 4 alice wins, 2 infinite"

    def test_longest_range_prints_sequence(self, capsys):
        code, out, _ = run_cli(
            capsys, "enumerate", "--n", "1..5", "--what", "longest"
        )
        assert code == 0
        assert "sequence: 1,3,4,8,9" in out

    def test_longest_single_prints_pairs(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "2", "--what", "longest")
        assert code == 0
        assert "pairs: HH/TH, TT/HT" in out

    def test_noloss_text(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "4", "--what", "noloss")
        assert code == 0
        assert out.strip() == "n=4: HHTT"

    def test_csv_is_census_only(self, capsys):
        code, _, err = run_cli(
            capsys, "enumerate", "--n", "4", "--what", "longest", "--format", "csv"
        )
        assert code == 2
        assert "census" in err

    def test_threads_do_not_change_the_bytes(self, capsys):
        _, sequential, _ = run_cli(
            capsys, "enumerate", "--n", "1..5", "--format", "csv"
        )
        _, threaded, _ = run_cli(
            capsys, "enumerate", "--n", "1..5", "--format", "csv", "--threads", "2"
        )
        assert threaded == sequential

    def test_repeat_runs_are_byte_identical(self, capsys):
        args = ("enumerate", "--n", "1..4", "--what", "longest", "--format", "json")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_threads_auto(self, capsys):
        code, out, _ = run_cli(capsys, "enumerate", "--n", "3", "--threads", "auto")
        assert code == 0
        assert "n=3:" in out

    def test_env_cap_blocks_large_sweeps(self, capsys, monkeypatch):
        monkeypatch.setenv("NOFLIP_SWEEP_CAP", "3")
        code, _, err = run_cli(capsys, "enumerate", "--n", "4")
        assert code == 2
        assert "cap" in err

    def test_env_cap_must_be_a_number(self, capsys, monkeypatch):
        monkeypatch.setenv("NOFLIP_SWEEP_CAP", "plenty")
        code, _, err = run_cli(capsys, "enumerate", "--n", "2")
        assert code == 2
        assert "NOFLIP_SWEEP_CAP" in err

    @pytest.mark.parametrize("bad", ["0", "5..2", "x", "2..y"])
    def test_bad_length_ranges(self, capsys, bad):
        code, _, _ = run_cli(capsys, "enumerate", "--n", bad)
        assert code == 2


class TestVerify:
    def test_single_suite_ok(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "2", "--suite", "bound")
        assert code == 0
        assert out.strip() == "bound n=2: 12 checks, 0 violations [ok]"

    def test_all_suites_by_default(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "--n", "2")
        assert code == 0
        assert len(out.splitlines()) == 4

    def test_json(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "--n", "2", "--suite", "symmetry",
            "--format", "json",
        )
        doc = json.loads(out)
        assert code == 0
        assert doc == {
            "suite": "symmetry", "n": 2, "checks": 12, "violations": [], "ok": True,
        }

    def test_violations_set_the_exit_code(self, capsys, monkeypatch):
        def broken(n, suite, *, cap=enumeration.DEFAULT_SWEEP_CAP):
            return VerifyReport(suite, n, 1, ("HH/TT: it broke",))

        monkeypatch.setattr(enumeration, "verify_suite", broken)
        code, out, _ = run_cli(capsys, "verify", "--n", "2", "--suite", "bound")
        assert code == 1
        assert "[FAILED]" in out
        assert "  HH/TT: it broke" in out


class TestTopLevel:
    def test_help_exits_cleanly(self, capsys):
        assert cli.main(["--help"]) == 0
        capsys.readouterr()

    def test_missing_command_is_usage(self, capsys):
        assert cli.main([]) == 2
        capsys.readouterr()

    def test_unknown_command_is_usage(self, capsys):
        assert cli.main(["conquer"]) == 2
        capsys.readouterr()
