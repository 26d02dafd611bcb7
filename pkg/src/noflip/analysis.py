"""Winner prediction from string shape, without playing the game.

Each predictor inspects the two committed strings and, when its
hypothesis applies, announces the result of the playout; outside its
hypothesis it returns ``None`` and says nothing.  Three families are
covered:

* ``predict_by_runs`` — if, within some prefix length, one player's
  longest H-run and the other's longest T-run are each ahead by two or
  more (in opposite directions), neither string can ever complete and
  the game is infinite.
* ``predict_large_overlap`` — heavily overlapping strings: equal
  except for the last toss (winner decided by the parity of the
  length), or one string trailing the other by one or two positions.
* ``predict_special_strings`` — one string constant, or one string
  alternating against an opponent that opens with the doubled
  opposite letter.

Every fired prediction is checked against the real playout by the
enumeration module's ``predicates`` verification suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import OutcomeKind, Toss, TossString, _validate_pair

_SWAP = str.maketrans("HT", "TH")


@dataclass(frozen=True)
class RunProfile:
    """Longest H-run and T-run within every prefix of a string.

    ``h(p)`` / ``t(p)`` give the longest run of H / T inside the first
    p tosses, for 1-based p up to the string length.
    """

    source: TossString
    heads: tuple[int, ...]
    tails: tuple[int, ...]

    def h(self, p: int) -> int:
        return self.heads[p - 1]

    def t(self, p: int) -> int:
        return self.tails[p - 1]


def run_profile(s: TossString) -> RunProfile:
    heads: list[int] = []
    tails: list[int] = []
    best_h = best_t = run = 0
    prev = ""
    for ch in s.text:
        run = run + 1 if ch == prev else 1
        prev = ch
        if ch == "H":
            best_h = max(best_h, run)
        else:
            best_t = max(best_t, run)
        heads.append(best_h)
        tails.append(best_t)
    return RunProfile(s, tuple(heads), tuple(tails))


@dataclass(frozen=True)
class Prediction:
    """A predicted result: which rule fired, the outcome class, and the
    winning toss count when the underlying statement supplies one."""

    rule: str
    kind: OutcomeKind
    tosses: int | None = None


def predict_by_runs(alice: TossString, bob: TossString) -> Prediction | None:
    """Infinite-game test from run-length gaps.

    Fires when some prefix length p has one player more than one ahead
    on H-runs while the other is more than one ahead on T-runs: then
    neither player can ever assemble the other's longer run, and the
    playout cycles.  Covers the doubled-opening corollary (one string
    starting HH, the other TT) at p = 2.
    """
    n = _validate_pair(alice, bob)
    pa, pb = run_profile(alice), run_profile(bob)
    for p in range(1, n + 1):
        ahead_b = pa.h(p) + 1 < pb.h(p) and pb.t(p) + 1 < pa.t(p)
        ahead_a = pb.h(p) + 1 < pa.h(p) and pa.t(p) + 1 < pb.t(p)
        if ahead_a or ahead_b:
            return Prediction("run-length-gap", OutcomeKind.INFINITE)
    return None


def _overlap_rules(a: str, b: str, n: int) -> Prediction | None:
    # One string one step behind the other: Bob spends one toss, then
    # rides Alice's own prefix home.
    if n >= 2 and a.startswith("HT") and b.startswith("HH") and b[1:] == a[: n - 1]:
        return Prediction("one-step-shadow", OutcomeKind.BOB_WINS)
    # Two steps behind, with the doubled opening absorbed up front.
    if n >= 4 and a[:2] == "HH" and b[:4] == "HTHH" and b[4:] == a[2 : n - 2]:
        return Prediction("two-step-shadow", OutcomeKind.BOB_WINS)
    return None


def predict_large_overlap(alice: TossString, bob: TossString) -> Prediction | None:
    """Predictions for strings that overlap on almost every position.

    Applies, in order: equal except for the final toss (the parity of n
    hands the winning toss to one player); Bob shadowing Alice one
    position behind; Bob shadowing two positions behind.  The shadow
    rules also apply under complementing both strings.
    """
    n = _validate_pair(alice, bob)
    a, b = alice.text, bob.text
    if a[: n - 1] == b[: n - 1]:
        # Distinct strings sharing the first n-1 tosses differ at the last:
        # play stays synchronized and toss n goes to the mover of that turn.
        if n % 2 == 0:
            return Prediction("equal-but-last", OutcomeKind.BOB_WINS, tosses=n)
        return Prediction("equal-but-last", OutcomeKind.ALICE_WINS, tosses=n)
    for a_view, b_view in ((a, b), (a.translate(_SWAP), b.translate(_SWAP))):
        fired = _overlap_rules(a_view, b_view, n)
        if fired is not None:
            return fired
    return None


def _positions_all(text: str, letter: str, parity: int) -> bool:
    """True when every 1-based position of the given parity holds `letter`."""
    return all(
        ch == letter for i, ch in enumerate(text, start=1) if i % 2 == parity
    )


def _constant_opponent(
    constant_letter: str, other: str, n: int, constant_is_alice: bool
) -> Prediction | None:
    x = constant_letter
    near_match = x * (n - 1) + ("T" if x == "H" else "H")
    if constant_is_alice:
        # The constant mover always repeats her letter; the opponent wins
        # exactly when his string rides that stream from an odd or even
        # alignment, except for the near-match string on odd lengths.
        if other == near_match and n % 2 == 1:
            return Prediction("constant-alice", OutcomeKind.ALICE_WINS, tosses=n)
        if _positions_all(other, x, 1):
            return Prediction("constant-alice", OutcomeKind.BOB_WINS, tosses=n)
        if _positions_all(other, x, 0):
            return Prediction("constant-alice", OutcomeKind.BOB_WINS, tosses=n + 1)
        return Prediction("constant-alice", OutcomeKind.INFINITE)
    if other == near_match and n % 2 == 0:
        return Prediction("constant-bob", OutcomeKind.BOB_WINS, tosses=n)
    if _positions_all(other, x, 0):
        return Prediction("constant-bob", OutcomeKind.ALICE_WINS, tosses=n)
    if _positions_all(other, x, 1):
        return Prediction("constant-bob", OutcomeKind.ALICE_WINS, tosses=n + 1)
    return Prediction("constant-bob", OutcomeKind.INFINITE)


def predict_special_strings(alice: TossString, bob: TossString) -> Prediction | None:
    """Predictions for constant and alternating strings.

    A constant string settles every game: the opponent wins if their
    string matches the constant letter on all odd or all even
    positions (with one near-match exception decided by parity), and
    otherwise the game is infinite.  An alternating string beats any
    opponent that opens with the doubled opposite letter.
    """
    n = _validate_pair(alice, bob)
    if alice.is_constant():
        return _constant_opponent(alice.text[0], bob.text, n, constant_is_alice=True)
    if bob.is_constant():
        return _constant_opponent(bob.text[0], alice.text, n, constant_is_alice=False)
    if n >= 2:
        opposite = {"H": "T", "T": "H"}
        if alice.is_alternating() and bob.text[:2] == opposite[alice.text[0]] * 2:
            return Prediction("alternating-vs-doubled", OutcomeKind.ALICE_WINS, tosses=n)
        if bob.is_alternating() and alice.text[:2] == opposite[bob.text[0]] * 2:
            return Prediction(
                "alternating-vs-doubled", OutcomeKind.BOB_WINS, tosses=n + 1
            )
    return None


def all_predictions(alice: TossString, bob: TossString) -> list[Prediction]:
    """Every prediction that fires on the pair, in family order."""
    fired = [
        predict_by_runs(alice, bob),
        predict_large_overlap(alice, bob),
        predict_special_strings(alice, bob),
    ]
    return [p for p in fired if p is not None]
