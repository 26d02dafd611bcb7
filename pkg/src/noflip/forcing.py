"""Constructions that force a chosen result against a known opponent.

Each operation receives the opponent's committed string and builds the
caller's own string so that the deterministic playout ends the way the
caller wants: a win, a loss, or an infinite game.  Constructions are
closed-form where a shape rule applies; otherwise a bounded exhaustive
search runs over all candidate strings in lexicographic order (H < T).

Every returned string is verified by actually playing the game inside
the operation, so a construction bug surfaces as a hard failure rather
than a wrong answer.  Results are complement-covariant: forcing
against the complemented opponent returns the complemented string with
the same method label, because constructions are built in a normalized
frame (opponent starting with H) and mapped back.

Impossible answers are exact.  Shape rules prove the small exception
lists (short alternating opponents for infinite games, constant
opponents of the wrong parity for forced losses); the search path
proves impossibility by exhausting every candidate.  Opponents longer
than the search cap that fall off every shape rule come back as
``UNKNOWN`` rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .engine import Outcome, OutcomeKind, Player, TossString, play

DEFAULT_SEARCH_CAP = 16

_SWAP = str.maketrans("HT", "TH")


class ForceGoal(Enum):
    WIN = "win"
    LOSS = "loss"
    INFINITE_GAME = "infinite"


class ForceStatus(Enum):
    FOUND = "found"
    IMPOSSIBLE = "impossible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ForceResult:
    """Outcome of a forcing construction.

    ``constructed`` and ``verified_outcome`` are populated only for
    FOUND results; the outcome is the playout of the returned string
    against the given opponent.  ``method`` names the construction
    rule that produced the answer (or ``exhaustive-search``).
    """

    status: ForceStatus
    method: str
    constructed: TossString | None = None
    verified_outcome: Outcome | None = None


_GOAL_KINDS = {
    (Player.ALICE, ForceGoal.WIN): OutcomeKind.ALICE_WINS,
    (Player.ALICE, ForceGoal.LOSS): OutcomeKind.BOB_WINS,
    (Player.ALICE, ForceGoal.INFINITE_GAME): OutcomeKind.INFINITE,
    (Player.BOB, ForceGoal.WIN): OutcomeKind.BOB_WINS,
    (Player.BOB, ForceGoal.LOSS): OutcomeKind.ALICE_WINS,
    (Player.BOB, ForceGoal.INFINITE_GAME): OutcomeKind.INFINITE,
}


def _comp(ch: str) -> str:
    return "T" if ch == "H" else "H"


def _playout(role: Player, opponent: TossString, own: TossString) -> Outcome:
    if role is Player.ALICE:
        return play(own, opponent)[0]
    return play(opponent, own)[0]


def _attempt(
    role: Player,
    goal: ForceGoal,
    opponent: TossString,
    candidate_text: str,
    method: str,
) -> ForceResult | None:
    candidate = TossString.from_text(candidate_text)
    if candidate == opponent:
        return None
    outcome = _playout(role, opponent, candidate)
    if outcome.kind is not _GOAL_KINDS[role, goal]:
        return None
    return ForceResult(ForceStatus.FOUND, method, candidate, outcome)


def _finish(
    role: Player,
    goal: ForceGoal,
    opponent: TossString,
    attempts: list[tuple[str, str]],
    flipped: bool,
    *,
    guaranteed: bool,
    cap: int = DEFAULT_SEARCH_CAP,
) -> ForceResult:
    """Try each (candidate text, method) in order, mapping back out of
    the normalized frame, and verify against the real opponent."""
    for text, method in attempts:
        if flipped:
            text = text.translate(_SWAP)
        result = _attempt(role, goal, opponent, text, method)
        if result is not None:
            return result
    if guaranteed:
        raise RuntimeError(
            f"verified construction failed for {role.value}/{goal.value} "
            f"against {opponent.text}; this is a bug"
        )
    return _search(role, goal, opponent, cap)


def _search(
    role: Player, goal: ForceGoal, opponent: TossString, cap: int
) -> ForceResult:
    """Deterministic fallback: scan all candidates in lexicographic
    order (computed in the normalized frame for complement covariance)."""
    n = opponent.length
    if n > cap:
        return ForceResult(ForceStatus.UNKNOWN, "exhaustive-search")
    flipped = opponent.at(1).value == "T"
    normalized = opponent.complement() if flipped else opponent
    for code in range(1 << n):
        candidate = TossString(n, code)
        if candidate == normalized:
            continue
        text = candidate.text.translate(_SWAP) if flipped else candidate.text
        result = _attempt(role, goal, opponent, text, "exhaustive-search")
        if result is not None:
            return result
    return ForceResult(ForceStatus.IMPOSSIBLE, "exhaustive-search")


def _normalize(opponent: TossString) -> tuple[str, bool]:
    """The opponent's text with a leading H, plus whether it was flipped."""
    if opponent.at(1).value == "T":
        return opponent.complement().text, True
    return opponent.text, False


# ---------------------------------------------------------------------------
# forcing a win


def bob_force_win(alice: TossString) -> ForceResult:
    """Bob picks a string that beats the given Alice string.

    Impossible only for single-toss games (Alice always wins those).
    Alternating opponents fall to doubling their first letter and then
    copying; any other opponent is beaten by flipping the letter whose
    doubling breaks their alternation and copying their prefix behind
    it.  Bob's win lands on toss n or n+1.
    """
    n = alice.length
    if n == 1:
        return ForceResult(ForceStatus.IMPOSSIBLE, "single-letter-alice-always-wins")
    a = alice.text
    if alice.is_alternating():
        attempts = [(a[0] + a[0] + a[1 : n - 1], "double-first-letter")]
    else:
        k = alice.first_double()
        attempts = [(_comp(a[k - 1]) + a[: n - 1], "flip-before-first-double")]
    return _finish(Player.BOB, ForceGoal.WIN, alice, attempts, False, guaranteed=True)


def alice_force_win(bob: TossString) -> ForceResult:
    """Alice picks a string that beats the given Bob string: flip his
    first letter and copy his prefix behind it.  She wins on toss n."""
    n = bob.length
    b = bob.text
    attempts = [(_comp(b[0]) + b[: n - 1], "flip-first-letter")]
    return _finish(Player.ALICE, ForceGoal.WIN, bob, attempts, False, guaranteed=True)


# ---------------------------------------------------------------------------
# forcing an infinite game


def bob_force_infinite(alice: TossString) -> ForceResult:
    """Bob picks a string that makes the game run forever.

    Impossible exactly for alternating opponents of length at most 4.
    An opponent with a doubled letter is stalled by the constant string
    of the opposite letter; a long alternating opponent is stalled by
    opening with the doubled letter and a block of three opposites.
    """
    return _force_infinite(Player.BOB, alice, longest_exception=4, block="HHTTT")


def alice_force_infinite(bob: TossString) -> ForceResult:
    """Alice picks a string that makes the game run forever.

    Impossible exactly for alternating opponents of length at most 5;
    otherwise mirrors the same constant / block-opening constructions
    (her block answers the opponent's alternation one step offset).
    """
    return _force_infinite(Player.ALICE, bob, longest_exception=5, block="THHTTT")


def _force_infinite(
    role: Player, opponent: TossString, longest_exception: int, block: str
) -> ForceResult:
    n = opponent.length
    if opponent.is_alternating():
        if n <= longest_exception:
            return ForceResult(ForceStatus.IMPOSSIBLE, "short-alternating-exception")
        flipped = opponent.at(1).value == "T"
        pad = n - len(block)
        attempts = [
            (block + "T" * pad, "alternating-block-cycle"),
            (block + "H" * pad, "alternating-block-cycle"),
        ]
        return _finish(
            role, ForceGoal.INFINITE_GAME, opponent, attempts, flipped, guaranteed=True
        )
    k = opponent.first_double()
    doubled = opponent.text[k - 1]
    attempts = [(_comp(doubled) * n, "all-opposite-letter")]
    return _finish(
        role, ForceGoal.INFINITE_GAME, opponent, attempts, False, guaranteed=True
    )


# ---------------------------------------------------------------------------
# forcing a loss


def alice_force_loss(bob: TossString, cap: int = DEFAULT_SEARCH_CAP) -> ForceResult:
    """Alice picks a string that hands Bob the win.

    Impossible exactly when the opponent is constant with odd length.
    Even lengths copy the opponent and flip the final toss.  Odd
    lengths use shape rules keyed to the opponent's opening (in the
    normalized frame: an HT start, an even run of Hs, or an odd run of
    Hs followed by a doubled T), each shifting the opponent's string
    onto Alice's odd-numbered turns; opponents that fit no rule go to
    exhaustive search.
    """
    n = bob.length
    if n % 2 == 1 and bob.is_constant():
        return ForceResult(ForceStatus.IMPOSSIBLE, "odd-length-constant-opponent")
    b, flipped = _normalize(bob)
    norm = TossString.from_text(b)
    attempts: list[tuple[str, str]] = []
    if n % 2 == 0:
        attempts.append((b[: n - 1] + _comp(b[n - 1]), "copy-flip-last"))
    if b.startswith("HT"):
        if norm.is_alternating():
            attempts.append(("T" * n, "all-opposite-letter"))
        else:
            d = norm.first_double()
            if b[d - 1] == "H":
                for pads in ("TT", "TH", "HT", "HH"):
                    attempts.append((b[2:] + pads, "drop-two-append-two"))
            else:
                for pad in "TH":
                    attempts.append((b[1:] + pad, "drop-one-append-one"))
    run = norm.leading_run()
    if run % 2 == 0:
        for pad in "TH":
            attempts.append((b[1:] + pad, "shift-after-even-run"))
    elif n % 2 == 1 and run + 2 <= n and b[run] == "T" and b[run + 1] == "T":
        for pad in "TH":
            attempts.append((b[1:] + pad, "shift-after-odd-run"))
    return _finish(
        Player.ALICE, ForceGoal.LOSS, bob, attempts, flipped, guaranteed=False, cap=cap
    )


def bob_force_loss(alice: TossString, cap: int = DEFAULT_SEARCH_CAP) -> ForceResult:
    """Bob picks a string that hands Alice the win.

    Impossible for constant opponents of even length, and for the
    handful of no-loss strings that exhaustive search uncovers.  Odd
    lengths copy the opponent and flip the final toss; an opponent
    opening with an odd run of its first letter is answered by the
    one-step shift.  Everything else goes to exhaustive search.
    """
    n = alice.length
    if n % 2 == 0 and alice.is_constant():
        return ForceResult(ForceStatus.IMPOSSIBLE, "even-length-constant-opponent")
    a, flipped = _normalize(alice)
    attempts: list[tuple[str, str]] = []
    if n % 2 == 1:
        attempts.append((a[: n - 1] + _comp(a[n - 1]), "copy-flip-last"))
    if alice.leading_run() % 2 == 1:
        for pad in "TH":
            attempts.append((a[1:] + pad, "shift-after-odd-run"))
    return _finish(
        Player.BOB, ForceGoal.LOSS, alice, attempts, flipped, guaranteed=False, cap=cap
    )


def force(
    role: Player,
    goal: ForceGoal,
    opponent: TossString,
    cap: int = DEFAULT_SEARCH_CAP,
) -> ForceResult:
    """Dispatch to the role/goal-specific operation."""
    if role is Player.BOB:
        if goal is ForceGoal.WIN:
            return bob_force_win(opponent)
        if goal is ForceGoal.INFINITE_GAME:
            return bob_force_infinite(opponent)
        return bob_force_loss(opponent, cap)
    if goal is ForceGoal.WIN:
        return alice_force_win(opponent)
    if goal is ForceGoal.INFINITE_GAME:
        return alice_force_infinite(opponent)
    return alice_force_loss(opponent, cap)
