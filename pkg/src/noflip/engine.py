"""Deterministic playout engine for the No-Flippancy coin game.

Alice and Bob each commit to a distinct H/T string of the same length n
and then take turns naming coin tosses, Alice first.  A player's
*progress* is the length of the longest suffix of the toss sequence so
far that is a prefix of their own string, and the mover always names
the character of their string sitting just past their current progress.
The first string to appear as a block of consecutive tosses wins.

Every move is forced, so a pair of strings determines the whole game.
The pair (alice progress, bob progress, whose turn) determines the
future of the game as well; if that triplet ever repeats, the game
cycles forever and is classified Infinite.  Finite games of length-n
strings end within ``finite_toss_bound(n)`` tosses, which the engine
asserts as a cross-check on every playout.

Progress updates are answered by a precomputed pattern-matching
automaton per string (transition table derived from the classic
failure function), so each toss costs O(1).  The direct
suffix-comparison formula is kept as :func:`scan_progress` and serves
as an independent oracle for the automaton in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

MAX_LENGTH = 63  # a packed toss string must fit in one machine word

_H, _T = 0, 1


class Toss(Enum):
    """One coin outcome."""

    H = "H"
    T = "T"

    def complement(self) -> Toss:
        return Toss.T if self is Toss.H else Toss.H


class Player(Enum):
    ALICE = "A"
    BOB = "B"

    def opponent(self) -> Player:
        return Player.BOB if self is Player.ALICE else Player.ALICE


@dataclass(frozen=True, repr=False)
class TossString:
    """An immutable H/T string of length 1..63.

    The string is bit-packed with the first toss in the highest bit,
    H=0 and T=1, so that integer order on ``bits`` coincides with
    lexicographic order on the text with H < T.  Public accessors use
    1-based positions.
    """

    length: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.length <= MAX_LENGTH:
            raise ValueError(
                f"toss string length must be 1..{MAX_LENGTH}, got {self.length}"
            )
        if not 0 <= self.bits < (1 << self.length):
            raise ValueError(
                f"bits 0x{self.bits:x} out of range for length {self.length}"
            )

    @classmethod
    def from_text(cls, text: str) -> TossString:
        if not text:
            raise ValueError("toss string must not be empty")
        if len(text) > MAX_LENGTH:
            raise ValueError(
                f"toss string longer than {MAX_LENGTH} tosses: {len(text)}"
            )
        bits = 0
        for ch in text:
            if ch == "H":
                bits = bits << 1
            elif ch == "T":
                bits = (bits << 1) | 1
            else:
                raise ValueError(f"invalid toss {ch!r} (only 'H' and 'T' allowed)")
        return cls(len(text), bits)

    @property
    def text(self) -> str:
        return "".join(
            "T" if (self.bits >> (self.length - 1 - j)) & 1 else "H"
            for j in range(self.length)
        )

    def at(self, i: int) -> Toss:
        """Toss at 1-based position ``i``."""
        if not 1 <= i <= self.length:
            raise ValueError(f"position {i} out of range 1..{self.length}")
        return Toss.T if (self.bits >> (self.length - i)) & 1 else Toss.H

    def complement(self) -> TossString:
        mask = (1 << self.length) - 1
        return TossString(self.length, self.bits ^ mask)

    def is_constant(self) -> bool:
        return self.bits == 0 or self.bits == (1 << self.length) - 1

    def is_alternating(self) -> bool:
        """True when no two adjacent tosses are equal."""
        return self.first_double() is None

    def first_double(self) -> int | None:
        """Smallest 1-based k with position k equal to position k+1."""
        text = self.text
        for k in range(self.length - 1):
            if text[k] == text[k + 1]:
                return k + 1
        return None

    def leading_run(self) -> int:
        """Length of the initial run of the first toss."""
        text = self.text
        run = 1
        while run < self.length and text[run] == text[0]:
            run += 1
        return run

    def __len__(self) -> int:
        return self.length

    def __iter__(self):
        return (self.at(i) for i in range(1, self.length + 1))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"TossString({self.text!r})"


def parse_toss_string(text: str) -> TossString:
    """Parse uppercase 'H'/'T' text into a :class:`TossString`."""
    return TossString.from_text(text)


def _char_bits(length: int, bits: int) -> tuple[int, ...]:
    """The string as a tuple of 0 (H) / 1 (T), first toss first."""
    return tuple((bits >> (length - 1 - j)) & 1 for j in range(length))


def _failure_table(chars: tuple[int, ...]) -> tuple[int, ...]:
    """failure[i] = longest proper border of the first i+1 characters."""
    fail = [0] * len(chars)
    k = 0
    for i in range(1, len(chars)):
        while k and chars[i] != chars[k]:
            k = fail[k - 1]
        if chars[i] == chars[k]:
            k += 1
        fail[i] = k
    return tuple(fail)


def _transition_rows(
    chars: tuple[int, ...], fail: tuple[int, ...]
) -> tuple[tuple[int, int], ...]:
    """rows[s][c] = progress after reading toss c in progress state s."""
    rows: list[tuple[int, int]] = []
    for state in range(len(chars)):
        row = [0, 0]
        for c in (_H, _T):
            if c == chars[state]:
                row[c] = state + 1
            elif state:
                row[c] = rows[fail[state - 1]][c]
        rows.append((row[0], row[1]))
    return tuple(rows)


@lru_cache(maxsize=4096)
def _tables_for(length: int, bits: int) -> tuple[tuple[int, ...], tuple[tuple[int, int], ...]]:
    chars = _char_bits(length, bits)
    return chars, _transition_rows(chars, _failure_table(chars))


@dataclass(frozen=True)
class ProgressAutomaton:
    """Progress tracker for one pattern string.

    ``step(state, toss)`` maps a progress value in 0..n-1 and a toss to
    the new progress in 0..n: the length of the longest suffix of the
    extended output that is a prefix of the pattern.  Reaching n means
    the pattern just appeared.
    """

    pattern: TossString
    failure: tuple[int, ...]
    table: tuple[tuple[int, int], ...]

    @classmethod
    def build(cls, pattern: TossString) -> ProgressAutomaton:
        chars = _char_bits(pattern.length, pattern.bits)
        fail = _failure_table(chars)
        return cls(pattern, fail, _transition_rows(chars, fail))

    def step(self, state: int, toss: Toss) -> int:
        if not 0 <= state < self.pattern.length:
            raise ValueError(
                f"progress {state} out of range 0..{self.pattern.length - 1}"
            )
        return self.table[state][_T if toss is Toss.T else _H]


def scan_progress(pattern: str, output: str) -> int:
    """Progress by direct comparison: the longest suffix of ``output``
    that is a prefix of ``pattern``.  Reference oracle for the
    automaton; quadratic and only used in verification paths."""
    limit = min(len(pattern), len(output))
    for i in range(limit, 0, -1):
        if output[len(output) - i :] == pattern[:i]:
            return i
    return 0


@dataclass(frozen=True)
class GameState:
    """Snapshot after toss k: both progress values and whose turn is next.

    Alice moves on odd tosses, so it is her turn exactly when k is even;
    the constructor rejects inconsistent turn/k combinations.
    """

    a: int
    b: int
    turn: Player
    k: int

    def __post_init__(self) -> None:
        if self.a < 0 or self.b < 0 or self.k < 0:
            raise ValueError("progress values and toss count must be non-negative")
        if (self.k % 2 == 0) != (self.turn is Player.ALICE):
            raise ValueError(
                f"turn {self.turn.value} inconsistent with toss count {self.k}"
            )

    @property
    def triplet(self) -> tuple[int, int, Player]:
        return (self.a, self.b, self.turn)


START_STATE = GameState(0, 0, Player.ALICE, 0)


class OutcomeKind(Enum):
    ALICE_WINS = "alice_wins"
    BOB_WINS = "bob_wins"
    INFINITE = "infinite"


@dataclass(frozen=True)
class Outcome:
    """Result of a playout.

    Wins carry the 1-based toss count of the winning toss.  Infinite
    outcomes carry ``entry``, the state index at which the repeated
    triplet first occurred, and ``period``, the cycle length in tosses.
    """

    kind: OutcomeKind
    tosses: int | None = None
    entry: int | None = None
    period: int | None = None

    @staticmethod
    def alice_wins(tosses: int) -> Outcome:
        return Outcome(OutcomeKind.ALICE_WINS, tosses=tosses)

    @staticmethod
    def bob_wins(tosses: int) -> Outcome:
        return Outcome(OutcomeKind.BOB_WINS, tosses=tosses)

    @staticmethod
    def infinite(entry: int, period: int) -> Outcome:
        return Outcome(OutcomeKind.INFINITE, entry=entry, period=period)

    @property
    def is_infinite(self) -> bool:
        return self.kind is OutcomeKind.INFINITE

    @property
    def winner(self) -> Player | None:
        if self.kind is OutcomeKind.ALICE_WINS:
            return Player.ALICE
        if self.kind is OutcomeKind.BOB_WINS:
            return Player.BOB
        return None

    def describe(self) -> str:
        if self.kind is OutcomeKind.ALICE_WINS:
            return f"AliceWins at toss {self.tosses}"
        if self.kind is OutcomeKind.BOB_WINS:
            return f"BobWins at toss {self.tosses}"
        return f"Infinite (entry {self.entry}, period {self.period})"


@dataclass(frozen=True)
class GameTrace:
    """Emitted tosses plus the state before each toss and one terminal state."""

    tosses: tuple[Toss, ...]
    states: tuple[GameState, ...]

    @property
    def text(self) -> str:
        return "".join(t.value for t in self.tosses)


def finite_toss_bound(n: int) -> int:
    """Latest toss at which a game of length-n strings can still end.

    Counting the reachable progress/turn triplets gives 4n - 4 for
    n >= 2; a single-letter game always ends on toss 1.
    """
    if n < 1:
        raise ValueError(f"string length must be positive, got {n}")
    return 1 if n == 1 else 4 * n - 4


def next_choice(state: GameState, mover: TossString) -> Toss:
    """The toss the player to move names: the character of their own
    string just past their current progress (1-based position p+1)."""
    p = state.a if state.turn is Player.ALICE else state.b
    if p >= mover.length:
        raise ValueError("mover's string already appeared; the game is over")
    return mover.at(p + 1)


def advance(
    state: GameState,
    toss: Toss,
    alice_automaton: ProgressAutomaton,
    bob_automaton: ProgressAutomaton,
) -> GameState:
    """Apply one toss to both progress trackers and flip the turn."""
    if state.a >= alice_automaton.pattern.length:
        raise ValueError("alice's string already appeared; cannot advance")
    if state.b >= bob_automaton.pattern.length:
        raise ValueError("bob's string already appeared; cannot advance")
    return GameState(
        alice_automaton.step(state.a, toss),
        bob_automaton.step(state.b, toss),
        state.turn.opponent(),
        state.k + 1,
    )


def _validate_pair(alice: TossString, bob: TossString) -> int:
    if alice.length != bob.length:
        raise ValueError(
            f"strings must have equal length, got {alice.length} and {bob.length}"
        )
    if alice == bob:
        raise ValueError("the two strings must be distinct")
    return alice.length


def play(alice: TossString, bob: TossString) -> tuple[Outcome, GameTrace]:
    """Run the forced playout to a win or a repeated state.

    Returns the outcome and the full trace.  State repetition is the
    primary Infinite classifier; the counting bound from
    :func:`finite_toss_bound` is asserted afterwards as a cross-check.
    """
    n = _validate_pair(alice, bob)
    ca, ra = _tables_for(alice.length, alice.bits)
    cb, rb = _tables_for(bob.length, bob.bits)

    a = b = k = 0
    seen: dict[tuple[int, int, int], int] = {}
    tosses: list[Toss] = []
    states: list[GameState] = [START_STATE]
    outcome: Outcome

    while True:
        key = (a, b, k & 1)
        if key in seen:
            entry = seen[key]
            outcome = Outcome.infinite(entry, k - entry)
            break
        seen[key] = k
        c = ca[a] if k % 2 == 0 else cb[b]
        a = ra[a][c]
        b = rb[b][c]
        k += 1
        tosses.append(Toss.T if c else Toss.H)
        states.append(
            GameState(a, b, Player.ALICE if k % 2 == 0 else Player.BOB, k)
        )
        if a == n:
            outcome = Outcome.alice_wins(k)
            break
        if b == n:
            outcome = Outcome.bob_wins(k)
            break

    bound = finite_toss_bound(n)
    if outcome.is_infinite:
        assert outcome.entry + outcome.period <= bound, (alice, bob, outcome)
    else:
        assert outcome.tosses <= bound, (alice, bob, outcome)
    return outcome, GameTrace(tuple(tosses), tuple(states))


def state_sequence(alice: TossString, bob: TossString) -> tuple[GameState, ...]:
    """The state visited before each toss plus the terminal state."""
    return play(alice, bob)[1].states
