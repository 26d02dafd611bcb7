"""Exhaustive sweeps over every ordered pair of strings of one length.

The sweep space for length n is all 2^n * (2^n - 1) ordered pairs of
distinct strings.  A census classifies every pair; other sweeps find
the longest finite games, the strings whose owner can never be handed
a loss, and run verification suites that replay the invariants of the
other modules against brute force.

The inner loop works on precomputed per-string transition tables and
classifies infinite games by the proven toss cutoff (no win within
``finite_toss_bound(n)`` tosses), which the ``bound`` suite checks
against the engine's repeated-state classifier on every pair.  Sweeps
are embarrassingly parallel over disjoint ranges of the first player's
string code; results merge in range order, so parallel and sequential
runs produce identical output.  Pair iteration is in lexicographic
order with H < T.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from .engine import (
    OutcomeKind,
    Player,
    TossString,
    _char_bits,
    _failure_table,
    _transition_rows,
    finite_toss_bound,
    play,
    scan_progress,
)
from . import forcing
from .analysis import all_predictions

DEFAULT_SWEEP_CAP = 14
SWEEP_CAP_ENV = "NOFLIP_SWEEP_CAP"

_ALICE_WIN, _BOB_WIN, _NO_WIN = 0, 1, 2

VERIFY_SUITES = ("bound", "predicates", "forcing", "symmetry")


def _check_sweep_args(n: int, cap: int, workers: int) -> None:
    if n < 1:
        raise ValueError(f"string length must be positive, got {n}")
    if n > cap:
        raise ValueError(
            f"length {n} exceeds the sweep cap {cap}; raise the cap explicitly "
            f"(or set {SWEEP_CAP_ENV}) if you really want 4^{n} games"
        )
    if workers < 1:
        raise ValueError(f"worker count must be positive, got {workers}")


@lru_cache(maxsize=8)
def _sweep_tables(n: int):
    """Per-code character tuples and transition tables for length n."""
    chars = []
    rows = []
    for code in range(1 << n):
        cb = _char_bits(n, code)
        chars.append(cb)
        rows.append(_transition_rows(cb, _failure_table(cb)))
    return tuple(chars), tuple(rows)


def _playout_code(ca, ra, cb, rb, n: int, bound: int) -> tuple[int, int]:
    """Classify one pair by the cutoff rule: (result, tosses played)."""
    a = b = k = 0
    while k < bound:
        c = ca[a] if k % 2 == 0 else cb[b]
        k += 1
        a = ra[a][c]
        b = rb[b][c]
        if a == n:
            return _ALICE_WIN, k
        if b == n:
            return _BOB_WIN, k
    return _NO_WIN, k


def _ranges(total: int, parts: int) -> list[tuple[int, int]]:
    step = (total + parts - 1) // parts
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)]


def _run_chunks(worker, n: int, total: int, workers: int) -> list:
    spans = _ranges(total, workers)
    if workers == 1 or len(spans) == 1:
        return [worker((n, lo, hi)) for lo, hi in spans]
    with ProcessPoolExecutor(max_workers=len(spans)) as pool:
        return list(pool.map(worker, [(n, lo, hi) for lo, hi in spans]))


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class OutcomeCensus:
    """Exact outcome counts over all ordered pairs of one length."""

    n: int
    total: int
    alice_wins: int
    bob_wins: int
    infinite: int

    @property
    def alice_proportion(self) -> float:
        return self.alice_wins / self.total

    @property
    def bob_proportion(self) -> float:
        return self.bob_wins / self.total

    @property
    def infinite_proportion(self) -> float:
        return self.infinite / self.total


def _census_chunk(args: tuple[int, int, int]) -> tuple[int, int, int]:
    n, lo, hi = args
    chars, rows = _sweep_tables(n)
    bound = finite_toss_bound(n)
    size = 1 << n
    alice = bob = neither = 0
    for ai in range(lo, hi):
        ca, ra = chars[ai], rows[ai]
        for bi in range(size):
            if bi == ai:
                continue
            result, _ = _playout_code(ca, ra, chars[bi], rows[bi], n, bound)
            if result == _ALICE_WIN:
                alice += 1
            elif result == _BOB_WIN:
                bob += 1
            else:
                neither += 1
    return alice, bob, neither


def census(
    n: int, *, cap: int = DEFAULT_SWEEP_CAP, workers: int = 1
) -> OutcomeCensus:
    """Count the outcome of every ordered pair of distinct strings."""
    _check_sweep_args(n, cap, workers)
    chunks = _run_chunks(_census_chunk, n, 1 << n, workers)
    alice = sum(c[0] for c in chunks)
    bob = sum(c[1] for c in chunks)
    infinite = sum(c[2] for c in chunks)
    size = 1 << n
    return OutcomeCensus(n, size * (size - 1), alice, bob, infinite)


# ---------------------------------------------------------------------------
# longest finite games


@dataclass(frozen=True)
class LengthStats:
    """The longest finite games of one length and the pairs achieving it."""

    n: int
    max_finite_tosses: int
    argmax_pairs: tuple[tuple[TossString, TossString], ...]


def _longest_chunk(args: tuple[int, int, int]) -> tuple[int, list[tuple[int, int]]]:
    n, lo, hi = args
    chars, rows = _sweep_tables(n)
    bound = finite_toss_bound(n)
    size = 1 << n
    best = 0
    witnesses: list[tuple[int, int]] = []
    for ai in range(lo, hi):
        ca, ra = chars[ai], rows[ai]
        for bi in range(size):
            if bi == ai:
                continue
            result, tosses = _playout_code(ca, ra, chars[bi], rows[bi], n, bound)
            if result == _NO_WIN or tosses < best:
                continue
            if tosses > best:
                best = tosses
                witnesses = []
            witnesses.append((ai, bi))
    return best, witnesses


def longest_finite(
    n: int, *, cap: int = DEFAULT_SWEEP_CAP, workers: int = 1
) -> LengthStats:
    """Longest finite playout over all pairs, with every witness pair."""
    _check_sweep_args(n, cap, workers)
    chunks = _run_chunks(_longest_chunk, n, 1 << n, workers)
    best = max(c[0] for c in chunks)
    pairs = tuple(
        (TossString(n, ai), TossString(n, bi))
        for c in chunks
        if c[0] == best
        for ai, bi in c[1]
    )
    return LengthStats(n, best, pairs)


# ---------------------------------------------------------------------------
# no-loss strings


def _no_loss_chunk(args: tuple[int, int, int]) -> list[int]:
    n, lo, hi = args
    chars, rows = _sweep_tables(n)
    bound = finite_toss_bound(n)
    size = 1 << n
    constant_h = 0
    kept: list[int] = []
    for ai in range(lo, hi):
        if ai == constant_h:
            continue
        ca, ra = chars[ai], rows[ai]
        vulnerable = False
        for bi in range(size):
            if bi == ai:
                continue
            result, _ = _playout_code(ca, ra, chars[bi], rows[bi], n, bound)
            if result == _ALICE_WIN:
                vulnerable = True
                break
        if not vulnerable:
            kept.append(ai)
    return kept


def no_loss_strings(
    n: int,
    role: Player = Player.BOB,
    *,
    cap: int = DEFAULT_SWEEP_CAP,
    workers: int = 1,
) -> list[TossString]:
    """Alice strings (starting with H, non-constant) that no opponent
    string can ever make win: against them, the second player cannot
    throw the game.  Only the second player's census is supported."""
    if role is not Player.BOB:
        raise ValueError("no-loss census is only computed for role=Player.BOB")
    _check_sweep_args(n, cap, workers)
    # H-first strings occupy codes 0 .. 2^(n-1)-1; code 0 is the constant.
    top = 1 << (n - 1)
    chunks = _run_chunks(_no_loss_chunk, n, top, workers)
    return [TossString(n, code) for chunk in chunks for code in chunk]


# ---------------------------------------------------------------------------
# verification suites


@dataclass(frozen=True)
class VerifyReport:
    """Result of one verification sweep."""

    suite: str
    n: int
    checks: int
    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _pairs(n: int):
    for a_code in range(1 << n):
        for b_code in range(1 << n):
            if a_code != b_code:
                yield TossString(n, a_code), TossString(n, b_code)


_FORBIDDEN = {
    (0, 0, Player.BOB),
    (0, 1, Player.BOB),
    (1, 0, Player.ALICE),
}


def _bound_suite(n: int) -> tuple[int, list[str]]:
    """Replay every pair and check the counting bound, agreement of the
    repeated-state and toss-cutoff classifiers, forbidden states, mover
    increments, and (for n <= 6) the direct-scan progress oracle."""
    chars, rows = _sweep_tables(n)
    bound = finite_toss_bound(n)
    check_oracle = n <= 6
    checks = 0
    violations: list[str] = []
    for alice, bob in _pairs(n):
        checks += 1
        pair = f"{alice.text}/{bob.text}"
        outcome, trace = play(alice, bob)
        cutoff_result, cutoff_tosses = _playout_code(
            chars[alice.bits], rows[alice.bits], chars[bob.bits], rows[bob.bits],
            n, bound,
        )
        if outcome.is_infinite:
            if cutoff_result != _NO_WIN:
                violations.append(f"{pair}: classifiers disagree (repeat vs cutoff)")
            if outcome.entry + outcome.period > bound:
                violations.append(f"{pair}: repeat found after the counting bound")
        else:
            win = _ALICE_WIN if outcome.kind is OutcomeKind.ALICE_WINS else _BOB_WIN
            if cutoff_result != win or cutoff_tosses != outcome.tosses:
                violations.append(f"{pair}: classifiers disagree (repeat vs cutoff)")
            if outcome.tosses > bound:
                violations.append(f"{pair}: finite game beyond the counting bound")
        for before, after in zip(trace.states, trace.states[1:]):
            moved = after.a - before.a if before.turn is Player.ALICE else after.b - before.b
            if moved != 1:
                violations.append(f"{pair}: mover progress changed by {moved}")
        for s in trace.states:
            if (s.a, s.b, s.turn) in _FORBIDDEN:
                violations.append(f"{pair}: forbidden state {(s.a, s.b, s.turn.value)}")
        if check_oracle:
            for s in trace.states:
                output = trace.text[: s.k]
                if s.a != scan_progress(alice.text, output) or s.b != scan_progress(
                    bob.text, output
                ):
                    violations.append(f"{pair}: automaton disagrees with scan oracle")
    return checks, violations


def _predicates_suite(n: int) -> tuple[int, list[str]]:
    """Every fired prediction must match the real playout, counts included,
    and predictions fired on the same pair must agree with each other."""
    checks = 0
    violations: list[str] = []
    for alice, bob in _pairs(n):
        checks += 1
        pair = f"{alice.text}/{bob.text}"
        fired = all_predictions(alice, bob)
        if not fired:
            continue
        outcome, _ = play(alice, bob)
        kinds = {p.kind for p in fired}
        if len(kinds) > 1:
            violations.append(f"{pair}: predictions disagree with each other")
        for p in fired:
            if p.kind is not outcome.kind:
                violations.append(f"{pair}: {p.rule} predicted {p.kind.value}")
            elif p.tosses is not None and p.tosses != outcome.tosses:
                violations.append(
                    f"{pair}: {p.rule} predicted toss {p.tosses}, got {outcome.tosses}"
                )
    return checks, violations


def _forcing_suite(n: int) -> tuple[int, list[str]]:
    """Run all six forcing operations against every opponent string and
    cross-check: FOUND strings must verify (and respect the win-count
    bounds), and IMPOSSIBLE answers must survive a brute-force scan."""
    checks = 0
    violations: list[str] = []
    ops = [
        (forcing.bob_force_win, Player.BOB, forcing.ForceGoal.WIN),
        (forcing.alice_force_win, Player.ALICE, forcing.ForceGoal.WIN),
        (forcing.bob_force_infinite, Player.BOB, forcing.ForceGoal.INFINITE_GAME),
        (forcing.alice_force_infinite, Player.ALICE, forcing.ForceGoal.INFINITE_GAME),
        (forcing.alice_force_loss, Player.ALICE, forcing.ForceGoal.LOSS),
        (forcing.bob_force_loss, Player.BOB, forcing.ForceGoal.LOSS),
    ]
    wanted = forcing._GOAL_KINDS
    for code in range(1 << n):
        opponent = TossString(n, code)
        for op, role, goal in ops:
            checks += 1
            label = f"{op.__name__}({opponent.text})"
            try:
                result = op(opponent)
            except Exception as exc:  # a construction bug is a violation
                violations.append(f"{label}: raised {exc!r}")
                continue
            if result.status is forcing.ForceStatus.UNKNOWN:
                violations.append(f"{label}: unknown below the search cap")
            elif result.status is forcing.ForceStatus.FOUND:
                outcome = result.verified_outcome
                if outcome.kind is not wanted[role, goal]:
                    violations.append(f"{label}: outcome {outcome.kind.value}")
                if goal is forcing.ForceGoal.WIN:
                    limit = n if role is Player.ALICE else n + 1
                    if outcome.tosses > limit:
                        violations.append(f"{label}: win too late ({outcome.tosses})")
            elif _exists_forcer(role, goal, opponent):
                violations.append(f"{label}: impossible but a forcer exists")
    return checks, violations


def _exists_forcer(
    role: Player, goal: forcing.ForceGoal, opponent: TossString
) -> bool:
    n = opponent.length
    chars, rows = _sweep_tables(n)
    bound = finite_toss_bound(n)
    opp = opponent.bits
    wanted = {
        forcing.ForceGoal.WIN: _BOB_WIN if role is Player.BOB else _ALICE_WIN,
        forcing.ForceGoal.LOSS: _ALICE_WIN if role is Player.BOB else _BOB_WIN,
        forcing.ForceGoal.INFINITE_GAME: _NO_WIN,
    }[goal]
    for code in range(1 << n):
        if code == opp:
            continue
        if role is Player.BOB:
            result, _ = _playout_code(
                chars[opp], rows[opp], chars[code], rows[code], n, bound
            )
        else:
            result, _ = _playout_code(
                chars[code], rows[code], chars[opp], rows[opp], n, bound
            )
        if result == wanted:
            return True
    return False


def _symmetry_suite(n: int) -> tuple[int, list[str]]:
    """Complementing both strings must mirror the playout exactly."""
    swap = str.maketrans("HT", "TH")
    checks = 0
    violations: list[str] = []
    for alice, bob in _pairs(n):
        checks += 1
        pair = f"{alice.text}/{bob.text}"
        outcome, trace = play(alice, bob)
        mirrored, mirrored_trace = play(alice.complement(), bob.complement())
        if mirrored != outcome:
            violations.append(f"{pair}: outcome changes under complementation")
        if mirrored_trace.text != trace.text.translate(swap):
            violations.append(f"{pair}: trace does not mirror under complementation")
    return checks, violations


def verify_suite(
    n: int, suite: str, *, cap: int = DEFAULT_SWEEP_CAP
) -> VerifyReport:
    """Run one verification sweep; see :data:`VERIFY_SUITES` for names."""
    _check_sweep_args(n, cap, 1)
    runners = {
        "bound": _bound_suite,
        "predicates": _predicates_suite,
        "forcing": _forcing_suite,
        "symmetry": _symmetry_suite,
    }
    if suite not in runners:
        raise ValueError(f"unknown suite {suite!r}; choose from {VERIFY_SUITES}")
    checks, violations = runners[suite](n)
    return VerifyReport(suite, n, checks, tuple(violations))


def sweep_cap_from_env(default: int = DEFAULT_SWEEP_CAP) -> int:
    """The sweep cap, honoring the NOFLIP_SWEEP_CAP override."""
    raw = os.environ.get(SWEEP_CAP_ENV)
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{SWEEP_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError(f"{SWEEP_CAP_ENV} must be positive, got {cap}")
    return cap
