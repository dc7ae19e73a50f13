"""Fighter/match domain types and a deterministic scripted-match simulator.

Rounds run at 60 FPS for at most 3600 frames (60 s).  Two scripted fighters
trade three attack types on an 800 px stage:

    light   10 damage, 60 px reach
    heavy   30 damage, 60 px reach, 30-frame cooldown
    special 60 damage, 300 px reach, costs 50 energy

Energy builds +10 for landing a hit and +5 for taking one (capped at 300);
health only ever falls.  A landed hit knocks the victim 40 px back.  The
round ends the frame either health reaches zero; at the time limit the
higher health wins, equal health draws.

All randomness flows from a single 64-bit seed through splitmix64, so a
(policies, seed) pair replays bit-identically.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path

from .errors import ConfigError, FormatError

FPS = 60
ROUND_FRAMES = 3600
STAGE_MAX = 800
MAX_HP = 400
MAX_EP = 300
SPAWN_X = (200, 600)
WALK_SPEED = 4
KNOCKBACK = 40

LIGHT_DAMAGE = 10
HEAVY_DAMAGE = 30
SPECIAL_DAMAGE = 60
ATTACK_RANGE = 60
SPECIAL_RANGE = 300
HEAVY_COOLDOWN = 30
SPECIAL_COST = 50
EP_PER_HIT_DEALT = 10
EP_PER_HIT_TAKEN = 5


# ---------------------------------------------------------------------------
# Deterministic RNG
# ---------------------------------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: tiny, fully documented 64-bit generator.

    step:  state += 0x9E3779B97F4A7C15
           z = state
           z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
           z = (z ^ (z >> 27)) * 0x94D049BB133111EB
           output z ^ (z >> 31)

    `random()` uses the top 53 bits, `randrange(n)` reduces modulo n (bias
    is negligible for the small n used here).
    """

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def random(self) -> float:
        return (self.next_u64() >> 11) / float(1 << 53)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise ValueError("randrange needs n >= 1")
        return self.next_u64() % n


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FighterState:
    hp: int
    ep: int
    x: int

    def __post_init__(self) -> None:
        if not 0 <= self.hp <= MAX_HP:
            raise ValueError(f"hp {self.hp} outside [0, {MAX_HP}]")
        if not 0 <= self.ep <= MAX_EP:
            raise ValueError(f"ep {self.ep} outside [0, {MAX_EP}]")
        if not 0 <= self.x <= STAGE_MAX:
            raise ValueError(f"x {self.x} outside [0, {STAGE_MAX}]")


@dataclass(frozen=True)
class FrameState:
    frame_index: int
    p1: FighterState
    p2: FighterState

    @property
    def pd(self) -> int:
        """Horizontal distance between the fighters, in pixels."""
        return abs(self.p1.x - self.p2.x)

    def element_value(self, element: str) -> int:
        """Value of one of the five tracked elements (`p1_hp`, ..., `pd`)."""
        if element == "pd":
            return self.pd
        side, attr = element.split("_")
        return getattr(getattr(self, side), attr)


class Winner(Enum):
    P1 = "P1"
    P2 = "P2"
    DRAW = "Draw"


@dataclass(frozen=True)
class RoundResult:
    winner: Winner
    end_hp_p1: int
    end_hp_p2: int
    frames_elapsed: int


@dataclass
class MatchLog:
    """Round results plus the per-round frame streams that produced them."""

    rounds: list[RoundResult] = field(default_factory=list)
    states: list[list[FrameState]] = field(default_factory=list)


# ---------------------------------------------------------------------------
# Scripted policies
# ---------------------------------------------------------------------------


class Action(Enum):
    IDLE = "idle"
    LEFT = "left"
    RIGHT = "right"
    LIGHT = "light"
    HEAVY = "heavy"
    SPECIAL = "special"


@dataclass
class _Fighter:
    hp: int = MAX_HP
    ep: int = 0
    x: int = 0
    heavy_cooldown: int = 0

    def view(self) -> FighterState:
        return FighterState(hp=self.hp, ep=self.ep, x=self.x)


def _toward(me: _Fighter, opp: _Fighter) -> Action:
    if me.x == opp.x:
        return Action.IDLE
    return Action.RIGHT if opp.x > me.x else Action.LEFT


def _away(me: _Fighter, opp: _Fighter) -> Action:
    return Action.LEFT if opp.x >= me.x else Action.RIGHT


class Policy:
    """Per-round decision maker; instances are fresh each round."""

    name = "policy"

    def decide(self, me: _Fighter, opp: _Fighter, rng: SplitMix64) -> Action:
        raise NotImplementedError


class Rusher(Policy):
    """Closes distance, trades in melee range, backs off between exchanges."""

    name = "rusher"

    def __init__(self) -> None:
        self._back_off = 0

    def decide(self, me: _Fighter, opp: _Fighter, rng: SplitMix64) -> Action:
        if self._back_off > 0:
            self._back_off -= 1
            return _away(me, opp)
        pd = abs(me.x - opp.x)
        if pd <= ATTACK_RANGE:
            roll = rng.random()
            if roll < 0.30:
                # attack, then disengage so the spacing keeps sweeping
                self._back_off = 10 + rng.randrange(18)
                if me.ep >= SPECIAL_COST and rng.random() < 0.5:
                    return Action.SPECIAL
                if me.heavy_cooldown == 0 and rng.random() < 0.5:
                    return Action.HEAVY
                return Action.LIGHT
            if roll < 0.38:
                self._back_off = 8 + rng.randrange(14)
                return _away(me, opp)
            return _toward(me, opp)
        if pd <= SPECIAL_RANGE and me.ep >= SPECIAL_COST and rng.random() < 0.015:
            return Action.SPECIAL
        if rng.random() < 0.01:
            # occasional long reset so far distance bands get play
            self._back_off = 40 + rng.randrange(50)
            return _away(me, opp)
        return _toward(me, opp)


class Turtle(Policy):
    """Retreats to its own wall and never attacks."""

    name = "turtle"

    def decide(self, me: _Fighter, opp: _Fighter, rng: SplitMix64) -> Action:
        step = _away(me, opp)
        if step is Action.LEFT and me.x <= WALK_SPEED:
            return Action.IDLE
        if step is Action.RIGHT and me.x >= STAGE_MAX - WALK_SPEED:
            return Action.IDLE
        return step


class RandomWalker(Policy):
    """Wanders with direction persistence; attacks opportunistically."""

    name = "randomwalker"

    def __init__(self) -> None:
        self._direction = Action.IDLE

    def decide(self, me: _Fighter, opp: _Fighter, rng: SplitMix64) -> Action:
        pd = abs(me.x - opp.x)
        if pd <= ATTACK_RANGE and rng.random() < 0.10:
            if me.ep >= SPECIAL_COST and rng.random() < 0.3:
                return Action.SPECIAL
            if me.heavy_cooldown == 0 and rng.random() < 0.4:
                return Action.HEAVY
            return Action.LIGHT
        if self._direction is Action.IDLE or rng.random() < 0.05:
            self._direction = (Action.LEFT, Action.RIGHT, Action.IDLE)[rng.randrange(3)]
        return self._direction


_POLICIES: dict[str, type[Policy]] = {
    "rusher": Rusher,
    "turtle": Turtle,
    "randomwalker": RandomWalker,
}

POLICY_IDS = tuple(sorted(_POLICIES))


def make_policy(policy_id: str) -> Policy:
    try:
        return _POLICIES[policy_id.lower()]()
    except KeyError:
        raise ConfigError(
            f"unknown policy {policy_id!r}; registered: {', '.join(POLICY_IDS)}"
        ) from None


# ---------------------------------------------------------------------------
# Simulation
# ---------------------------------------------------------------------------


def _attack_params(action: Action) -> tuple[int, int] | None:
    """(damage, reach) for attack actions, None for movement/idle."""
    if action is Action.LIGHT:
        return LIGHT_DAMAGE, ATTACK_RANGE
    if action is Action.HEAVY:
        return HEAVY_DAMAGE, ATTACK_RANGE
    if action is Action.SPECIAL:
        return SPECIAL_DAMAGE, SPECIAL_RANGE
    return None


def _legal_action(action: Action, me: _Fighter) -> Action:
    """Downgrade attacks whose resources are unavailable."""
    if action is Action.HEAVY and me.heavy_cooldown > 0:
        return Action.IDLE
    if action is Action.SPECIAL and me.ep < SPECIAL_COST:
        return Action.IDLE
    return action


def _step(f1: _Fighter, f2: _Fighter, a1: Action, a2: Action) -> None:
    """Advance one frame: simultaneous attack resolution, then movement."""
    for f in (f1, f2):
        if f.heavy_cooldown > 0:
            f.heavy_cooldown -= 1

    a1 = _legal_action(a1, f1)
    a2 = _legal_action(a2, f2)
    pd = abs(f1.x - f2.x)

    hits: list[tuple[_Fighter, _Fighter, int]] = []  # (attacker, victim, damage)
    for attacker, victim, action in ((f1, f2, a1), (f2, f1, a2)):
        params = _attack_params(action)
        if params is None:
            continue
        if action is Action.HEAVY:
            attacker.heavy_cooldown = HEAVY_COOLDOWN
        if action is Action.SPECIAL:
            attacker.ep -= SPECIAL_COST
        damage, reach = params
        if pd <= reach:
            hits.append((attacker, victim, damage))

    for attacker, victim, damage in hits:
        victim.hp = max(0, victim.hp - damage)
        attacker.ep = min(MAX_EP, attacker.ep + EP_PER_HIT_DEALT)
        victim.ep = min(MAX_EP, victim.ep + EP_PER_HIT_TAKEN)
        push = 1 if victim.x > attacker.x else -1 if victim.x < attacker.x else (
            1 if victim is f2 else -1
        )
        victim.x = min(STAGE_MAX, max(0, victim.x + push * KNOCKBACK))

    for f, action in ((f1, a1), (f2, a2)):
        if action is Action.LEFT:
            f.x = max(0, f.x - WALK_SPEED)
        elif action is Action.RIGHT:
            f.x = min(STAGE_MAX, f.x + WALK_SPEED)


def simulate_round(
    policy_p1: str, policy_p2: str, seed: int
) -> tuple[RoundResult, list[FrameState]]:
    """One round; returns the result and the full 60 Hz state stream.

    The stream starts at frame 0 (fresh fighters) and stops the frame a
    knockout lands or at frame 3599.  `frames_elapsed` is the knockout
    frame index for a KO and 3600 (the full minute) for a timeout.
    """
    pol1 = make_policy(policy_p1)
    pol2 = make_policy(policy_p2)
    root = SplitMix64(seed)
    rng1 = SplitMix64(root.next_u64())
    rng2 = SplitMix64(root.next_u64())

    f1 = _Fighter(x=SPAWN_X[0])
    f2 = _Fighter(x=SPAWN_X[1])
    states = [FrameState(0, f1.view(), f2.view())]

    frame = 0
    while frame < ROUND_FRAMES - 1 and f1.hp > 0 and f2.hp > 0:
        a1 = pol1.decide(f1, f2, rng1)
        a2 = pol2.decide(f2, f1, rng2)
        _step(f1, f2, a1, a2)
        frame += 1
        states.append(FrameState(frame, f1.view(), f2.view()))

    if f2.hp == 0 and f1.hp > 0:
        winner = Winner.P1
    elif f1.hp == 0 and f2.hp > 0:
        winner = Winner.P2
    elif f1.hp == 0 and f2.hp == 0:
        winner = Winner.DRAW  # double KO: neither side kept a non-zero HP
    elif f1.hp > f2.hp:
        winner = Winner.P1
    elif f2.hp > f1.hp:
        winner = Winner.P2
    else:
        winner = Winner.DRAW

    knockout = f1.hp == 0 or f2.hp == 0
    result = RoundResult(
        winner=winner,
        end_hp_p1=f1.hp,
        end_hp_p2=f2.hp,
        frames_elapsed=frame if knockout else ROUND_FRAMES,
    )
    return result, states


def simulate_match(
    policy_p1: str, policy_p2: str, rounds: int = 3, seed: int = 0
) -> MatchLog:
    """Independent rounds with per-round seeds derived from `seed`."""
    if rounds < 1:
        raise ConfigError(f"rounds must be >= 1, got {rounds}")
    make_policy(policy_p1)  # fail fast on bad ids
    make_policy(policy_p2)
    master = SplitMix64(seed)
    log = MatchLog()
    for _ in range(rounds):
        result, states = simulate_round(policy_p1, policy_p2, master.next_u64())
        log.rounds.append(result)
        log.states.append(states)
    return log


# ---------------------------------------------------------------------------
# Line-delimited text serialization
# ---------------------------------------------------------------------------


def match_log_to_text(log: MatchLog) -> str:
    """`round frame hp1 ep1 x1 hp2 ep2 x2` per frame, then one
    `R round winner hp1 hp2 frames` line per round."""
    lines: list[str] = []
    for round_index, states in enumerate(log.states):
        for s in states:
            lines.append(
                f"{round_index} {s.frame_index} "
                f"{s.p1.hp} {s.p1.ep} {s.p1.x} {s.p2.hp} {s.p2.ep} {s.p2.x}"
            )
    for round_index, r in enumerate(log.rounds):
        lines.append(
            f"R {round_index} {r.winner.value} "
            f"{r.end_hp_p1} {r.end_hp_p2} {r.frames_elapsed}"
        )
    return "\n".join(lines) + "\n"


def match_log_from_text(text: str) -> MatchLog:
    states: dict[int, list[FrameState]] = {}
    results: dict[int, RoundResult] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split(" ")
        try:
            if parts[0] == "R":
                if len(parts) != 6:
                    raise ValueError("expected 6 fields")
                round_index = int(parts[1])
                results[round_index] = RoundResult(
                    winner=Winner(parts[2]),
                    end_hp_p1=int(parts[3]),
                    end_hp_p2=int(parts[4]),
                    frames_elapsed=int(parts[5]),
                )
            else:
                if len(parts) != 8:
                    raise ValueError("expected 8 fields")
                nums = [int(p) for p in parts]
                states.setdefault(nums[0], []).append(
                    FrameState(
                        frame_index=nums[1],
                        p1=FighterState(hp=nums[2], ep=nums[3], x=nums[4]),
                        p2=FighterState(hp=nums[5], ep=nums[6], x=nums[7]),
                    )
                )
        except ValueError as exc:
            raise FormatError(f"match log line {lineno}: {exc}") from None
    if sorted(states) != sorted(results) or sorted(results) != list(range(len(results))):
        raise FormatError("match log rounds are incomplete or non-contiguous")
    log = MatchLog()
    for round_index in range(len(results)):
        log.rounds.append(results[round_index])
        log.states.append(states[round_index])
    return log


def write_match_log(log: MatchLog, path: str | Path) -> None:
    Path(path).write_text(match_log_to_text(log))


def read_match_log(path: str | Path) -> MatchLog:
    return match_log_from_text(Path(path).read_text())
