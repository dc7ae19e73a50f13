"""Volume adaptation rules: map fighter health, energy, and spacing to
per-instrument volume levels.

Five instruments are hard-wired to five game elements:

    violin  -> player 1 health      piano   -> player 1 energy
    flute   -> player 2 health      ukulele -> player 2 energy
    cello   -> distance between the fighters

Each element is banded by a threshold table; each band carries a volume
percentage.  Health and energy instruments get louder as their element
rises; the cello gets louder as the fighters close in, with a deliberate
jump at 60 px so a listener knows without doubt that the opponent is
adjacent.  All lookups are pure functions of a single frame.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, Iterable

from .errors import DomainError, FormatError

if TYPE_CHECKING:
    from .game import FrameState

# Every volume percentage any default band table may emit.
LEGAL_LEVELS = frozenset({10, 20, 25, 30, 35, 40, 50, 55, 60, 75})

MAX_HP = 400
MAX_EP = 300
MAX_PD = 800


class Instrument(Enum):
    VIOLIN = "violin"
    PIANO = "piano"
    FLUTE = "flute"
    UKULELE = "ukulele"
    CELLO = "cello"


#: Which game element each instrument tracks (element key, see `element_value`).
WIRING: dict[Instrument, str] = {
    Instrument.VIOLIN: "p1_hp",
    Instrument.PIANO: "p1_ep",
    Instrument.FLUTE: "p2_hp",
    Instrument.UKULELE: "p2_ep",
    Instrument.CELLO: "pd",
}

ELEMENTS = ("p1_hp", "p1_ep", "p2_hp", "p2_ep", "pd")


@dataclass(frozen=True)
class BandTable:
    """Threshold bands over an integer element domain.

    ``lookup(v)`` returns ``volumes[i]`` for the first (largest) threshold
    with ``v >= thresholds[i]``, and ``floor`` when ``v`` is below the
    lowest threshold.  Thresholds must be strictly descending, so lookup
    is total on ``[0, domain_max]``.
    """

    thresholds: tuple[int, ...]
    volumes: tuple[int, ...]
    floor: int
    domain_max: int

    def __post_init__(self) -> None:
        if len(self.thresholds) != len(self.volumes):
            raise FormatError(
                f"thresholds/volumes length mismatch: "
                f"{len(self.thresholds)} != {len(self.volumes)}"
            )
        if not self.thresholds:
            raise FormatError("band table needs at least one band")
        if any(a <= b for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise FormatError(f"thresholds not strictly descending: {self.thresholds}")
        for v in (*self.volumes, self.floor):
            if v not in LEGAL_LEVELS:
                raise FormatError(f"volume {v} not a legal level {sorted(LEGAL_LEVELS)}")
        if self.domain_max < self.thresholds[0]:
            raise FormatError(
                f"domain_max {self.domain_max} below top threshold {self.thresholds[0]}"
            )

    def lookup(self, value: int) -> int:
        """Volume percentage for `value`; DomainError outside the domain."""
        if not 0 <= value <= self.domain_max:
            raise DomainError(f"value {value} outside [0, {self.domain_max}]")
        for threshold, volume in zip(self.thresholds, self.volumes):
            if value >= threshold:
                return volume
        return self.floor

    @cached_property
    def levels(self) -> tuple[int, ...]:
        """Distinct volume ladder in band order (floor appended if new)."""
        ladder = list(self.volumes)
        if self.floor not in ladder:
            ladder.append(self.floor)
        return tuple(ladder)

    def band_of_value(self, value: int) -> int:
        """Index into `levels` of the band containing `value`."""
        return self.levels.index(self.lookup(value))

    def band_of_level(self, level: int) -> int:
        """Index into `levels` for a ladder volume; DomainError if absent."""
        if level not in self.levels:
            raise DomainError(f"level {level} not in ladder {self.levels}")
        return self.levels.index(level)

    @cached_property
    def _intervals(self) -> dict[int, tuple[int, int]]:
        spans: dict[int, tuple[int, int]] = {}
        for value in range(self.domain_max + 1):
            level = self.lookup(value)
            lo, hi = spans.get(level, (value, value))
            spans[level] = (min(lo, value), max(hi, value))
        return {level: (lo, hi + 1) for level, (lo, hi) in spans.items()}

    def band_interval(self, level: int) -> tuple[int, int]:
        """Half-open `[lo, hi)` span of element values mapping to `level`."""
        if level not in self._intervals:
            raise DomainError(f"level {level} unreachable in this table")
        return self._intervals[level]


#: Health bands: 400/300/250/200/150/100/50 paired with 75/60/55/40/35/25/10 %.
HP_TABLE = BandTable(
    thresholds=(400, 300, 250, 200, 150, 100, 50),
    volumes=(75, 60, 55, 40, 35, 25, 10),
    floor=10,
    domain_max=MAX_HP,
)

#: Energy bands: one threshold fewer than health; the ladder keeps the top
#: six health volumes and falls back to the quietest level (10 %) below 50.
EP_TABLE = BandTable(
    thresholds=(300, 250, 200, 150, 100, 50),
    volumes=(75, 60, 55, 40, 35, 25),
    floor=10,
    domain_max=MAX_EP,
)

#: Distance bands, reversed ladder: closing in raises the cello, and the
#: 300 -> 60 px threshold gap makes the "opponent adjacent" jump audible.
#: The trailing 0 threshold makes the floor unreachable.
PD_TABLE = BandTable(
    thresholds=(800, 600, 500, 400, 300, 60, 0),
    volumes=(10, 20, 30, 40, 50, 60, 75),
    floor=75,
    domain_max=MAX_PD,
)


@dataclass(frozen=True)
class RuleSet:
    """The three active band tables; `DEFAULT_RULES` holds the stock values."""

    hp: BandTable = HP_TABLE
    ep: BandTable = EP_TABLE
    pd: BandTable = PD_TABLE

    def table_for(self, instrument: Instrument) -> BandTable:
        element = WIRING[instrument]
        if element.endswith("hp"):
            return self.hp
        if element.endswith("ep"):
            return self.ep
        return self.pd

    def table_for_element(self, element: str) -> BandTable:
        if element not in ELEMENTS:
            raise DomainError(f"unknown element {element!r}")
        if element.endswith("hp"):
            return self.hp
        if element.endswith("ep"):
            return self.ep
        return self.pd


DEFAULT_RULES = RuleSet()


def hp_volume(hp: int, table: BandTable = HP_TABLE) -> int:
    """Volume percentage for a health value in [0, 400]."""
    return table.lookup(hp)


def ep_volume(ep: int, table: BandTable = EP_TABLE) -> int:
    """Volume percentage for an energy value in [0, 300]."""
    return table.lookup(ep)


def pd_volume(pd: int, table: BandTable = PD_TABLE) -> int:
    """Volume percentage for a fighter distance in [0, 800] px."""
    return table.lookup(pd)


@dataclass(frozen=True)
class VolumePlan:
    """One volume percentage per instrument for a single frame."""

    frame_index: int
    violin: int
    piano: int
    flute: int
    ukulele: int
    cello: int

    def __post_init__(self) -> None:
        for instrument in Instrument:
            level = self.level(instrument)
            if level not in LEGAL_LEVELS:
                raise DomainError(
                    f"{instrument.value} level {level} not in {sorted(LEGAL_LEVELS)}"
                )

    def level(self, instrument: Instrument) -> int:
        return getattr(self, instrument.value)

    @property
    def levels(self) -> dict[Instrument, int]:
        return {instrument: self.level(instrument) for instrument in Instrument}

    def gains(self) -> dict[Instrument, float]:
        """Levels as linear gains in [0, 1]."""
        return {instrument: self.level(instrument) / 100.0 for instrument in Instrument}

    def same_levels(self, other: "VolumePlan") -> bool:
        """True when both plans assign identical levels (frame index ignored)."""
        return all(self.level(i) == other.level(i) for i in Instrument)


def plan_for_frame(state: "FrameState", rules: RuleSet = DEFAULT_RULES) -> VolumePlan:
    """Volume plan for one frame: pure lookup, no history."""
    return VolumePlan(
        frame_index=state.frame_index,
        violin=rules.hp.lookup(state.p1.hp),
        piano=rules.ep.lookup(state.p1.ep),
        flute=rules.hp.lookup(state.p2.hp),
        ukulele=rules.ep.lookup(state.p2.ep),
        cello=rules.pd.lookup(state.pd),
    )


# ---------------------------------------------------------------------------
# Plain-text table config: the hook for swapping in custom rules.
# ---------------------------------------------------------------------------

_SECTION_DOMAINS = {"hp": MAX_HP, "ep": MAX_EP, "pd": MAX_PD}


def load_rules(path: str | Path) -> RuleSet:
    """Load a rule config: `[hp]`/`[ep]`/`[pd]` sections, one `threshold volume`
    line per band, optional `floor VOLUME` line per section.

    Volumes must come from the legal level set.  A section's floor defaults
    to its quietest listed volume.  Omitted sections keep the stock table.
    `#` starts a comment.
    """
    sections: dict[str, dict] = {}
    current: dict | None = None
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("[") and line.endswith("]"):
            name = line[1:-1].strip().lower()
            if name not in _SECTION_DOMAINS:
                raise FormatError(f"line {lineno}: unknown section [{name}]")
            current = sections.setdefault(name, {"bands": [], "floor": None})
            continue
        if current is None:
            raise FormatError(f"line {lineno}: band line before any section header")
        parts = line.split()
        if parts[0].lower() == "floor":
            if len(parts) != 2:
                raise FormatError(f"line {lineno}: expected `floor VOLUME`")
            current["floor"] = _parse_int(parts[1], lineno, "floor")
            continue
        if len(parts) != 2:
            raise FormatError(f"line {lineno}: expected `threshold volume`")
        current["bands"].append(
            (_parse_int(parts[0], lineno, "threshold"), _parse_int(parts[1], lineno, "volume"))
        )

    tables: dict[str, BandTable] = {}
    for name, spec in sections.items():
        if not spec["bands"]:
            raise FormatError(f"section [{name}] has no bands")
        thresholds, volumes = zip(*spec["bands"])
        floor = spec["floor"] if spec["floor"] is not None else min(volumes)
        tables[name] = BandTable(
            thresholds=thresholds,
            volumes=volumes,
            floor=floor,
            domain_max=_SECTION_DOMAINS[name],
        )
    return RuleSet(
        hp=tables.get("hp", HP_TABLE),
        ep=tables.get("ep", EP_TABLE),
        pd=tables.get("pd", PD_TABLE),
    )


def _parse_int(token: str, lineno: int, field: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise FormatError(f"line {lineno}: {field} {token!r} is not an integer") from None


def dump_rules(rules: RuleSet) -> str:
    """Inverse of `load_rules` for the three sections."""
    out: list[str] = []
    for name, table in (("hp", rules.hp), ("ep", rules.ep), ("pd", rules.pd)):
        out.append(f"[{name}]")
        out.extend(f"{t} {v}" for t, v in zip(table.thresholds, table.volumes))
        out.append(f"floor {table.floor}")
    return "\n".join(out) + "\n"


def iter_instruments() -> Iterable[Instrument]:
    return iter(Instrument)
