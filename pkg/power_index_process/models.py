"""Data models for the power index process."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from .const import COLLABORATOR, DEFECTOR, SEMANTICS_INCLUSIVE, SEMANTICS_STRICT
from .exceptions import ConfigurationLengthError


class Semantics(StrEnum):
    """Threshold mode used when a neighbourhood ratio equals w."""

    STRICT = SEMANTICS_STRICT
    INCLUSIVE = SEMANTICS_INCLUSIVE


class Dominance(StrEnum):
    """Classification of a finished trajectory."""

    COLLABORATOR_DOMINANT = "CollaboratorDominant"
    DEFECTOR_DOMINANT = "DefectorDominant"
    MIXED_STABLE = "MixedStable"
    PERIODIC = "Periodic"


class WaveFlavor(StrEnum):
    """Strategy held by the interrupters of a wave configuration."""

    C_WAVE = "C-wave"
    D_WAVE = "D-wave"


@dataclass(frozen=True)
class Configuration:
    """Strategy assignment packed into an int; bit v set means v collaborates."""

    size: int
    bits: int = 0

    def __post_init__(self) -> None:
        """Check the packed bits fit the vertex count."""
        if self.size < 0 or self.bits < 0 or self.bits >> self.size:
            raise ConfigurationLengthError(
                f"Bits {self.bits:#x} do not fit a configuration of length {self.size}"
            )

    @classmethod
    def from_collaborators(cls, size: int, collaborators: Iterable[int]) -> Configuration:
        """Build a configuration from the set of collaborator ids."""
        bits = 0
        for v in collaborators:
            if not 0 <= v < size:
                raise ConfigurationLengthError(f"Vertex {v} outside 0..{size - 1}")
            bits |= 1 << v
        return cls(size, bits)

    @classmethod
    def all_collaborators(cls, size: int) -> Configuration:
        """Return the configuration in which every vertex collaborates."""
        return cls(size, (1 << size) - 1)

    @classmethod
    def all_defectors(cls, size: int) -> Configuration:
        """Return the configuration in which every vertex defects."""
        return cls(size, 0)

    def is_collaborator(self, v: int) -> bool:
        """Return True if v is a collaborator."""
        return bool(self.bits >> v & 1)

    def strategy(self, v: int) -> str:
        """Return "C" or "D" for v."""
        return COLLABORATOR if self.is_collaborator(v) else DEFECTOR

    def collaborators(self) -> list[int]:
        """Return the collaborator ids in ascending order."""
        return [v for v in range(self.size) if self.bits >> v & 1]

    @property
    def collaborator_count(self) -> int:
        """Number of collaborators."""
        return self.bits.bit_count()

    def with_strategy(self, v: int, collaborator: bool) -> Configuration:
        """Return a copy with v set to the given strategy."""
        if collaborator:
            return Configuration(self.size, self.bits | 1 << v)
        return Configuration(self.size, self.bits & ~(1 << v))

    def to_text(self) -> str:
        """Return the {C,D} string in vertex order."""
        return "".join(self.strategy(v) for v in range(self.size))

    def __str__(self) -> str:
        """Return the {C,D} string."""
        return self.to_text()


@dataclass
class TrajectoryReport:
    """Outcome of one evolve run."""

    configs: list[Configuration]
    transient: int | None
    period: int | None
    semantics: Semantics
    w: Fraction
    conclusive: bool = True
    steps_taken: int = 0

    @property
    def is_stable(self) -> bool:
        """Return True if the run reached a fixed point."""
        return self.conclusive and self.period == 1

    @property
    def final(self) -> Configuration:
        """Last configuration before the orbit repeats."""
        return self.configs[-1]


@dataclass(frozen=True)
class Part:
    """Half-open interval [lo, hi) of win conditions."""

    lo: Fraction
    hi: Fraction

    def __contains__(self, w: object) -> bool:
        """Return True if w lies in [lo, hi)."""
        return isinstance(w, (int, Fraction)) and self.lo <= w < self.hi

    @property
    def representative(self) -> Fraction:
        """Included lower bound of the part."""
        return self.lo


@dataclass(frozen=True)
class WinPartition:
    """Partition of [1/2, 1) into parts on which the process is invariant."""

    breakpoints: tuple[Fraction, ...]
    parts: tuple[Part, ...]

    @property
    def representatives(self) -> list[Fraction]:
        """Lower endpoint of every part, in order."""
        return [part.representative for part in self.parts]


@dataclass(frozen=True)
class PartitionEquivalence:
    """Result of running two win conditions in lockstep."""

    equal: bool
    divergence_step: int | None
    steps_compared: int


@dataclass(frozen=True)
class WaveDescriptor:
    """Interrupter set of a wave configuration on H_{n,l}."""

    n: int
    row: int
    interrupter_columns: frozenset[int]
    flavor: WaveFlavor


@dataclass(frozen=True)
class Divergence:
    """First step at which the wave process and Rule 90 disagree."""

    t: int
    process_columns: tuple[int, ...] | None
    ca_columns: tuple[int, ...]


@dataclass
class Rule90Equivalence:
    """Side-by-side comparison of the H_n process and Rule 90."""

    n: int
    steps: int
    equal: bool
    divergence: Divergence | None = None
    flavors: list[WaveFlavor] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        """Return "equal" or "diverged"."""
        return "equal" if self.equal else "diverged"


@dataclass
class WStatistics:
    """Sweep statistics for one win condition."""

    w: Fraction
    seed_count: int = 0
    stable_count: int = 0
    periodic_count: int = 0
    inconclusive_count: int = 0
    period_histogram: dict[int, int] = field(default_factory=dict)
    max_transient: int = 0
    max_period: int = 1
    max_transient_witness: str | None = None
    max_period_witness: str | None = None
    inconclusive_witnesses: list[str] = field(default_factory=list)


@dataclass
class SweepReport:
    """Aggregated sweep over the seeds of one graph."""

    graph_id: str
    semantics: Semantics
    entries: list[WStatistics] = field(default_factory=list)

    @property
    def periodic_count(self) -> int:
        """Periodic seeds summed over every win condition."""
        return sum(entry.periodic_count for entry in self.entries)


@dataclass(frozen=True)
class SeedOutcome:
    """Transient and period of one seed in a sweep (CSV row)."""

    seed: str
    transient: int | None
    period: int | None


@dataclass(frozen=True)
class CAState:
    """Cells of a cylindrical one-dimensional automaton (1 = live)."""

    cells: tuple[int, ...]

    @classmethod
    def from_live(cls, n: int, live: Iterable[int]) -> CAState:
        """Build a ring of n cells with the given live indices (mod n)."""
        cells = [0] * n
        for i in live:
            cells[i % n] = 1
        return cls(tuple(cells))

    @property
    def n(self) -> int:
        """Ring length."""
        return len(self.cells)

    def live(self) -> tuple[int, ...]:
        """Return the live cell indices in ascending order."""
        return tuple(i for i, cell in enumerate(self.cells) if cell)

    def to_text(self) -> str:
        """Return the bitstring form."""
        return "".join(str(cell) for cell in self.cells)


@dataclass(frozen=True)
class HnlExploration:
    """Outcome of the single-interrupter wave seed on H_{n,l} at one w."""

    w: Fraction
    transient: int | None
    period: int | None
    stays_wave: bool
