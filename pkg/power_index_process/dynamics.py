"""The w-power index process: powers, synchronous update and trajectories."""

from __future__ import annotations

from fractions import Fraction
import logging
import re
from typing import Any

from .const import DEFAULT_BUDGET, W_MAX, W_MIN
from .exceptions import (
    ConfigurationLengthError,
    InconclusiveError,
    InvalidConfigurationError,
    InvalidWinConditionError,
)
from .graph import Graph
from .models import Configuration, Dominance, Semantics, TrajectoryReport

_LOGGER = logging.getLogger(__name__)

_FRACTION_PATTERN = re.compile(r"^\s*(\d+)\s*/\s*(\d+)\s*$")

PowerVector = list[Fraction]


def parse_win_condition(text: str | Fraction) -> Fraction:
    """Parse an exact "p/q" win condition; decimals are rejected."""
    if isinstance(text, Fraction):
        w = text
    else:
        match = _FRACTION_PATTERN.match(text)
        if match is None:
            raise InvalidWinConditionError(
                f"Win condition must be an exact fraction such as 1/2, got {text!r}"
            )
        numerator, denominator = (int(group) for group in match.groups())
        if denominator == 0:
            raise InvalidWinConditionError(f"Zero denominator in {text!r}")
        w = Fraction(numerator, denominator)
    check_win_condition(w)
    return w


def check_win_condition(w: Fraction) -> None:
    """Raise unless 1/2 <= w < 1."""
    if not W_MIN <= w < W_MAX:
        raise InvalidWinConditionError(f"Win condition {w} outside [1/2, 1)")


def format_fraction(value: Fraction) -> str:
    """Return value as "num/den"."""
    return f"{value.numerator}/{value.denominator}"


def parse_configuration(text: str, size: int | None = None) -> Configuration:
    """Parse a {C,D} string in vertex order."""
    text = text.strip()
    if size is not None and len(text) != size:
        raise ConfigurationLengthError(
            f"Configuration has {len(text)} strategies, graph has {size} vertices"
        )
    bits = 0
    for v, char in enumerate(text):
        if char == "C":
            bits |= 1 << v
        elif char != "D":
            raise InvalidConfigurationError(f"Unknown strategy {char!r} at position {v}")
    return Configuration(len(text), bits)


def format_configuration(c: Configuration) -> str:
    """Return the {C,D} text form of c."""
    return c.to_text()


def complement_configuration(c: Configuration) -> Configuration:
    """Swap collaborators and defectors."""
    return Configuration(c.size, ~c.bits & ((1 << c.size) - 1))


class PowerIndexProcess:
    """One (graph, w, semantics) triple, stepping packed configurations.

    Powers are held as the size of the winning side (power 1/share) with 0
    meaning no power, and threshold tests cross-multiply integers, so no
    floating point enters the semantics.
    """

    def __init__(
        self,
        g: Graph,
        w: Fraction,
        semantics: Semantics = Semantics.STRICT,
    ) -> None:
        """Precompute closed neighbourhoods for the graph."""
        check_win_condition(w)
        self.graph = g
        self.w = w
        self.semantics = Semantics(semantics)
        self._closed = [g.closed_neighbourhood(v) for v in range(g.vertex_count)]

    def _check(self, c: Configuration) -> None:
        if c.size != self.graph.vertex_count:
            raise ConfigurationLengthError(
                f"Configuration has {c.size} strategies, "
                f"graph has {self.graph.vertex_count} vertices"
            )

    def shares(self, bits: int) -> list[int]:
        """Return the winning-side size of every vertex (0 = no power)."""
        num, den = self.w.numerator, self.w.denominator
        inclusive = self.semantics is Semantics.INCLUSIVE
        result = []
        for v, closed in enumerate(self._closed):
            size = len(closed)
            collaborators = sum(bits >> u & 1 for u in closed)
            if bits >> v & 1:
                # collaborators win when |N_C[v]| / |N[v]| > w (>= when inclusive)
                lhs, rhs = collaborators * den, num * size
                wins = lhs >= rhs if inclusive else lhs > rhs
                result.append(collaborators if wins else 0)
            else:
                wins = collaborators * den <= num * size
                result.append(size - collaborators if wins else 0)
        return result

    def step_bits(self, bits: int) -> int:
        """Apply one synchronous update to packed strategies."""
        shares = self.shares(bits)
        # 1/share is larger for smaller shares; zero power ranks below everything
        rank = [share if share else len(shares) + 1 for share in shares]
        updated = 0
        for v, closed in enumerate(self._closed):
            best = min(rank[u] for u in closed)
            sides = {bits >> u & 1 for u in closed if rank[u] == best}
            if len(sides) == 1:
                updated |= sides.pop() << v
            else:
                updated |= (bits >> v & 1) << v
        return updated

    def powers(self, c: Configuration) -> PowerVector:
        """Return the exact power of every vertex."""
        self._check(c)
        return [Fraction(1, share) if share else Fraction(0) for share in self.shares(c.bits)]

    def step(self, c: Configuration) -> Configuration:
        """Return the next configuration."""
        self._check(c)
        return Configuration(c.size, self.step_bits(c.bits))

    def evolve(self, c0: Configuration, max_steps: int | None = None) -> TrajectoryReport:
        """Iterate until a configuration repeats or the budget runs out."""
        self._check(c0)
        if max_steps is None:
            max_steps = min(2**c0.size, DEFAULT_BUDGET)
        if max_steps < 1:
            raise ValueError(f"max_steps must be positive, got {max_steps}")

        seen = {c0.bits: 0}
        history = [c0.bits]
        bits = c0.bits
        for t in range(1, max_steps + 1):
            bits = self.step_bits(bits)
            if bits in seen:
                transient = seen[bits]
                _LOGGER.debug(
                    "Orbit closed at t=%d: transient %d, period %d", t, transient, t - transient
                )
                return TrajectoryReport(
                    configs=[Configuration(c0.size, b) for b in history],
                    transient=transient,
                    period=t - transient,
                    semantics=self.semantics,
                    w=self.w,
                    steps_taken=t,
                )
            seen[bits] = t
            history.append(bits)

        _LOGGER.warning(
            "No repeat within %d steps on %d vertices; report is inconclusive",
            max_steps,
            c0.size,
        )
        return TrajectoryReport(
            configs=[Configuration(c0.size, b) for b in history],
            transient=None,
            period=None,
            semantics=self.semantics,
            w=self.w,
            conclusive=False,
            steps_taken=max_steps,
        )


def power(
    g: Graph,
    c: Configuration,
    w: Fraction,
    v: int,
    semantics: Semantics = Semantics.STRICT,
) -> Fraction:
    """Return p(v) under configuration c."""
    g.validate_vertex(v)
    return PowerIndexProcess(g, w, semantics).powers(c)[v]


def power_all(
    g: Graph,
    c: Configuration,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
) -> PowerVector:
    """Return p(v) for every vertex."""
    return PowerIndexProcess(g, w, semantics).powers(c)


def step(
    g: Graph,
    c: Configuration,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
) -> Configuration:
    """Return C_{t+1} from C_t.

    Each vertex adopts the strategy of the maximum-power vertices of its
    closed neighbourhood when they agree, and keeps its own otherwise.
    """
    return PowerIndexProcess(g, w, semantics).step(c)


def evolve(
    g: Graph,
    c0: Configuration,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
    max_steps: int | None = None,
) -> TrajectoryReport:
    """Run the process from c0 until the orbit closes."""
    return PowerIndexProcess(g, w, semantics).evolve(c0, max_steps)


def classify_dominance(g: Graph, report: TrajectoryReport) -> Dominance:
    """Classify a conclusive report."""
    if not report.conclusive or report.period is None or report.transient is None:
        raise InconclusiveError("Cannot classify an inconclusive trajectory")
    if report.period > 1:
        return Dominance.PERIODIC

    fixed = report.configs[report.transient]
    if fixed.size != g.vertex_count:
        raise ConfigurationLengthError("Report does not belong to this graph")
    if fixed == Configuration.all_collaborators(g.vertex_count):
        return Dominance.COLLABORATOR_DOMINANT
    if fixed == Configuration.all_defectors(g.vertex_count):
        return Dominance.DEFECTOR_DOMINANT
    return Dominance.MIXED_STABLE


def trace(
    g: Graph,
    c0: Configuration,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
    steps: int = 1,
) -> list[dict[str, Any]]:
    """Return one trace record per step t = 0..steps."""
    process = PowerIndexProcess(g, w, semantics)
    records = []
    previous: Configuration | None = None
    current = c0
    for t in range(steps + 1):
        changed = (
            [v for v in range(current.size) if (current.bits ^ previous.bits) >> v & 1]
            if previous is not None
            else []
        )
        records.append(
            {
                "t": t,
                "config": current.to_text(),
                "powers": [format_fraction(p) for p in process.powers(current)],
                "changed": changed,
            }
        )
        previous, current = current, process.step(current)
    return records


def report_to_dict(g: Graph, report: TrajectoryReport) -> dict[str, Any]:
    """Return the report JSON document."""
    classification = classify_dominance(g, report).value if report.conclusive else None
    return {
        "semantics": report.semantics.value,
        "w": format_fraction(report.w),
        "transient": report.transient,
        "period": report.period,
        "steps_taken": report.steps_taken,
        "classification": classification,
    }


def orbit(
    g: Graph,
    c0: Configuration,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
    steps: int = 1,
) -> list[Configuration]:
    """Return [C_0, C_1, ..., C_steps]."""
    process = PowerIndexProcess(g, w, semantics)
    configs = [c0]
    for _ in range(steps):
        configs.append(process.step(configs[-1]))
    return configs
