"""Seed constructions and exhaustive sweeps over small graphs."""

from __future__ import annotations

from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
import logging
import random

from .const import (
    COLLABORATOR,
    DEFAULT_BUDGET,
    DEFAULT_WORKERS,
    DEFECTOR,
    MAX_SWEEP_VERTICES,
    PRISM_LAYERS,
)
from .dynamics import PowerIndexProcess, format_fraction
from .exceptions import InvalidSizeError, LabelError
from .graph import Graph
from .models import Configuration, SeedOutcome, Semantics, SweepReport, WStatistics
from .partition import last_two_representatives, win_partition

_LOGGER = logging.getLogger(__name__)

CHUNKS_PER_WORKER = 4

CSV_HEADER = ("w", "seed", "transient", "period")


def _int_labels(g: Graph, what: str) -> list[int]:
    if g.labels is None or not all(isinstance(label, int) for label in g.labels):
        raise LabelError(f"Graph carries no {what} labels")
    return list(g.labels)


def layered_seed(prism: Graph) -> Configuration:
    """Return the seed with layer G_1 collaborating and G_2..G_4 defecting."""
    layers = _int_labels(prism, "prism layer")
    if set(layers) != set(range(1, PRISM_LAYERS + 1)):
        raise LabelError(f"Prism layers must be 1..{PRISM_LAYERS}, got {sorted(set(layers))}")
    return Configuration.from_collaborators(
        prism.vertex_count, (v for v, layer in enumerate(layers) if layer == 1)
    )


def gjn_seed(g: Graph, flavor: str = COLLABORATOR) -> Configuration:
    """Return the G_{j,n} seed: level 0 gets flavor, every other level the opposite."""
    if flavor not in (COLLABORATOR, DEFECTOR):
        raise ValueError(f"Flavor must be {COLLABORATOR!r} or {DEFECTOR!r}, got {flavor!r}")
    levels = _int_labels(g, "clique level")
    bottom = Configuration.from_collaborators(
        g.vertex_count, (v for v, level in enumerate(levels) if level == 0)
    )
    if flavor == COLLABORATOR:
        return bottom
    return Configuration(g.vertex_count, ~bottom.bits & ((1 << g.vertex_count) - 1))


def seed_density(c: Configuration) -> Fraction:
    """Return the fraction of collaborators."""
    if c.size == 0:
        return Fraction(0)
    return Fraction(c.collaborator_count, c.size)


def random_configuration(g: Graph, density: Fraction, rng_seed: int) -> Configuration:
    """Return a reproducible configuration; each vertex collaborates with probability density."""
    density = Fraction(density)
    if not 0 <= density <= 1:
        raise ValueError(f"Density must be in [0, 1], got {density}")
    rng = random.Random(rng_seed)
    return Configuration.from_collaborators(
        g.vertex_count,
        (
            v
            for v in range(g.vertex_count)
            if rng.randrange(density.denominator) < density.numerator
        ),
    )


def gjn_power_table(j: int, n: int, t: int) -> list[Fraction]:
    """Return the power of each clique level of G_{j,n} at step t of the C seed run.

    At step t levels 0..t collaborate. Holds for w < j/(j+2).
    """
    if not 0 <= t <= n:
        raise InvalidSizeError(f"Step must be in 0..{n}, got {t}")

    def closed_size(level: int) -> int:
        size = j * 2**level
        if level == 0:
            return j + 2
        if level == n:
            return size + 1
        return size + 3

    table = []
    for level in range(n + 1):
        size = closed_size(level)
        if level == t and t < n:
            # two upward neighbours still defect
            share = size - 2
        elif level == t + 1:
            # one downward neighbour already collaborates
            share = size - 1
        else:
            share = size
        table.append(Fraction(1, share))
    return table


def prism_power_table(j: int, t: int) -> tuple[Fraction, ...]:
    """Return the powers of layers G_1..G_4 at step t of the layered seed run."""
    low, mid, high = Fraction(1, j - 1), Fraction(1, j), Fraction(1, j + 1)
    if t % 2 == 0:
        return (low, mid, high, mid)
    return (high, mid, low, mid)


def _sweep_range(
    g: Graph,
    w: Fraction,
    semantics: Semantics,
    budget: int,
    start: int,
    stop: int,
    collect: bool,
) -> tuple[WStatistics, list[SeedOutcome]]:
    process = PowerIndexProcess(g, w, semantics)
    stats = WStatistics(w=w)
    outcomes: list[SeedOutcome] = []

    for bits in range(start, stop):
        seed = Configuration(g.vertex_count, bits)
        report = process.evolve(seed, budget)
        text = seed.to_text()
        stats.seed_count += 1
        if collect:
            outcomes.append(SeedOutcome(text, report.transient, report.period))

        if not report.conclusive or report.period is None or report.transient is None:
            stats.inconclusive_count += 1
            stats.inconclusive_witnesses.append(text)
            continue

        if report.period == 1:
            stats.stable_count += 1
        else:
            stats.periodic_count += 1
            stats.period_histogram[report.period] = stats.period_histogram.get(report.period, 0) + 1
        if report.period > stats.max_period:
            stats.max_period = report.period
            stats.max_period_witness = text
        if stats.max_transient_witness is None or report.transient > stats.max_transient:
            stats.max_transient = report.transient
            stats.max_transient_witness = text

    return stats, outcomes


def _sweep_range_packed(
    args: tuple[Graph, Fraction, Semantics, int, int, int, bool],
) -> tuple[WStatistics, list[SeedOutcome]]:
    return _sweep_range(*args)


def _merge(total: WStatistics, part: WStatistics) -> None:
    """Fold part into total; parts must arrive in ascending seed order."""
    total.seed_count += part.seed_count
    total.stable_count += part.stable_count
    total.periodic_count += part.periodic_count
    total.inconclusive_count += part.inconclusive_count
    total.inconclusive_witnesses.extend(part.inconclusive_witnesses)
    for period, count in part.period_histogram.items():
        total.period_histogram[period] = total.period_histogram.get(period, 0) + count
    if part.max_period > total.max_period:
        total.max_period = part.max_period
        total.max_period_witness = part.max_period_witness
    if part.max_transient_witness is not None and (
        total.max_transient_witness is None or part.max_transient > total.max_transient
    ):
        total.max_transient = part.max_transient
        total.max_transient_witness = part.max_transient_witness


def _ranges(seed_count: int, chunk_count: int) -> list[tuple[int, int]]:
    chunk = -(-seed_count // chunk_count)
    return [(start, min(start + chunk, seed_count)) for start in range(0, seed_count, chunk)]


def sweep_w(
    g: Graph,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
    budget: int = DEFAULT_BUDGET,
    workers: int = DEFAULT_WORKERS,
    collect: bool = False,
) -> tuple[WStatistics, list[SeedOutcome]]:
    """Evolve every seed of g at one w, optionally keeping per-seed outcomes."""
    if g.vertex_count > MAX_SWEEP_VERTICES:
        raise InvalidSizeError(
            f"Exhaustive sweeps are capped at {MAX_SWEEP_VERTICES} vertices, got {g.vertex_count}"
        )
    seed_count = 2**g.vertex_count
    ranges = _ranges(seed_count, max(1, workers) * CHUNKS_PER_WORKER)
    jobs = [(g, w, Semantics(semantics), budget, start, stop, collect) for start, stop in ranges]

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            partials = list(executor.map(_sweep_range_packed, jobs))
    else:
        partials = [_sweep_range_packed(job) for job in jobs]

    total = WStatistics(w=w)
    outcomes: list[SeedOutcome] = []
    for stats, chunk_outcomes in partials:
        _merge(total, stats)
        outcomes.extend(chunk_outcomes)

    if total.inconclusive_count:
        _LOGGER.warning(
            "%d of %d seeds exhausted the budget of %d steps at w=%s",
            total.inconclusive_count,
            seed_count,
            budget,
            w,
        )
    _LOGGER.debug(
        "Swept %d seeds at w=%s: %d stable, %d periodic",
        seed_count,
        w,
        total.stable_count,
        total.periodic_count,
    )
    return total, outcomes


def enumerate_all(
    g: Graph,
    w: Fraction,
    semantics: Semantics = Semantics.STRICT,
    budget: int = DEFAULT_BUDGET,
    workers: int = DEFAULT_WORKERS,
    graph_id: str = "graph",
) -> SweepReport:
    """Evolve every seed of g at win condition w."""
    stats, _ = sweep_w(g, w, semantics, budget, workers)
    return SweepReport(graph_id=graph_id, semantics=Semantics(semantics), entries=[stats])


def sweep_all_representatives(
    g: Graph,
    semantics: Semantics = Semantics.STRICT,
    budget: int = DEFAULT_BUDGET,
    extra_w: Iterable[Fraction] = (),
    workers: int = DEFAULT_WORKERS,
    graph_id: str = "graph",
) -> SweepReport:
    """Sweep every seed at every win-partition representative plus extra_w."""
    partition = win_partition(g)
    w_values = list(partition.representatives)
    w_values.extend(w for w in extra_w if w not in w_values)
    last_two = last_two_representatives(partition)
    report = SweepReport(graph_id=graph_id, semantics=Semantics(semantics))
    for w in w_values:
        stats, _ = sweep_w(g, w, semantics, budget, workers)
        report.entries.append(stats)
        if w in last_two and stats.periodic_count:
            _LOGGER.warning(
                "%s has %d periodic seeds at w=%s in one of its last two parts",
                graph_id,
                stats.periodic_count,
                w,
            )
    _LOGGER.info(
        "Sweep of %s finished: %d win conditions, %d periodic seeds",
        graph_id,
        len(w_values),
        report.periodic_count,
    )
    return report


def sweep_to_dict(report: SweepReport) -> dict[str, object]:
    """Return the sweep JSON document."""
    return {
        "graph": report.graph_id,
        "semantics": report.semantics.value,
        "entries": [
            {
                "w": format_fraction(entry.w),
                "seed_count": entry.seed_count,
                "stable_count": entry.stable_count,
                "periodic_count": entry.periodic_count,
                "inconclusive_count": entry.inconclusive_count,
                "period_histogram": {
                    str(period): count for period, count in sorted(entry.period_histogram.items())
                },
                "max_transient": entry.max_transient,
                "witnesses": {
                    "max_transient": entry.max_transient_witness,
                    "max_period": entry.max_period_witness,
                    "inconclusive": entry.inconclusive_witnesses,
                },
            }
            for entry in report.entries
        ],
    }


def sweep_csv_rows(w: Fraction, outcomes: Iterable[SeedOutcome]) -> list[list[str]]:
    """Return CSV rows (w, seed, transient, period); inconclusive cells are empty."""
    return [
        [
            format_fraction(w),
            outcome.seed,
            "" if outcome.transient is None else str(outcome.transient),
            "" if outcome.period is None else str(outcome.period),
        ]
        for outcome in outcomes
    ]
