"""Wave configurations on H_{n,l} and their correspondence with Rule 90."""

from __future__ import annotations

from collections.abc import Iterable
from fractions import Fraction
import logging

from .const import ROLE_CYCLE
from .dynamics import PowerIndexProcess
from .exceptions import InvalidSizeError, InvalidWaveError, LabelError
from .graph import Graph, HLabel, hnl_clique_vertices, hnl_cycle_vertex, make_hnl
from .models import (
    CAState,
    Configuration,
    Divergence,
    HnlExploration,
    Rule90Equivalence,
    Semantics,
    WaveDescriptor,
    WaveFlavor,
)
from .rule90 import rule90_step, single_seed

_LOGGER = logging.getLogger(__name__)

HALF = Fraction(1, 2)

# W puts row 1 on the collaborator side, so C-wave interrupters sit in row 2.
_FLAVOR_BY_ROW = {1: WaveFlavor.D_WAVE, 2: WaveFlavor.C_WAVE}


def _check_sizes(n: int, ell: int) -> None:
    if n < 4 or n % 2 or ell < 3:
        raise InvalidSizeError(f"H_(n,l) needs an even n >= 4 and l >= 3, got n={n}, l={ell}")


def wave_descriptor(n: int, row: int, columns: Iterable[int]) -> WaveDescriptor:
    """Return a validated descriptor; the flavor follows from the row."""
    if row not in _FLAVOR_BY_ROW:
        raise InvalidWaveError(f"Row must be 1 or 2, got {row}")
    interrupters = frozenset(columns)
    if any(not 0 <= i < n for i in interrupters):
        raise InvalidWaveError(f"Interrupter columns {sorted(interrupters)} outside 0..{n - 1}")
    if len({i % 2 for i in interrupters}) > 1:
        raise InvalidWaveError(
            f"Interrupter columns {sorted(interrupters)} are not all of one parity"
        )
    return WaveDescriptor(
        n=n, row=row, interrupter_columns=interrupters, flavor=_FLAVOR_BY_ROW[row]
    )


def base_wave(n: int, ell: int = 3) -> Configuration:
    """Return W: row 1 and its cliques collaborate, row 2 and its cliques defect."""
    _check_sizes(n, ell)
    collaborators = [hnl_cycle_vertex(n, i, 1) for i in range(n)]
    for i in range(n):
        collaborators.extend(hnl_clique_vertices(n, ell, i, 1))
    return Configuration.from_collaborators(2 * n * (1 + ell), collaborators)


def wave_from_interrupters(n: int, ell: int, descriptor: WaveDescriptor) -> Configuration:
    """Return W with the descriptor's cycle vertices flipped."""
    _check_sizes(n, ell)
    checked = wave_descriptor(descriptor.n, descriptor.row, descriptor.interrupter_columns)
    if checked.n != n:
        raise InvalidWaveError(f"Descriptor is for n={descriptor.n}, graph has n={n}")
    if checked.flavor is not descriptor.flavor:
        raise InvalidWaveError(
            f"Row {descriptor.row} interrupters form a {checked.flavor}, not a {descriptor.flavor}"
        )

    config = base_wave(n, ell)
    collaborator = descriptor.flavor is WaveFlavor.C_WAVE
    for column in descriptor.interrupter_columns:
        config = config.with_strategy(hnl_cycle_vertex(n, column, descriptor.row), collaborator)
    return config


def _h_vertices(g: Graph) -> list[tuple[int, HLabel]]:
    if g.labels is None:
        raise LabelError("Graph carries no H_(n,l) labels")
    labelled = [(v, label) for v, label in enumerate(g.labels) if isinstance(label, HLabel)]
    if not labelled:
        raise LabelError("Graph carries no H_(n,l) labels")
    return labelled


def detect_interrupters(g: Graph, c: Configuration) -> WaveDescriptor | None:
    """Return the wave descriptor of c, or None if c is not a wave configuration.

    Vertices without H_(n,l) labels (an attached graph) are ignored.
    """
    labelled = _h_vertices(g)
    n = max(label.column for _, label in labelled) + 1
    flipped: dict[int, set[int]] = {1: set(), 2: set()}

    for v, label in labelled:
        if c.is_collaborator(v) == (label.row == 1):
            continue
        if label.role != ROLE_CYCLE:
            return None
        flipped[label.row].add(label.column)

    if flipped[1] and flipped[2]:
        return None
    row = 1 if flipped[1] else 2
    columns = flipped[row]
    if len({i % 2 for i in columns}) > 1:
        return None
    return WaveDescriptor(
        n=n, row=row, interrupter_columns=frozenset(columns), flavor=_FLAVOR_BY_ROW[row]
    )


def wave_orbit(
    g: Graph,
    c0: Configuration,
    steps: int,
    w: Fraction = HALF,
    semantics: Semantics = Semantics.STRICT,
) -> list[WaveDescriptor | None]:
    """Return the wave descriptor of C_0..C_steps (None once off the wave family)."""
    process = PowerIndexProcess(g, w, semantics)
    descriptors = []
    config = c0
    for _ in range(steps + 1):
        descriptors.append(detect_interrupters(g, config))
        config = process.step(config)
    return descriptors


def verify_rule90_equivalence(
    n: int,
    ell: int = 3,
    steps: int = 64,
    semantics: Semantics = Semantics.STRICT,
) -> Rule90Equivalence:
    """Run the single-interrupter C-wave on H_n beside Rule 90 and compare columns.

    The wave starts with v_{0,2} as its only interrupter; at every step the
    interrupter columns must equal the live cells of the ring.
    """
    _check_sizes(n, ell)
    g = make_hnl(n, ell)
    config = wave_from_interrupters(n, ell, wave_descriptor(n, 2, [0]))
    process = PowerIndexProcess(g, HALF, semantics)
    state: CAState = single_seed(n)
    result = Rule90Equivalence(n=n, steps=steps, equal=True)

    for t in range(steps + 1):
        descriptor = detect_interrupters(g, config)
        ca_columns = state.live()
        process_columns = (
            tuple(sorted(descriptor.interrupter_columns)) if descriptor is not None else None
        )
        if process_columns != ca_columns:
            _LOGGER.warning(
                "H_%d diverged from Rule 90 at t=%d: process %s, automaton %s",
                n,
                t,
                process_columns,
                ca_columns,
            )
            result.equal = False
            result.divergence = Divergence(
                t=t, process_columns=process_columns, ca_columns=ca_columns
            )
            return result
        result.flavors.append(descriptor.flavor)
        config = process.step(config)
        state = rule90_step(state)

    _LOGGER.debug("H_%d matched Rule 90 for %d steps", n, steps)
    return result


def equivalence_to_dict(result: Rule90Equivalence) -> dict[str, object]:
    """Return the equivalence report JSON document."""
    divergence = None
    if result.divergence is not None:
        divergence = {
            "t": result.divergence.t,
            "process_columns": (
                list(result.divergence.process_columns)
                if result.divergence.process_columns is not None
                else None
            ),
            "ca_columns": list(result.divergence.ca_columns),
        }
    return {
        "n": result.n,
        "steps": result.steps,
        "verdict": result.verdict,
        "divergence": divergence,
    }


def explore_hnl(
    n: int,
    ell: int,
    w_values: Iterable[Fraction],
    steps: int = 1024,
) -> list[HnlExploration]:
    """Run the single-interrupter wave seed on H_{n,l} for each w.

    Exploratory only: reports the orbit shape and whether every state of the
    orbit is still a wave configuration.
    """
    g = make_hnl(n, ell)
    seed = wave_from_interrupters(n, ell, wave_descriptor(n, 2, [0]))
    rows = []
    for w in w_values:
        report = PowerIndexProcess(g, w).evolve(seed, steps)
        stays_wave = all(detect_interrupters(g, config) is not None for config in report.configs)
        rows.append(
            HnlExploration(
                w=w, transient=report.transient, period=report.period, stays_wave=stays_wave
            )
        )
        _LOGGER.debug(
            "H_(%d,%d) at w=%s: period %s, stays wave %s", n, ell, w, report.period, stays_wave
        )
    return rows


def wave_on_graph(
    g: Graph,
    descriptor: WaveDescriptor | None = None,
    others_collaborate: bool = False,
) -> Configuration:
    """Return W (or a wave) on any graph carrying H_(n,l) labels.

    Vertices without H_(n,l) labels collaborate iff others_collaborate.
    """
    labelled = dict(_h_vertices(g))
    collaborators = []
    for v in range(g.vertex_count):
        label = labelled.get(v)
        if label is None:
            if others_collaborate:
                collaborators.append(v)
            continue
        collaborator = label.row == 1
        if (
            descriptor is not None
            and label.role == ROLE_CYCLE
            and label.row == descriptor.row
            and label.column in descriptor.interrupter_columns
        ):
            collaborator = not collaborator
        if collaborator:
            collaborators.append(v)
    return Configuration.from_collaborators(g.vertex_count, collaborators)
