"""Win partition of [1/2, 1) and the same-part equivalence check."""

from __future__ import annotations

from fractions import Fraction
import logging
from math import ceil

from .const import W_MAX, W_MIN
from .dynamics import PowerIndexProcess, check_win_condition, format_fraction
from .exceptions import ConfigurationLengthError, UnsupportedSemanticsError
from .graph import Graph
from .models import Configuration, Part, PartitionEquivalence, Semantics, WinPartition

_LOGGER = logging.getLogger(__name__)


def s_v(g: Graph, v: int) -> set[Fraction]:
    """Return S_v = { i/|N[v]| : |N[v]|/2 <= i <= |N[v]| }."""
    g.validate_vertex(v)
    size = g.degree(v) + 1
    return {Fraction(i, size) for i in range(ceil(size / 2), size + 1)}


def s_g(g: Graph) -> set[Fraction]:
    """Return the union of S_v over all vertices."""
    values: set[Fraction] = set()
    for size in {d + 1 for d in g.degrees()}:
        values.update(Fraction(i, size) for i in range(ceil(size / 2), size + 1))
    return values


def win_partition(g: Graph) -> WinPartition:
    """Return the win partition of g.

    Only elements of S_G strictly inside (1/2, 1) are breakpoints, so every
    part is nonempty.
    """
    breakpoints = tuple(sorted(s for s in s_g(g) if W_MIN < s < W_MAX))
    bounds = (W_MIN, *breakpoints, W_MAX)
    parts = tuple(Part(lo, hi) for lo, hi in zip(bounds, bounds[1:], strict=False))
    _LOGGER.debug("Win partition with %d parts: %s", len(parts), breakpoints)
    return WinPartition(breakpoints=breakpoints, parts=parts)


def representatives(g: Graph) -> list[Fraction]:
    """Return the representative win condition of every part."""
    return win_partition(g).representatives


def last_two_representatives(partition: WinPartition) -> list[Fraction]:
    """Return the representatives of the last two parts (one if there is one part)."""
    return partition.representatives[-2:]


def part_of(partition: WinPartition, w: Fraction) -> int:
    """Return the index of the part containing w."""
    check_win_condition(w)
    for index, part in enumerate(partition.parts):
        if w in part:
            return index
    raise AssertionError(f"Partition does not cover {w}")


def verify_partition_equivalence(
    g: Graph,
    c0: Configuration,
    w1: Fraction,
    w2: Fraction,
    semantics: Semantics = Semantics.STRICT,
    horizon: int | None = None,
) -> PartitionEquivalence:
    """Run the w1 and w2 processes in lockstep and report the first difference.

    Comparison stops early once the shared orbit closes: both processes are
    then in the same cycle and stay equal for any horizon.
    """
    if Semantics(semantics) is not Semantics.STRICT:
        raise UnsupportedSemanticsError(
            "Win partition equivalence holds under strict semantics only"
        )
    if c0.size != g.vertex_count:
        raise ConfigurationLengthError(
            f"Configuration has {c0.size} strategies, graph has {g.vertex_count} vertices"
        )
    if horizon is None:
        horizon = 2**c0.size
    if horizon < 1:
        raise ValueError(f"horizon must be positive, got {horizon}")

    partition = win_partition(g)
    if part_of(partition, w1) != part_of(partition, w2):
        _LOGGER.debug("Comparing %s and %s across a part boundary", w1, w2)

    first = PowerIndexProcess(g, w1, semantics)
    second = PowerIndexProcess(g, w2, semantics)
    bits = c0.bits
    seen = {bits}
    for t in range(1, horizon + 1):
        bits, other = first.step_bits(bits), second.step_bits(bits)
        if bits != other:
            return PartitionEquivalence(equal=False, divergence_step=t, steps_compared=t)
        if bits in seen:
            return PartitionEquivalence(equal=True, divergence_step=None, steps_compared=t)
        seen.add(bits)
    return PartitionEquivalence(equal=True, divergence_step=None, steps_compared=horizon)


def partition_to_dict(partition: WinPartition) -> dict[str, object]:
    """Return the partition JSON document."""
    return {
        "breakpoints": [format_fraction(b) for b in partition.breakpoints],
        "parts": [
            {
                "lo": format_fraction(p.lo),
                "hi": format_fraction(p.hi),
                "representative": format_fraction(p.representative),
            }
            for p in partition.parts
        ],
    }
