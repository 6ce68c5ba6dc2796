"""Cylindrical Rule 90 automaton."""

from __future__ import annotations

import logging

import numpy as np

from .exceptions import InvalidConfigurationError, InvalidSizeError
from .models import CAState

_LOGGER = logging.getLogger(__name__)


def parse_state(text: str) -> CAState:
    """Parse a "00100..." bitstring."""
    text = text.strip()
    if not text or set(text) - {"0", "1"}:
        raise InvalidConfigurationError(f"CA state must be a nonempty bitstring, got {text!r}")
    return CAState(tuple(int(char) for char in text))


def single_seed(n: int) -> CAState:
    """Return the ring of length n with only cell 0 live."""
    if n < 3:
        raise InvalidSizeError(f"Rule 90 ring needs n >= 3, got {n}")
    return CAState.from_live(n, [0])


def rule90_step(state: CAState) -> CAState:
    """Cell i becomes live iff exactly one of cells i-1 and i+1 was live."""
    if state.n < 3:
        raise InvalidSizeError(f"Rule 90 ring needs n >= 3, got {state.n}")
    cells = np.asarray(state.cells, dtype=np.uint8)
    updated = np.roll(cells, 1) ^ np.roll(cells, -1)
    return CAState(tuple(int(cell) for cell in updated))


def rule90_evolve(seed: CAState, steps: int) -> list[CAState]:
    """Return [seed, step(seed), ...] with steps + 1 states."""
    if steps < 0:
        raise ValueError(f"steps must be non-negative, got {steps}")
    orbit = [seed]
    for _ in range(steps):
        orbit.append(rule90_step(orbit[-1]))
    return orbit


def rule90_period(n: int, seed: CAState | None = None) -> tuple[int, int]:
    """Return (transient, period) of the orbit of seed (single live cell by default)."""
    state = seed if seed is not None else single_seed(n)
    seen = {state.cells: 0}
    t = 0
    while True:
        state = rule90_step(state)
        t += 1
        if state.cells in seen:
            transient = seen[state.cells]
            _LOGGER.debug("Rule 90 ring %d: transient %d, period %d", n, transient, t - transient)
            return transient, t - transient
        seen[state.cells] = t


def orbit_records(orbit: list[CAState]) -> list[dict[str, object]]:
    """Return the JSON-lines orbit dump."""
    return [
        {"t": t, "cells": state.to_text(), "live_count": len(state.live())}
        for t, state in enumerate(orbit)
    ]
