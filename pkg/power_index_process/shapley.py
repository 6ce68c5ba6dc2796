"""Classic Shapley-Shubik power index by brute-force permutation counting."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations
import logging
from math import factorial

from .const import MAX_SHAPLEY_VOTERS, MIN_SHAPLEY_VOTERS
from .exceptions import InvalidSizeError

_LOGGER = logging.getLogger(__name__)


def shapley_shubik_uniform(n_voters: int, quota: int) -> list[Fraction]:
    """Return p(I) = pi_I / n! for n one-vote voters and the given quota.

    In every roll-call ordering the voter whose ballot brings the yes count
    to the quota is pivotal.
    """
    if not MIN_SHAPLEY_VOTERS <= n_voters <= MAX_SHAPLEY_VOTERS:
        raise InvalidSizeError(
            f"Voter count must be in {MIN_SHAPLEY_VOTERS}..{MAX_SHAPLEY_VOTERS}, got {n_voters}"
        )
    if not 1 <= quota <= n_voters:
        raise InvalidSizeError(f"Quota must be in 1..{n_voters}, got {quota}")

    pivotal_counts = [0] * n_voters
    for ordering in permutations(range(n_voters)):
        pivotal_counts[ordering[quota - 1]] += 1

    total = factorial(n_voters)
    _LOGGER.debug("Counted %d orderings for %d voters, quota %d", total, n_voters, quota)
    return [Fraction(count, total) for count in pivotal_counts]
