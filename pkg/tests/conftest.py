"""Fixtures for power index process tests."""

from __future__ import annotations

from collections.abc import Generator
from unittest.mock import MagicMock, patch

from click.testing import CliRunner
import pytest

from power_index_process.dynamics import parse_configuration
from power_index_process.graph import (
    Graph,
    make_bowtie,
    make_cycle,
    make_figure_one,
    make_hnl,
    make_petersen,
    make_prism,
)
from power_index_process.models import (
    Configuration,
    Divergence,
    PartitionEquivalence,
    Rule90Equivalence,
)


@pytest.fixture
def figure_one() -> Graph:
    """Return the six-vertex worked example (00, 10, 20, 30, 21, 31)."""
    return make_figure_one()


@pytest.fixture
def figure_one_seed() -> Configuration:
    """Return the worked example seed with 00 and 10 collaborating."""
    return parse_configuration("CCDDDD")


@pytest.fixture
def bowtie() -> Graph:
    """Return two triangles sharing a centre (a0, a1, m, b0, b1)."""
    return make_bowtie()


@pytest.fixture
def bowtie_seed() -> Configuration:
    """Return the bowtie seed with b0 and b1 collaborating."""
    return parse_configuration("DDDCC")


@pytest.fixture
def cycle_four() -> Graph:
    """Return C_4."""
    return make_cycle(4)


@pytest.fixture
def petersen() -> Graph:
    """Return the Petersen graph."""
    return make_petersen()


@pytest.fixture
def h8() -> Graph:
    """Return H_8 with pendant triangles."""
    return make_hnl(8)


@pytest.fixture
def prism_four() -> Graph:
    """Return K_3 □ C_4 with layer labels."""
    return make_prism(4)


@pytest.fixture
def runner() -> CliRunner:
    """Return a click test runner."""
    return CliRunner()


@pytest.fixture
def mock_partition_equivalence() -> Generator[MagicMock, None, None]:
    """Mock the lockstep check to report a divergence."""
    with patch(
        "power_index_process.cli.verify_partition_equivalence",
        autospec=True,
        return_value=PartitionEquivalence(equal=False, divergence_step=3, steps_compared=3),
    ) as mock:
        yield mock


@pytest.fixture
def mock_rule90_equivalence() -> Generator[MagicMock, None, None]:
    """Mock the wave check to report a divergence."""
    with patch(
        "power_index_process.cli.verify_rule90_equivalence",
        autospec=True,
        return_value=Rule90Equivalence(
            n=8,
            steps=64,
            equal=False,
            divergence=Divergence(t=5, process_columns=None, ca_columns=(1, 3)),
        ),
    ) as mock:
        yield mock
