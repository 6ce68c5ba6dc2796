"""Tests for the w-power index process."""

from __future__ import annotations

from fractions import Fraction
import random

import pytest

from power_index_process.dynamics import (
    PowerIndexProcess,
    classify_dominance,
    complement_configuration,
    evolve,
    format_configuration,
    format_fraction,
    orbit,
    parse_configuration,
    parse_win_condition,
    power,
    power_all,
    report_to_dict,
    step,
    trace,
)
from power_index_process.exceptions import (
    ConfigurationLengthError,
    InconclusiveError,
    InvalidConfigurationError,
    InvalidVertexError,
    InvalidWinConditionError,
)
from power_index_process.explorer import gjn_seed
from power_index_process.graph import (
    Graph,
    make_complete,
    make_cycle,
    make_gjn,
    make_hnl,
    random_connected_graph,
)
from power_index_process.models import Configuration, Dominance, Semantics
from power_index_process.wave import base_wave

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


class TestParsing:
    """Tests for win condition and configuration text."""

    @pytest.mark.parametrize(
        ("text", "expected"),
        [("1/2", HALF), ("3/5", Fraction(3, 5)), (" 2/4 ", HALF), ("99/100", Fraction(99, 100))],
    )
    def test_parse_win_condition(self, text: str, expected: Fraction) -> None:
        """Test exact fractions are accepted and reduced."""
        assert parse_win_condition(text) == expected

    @pytest.mark.parametrize("text", ["0.5", "1/3", "1/1", "3/2", "1/0", "half", ""])
    def test_reject_win_condition(self, text: str) -> None:
        """Test decimals and out-of-range values are rejected."""
        with pytest.raises(InvalidWinConditionError):
            parse_win_condition(text)

    def test_format_fraction(self) -> None:
        """Test fractions print as num/den."""
        assert format_fraction(Fraction(2, 3)) == "2/3"
        assert format_fraction(Fraction(1)) == "1/1"

    def test_parse_configuration(self) -> None:
        """Test the {C,D} text form."""
        config = parse_configuration("CCDDDD", 6)

        assert config.collaborators() == [0, 1]
        assert format_configuration(config) == "CCDDDD"

    def test_parse_configuration_errors(self) -> None:
        """Test unknown letters and wrong lengths are rejected."""
        with pytest.raises(InvalidConfigurationError):
            parse_configuration("CXD")
        with pytest.raises(ConfigurationLengthError):
            parse_configuration("CCD", 4)


class TestPower:
    """Tests for power computation."""

    def test_worked_example(self, figure_one: Graph, figure_one_seed: Configuration) -> None:
        """Test the six-vertex example powers at w = 1/2."""
        expected = [HALF, HALF, THIRD, THIRD, THIRD, THIRD]

        assert power_all(figure_one, figure_one_seed, HALF) == expected
        assert power_all(figure_one, figure_one_seed, HALF, Semantics.INCLUSIVE) == expected

    def test_single_vertex(self) -> None:
        """Test a lone collaborator has power 1."""
        g = Graph.from_edges(1, [])

        assert power(g, parse_configuration("C"), Fraction(9, 10), 0) == 1

    def test_gjn_second_level(self) -> None:
        """Test a K_6 vertex of G_{3,2} has power 1/8 under the collaborator seed."""
        g = make_gjn(3, 2)
        seed = gjn_seed(g)

        assert power(g, seed, HALF, 3) == Fraction(1, 8)

    def test_all_collaborator_clique(self) -> None:
        """Test every vertex of an all-C K_4 has power 1/4."""
        g = make_complete(4)

        assert power_all(g, Configuration.all_collaborators(4), HALF) == [Fraction(1, 4)] * 4

    def test_bowtie(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test the bowtie powers with b0 and b1 collaborating."""
        assert power_all(bowtie, bowtie_seed, HALF) == [THIRD, THIRD, THIRD, HALF, HALF]

    def test_boundary_ratio(self, figure_one: Graph) -> None:
        """Test strict and inclusive modes differ exactly at ratio w."""
        c1 = parse_configuration("CCCDDD")

        assert power_all(figure_one, c1, HALF) == [HALF, THIRD, 0, HALF, HALF, THIRD]
        assert power_all(figure_one, c1, HALF, Semantics.INCLUSIVE) == [
            HALF,
            THIRD,
            HALF,
            HALF,
            HALF,
            THIRD,
        ]

    def test_invalid_inputs(self, figure_one: Graph, figure_one_seed: Configuration) -> None:
        """Test bad w, vertices and lengths are rejected."""
        with pytest.raises(InvalidWinConditionError):
            power(figure_one, figure_one_seed, Fraction(1), 0)
        with pytest.raises(InvalidWinConditionError):
            power(figure_one, figure_one_seed, Fraction(2, 5), 0)
        with pytest.raises(InvalidVertexError):
            power(figure_one, figure_one_seed, HALF, 6)
        with pytest.raises(ConfigurationLengthError):
            power_all(figure_one, parse_configuration("CD"), HALF)

    def test_power_values(self) -> None:
        """Test every power is 0 or 1/k with k at most |N[v]|."""
        rng = random.Random(3)
        for index in range(10):
            g = random_connected_graph(8, 0.35, rng_seed=index)
            c = Configuration(8, rng.randrange(256))
            for w in (HALF, Fraction(2, 3), Fraction(4, 5)):
                for v, p in enumerate(power_all(g, c, w)):
                    assert p == 0 or (p.numerator == 1 and p.denominator <= g.degree(v) + 1)


class TestStep:
    """Tests for the synchronous update."""

    def test_worked_example(self, figure_one: Graph, figure_one_seed: Configuration) -> None:
        """Test one step of the worked example adds vertex 20."""
        assert step(figure_one, figure_one_seed, HALF).to_text() == "CCCDDD"

    def test_unanimous_defectors(self) -> None:
        """Test an all-D graph never changes."""
        g = make_cycle(5)
        all_d = Configuration.all_defectors(5)

        assert step(g, all_d, Fraction(3, 4)) == all_d

    def test_bowtie(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test the bowtie centre joins the collaborators."""
        assert step(bowtie, bowtie_seed, HALF).to_text() == "DDCCC"

    def test_locality(self) -> None:
        """Test a strategy three hops away cannot affect a vertex in one step."""
        rng = random.Random(17)
        checked = 0
        for index in range(20):
            g = random_connected_graph(10, 0.25, rng_seed=100 + index)
            c = Configuration(10, rng.randrange(1024))
            for v in range(g.vertex_count):
                far = [u for u, d in g.bfs_distances(v).items() if d >= 3]
                for u in far:
                    flipped = c.with_strategy(u, not c.is_collaborator(u))
                    for w in (HALF, Fraction(2, 3)):
                        before = step(g, c, w).is_collaborator(v)
                        assert step(g, flipped, w).is_collaborator(v) == before
                        checked += 1
        assert checked > 0

    @pytest.mark.parametrize(
        "g", [make_cycle(7), make_complete(5), make_cycle(9), make_complete(3)]
    )
    def test_parity_symmetry(self, g: Graph) -> None:
        """Test odd closed neighbourhoods make the half process complement-symmetric."""
        rng = random.Random(g.vertex_count)
        for _ in range(50):
            c = Configuration(g.vertex_count, rng.randrange(2**g.vertex_count))
            assert step(g, complement_configuration(c), HALF) == complement_configuration(
                step(g, c, HALF)
            )


class TestEvolve:
    """Tests for trajectories."""

    def test_bowtie_period_two(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test the bowtie orbit has transient 0 and period 2."""
        report = evolve(bowtie, bowtie_seed, HALF)

        assert report.transient == 0
        assert report.period == 2
        assert [c.to_text() for c in report.configs] == ["DDDCC", "DDCCC"]

    def test_worked_example_modes(
        self, figure_one: Graph, figure_one_seed: Configuration
    ) -> None:
        """Test strict mode oscillates while inclusive mode settles after one step."""
        strict = evolve(figure_one, figure_one_seed, HALF)
        inclusive = evolve(figure_one, figure_one_seed, HALF, Semantics.INCLUSIVE)

        assert (strict.transient, strict.period) == (0, 2)
        assert (inclusive.transient, inclusive.period) == (1, 1)
        assert inclusive.final.to_text() == "CCCDDD"
        assert strict.semantics is Semantics.STRICT
        assert inclusive.semantics is Semantics.INCLUSIVE

    def test_all_collaborators(self) -> None:
        """Test the all-C seed is stable at once."""
        g = make_cycle(6)
        report = evolve(g, Configuration.all_collaborators(6), Fraction(2, 3))

        assert (report.transient, report.period) == (0, 1)
        assert report.is_stable is True

    def test_budget_exhausted(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test a too-small budget gives an inconclusive report."""
        report = evolve(bowtie, bowtie_seed, HALF, max_steps=1)

        assert report.conclusive is False
        assert report.period is None
        assert report.steps_taken == 1

    def test_budget_must_be_positive(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test a zero budget is rejected."""
        with pytest.raises(ValueError):
            evolve(bowtie, bowtie_seed, HALF, max_steps=0)

    def test_report_well_formed(self) -> None:
        """Test orbits close exactly at transient + period with distinct earlier states."""
        rng = random.Random(5)
        for index in range(15):
            g = random_connected_graph(9, 0.3, rng_seed=200 + index)
            c0 = Configuration(9, rng.randrange(512))
            for w in (HALF, Fraction(3, 4)):
                report = evolve(g, c0, w)
                assert len(report.configs) == report.transient + report.period
                assert len(set(report.configs)) == len(report.configs)
                assert step(g, report.final, w) == report.configs[report.transient]

    def test_deterministic(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test repeated runs give identical reports."""
        assert evolve(bowtie, bowtie_seed, HALF) == evolve(bowtie, bowtie_seed, HALF)

    def test_orbit(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test orbit lists C_0..C_steps."""
        configs = orbit(bowtie, bowtie_seed, HALF, steps=3)

        assert [c.to_text() for c in configs] == ["DDDCC", "DDCCC", "DDDCC", "DDCCC"]


class TestClassify:
    """Tests for dominance classification."""

    def test_collaborator_dominant(self) -> None:
        """Test the K_3 seed of G_{3,2} takes over."""
        g = make_gjn(3, 2)
        report = evolve(g, gjn_seed(g), HALF)

        assert classify_dominance(g, report) is Dominance.COLLABORATOR_DOMINANT

    def test_defector_dominant(self) -> None:
        """Test the all-D seed is defector dominant."""
        g = make_cycle(5)
        report = evolve(g, Configuration.all_defectors(5), HALF)

        assert classify_dominance(g, report) is Dominance.DEFECTOR_DOMINANT

    def test_mixed_stable(self) -> None:
        """Test W on H_8 is stable and mixed."""
        g = make_hnl(8)
        report = evolve(g, base_wave(8), HALF)

        assert report.period == 1
        assert classify_dominance(g, report) is Dominance.MIXED_STABLE

    def test_periodic(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test a period-two orbit is classified periodic."""
        report = evolve(bowtie, bowtie_seed, HALF)

        assert classify_dominance(bowtie, report) is Dominance.PERIODIC

    def test_inconclusive(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test classifying an inconclusive report raises."""
        report = evolve(bowtie, bowtie_seed, HALF, max_steps=1)

        with pytest.raises(InconclusiveError):
            classify_dominance(bowtie, report)


class TestComplement:
    """Tests for the role swap."""

    def test_involution(self) -> None:
        """Test complementing twice is the identity."""
        c = parse_configuration("CDDCD")

        assert complement_configuration(c).to_text() == "DCCDC"
        assert complement_configuration(complement_configuration(c)) == c
        assert complement_configuration(Configuration.all_collaborators(3)) == (
            Configuration.all_defectors(3)
        )

    def test_complement_of_w_is_stable(self) -> None:
        """Test the role-swapped W on H_8 is also a fixed point."""
        g = make_hnl(8)
        report = evolve(g, complement_configuration(base_wave(8)), HALF)

        assert (report.transient, report.period) == (0, 1)


class TestRecords:
    """Tests for trace and report documents."""

    def test_trace(self, figure_one: Graph, figure_one_seed: Configuration) -> None:
        """Test trace records carry powers and changed vertices."""
        records = trace(figure_one, figure_one_seed, HALF, steps=2)

        assert [record["t"] for record in records] == [0, 1, 2]
        assert records[0] == {
            "t": 0,
            "config": "CCDDDD",
            "powers": ["1/2", "1/2", "1/3", "1/3", "1/3", "1/3"],
            "changed": [],
        }
        assert records[1]["config"] == "CCCDDD"
        assert records[1]["changed"] == [2]
        assert records[2]["changed"] == [2]

    def test_report_to_dict(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test the report document."""
        report = evolve(bowtie, bowtie_seed, HALF)

        assert report_to_dict(bowtie, report) == {
            "semantics": "strict",
            "w": "1/2",
            "transient": 0,
            "period": 2,
            "steps_taken": 2,
            "classification": "Periodic",
        }

    def test_report_to_dict_inconclusive(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test an inconclusive report has no classification."""
        report = evolve(bowtie, bowtie_seed, HALF, max_steps=1)

        assert report_to_dict(bowtie, report)["classification"] is None


class TestProcessObject:
    """Tests for the reusable process object."""

    def test_shares(self, bowtie: Graph, bowtie_seed: Configuration) -> None:
        """Test winning-side sizes match the powers."""
        process = PowerIndexProcess(bowtie, HALF)

        assert process.shares(bowtie_seed.bits) == [3, 3, 3, 2, 2]

    def test_semantics_string(self, bowtie: Graph) -> None:
        """Test the semantics may be given as text."""
        assert PowerIndexProcess(bowtie, HALF, "inclusive").semantics is Semantics.INCLUSIVE
