"""Tests for validated run specifications."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest
import voluptuous as vol

from power_index_process.explorer import gjn_seed
from power_index_process.graph import make_bowtie, make_gjn
from power_index_process.graph_io import serialize_graph
from power_index_process.models import Configuration, Semantics
from power_index_process.run_spec import (
    build_graph,
    build_seed,
    graph_id,
    validate_run_spec,
)
from power_index_process.wave import base_wave, wave_descriptor, wave_from_interrupters


class TestValidate:
    """Tests for validate_run_spec."""

    def test_defaults(self) -> None:
        """Test defaults fill in w, semantics, budget and workers."""
        spec = validate_run_spec({"subcommand": "partition", "cycle": 5})

        assert spec.graph_source == ("generator", ("cycle", {"n": 5}))
        assert spec.seed_source is None
        assert spec.w == Fraction(1, 2)
        assert spec.semantics is Semantics.STRICT
        assert spec.budget == 1_000_000
        assert spec.workers == 1

    def test_none_values_are_dropped(self) -> None:
        """Test unset options arrive as None and are ignored."""
        spec = validate_run_spec(
            {"subcommand": "run", "path": 3, "seed": "CDC", "w": None, "density": None}
        )

        assert spec.seed_source == ("seed", "CDC")
        assert spec.w == Fraction(1, 2)

    def test_generator_params_are_validated(self) -> None:
        """Test generator parameters go through the generator schema."""
        spec = validate_run_spec(
            {"subcommand": "generate", "generator": "gjn", "params": {"j": "3", "n": "2"}}
        )

        assert spec.graph_source == ("generator", ("gjn", {"j": 3, "n": 2}))

    @pytest.mark.parametrize(
        "raw",
        [
            {"subcommand": "run", "cycle": 5, "path": 3, "seed": "CCCCC"},
            {"subcommand": "run", "cycle": 5, "seed": "CCCCC", "density": "1/2"},
            {"subcommand": "run", "cycle": 5},
            {"subcommand": "partition"},
            {"subcommand": "sweep", "cycle": 2},
            {"subcommand": "run", "cycle": 5, "seed": "CCCCC", "w": "0.5"},
            {"subcommand": "run", "cycle": 5, "seed": "CCCCC", "w": "1/3"},
            {"subcommand": "run", "cycle": 5, "density": "3/2"},
            {"subcommand": "run", "cycle": 5, "named_seed": "nope"},
            {"subcommand": "sweep", "cycle": 5, "semantics": "loose"},
            {"subcommand": "sweep", "cycle": 5, "budget": 0},
            {"subcommand": "simulate", "cycle": 5},
            {"subcommand": "generate", "generator": "hn", "params": {"n": 5}},
            {"subcommand": "generate", "generator": "random", "params": {"n": 5}},
            {"subcommand": "generate", "generator": "prism", "params": {"j": 2}},
        ],
    )
    def test_invalid(self, raw: dict[str, object]) -> None:
        """Test conflicting, missing and out-of-range options are rejected."""
        with pytest.raises(vol.Invalid):
            validate_run_spec(raw)

    def test_wave_check_needs_no_graph(self) -> None:
        """Test subcommands with built-in graphs need no graph source."""
        spec = validate_run_spec({"subcommand": "rule90", "steps": 8})

        assert spec.graph_source is None
        assert spec.steps == 8
        assert graph_id(spec) == "none"


class TestBuild:
    """Tests for graph and seed construction."""

    def test_graph_id(self) -> None:
        """Test graph ids list sorted parameters."""
        spec = validate_run_spec(
            {"subcommand": "generate", "generator": "hnl", "params": {"n": 6, "ell": 4}}
        )

        assert graph_id(spec) == "hnl(ell=4,n=6)"
        assert graph_id(validate_run_spec({"subcommand": "partition", "cycle": 5})) == "cycle(n=5)"

    def test_gjn_random_wiring(self) -> None:
        """Test an rng seed selects the shuffled wiring."""
        spec = validate_run_spec(
            {
                "subcommand": "generate",
                "generator": "gjn",
                "params": {"j": 3, "n": 2, "rng_seed": 4},
            }
        )

        g = build_graph(spec)

        assert g.degrees() == make_gjn(3, 2).degrees()

    def test_graph_file(self, tmp_path: Path) -> None:
        """Test graphs load from files."""
        path = tmp_path / "bowtie.json"
        path.write_text(serialize_graph(make_bowtie()), encoding="utf-8")
        spec = validate_run_spec({"subcommand": "partition", "graph_file": str(path)})

        assert build_graph(spec) == make_bowtie()
        assert graph_id(spec) == "bowtie.json"

    def test_explicit_seed(self) -> None:
        """Test an explicit seed must match the vertex count."""
        spec = validate_run_spec({"subcommand": "run", "cycle": 4, "seed": "CCDD"})

        assert build_seed(spec, build_graph(spec)).collaborators() == [0, 1]

    def test_density_seed(self) -> None:
        """Test a density seed is reproducible from the rng seed."""
        raw = {"subcommand": "run", "cycle": 8, "density": "1/2", "rng_seed": 3}
        spec = validate_run_spec(raw)
        g = build_graph(spec)

        assert build_seed(spec, g) == build_seed(validate_run_spec(raw), g)
        assert spec.seed_source == ("density", Fraction(1, 2))

    @pytest.mark.parametrize(
        ("generator", "params", "named_seed"),
        [
            ("gjn", {"j": 3, "n": 2}, "gjn-C"),
            ("gjn", {"j": 3, "n": 2}, "gjn-D"),
            ("prism", {"j": 4}, "layered"),
            ("hn", {"n": 6}, "W"),
            ("hn", {"n": 6}, "W-complement"),
            ("hn", {"n": 6}, "wave"),
            ("bowtie", {}, "all-C"),
            ("bowtie", {}, "all-D"),
        ],
    )
    def test_named_seeds(self, generator: str, params: dict[str, int], named_seed: str) -> None:
        """Test every named seed builds on its graph."""
        spec = validate_run_spec(
            {
                "subcommand": "run",
                "generator": generator,
                "params": params,
                "named_seed": named_seed,
            }
        )
        g = build_graph(spec)

        assert build_seed(spec, g).size == g.vertex_count

    def test_named_seed_values(self) -> None:
        """Test named seeds match the direct constructions."""

        def seed(generator: str, params: dict[str, int], named_seed: str) -> Configuration:
            spec = validate_run_spec(
                {
                    "subcommand": "run",
                    "generator": generator,
                    "params": params,
                    "named_seed": named_seed,
                }
            )
            return build_seed(spec, build_graph(spec))

        assert seed("gjn", {"j": 3, "n": 2}, "gjn-C") == gjn_seed(make_gjn(3, 2))
        assert seed("hn", {"n": 6}, "W") == base_wave(6)
        assert seed("hn", {"n": 6}, "wave") == wave_from_interrupters(
            6, 3, wave_descriptor(6, 2, [0])
        )
        assert seed("prism", {"j": 4}, "layered").collaborators() == [0, 4, 8]
