"""Command-line entry point."""

from __future__ import annotations

from collections.abc import Callable, Iterator
from contextlib import contextmanager
import csv
import io
import json
import logging
from pathlib import Path
from typing import Any

import click
import voluptuous as vol

from .const import (
    DEFAULT_BUDGET,
    DEFAULT_W,
    DEFAULT_WORKERS,
    EXIT_INCONCLUSIVE,
    EXIT_VERIFICATION_FAILED,
    SEMANTICS_MODES,
    SEMANTICS_STRICT,
)
from .dynamics import evolve, format_fraction, parse_win_condition, report_to_dict, trace
from .exceptions import PowerIndexError
from .explorer import CSV_HEADER, sweep_csv_rows, sweep_to_dict, sweep_w
from .graph_io import FORMAT_EDGES, FORMAT_JSON, serialize_graph, to_dot
from .models import SweepReport
from .partition import part_of, partition_to_dict, verify_partition_equivalence, win_partition
from .rule90 import orbit_records, parse_state, rule90_evolve, rule90_period, single_seed
from .run_spec import NAMED_SEEDS, RunSpec, build_graph, build_seed, graph_id, validate_run_spec
from .shapley import shapley_shubik_uniform
from .wave import equivalence_to_dict, verify_rule90_equivalence

_LOGGER = logging.getLogger(__name__)

_LOG_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


class InconclusiveRunError(click.ClickException):
    """A run or sweep exhausted its step budget."""

    exit_code = EXIT_INCONCLUSIVE


class VerificationFailedError(click.ClickException):
    """A verification found a counterexample."""

    exit_code = EXIT_VERIFICATION_FAILED


@contextmanager
def _usage_errors() -> Iterator[None]:
    """Translate library and validation errors into usage errors (exit 2)."""
    try:
        yield
    except vol.Invalid as err:
        raise click.UsageError(str(err)) from err
    except PowerIndexError as err:
        raise click.UsageError(str(err)) from err
    except OSError as err:
        raise click.UsageError(f"{err.filename}: {err.strerror}") from err


def _to_json(document: Any) -> str:
    return json.dumps(document, indent=2) + "\n"


def _emit(text: str, path: str | None) -> None:
    """Write text to path, or to stdout when no path is given."""
    if path is None:
        click.echo(text, nl=False)
        return
    Path(path).write_text(text, encoding="utf-8")
    _LOGGER.info("Wrote %s", path)


_semantics_option = click.option(
    "--semantics",
    type=click.Choice(SEMANTICS_MODES),
    default=SEMANTICS_STRICT,
    show_default=True,
    help="Threshold mode at ratio exactly w.",
)
_budget_option = click.option(
    "--budget", type=int, default=DEFAULT_BUDGET, show_default=True, help="Step budget per run."
)


def _output_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option(
        "--dot", type=click.Path(dir_okay=False), default=None, help="Write a DOT drawing here."
    )(func)
    return click.option(
        "--out", type=click.Path(dir_okay=False), default=None, help="Write the result here."
    )(func)


def _process_options(func: Callable[..., Any]) -> Callable[..., Any]:
    return _semantics_option(_budget_option(_output_options(func)))


def _graph_options(func: Callable[..., Any]) -> Callable[..., Any]:
    func = click.option("--path", "path_n", type=int, default=None, help="Use P_N.")(func)
    func = click.option("--cycle", type=int, default=None, help="Use C_N.")(func)
    func = click.option(
        "--param", "params", multiple=True, metavar="KEY=VALUE", help="Generator parameter."
    )(func)
    func = click.option("--gen", "generator", default=None, help="Named generator.")(func)
    return click.option(
        "--graph",
        "graph_file",
        type=click.Path(exists=True, dir_okay=False),
        default=None,
        help="Graph file (JSON or edge list).",
    )(func)


def _parse_params(params: tuple[str, ...]) -> dict[str, str]:
    parsed = {}
    for item in params:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise click.UsageError(f"Parameter must look like KEY=VALUE, got {item!r}")
        parsed[key] = value
    return parsed


def _spec(subcommand: str, **raw: Any) -> RunSpec:
    with _usage_errors():
        return validate_run_spec({"subcommand": subcommand, **raw})


@click.group()
@click.option("-v", "--verbose", count=True, help="Repeat for more log output.")
def cli(verbose: int) -> None:
    """Simulate and verify the w-power index process on graphs."""
    logging.basicConfig(
        level=_LOG_LEVELS[min(verbose, len(_LOG_LEVELS) - 1)],
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.argument("generator")
@click.option("--n", type=int, default=None)
@click.option("--j", type=int, default=None)
@click.option("--ell", type=int, default=None)
@click.option("--a", type=int, default=None)
@click.option("--b", type=int, default=None)
@click.option("--edge-probability", type=float, default=None)
@click.option("--rng-seed", type=int, default=None)
@click.option(
    "--format", "fmt", type=click.Choice([FORMAT_JSON, FORMAT_EDGES]), default=FORMAT_JSON
)
@_output_options
def generate(
    generator: str,
    fmt: str,
    out: str | None,
    dot: str | None,
    **params: Any,
) -> None:
    """Write the canonical graph file of a named generator."""
    spec = _spec(
        "generate",
        generator=generator,
        params={key: value for key, value in params.items() if value is not None},
    )
    with _usage_errors():
        g = build_graph(spec)
        _emit(serialize_graph(g, fmt), out)
        if dot is not None:
            _emit(to_dot(g), dot)
    _LOGGER.info(
        "Generated %s: %d vertices, %d edges", graph_id(spec), g.vertex_count, g.edge_count
    )


@cli.command()
@_graph_options
@click.option("--seed", default=None, help="Initial configuration over {C,D}.")
@click.option("--named-seed", type=click.Choice(sorted(NAMED_SEEDS)), default=None)
@click.option("--density", default=None, help="Random seed density, e.g. 1/4.")
@click.option("--rng-seed", type=int, default=0, show_default=True)
@click.option("--w", default=DEFAULT_W, show_default=True, help="Win condition p/q.")
@click.option("--trace", "trace_path", type=click.Path(dir_okay=False), default=None)
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None)
@_process_options
def run(
    graph_file: str | None,
    generator: str | None,
    params: tuple[str, ...],
    cycle: int | None,
    path_n: int | None,
    seed: str | None,
    named_seed: str | None,
    density: str | None,
    rng_seed: int,
    w: str,
    trace_path: str | None,
    report_path: str | None,
    semantics: str,
    budget: int,
    out: str | None,
    dot: str | None,
) -> None:
    """Evolve one seed until its orbit closes."""
    spec = _spec(
        "run",
        graph_file=graph_file,
        generator=generator,
        params=_parse_params(params),
        cycle=cycle,
        path=path_n,
        seed=seed,
        named_seed=named_seed,
        density=density,
        rng_seed=rng_seed,
        w=w,
        semantics=semantics,
        budget=budget,
    )
    with _usage_errors():
        g = build_graph(spec)
        c0 = build_seed(spec, g)
        report = evolve(g, c0, spec.w, spec.semantics, min(2**g.vertex_count, spec.budget))
        _emit(_to_json(report_to_dict(g, report)), report_path or out)
        if trace_path is not None:
            records = trace(g, c0, spec.w, spec.semantics, len(report.configs))
            _emit("".join(json.dumps(record) + "\n" for record in records), trace_path)
        if dot is not None:
            _emit(to_dot(g, c0), dot)

    if not report.conclusive:
        raise InconclusiveRunError(f"No repeat within {report.steps_taken} steps")


@cli.command()
@_graph_options
@click.option(
    "--compare", nargs=2, default=None, metavar="W1 W2", help="Run W1 and W2 in lockstep."
)
@click.option("--seed", default=None, help="Seed for --compare.")
@_process_options
def partition(
    graph_file: str | None,
    generator: str | None,
    params: tuple[str, ...],
    cycle: int | None,
    path_n: int | None,
    compare: tuple[str, str] | None,
    seed: str | None,
    semantics: str,
    budget: int,
    out: str | None,
    dot: str | None,
) -> None:
    """Print the win partition; optionally compare two win conditions."""
    spec = _spec(
        "partition",
        graph_file=graph_file,
        generator=generator,
        params=_parse_params(params),
        cycle=cycle,
        path=path_n,
        seed=seed,
        semantics=semantics,
        budget=budget,
    )
    if compare and spec.seed_source is None:
        raise click.UsageError("--compare needs --seed")

    diverged_in_part = False
    with _usage_errors():
        g = build_graph(spec)
        result = win_partition(g)
        document: dict[str, Any] = partition_to_dict(result)
        if compare:
            w1, w2 = (parse_win_condition(text) for text in compare)
            c0 = build_seed(spec, g)
            same_part = part_of(result, w1) == part_of(result, w2)
            equivalence = verify_partition_equivalence(
                g, c0, w1, w2, spec.semantics, min(2**g.vertex_count, spec.budget)
            )
            document["equivalence"] = {
                "w1": format_fraction(w1),
                "w2": format_fraction(w2),
                "same_part": same_part,
                "equal": equivalence.equal,
                "divergence_step": equivalence.divergence_step,
                "steps_compared": equivalence.steps_compared,
            }
            diverged_in_part = same_part and not equivalence.equal
        _emit(_to_json(document), out)
        if dot is not None:
            _emit(to_dot(g), dot)

    if diverged_in_part:
        raise VerificationFailedError("Win conditions in one part produced different trajectories")


@cli.command()
@_graph_options
@click.option("--w", default=DEFAULT_W, show_default=True, help="Win condition p/q.")
@click.option("--all-w", is_flag=True, help="Sweep every win-partition representative.")
@click.option("--extra-w", multiple=True, help="Additional win condition.")
@click.option("--workers", type=int, default=DEFAULT_WORKERS, show_default=True)
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None)
@_process_options
def sweep(
    graph_file: str | None,
    generator: str | None,
    params: tuple[str, ...],
    cycle: int | None,
    path_n: int | None,
    w: str,
    all_w: bool,
    extra_w: tuple[str, ...],
    workers: int,
    csv_path: str | None,
    semantics: str,
    budget: int,
    out: str | None,
    dot: str | None,
) -> None:
    """Evolve every seed of a small graph."""
    spec = _spec(
        "sweep",
        graph_file=graph_file,
        generator=generator,
        params=_parse_params(params),
        cycle=cycle,
        path=path_n,
        w=w,
        semantics=semantics,
        budget=budget,
        workers=workers,
    )
    with _usage_errors():
        g = build_graph(spec)
        w_values = win_partition(g).representatives if all_w else [spec.w]
        for text in extra_w:
            extra = parse_win_condition(text)
            if extra not in w_values:
                w_values.append(extra)

        report = SweepReport(graph_id=graph_id(spec), semantics=spec.semantics)
        rows: list[list[str]] = []
        for value in w_values:
            stats, outcomes = sweep_w(
                g, value, spec.semantics, spec.budget, spec.workers, collect=csv_path is not None
            )
            report.entries.append(stats)
            rows.extend(sweep_csv_rows(value, outcomes))

        _emit(_to_json(sweep_to_dict(report)), out)
        if csv_path is not None:
            buffer = io.StringIO()
            writer = csv.writer(buffer, lineterminator="\n")
            writer.writerow(CSV_HEADER)
            writer.writerows(rows)
            _emit(buffer.getvalue(), csv_path)
        if dot is not None:
            _emit(to_dot(g), dot)

    inconclusive = sum(entry.inconclusive_count for entry in report.entries)
    if inconclusive:
        raise InconclusiveRunError(f"{inconclusive} seeds exhausted the step budget")


@cli.command("wave-check")
@click.option("--n", type=int, required=True, help="Ring length (even).")
@click.option("--ell", type=int, default=3, show_default=True, help="Pendant clique size.")
@click.option("--steps", type=click.IntRange(min=0), default=64, show_default=True)
@_semantics_option
@_output_options
def wave_check(
    n: int,
    ell: int,
    steps: int,
    semantics: str,
    out: str | None,
    dot: str | None,
) -> None:
    """Compare the single-interrupter wave on H_n with Rule 90."""
    spec = _spec(
        "wave-check",
        generator="hnl",
        params={"n": n, "ell": ell},
        named_seed="wave",
        steps=steps,
        semantics=semantics,
    )
    with _usage_errors():
        result = verify_rule90_equivalence(n, ell, steps, spec.semantics)
        _emit(_to_json(equivalence_to_dict(result)), out)
        if dot is not None:
            g = build_graph(spec)
            _emit(to_dot(g, build_seed(spec, g)), dot)

    if result.divergence is not None:
        raise VerificationFailedError(
            f"H_{n} left the Rule 90 correspondence at t={result.divergence.t}"
        )


@cli.command()
@click.option("--n", type=int, default=None, help="Ring length (single live cell seed).")
@click.option("--steps", type=click.IntRange(min=0), default=None, help="Orbit length to dump.")
@click.option("--seed", "seed_bits", default=None, help="Initial cells, e.g. 001000.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Write the orbit here.")
def rule90(n: int | None, steps: int | None, seed_bits: str | None, out: str | None) -> None:
    """Dump a Rule 90 orbit and report its transient and period."""
    if n is None and seed_bits is None:
        raise click.UsageError("Give --n or --seed")
    with _usage_errors():
        if seed_bits is not None:
            state = parse_state(seed_bits)
        else:
            state = single_seed(n)
        if n is not None and state.n != n:
            raise click.UsageError(f"--seed has {state.n} cells but --n is {n}")
        transient, period = rule90_period(state.n, state)
        orbit = rule90_evolve(state, steps if steps is not None else transient + period)
        lines = "".join(json.dumps(record) + "\n" for record in orbit_records(orbit))
        summary = json.dumps({"n": state.n, "transient": transient, "period": period}) + "\n"
        if out is None:
            click.echo(lines + summary, nl=False)
        else:
            _emit(lines, out)
            click.echo(summary, nl=False)


@cli.command()
@click.option("--voters", type=int, required=True)
@click.option("--quota", type=int, required=True)
def shapley(voters: int, quota: int) -> None:
    """Print the classic Shapley-Shubik index of a one-vote-each game."""
    with _usage_errors():
        powers = shapley_shubik_uniform(voters, quota)
    click.echo(
        _to_json(
            {"voters": voters, "quota": quota, "powers": [format_fraction(p) for p in powers]}
        ),
        nl=False,
    )
