"""Command line interface.

.. code-block:: text

    $ charsum verify --input x3.txt --json report.json
    $ charsum sum --input x3.txt --i-max 3
    $ charsum hilbert -d 3 -n 2

Every command reads a problem file (``-`` for stdin), writes a JSON report
to ``--json`` (stdout by default) and exits with the code of the first
error: 0 pass, 2 hypothesis refused, 3 verification failed, 4 budget
exceeded, 5 invalid input. Options can also be given as environment
variables, for example ``CHARSUM_VERIFY_BUDGET``.
"""
import json
import logging
import typing as t

import click

from . import __version__
from ._internal import _set_log_level
from .cyclo import DEFAULT_PRECISION
from .cyclo import MIN_PRECISION
from .exceptions import CharsumError
from .exceptions import VerificationFailed
from .gf import build_field
from .pipeline import cmd_check
from .pipeline import cmd_hilbert
from .pipeline import cmd_lpoly
from .pipeline import cmd_polygon
from .pipeline import cmd_purity
from .pipeline import cmd_quad
from .pipeline import cmd_sum
from .pipeline import cmd_survey
from .pipeline import cmd_verify
from .pipeline import SCHEMA
from .polygon import DEFAULT_TOLERANCE
from .problem import _coefficient
from .problem import _parse_vector
from .problem import parse_problem
from .problem import ProblemSpec
from .sums import CharacterSpec
from .sums import DEFAULT_BUDGET

F = t.TypeVar("F", bound=t.Callable[..., t.Any])

_positive = click.FloatRange(min=0, min_open=True)


def _emit(out: t.IO[str], data: t.Dict[str, t.Any]) -> None:
    out.write(json.dumps(data, indent=2) + "\n")
    out.flush()


def _run(
    out: t.IO[str], timings: bool, func: t.Callable[[], t.Any]
) -> None:
    """Call ``func``, write its report and exit with the right code."""
    ctx = click.get_current_context()

    try:
        report = func()
    except CharsumError as e:
        _emit(out, {"schema": SCHEMA, "error": e.to_json()})
        click.echo(f"charsum: {e}", err=True)
        ctx.exit(e.code or 1)

    _emit(out, report.to_json(timings=timings))

    if getattr(report, "failures", 0):
        ctx.exit(VerificationFailed.code)


def output_options(f: F) -> F:
    f = click.option(
        "--json",
        "json_out",
        type=click.File("w", encoding="utf-8"),
        default="-",
        show_default=True,
        help="Write the JSON report here.",
    )(f)
    f = click.option(
        "--timings/--no-timings",
        default=True,
        help="Include the timings block, the only part of a report that"
        " varies between runs.",
    )(f)
    return f


def problem_options(f: F) -> F:
    """``--input`` and the resource overrides shared by the commands that
    read a problem file. Command line values override the file.
    """
    f = click.option(
        "--tol",
        type=_positive,
        default=None,
        help=f"Relative tolerance [{DEFAULT_TOLERANCE}].",
    )(f)
    f = click.option(
        "--precision",
        type=click.IntRange(min=MIN_PRECISION),
        default=None,
        help=f"Working precision in bits [{DEFAULT_PRECISION}].",
    )(f)
    f = click.option(
        "--budget",
        type=click.IntRange(min=1),
        default=None,
        help=f"Maximum number of points per sum [{DEFAULT_BUDGET}].",
    )(f)
    f = click.option(
        "--input",
        "-i",
        "input_file",
        type=click.File("r", encoding="utf-8"),
        default="-",
        show_default=True,
        help="Problem file.",
    )(f)
    return output_options(f)


def workers_option(f: F) -> F:
    return click.option(
        "--workers",
        type=click.IntRange(min=1),
        default=1,
        show_default=True,
        help="Processes used for enumeration. Results do not depend on it.",
    )(f)


def _load(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
) -> ProblemSpec:
    spec = parse_problem(input_file.read())
    return spec.with_overrides(budget=budget, precision=precision, tol=tol)


@click.group(context_settings={"auto_envvar_prefix": "CHARSUM"})
@click.option("--quiet", "-q", is_flag=True, help="Only log warnings and errors.")
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages.")
@click.version_option(__version__, prog_name="charsum")
def cli(quiet: bool, verbose: bool) -> None:
    """Exact exponential sums over finite fields and checks of their
    L-functions.
    """
    if verbose:
        _set_log_level(logging.DEBUG)
    elif quiet:
        _set_log_level(logging.WARNING)


@cli.command()
@problem_options
@workers_option
@click.option(
    "--extra-consistency",
    type=click.IntRange(min=0),
    default=1,
    show_default=True,
    help="Sums beyond the degree predicted from P(t) and checked.",
)
def verify(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    workers: int,
    extra_consistency: int,
) -> None:
    """Run the full pipeline on a problem."""
    _run(
        json_out,
        timings,
        lambda: cmd_verify(
            _load(input_file, budget, precision, tol), workers, extra_consistency
        ),
    )


@cli.command()
@problem_options
@click.option(
    "--extension",
    "-k",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Search common zeros over F_{q^k}.",
)
@click.option("--limit", type=click.IntRange(min=1), default=10, show_default=True)
def check(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    extension: int,
    limit: int,
) -> None:
    """Test whether the top-degree partials form a regular sequence."""
    _run(
        json_out,
        timings,
        lambda: cmd_check(_load(input_file, budget, precision, tol), extension, limit),
    )


@cli.command("sum")
@problem_options
@workers_option
@click.option("--i-max", type=click.IntRange(min=1), default=1, show_default=True)
def sum_command(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    workers: int,
    i_max: int,
) -> None:
    """Enumerate S_1 .. S_{i-max}."""
    _run(
        json_out,
        timings,
        lambda: cmd_sum(_load(input_file, budget, precision, tol), i_max, workers),
    )


@cli.command()
@problem_options
@workers_option
@click.option(
    "--extra-consistency",
    type=click.IntRange(min=0),
    default=0,
    show_default=True,
)
def lpoly(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    workers: int,
    extra_consistency: int,
) -> None:
    """Reconstruct the L-polynomial from the sums."""
    _run(
        json_out,
        timings,
        lambda: cmd_lpoly(
            _load(input_file, budget, precision, tol), workers, extra_consistency
        ),
    )


@cli.command()
@problem_options
@workers_option
def polygon(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    workers: int,
) -> None:
    """Newton polygon of the L-polynomial against the lower bound."""
    _run(
        json_out,
        timings,
        lambda: cmd_polygon(_load(input_file, budget, precision, tol), workers),
    )


@cli.command()
@problem_options
@workers_option
def purity(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    workers: int,
) -> None:
    """Absolute values of the reciprocal roots in every embedding."""
    _run(
        json_out,
        timings,
        lambda: cmd_purity(_load(input_file, budget, precision, tol), workers),
    )


@cli.command()
@problem_options
@click.option(
    "--compare/--no-compare",
    default=True,
    help="Also enumerate S_1 and compare.",
)
def quad(
    input_file: t.IO[str],
    budget: t.Optional[int],
    precision: t.Optional[int],
    tol: t.Optional[float],
    json_out: t.IO[str],
    timings: bool,
    compare: bool,
) -> None:
    """Closed-form sum of a characteristic 2 quadratic."""
    _run(
        json_out,
        timings,
        lambda: cmd_quad(_load(input_file, budget, precision, tol), compare),
    )


@cli.command()
@click.option("--degree", "-d", type=click.IntRange(min=2), required=True)
@click.option("-n", "n", type=click.IntRange(min=1), required=True)
@output_options
def hilbert(degree: int, n: int, json_out: t.IO[str], timings: bool) -> None:
    """Coefficients of (1 + t + ... + t^(d-2))^n."""
    _run(json_out, timings, lambda: cmd_hilbert(degree, n))


def _parse_b(field: t.Any, value: t.Optional[str]) -> t.Optional[CharacterSpec]:
    if value is None:
        return None

    return CharacterSpec(_coefficient(field, _parse_vector(value, None), None))


@cli.command()
@click.option("-p", "p", type=int, required=True, help="Characteristic.")
@click.option("-a", "a", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("-n", "n", type=click.IntRange(min=1), required=True)
@click.option("--degree", "-d", type=click.IntRange(min=1), required=True)
@click.option("--count", type=click.IntRange(min=1), default=20, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("-b", "b", default=None, help="Character twist, as in problem files.")
@click.option("--budget", type=click.IntRange(min=1), default=DEFAULT_BUDGET)
@click.option(
    "--precision", type=click.IntRange(min=MIN_PRECISION), default=DEFAULT_PRECISION
)
@click.option("--tol", type=_positive, default=DEFAULT_TOLERANCE)
@click.option("--extra-consistency", type=click.IntRange(min=0), default=1)
@workers_option
@output_options
def survey(
    p: int,
    a: int,
    n: int,
    degree: int,
    count: int,
    seed: int,
    b: t.Optional[str],
    budget: int,
    precision: int,
    tol: float,
    extra_consistency: int,
    workers: int,
    json_out: t.IO[str],
    timings: bool,
) -> None:
    """Verify random dense polynomials whose top form passes the
    regular-sequence test.
    """

    def run() -> t.Any:
        field = build_field(p, a)
        return cmd_survey(
            field,
            n,
            degree,
            count,
            seed,
            _parse_b(field, b),
            budget,
            precision,
            tol,
            workers,
            extra_consistency,
        )

    _run(json_out, timings, run)


def main() -> None:
    cli(prog_name="charsum")
