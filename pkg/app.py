"""
liepoisson command-line front end.

    build        algebra document (structure constants, form, layout)
    invariants   basic invariants H_1, ..., H_l
    generators   generator sets of a scenario (pc, centres, witness)
    verify       run every certificate of a scenario and write the report
    pencil       Jordan–Kronecker profile of (π_0(ξ), π_∞(ξ)) at a given point

Exit codes: 0 when nothing failed, 1 when a certificate failed, 2 on usage
or configuration errors. Documents go to --out, or to stdout without it;
logging goes to stderr.
"""
import logging
import sys

import click

from config import Config
from liepoisson.brackets import pencil_at
from liepoisson.documents import (
    algebra_document,
    dumps,
    generators_document,
    invariants_document,
    loads,
    point_from_document,
    profile_document,
    report_document,
    write_document,
)
from liepoisson.errors import LiePoissonError
from liepoisson.generators import center_generators, maximality_witness, pc_generators
from liepoisson.invariants import basic_invariants
from liepoisson.pencil import jk_profile
from liepoisson.rootdata import SUPPORTED, build_classical, splitting_for
from liepoisson.verify import run_scenario
from models import SCENARIOS

logger = logging.getLogger(__name__)

ROLES = ("pc", "centre-0", "centre-inf", "witness")
LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


# ---------------------------------------------------------------------------
# Shared options
# ---------------------------------------------------------------------------

def algebra_options(fn):
    fn = click.option("--rank", required=True, type=click.IntRange(min=1), help="Rank l.")(fn)
    fn = click.option("--series", required=True, type=click.Choice(sorted(SUPPORTED)), help="Cartan type.")(fn)
    return fn


def out_option(fn):
    return click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
                        help="Write the document here instead of stdout.")(fn)


def emit(doc: dict, out: str | None) -> None:
    if out:
        write_document(doc, out)
    else:
        click.echo(dumps(doc), nl=False)


def _algebra_for(series: str, rank: int, scenario: str | None):
    g = build_classical(series, rank)
    if scenario is None:
        return g, None
    return g, splitting_for(scenario, g)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

@click.group()
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Overrides LIEPOISSON_LOG_LEVEL.")
def cli(log_level: str | None):
    """Lie–Poisson pencils, their commutative subalgebras and certificates."""
    level = (log_level or Config.LOG_LEVEL).upper()
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    logging.getLogger().setLevel(level)


@cli.command()
@algebra_options
@click.option("--scenario", type=click.Choice(SCENARIOS), default=None,
              help="Emit the adapted basis of this scenario's splitting.")
@out_option
def build(series: str, rank: int, scenario: str | None, out: str | None):
    g, s = _algebra_for(series, rank, scenario)
    emit(algebra_document(s.algebra, s) if s else algebra_document(g), out)
    return 0


@cli.command()
@algebra_options
@click.option("--scenario", type=click.Choice(SCENARIOS), default=None)
@out_option
def invariants(series: str, rank: int, scenario: str | None, out: str | None):
    g, s = _algebra_for(series, rank, scenario)
    algebra = s.algebra if s else g
    emit(invariants_document(basic_invariants(algebra), algebra), out)
    return 0


@cli.command()
@algebra_options
@click.option("--scenario", required=True, type=click.Choice(SCENARIOS))
@click.option("--role", type=click.Choice(ROLES), default="pc", show_default=True)
@out_option
def generators(series: str, rank: int, scenario: str, role: str, out: str | None):
    g, s = _algebra_for(series, rank, scenario)
    inv = basic_invariants(s.algebra)
    if role == "pc":
        gs = pc_generators(scenario, g, s, inv)
    elif role == "witness":
        gs = maximality_witness(g, s, inv)
    else:
        gs = center_generators(s, role.split("-", 1)[1], inv)
    emit(generators_document(gs, s.algebra), out)
    return 0


@cli.command()
@algebra_options
@click.option("--scenario", required=True, type=click.Choice(SCENARIOS))
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=Config.DEFAULT_SEED, show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=Config.DEFAULT_SAMPLES, show_default=True)
@click.option("--bound", type=click.IntRange(min=1), default=Config.COORD_BOUND, show_default=True,
              help="Sampled coordinates lie in [-bound, bound].")
@click.option("--workers", type=click.IntRange(min=1), default=Config.MAX_WORKERS, show_default=True)
@click.option("--timings", is_flag=True, help="Include elapsed_ms in the report.")
@out_option
def verify(series: str, rank: int, scenario: str, seed: int, samples: int, bound: int,
           workers: int, timings: bool, out: str | None):
    report = run_scenario(
        scenario, series, rank, seed, samples,
        bound=bound, retry_budget=Config.RETRY_BUDGET, workers=workers, out=out,
    )
    for cert in report.checks:
        click.echo(f"{cert.status:<12} {cert.name}")
    click.echo(f"{report.status:<12} {scenario} {series}{rank} (seed {seed})")
    doc = report_document(report, timings=timings)
    if out:
        write_document(doc, out)
    return 1 if report.status == "fail" else 0


@cli.command()
@algebra_options
@click.option("--scenario", required=True, type=click.Choice(SCENARIOS))
@click.option("--point", "point_file", required=True, type=click.File("r", encoding="utf-8"),
              help='JSON document {"coords": [...]} with one decimal string per basis element.')
@click.option("--seed", type=click.IntRange(0, 2 ** 64 - 1), default=Config.DEFAULT_SEED, show_default=True)
@out_option
def pencil(series: str, rank: int, scenario: str, point_file, seed: int, out: str | None):
    _, s = _algebra_for(series, rank, scenario)
    point = point_from_document(loads(point_file.read()), s.algebra.dim)
    profile = jk_profile(pencil_at(s, point), seed=seed)
    emit(profile_document(profile), out)
    return 0


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------

def parse_and_dispatch(argv: list[str] | None = None) -> int:
    try:
        result = cli.main(args=argv, prog_name="liepoisson", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return 2
    except LiePoissonError as exc:
        logger.error("Rejected: %s", exc)
        click.echo(f"Error: {exc}", err=True)
        return 2
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(parse_and_dispatch())


if __name__ == "__main__":
    main()
