"""
Command line front door.

Payloads go to stdout, diagnostics to stderr. Exit codes: 0 success,
1 verification failure, 2 argument error, 3 domain error.
"""
import functools
import json
import sys
from typing import List

import click

from fockcrystal.core.config import settings
from fockcrystal.core.exceptions import AppBaseException, CrystalInvariantException, ValidationException
from fockcrystal.core.logging import get_logger, level_for_verbosity, setup_logging
from fockcrystal.core.validators import parse_modulus, parse_range
from fockcrystal.domain.models.order import NodeOrder, OrderKind
from fockcrystal.domain.models.partition import Bipartition, Charge
from fockcrystal.domain.models.plan import MapResult
from fockcrystal.domain.models.verification import VerificationGrid
from fockcrystal.services.bijections import STRATEGIES, plan, psi, psi_recursive
from fockcrystal.services.canonical_basis import pair_orbit
from fockcrystal.services.crystal import build_crystal, enumerate_uglov, is_flotw
from fockcrystal.services.combinatorics import bipartitions_of
from fockcrystal.services.export import dump_json, enumeration_document, graph_document, to_dot
from fockcrystal.services.hecke_params import basic_set_charge
from fockcrystal.services.symbols import theta, to_symbol
from fockcrystal.services.verification import SUITES, run_verification

logger = get_logger("cli")

EXIT_VERIFY_FAILED = 1
FORMATS = click.Choice(["text", "json"])


class _ParsedType(click.ParamType):
    """Click parameter backed by one of the text parsers."""

    def __init__(self, name: str, parser):
        self.name = name
        self.parser = parser

    def convert(self, value, param, ctx):
        if not isinstance(value, str):
            return value
        try:
            return self.parser(value)
        except ValidationException as exc:
            self.fail(exc.message, param, ctx)


MODULUS = _ParsedType("modulus", parse_modulus)
CHARGE = _ParsedType("charge", Charge.parse)
ORDER = _ParsedType("order", NodeOrder.parse)
BIPARTITION = _ParsedType("bipartition", Bipartition.parse)
RANGE = _ParsedType("range", parse_range)


def domain_errors(command):
    """Report library errors as a one-line diagnostic with the matching exit code."""
    @functools.wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except AppBaseException as exc:
            logger.debug("Command failed", extra={"details": exc.details})
            click.echo(f"error: {exc.message}", err=True)
            sys.exit(exc.exit_code)
    return wrapper


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG diagnostics on stderr.")
def cli(verbose: int):
    """Crystals of level-2 Fock spaces."""
    if verbose:
        setup_logging(level_for_verbosity(verbose))


@cli.command("enumerate")
@click.option("--e", "e", type=MODULUS, required=True, help="Modulus e >= 2, or 'inf'.")
@click.option("--charge", "--order", "order", type=ORDER, required=True, help="s0,s1 (Uglov) or v0,v1+ / v0,v1- (Kleshchev).")
@click.option("--n", "n", type=click.IntRange(min=0), required=True)
@click.option("--flotw", is_flag=True, help="Cross-check against the FLOTW test.")
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.option("--output", type=click.File("w"), default="-")
@domain_errors
def cmd_enumerate(e, order, n, flotw, fmt, output):
    """List the rank-n vertices of a crystal, count on stderr."""
    level = enumerate_uglov(e, order, n)
    agrees = None
    if flotw:
        charge = order.charge
        if order.kind == OrderKind.UGLOV and e >= 2 and 0 <= charge.s0 <= charge.s1 < e:
            agrees = level == {b for b in bipartitions_of(n) if is_flotw(b, e, charge)}
        else:
            click.echo("warning: FLOTW test needs an Uglov charge with 0 <= s0 <= s1 < e, skipped", err=True)
    document = enumeration_document(e, order, n, level, flotw_agrees=agrees)
    if fmt == "json":
        output.write(dump_json(document))
    else:
        for bipartition in document.bipartitions:
            output.write(f"{bipartition}\n")
    click.echo(f"count: {document.count}", err=True)
    if agrees is False:
        click.echo("FLOTW test disagrees with the recursive enumeration", err=True)
        sys.exit(EXIT_VERIFY_FAILED)


@cli.command("map")
@click.option("--e", "e", type=MODULUS, required=True)
@click.option("--from", "source", type=CHARGE, required=True)
@click.option("--to", "target", type=ORDER, required=True, help="s0,s1 or v0,v1+ / v0,v1-.")
@click.option("--oracle", is_flag=True, help="Also run the recursive crystal map and fail on disagreement.")
@click.option("--strategy", type=click.Choice(STRATEGIES), default="ladder")
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.argument("bipartitions", nargs=-1, type=BIPARTITION)
@domain_errors
def cmd_map(e, source, target, oracle, strategy, fmt, bipartitions):
    """
    Image of each bipartition under Ψ. Without arguments, reads one
    bipartition per line from stdin.
    """
    if not bipartitions:
        bipartitions = [Bipartition.parse(line) for line in sys.stdin if line.strip()]
    results: List[MapResult] = []
    for bipartition in bipartitions:
        image = psi(bipartition, e, source, target, strategy=strategy)
        checked = None
        if oracle:
            checked = psi_recursive(bipartition, e, NodeOrder(charge=source), target)
            if checked != image:
                raise CrystalInvariantException(
                    f"composed map gives {image} but the crystal gives {checked} for {bipartition}"
                )
        steps = plan(e, source, target, n=bipartition.rank, strategy=strategy).steps
        results.append(MapResult(
            bipartition=bipartition, image=image, e=e, source=str(source),
            target=str(target), steps=[str(step) for step in steps], oracle=checked,
        ))
    if fmt == "json":
        click.echo(json.dumps([r.model_dump(mode="json") for r in results], indent=2, sort_keys=True))
    else:
        for result in results:
            click.echo(str(result.image))


@cli.command("plan")
@click.option("--e", "e", type=MODULUS, required=True)
@click.option("--from", "source", type=CHARGE, required=True)
@click.option("--to", "target", type=ORDER, required=True)
@click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Rank, needed for Kleshchev targets.")
@click.option("--strategy", type=click.Choice(STRATEGIES), default="ladder")
@domain_errors
def cmd_plan(e, source, target, n, strategy):
    """Print the JSON step list of the map between two charges."""
    psi_plan = plan(e, source, target, n=n, strategy=strategy)
    click.echo(json.dumps(psi_plan.steps_json()))


@cli.command("symbol")
@click.option("--charge", type=CHARGE, required=True)
@click.option("--m", "m", type=int, default=None)
@click.option("--pairs", is_flag=True, help="Also print the θ-pairs.")
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.argument("bipartition", type=BIPARTITION)
@domain_errors
def cmd_symbol(charge, m, pairs, fmt, bipartition):
    """Symbol of a bipartition, rows ascending, top row first."""
    symbol = to_symbol(bipartition, charge, m)
    if fmt == "json":
        click.echo(dump_json(symbol), nl=False)
    else:
        click.echo(symbol.render())
    if pairs:
        listing = " ".join(f"({x},{y})" for x, y in theta(symbol).pairs) or "none"
        click.echo(f"pairs: {listing}", err=fmt == "json")


@cli.command("canonical")
@click.option("--charge", type=CHARGE, required=True)
@click.option("--format", "fmt", type=FORMATS, default="text")
@click.argument("bipartition", type=BIPARTITION)
@domain_errors
def cmd_canonical(charge, fmt, bipartition):
    """Canonical basis element b(λ) of the level-2 sl_infinity module."""
    element = pair_orbit(bipartition, charge)
    if fmt == "json":
        click.echo(dump_json(element), nl=False)
    else:
        click.echo(element.render())


@cli.command("basic-set")
@click.option("--a", "a", type=click.IntRange(min=1), required=True)
@click.option("--b", "b", type=click.IntRange(min=1), required=True)
@click.option("--l", "l", type=click.IntRange(min=2), required=True)
@click.option("--n", "n", type=click.IntRange(min=0), default=None, help="Also list the basic set in rank n.")
@click.option("--format", "fmt", type=FORMATS, default="text")
@domain_errors
def cmd_basic_set(a, b, l, n, fmt):
    """Charge of the canonical basic set of the Hecke algebra with parameters ζ_l^b, ζ_l^a."""
    params = basic_set_charge(a, b, l, n)
    if fmt == "json":
        click.echo(dump_json(params), nl=False)
        return
    click.echo(f"e={params.e} d={params.d} p={params.p} charge={params.charge}")
    if len(params.solutions) > 1:
        click.echo("solutions: " + " ".join(f"(d={s.d},p={s.p})" for s in params.solutions))
    for bipartition in params.basic_set or []:
        click.echo(str(bipartition))
    if params.basic_set is not None:
        click.echo(f"count: {len(params.basic_set)}", err=True)


@cli.command("graph")
@click.option("--e", "e", type=MODULUS, required=True)
@click.option("--charge", "--order", "order", type=ORDER, required=True)
@click.option("--max-rank", type=click.IntRange(min=0), required=True)
@click.option("--dot", is_flag=True, help="Graphviz DOT instead of JSON.")
@click.option("--output", type=click.File("w"), default="-")
@domain_errors
def cmd_graph(e, order, max_rank, dot, output):
    """Export the crystal graph up to a rank."""
    crystal = build_crystal(e, order, max_rank)
    output.write(to_dot(crystal) if dot else dump_json(graph_document(crystal)))


@cli.command("verify")
@click.argument("suite", type=click.Choice(list(SUITES) + ["all"]))
@click.option("--e", "e_range", type=RANGE, default="2..4", show_default=True)
@click.option("--n", "n_range", type=RANGE, default="0..8", show_default=True)
@click.option("--charge-range", type=RANGE, default=None, help="Charge entries for the bijection and sl-infinity grids.")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Bipartition visits allowed.")
@click.option("--workers", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=None)
@click.option("--samples", type=click.IntRange(min=0), default=1000, show_default=True)
@domain_errors
def cmd_verify(suite, e_range, n_range, charge_range, budget, workers, seed, samples):
    """Run property suites over a grid; exit 1 if any check fails."""
    grid = VerificationGrid(
        e_values=e_range,
        n_values=n_range,
        charge_values=charge_range,
        budget=budget or settings.VERIFY_BUDGET,
        workers=workers or settings.VERIFY_WORKERS,
        seed=settings.RANDOM_SEED if seed is None else seed,
        samples=samples,
    )
    report = run_verification(suite, grid)
    for suite_report in report.suites:
        click.echo(suite_report.summary())
        for note in suite_report.notes:
            click.echo(f"  note: {note}")
        for failure in suite_report.failures:
            click.echo(f"  failed: {failure}")
    if not report.ok:
        sys.exit(EXIT_VERIFY_FAILED)


def main():
    cli(prog_name="fockcrystal")


if __name__ == "__main__":
    main()
