"""The pbb command line, built with typer

Exit statuses: 0 accepted or true, 1 rejected or false, 2 inconclusive, 3 usage, parse or configuration errors.
"""

import logging
import os
import sys
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Annotated

import click
import typer
from pydantic import BaseModel

from pbb.console.schema import (
    ConsoleConfiguration,
    blocks_record,
    cancellation_record,
    certificate_record,
    class_vector_record,
    format_distribution_vector,
    format_verdict,
    format_witness,
    stabilization_record,
    step_records,
    verdict_record,
    witness_record,
)
from pbb.core.exception import ConfigException
from pbb.core.resolution import read_certificate, read_seeds, resolve_budget
from pbb.core.utility import write_model_json, write_records
from pbb.distr.distribution import Distribution
from pbb.equiv.checker import check_certificate
from pbb.equiv.partition import ClassVector, StatePartition, strong_equiv, strong_partition
from pbb.equiv.search import search_branching
from pbb.harness.runner import run_suite
from pbb.harness.schema import GenConfig
from pbb.semantics.schema import Refusal, Witness
from pbb.semantics.step import distribution_step, partial_tau_step
from pbb.semantics.universe import Universe, build_universe, to_digraph
from pbb.semantics.weak import weak_reach, weak_step
from pbb.stability.cancellation import cancel_check
from pbb.stability.classes import branching_partition
from pbb.stability.stabilizer import stabilize
from pbb.stability.weight import weight
from pbb.terms.ast import Action, Sort, format_term
from pbb.terms.parser import parse, parse_literal
from pbb.utility.exception import CertificateError, ParseError, SemanticsError, StabilityError, SuiteError
from pbb.utility.utility import format_rational

USAGE_ERROR = 3
LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)
HANDLER_NAME = 'pbb-console'

app = typer.Typer(no_args_is_help=True)

JsonOption = Annotated[bool, typer.Option('--json', help='Print evidence as JSON')]
DotOption = Annotated[Path | None, typer.Option('--dot', help='Write the universe as DOT to this file')]
LiteralOption = Annotated[str, typer.Option(help='Distribution, P or E literal')]


def _configure_logging(verbosity: int, debug: bool) -> None:
    """Routes the pbb loggers to the current stderr, replacing the handler of an earlier invocation"""
    logger = logging.getLogger('pbb')
    logger.setLevel(logging.DEBUG if debug else LEVELS[verbosity])
    for handler in [item for item in logger.handlers if item.get_name() == HANDLER_NAME]:
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(HANDLER_NAME)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.addHandler(handler)


def _configuration(context: typer.Context) -> ConsoleConfiguration:
    if (configuration := context.find_object(ConsoleConfiguration)) is None:
        raise ValueError('The configuration object is missing')
    return configuration


def _emit(json: bool, model: BaseModel, lines: Sequence[str]) -> None:
    if json:
        typer.echo(model.model_dump_json(indent=2, exclude_none=True))
    else:
        for line in lines:
            typer.echo(line)


def _universe(*seeds: Distribution, dot: Path | None = None) -> Universe:
    universe = build_universe(seeds)
    if dot is not None:
        dot.write_text(to_digraph(universe).source, encoding='utf-8')
    return universe


class ParseResult(BaseModel):
    """Output of the parse command"""

    sort: str
    canonical: str
    distribution: str | None = None


class TraceResult(BaseModel):
    """Output of the step and trace commands"""

    found: bool
    query: str
    reason: str | None = None
    witnesses: list[dict[str, object]] = []


class StrongResult(BaseModel):
    """Output of the check-strong command"""

    equivalent: bool
    blocks: list[list[str]]


class ClassesResult(BaseModel):
    """Output of the classes command"""

    blocks: list[list[str]]
    vectors: list[dict[str, object]]


@app.callback()
def main(
    context: typer.Context,
    verbose: Annotated[
        int, typer.Option('-v', '--verbose', count=True, min=0, max=2, help='Print additional output')
    ] = 0,
    debug: Annotated[bool, typer.Option(help='Log solver systems')] = False,
) -> None:
    """Exact semantics and bisimilarity certificates for probabilistic processes

    Args:
        context: The typer context
        verbose: The verbosity level
        debug: Debug mode
    """
    _configure_logging(verbose, debug)
    budget = resolve_budget(os.environ)
    context.obj = ConsoleConfiguration(verbosity=verbose, debug=debug, budget=budget)


@app.command(name='parse')
def parse_command(
    text: Annotated[str, typer.Argument(help='The literal')],
    sort: Annotated[Sort, typer.Option(help='What the literal denotes')] = Sort.NONDET,
    json: JsonOption = False,
) -> None:
    """Echoes the canonical form of a term or distribution"""
    result = parse(text, sort)
    if isinstance(result, Distribution):
        record = ParseResult(sort=str(sort), canonical=str(result))
    else:
        record = ParseResult(sort=str(sort), canonical=format_term(result), distribution=str(parse_literal(text)))
    lines = [record.canonical] if record.distribution is None else [record.canonical, f'= {record.distribution}']
    _emit(json, record, lines)


@app.command()
def step(
    context: typer.Context,
    source: Annotated[str, typer.Argument(help='Distribution, P or E literal')],
    action: Annotated[str, typer.Option('--action', '-a', help='The action')],
    target: Annotated[str | None, typer.Option(help='Decide membership of this successor')] = None,
    partial: Annotated[bool, typer.Option(help='Use the partial τ-step relation')] = False,
    strict: Annotated[bool, typer.Option(help='Fail when a support state blocks')] = False,
    json: JsonOption = False,
    dot: DotOption = None,
) -> None:
    """Lists vertex successors of a distribution, or decides a single transition"""
    budget = _configuration(context).budget
    label, origin = Action(action), parse_literal(source)
    if target is None:
        universe = _universe(origin, dot=dot)
        steps = distribution_step(universe, origin, label, strict)
        vertices = list(steps.vertices(budget.vertices))
        query = f'{origin} --{label}--> ?'
        record = TraceResult(
            found=bool(vertices),
            query=query,
            reason=None if vertices else f'blocked by {", ".join(map(format_term, steps.blocking))}',
            witnesses=[{'target': str(vertex)} for vertex in vertices],
        )
        _emit(json, record, [query, *(f'  {vertex}' for vertex in vertices)] if vertices else [record.reason or ''])
        raise typer.Exit(0 if vertices else 1)

    goal = parse_literal(target)
    universe = _universe(origin, goal, dot=dot)
    if partial:
        if not label.silent:
            raise typer.BadParameter('partial steps need the tau action', param_hint='--partial')
        outcome = partial_tau_step(universe, origin, goal)
    else:
        outcome = distribution_step(universe, origin, label, strict).witness(goal)
    _report_witness(json, outcome)
    raise typer.Exit(0 if isinstance(outcome, Witness) else 1)


def _report_witness(json: bool, outcome: Witness | Refusal) -> None:
    if isinstance(outcome, Refusal):
        record = TraceResult(found=False, query=outcome.query, reason=outcome.reason)
        _emit(json, record, [str(outcome)])
        return
    query = f'{outcome.source} => {outcome.target}'
    record = TraceResult(found=True, query=query, witnesses=[witness_record(outcome).model_dump()])
    _emit(json, record, format_witness(outcome))


@app.command()
def trace(
    source: Annotated[str, typer.Argument(help='Where the weak transition starts')],
    target: Annotated[str, typer.Argument(help='Where it ends')],
    action: Annotated[str | None, typer.Option('--action', '-a', help='End with one α-step')] = None,
    depth: Annotated[int | None, typer.Option(min=0, help='Maximal number of τ-steps')] = None,
    records: Annotated[Path | None, typer.Option(help='Write the schedule as JSON lines')] = None,
    json: JsonOption = False,
) -> None:
    """Searches a weak transition, optionally followed by one α-step

    A schedule that is not found is inconclusive: only the searched family was exhausted.
    """
    origin, goal = parse_literal(source), parse_literal(target)
    universe = _universe(origin, goal)
    witnesses: list[Witness]
    if action is None:
        reached = weak_reach(universe, origin, goal, depth)
        if isinstance(reached, Refusal):
            _report_witness(json, reached)
            raise typer.Exit(2)
        witnesses = [reached]
    else:
        match = weak_step(universe, origin, Action(action), goal, depth)
        if isinstance(match, Refusal):
            _report_witness(json, match)
            raise typer.Exit(2)
        witnesses = [match.reach, match.step]

    if records is not None:
        write_records(records, [record for witness in witnesses for record in step_records(witness)])
    query = f'{origin} => {goal}'
    record = TraceResult(found=True, query=query, witnesses=[witness_record(item).model_dump() for item in witnesses])
    _emit(json, record, [line for witness in witnesses for line in format_witness(witness)])


@app.command('check-strong')
def check_strong(
    left: LiteralOption,
    right: LiteralOption,
    json: JsonOption = False,
    dot: DotOption = None,
) -> None:
    """Decides strong probabilistic bisimilarity by partition refinement"""
    first, second = parse_literal(left), parse_literal(right)
    universe = _universe(first, second, dot=dot)
    partition = strong_partition(universe)
    equivalent = strong_equiv(universe, first, second, partition)
    record = StrongResult(equivalent=equivalent, blocks=blocks_record(partition))
    _emit(json, record, ['equivalent' if equivalent else 'not equivalent'])
    raise typer.Exit(0 if equivalent else 1)


@app.command('check-branching')
def check_branching(
    context: typer.Context,
    left: LiteralOption,
    right: LiteralOption,
    certificate: Annotated[Path | None, typer.Option(help='Certificate file to check')] = None,
    search: Annotated[bool, typer.Option('--search', help='Search for a certificate')] = False,
    write_certificate: Annotated[Path | None, typer.Option(help='Write the accepted certificate here')] = None,
    strict: Annotated[bool, typer.Option(help='Require plain decomposability')] = False,
    json: JsonOption = False,
    dot: DotOption = None,
) -> None:
    """Checks or searches a branching probabilistic bisimulation relating two distributions"""
    if (certificate is None) == (not search):
        raise click.UsageError('give exactly one of --certificate and --search')
    budget = _configuration(context).budget
    first, second = parse_literal(left), parse_literal(right)

    if certificate is not None:
        given = read_certificate(certificate)
        universe = _universe(first, second, *given.distributions(), dot=dot)
        if not given.contains(first, second):
            raise CertificateError(f'the certificate does not relate {first} and {second}')
        verdict = check_certificate(universe, given, budget, strict)
    else:
        universe = _universe(first, second, dot=dot)
        verdict = search_branching(universe, first, second, budget)

    if write_certificate is not None and verdict.accepted and verdict.certificate is not None:
        write_model_json(write_certificate, certificate_record(verdict.certificate))
    _emit(json, verdict_record(verdict), format_verdict(verdict))
    raise typer.Exit(verdict.exit_code)


@app.command('stabilize')
def stabilize_command(
    context: typer.Context,
    source: Annotated[str, typer.Argument(help='Distribution, P or E literal')],
    json: JsonOption = False,
    dot: DotOption = None,
) -> None:
    """Moves a distribution to an equivalent stable one by weight-decreasing τ-steps"""
    budget = _configuration(context).budget
    origin = parse_literal(source)
    universe = _universe(origin, dot=dot)
    result = stabilize(universe, origin, budget)
    lines = [
        f'{result.status}: {result.target}',
        f'weight {format_rational(weight(result.source))} -> {format_rational(weight(result.target))}',
        *format_witness(result.schedule),
    ]
    _emit(json, stabilization_record(result), lines)
    raise typer.Exit(0 if result.stable else 2)


def _touched(partition: StatePartition, seeds: Sequence[Distribution]) -> StatePartition:
    used = {state for seed in seeds for state in seed}
    return StatePartition.of(block for block in partition.blocks if used.intersection(block))


@app.command()
def classes(
    context: typer.Context,
    seeds: Annotated[Path, typer.Option(help="File of 'name = literal' lines")],
    strong: Annotated[bool, typer.Option(help='Use strong instead of branching classes')] = False,
    json: JsonOption = False,
    dot: DotOption = None,
) -> None:
    """Prints the classes the seeds touch and each seed's class vector"""
    budget = _configuration(context).budget
    named = read_seeds(seeds.read_text(encoding='utf-8'))
    if not named:
        raise ConfigException('empty seeds file', [])
    universe = _universe(*named.values(), dot=dot)
    if strong:
        partition = strong_partition(universe)
    else:
        pairs = max(budget.pairs, len(universe) ** 2)
        partition = branching_partition(universe, budget.model_copy(update={'pairs': pairs}))
    touched = _touched(partition, list(named.values()))
    vectors: dict[str, ClassVector] = {name: touched.vector(seed) for name, seed in named.items()}

    record = ClassesResult(
        blocks=blocks_record(touched),
        vectors=[class_vector_record(name, vector).model_dump() for name, vector in vectors.items()],
    )
    lines = [f'{len(touched)} classes:']
    lines.extend(f'  C{index}: {", ".join(map(format_term, block))}' for index, block in enumerate(touched.blocks))
    lines.extend(f'{name}: {format_distribution_vector(named[name], vector)}' for name, vector in vectors.items())
    _emit(json, record, lines)


@app.command()
def cancel(
    context: typer.Context,
    left: LiteralOption,
    left_prime: LiteralOption,
    remainder: LiteralOption,
    remainder_prime: LiteralOption,
    ratio: Annotated[Fraction, typer.Option(parser=Fraction, help='r in (0, 1], e.g. 1/3')],
    json: JsonOption = False,
    dot: DotOption = None,
) -> None:
    """Derives μ ≈ μ' from μ ⊕r ν ≈ μ' ⊕r ν' and ν ≈ ν'"""
    budget = _configuration(context).budget
    parts = (parse_literal(left), parse_literal(left_prime))
    rests = (parse_literal(remainder), parse_literal(remainder_prime))
    universe = _universe(*parts, *rests, dot=dot)
    result = cancel_check(universe, parts, rests, ratio, budget)

    lines = [str(result.status)]
    if result.reason:
        lines.append(f'reason: {result.reason}')
    for name, vector in result.vectors.items():
        lines.append(f"{name}: ({', '.join(map(format_rational, vector.entries))})")
    if result.verdict is not None:
        lines.extend(format_verdict(result.verdict)[1:])
    _emit(json, cancellation_record(result), lines)
    raise typer.Exit(result.exit_code)


@app.command()
def fuzz(
    context: typer.Context,
    suite: Annotated[str, typer.Option(help='Suite name')],
    count: Annotated[int, typer.Option(min=0, help='Number of cases')] = 100,
    seed: Annotated[int, typer.Option(min=0, help='Seed of the run')] = 0,
    max_depth: Annotated[int, typer.Option(min=0, help='Maximal prefix nesting')] = 2,
    max_branch: Annotated[int, typer.Option(min=1, help='Maximal summands and branches')] = 2,
    denominator: Annotated[int, typer.Option(min=1, help='Largest generated denominator')] = 4,
    jobs: Annotated[int | None, typer.Option(min=1, help='Worker processes')] = None,
    json: JsonOption = False,
) -> None:
    """Runs a seeded property suite"""
    budget = _configuration(context).budget
    config = GenConfig(seed=seed, max_depth=max_depth, max_branch=max_branch, denominator=denominator)
    report = run_suite(suite, config, count, budget, jobs)
    lines = [
        f'{"suite":<10} {report.suite}',
        f'{"passed":<10} {report.passed}',
        f'{"failed":<10} {report.failed}',
        f'{"discarded":<10} {report.discarded}',
    ]
    if report.first_failure:
        lines.append(f'first failure: {report.first_failure}')
    _emit(json, report, lines)
    raise typer.Exit(0 if report.success else 1)


def run_main(argv: Sequence[str]) -> int:
    """Runs the CLI and maps every error to an exit status

    Args:
        argv: Arguments without the program name

    Returns:
        0 accepted, 1 rejected, 2 inconclusive, 3 usage, parse or configuration error
    """
    command = typer.main.get_command(app)
    try:
        result = command.main(args=list(argv), prog_name='pbb', standalone_mode=False)
    except click.ClickException as error:
        error.show()
        return USAGE_ERROR
    except click.exceptions.Abort:
        return USAGE_ERROR
    except (ParseError, ConfigException, CertificateError, SemanticsError, StabilityError, SuiteError) as error:
        typer.echo(f'error: {error}', err=True)
        return USAGE_ERROR
    except ValueError as error:
        typer.echo(f'error: {error}', err=True)
        return USAGE_ERROR
    return result if isinstance(result, int) else 0


def run() -> None:
    """The console script"""
    sys.exit(run_main(sys.argv[1:]))
