"""Suite discovery and seeded, parallel case execution"""

import logging
import random

from joblib import Parallel, delayed

from pbb.core.schema import Budget, SuiteReport
from pbb.harness.generator import TermGenerator
from pbb.harness.schema import SEED_LIMIT, CaseResult, GenConfig, Outcome
from pbb.harness.suites import BUILTIN_SUITES, Suite
from pbb.utility.exception import (
    CertificateError,
    DistributionError,
    SemanticsError,
    StabilityError,
    SuiteError,
)
from pbb.utility.plugin import discover_plugins

logger = logging.getLogger('pbb.harness')

# fields lowered one unit at a time while a case keeps failing, with their floors
SHRINK_FIELDS = (('max_depth', 0), ('max_branch', 1), ('denominator', 1))


def find_suites() -> dict[str, type[Suite]]:
    """The built-in suites together with those registered under the 'pbb.suite' entry point group

    Returns:
        Suite types by name
    """
    return dict(discover_plugins(Suite, BUILTIN_SUITES))


def find_suite(name: str) -> type[Suite]:
    """Looks a suite up by name

    Raises:
        SuiteError: When no suite has that name
    """
    suites = find_suites()
    if (suite := suites.get(name.strip().lower())) is None:
        raise SuiteError(f"unknown suite '{name}', expected one of: {', '.join(sorted(suites))}")
    return suite


def run_case(suite_type: type[Suite], config: GenConfig, budget: Budget, index: int, seed: int) -> CaseResult:
    """Runs one case of a suite

    Errors raised by the library on a generated case count as failures.

    Args:
        suite_type: The suite
        config: Generator bounds
        budget: Search limits
        index: Position of the case in the run
        seed: Seed of the case's generator

    Returns:
        The case result
    """
    suite = suite_type(config, budget)
    try:
        outcome, detail = suite.check(TermGenerator(config, seed))
    except (CertificateError, DistributionError, SemanticsError, StabilityError, ValueError) as error:
        outcome, detail = Outcome.FAILED, f'{type(error).__name__}: {error}'
    return CaseResult(index, seed, outcome, detail)


def shrink(
    suite_type: type[Suite], config: GenConfig, budget: Budget, failure: CaseResult
) -> tuple[GenConfig, CaseResult]:
    """Greedily lowers the generator bounds while the case seed keeps failing

    Args:
        suite_type: The suite
        config: Bounds under which the case failed
        budget: Search limits
        failure: The failing case

    Returns:
        The smallest failing bounds found with their result
    """
    current, result = config, failure
    improved = True
    while improved:
        improved = False
        for field, floor in SHRINK_FIELDS:
            value = getattr(current, field)
            if value <= floor:
                continue
            candidate = current.model_copy(update={field: value - 1})
            trial = run_case(suite_type, candidate, budget, failure.index, failure.seed)
            if trial.outcome is Outcome.FAILED:
                current, result, improved = candidate, trial, True
    return current, result


def _describe(config: GenConfig, result: CaseResult) -> str:
    bounds = f'max_depth={config.max_depth} max_branch={config.max_branch} denominator={config.denominator}'
    return f'case {result.index} (seed {result.seed}, {bounds}): {result.detail}'


def run_suite(
    name: str, config: GenConfig, count: int, budget: Budget | None = None, jobs: int | None = None
) -> SuiteReport:
    """Runs `count` seeded cases of a suite

    Case seeds are drawn from the configured seed, so a run is reproducible whatever the number of workers.

    Args:
        name: Suite name
        config: Generator bounds and the run seed
        count: Number of cases
        budget: Search limits
        jobs: Worker processes, the budget's when None

    Raises:
        SuiteError: When the suite is unknown or the count is negative

    Returns:
        Counts per outcome and the shrunk first failure
    """
    suite_type = find_suite(name)
    if count < 0:
        raise SuiteError(f'case count must be non-negative, got {count}')
    budget = budget or Budget()
    jobs = jobs or budget.jobs

    seeds = random.Random(config.seed)
    case_seeds = [seeds.randrange(SEED_LIMIT) for _ in range(count)]
    logger.info("Running %d cases of '%s' on %d worker(s): %s", count, suite_type.name(), jobs, suite_type.summary())

    results: list[CaseResult] = []
    if case_seeds:
        results = Parallel(n_jobs=jobs, backend='loky')(
            delayed(run_case)(suite_type, config, budget, index, seed) for index, seed in enumerate(case_seeds)
        )
    results.sort(key=lambda result: result.index)

    report = SuiteReport(
        suite=suite_type.name(),
        seed=config.seed,
        count=count,
        passed=sum(result.outcome is Outcome.PASSED for result in results),
        failed=sum(result.outcome is Outcome.FAILED for result in results),
        discarded=sum(result.outcome is Outcome.DISCARDED for result in results),
    )
    if (failure := next((result for result in results if result.outcome is Outcome.FAILED), None)) is not None:
        shrunk_config, shrunk = shrink(suite_type, config, budget, failure)
        report.first_failure = _describe(shrunk_config, shrunk)
        logger.warning("Suite '%s' failed %d of %d cases", report.suite, report.failed, count)
    return report
