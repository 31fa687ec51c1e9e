"""Global fixtures for the test suite"""

from typing import cast

import pytest

from pbb.core.schema import Budget
from pbb.harness.schema import GenConfig
from pbb.test.data.variants import equivalence_variants, stabilization_variants
from pbb.test.schema import EquivalenceExample, StabilizationExample, Variant


@pytest.fixture(
    name='equivalence_example',
    scope='session',
    params=equivalence_variants.variants,
    ids=equivalence_variants.ids(),
)
def fixture_equivalence_example(request: pytest.FixtureRequest) -> Variant[EquivalenceExample]:
    """Fixture defining the worked equivalence examples

    Args:
        request: Parameterization list

    Returns:
        Equivalence variant
    """
    return cast(Variant[EquivalenceExample], request.param)


@pytest.fixture(
    name='stabilization_example',
    scope='session',
    params=stabilization_variants.variants,
    ids=stabilization_variants.ids(),
)
def fixture_stabilization_example(request: pytest.FixtureRequest) -> Variant[StabilizationExample]:
    """Fixture defining distributions with known stable forms

    Args:
        request: Parameterization list

    Returns:
        Stabilization variant
    """
    return cast(Variant[StabilizationExample], request.param)


@pytest.fixture(name='budget', scope='session')
def fixture_budget() -> Budget:
    """Default search limits"""
    return Budget()


@pytest.fixture(name='gen_config', scope='session', params=[0, 1, 2], ids=['seed-0', 'seed-1', 'seed-2'])
def fixture_gen_config(request: pytest.FixtureRequest) -> GenConfig:
    """Small generator bounds, one per run seed

    Args:
        request: Parameterization list

    Returns:
        The configuration
    """
    return GenConfig(max_depth=2, max_branch=2, denominator=3, seed=cast(int, request.param))
