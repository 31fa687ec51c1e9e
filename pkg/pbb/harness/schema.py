"""Generator configuration and per-case results"""

from dataclasses import dataclass
from enum import StrEnum
from typing import Annotated

from pydantic import Field, field_validator

from pbb.core.schema import PBBModel
from pbb.terms.ast import TAU_NAME, Action

SEED_LIMIT = 2**64


class GenConfig(PBBModel, extra='forbid'):
    """Bounds of the random term generator"""

    max_depth: Annotated[int, Field(ge=0, description='Maximal nesting of action prefixes')] = 2
    max_branch: Annotated[int, Field(ge=1, description='Maximal number of summands and probabilistic branches')] = 2
    alphabet: Annotated[list[str], Field(description="Action names; 'tau' is always added")] = ['a', 'b']
    denominator: Annotated[int, Field(ge=1, description='Largest denominator of generated ratios')] = 4
    seed: Annotated[int, Field(ge=0, lt=SEED_LIMIT, description='Seed of the case stream')] = 0

    @field_validator('alphabet')
    @classmethod
    def with_tau(cls, value: list[str]) -> list[str]:
        """Validator that checks every name and adds the internal action

        Args:
            value: Input to validate

        Raises:
            ValueError: If a name is not a valid action

        Returns:
            The names without duplicates, 'tau' last
        """
        names = [Action(name).name for name in value if name != TAU_NAME]
        return [*dict.fromkeys(names), TAU_NAME]

    @property
    def actions(self) -> tuple[Action, ...]:
        """The alphabet as actions"""
        return tuple(Action(name) for name in self.alphabet)


class Outcome(StrEnum):
    """How a single case ended"""

    PASSED = 'passed'
    FAILED = 'failed'
    DISCARDED = 'discarded'


@dataclass(frozen=True, slots=True)
class CaseResult:
    """The outcome of one generated case"""

    index: int
    seed: int
    outcome: Outcome
    detail: str = ''
