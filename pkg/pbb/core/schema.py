"""Configuration and record models shared by the library and the console"""

from typing import Annotated

from pydantic import BaseModel, Field, field_validator


class PBBModel(BaseModel):
    """The base model to use for all pbb models"""

    model_config = {'populate_by_name': False}


class Budget(PBBModel, extra='forbid'):
    """Limits for the bounded searches"""

    pairs: Annotated[int, Field(ge=1, description='Maximum number of certificate generators a search may use')] = 64
    depth: Annotated[
        int | None,
        Field(
            description="Maximum weak transition length, at most the universe bound. 'None' uses the longest τ-path"
        ),
    ] = None
    denominator: Annotated[
        int, Field(ge=1, description='Largest denominator allowed in the distributions of candidate pairs')
    ] = 720
    nodes: Annotated[int, Field(ge=1, description='Maximum number of distributions the stabilizer explores')] = 64
    vertices: Annotated[
        int, Field(ge=1, description='Maximum number of vertex transitions checked per generator and action')
    ] = 256
    jobs: Annotated[int, Field(ge=1, description='Worker processes used to run property suites')] = 1

    @field_validator('depth')
    @classmethod
    def non_negative(cls, value: int | None) -> int | None:
        """Validator that rejects negative depths

        Args:
            value: Input to validate

        Raises:
            ValueError: If the depth is negative

        Returns:
            The depth
        """
        if value is not None and value < 0:
            raise ValueError('depth must be non-negative')
        return value


class CertificateFile(PBBModel, extra='forbid'):
    """On-disk certificate: pairs of distribution literals plus closure flags"""

    pairs: Annotated[
        list[tuple[str, str]], Field(description='Generator pairs as distribution, P or E literals')
    ] = []
    closures: Annotated[list[str], Field(description="Any of 'symmetric', 'diagonal', 'convex'")] = []

    @field_validator('closures')
    @classmethod
    def known_closures(cls, value: list[str]) -> list[str]:
        """Validator that rejects unknown closure flags

        Args:
            value: Input to validate

        Raises:
            ValueError: If a flag is not a known closure

        Returns:
            The flags, without duplicates
        """
        known = {'symmetric', 'diagonal', 'convex'}
        for flag in value:
            if flag not in known:
                raise ValueError(f"unknown closure '{flag}'")
        return list(dict.fromkeys(value))


class InstructionRecord(PBBModel):
    """What one state does within a step"""

    state: Annotated[str, Field(description='The state, in canonical form')]
    stay: Annotated[str, Field(description='Mass that stays')] = '0'
    fires: Annotated[list[tuple[str, str]], Field(description='Fired targets with their masses')] = []


class StepRecord(PBBModel):
    """One JSON-lines record of a witness schedule"""

    index: Annotated[int, Field(description='Position in the schedule')]
    action: Annotated[str, Field(description='The action of the step')]
    partial: Annotated[bool, Field(description='Whether mass may stay')]
    source: Annotated[str, Field(description='Distribution before the step')]
    target: Annotated[str, Field(description='Distribution after the step')]
    instructions: Annotated[list[InstructionRecord], Field(description='Per-state instructions')] = []


class WitnessRecord(PBBModel):
    """A witness with its schedule"""

    kind: Annotated[str, Field(description="'step', 'partial' or 'weak'")]
    source: str
    target: str
    steps: list[StepRecord] = []


class CounterexampleRecord(PBBModel):
    """The first failing obligation of a certificate check"""

    left: str
    right: str
    clause: Annotated[str, Field(description="'decomposition', 'transfer', 'symmetry', 'membership' or 'refutation'")]
    obligation: str
    reason: str
    discipline: Annotated[bool, Field(description='Whether the failure only holds under the checking discipline')]


class CertificateRecord(PBBModel):
    """A certificate in the on-disk shape"""

    pairs: list[tuple[str, str]] = []
    closures: list[str] = []


class VerdictRecord(PBBModel):
    """The outcome of a certificate check or search"""

    status: Annotated[str, Field(description="'accepted', 'rejected' or 'inconclusive'")]
    exit_code: int
    certificate: CertificateRecord | None = None
    counterexample: CounterexampleRecord | None = None
    discharged: Annotated[int, Field(description='Number of discharged obligations')] = 0
    replayed: Annotated[bool, Field(description='Whether every discharged obligation replays')] = False


class ClassVectorRecord(PBBModel):
    """Block masses of one distribution"""

    distribution: str
    masses: Annotated[list[str], Field(description='Mass per block, in block order')]


class StabilizationRecord(PBBModel):
    """Evidence bundle of the stabilizer"""

    source: str
    stable: str
    weight_before: str
    weight_after: str
    status: Annotated[str, Field(description="'stable', 'unstable' or 'inconclusive' for the result")]
    schedule: WitnessRecord
    verdict: VerdictRecord


class CancellationRecord(PBBModel):
    """Evidence bundle of the cancellation verifier"""

    status: str
    exit_code: int
    reason: str
    ratio: str
    blocks: list[list[str]] = []
    vectors: list[ClassVectorRecord] = []
    stabilizations: list[StabilizationRecord] = []
    certificate: CertificateRecord | None = None


class SuiteReport(PBBModel):
    """Outcome of a property suite run"""

    suite: str
    seed: int
    count: int
    passed: int = 0
    failed: int = 0
    discarded: Annotated[int, Field(description='Cases skipped because their premises did not hold')] = 0
    first_failure: Annotated[str | None, Field(description='The shrunk first counterexample')] = None

    @property
    def success(self) -> bool:
        """Whether no case failed"""
        return self.failed == 0
