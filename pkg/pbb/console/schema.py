"""Data definitions for the console application"""

from typing import Annotated

from pydantic import Field

from pbb.core.schema import (
    Budget,
    CancellationRecord,
    CertificateRecord,
    ClassVectorRecord,
    CounterexampleRecord,
    InstructionRecord,
    PBBModel,
    StabilizationRecord,
    StepRecord,
    VerdictRecord,
    WitnessRecord,
)
from pbb.distr.distribution import Distribution
from pbb.equiv.certificate import Certificate
from pbb.equiv.partition import ClassVector, StatePartition
from pbb.equiv.schema import Counterexample, Verdict
from pbb.semantics.schema import Step, Witness
from pbb.stability.schema import Cancellation, Stabilization
from pbb.stability.weight import weight
from pbb.terms.ast import format_term
from pbb.utility.utility import format_rational


class ConsoleConfiguration(PBBModel):
    """Configuration data for the console application"""

    verbosity: Annotated[int, Field(ge=0, le=2, description='Number of -v flags')] = 0
    debug: Annotated[bool, Field(description='Whether solver systems are logged')] = False
    budget: Annotated[Budget, Field(description='Search limits after the environment override')] = Budget()


def step_records(witness: Witness) -> list[StepRecord]:
    """One record per step of a schedule"""
    return [
        StepRecord(
            index=index,
            action=str(step.action),
            partial=step.partial,
            source=str(step.source),
            target=str(step.target),
            instructions=[
                InstructionRecord(
                    state=format_term(instruction.state),
                    stay=format_rational(instruction.stay),
                    fires=[(str(target), format_rational(mass)) for target, mass in instruction.fires],
                )
                for instruction in step.instructions
            ],
        )
        for index, step in enumerate(witness.steps)
    ]


def witness_record(witness: Witness) -> WitnessRecord:
    """The record of a witness"""
    return WitnessRecord(
        kind=str(witness.kind), source=str(witness.source), target=str(witness.target), steps=step_records(witness)
    )


def certificate_record(certificate: Certificate) -> CertificateRecord:
    """The record of a certificate"""
    return CertificateRecord(
        pairs=[(str(left), str(right)) for left, right in certificate.pairs],
        closures=sorted(str(flag) for flag in certificate.closures),
    )


def counterexample_record(counterexample: Counterexample) -> CounterexampleRecord:
    """The record of a counterexample"""
    return CounterexampleRecord(
        left=str(counterexample.left),
        right=str(counterexample.right),
        clause=str(counterexample.clause),
        obligation=counterexample.obligation,
        reason=counterexample.reason,
        discipline=counterexample.discipline,
    )


def verdict_record(verdict: Verdict) -> VerdictRecord:
    """The record of a verdict"""
    return VerdictRecord(
        status=str(verdict.status),
        exit_code=verdict.exit_code,
        certificate=certificate_record(verdict.certificate) if verdict.certificate is not None else None,
        counterexample=(
            counterexample_record(verdict.counterexample) if verdict.counterexample is not None else None
        ),
        discharged=len(verdict.evidence),
        replayed=verdict.accepted,
    )


def class_vector_record(name: str, vector: ClassVector) -> ClassVectorRecord:
    """The record of a class vector"""
    return ClassVectorRecord(distribution=name, masses=[format_rational(mass) for mass in vector.entries])


def blocks_record(partition: StatePartition) -> list[list[str]]:
    """Blocks as canonical terms"""
    return [[format_term(state) for state in block] for block in partition.blocks]


def stabilization_record(stabilization: Stabilization) -> StabilizationRecord:
    """The record of a stabilization"""
    return StabilizationRecord(
        source=str(stabilization.source),
        stable=str(stabilization.target),
        weight_before=format_rational(weight(stabilization.source)),
        weight_after=format_rational(weight(stabilization.target)),
        status=str(stabilization.status),
        schedule=witness_record(stabilization.schedule),
        verdict=verdict_record(stabilization.verdict),
    )


def cancellation_record(cancellation: Cancellation) -> CancellationRecord:
    """The record of a cancellation check"""
    verdict = cancellation.verdict
    return CancellationRecord(
        status=str(cancellation.status),
        exit_code=cancellation.exit_code,
        reason=cancellation.reason,
        ratio=format_rational(cancellation.ratio),
        blocks=blocks_record(cancellation.partition) if cancellation.partition is not None else [],
        vectors=[class_vector_record(name, vector) for name, vector in cancellation.vectors.items()],
        stabilizations=[stabilization_record(item) for item in cancellation.stabilizations],
        certificate=(
            certificate_record(verdict.certificate)
            if verdict is not None and verdict.accepted and verdict.certificate is not None
            else None
        ),
    )


def format_step(step: Step) -> list[str]:
    """Readable lines for a step"""
    label = f'({step.action})' if step.partial else str(step.action)
    return [f'{step.source} --{label}--> {step.target}', *(f'    {instruction}' for instruction in step.instructions)]


def format_witness(witness: Witness) -> list[str]:
    """Readable lines for a witness"""
    lines = [f'{witness.kind}: {witness.source} => {witness.target} in {witness.length} step(s)']
    for step in witness.steps:
        lines.extend(f'  {line}' for line in format_step(step))
    return lines


def format_verdict(verdict: Verdict) -> list[str]:
    """Readable lines for a verdict"""
    lines = [str(verdict.status)]
    if verdict.note:
        lines.append(f'note: {verdict.note}')
    if verdict.counterexample is not None:
        lines.append(f'counterexample: {verdict.counterexample}')
    if verdict.certificate is not None and verdict.accepted:
        closures = ', '.join(sorted(str(flag) for flag in verdict.certificate.closures)) or 'none'
        lines.append(f'certificate ({closures}):')
        lines.extend(f'  ({left}, {right})' for left, right in verdict.certificate.pairs)
    return lines


def format_distribution_vector(distribution: Distribution, vector: ClassVector) -> str:
    """`μ -> (m1, m2, ...)`"""
    return f'{distribution} -> ({", ".join(format_rational(mass) for mass in vector.entries)})'
