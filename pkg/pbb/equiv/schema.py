"""Verdicts, counterexamples and discharged obligations"""

from dataclasses import dataclass, field
from enum import StrEnum

from pbb.distr.distribution import Distribution
from pbb.equiv.certificate import Certificate
from pbb.semantics.schema import Witness


class Status(StrEnum):
    """Outcome of a check; only acceptance and rejection are authoritative"""

    ACCEPTED = 'accepted'
    REJECTED = 'rejected'
    INCONCLUSIVE = 'inconclusive'

    @property
    def exit_code(self) -> int:
        """The console exit status"""
        return {Status.ACCEPTED: 0, Status.REJECTED: 1, Status.INCONCLUSIVE: 2}[self]


class Clause(StrEnum):
    """The obligation a counterexample refers to"""

    DECOMPOSITION = 'decomposition'
    TRANSFER = 'transfer'
    SYMMETRY = 'symmetry'
    MEMBERSHIP = 'membership'
    REFUTATION = 'refutation'


@dataclass(frozen=True, slots=True)
class Counterexample:
    """The first failing obligation

    `discipline` marks failures that only hold under the finite checking discipline and say nothing about the
    relation being a bisimulation.
    """

    left: Distribution
    right: Distribution
    clause: Clause
    obligation: str
    reason: str
    discipline: bool = False

    def __str__(self) -> str:
        """Readable form"""
        qualifier = ' (under the checking discipline)' if self.discipline else ''
        return f'{self.clause} failed{qualifier} for ({self.left}, {self.right}): {self.obligation}: {self.reason}'


@dataclass(frozen=True, slots=True)
class Discharge:
    """An obligation together with the witnesses that discharge it"""

    left: Distribution
    right: Distribution
    clause: Clause
    obligation: str
    witnesses: tuple[Witness, ...]


@dataclass(frozen=True)
class Verdict:
    """Result of checking or searching for a certificate"""

    status: Status
    certificate: Certificate | None = None
    counterexample: Counterexample | None = None
    evidence: tuple[Discharge, ...] = field(default=())
    note: str = ''

    @property
    def accepted(self) -> bool:
        """Whether the certificate was accepted"""
        return self.status is Status.ACCEPTED

    @property
    def exit_code(self) -> int:
        """The console exit status"""
        return self.status.exit_code

    @classmethod
    def rejected(cls, counterexample: Counterexample, certificate: Certificate | None = None) -> 'Verdict':
        """A rejection, downgraded to inconclusive when it only holds under the discipline"""
        status = Status.INCONCLUSIVE if counterexample.discipline else Status.REJECTED
        return cls(status, certificate, counterexample)
