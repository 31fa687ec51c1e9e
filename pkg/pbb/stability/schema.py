"""Stability verdicts, stabilizations and cancellation evidence"""

from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction

from pbb.distr.distribution import Distribution
from pbb.equiv.partition import ClassVector, StatePartition
from pbb.equiv.schema import Status, Verdict
from pbb.semantics.schema import Witness


class Stability(StrEnum):
    """Whether a distribution can still do internal activity without leaving its class"""

    STABLE = 'stable'
    UNSTABLE = 'unstable'
    INCONCLUSIVE = 'inconclusive'

    @property
    def exit_code(self) -> int:
        """The console exit status"""
        return {Stability.STABLE: 0, Stability.UNSTABLE: 1, Stability.INCONCLUSIVE: 2}[self]


@dataclass(frozen=True)
class StabilityVerdict:
    """Stability of one distribution, with the equivalent unfolding when unstable and the argument when stable"""

    distribution: Distribution
    status: Stability
    witness: Witness | None = None
    verdict: Verdict | None = None
    reason: str = ''


@dataclass(frozen=True)
class Stabilization:
    """A weak transition μ ⇒ σ with a certificate for σ ≈ μ"""

    source: Distribution
    target: Distribution
    status: Stability
    schedule: Witness
    verdict: Verdict
    explored: int = 0

    @property
    def stable(self) -> bool:
        """Whether the target is known to be stable"""
        return self.status is Stability.STABLE


@dataclass(frozen=True)
class Cancellation:
    """Evidence bundle of a cancellation check"""

    status: Status
    ratio: Fraction
    reason: str = ''
    verdict: Verdict | None = None
    partition: StatePartition | None = None
    vectors: dict[str, ClassVector] = field(default_factory=dict)
    stabilizations: tuple[Stabilization, ...] = ()

    @property
    def exit_code(self) -> int:
        """The console exit status"""
        return self.status.exit_code
