"""Property suites

Each suite draws one case from a seeded generator and checks a property on it. Cases whose premises do not hold
(an equivalence that was not found, a universe too large for an oracle) are discarded, never failed. Only an
authoritative contradiction fails a case.
"""

from abc import abstractmethod
from fractions import Fraction

from pbb.core.schema import Budget
from pbb.distr.combinatorics import column_part, column_sums, joint_decompose, limit_residual, row_part, row_sums
from pbb.distr.distribution import Distribution, binary_mix, dirac, distance, mix
from pbb.equiv.checker import check_certificate, weak_transfer
from pbb.equiv.partition import StatePartition, strong_equiv, strong_partition
from pbb.equiv.refute import tau_free
from pbb.equiv.schema import Status
from pbb.equiv.search import check_congruence, search_branching
from pbb.harness.generator import TermGenerator, graft, grafted_pair
from pbb.harness.oracle import coarsest_strong_partition, grid_reach, vertex_successors
from pbb.harness.schema import GenConfig, Outcome
from pbb.semantics.composition import compose_transitions, decompose_transition
from pbb.semantics.schema import Refusal
from pbb.semantics.step import distribution_step, replay
from pbb.semantics.universe import Universe, build_universe, den
from pbb.semantics.weak import weak_reach
from pbb.stability.classes import branching_partition, stable_equiv
from pbb.stability.cancellation import cancel_check
from pbb.stability.schema import Stability
from pbb.stability.stabilizer import is_stable, stabilize
from pbb.stability.weight import weight
from pbb.terms.ast import Choice, Dirac, PChoice
from pbb.utility.plugin import Plugin

type Check = tuple[Outcome, str]

PASSED: Check = (Outcome.PASSED, '')

# universes above these sizes are discarded
SEARCH_LIMIT = 16
ORACLE_LIMIT = 6

# grid oracle: largest denominator of fired fractions, distributions explored per case
GRID_DENOMINATOR = 6
GRID_LIMIT = 48


def failed(detail: str) -> Check:
    """A failing case"""
    return Outcome.FAILED, detail


def discarded(detail: str) -> Check:
    """A case whose premises do not hold"""
    return Outcome.DISCARDED, detail


class Suite(Plugin):
    """A property checked on generated cases"""

    def __init__(self, config: GenConfig, budget: Budget | None = None) -> None:
        """Initializes the suite

        Args:
            config: Generator bounds
            budget: Search limits for suites that look for certificates
        """
        self.config = config
        self.budget = budget or Budget()

    def budget_for(self, universe: Universe) -> Budget:
        """The budget with room for every Dirac pair of the universe"""
        return self.budget.model_copy(update={'pairs': max(self.budget.pairs, len(universe) ** 2)})

    @abstractmethod
    def check(self, generator: TermGenerator) -> Check:
        """Draws one case and checks the property

        Args:
            generator: The seeded generator of this case

        Returns:
            The outcome with a description of the case when it did not pass
        """
        raise NotImplementedError


class JointDecompositionSuite(Suite):
    """Two presentations of one distribution refine into a matrix with the right marginals and parts"""

    def check(self, generator: TermGenerator) -> Check:
        """Checks row and column sums and the reassembled parts"""
        xi = generator.distribution()
        left, right = generator.presentation(xi), generator.presentation(xi)
        matrix = joint_decompose(left, right)
        if row_sums(matrix) != tuple(p for p, _ in left) or column_sums(matrix) != tuple(q for q, _ in right):
            return failed(f'marginals of the matrix for {xi} are off')
        if any(row_part(matrix, index) != part for index, (_, part) in enumerate(left)):
            return failed(f'a row of the matrix for {xi} does not reassemble its part')
        if any(column_part(matrix, index) != part for index, (_, part) in enumerate(right)):
            return failed(f'a column of the matrix for {xi} does not reassemble its part')
        return PASSED


class LimitResidualSuite(Suite):
    """μ_i = (1 − r)·μ ⊕ r·μ' with r bounded by the distance to the limit"""

    def check(self, generator: TermGenerator) -> Check:
        """Checks the reconstruction and the bound on r"""
        limit = generator.distribution()
        component = binary_mix(generator.ratio(), limit, generator.distribution())
        ratio, residual = limit_residual(component, limit)
        if not 0 <= ratio <= 1:
            return failed(f'ratio {ratio} for {component} against {limit}')
        if mix([(1 - ratio, limit), (ratio, residual)]) != component:
            return failed(f'{component} is not reassembled from {limit} and {residual}')
        if ratio > distance(component, limit) / min(weight for _, weight in limit.entries):
            return failed(f'ratio {ratio} for {component} exceeds the distance bound')
        return PASSED


class CompositionSuite(Suite):
    """Splitting a weak transition along a presentation and composing the pieces gives it back"""

    def check(self, generator: TermGenerator) -> Check:
        """Decomposes a random schedule and recomposes it"""
        source = generator.distribution()
        universe = build_universe([source])
        witness = generator.schedule(universe, source)
        parts = generator.presentation(source)
        pieces = decompose_transition(universe, parts, witness)
        for (_, part), piece in zip(parts, pieces, strict=True):
            if piece.source != part or not replay(universe, piece):
                return failed(f'piece from {part} of the schedule from {source} does not replay')

        composed = compose_transitions([(p, part, piece) for (p, part), piece in zip(parts, pieces, strict=True)])
        if composed.source != source or composed.target != witness.target or not replay(universe, composed):
            return failed(f'composed schedule from {source} differs from the original')
        return PASSED


class CongruenceSuite(Suite):
    """Certificates for two pairs combine into one for their mixtures"""

    def check(self, generator: TermGenerator) -> Check:
        """Mixes two grafted pairs"""
        (first, first_prime), (second, second_prime) = grafted_pair(generator), grafted_pair(generator)
        universe = build_universe([first, first_prime, second, second_prime])
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')
        budget = self.budget_for(universe)
        lefts, rights = (dirac(first), dirac(second)), (dirac(first_prime), dirac(second_prime))
        verdicts = [search_branching(universe, left, right, budget) for left, right in zip(lefts, rights, strict=True)]
        if not all(verdict.accepted and verdict.certificate for verdict in verdicts):
            return discarded('a premise was not found')

        certificates = (verdicts[0].certificate, verdicts[1].certificate)
        assert certificates[0] is not None and certificates[1] is not None
        ratio = generator.ratio()
        verdict = check_congruence(universe, lefts, rights, ratio, (certificates[0], certificates[1]), budget)
        if not verdict.accepted:
            return failed(f'mixture at {ratio} of {lefts} and {rights}: {verdict.counterexample}')
        return PASSED


class WeakTransferSuite(Suite):
    """A weak transition of one side is matched by the other side inside the certificate closure"""

    def check(self, generator: TermGenerator) -> Check:
        """Matches a random schedule from a grafted pair"""
        term, grafted = grafted_pair(generator)
        left, right = dirac(term), dirac(grafted)
        universe = build_universe([left, right])
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')
        verdict = search_branching(universe, left, right, self.budget_for(universe))
        if not verdict.accepted or verdict.certificate is None:
            return discarded('no certificate for the pair')

        witness = generator.schedule(universe, left)
        matched = weak_transfer(universe, verdict.certificate, left, right, witness)
        if matched is None:
            return failed(f'{right} cannot match {left} ==> {witness.target}')
        if matched.source != right or not replay(universe, matched):
            return failed(f'matching schedule from {right} does not replay')
        if not verdict.certificate.contains(witness.target, matched.target):
            return failed(f'({witness.target}, {matched.target}) is not related')
        return PASSED


class StableClassesSuite(Suite):
    """Stable distributions with equal class vectors are branching bisimilar"""

    def check(self, generator: TermGenerator) -> Check:
        """Compares a stable mixture with a grafted copy"""
        term, grafted = grafted_pair(generator, root=False)
        other = generator.nterm(silent=False)
        ratio = generator.ratio()
        left = den(PChoice(Dirac(term), ratio, Dirac(other)))
        right = den(PChoice(Dirac(grafted), ratio, Dirac(other)))
        universe = build_universe([left, right])
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')
        if not (tau_free(universe, left) and tau_free(universe, right)):
            return failed(f'{left} or {right} is not stable')

        budget = self.budget_for(universe)
        if not stable_equiv(universe, left, right, branching_partition(universe, budget)):
            return discarded('the computed partition separates the pair')
        verdict = search_branching(universe, left, right, budget)
        if verdict.status is Status.REJECTED:
            return failed(f'equal class vectors but {verdict.counterexample}')
        return PASSED if verdict.accepted else discarded('no certificate within the budget')


class CancellationSuite(Suite):
    """μ ⊕r ν ≈ μ' ⊕r ν gives μ ≈ μ' with an independently accepted certificate"""

    def check(self, generator: TermGenerator) -> Check:
        """Cancels a common remainder from a grafted pair"""
        term, grafted = grafted_pair(generator)
        remainder = generator.distribution()
        ratio = generator.ratio()
        left, right = dirac(term), dirac(grafted)
        universe = build_universe([left, right, remainder])
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')

        budget = self.budget_for(universe)
        result = cancel_check(universe, (left, right), (remainder, remainder), ratio, budget)
        if result.status is Status.INCONCLUSIVE:
            return discarded(result.reason)
        if result.status is Status.REJECTED or result.verdict is None or result.verdict.certificate is None:
            return failed(f'cancellation of {remainder} at {ratio} rejected ({left}, {right})')
        certificate = result.verdict.certificate
        if not (certificate.contains(left, right) and check_certificate(universe, certificate, budget).accepted):
            return failed(f'certificate for ({left}, {right}) is not accepted on its own')
        return PASSED


class WeightDescentSuite(Suite):
    """Stabilization replays, strictly lowers the weight at every step and stays equivalent"""

    def check(self, generator: TermGenerator) -> Check:
        """Stabilizes a random distribution"""
        source = generator.distribution()
        universe = build_universe([source])
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')
        budget = self.budget_for(universe)
        result = stabilize(universe, source, budget)
        if result.schedule.source != source or result.schedule.target != result.target:
            return failed(f'schedule of {source} does not connect it to {result.target}')
        if not replay(universe, result.schedule):
            return failed(f'schedule from {source} does not replay')
        for step in result.schedule.steps:
            if weight(step.target) >= weight(step.source):
                return failed(f'step from {step.source} does not lower the weight')
        certificate = result.verdict.certificate
        if not result.verdict.accepted or certificate is None or not certificate.contains(source, result.target):
            return failed(f'{result.target} is not certified equivalent to {source}')
        if result.stable and is_stable(universe, result.target, budget).status is Stability.UNSTABLE:
            return failed(f'{result.target} is reported stable but fires inertly')
        return PASSED


class LiftingSuite(Suite):
    """Vertex successors of a distribution agree with brute-force enumeration and are members"""

    def check(self, generator: TermGenerator) -> Check:
        """Enumerates the vertices for every action"""
        source = generator.distribution()
        universe = build_universe([source])
        for action in self.config.actions:
            steps = distribution_step(universe, source, action)
            if steps.vertex_count > self.budget.vertices:
                return discarded(f'{steps.vertex_count} vertices')
            vertices = list(steps.vertices())
            if set(vertices) != vertex_successors(source, action):
                return failed(f'{action}-vertices of {source} differ from enumeration')
            if not all(steps.contains(vertex) for vertex in vertices):
                return failed(f'an {action}-vertex of {source} is not a member')
            if len(vertices) > 1 and not steps.contains(binary_mix(Fraction(1, 2), vertices[0], vertices[-1])):
                return failed(f'the {action}-successors of {source} are not convex')
        return PASSED


class StrongPartitionSuite(Suite):
    """Partition refinement agrees with enumerating every partition"""

    def check(self, generator: TermGenerator) -> Check:
        """Compares both on the universe of a random process"""
        universe = build_universe([generator.nterm()])
        if len(universe) > ORACLE_LIMIT:
            return discarded(f'{len(universe)} states')
        expected = StatePartition.of(coarsest_strong_partition(universe))
        if strong_partition(universe) != expected:
            return failed(f'refinement disagrees with enumeration on {len(universe)} states')
        return PASSED


class WeakReachSuite(Suite):
    """Weak reach within N(u) layers finds everything a grid of partial steps reaches in 2·N(u) steps"""

    def check(self, generator: TermGenerator) -> Check:
        """Replays a brute-force grid exploration through the solver"""
        source = generator.distribution()
        universe = build_universe([source])
        if len(universe) > ORACLE_LIMIT:
            return discarded(f'{len(universe)} states')
        denominator = min(self.config.denominator, GRID_DENOMINATOR)
        grid = grid_reach(universe, source, denominator, 2 * universe.bound, GRID_LIMIT)
        for target in sorted(grid, key=str):
            if isinstance(weak_reach(universe, source, target, universe.bound), Refusal):
                return failed(f'{source} reaches {target} on the grid but not within {universe.bound} layers')
        return PASSED


class StrongBranchingSuite(Suite):
    """Strongly bisimilar distributions get a branching certificate"""

    def check(self, generator: TermGenerator) -> Check:
        """Relates a distribution to a copy with duplicated summands"""
        source = generator.distribution()
        copy = Distribution.from_pairs(
            (Choice(state, state) if generator.random.random() < 0.5 else state, mass) for state, mass in source.entries
        )
        universe = build_universe([source, copy])
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')
        if not strong_equiv(universe, source, copy):
            return failed(f'{source} and {copy} are not strongly bisimilar')
        verdict = search_branching(universe, source, copy, self.budget_for(universe))
        if not verdict.accepted:
            return failed(f'no branching certificate for strongly bisimilar {source} and {copy}')
        return PASSED


class GraftingSuite(Suite):
    """Generated universes are closed, and inserting an inert τ-step keeps a process equivalent"""

    def check(self, generator: TermGenerator) -> Check:
        """Re-closes the universe and searches the grafted pair"""
        term = generator.nterm()
        grafted = graft(term, generator.random)
        universe = build_universe([term, grafted])
        if build_universe(universe.states).states != universe.states:
            return failed(f'universe of {term} is not transition closed')
        if len(universe) > SEARCH_LIMIT:
            return discarded(f'{len(universe)} states')
        verdict = search_branching(universe, dirac(term), dirac(grafted), self.budget_for(universe))
        if verdict.status is Status.REJECTED:
            return failed(f'grafted copy refuted: {verdict.counterexample}')
        return PASSED if verdict.accepted else discarded('no certificate within the budget')


BUILTIN_SUITES: tuple[type[Suite], ...] = (
    JointDecompositionSuite,
    LimitResidualSuite,
    CompositionSuite,
    CongruenceSuite,
    WeakTransferSuite,
    StableClassesSuite,
    CancellationSuite,
    WeightDescentSuite,
    LiftingSuite,
    StrongPartitionSuite,
    WeakReachSuite,
    StrongBranchingSuite,
    GraftingSuite,
)
