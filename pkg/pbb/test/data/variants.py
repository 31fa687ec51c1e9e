"""Worked examples"""

from pbb.test.schema import EquivalenceExample, StabilizationExample, Variant, Variants

A = 'a.D(0)'
B = 'b.D(0)'
T = f'tau.(D({A}) +[1/2] D({B}))'

P = 'D(p.D(0))'
Q = 'D(q.D(0))'
H = f'tau.({P} +[1/2] {Q})'
G1 = f'a.({P} +[1/2] {Q})'
G2 = f'a.(D({H}) +[1/3] ({P} +[1/2] {Q}))'

X = f'b.{P} + tau.{Q}'
Y = f'tau.D({X}) + {X}'
I1 = f'a.D({X})'
I2 = f'a.D({Y})'

MU = f'{{1/2: {A}, 1/2: {B}}}'
NU = f'{{1/3: {T}, 1/3: {A}, 1/3: {B}}}'
MIDDLE = f'{{1/2: p.D(0), 1/2: q.D(0)}}'

ALL_CLOSURES = ['symmetric', 'diagonal', 'convex']


def _equivalence_list() -> Variants[EquivalenceExample]:
    """The worked equivalence examples

    Returns:
        A list of variants to test
    """
    data = Variants[EquivalenceExample]()

    # Mixing in an unstable branch that resolves into the other two
    intro = EquivalenceExample(left=MU, right=NU, status='accepted', pairs=[(MU, NU), (T, MU)], closures=ALL_CLOSURES)
    data.variants.append(Variant[EquivalenceExample](name='intro', configuration=intro))

    # An a-step into a partially resolved mixture
    mixture = EquivalenceExample(
        left=G1, right=G2, status='accepted', pairs=[(G1, G2), (H, MIDDLE)], closures=ALL_CLOSURES
    )
    data.variants.append(Variant[EquivalenceExample](name='mixture', configuration=mixture))

    # An inert τ-loop back into the same choice, related without convex closure
    inert = EquivalenceExample(
        left=I1, right=I2, status='accepted', pairs=[(I1, I2), (X, Y)], closures=['symmetric', 'diagonal']
    )
    data.variants.append(Variant[EquivalenceExample](name='inert', configuration=inert))

    # Visible behaviour against deadlock
    deadlock = EquivalenceExample(left=MU, right='{1: 0}', status='rejected')
    data.variants.append(Variant[EquivalenceExample](name='deadlock', configuration=deadlock))

    return data


def _stabilization_list() -> Variants[StabilizationExample]:
    """Distributions with known stable forms

    Returns:
        A list of variants to test
    """
    data = Variants[StabilizationExample]()
    data.variants.append(
        Variant[StabilizationExample](name='intro', configuration=StabilizationExample(source=NU, stable=MU))
    )
    unfolding = StabilizationExample(source=f'{{5/6: tau.{P}, 1/6: p.D(0)}}', stable='{1: p.D(0)}')
    data.variants.append(Variant[StabilizationExample](name='unfolding', configuration=unfolding))
    return data


equivalence_variants = _equivalence_list()
stabilization_variants = _stabilization_list()
