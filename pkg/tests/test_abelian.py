import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coincide.abelian import (
    TRIVIAL,
    Z,
    FgAbelianGroup,
    GroupElement,
    GroupError,
    GroupHom,
    apply_hom,
    is_injective,
    order_of_element,
    parse_group,
)
from coincide.trilogic import Tri


def brute_force_order(e: GroupElement):
    """Independent oracle: add e to itself until it dies."""
    if any(c != 0 for c in e.coords[: e.parent.rank]):
        return math.inf
    total = e
    for n in range(1, 10_000):
        if total.is_zero:
            return n
        total = total + e
    raise AssertionError("element order oracle exhausted")


finite_groups = st.lists(
    st.integers(min_value=2, max_value=24), max_size=3
).map(lambda orders: FgAbelianGroup.from_cyclic_orders(*orders))


@st.composite
def group_with_element(draw, groups=finite_groups):
    group = draw(groups)
    coords = tuple(
        draw(st.integers(min_value=-30, max_value=30))
        for _ in range(group.dimension)
    )
    return group, group.element(coords)


class TestGroupConstruction:
    def test_invariant_factor_chain_enforced(self):
        with pytest.raises(GroupError):
            FgAbelianGroup(0, (4, 6))  # 4 does not divide 6
        with pytest.raises(GroupError):
            FgAbelianGroup(0, (1,))
        with pytest.raises(GroupError):
            FgAbelianGroup(-1, ())

    def test_normalization_examples(self):
        assert FgAbelianGroup.from_cyclic_orders(2, 3) == FgAbelianGroup(0, (6,))
        assert FgAbelianGroup.from_cyclic_orders(4, 6) == FgAbelianGroup(0, (2, 12))
        assert FgAbelianGroup.from_cyclic_orders(0, 12, 60) == FgAbelianGroup(
            1, (12, 60)
        )
        assert FgAbelianGroup.from_cyclic_orders() == TRIVIAL

    @given(st.lists(st.integers(min_value=0, max_value=40), max_size=4))
    def test_normalization_idempotent(self, orders):
        once = FgAbelianGroup.from_cyclic_orders(*orders)
        twice = FgAbelianGroup.from_cyclic_orders(*(once.torsion), *([0] * once.rank))
        assert once == twice

    @given(st.lists(st.integers(min_value=0, max_value=40), max_size=4))
    def test_normalization_preserves_order(self, orders):
        group = FgAbelianGroup.from_cyclic_orders(*orders)
        expected = math.inf if 0 in orders else math.prod(d for d in orders if d > 1)
        if not any(d > 1 for d in orders) and 0 not in orders:
            expected = 1
        assert group.order() == expected

    def test_order_and_exponent(self):
        assert TRIVIAL.order() == 1
        assert Z.order() == math.inf
        assert FgAbelianGroup(0, (3, 24)).order() == 72
        assert FgAbelianGroup(0, (3, 24)).exponent() == 24

    def test_parse_group_literals(self):
        assert parse_group("0") == TRIVIAL
        assert parse_group("Z") == Z
        assert parse_group("Z + Z/12") == FgAbelianGroup(1, (12,))
        assert parse_group("Z^2 + Z/2 + Z/24") == FgAbelianGroup(2, (2, 24))
        assert str(parse_group("Z + Z/12")) == "Z + Z/12"
        with pytest.raises(GroupError):
            parse_group("Z/1")
        with pytest.raises(GroupError):
            parse_group("Q")


class TestElements:
    def test_torsion_coordinates_reduced(self):
        group = FgAbelianGroup(1, (12,))
        e = group.element((5, 25))
        assert e.coords == (5, 1)

    def test_order_examples(self):
        z24 = FgAbelianGroup(0, (24,))
        assert order_of_element(z24.zero()) == 1
        generator = z24.generator(0)
        assert brute_force_order(generator) == 24
        assert order_of_element(generator) == 24
        mixed = FgAbelianGroup(1, (12,))
        assert order_of_element(mixed.element((1, 0))) == math.inf

    @given(group_with_element())
    def test_order_divides_group_order(self, pair):
        group, element = pair
        assert group.order() % order_of_element(element) == 0

    @given(group_with_element())
    def test_order_matches_brute_force(self, pair):
        _, element = pair
        assert order_of_element(element) == brute_force_order(element)

    def test_arithmetic(self):
        group = FgAbelianGroup(0, (2, 4))
        a = group.element((1, 3))
        b = group.element((1, 2))
        assert (a + b).coords == (0, 1)
        assert (a - b).coords == (0, 1)
        assert (3 * a).coords == (1, 1)
        with pytest.raises(GroupError):
            a + Z.element((1,))


def random_hom(rng, source, target):
    rows = []
    for _ in range(target.dimension):
        rows.append([rng.randint(-3, 3) for _ in range(source.dimension)])
    # force well-definedness: clear torsion-generator images that do not die
    for j, d in enumerate(source.torsion):
        col = source.rank + j
        for i in range(target.dimension):
            if i < target.rank:
                rows[i][col] = 0
            else:
                order = target.torsion[i - target.rank]
                if (d * rows[i][col]) % order != 0:
                    rows[i][col] = 0
    return GroupHom(source, target, tuple(tuple(r) for r in rows))


class TestHoms:
    def test_well_definedness_rejected(self):
        z2, z3 = FgAbelianGroup(0, (2,)), FgAbelianGroup(0, (3,))
        with pytest.raises(GroupError):
            GroupHom(z2, z3, ((1,),))

    def test_apply_examples(self):
        z2 = FgAbelianGroup(0, (2,))
        z24 = FgAbelianGroup(0, (24,))
        zero_map = GroupHom.zero(z24, z2)
        assert zero_map.apply(z24.element((7,))).is_zero
        identity = GroupHom.identity(z2)
        assert identity.apply(z2.generator(0)) == z2.generator(0)
        reduction = GroupHom(Z, z24, ((1,),))
        # oracle: plain modular arithmetic
        assert reduction.apply(Z.element((25,))).coords == (25 % 24,)
        assert apply_hom(reduction, Z.element((25,))).coords == (1,)

    def test_apply_shape_mismatch(self):
        z2 = FgAbelianGroup(0, (2,))
        identity = GroupHom.identity(z2)
        with pytest.raises(GroupError):
            identity.apply(Z.element((1,)))

    def test_injectivity_examples(self):
        z2, z4 = FgAbelianGroup(0, (2,)), FgAbelianGroup(0, (4,))
        # generator of Z/2 to the order-2 element of Z/4: injective
        doubling = GroupHom(z2, z4, ((2,),))
        assert is_injective(doubling) is Tri.YES
        assert is_injective(GroupHom.zero(z2, z2)) is Tri.NO
        # rank-1 source onto a finite target has free kernel elements
        z_plus_z12 = FgAbelianGroup(1, (12,))
        z24 = FgAbelianGroup(0, (24,))
        stable_suspension = GroupHom(z_plus_z12, z24, ((1, 2),))
        assert is_injective(stable_suspension) is Tri.NO

    def test_injectivity_with_free_parts(self):
        two = GroupHom(Z, Z, ((2,),))
        assert is_injective(two) is Tri.YES
        fold = GroupHom(FgAbelianGroup(2), Z, ((1, 1),))
        assert is_injective(fold) is Tri.NO

    def test_injectivity_agrees_with_kernel_enumeration(self):
        import random

        rng = random.Random(7)
        pool = [
            FgAbelianGroup(0, (2,)),
            FgAbelianGroup(0, (4,)),
            FgAbelianGroup(0, (2, 4)),
            FgAbelianGroup(0, (3,)),
            FgAbelianGroup(0, (12,)),
            FgAbelianGroup(0, (2, 24)),
            FgAbelianGroup(0, (6, 6)),
            TRIVIAL,
        ]
        assert all(g.order() <= 48 for g in pool)
        for _ in range(300):
            source, target = rng.choice(pool), rng.choice(pool)
            hom = random_hom(rng, source, target)
            kernel_trivial = all(
                hom.apply(e).is_zero == e.is_zero for e in source.elements()
            )
            assert is_injective(hom) is Tri.of(kernel_trivial)

    @settings(max_examples=60)
    @given(group_with_element(), group_with_element())
    def test_hom_additivity(self, pair_a, pair_b):
        import random

        group, a = pair_a
        _, probe = pair_b
        rng = random.Random(group.dimension * 31 + len(probe.coords))
        target = FgAbelianGroup(0, (2, 12))
        hom = random_hom(rng, group, target)
        b = group.element(tuple(rng.randint(-9, 9) for _ in range(group.dimension)))
        assert hom.apply(a + b) == hom.apply(a) + hom.apply(b)

    def test_composition_associates(self):
        z4 = FgAbelianGroup(0, (4,))
        z8 = FgAbelianGroup(0, (8,))
        f = GroupHom(Z, z8, ((1,),))
        g = GroupHom(z8, z4, ((1,),))
        h = GroupHom(z4, z4, ((3,),))
        left = h.compose(g).compose(f)
        right = h.compose(g.compose(f))
        for value in (0, 1, 5):
            assert left.apply(Z.element((value,))) == right.apply(Z.element((value,)))
