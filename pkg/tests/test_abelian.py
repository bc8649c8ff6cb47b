import random

import pytest
from hypothesis import given, settings, strategies as st

from sl2cohom.abelian import (
    EnumerationBoundExceeded,
    FinGenAbGroup,
    GroupHom,
    Involution,
    cokernel,
    contains_in_image,
    involution_orbits,
    kernel,
    mod_ell_dimension,
    smith_normal_form,
)
from brute import permanent_style_det, structure_from_element_set


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b)))
             for j in range(len(b[0]))] for i in range(len(a))]


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------

def test_snf_worked_example():
    _, diag, _ = smith_normal_form([[2, 4], [6, 8]])
    assert diag == (2, 4)


def test_snf_identity():
    _, diag, _ = smith_normal_form([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert diag == (1, 1, 1)


def test_snf_single_entry():
    _, diag, _ = smith_normal_form([[3]])
    assert diag == (3,)


def test_snf_empty_and_zero():
    left, diag, right = smith_normal_form([])
    assert diag == () and left == () and right == ()
    _, diag, _ = smith_normal_form([[0, 0], [0, 0]])
    assert diag == (0, 0)


matrix_strategy = st.integers(1, 6).flatmap(
    lambda rows: st.integers(1, 6).flatmap(
        lambda cols: st.lists(
            st.lists(st.integers(-20, 20), min_size=cols, max_size=cols),
            min_size=rows, max_size=rows)))


@settings(max_examples=80, deadline=None)
@given(matrix_strategy)
def test_snf_reconstruction_and_chain(m):
    left, diag, right = smith_normal_form(m)
    rows, cols = len(m), len(m[0])
    product = matmul(matmul([list(r) for r in left], m), [list(r) for r in right])
    for i in range(rows):
        for j in range(cols):
            want = diag[i] if i == j and i < len(diag) else 0
            assert product[i][j] == want
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (a == 0 and b == 0) or (a != 0 and b % a == 0)
    assert abs(permanent_style_det(left)) == 1
    assert abs(permanent_style_det(right)) == 1
    if rows == cols:
        want = abs(permanent_style_det(m))
        got = 1
        for d in diag:
            got *= d
        assert want == got


# ---------------------------------------------------------------------------
# groups
# ---------------------------------------------------------------------------

def test_group_canonical_form_enforced():
    with pytest.raises(ValueError):
        FinGenAbGroup(0, (2, 3))  # not a chain
    with pytest.raises(ValueError):
        FinGenAbGroup(0, (1, 2))  # factor 1 must be dropped
    with pytest.raises(ValueError):
        FinGenAbGroup(-1, ())


def test_from_cyclic_orders_canonicalizes():
    assert FinGenAbGroup.from_cyclic_orders([2, 3]) == FinGenAbGroup(0, (6,))
    assert FinGenAbGroup.from_cyclic_orders([4, 6]) == FinGenAbGroup(0, (2, 12))
    assert FinGenAbGroup.from_cyclic_orders([0, 5, 1]) == FinGenAbGroup(1, (5,))


def test_enumeration_bound():
    big = FinGenAbGroup(0, (2048, 2048))
    with pytest.raises(EnumerationBoundExceeded):
        list(big.elements())
    with pytest.raises(EnumerationBoundExceeded):
        list(FinGenAbGroup(1, ()).elements())


def test_hom_must_be_well_defined():
    # an order-2 generator cannot map to a generator of infinite order
    with pytest.raises(ValueError):
        GroupHom(FinGenAbGroup(0, (2,)), FinGenAbGroup(1, ()), [[1]])
    # nor to an element whose order does not divide 2 * entry
    with pytest.raises(ValueError):
        GroupHom(FinGenAbGroup(0, (2,)), FinGenAbGroup(0, (3,)), [[1]])


def test_hom_matrix_reduced_mod_codomain():
    g = FinGenAbGroup(0, (3,))
    assert GroupHom(g, g, [[-1]]) == GroupHom(g, g, [[2]])


# ---------------------------------------------------------------------------
# kernel / cokernel / image membership
# ---------------------------------------------------------------------------

def test_kernel_of_sum_map():
    g = FinGenAbGroup(0, (3, 3))
    h = FinGenAbGroup(0, (3,))
    f = GroupHom(g, h, [[1, 1]])
    k, incl = kernel(f)
    assert k == FinGenAbGroup(0, (3,))
    members = {incl.apply(x) for x in k.elements()}
    assert members == {x for x in g.elements() if f.apply(x) == (0,)}
    assert (1, 2) in members  # the class of (1, -1)


def test_kernel_of_identity_is_trivial():
    g = FinGenAbGroup(0, (5,))
    k, _ = kernel(GroupHom.identity(g))
    assert k.is_trivial


def test_kernel_of_zero_map_on_z():
    z = FinGenAbGroup(1, ())
    k, incl = kernel(GroupHom(z, z, [[0]]))
    assert k == FinGenAbGroup(1, ())
    assert incl.apply((1,)) in {(1,), (-1,)}


def test_cokernel_examples():
    z = FinGenAbGroup(1, ())
    c, _ = cokernel(GroupHom(z, z, [[3]]))
    assert c == FinGenAbGroup(0, (3,))
    # surjective sum map on Z^2 -> Z has trivial cokernel
    c, _ = cokernel(GroupHom(FinGenAbGroup(2, ()), z, [[1, 1]]))
    assert c.is_trivial
    g4 = FinGenAbGroup(0, (4,))
    c, _ = cokernel(GroupHom(g4, g4, [[2]]))
    assert c == FinGenAbGroup(0, (2,))


def test_cokernel_projection_properties():
    g = FinGenAbGroup(0, (4,))
    f = GroupHom(g, g, [[2]])
    c, proj = cokernel(f)
    image = {f.apply(x) for x in g.elements()}
    assert {proj.apply(y) for y in g.elements()} == set(c.elements())
    for x in g.elements():
        assert proj.apply(f.apply(x)) == c.zero()
    kernel_of_proj = {y for y in g.elements() if proj.apply(y) == c.zero()}
    assert kernel_of_proj == image


def test_kernel_and_cokernel_with_mixed_free_and_torsion_parts():
    # (a, b) -> 2a + 2b from Z + Z/4 to Z/8
    dom = FinGenAbGroup(1, (4,))
    cod = FinGenAbGroup(0, (8,))
    f = GroupHom(dom, cod, [[2, 2]])
    k, incl = kernel(f)
    assert k == FinGenAbGroup(1, ())  # pairs (a, -a mod 4), one per integer
    gen = incl.apply((1,))
    assert f.apply(gen) == (0,)
    assert gen[0] != 0 or gen[1] != 0
    c, proj = cokernel(f)
    assert c == FinGenAbGroup(0, (2,))  # image is the even residues
    assert proj.apply((2,)) == (0,) and proj.apply((1,)) != (0,)


def test_compose_homs():
    z = FinGenAbGroup(1, ())
    g6 = FinGenAbGroup(0, (6,))
    reduce_mod6 = GroupHom(z, g6, [[1]])
    double = GroupHom(g6, g6, [[2]])
    composite = double.compose(reduce_mod6)
    assert composite.apply((4,)) == (2,)
    assert composite == GroupHom(z, g6, [[2]])


def test_contains_in_image():
    z = FinGenAbGroup(1, ())
    triple = GroupHom(z, z, [[3]])
    assert contains_in_image(triple, (6,))
    assert not contains_in_image(triple, (2,))
    g = FinGenAbGroup(0, (3, 3))
    h = FinGenAbGroup(0, (3,))
    f = GroupHom(g, h, [[1, 1]])
    assert contains_in_image(f, (2,))


def test_contains_in_image_validates_input():
    g = FinGenAbGroup(0, (3,))
    f = GroupHom.identity(g)
    with pytest.raises(ValueError):
        contains_in_image(f, (5,))  # not reduced
    with pytest.raises(ValueError):
        contains_in_image(f, (0, 0))  # wrong length


def test_mod_ell_dimension():
    assert mod_ell_dimension(FinGenAbGroup.from_cyclic_orders([0, 9, 2]), 3) == 2
    assert mod_ell_dimension(FinGenAbGroup(0, (5,)), 3) == 0
    assert mod_ell_dimension(FinGenAbGroup(3, ()), 23) == 3


# ---------------------------------------------------------------------------
# involution orbits
# ---------------------------------------------------------------------------

def test_orbits_of_negation():
    g3 = FinGenAbGroup(0, (3,))
    orbits = involution_orbits(g3, Involution(GroupHom.negation(g3)))
    assert len(orbits) == 2
    assert orbits[0].elements == ((0,),) and orbits[0].fixed
    assert not orbits[1].fixed

    g5 = FinGenAbGroup(0, (5,))
    assert len(involution_orbits(g5, Involution(GroupHom.negation(g5)))) == 3

    g22 = FinGenAbGroup(0, (2, 2))
    orbits = involution_orbits(g22, Involution(GroupHom.negation(g22)))
    assert len(orbits) == 4 and all(o.fixed for o in orbits)


def test_orbit_partition_properties():
    rng = random.Random(7)
    for _ in range(25):
        g = FinGenAbGroup.from_cyclic_orders(
            [rng.randint(1, 9) for _ in range(rng.randint(0, 3))])
        s = Involution(GroupHom.negation(g))
        orbits = involution_orbits(g, s)
        sizes = sum(len(o.elements) for o in orbits)
        assert sizes == g.order
        fixed = sum(1 for o in orbits if o.fixed)
        assert len(orbits) == (g.order + fixed) // 2
        for o in orbits:
            assert {s.apply(x) for x in o.elements} == set(o.elements)


def test_involution_must_square_to_identity():
    g = FinGenAbGroup(0, (5,))
    with pytest.raises(ValueError):
        Involution(GroupHom(g, g, [[2]]))  # x -> 2x has order 4 on Z/5


# ---------------------------------------------------------------------------
# agreement with enumeration on random finite homomorphisms
# ---------------------------------------------------------------------------

def test_kernel_cokernel_membership_match_enumeration():
    rng = random.Random(20250808)
    from math import gcd
    for _ in range(60):
        dom = FinGenAbGroup.from_cyclic_orders(
            [rng.randint(1, 12) for _ in range(rng.randint(1, 3))])
        cod = FinGenAbGroup.from_cyclic_orders(
            [rng.randint(1, 12) for _ in range(rng.randint(1, 3))])
        if not dom.is_finite or dom.order > 200 or cod.order > 200:
            continue
        rows = []
        for p in cod.orders:
            row = []
            for o in dom.orders:
                g = gcd(p, o)
                row.append((p // g) * rng.randrange(g))
            rows.append(row)
        f = GroupHom(dom, cod, rows)
        kernel_set = {x for x in dom.elements() if f.apply(x) == cod.zero()}
        k, incl = kernel(f)
        assert {incl.apply(x) for x in k.elements()} == kernel_set
        assert structure_from_element_set(kernel_set, dom.add, dom.zero()) == k
        image = {f.apply(x) for x in dom.elements()}
        c, proj = cokernel(f)
        assert c.order * len(image) == cod.order
        for y in cod.elements():
            assert contains_in_image(f, y) == (y in image)
