import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from abelian_cs import (
    ElementMismatch,
    NotEven,
    SizeMismatch,
    cokernel,
    determinant,
    enumerate_group,
    matrix,
    pairing,
    quadratic,
    tensor_quadratic,
)
from abelian_cs.errors import NonSymmetric
from abelian_cs.selftest import PROPERTY_FORMS, group_identities, lift_shift

from oracles import coset_representatives, determinantal_invariant_factors


def sympy_pairing(k_rows, x, y):
    inv = sympy.Matrix(k_rows).inv()
    return Fraction(str((sympy.Matrix([x]) * inv * sympy.Matrix(y))[0]))


@pytest.mark.parametrize("rows, factors", [
    ([[2, 1], [1, 2]], (3,)),
    ([[4, 2], [2, 4]], (2, 6)),
    ([[6]], (6,)),
    ([[0, 1], [1, 0]], ()),
    ([[0, 2], [2, 0]], (2, 2)),
])
def test_invariant_factors(rows, factors):
    g = cokernel(matrix(rows))
    assert g.invariant_factors == factors
    assert g.order == abs(determinant(matrix(rows)))
    assert list(factors) == determinantal_invariant_factors(rows)


def test_trivial_group():
    g = cokernel(matrix([[0, 1], [1, 0]]))
    assert g.order == 1
    assert list(g.elements()) == [g.identity()]


@pytest.mark.parametrize("rows", PROPERTY_FORMS)
def test_elements_are_distinct_cosets(rows):
    g = cokernel(matrix(rows))
    elems = list(enumerate_group(g))
    assert len(elems) == g.order == len(set(elems))
    assert [g.index_of(u) for u in elems] == list(range(g.order))
    # every element reduces to itself from its lift
    assert all(g.reduce(u.canonical_lift) == u for u in elems)
    # the oracle's coset representatives hit every element exactly once
    reps = coset_representatives(rows)
    assert sorted(g.index_of(g.reduce(r)) for r in reps) == list(range(g.order))


def test_enumeration_order_last_coordinate_fastest():
    g = cokernel(matrix([[4, 2], [2, 4]]))
    coords = [u.coords for u in g.elements()]
    assert coords[:3] == [(0, 0), (0, 1), (0, 2)]
    assert coords[6] == (1, 0)


def test_pairing_and_quadratic_examples():
    k = matrix([[2, 1], [1, 2]])
    g = cokernel(k)
    u = g.reduce((1, 1))
    assert pairing(g, u, u).value == Fraction(2, 3)
    assert quadratic(g, u).value == Fraction(2, 3)
    v = g.reduce((1, 0))
    assert quadratic(g, v).value == Fraction(2, 3)
    assert pairing(g, v, g.reduce((0, 1))).value == Fraction(2, 3)

    g2 = cokernel(matrix([[2]]))
    one = g2.reduce((1,))
    assert quadratic(g2, one).value == Fraction(1, 2)
    assert pairing(g2, one, one).value == Fraction(1, 2)


@pytest.mark.parametrize("rows", PROPERTY_FORMS[:12])
def test_pairing_matches_sympy(rows):
    g = cokernel(matrix(rows))
    for u in g.elements():
        for v in g.elements():
            assert pairing(g, u, v).value == sympy_pairing(rows, u.canonical_lift, v.canonical_lift) % 1
        assert quadratic(g, u).value == sympy_pairing(rows, u.canonical_lift, u.canonical_lift) % 2


@pytest.mark.parametrize("rows", PROPERTY_FORMS)
def test_forms_are_well_defined_and_compatible(rows):
    g = cokernel(matrix(rows))
    assert lift_shift(g, random.Random(7))
    assert all(group_identities(g).values())


def test_group_arithmetic():
    g = cokernel(matrix([[4, 2], [2, 4]]))
    for u in g.elements():
        assert g.add(u, g.neg(u)) == g.identity()
        assert g.scale(g.invariant_factors[-1], u) == g.identity()
        assert g.scale(3, u) == g.add(u, g.add(u, u))


def test_element_mismatch():
    g = cokernel(matrix([[2, 1], [1, 2]]))
    h = cokernel(matrix([[4, 2], [2, 4]]))
    with pytest.raises(ElementMismatch):
        g.element((3,))
    with pytest.raises(ElementMismatch):
        pairing(g, h.element((1, 1)), g.identity())
    with pytest.raises(SizeMismatch):
        g.reduce((1, 2, 3))


def test_odd_forms():
    with pytest.raises(NotEven):
        cokernel(matrix([[3]]))
    g = cokernel(matrix([[3]]), require_even=False)
    u = g.reduce((1,))
    assert pairing(g, u, u).value == Fraction(1, 3)
    with pytest.raises(NotEven):
        quadratic(g, u)


def test_tensor_quadratic_examples():
    g = cokernel(matrix([[2]]))
    x = g.reduce((1,))
    assert tensor_quadratic(matrix([[2]]), g, [x]).value == 1
    # L = H, X = (1, 1): 2 * 1/2 = 1
    assert tensor_quadratic(matrix([[0, 1], [1, 0]]), g, [x, x]).value == 1
    assert tensor_quadratic(matrix([[0, 1], [1, 0]]), g, [x, g.identity()]).value == 0
    with pytest.raises(SizeMismatch):
        tensor_quadratic(matrix([[2]]), g, [x, x])
    with pytest.raises(NotEven):
        tensor_quadratic(matrix([[1]]), g, [x])
    with pytest.raises(NonSymmetric):
        tensor_quadratic(matrix([[2, 1], [0, 2]]), g, [x, x])


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(PROPERTY_FORMS[:16]), st.data())
def test_tensor_quadratic_matches_sympy(rows, data):
    g = cokernel(matrix(rows))
    m = data.draw(st.integers(1, 3))
    upper = data.draw(st.lists(st.integers(-3, 3), min_size=m * m, max_size=m * m))
    l_rows = [[upper[min(i, j) * m + max(i, j)] * (2 if i == j else 1) for j in range(m)]
              for i in range(m)]
    elems = [g.element_list[data.draw(st.integers(0, g.order - 1))] for _ in range(m)]
    got = tensor_quadratic(matrix(l_rows), g, elems)
    expected = sum(l_rows[i][j] * sympy_pairing(rows, elems[i].canonical_lift, elems[j].canonical_lift)
                   for i in range(m) for j in range(m))
    assert got.value == expected % 2
