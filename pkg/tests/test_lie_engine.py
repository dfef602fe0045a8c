"""Tests for the free/Yang-Mills Lie algebra construction layer."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ymh.formal_series import ym_hilbert
from ymh.lie_engine import (
    HallBasis,
    LieElement,
    assoc_component,
    free_bracket,
    generator,
    pbw_basis,
    pbw_left_mult,
    pbw_multiply_monomials,
    relation_elements,
    tree_label,
    witt_dimension,
    ym_presentation,
)


@pytest.fixture(scope="module")
def hall35():
    return HallBasis(3, 5)


@pytest.fixture(scope="module")
def p3():
    return ym_presentation(3, 6)


def test_witt_dimension_values():
    assert witt_dimension(2, 3) == 2
    assert witt_dimension(3, 5) == 48
    assert [witt_dimension(3, d) for d in range(1, 6)] == [3, 3, 8, 18, 48]


def test_hall_counts_match_witt(hall35):
    for d in range(1, 6):
        assert len(hall35.monomials(d)) == witt_dimension(3, d)


def test_hall_degree_two_monomials(hall35):
    labels = [tree_label(t) for t in hall35.monomials(2)]
    assert labels == ["[x1,x2]", "[x1,x3]", "[x2,x3]"]


def test_hall_two_generators_degree_three():
    h = HallBasis(2, 3)
    assert [tree_label(t) for t in h.monomials(3)] == ["[x1,[x1,x2]]", "[x2,[x1,x2]]"]


def test_free_bracket_examples(hall35):
    x1, x2 = generator(hall35, 0), generator(hall35, 1)
    assert free_bracket(hall35, x1, x1).is_zero()
    b = free_bracket(hall35, x1, x2)
    assert b.coords == {0: Fraction(1)}
    # [[x1,x2],x1] = -[x1,[x1,x2]]
    lhs = free_bracket(hall35, b, x1)
    idx = hall35.index((0, (0, 1)))
    assert lhs.coords == {idx: Fraction(-1)}


def rand_elt(hall, degree, data):
    mons = hall.monomials(degree)
    coords = {}
    for k in range(len(mons)):
        c = data.draw(st.integers(-2, 2))
        if c:
            coords[k] = Fraction(c)
    return LieElement(degree, coords)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 2), st.integers(1, 2), st.data())
def test_free_bracket_bilinear_antisymmetric(da, db, data):
    hall = HallBasis(3, 5)
    a = rand_elt(hall, da, data)
    b = rand_elt(hall, db, data)
    ab = free_bracket(hall, a, b)
    ba = free_bracket(hall, b, a)
    assert (ab + ba).is_zero()
    two_a = a.scale(2)
    assert free_bracket(hall, two_a, b).coords == ab.scale(2).coords


@settings(max_examples=15, deadline=None)
@given(st.data())
def test_free_bracket_jacobi(data):
    hall = HallBasis(2, 6)
    a = rand_elt(hall, 1, data)
    b = rand_elt(hall, 2, data)
    c = rand_elt(hall, 2, data)
    total = (
        free_bracket(hall, free_bracket(hall, a, b), c)
        + free_bracket(hall, free_bracket(hall, b, c), a)
        + free_bracket(hall, free_bracket(hall, c, a), b)
    )
    assert total.is_zero()


def test_relation_elements_independent(hall35):
    rels = relation_elements(hall35)
    assert len(rels) == 3
    assert all(r.degree == 3 and not r.is_zero() for r in rels)


def test_ideal_dims(p3):
    assert p3.ideal_component_dim(3) == 3
    # dim f(3)_4 - dim ym(3)_4 = 18 - 10
    assert p3.ideal_component_dim(4) == 8


def test_ideal_fills_component_for_two_generators():
    p = ym_presentation(2, 5)
    assert p.ideal_component_dim(4) == witt_dimension(2, 4) == 3


def test_ym_dims(p3):
    assert [p3.dim(d) for d in range(1, 5)] == [3, 3, 5, 10]
    p2 = ym_presentation(2, 6)
    assert [p2.dim(d) for d in range(1, 7)] == [2, 1, 0, 0, 0, 0]
    p4 = ym_presentation(4, 4)
    assert p4.dim(3) == witt_dimension(4, 3) - 4 == 16


def test_pbw_dims_match_series(p3):
    coeffs = ym_hilbert(3, 6).integer_coeffs()
    for d in range(0, 7):
        assert len(pbw_basis(p3, d)) == coeffs[d]


def test_relations_vanish_in_quotient(p3):
    assert p3.relation_classes_vanish()


def test_ym2_central_element():
    p = ym_presentation(2, 4)
    # z = [x1,x2] spans degree 2; [z, x_i] = 0
    assert p.dim(2) == 1
    for i in range(2):
        assert p.bracket(2, {0: Fraction(1)}, 1, {i: Fraction(1)}) == {}


def test_jacobi_on_structure_constants(p3):
    assert p3.jacobi_holds(6)


def test_bracket_antisymmetry_structure_constants(p3):
    for d1, d2 in ((1, 1), (1, 2), (2, 2), (2, 3)):
        for i1 in range(p3.dim(d1)):
            for i2 in range(p3.dim(d2)):
                ab = p3.bracket_basis(d1, i1, d2, i2)
                ba = p3.bracket_basis(d2, i2, d1, i1)
                assert ab == {k: -v for k, v in ba.items()}


def test_pbw_left_mult_examples(p3):
    # x_i * 1 is the degree-1 monomial x_i
    assert pbw_left_mult(p3, 0, ()) == {((1, 0),): Fraction(1)}
    # multiplying in the wrong order costs a bracket correction term
    got = pbw_left_mult(p3, 1, ((1, 0),))
    sorted_mono = ((1, 0), (1, 1))
    assert got[sorted_mono] == 1
    bracket_terms = {k: v for k, v in got.items() if k != sorted_mono}
    # x2*x1 = x1*x2 - [x1,x2]; the class of [x1,x2] is a single basis monomial
    assert len(bracket_terms) == 1
    ((mono, coeff),) = bracket_terms.items()
    assert mono == ((2, 0),) and coeff == -1


def test_pbw_product_associative(p3):
    monos2 = pbw_basis(p3, 2)
    for a in monos2[:4]:
        for b in monos2[:4]:
            ab = pbw_multiply_monomials(p3, a, b)
            for u in ((1, 0), (1, 2)):
                lhs = {}
                for m, c in ab.items():
                    for m2, c2 in pbw_multiply_monomials(p3, (u,), m).items():
                        lhs[m2] = lhs.get(m2, 0) + c * c2
                ua = pbw_multiply_monomials(p3, (u,), a)
                rhs = {}
                for m, c in ua.items():
                    for m2, c2 in pbw_multiply_monomials(p3, m, b).items():
                        rhs[m2] = rhs.get(m2, 0) + c * c2
                assert {k: v for k, v in lhs.items() if v} == {k: v for k, v in rhs.items() if v}


def test_assoc_component_dims():
    assert assoc_component(3, 2).dim == 9
    assert assoc_component(3, 3).dim == 24
    assert assoc_component(2, 4, with_reduction=False).dim == 9


def test_assoc_agrees_with_pbw(p3):
    coeffs = ym_hilbert(3, 6).integer_coeffs()
    for d in range(0, 7):
        assert assoc_component(3, d, with_reduction=False).dim == coeffs[d]
    coeffs4 = ym_hilbert(4, 5).integer_coeffs()
    for d in range(0, 6):
        assert assoc_component(4, d, with_reduction=False).dim == coeffs4[d]


def test_assoc_reduction_kills_relations():
    comp = assoc_component(3, 3)
    n = 3
    for j in range(n):
        vec = {}
        for i in range(n):
            for word, c in (((i, i, j), 1), ((i, j, i), -2), ((j, i, i), 1)):
                w = comp.encode(word)
                vec[w] = vec.get(w, 0) + c
        assert comp.reduce_word_vector({k: v for k, v in vec.items() if v}) == {}
