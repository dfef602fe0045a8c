"""Tests for the graded coefficient module layer."""

from fractions import Fraction

import pytest

from ymh.exact_linalg import SparseMatrix
from ymh.formal_series import w_hilbert, ym_hilbert
from ymh.lie_engine import ym_presentation
from ymh.module_lab import (
    GradedModule,
    ModuleInvariantError,
    direct_sum,
    nonzerodivisor_check,
    s_tym_adjoint_module,
    shift,
    sv_regular_module,
    sym_adjoint_module,
    tensor_module,
    trivial_module,
    w_module,
)


@pytest.fixture(scope="module")
def p3():
    return ym_presentation(3, 6)


@pytest.fixture(scope="module")
def w3():
    return w_module(3, 8)


def test_trivial_module():
    t = trivial_module(3, 2)
    assert t.dim(0) == 1 and t.dim(1) == 0
    assert t.action(0, 0).is_zero()
    assert t.action(0, 0).rows == 0 and t.action(0, 0).cols == 1


def test_sv_regular_dims_and_commutativity():
    sv = sv_regular_module(3, 5)
    assert [sv.dim(d) for d in range(6)] == [1, 3, 6, 10, 15, 21]
    sv.check_invariants()


def test_shift_convention():
    t = trivial_module(3, 0)
    s = shift(t, -4)
    # one dimension concentrated in degree 4
    assert s.dim(4) == 1
    assert s.dim(0) == 0


def test_direct_sum_dims():
    a = trivial_module(3, 2)
    b = sv_regular_module(3, 2)
    s = direct_sum(a, b)
    assert [s.dim(d) for d in range(3)] == [2, 3, 6]


def test_tensor_dims_are_convolution(w3):
    ww = tensor_module(w3, w3)
    wd = [w3.dim(d) for d in range(0, 9)]
    for m in range(4, 9):
        assert ww.dim(m) == sum(wd[a] * wd[m - a] for a in range(0, m + 1))
    assert ww.dim(4) == 9


def test_sym_adjoint_dims_and_degree_zero(p3):
    sym = sym_adjoint_module(p3, 6)
    assert [sym.dim(d) for d in range(7)] == ym_hilbert(3, 6).integer_coeffs()
    # generators act by zero on the degree-0 line
    for i in range(3):
        assert sym.action(i, 0).is_zero()


def test_sym_adjoint_two_generators_bracket():
    p = ym_presentation(2, 5)
    sym = sym_adjoint_module(p, 4)
    # acting by x on the monomial y lands on the single degree-2 class [x,y]
    col = sym.action(0, 1).column(1)
    assert list(col.values()) == [Fraction(1)] or list(col.values()) == [Fraction(-1)]


def test_s_tym_submodule_of_sym(p3):
    s_all = s_tym_adjoint_module(p3, 6)
    assert s_all.dim(0) == 1 and s_all.dim(1) == 0
    s1 = s_tym_adjoint_module(p3, 6, factors=1)
    assert [s1.dim(d) for d in range(7)] == [0, 0, 3, 5, 10, 24, 50]
    # actions restrict: the one-factor piece is closed under every generator
    s1.check_invariants()


def test_s1_tym_q_injective_in_low_degree(p3):
    s1 = s_tym_adjoint_module(p3, 6, factors=1)
    mat = s1.q_matrix(2)
    from ymh.exact_linalg import rank

    assert rank(mat) == s1.dim(2)  # injective into degree 4


def test_w_dims_match_series():
    for n in (2, 3, 4, 5):
        w = w_module(n, 8)
        assert [w.dim(d) for d in range(2, 9)] == w_hilbert(n, 8).integer_coeffs()[2:]


def test_w2_is_one_line_with_zero_actions():
    w2 = w_module(2, 6)
    assert w2.dim(2) == 1
    for i in range(2):
        assert w2.action(i, 2).is_zero()


def test_w_generated_in_degree_two(w3):
    # iterated generator actions starting from degree 2 span every component
    from ymh.exact_linalg import rank_of_vectors

    current = [{k: Fraction(1)} for k in range(w3.dim(2))]
    for m in range(2, 8):
        nxt = []
        for vec in current:
            for i in range(3):
                img = w3.action(i, m).apply(vec)
                if img:
                    nxt.append(img)
        assert rank_of_vectors(nxt) == w3.dim(m + 1)
        current = nxt


def test_q_acts_by_zero_on_w(w3):
    for m in range(2, 7):
        assert w3.q_matrix(m).is_zero()


def test_generators_injective_on_w(w3):
    for i in range(3):
        rep = nonzerodivisor_check(w3, ("x", i), 8)
        assert rep.all_injective


def test_q_injective_on_w_tensor_w(w3):
    ww = tensor_module(w3, w3)
    rep = nonzerodivisor_check(ww, "q", 8)
    assert rep.all_injective
    assert set(rep.per_degree) == {4, 5, 6}


def test_q_zero_map_reported_on_w(w3):
    rep = nonzerodivisor_check(w3, "q", 8)
    assert rep.all_zero
    assert not rep.all_injective


def test_invariant_violation_detected():
    # a fake module whose two actions do not commute
    bad = {
        (0, 0): SparseMatrix(1, 1, {(0, 0): 1}),
        (1, 0): SparseMatrix(1, 1, {(0, 0): 1}),
        (0, 1): SparseMatrix(1, 1, {(0, 0): 1}),
        (1, 1): SparseMatrix(1, 1, {(0, 0): 2}),
    }
    with pytest.raises(ModuleInvariantError):
        GradedModule("sv", 2, 0, 2, {0: 1, 1: 1, 2: 1}, bad, name="bad")
