import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proframe.algebra import AlgebraElement, is_positive, seminorm
from proframe.errors import IncompatibleSignatureError, NotInvertibleError, NotSelfAdjointError
from proframe.module import (
    CoefficientSequence,
    ModuleElement,
    ModuleOperator,
    ModuleSpace,
    inner_product,
    left_action,
    module_seminorm,
    op_adjoint,
    op_apply,
    op_calculus,
    op_compose,
    op_inverse,
    op_is_positive,
    op_seminorm,
    op_uniform_norm,
    sandwich_check,
    surjectivity_bounds,
)
from proframe.sampling import (
    random_element,
    random_invertible,
    random_module_element,
    random_operator,
)

seeds = st.integers(0, 2**32 - 1)
spaces = st.builds(
    ModuleSpace,
    st.sampled_from([(1,), (2,), (3,), (1, 2), (2, 3)]),
    st.integers(1, 3),
)


def scalar_space(m):
    return ModuleSpace((1,), m)


def vec(*vals):
    return ModuleElement(scalar_space(len(vals)), [np.array([vals], dtype=complex)])


def test_space_validation():
    with pytest.raises(ValueError):
        ModuleSpace((2,), 0)
    sp = ModuleSpace((2, 3), 2)
    assert sp.element_shape(1) == (3, 6)
    assert sp.operator_shape(0) == (4, 4)


def test_inner_product_examples():
    assert inner_product(vec(1, 0), vec(0, 1)).blocks[0][0, 0] == 0
    assert inner_product(vec(1, 2), vec(3, 1)).blocks[0][0, 0] == pytest.approx(5)
    assert inner_product(vec(1j, 0), vec(1, 0)).blocks[0][0, 0] == pytest.approx(1j)
    z = ModuleElement.zero(ModuleSpace((2,), 2))
    assert inner_product(z, z) == AlgebraElement.zero((2,))


def test_space_mismatch():
    with pytest.raises(IncompatibleSignatureError):
        inner_product(vec(1, 2), vec(1, 2, 3))
    with pytest.raises(IncompatibleSignatureError):
        op_apply(ModuleOperator.identity(scalar_space(3)), vec(1, 2))


def test_module_seminorm_examples():
    assert module_seminorm(vec(3, 4), 0) == pytest.approx(5.0)
    assert module_seminorm(ModuleElement.zero(ModuleSpace((1, 2), 2)), 1) == 0.0


def test_coordinates_round_trip(rng):
    sp = ModuleSpace((1, 2), 3)
    x = random_module_element(rng, sp)
    assert ModuleElement.from_coordinates(sp, x.coordinates()) == x


def test_op_apply_by_hand():
    M = ModuleOperator(scalar_space(2), [[[1, 1], [0, 1]]])
    np.testing.assert_allclose(op_apply(M, vec(1, 2)).blocks[0], [[1, 3]])
    assert op_apply(ModuleOperator.zero(scalar_space(2)), vec(1, 2)) == vec(0, 0)
    assert op_apply(ModuleOperator.identity(scalar_space(2)), vec(1, 2)) == vec(1, 2)


def test_composition_order_reverses_matrices(rng):
    sp = ModuleSpace((2,), 2)
    T, U = random_operator(rng, sp), random_operator(rng, sp)
    x = random_module_element(rng, sp)
    TU = op_compose(T, U)
    np.testing.assert_allclose(TU.blocks[0], U.blocks[0] @ T.blocks[0])
    assert op_apply(TU, x).blocks[0] == pytest.approx(op_apply(T, op_apply(U, x)).blocks[0], abs=1e-12)
    assert op_compose(T, ModuleOperator.identity(sp)) == T
    assert op_adjoint(op_adjoint(T)) == T


def test_coordinate_matrix_operator(rng):
    sp = ModuleSpace((2,), 2)
    c = np.array([[1, 2], [3, 4]])
    T = ModuleOperator.from_coordinate_matrix(sp, c)
    x = random_module_element(rng, sp)
    x1, x2 = x.coordinates()
    y1, y2 = op_apply(T, x).coordinates()
    assert y1.allclose(x1 + 3 * x2) and y2.allclose(2 * x1 + 4 * x2)


def test_norm_examples():
    sp = ModuleSpace((1, 2), 1)
    assert op_uniform_norm(ModuleOperator.identity(sp)) == pytest.approx(1.0)
    T = ModuleOperator(sp, [[[2]], np.diag([5, 1])])
    assert op_seminorm(T, 0) == pytest.approx(2.0)
    assert op_uniform_norm(T) == pytest.approx(5.0)
    assert op_seminorm(ModuleOperator(scalar_space(2), [np.diag([2, 3])]), 0) == pytest.approx(3.0)


def test_calculus_consistency(rng):
    sp = ModuleSpace((2, 1), 2)
    eye = ModuleOperator.identity(sp)
    assert op_calculus(eye, "sqrt").max_abs_diff(eye) <= 1e-14
    T = random_operator(rng, sp)
    S = op_compose(op_adjoint(T), T) + 0.1 * eye
    assert op_is_positive(S)
    r = op_calculus(S, "inv_sqrt")
    assert op_compose(r, r).max_abs_diff(op_calculus(S, "inv")) <= 1e-10
    assert op_compose(op_inverse(S), S).max_abs_diff(eye) <= 1e-10


def test_sandwich_examples(rng):
    sp = ModuleSpace((1, 2), 2)
    x = random_module_element(rng, sp)
    eye = ModuleOperator.identity(sp)
    assert sandwich_check(eye, x)
    assert sandwich_check(2.0 * eye, x)
    assert sandwich_check(random_invertible(rng, sp), x)
    with pytest.raises(NotInvertibleError):
        sandwich_check(ModuleOperator.zero(sp), x)


def test_surjectivity_bounds_examples():
    sp = scalar_space(2)
    assert surjectivity_bounds(ModuleOperator.identity(sp)) == pytest.approx((1.0, 1.0))
    assert surjectivity_bounds(ModuleOperator(sp, [np.diag([2, 3])])) == pytest.approx((4.0, 9.0))
    assert surjectivity_bounds(ModuleOperator(sp, [np.diag([1, 0])])) is None
    with pytest.raises(NotSelfAdjointError):
        surjectivity_bounds(ModuleOperator(sp, [[[0, 1], [0, 0]]]))


def test_coefficient_sequence(rng):
    sp = ModuleSpace((2,), 2)
    xs = [random_module_element(rng, sp) for _ in range(3)]
    seq = CoefficientSequence(sp, xs)
    total = seq.inner(seq)
    expected = sum((inner_product(x, x) for x in xs[1:]), inner_product(xs[0], xs[0]))
    assert total.allclose(expected)
    assert is_positive(total)
    with pytest.raises(IncompatibleSignatureError):
        CoefficientSequence(sp, [random_module_element(rng, ModuleSpace((2,), 1))])


@settings(max_examples=60, deadline=None)
@given(seed=seeds, sp=spaces)
def test_inner_product_axioms(seed, sp):
    rng = np.random.default_rng(seed)
    x, x2, y = (random_module_element(rng, sp) for _ in range(3))
    a = random_element(rng, sp.signature)
    xy = inner_product(x, y)
    assert xy.H.max_abs_diff(inner_product(y, x)) <= 1e-12
    lhs = inner_product(left_action(a, x) + x2, y)
    rhs = a @ xy + inner_product(x2, y)
    scale = max(1.0, max(np.abs(b).max() for b in rhs.blocks))
    assert lhs.max_abs_diff(rhs) <= 1e-12 * scale
    xx = inner_product(x, x)
    assert is_positive(xx)
    for k in range(sp.n_blocks):
        assert seminorm(xx, k) > 0
        assert module_seminorm(left_action(a, x), k) <= seminorm(a, k) * module_seminorm(x, k) + 1e-12


@settings(max_examples=60, deadline=None)
@given(seed=seeds, sp=spaces)
def test_operator_identities(seed, sp):
    rng = np.random.default_rng(seed)
    T, U = random_operator(rng, sp), random_operator(rng, sp)
    x, y = random_module_element(rng, sp), random_module_element(rng, sp)
    a = random_element(rng, sp.signature)
    lhs = inner_product(op_apply(T, x), y)
    assert lhs.max_abs_diff(inner_product(x, op_apply(op_adjoint(T), y))) <= 1e-12 * max(1.0, op_uniform_norm(T) * 10)
    for u, v in zip(op_apply(T, left_action(a, x)).blocks, left_action(a, op_apply(T, x)).blocks):
        np.testing.assert_allclose(u, v, atol=1e-11)
    # associativity of the matrix products, so equal up to rounding only
    for u, v in zip(op_apply(op_compose(T, U), x).blocks, op_apply(T, op_apply(U, x)).blocks):
        np.testing.assert_allclose(u, v, atol=1e-12 * max(1.0, np.abs(v).max()))
    for k in range(sp.n_blocks):
        assert module_seminorm(op_apply(T, x), k) <= op_seminorm(T, k) * module_seminorm(x, k) + 1e-10
        assert op_seminorm(T, k) <= op_uniform_norm(T)


@settings(max_examples=60, deadline=None)
@given(seed=seeds, sp=spaces)
def test_sandwich_random(seed, sp):
    rng = np.random.default_rng(seed)
    assert sandwich_check(random_invertible(rng, sp), random_module_element(rng, sp))


@settings(max_examples=40, deadline=None)
@given(seed=seeds, sp=spaces)
def test_positive_operator_gives_positive_inner_products(seed, sp):
    rng = np.random.default_rng(seed)
    T = random_operator(rng, sp)
    P = op_compose(op_adjoint(T), T)
    assert op_is_positive(P)
    x = random_module_element(rng, sp)
    assert is_positive(inner_product(op_apply(P, x), x), 1e-9)
