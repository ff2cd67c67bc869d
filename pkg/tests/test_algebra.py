import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proframe.algebra import (
    AlgebraElement,
    AlgebraSignature,
    BlockHom,
    alg_arith,
    hermitian_spectrum,
    hom_apply,
    is_positive,
    order_leq,
    positive_calculus,
    seminorm,
)
from proframe.errors import (
    BlockIndexError,
    HermitianRequiredError,
    IncompatibleSignatureError,
    NotInvertibleError,
    NotPositiveError,
)
from proframe.sampling import random_element, random_positive, random_unitary

seeds = st.integers(0, 2**32 - 1)
signatures = st.sampled_from([(1,), (2,), (3,), (1, 2), (2, 3)])


def diag(*vals):
    return AlgebraElement.from_blocks([np.diag(vals)])


def test_signature_validation():
    with pytest.raises(ValueError):
        AlgebraSignature(())
    with pytest.raises(ValueError):
        AlgebraSignature((2, 0))
    assert AlgebraSignature([1, 2]) == AlgebraSignature((1, 2))


def test_block_shape_enforced():
    with pytest.raises(ValueError):
        AlgebraElement(AlgebraSignature((2,)), [np.eye(3)])
    with pytest.raises(IncompatibleSignatureError):
        AlgebraElement(AlgebraSignature((2, 1)), [np.eye(2)])


def test_elements_are_immutable():
    a = AlgebraElement.unit((2,))
    with pytest.raises(AttributeError):
        a.blocks = ()
    with pytest.raises(ValueError):
        a.blocks[0][0, 0] = 5


def test_matrix_product_by_hand():
    a = AlgebraElement.from_blocks([[[0, 1], [0, 0]]])
    b = AlgebraElement.from_blocks([[[0, 0], [1, 0]]])
    assert alg_arith(a, b, "mul") == AlgebraElement.from_blocks([[[1, 0], [0, 0]]])


def test_unit_and_involution(rng):
    a = random_element(rng, (1, 2))
    one = AlgebraElement.unit((1, 2))
    assert (one @ a).allclose(a)
    assert alg_arith(alg_arith(a, kind="adjoint"), kind="adjoint") == a
    assert alg_arith(a, kind=("scale", 2.0)).allclose(a + a)


def test_signature_mismatch():
    with pytest.raises(IncompatibleSignatureError):
        AlgebraElement.unit((2,)) + AlgebraElement.unit((1, 1))
    with pytest.raises(IncompatibleSignatureError):
        order_leq(AlgebraElement.unit((2,)), AlgebraElement.unit((3,)))


def test_seminorm_values():
    assert seminorm(AlgebraElement.unit((2, 3)), 1) == pytest.approx(1.0)
    assert seminorm(diag(3, -4), 0) == pytest.approx(4.0)
    assert seminorm(AlgebraElement.zero((2,)), 0) == 0.0
    with pytest.raises(BlockIndexError):
        seminorm(AlgebraElement.unit((2,)), 1)


def test_positivity_examples(rng):
    a = random_element(rng, (2, 3))
    assert is_positive(a.H @ a)
    assert not is_positive(diag(1, -1))
    assert is_positive(diag(0, 0))
    assert not is_positive(AlgebraElement.from_blocks([[[0, 1], [0, 0]]]))


def test_order_examples(rng):
    a = random_element(rng, (2,))
    assert order_leq(a, a)
    assert order_leq(AlgebraElement.zero((2,)), a.H @ a)
    assert order_leq(diag(1, 1), diag(2, 3))
    assert not order_leq(diag(2, 3), diag(1, 1))


def test_spectrum_examples():
    np.testing.assert_allclose(hermitian_spectrum(AlgebraElement.unit((3,)))[0], [1, 1, 1])
    w = hermitian_spectrum(AlgebraElement.from_blocks([[[2, 1], [1, 1]]]))[0]
    np.testing.assert_allclose(w, [(3 - np.sqrt(5)) / 2, (3 + np.sqrt(5)) / 2], atol=1e-14)
    np.testing.assert_allclose(hermitian_spectrum(diag(0, 5))[0], [0, 5])
    with pytest.raises(HermitianRequiredError):
        hermitian_spectrum(AlgebraElement.from_blocks([[[0, 1], [0, 0]]]))


def test_calculus_examples():
    one = AlgebraElement.unit((2, 1))
    assert positive_calculus(one, "sqrt").allclose(one)
    assert positive_calculus(diag(2, 4), "inv").allclose(diag(0.5, 0.25))
    assert positive_calculus(diag(4, 9), "sqrt").allclose(diag(2, 3))
    assert positive_calculus(diag(4, 16), "inv_sqrt").allclose(diag(0.5, 0.25))
    with pytest.raises(NotInvertibleError):
        positive_calculus(diag(1, 0), "inv")
    with pytest.raises(NotPositiveError):
        positive_calculus(diag(1, -1), "sqrt")


@settings(max_examples=50, deadline=None)
@given(seed=seeds, sig=signatures)
def test_sqrt_squares_back(seed, sig):
    rng = np.random.default_rng(seed)
    a = random_positive(rng, sig)
    r = positive_calculus(a, "sqrt")
    assert (r @ r).max_abs_diff(a) <= 1e-10 * max(1.0, max(seminorm(a, k) for k in range(len(sig))))


@settings(max_examples=50, deadline=None)
@given(seed=seeds, sig=signatures)
def test_cstar_identity_and_submultiplicativity(seed, sig):
    rng = np.random.default_rng(seed)
    a, b = random_element(rng, sig), random_element(rng, sig)
    for k in range(len(sig)):
        assert seminorm(a.H @ a, k) == pytest.approx(seminorm(a, k) ** 2, rel=1e-12)
        assert seminorm(a @ b, k) <= seminorm(a, k) * seminorm(b, k) + 1e-12
        assert seminorm(a.H, k) == pytest.approx(seminorm(a, k), rel=1e-12)


def test_hom_identity_and_amplification(rng):
    a = random_element(rng, (2, 3))
    assert hom_apply(BlockHom.identity((2, 3)), a) == a
    u0, u1 = random_unitary(rng, 2), random_unitary(rng, 2)
    amp = BlockHom((2, 3), (2, 2), [0, 0], [u0, u1])
    out = hom_apply(amp, a)
    np.testing.assert_allclose(out.blocks[0], u0 @ a.blocks[0] @ u0.conj().T)
    np.testing.assert_allclose(out.blocks[1], u1 @ a.blocks[0] @ u1.conj().T)


def test_hom_rejects_bad_maps(rng):
    with pytest.raises(IncompatibleSignatureError):
        BlockHom((2, 3), (3,), [0])
    with pytest.raises(ValueError):
        BlockHom((2,), (2,), [0], [np.array([[1, 1], [0, 1]])])
    with pytest.raises(IncompatibleSignatureError):
        hom_apply(BlockHom.identity((2,)), AlgebraElement.unit((3,)))


@settings(max_examples=40, deadline=None)
@given(seed=seeds)
def test_hom_is_unital_star_homomorphism(seed):
    rng = np.random.default_rng(seed)
    phi = BlockHom((2, 3), (3, 2, 2), [1, 0, 0], [random_unitary(rng, n) for n in (3, 2, 2)])
    a, b = random_element(rng, (2, 3)), random_element(rng, (2, 3))
    assert phi(a @ b).max_abs_diff(phi(a) @ phi(b)) <= 1e-12
    assert phi(a.H).max_abs_diff(phi(a).H) <= 1e-12
    assert phi(AlgebraElement.unit((2, 3))).max_abs_diff(AlgebraElement.unit((3, 2, 2))) <= 1e-12


def test_hom_composition(rng):
    phi = BlockHom((2, 3), (3, 2), [1, 0], [random_unitary(rng, 3), random_unitary(rng, 2)])
    psi = BlockHom((3, 2), (2, 2, 3), [1, 1, 0], [random_unitary(rng, n) for n in (2, 2, 3)])
    a = random_element(rng, (2, 3))
    assert psi.compose(phi)(a).max_abs_diff(psi(phi(a))) <= 1e-12


@settings(max_examples=40, deadline=None)
@given(seed=seeds, sig=signatures)
def test_hom_is_increasing(seed, sig):
    rng = np.random.default_rng(seed)
    a = random_positive(rng, sig)
    b = a + random_positive(rng, sig)
    phi = BlockHom(sig, sig[::-1], list(range(len(sig)))[::-1], [random_unitary(rng, n) for n in sig[::-1]])
    d = phi(b) - phi(a)
    for blk in d.blocks:
        assert np.linalg.eigvalsh(0.5 * (blk + blk.conj().T))[0] >= -1e-10


@settings(max_examples=40, deadline=None)
@given(seed=seeds, sig=signatures)
def test_order_properties_on_positives(seed, sig):
    rng = np.random.default_rng(seed)
    a = random_positive(rng, sig, definite=True)
    b = a + random_positive(rng, sig)
    c = random_element(rng, sig)
    for k in range(len(sig)):
        assert seminorm(a, k) <= seminorm(b, k) + 1e-9
    assert order_leq(positive_calculus(b, "inv"), positive_calculus(a, "inv"))
    assert order_leq(c.H @ a @ c, c.H @ b @ c)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, sig=signatures)
def test_square_root_monotone_on_commuting_pairs(seed, sig):
    rng = np.random.default_rng(seed)
    us = [random_unitary(rng, n) for n in sig]
    la = [rng.uniform(0, 2, n) for n in sig]
    lb = [x + rng.uniform(0, 1, x.size) for x in la]
    a = AlgebraElement.from_blocks([u @ np.diag(x) @ u.conj().T for u, x in zip(us, la)])
    b = AlgebraElement.from_blocks([u @ np.diag(x) @ u.conj().T for u, x in zip(us, lb)])
    assert order_leq(a @ a, b @ b)
    assert order_leq(a, b)
