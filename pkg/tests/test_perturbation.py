import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from proframe.errors import IncompatibleSignatureError, NotAFrameError
from proframe.frames import OperatorFrame, canonical_dual, frame_energy, gen_frame, optimal_bounds
from proframe.module import ModuleOperator, ModuleSpace
from proframe.perturbation import (
    DeviationConstants,
    deviation_constants,
    deviation_witnesses,
    difference_family,
    equivalence_check,
    pencil_max,
    perturb_check,
)
from proframe.sampling import random_module_element

seeds = st.integers(0, 2**31 - 1)
spaces = st.builds(
    ModuleSpace,
    st.sampled_from([(1,), (2,), (3,), (1, 2), (2, 3)]),
    st.integers(1, 3),
)

SCALAR = ModuleSpace((1,), 1)


def scalars(*vals):
    return OperatorFrame([ModuleOperator(SCALAR, [[[v]]]) for v in vals])


def scaled(F, c):
    return OperatorFrame([c * t for t in F.ops], F.space)


def test_scalar_perturbation_is_exact():
    r = perturb_check(scalars(1.0), scalars(0.25))
    assert (r.bounds_T.lower, r.bounds_T.upper) == (1.0, 1.0)
    assert r.bessel_R == 0.0625
    assert abs(r.frame_diff.lower - 0.5625) <= 1e-12
    assert abs(r.frame_diff.upper - 0.5625) <= 1e-12
    assert abs(r.guaranteed_lower - 0.5625) <= 1e-12
    assert r.satisfied


def test_zero_perturbation_keeps_bounds():
    F = gen_frame(1, ModuleSpace((1, 2), 2), 3)
    R = scaled(F, 0.0)
    r = perturb_check(F, R)
    assert tuple(r.frame_diff) == pytest.approx(tuple(optimal_bounds(F)))
    assert r.bessel_R == 0.0


def test_shape_mismatch():
    with pytest.raises(IncompatibleSignatureError):
        difference_family(scalars(1.0), scalars(1.0, 2.0))


@settings(max_examples=50, deadline=None)
@given(seed=seeds, sp=spaces, shrink=st.floats(0.01, 0.99))
def test_perturbation_guarantees(seed, sp, shrink):
    F = gen_frame(seed, sp, sp.rank + 2)
    R = gen_frame(seed + 1, sp, sp.rank + 2)
    A = optimal_bounds(F).lower
    R = scaled(R, np.sqrt(shrink * A / optimal_bounds(R).upper))
    r = perturb_check(F, R)
    assert r.bessel_R < r.bounds_T.lower
    assert r.satisfied
    assert r.frame_diff.lower >= r.guaranteed_lower - 1e-8
    assert r.frame_diff.upper <= r.guaranteed_upper + 1e-8


def test_deviation_scalar_example():
    dc = deviation_constants(scalars(1.0), scalars(0.5))
    assert dc.M_against_T == pytest.approx(0.25)
    assert dc.M_against_R == pytest.approx(1.0)
    assert dc.M == pytest.approx(1.0)


def test_deviation_zero_when_equal():
    F = gen_frame(3, ModuleSpace((2,), 2), 3)
    dc = deviation_constants(F, F)
    assert dc.M_against_T == 0.0 and dc.M_against_R == 0.0


def test_deviation_absent_side():
    F = gen_frame(3, ModuleSpace((2,), 2), 3)
    dc = deviation_constants(F, scaled(F, 0.0))
    assert dc.M_against_T == pytest.approx(1.0)
    assert dc.M_against_R is None and dc.M is None and not dc.finite
    assert DeviationConstants(0.5, 0.25).M == 0.5


def test_pencil_max_by_hand():
    lam, u = pencil_max(np.diag([1.0, 3.0]), np.diag([2.0, 1.0]))
    assert lam == pytest.approx(3.0)
    u = u.conj()
    assert np.vdot(u, np.diag([1.0, 3.0]) @ u).real == pytest.approx(3.0 * np.vdot(u, np.diag([2.0, 1.0]) @ u).real)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, sp=spaces)
def test_deviation_is_optimal(seed, sp):
    rng = np.random.default_rng(seed)
    F = gen_frame(seed, sp, 3)
    R = gen_frame(seed + 7, sp, 3)
    dc = deviation_constants(F, R)
    D = difference_family(F, R)
    for _ in range(50):
        x = random_module_element(rng, sp)
        d, g = frame_energy(D, x), frame_energy(F, x)
        for k in range(sp.n_blocks):
            assert np.linalg.norm(d.blocks[k], 2) <= dc.M_against_T * np.linalg.norm(g.blocks[k], 2) * (1 + 1e-8) + 1e-12
    assert max(lam for lam, _ in deviation_witnesses(F, R)) == pytest.approx(dc.M_against_T, abs=1e-12)
    swapped = deviation_constants(R, F)
    assert swapped.M_against_T == pytest.approx(dc.M_against_R, rel=1e-9)


@settings(max_examples=40, deadline=None)
@given(seed=seeds, sp=spaces)
def test_derived_bounds_hold(seed, sp):
    F = gen_frame(seed, sp, sp.rank + 1)
    R = gen_frame(seed + 3, sp, sp.rank + 1)
    assert equivalence_check(F, R)
    dc = deviation_constants(F, R)
    (A, B), (a, b) = optimal_bounds(F), optimal_bounds(R)
    s = (np.sqrt(dc.M) + 1) ** 2
    assert A / s <= a + 1e-10
    assert b <= B * s + 1e-10


def test_equivalence_examples():
    F = gen_frame(2, ModuleSpace((1, 2), 2), 4)
    assert equivalence_check(F, F)
    assert equivalence_check(F, canonical_dual(F))
    assert deviation_constants(F, canonical_dual(F)).finite
    assert not equivalence_check(F, scaled(F, 0.0))
    with pytest.raises(NotAFrameError):
        equivalence_check(scaled(F, 0.0), F)
