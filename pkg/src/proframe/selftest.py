"""Seeded invariant suite behind ``proframe selftest``.

Each check returns ``(name, passed, worst_value)``.  Everything is driven
from one seed so repeated runs print identical reports.
"""

import numpy as np

from .algebra import order_leq, positive_calculus, seminorm
from .errors import ProframeError
from .frames import (
    canonical_dual,
    compose_right,
    dual_residual,
    extremal_element,
    frame_energy,
    frame_operator,
    gen_frame,
    optimal_bounds,
    reconstruct,
)
from .fusion import FusionSystem, fusion_dual_pair, frame_operator_conjugation_check
from .module import ModuleOperator, ModuleSpace, inner_product, op_calculus, op_is_positive, op_sub
from .perturbation import deviation_constants, difference_family, perturb_check
from .sampling import (
    random_element,
    random_module_element,
    random_positive,
    random_self_adjoint,
    random_unitary,
)
from .tensor import tensor_frame, tensor_operator

DEFAULT_SIGNATURES = ((1,), (2,), (1, 2))


def _rel(x):
    return max(1.0, max(float(np.linalg.norm(b, 2)) for b in x.blocks))


def check_sandwich(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 3)
    A, B = optimal_bounds(F)
    s = frame_operator(F)
    eye = ModuleOperator.identity(space)
    ok = op_is_positive(op_sub(s, A * eye)) and op_is_positive(op_sub(B * eye, s))
    x = extremal_element(F, "lower")
    xx, sx = inner_product(x, x), inner_product(x, s(x))
    ok &= not order_leq((A + 1e-6) * xx, sx)
    x = extremal_element(F, "upper")
    xx, sx = inner_product(x, x), inner_product(x, s(x))
    ok &= not order_leq(sx, (B - 1e-6) * xx)
    return ok, 0.0


def check_reconstruction(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 3)
    worst = 0.0
    for _ in range(n):
        x = random_module_element(rng, space)
        r = reconstruct(F, x)
        worst = max(worst, max(float(np.linalg.norm(a - b, 2)) for a, b in zip(r.blocks, x.blocks)) / _rel(x))
    return worst <= 1e-8, worst


def check_dual(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 3)
    D = canonical_dual(F)
    res = dual_residual(F, D)
    A, B = optimal_bounds(F)
    a2, b2 = optimal_bounds(D)
    err = max(abs(a2 - 1 / B) / (1 / B), abs(b2 - 1 / A) / (1 / A))
    return res <= 1e-10 and err <= 1e-8, max(res, err)


def check_compose(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 3)
    Q = random_self_adjoint(rng, space)
    _, b = compose_right(F, Q)
    A, B = optimal_bounds(F)
    sv = [np.linalg.svd(m, compute_uv=False) for m in Q.blocks]
    lo, hi = min(s[-1] for s in sv) ** 2, max(s[0] for s in sv) ** 2
    ok = b.lower >= A * lo - 1e-8 and b.upper <= B * hi + 1e-8
    return ok, 0.0


def check_perturbation(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 3)
    R = gen_frame(int(rng.integers(2**31)), space, 3)
    A = optimal_bounds(F).lower
    c = np.sqrt(0.5 * A / optimal_bounds(R).upper)
    R = type(R)([c * r for r in R.ops], space)
    rep = perturb_check(F, R)
    ok = rep.satisfied and rep.frame_diff.lower >= rep.guaranteed_lower - 1e-8
    ok &= rep.frame_diff.upper <= rep.guaranteed_upper + 1e-8
    return ok, 0.0


def check_deviation(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 3)
    R = gen_frame(int(rng.integers(2**31)), space, 3)
    dc = deviation_constants(F, R)
    worst = 0.0
    for _ in range(n):
        x = random_module_element(rng, space)
        d = frame_energy(difference_family(F, R), x)
        g = frame_energy(F, x)
        for k in range(space.n_blocks):
            ratio = np.linalg.norm(d.blocks[k], 2) / np.linalg.norm(g.blocks[k], 2)
            worst = max(worst, ratio - dc.M_against_T)
    return worst <= 1e-8, worst


def check_tensor(rng, space, n):
    F = gen_frame(int(rng.integers(2**31)), space, 2)
    G = gen_frame(int(rng.integers(2**31)), ModuleSpace(space.signature, 1), 2)
    H, b = tensor_frame(F, G)
    sfg = tensor_operator(frame_operator(F), frame_operator(G))
    err = frame_operator(H).max_abs_diff(sfg)
    (a1, b1), (a2, b2) = optimal_bounds(F), optimal_bounds(G)
    err_b = max(abs(b.lower - a1 * a2), abs(b.upper - b1 * b2))
    return err <= 1e-12 * max(1.0, b.upper) and err_b <= 1e-10 * max(1.0, b.upper), max(err, err_b)


def check_fusion(rng, space, n):
    blocks_p1, blocks_p2 = [], []
    for k in range(space.n_blocks):
        d = space.operator_shape(k)[0]
        u = random_unitary(rng, d)
        h = max(1, d // 2)
        blocks_p1.append(u[:, :h] @ u[:, :h].conj().T)
        blocks_p2.append(u[:, h - 1:] @ u[:, h - 1:].conj().T)
    p1, p2 = ModuleOperator(space, blocks_p1), ModuleOperator(space, blocks_p2)
    sysw = FusionSystem.build([p1, p2], [1.0, 2.0])
    T, Q = fusion_dual_pair(sysw)
    res = dual_residual(T, Q)
    return res <= 1e-10 and frame_operator_conjugation_check(sysw), res


def check_preliminaries(rng, space, n):
    sig = space.signature
    ok = True
    for _ in range(n):
        a = random_positive(rng, sig, definite=True)
        b = a + random_positive(rng, sig)
        k = int(rng.integers(sig.n_blocks))
        ok &= seminorm(a, k) <= seminorm(b, k) + 1e-9
        ok &= order_leq(positive_calculus(b, "inv"), positive_calculus(a, "inv"))
        c = random_element(rng, sig)
        ok &= order_leq(c.H @ a @ c, c.H @ b @ c)
    return bool(ok), 0.0


CHECKS = (
    ("frame sandwich", check_sandwich),
    ("reconstruction", check_reconstruction),
    ("canonical dual", check_dual),
    ("surjective composition", check_compose),
    ("perturbation", check_perturbation),
    ("deviation constant", check_deviation),
    ("tensor product", check_tensor),
    ("fusion dual pair", check_fusion),
    ("preliminaries", check_preliminaries),
)


def run_selftest(seed, signatures=DEFAULT_SIGNATURES, rank=2, samples=20):
    """Run every check on every signature; returns a list of result rows."""
    rows = []
    for sig in signatures:
        space = ModuleSpace(tuple(sig), rank)
        for name, fn in CHECKS:
            rng = np.random.default_rng([seed, len(rows)])
            try:
                ok, value = fn(rng, space, samples)
            except ProframeError as exc:
                ok, value = False, float("nan")
                name = f"{name} ({type(exc).__name__})"
            rows.append((name, tuple(sig), bool(ok), float(value)))
    return rows
