"""Operator frames on free Hilbert modules.

A finite family ``{T_i}`` of adjointable operators is an operator frame
when ``A <x,x> <= sum_i <T_i x, T_i x> <= B <x,x>`` for all x.  With the
row convention the middle term is ``X S X^H`` where ``S_k = sum_i M_ik M_ik^H``
is the frame-operator block, so the optimal constants are the extreme
eigenvalues of the blocks of S.
"""

import re
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from . import _linalg
from ._linalg import DEFAULT_TOL
from .algebra import AlgebraElement, BlockHom, hom_apply
from .errors import (
    IncompatibleMapError,
    IncompatibleSignatureError,
    NotAFrameError,
    NotSurjectiveError,
)
from .module import (
    CoefficientSequence,
    ModuleElement,
    ModuleOperator,
    ModuleSpace,
    inner_product,
    op_apply,
    op_calculus,
    op_compose,
    op_inverse_uniform_norm,
    op_uniform_norm,
    surjectivity_bounds,
)
from .sampling import complex_gaussian, random_module_element

__all__ = [
    "OperatorFrame",
    "FrameBounds",
    "FrameKind",
    "Classification",
    "ThetaMap",
    "frame_operator",
    "frame_energy",
    "analysis_apply",
    "synthesis_apply",
    "optimal_bounds",
    "classify",
    "extremal_element",
    "reconstruct",
    "canonical_dual",
    "dual_residual",
    "verify_dual",
    "reconstruct_operator",
    "dual_bound_estimates",
    "compose_right",
    "compose_left",
    "transform",
    "transport_residual",
    "vector_frame_lift",
    "gen_frame",
    "parse_mode",
]


class OperatorFrame:
    """Finite ordered family of operators on one module."""

    __slots__ = ("space", "ops")

    def __init__(self, ops, space=None):
        ops = tuple(ops)
        if not ops:
            raise ValueError("an operator frame needs at least one operator")
        space = ops[0].space if space is None else space
        for i, t in enumerate(ops):
            if not isinstance(t, ModuleOperator):
                raise TypeError(f"item {i} is not a ModuleOperator")
            if t.space != space:
                raise IncompatibleSignatureError(f"operator {i} lives on a different module")
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "ops", ops)

    def __setattr__(self, name, value):
        raise AttributeError("OperatorFrame is immutable")

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __getitem__(self, i):
        return self.ops[i]

    def __eq__(self, other):
        if not isinstance(other, OperatorFrame):
            return NotImplemented
        return self.space == other.space and len(self) == len(other) and all(
            a == b for a, b in zip(self.ops, other.ops)
        )

    __hash__ = None

    def __repr__(self):
        return f"OperatorFrame(|J|={len(self)}, rank={self.space.rank}, dims={self.space.signature.block_dims})"


@dataclass(frozen=True)
class FrameBounds:
    """Lower/upper frame bounds; ``per_block`` holds the extremes of each block."""

    lower: float
    upper: float
    optimal: bool = True
    tol: float = DEFAULT_TOL
    per_block: tuple = field(default=(), compare=False)

    def __post_init__(self):
        if not (0.0 <= self.lower <= self.upper * (1 + 1e-12) + 1e-300):
            raise ValueError(f"bounds must satisfy 0 <= A <= B, got ({self.lower}, {self.upper})")

    def __iter__(self):
        return iter((self.lower, self.upper))


class FrameKind(str, Enum):
    DEGENERATE = "non_bessel_degenerate"
    BESSEL_ONLY = "bessel_only"
    FRAME = "frame"
    TIGHT = "tight"
    PARSEVAL = "parseval"


@dataclass(frozen=True)
class Classification:
    kind: FrameKind
    constant: float = None

    @property
    def is_frame(self):
        return self.kind in (FrameKind.FRAME, FrameKind.TIGHT, FrameKind.PARSEVAL)

    def __str__(self):
        if self.kind is FrameKind.TIGHT:
            return f"tight({self.constant:.12g})"
        return self.kind.value


def _check_same_space(F, G):
    if F.space != G.space:
        raise IncompatibleSignatureError("families live on different modules")
    if len(F) != len(G):
        raise IncompatibleSignatureError(f"index sets differ: {len(F)} vs {len(G)}")


def _frame_operator_blocks(F):
    out = []
    for k in range(F.space.n_blocks):
        acc = np.zeros(F.space.operator_shape(k), dtype=np.complex128)
        for t in F.ops:
            m = t.blocks[k]
            acc += m @ m.conj().T
        out.append(0.5 * (acc + acc.conj().T))
    return out


def frame_operator(F):
    """``S = sum_i T_i^* T_i``, accumulated in index order."""
    return ModuleOperator(F.space, _frame_operator_blocks(F))


def frame_energy(F, x):
    """``sum_i <T_i x, T_i x>`` as an algebra element."""
    total = AlgebraElement.zero(F.space.signature)
    for t in F.ops:
        tx = op_apply(t, x)
        total = total + inner_product(tx, tx)
    return total


def analysis_apply(F, x):
    """``R x = (T_i x)_i``."""
    if x.space != F.space:
        raise IncompatibleSignatureError("element lives on a different module")
    return CoefficientSequence(F.space, [op_apply(t, x) for t in F.ops])


def synthesis_apply(F, c):
    """``R^* (x_i) = sum_i T_i^* x_i``."""
    if len(c) != len(F):
        raise IncompatibleSignatureError(f"need {len(F)} coefficients, got {len(c)}")
    total = ModuleElement.zero(F.space)
    for t, xi in zip(F.ops, c):
        total = total + op_apply(t.H, xi)
    return total


def _block_eigs(blocks):
    return [np.linalg.eigvalsh(b) for b in blocks]


def _bounds_from_blocks(blocks, tol):
    eigs = _block_eigs(blocks)
    per_block = tuple((max(float(w[0]), 0.0), max(float(w[-1]), 0.0)) for w in eigs)
    lower = min(lo for lo, _ in per_block)
    upper = max(hi for _, hi in per_block)
    return FrameBounds(lower, upper, optimal=True, tol=tol, per_block=per_block)


def optimal_bounds(F, tol=DEFAULT_TOL):
    """Extreme eigenvalues of the frame operator taken over all blocks.

    ``S_k - A I`` is PSD for every block exactly when the module inequality
    ``A <x,x> <= <Sx, x>`` holds for every x, so these are the best
    constants.  Tiny negative eigenvalues from rounding are clipped to 0.
    """
    return _bounds_from_blocks(_frame_operator_blocks(F), tol)


def classify(F, tol=DEFAULT_TOL):
    if not isinstance(F, OperatorFrame):
        try:
            F = OperatorFrame(list(F))
        except (TypeError, ValueError):
            return Classification(FrameKind.DEGENERATE)
    if not all(np.all(np.isfinite(m)) for t in F.ops for m in t.blocks):
        return Classification(FrameKind.DEGENERATE)
    b = optimal_bounds(F, tol)
    if b.lower <= tol:
        return Classification(FrameKind.BESSEL_ONLY)
    if abs(b.lower - b.upper) <= tol * max(1.0, b.upper):
        lam = 0.5 * (b.lower + b.upper)
        if abs(lam - 1.0) <= tol:
            return Classification(FrameKind.PARSEVAL, 1.0)
        return Classification(FrameKind.TIGHT, lam)
    return Classification(FrameKind.FRAME)


def extremal_element(F, which="lower"):
    """Element attaining the lower (or upper) optimal bound.

    Its first row on the extremal block is ``v^H`` for the extremal
    eigenvector ``v`` of S; every other entry is zero.  For it
    ``<Sx, x> = lambda <x, x>``, so nudging the bound past lambda breaks
    the frame inequality.
    """
    eigs = [np.linalg.eigh(b) for b in _frame_operator_blocks(F)]
    if which == "lower":
        k = int(np.argmin([w[0] for w, _ in eigs]))
        v = eigs[k][1][:, 0]
    elif which == "upper":
        k = int(np.argmax([w[-1] for w, _ in eigs]))
        v = eigs[k][1][:, -1]
    else:
        raise ValueError("which must be 'lower' or 'upper'")
    blocks = [np.zeros(F.space.element_shape(j), dtype=np.complex128) for j in range(F.space.n_blocks)]
    blocks[k][0, :] = v.conj()
    return ModuleElement(F.space, blocks)


def _require_frame(F, tol):
    b = optimal_bounds(F, tol)
    if b.lower <= tol:
        raise NotAFrameError(f"lower optimal bound {b.lower:.3e} is not above tolerance {tol:g}")
    return b


def _inverse_frame_operator(F, tol):
    _require_frame(F, tol)
    return op_calculus(frame_operator(F), "inv", tol)


def reconstruct(F, x, tol=DEFAULT_TOL):
    """``sum_i S^{-1} T_i^* T_i x``, which returns ``x`` for a frame."""
    s_inv = _inverse_frame_operator(F, tol)
    total = ModuleElement.zero(F.space)
    for t in F.ops:
        total = total + op_apply(s_inv, op_apply(t.H, op_apply(t, x)))
    return total


def canonical_dual(F, tol=DEFAULT_TOL):
    """``{T_i o S^{-1}}``; block matrices are ``S_k^{-1} M_ik``."""
    s_inv = _inverse_frame_operator(F, tol)
    return OperatorFrame([op_compose(t, s_inv) for t in F.ops], F.space)


def dual_residual(F, G):
    """Largest block spectral norm of ``sum_i T_i^* o G_i - I``."""
    _check_same_space(F, G)
    worst = 0.0
    for k in range(F.space.n_blocks):
        acc = -np.eye(F.space.operator_shape(k)[0], dtype=np.complex128)
        for t, g in zip(F.ops, G.ops):
            acc += g.blocks[k] @ t.blocks[k].conj().T
        worst = max(worst, _linalg.spectral_norm(acc))
    return worst


def verify_dual(F, G, tol=DEFAULT_TOL):
    """True iff ``x = sum_i T_i^* G_i x`` for every x, up to ``tol``."""
    return dual_residual(F, G) <= tol


def reconstruct_operator(F, G, op):
    """``sum_i T_i^* o G_i o op``; equals ``op`` whenever G is a dual of F."""
    _check_same_space(F, G)
    total = ModuleOperator.zero(F.space)
    for t, g in zip(F.ops, G.ops):
        total = total + op_compose(t.H, op_compose(g, op))
    return total


def dual_bound_estimates(F, tol=DEFAULT_TOL):
    """Outer bounds ``(A ||S||^-2, B ||S^-1||^2)`` for the canonical dual.

    Looser than the exact dual bounds ``(1/B, 1/A)`` but always valid.
    """
    b = _require_frame(F, tol)
    s = frame_operator(F)
    return b.lower / op_uniform_norm(s) ** 2, b.upper * op_inverse_uniform_norm(s, tol) ** 2


def compose_right(F, Q, tol=DEFAULT_TOL):
    """The family ``{T_i o Q}`` for self-adjoint surjective Q, with its bounds.

    The new optimal bounds always sit inside ``[A m', B M']`` where
    ``(m', M')`` are Q's surjectivity constants.
    """
    mb = surjectivity_bounds(Q, tol)
    if mb is None:
        raise NotSurjectiveError("Q has a nontrivial kernel")
    G = OperatorFrame([op_compose(t, Q) for t in F.ops], F.space)
    return G, optimal_bounds(G, tol)


def compose_left(F, theta, tol=DEFAULT_TOL):
    """``{theta o T_i}`` for an invertible operator on the same module.

    Returns the family, its optimal bounds and the a-priori window
    ``(||theta^-1||^-2 A, ||theta||^2 B)``.
    """
    b = optimal_bounds(F, tol)
    G = OperatorFrame([op_compose(theta, t) for t in F.ops], F.space)
    window = (op_inverse_uniform_norm(theta, tol) ** -2 * b.lower, op_uniform_norm(theta) ** 2 * b.upper)
    return G, optimal_bounds(G, tol), window


class ThetaMap:
    """Isometric transport ``theta: X_A -> X_B`` compatible with a BlockHom.

    Target block ``l`` of ``theta(x)`` is ``U_l X_{s(l)} G_l`` where ``U_l``
    are the hom's conjugators, ``s`` its block map and ``G_l`` unitary.
    Then ``<theta x, theta y>_B = phi(<x, y>_A)``.
    """

    def __init__(self, source, target, hom, module_conjugators=None, tol=DEFAULT_TOL):
        if source.rank != target.rank:
            raise IncompatibleSignatureError("theta maps between modules of equal rank")
        if hom.source != source.signature or hom.target != target.signature:
            raise IncompatibleMapError("hom does not match the module signatures")
        if module_conjugators is None:
            module_conjugators = [np.eye(target.operator_shape(l)[0]) for l in range(target.n_blocks)]
        module_conjugators = tuple(
            _linalg.as_complex_matrix(g, target.operator_shape(l), what=f"module conjugator {l}")
            for l, g in enumerate(module_conjugators)
        )
        if len(module_conjugators) != target.n_blocks:
            raise IncompatibleMapError("one module conjugator per target block is required")
        for l, g in enumerate(module_conjugators):
            if not _linalg.is_unitary(g, tol):
                raise IncompatibleMapError(f"module conjugator {l} is not unitary")
        self.source = source
        self.target = target
        self.hom = hom
        self.module_conjugators = module_conjugators

    @classmethod
    def identity(cls, space):
        return cls(space, space, BlockHom.identity(space.signature))

    def __call__(self, x):
        if x.space != self.source:
            raise IncompatibleSignatureError("element is not in the source module")
        return ModuleElement(
            self.target,
            [
                u @ x.blocks[s] @ g
                for u, s, g in zip(self.hom.conjugators, self.hom.block_map, self.module_conjugators)
            ],
        )

    def transport_operator(self, t):
        """Matrix form of ``theta o T o theta^{-1}`` on the target: ``G^H M_{s(l)} G``."""
        return ModuleOperator(
            self.target,
            [g.conj().T @ t.blocks[s] @ g for s, g in zip(self.hom.block_map, self.module_conjugators)],
        )

    def compatibility_residual(self, x, y):
        lhs = inner_product(self(x), self(y))
        rhs = hom_apply(self.hom, inner_product(x, y))
        return lhs.max_abs_diff(rhs)


def transport_residual(F, theta, x, y):
    """Max entry of ``phi(<S_A x, y>) - <S_B theta x, theta y>``."""
    s_a = frame_operator(F)
    s_b = frame_operator(OperatorFrame([theta.transport_operator(t) for t in F.ops], theta.target))
    lhs = hom_apply(theta.hom, inner_product(op_apply(s_a, x), y))
    rhs = inner_product(op_apply(s_b, theta(x)), theta(y))
    return lhs.max_abs_diff(rhs)


def transform(F, theta, tol=DEFAULT_TOL, n_samples=4, seed=0):
    """Transport F along ``theta``; returns the target family and its bounds.

    The compatibility and transport identities are verified on a few
    seeded sample pairs before returning.
    """
    if F.space != theta.source:
        raise IncompatibleSignatureError("frame does not live on theta's source module")
    G = OperatorFrame([theta.transport_operator(t) for t in F.ops], theta.target)
    rng = np.random.default_rng(seed)
    scale = max(1.0, optimal_bounds(F, tol).upper)
    for _ in range(n_samples):
        x = random_module_element(rng, F.space)
        y = random_module_element(rng, F.space)
        if theta.compatibility_residual(x, y) > 1e3 * tol:
            raise IncompatibleMapError("theta does not intertwine the inner products")
        if transport_residual(F, theta, x, y) > 1e3 * tol * scale:
            raise IncompatibleMapError("transported frame operator is inconsistent")
    return G, optimal_bounds(G, tol)


def vector_frame_lift(xs, tol=DEFAULT_TOL):
    """Operators ``T_i a = <a, x_i> = a x_i^*`` on A viewed as a rank-1 module.

    The optimal bounds of the lift are the optimal bounds of ``{x_i}`` as a
    frame for A, i.e. the eigenvalue extremes of ``sum_i x_i^* x_i``.
    """
    xs = list(xs)
    if not xs:
        raise ValueError("need at least one vector")
    sig = xs[0].signature
    for x in xs:
        if x.signature != sig:
            raise IncompatibleSignatureError("vectors live over different algebras")
    space = ModuleSpace(sig, 1)
    return OperatorFrame([ModuleOperator(space, [b.conj().T for b in x.blocks]) for x in xs], space)


_TIGHT = re.compile(r"^tight\(\s*([0-9.eE+-]+)\s*\)$")


def parse_mode(mode):
    """Normalize a generation mode to ``(name, lambda)``."""
    if isinstance(mode, tuple):
        name, lam = mode
        if name != "tight":
            raise ValueError(f"unknown mode {mode!r}")
        return "tight", float(lam)
    if mode in ("generic", "parseval", "near_singular"):
        return mode, None
    m = _TIGHT.match(str(mode))
    if m:
        return "tight", float(m.group(1))
    raise ValueError(f"unknown mode {mode!r}")


def gen_frame(seed, space, count, mode="generic"):
    """Deterministic random frame.

    ``generic`` draws standard complex Gaussian blocks; ``parseval``
    replaces each ``T_i`` by ``T_i o S^{-1/2}``; ``tight(lam)`` scales the
    Parseval frame by ``sqrt(lam)``; ``near_singular`` shrinks the weakest
    direction of block 0 until the smallest eigenvalue of S is 1e-7.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    name, lam = parse_mode(mode)
    rng = np.random.default_rng(seed)
    mats = [
        [complex_gaussian(rng, space.operator_shape(k)) for k in range(space.n_blocks)]
        for _ in range(count)
    ]
    F = OperatorFrame([ModuleOperator(space, b) for b in mats], space)
    if name == "generic":
        return F
    if name in ("parseval", "tight"):
        r = op_calculus(frame_operator(F), "inv_sqrt")
        c = 1.0 if name == "parseval" else np.sqrt(lam)
        return OperatorFrame([c * op_compose(t, r) for t in F.ops], space)
    s0 = _frame_operator_blocks(F)[0]
    w, v = np.linalg.eigh(s0)
    p = np.outer(v[:, 0], v[:, 0].conj())
    shrink = np.sqrt(1e-7 / w[0]) if w[0] > 0 else 0.0
    c = np.eye(p.shape[0]) - p + shrink * p
    ops = []
    for t in F.ops:
        blocks = list(t.blocks)
        blocks[0] = c @ blocks[0]
        ops.append(ModuleOperator(space, blocks))
    return OperatorFrame(ops, space)
