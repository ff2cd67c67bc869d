"""Frames of submodules (fusion frames) and the operator frames they induce.

A submodule is represented by its orthogonal projection ``P`` and a
weight by one positive scalar per block, the center of a product of
matrix algebras.  The fusion frame operator is ``S = sum_i v_i^2 P_i``.
"""

from dataclasses import dataclass

import numpy as np

from . import _linalg
from ._linalg import DEFAULT_TOL
from .errors import IncompatibleSignatureError, InvalidProjectionError, NotAFrameError
from .frames import OperatorFrame, dual_residual, optimal_bounds
from .module import ModuleOperator, op_calculus, op_compose

__all__ = [
    "SubmoduleProjection",
    "CentralWeight",
    "FusionSystem",
    "weighted",
    "fusion_operator",
    "fusion_to_operator_frame",
    "fusion_dual_pair",
    "parseval_self_dual_check",
    "frame_operator_conjugation_check",
    "conjugated_projections",
]


@dataclass(frozen=True)
class SubmoduleProjection:
    P: ModuleOperator
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        for k, m in enumerate(self.P.blocks):
            scale = max(1.0, _linalg.spectral_norm(m))
            if not _linalg.is_hermitian(m, self.tol):
                raise InvalidProjectionError(f"block {k} is not Hermitian")
            if _linalg.spectral_norm(m @ m - m) > self.tol * scale:
                raise InvalidProjectionError(f"block {k} is not idempotent")

    @property
    def space(self):
        return self.P.space


@dataclass(frozen=True)
class CentralWeight:
    scalars: tuple

    def __post_init__(self):
        s = tuple(float(c) for c in np.atleast_1d(self.scalars))
        if not s or any(not np.isfinite(c) or c <= 0 for c in s):
            raise ValueError(f"weights must be positive, got {s}")
        object.__setattr__(self, "scalars", s)

    @classmethod
    def constant(cls, value, n_blocks):
        return cls((value,) * n_blocks)


@dataclass(frozen=True)
class FusionSystem:
    space: object
    pairs: tuple

    def __post_init__(self):
        pairs = tuple(self.pairs)
        if not pairs:
            raise ValueError("a fusion system needs at least one submodule")
        for i, (p, v) in enumerate(pairs):
            if not isinstance(p, SubmoduleProjection):
                raise TypeError(f"pair {i}: expected SubmoduleProjection")
            if p.space != self.space:
                raise IncompatibleSignatureError(f"pair {i} lives on a different module")
            if len(v.scalars) != self.space.n_blocks:
                raise IncompatibleSignatureError(f"pair {i}: one weight per block is required")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def build(cls, projections, weights, tol=DEFAULT_TOL):
        projections = list(projections)
        if len(projections) != len(weights):
            raise ValueError("one weight per projection is required")
        space = projections[0].space
        pairs = []
        for p, w in zip(projections, weights):
            if not isinstance(w, CentralWeight):
                w = CentralWeight.constant(w, space.n_blocks) if np.isscalar(w) else CentralWeight(tuple(w))
            pairs.append((SubmoduleProjection(p, tol), w))
        return cls(space, pairs)

    def __len__(self):
        return len(self.pairs)


def weighted(op, weight, power=1):
    """Multiply block k of ``op`` by ``weight[k]**power``."""
    return ModuleOperator(op.space, [c**power * m for c, m in zip(weight.scalars, op.blocks)])


def fusion_operator(sys):
    """``S_{W,v} = sum_i v_i^2 P_i``."""
    total = ModuleOperator.zero(sys.space)
    for p, v in sys.pairs:
        total = total + weighted(p.P, v, 2)
    return total


def fusion_to_operator_frame(sys):
    """``{v_i P_i}``; its optimal bounds are the optimal fusion bounds."""
    return OperatorFrame([weighted(p.P, v) for p, v in sys.pairs], sys.space)


def _fusion_inverse(sys, tol):
    F = fusion_to_operator_frame(sys)
    if optimal_bounds(F, tol).lower <= tol:
        raise NotAFrameError("the weighted submodules do not form a fusion frame")
    s = fusion_operator(sys)
    return s, op_calculus(s, "inv", tol)


def conjugated_projections(sys, tol=DEFAULT_TOL):
    """Idempotents ``S^{-1} o P_i o S`` onto the dual submodules ``S^{-1} W_i``.

    These are generally not self-adjoint, so they are returned as plain
    operators.
    """
    s, s_inv = _fusion_inverse(sys, tol)
    return [op_compose(s_inv, op_compose(p.P, s)) for p, _ in sys.pairs]


def fusion_dual_pair(sys, tol=DEFAULT_TOL):
    """Families ``T_i = v_i S P_i S^{-1}`` and ``Q_i = v_i S^{-1} P_i``, Q dual to T.

    ``Q_i`` is ``v_i pi_i S^{-1}`` with ``pi_i = S^{-1} P_i S`` simplified.
    """
    s, s_inv = _fusion_inverse(sys, tol)
    T = OperatorFrame(
        [weighted(op_compose(s, op_compose(p.P, s_inv)), v) for p, v in sys.pairs], sys.space
    )
    Q = OperatorFrame([weighted(op_compose(s_inv, p.P), v) for p, v in sys.pairs], sys.space)
    return T, Q


def parseval_self_dual_check(sys, tol=DEFAULT_TOL):
    s = fusion_operator(sys)
    if s.max_abs_diff(ModuleOperator.identity(sys.space)) > tol:
        return False
    F = fusion_to_operator_frame(sys)
    return dual_residual(F, F) <= tol


def frame_operator_conjugation_check(sys, tol=DEFAULT_TOL):
    """``sum_i v_i^2 (S^{-1} P_i S) = S``: conjugating by S leaves the fusion operator fixed.

    The fusion operator of a weighted family of idempotents is taken as
    ``sum v_i^2 pi_i``, which for orthogonal projections coincides with
    ``sum (v_i P_i)^* (v_i P_i)``.
    """
    s, _ = _fusion_inverse(sys, tol)
    total = ModuleOperator.zero(sys.space)
    for pi, (_, v) in zip(conjugated_projections(sys, tol), sys.pairs):
        total = total + weighted(pi, v, 2)
    scale = max(1.0, max(_linalg.spectral_norm(m) for m in s.blocks))
    return total.max_abs_diff(s) <= tol * scale
