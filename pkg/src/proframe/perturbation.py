"""Stability of operator frames under perturbation.

Two questions are answered numerically.  First, when a Bessel family
``{R_i}`` has optimal bound ``M`` below the lower frame bound ``A`` of
``{T_i}``, the difference ``{T_i - R_i}`` is again a frame, with bounds in
``[(sqrt A - sqrt M)^2, (sqrt B + sqrt M)^2]``.  Second, the smallest
constant in

    p(sum <(T_i-R_i)x, (T_i-R_i)x>) <= M min(p(sum <T_i x,T_i x>), p(sum <R_i x,R_i x>))

is computed exactly from a whitened pencil per block.
"""

from dataclasses import dataclass

import numpy as np

from . import _linalg
from ._linalg import DEFAULT_TOL
from .errors import IncompatibleSignatureError, NotAFrameError, ProframeError
from .frames import FrameBounds, OperatorFrame, _frame_operator_blocks, optimal_bounds

__all__ = [
    "PerturbationReport",
    "DeviationConstants",
    "difference_family",
    "perturb_check",
    "pencil_max",
    "deviation_constants",
    "deviation_witnesses",
    "equivalence_check",
]


@dataclass(frozen=True)
class PerturbationReport:
    bounds_T: FrameBounds
    bessel_R: float
    frame_diff: FrameBounds
    guaranteed_lower: float
    guaranteed_upper: float
    satisfied: bool


@dataclass(frozen=True)
class DeviationConstants:
    """One-sided deviation constants; ``None`` when the reference is not a frame.

    ``M`` is the smallest constant for which the two-sided inequality with
    ``min(...)`` on the right holds for every x, which is the larger of
    the two one-sided constants.
    """

    M_against_T: float
    M_against_R: float

    @property
    def M(self):
        sides = [m for m in (self.M_against_T, self.M_against_R) if m is not None]
        if len(sides) < 2:
            return None
        return max(sides)

    @property
    def finite(self):
        return self.M is not None


def difference_family(F, R):
    if F.space != R.space or len(F) != len(R):
        raise IncompatibleSignatureError("families must share the module and the index set")
    return OperatorFrame([t - r for t, r in zip(F.ops, R.ops)], F.space)


def perturb_check(F, R, tol=DEFAULT_TOL):
    bf = optimal_bounds(F, tol)
    M = optimal_bounds(R, tol).upper
    bd = optimal_bounds(difference_family(F, R), tol)
    lo = (np.sqrt(bf.lower) - np.sqrt(M)) ** 2 if M < bf.lower else 0.0
    hi = (np.sqrt(bf.upper) + np.sqrt(M)) ** 2
    satisfied = (M >= bf.lower) or (bd.lower > tol)
    return PerturbationReport(bf, M, bd, float(lo), float(hi), bool(satisfied))


def pencil_max(d, g, tol=DEFAULT_TOL):
    """Largest ``lambda`` with ``d <= lambda g`` for PSD ``d`` and PD ``g``.

    Whitens by ``g^{-1/2}`` and returns the top eigenvalue together with the
    row vector ``u^H`` that attains it (``u^H d u = lambda u^H g u``).
    """
    r = _linalg.hermitian_function(g, "inv_sqrt", tol)
    w, v = np.linalg.eigh(r @ d @ r)
    u = r @ v[:, -1]
    return max(float(w[-1]), 0.0), u.conj()


def _one_side(diff_blocks, ref_blocks, tol):
    out = []
    for d, g in zip(diff_blocks, ref_blocks):
        lam, _ = pencil_max(d, g, tol)
        out.append(lam)
    return max(out)


def _is_frame(blocks, tol):
    return min(np.linalg.eigvalsh(b)[0] for b in blocks) > tol


def deviation_constants(F, R, tol=DEFAULT_TOL):
    """Per-block pencil maxima of the difference energy against each reference."""
    D = _frame_operator_blocks(difference_family(F, R))
    GT = _frame_operator_blocks(F)
    GR = _frame_operator_blocks(R)
    mt = _one_side(D, GT, tol) if _is_frame(GT, tol) else None
    mr = _one_side(D, GR, tol) if _is_frame(GR, tol) else None
    return DeviationConstants(mt, mr)


def deviation_witnesses(F, R, tol=DEFAULT_TOL):
    """Per-block rank-one elements attaining ``M_against_T``, as row vectors."""
    D = _frame_operator_blocks(difference_family(F, R))
    GT = _frame_operator_blocks(F)
    if not _is_frame(GT, tol):
        raise NotAFrameError("reference family is not a frame")
    return [pencil_max(d, g, tol) for d, g in zip(D, GT)]


def equivalence_check(F, R, tol=DEFAULT_TOL):
    """Whether R is a frame, cross-checked against the deviation constants.

    Raises :class:`ProframeError` if the two characterizations disagree,
    which would indicate a numerical failure rather than a property of
    the input.
    """
    bf = optimal_bounds(F, tol)
    if bf.lower <= tol:
        raise NotAFrameError("reference family T is not a frame")
    br = optimal_bounds(R, tol)
    r_is_frame = br.lower > tol
    dc = deviation_constants(F, R, tol)
    if r_is_frame != dc.finite:
        raise ProframeError("frame status of R disagrees with finiteness of M")
    if dc.finite:
        s = np.sqrt(dc.M) + 1.0
        slack = tol * max(1.0, bf.upper * s * s)
        if br.lower < bf.lower / s**2 - slack or br.upper > bf.upper * s**2 + slack:
            raise ProframeError("derived bounds for R are violated")
    return r_is_frame
