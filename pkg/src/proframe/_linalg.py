"""Dense per-block helpers shared by the algebra and module layers."""

import numpy as np

from .errors import HermitianRequiredError, NotInvertibleError, NotPositiveError

DEFAULT_TOL = 1e-9


def as_complex_matrix(m, shape=None, what="matrix"):
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2:
        raise ValueError(f"{what} must be two-dimensional, got ndim={arr.ndim}")
    if shape is not None and arr.shape != tuple(shape):
        raise ValueError(f"{what} has shape {arr.shape}, expected {tuple(shape)}")
    arr.setflags(write=False)
    return arr


def spectral_norm(m):
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def singular_values(m):
    return np.linalg.svd(m, compute_uv=False)


def is_hermitian(m, tol=DEFAULT_TOL):
    return spectral_norm(m - m.conj().T) <= tol * max(1.0, spectral_norm(m))


def hermitian_eigh(m, tol=DEFAULT_TOL):
    """Eigendecomposition of a Hermitian matrix, symmetrized first.

    Eigenvalues come back ascending.
    """
    if not is_hermitian(m, tol):
        raise HermitianRequiredError("matrix is not Hermitian within tolerance")
    h = 0.5 * (m + m.conj().T)
    return np.linalg.eigh(h)


def is_psd(m, tol=DEFAULT_TOL):
    if not is_hermitian(m, tol):
        return False
    w = np.linalg.eigvalsh(0.5 * (m + m.conj().T))
    return bool(w[0] >= -tol * max(1.0, abs(w[-1]), abs(w[0])))


def hermitian_function(m, kind, tol=DEFAULT_TOL):
    """Apply sqrt, inv or inv_sqrt to a PSD matrix through its eigenbasis."""
    w, v = hermitian_eigh(m, tol)
    scale = max(1.0, abs(w[-1]))
    if w[0] < -tol * scale:
        raise NotPositiveError(f"negative eigenvalue {w[0]:.3e}")
    w = np.clip(w, 0.0, None)
    if kind == "sqrt":
        f = np.sqrt(w)
    elif kind in ("inv", "inv_sqrt"):
        if w[0] <= tol * scale:
            raise NotInvertibleError(f"smallest eigenvalue {w[0]:.3e} is not above tolerance")
        f = 1.0 / w if kind == "inv" else 1.0 / np.sqrt(w)
    else:
        raise ValueError(f"unknown calculus kind {kind!r}")
    out = (v * f) @ v.conj().T
    return 0.5 * (out + out.conj().T)


def is_unitary(u, tol=DEFAULT_TOL):
    n = u.shape[0]
    return u.shape == (n, n) and spectral_norm(u.conj().T @ u - np.eye(n)) <= tol * max(1, n)


def is_invertible(m, tol=DEFAULT_TOL):
    s = singular_values(m)
    return bool(s.size and s[-1] > tol * max(1.0, s[0]))
