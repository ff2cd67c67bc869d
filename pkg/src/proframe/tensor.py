"""External tensor products of algebras, modules, operators and frames.

Block pairs ``(k, l)``, coordinate pairs ``(i, j)`` and frame-index pairs
are all enumerated row-major (left index outer).  The operator layout is
pinned by the identity ``(T (x) L)(x (x) y) = T x (x) L y``.
"""

from dataclasses import dataclass
from functools import reduce

import numpy as np

from ._linalg import DEFAULT_TOL
from .algebra import AlgebraElement, AlgebraSignature
from .errors import IncompatibleSignatureError, PreconditionError
from .frames import OperatorFrame, dual_residual, optimal_bounds
from .module import ModuleElement, ModuleOperator, ModuleSpace

__all__ = [
    "TensorLayout",
    "tensor_algebra",
    "tensor_element",
    "tensor_module",
    "tensor_module_element",
    "tensor_operator",
    "tensor_family",
    "tensor_frame",
    "tensor_dual_check",
    "tensor_dual_residual",
]


@dataclass(frozen=True)
class TensorLayout:
    left: AlgebraSignature
    right: AlgebraSignature

    @property
    def pairing(self):
        return tuple((k, l) for k in range(self.left.n_blocks) for l in range(self.right.n_blocks))

    @property
    def signature(self):
        return AlgebraSignature(
            tuple(self.left.block_dims[k] * self.right.block_dims[l] for k, l in self.pairing)
        )


def tensor_algebra(sig_a, sig_b):
    layout = TensorLayout(sig_a, sig_b)
    return layout.signature, layout


def tensor_element(a, b, layout=None):
    """Block ``(k, l)`` of ``a (x) b`` is ``kron(a_k, b_l)``."""
    if layout is None:
        layout = TensorLayout(a.signature, b.signature)
    if a.signature != layout.left or b.signature != layout.right:
        raise IncompatibleSignatureError("elements do not match the layout")
    return AlgebraElement(layout.signature, [np.kron(a.blocks[k], b.blocks[l]) for k, l in layout.pairing])


def tensor_module(X, Y):
    """Module of rank ``p*q`` over the tensor algebra."""
    sig, _ = tensor_algebra(X.signature, Y.signature)
    return ModuleSpace(sig, X.rank * Y.rank)


def tensor_module_element(x, y):
    layout = TensorLayout(x.space.signature, y.space.signature)
    space = tensor_module(x.space, y.space)
    p, q = x.space.rank, y.space.rank
    blocks = []
    for k, l in layout.pairing:
        n, nn = layout.left.block_dims[k], layout.right.block_dims[l]
        xr = x.blocks[k].reshape(n, p, n)
        yr = y.blocks[l].reshape(nn, q, nn)
        z = np.einsum("rac,sbd->rsabcd", xr, yr)
        blocks.append(z.reshape(n * nn, p * q * n * nn))
    return ModuleElement(space, blocks)


def tensor_operator(T, L):
    layout = TensorLayout(T.space.signature, L.space.signature)
    space = tensor_module(T.space, L.space)
    p, q = T.space.rank, L.space.rank
    blocks = []
    for k, l in layout.pairing:
        n, nn = layout.left.block_dims[k], layout.right.block_dims[l]
        m4 = T.blocks[k].reshape(p, n, p, n)
        n4 = L.blocks[l].reshape(q, nn, q, nn)
        w = np.einsum("acie,bdjf->abcdijef", m4, n4)
        d = p * q * n * nn
        blocks.append(w.reshape(d, d))
    return ModuleOperator(space, blocks)


def tensor_family(F, G):
    """``{T_i (x) L_j}`` ordered with ``i`` outer."""
    ops = [tensor_operator(t, l) for t in F.ops for l in G.ops]
    return OperatorFrame(ops, tensor_module(F.space, G.space))


def tensor_frame(F, G, tol=DEFAULT_TOL):
    """Tensor family and its optimal bounds.

    Eigenvalues of a Kronecker product are the pairwise products, so the
    bounds come out as ``(A_F A_G, B_F B_G)``.
    """
    H = tensor_family(F, G)
    return H, optimal_bounds(H, tol)


def tensor_dual_residual(pairs):
    """Dual residual of the folded tensor of ``[(F, F_dual), (G, G_dual), ...]``."""
    frames = reduce(tensor_family, [p[0] for p in pairs])
    duals = reduce(tensor_family, [p[1] for p in pairs])
    return dual_residual(frames, duals)


def tensor_dual_check(F, F_dual, G, G_dual, *more, tol=DEFAULT_TOL):
    """Check that the tensor of duals is a dual of the tensor of frames.

    Extra ``(frame, dual)`` pairs may follow to fold an n-fold product.
    A failing input pair raises :class:`PreconditionError`; only a failure
    of the tensor itself returns False.
    """
    pairs = [(F, F_dual), (G, G_dual), *more]
    for i, (a, b) in enumerate(pairs):
        if dual_residual(a, b) > tol:
            raise PreconditionError(f"input pair {i} is not a dual pair")
    return tensor_dual_residual(pairs) <= tol
