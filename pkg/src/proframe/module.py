"""The free Hilbert module ``A^m`` and its adjointable operators.

Elements are rows.  On block k an element is an ``n_k x (m*n_k)`` matrix
whose j-th ``n_k x n_k`` slab is coordinate j, and the inner product is
``<x, y>_k = X_k @ Y_k^H``.  Operators act by right multiplication,
``X_k -> X_k @ M_k``, which makes left A-linearity automatic.  The price
is that composition reverses: the block of ``T o U`` is ``M_U @ M_T``.
"""

from dataclasses import dataclass
from numbers import Number

import numpy as np

from . import _linalg
from ._linalg import DEFAULT_TOL
from .algebra import AlgebraElement, AlgebraSignature, is_positive
from .errors import (
    IncompatibleSignatureError,
    NotInvertibleError,
    NotPositiveError,
    NotSelfAdjointError,
)

__all__ = [
    "ModuleSpace",
    "ModuleElement",
    "ModuleOperator",
    "CoefficientSequence",
    "inner_product",
    "left_action",
    "module_seminorm",
    "op_apply",
    "op_adjoint",
    "op_compose",
    "op_add",
    "op_sub",
    "op_scale",
    "op_seminorm",
    "op_uniform_norm",
    "op_inverse_uniform_norm",
    "op_is_self_adjoint",
    "op_is_invertible",
    "op_is_positive",
    "op_calculus",
    "op_inverse",
    "uniform_bound_constants",
    "sandwich_check",
    "surjectivity_bounds",
]


@dataclass(frozen=True)
class ModuleSpace:
    signature: AlgebraSignature
    rank: int

    def __post_init__(self):
        sig = self.signature
        if not isinstance(sig, AlgebraSignature):
            object.__setattr__(self, "signature", AlgebraSignature(tuple(sig)))
        if int(self.rank) < 1:
            raise ValueError(f"rank must be positive, got {self.rank}")
        object.__setattr__(self, "rank", int(self.rank))

    def element_shape(self, k):
        n = self.signature.block_dims[k]
        return (n, self.rank * n)

    def operator_shape(self, k):
        d = self.rank * self.signature.block_dims[k]
        return (d, d)

    @property
    def n_blocks(self):
        return self.signature.n_blocks


def _check_space(a, b):
    if a.space != b.space:
        raise IncompatibleSignatureError(f"{a.space} vs {b.space}")


class ModuleElement:
    __slots__ = ("space", "blocks")

    def __init__(self, space, blocks):
        blocks = tuple(blocks)
        if len(blocks) != space.n_blocks:
            raise IncompatibleSignatureError(f"expected {space.n_blocks} blocks, got {len(blocks)}")
        blocks = tuple(
            _linalg.as_complex_matrix(b, space.element_shape(k), what=f"element block {k}")
            for k, b in enumerate(blocks)
        )
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleElement is immutable")

    @classmethod
    def zero(cls, space):
        return cls(space, [np.zeros(space.element_shape(k)) for k in range(space.n_blocks)])

    @classmethod
    def from_coordinates(cls, space, coords):
        """Build from ``m`` algebra elements, one per coordinate."""
        if len(coords) != space.rank:
            raise IncompatibleSignatureError(f"need {space.rank} coordinates")
        for c in coords:
            if c.signature != space.signature:
                raise IncompatibleSignatureError("coordinate lives over a different algebra")
        return cls(space, [np.hstack([c.blocks[k] for c in coords]) for k in range(space.n_blocks)])

    def coordinates(self):
        out = []
        for j in range(self.space.rank):
            out.append(
                AlgebraElement(
                    self.space.signature,
                    [X[:, j * n:(j + 1) * n] for X, n in zip(self.blocks, self.space.signature.block_dims)],
                )
            )
        return out

    def __add__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        _check_space(self, other)
        return ModuleElement(self.space, [x + y for x, y in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        _check_space(self, other)
        return ModuleElement(self.space, [x - y for x, y in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return ModuleElement(self.space, [-x for x in self.blocks])

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return ModuleElement(self.space, [c * x for x in self.blocks])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ModuleElement):
            return NotImplemented
        return self.space == other.space and all(
            np.array_equal(x, y) for x, y in zip(self.blocks, other.blocks)
        )

    __hash__ = None

    def __repr__(self):
        return f"ModuleElement(rank={self.space.rank}, dims={self.space.signature.block_dims})"


def left_action(a, x):
    """``a . x`` with ``(a . x)_j = a x_j``."""
    if a.signature != x.space.signature:
        raise IncompatibleSignatureError("algebra and module signatures differ")
    return ModuleElement(x.space, [ab @ X for ab, X in zip(a.blocks, x.blocks)])


def inner_product(x, y):
    """A-valued inner product, linear in the first slot."""
    _check_space(x, y)
    return AlgebraElement(x.space.signature, [X @ Y.conj().T for X, Y in zip(x.blocks, y.blocks)])


def module_seminorm(x, k):
    """``sqrt(p_k(<x, x>))``, i.e. the spectral norm of block ``k``."""
    x.space.signature.check_index(k)
    return _linalg.spectral_norm(x.blocks[k])


class ModuleOperator:
    """Adjointable map on a free module, one square matrix per block.

    ``T(x)`` applies it, ``T @ U`` is the composition ``T o U`` and
    ``T.H`` the adjoint.
    """

    __slots__ = ("space", "blocks")

    def __init__(self, space, blocks):
        blocks = tuple(blocks)
        if len(blocks) != space.n_blocks:
            raise IncompatibleSignatureError(f"expected {space.n_blocks} blocks, got {len(blocks)}")
        blocks = tuple(
            _linalg.as_complex_matrix(b, space.operator_shape(k), what=f"operator block {k}")
            for k, b in enumerate(blocks)
        )
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("ModuleOperator is immutable")

    @classmethod
    def identity(cls, space):
        return cls(space, [np.eye(space.operator_shape(k)[0]) for k in range(space.n_blocks)])

    @classmethod
    def zero(cls, space):
        return cls(space, [np.zeros(space.operator_shape(k)) for k in range(space.n_blocks)])

    @classmethod
    def from_coordinate_matrix(cls, space, c):
        """Operator mixing coordinates by a scalar ``m x m`` matrix ``c``.

        ``(Tx)_j = sum_i x_i c[i, j]``; the block is ``kron(c, I_n)``.
        """
        c = np.asarray(c, dtype=np.complex128)
        return cls(space, [np.kron(c, np.eye(n)) for n in space.signature.block_dims])

    @property
    def H(self):
        return ModuleOperator(self.space, [m.conj().T for m in self.blocks])

    def adjoint(self):
        return self.H

    def __call__(self, x):
        return op_apply(self, x)

    def __matmul__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        return op_compose(self, other)

    def __add__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        return op_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        return op_sub(self, other)

    def __neg__(self):
        return op_scale(self, -1.0)

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return op_scale(self, c)

    __rmul__ = __mul__

    def max_abs_diff(self, other):
        _check_space(self, other)
        return max(float(np.max(np.abs(x - y))) for x, y in zip(self.blocks, other.blocks))

    def __eq__(self, other):
        if not isinstance(other, ModuleOperator):
            return NotImplemented
        return self.space == other.space and all(
            np.array_equal(x, y) for x, y in zip(self.blocks, other.blocks)
        )

    __hash__ = None

    def __repr__(self):
        return f"ModuleOperator(rank={self.space.rank}, dims={self.space.signature.block_dims})"


def op_apply(T, x):
    _check_space(T, x)
    return ModuleElement(x.space, [X @ M for X, M in zip(x.blocks, T.blocks)])


def op_adjoint(T):
    return T.H


def op_compose(T, U):
    """``T o U``; note the reversed matrix product."""
    _check_space(T, U)
    return ModuleOperator(T.space, [mu @ mt for mt, mu in zip(T.blocks, U.blocks)])


def op_add(T, U):
    _check_space(T, U)
    return ModuleOperator(T.space, [a + b for a, b in zip(T.blocks, U.blocks)])


def op_sub(T, U):
    _check_space(T, U)
    return ModuleOperator(T.space, [a - b for a, b in zip(T.blocks, U.blocks)])


def op_scale(T, c):
    return ModuleOperator(T.space, [c * m for m in T.blocks])


def op_seminorm(T, k):
    T.space.signature.check_index(k)
    return _linalg.spectral_norm(T.blocks[k])


def op_uniform_norm(T):
    """Max over blocks of the operator seminorms."""
    return max(_linalg.spectral_norm(m) for m in T.blocks)


def op_inverse_uniform_norm(T, tol=DEFAULT_TOL):
    """``||T^{-1}||_inf`` without forming the inverse."""
    if not op_is_invertible(T, tol):
        raise NotInvertibleError("operator is not invertible")
    return max(1.0 / _linalg.singular_values(m)[-1] for m in T.blocks)


def op_is_self_adjoint(T, tol=DEFAULT_TOL):
    return all(_linalg.is_hermitian(m, tol) for m in T.blocks)


def op_is_invertible(T, tol=DEFAULT_TOL):
    return all(_linalg.is_invertible(m, tol) for m in T.blocks)


def op_is_positive(T, tol=DEFAULT_TOL):
    """``<Tx, x> >= 0`` for all x, which here means every block is PSD."""
    return all(_linalg.is_psd(m, tol) for m in T.blocks)


def op_calculus(T, kind, tol=DEFAULT_TOL):
    """Hermitian functional calculus (``sqrt``, ``inv``, ``inv_sqrt``) per block.

    Because the calculus acts on each block independently and the blocks
    of ``f(T)`` commute with those of ``T``, the row convention causes no
    reordering here.
    """
    if not op_is_self_adjoint(T, tol):
        raise NotPositiveError("functional calculus needs a positive operator")
    return ModuleOperator(T.space, [_linalg.hermitian_function(m, kind, tol) for m in T.blocks])


def op_inverse(T, tol=DEFAULT_TOL):
    """Inverse of a general invertible operator."""
    if not op_is_invertible(T, tol):
        raise NotInvertibleError("operator is not invertible")
    return ModuleOperator(T.space, [np.linalg.inv(m) for m in T.blocks])


def uniform_bound_constants(T):
    """Best constants ``(c, C)`` with ``c p(x) <= p(Tx) <= C p(x)`` for every seminorm.

    ``c`` is the uniform lower constant (0 when T has a kernel) and ``C``
    equals ``||T||_inf``.
    """
    svals = [_linalg.singular_values(m) for m in T.blocks]
    return float(min(s[-1] for s in svals)), float(max(s[0] for s in svals))


def sandwich_check(T, x, tol=DEFAULT_TOL):
    """Check ``||T^-1||^-2 <x,x> <= <Tx,Tx> <= ||T||^2 <x,x>`` for one ``x``."""
    lo = op_inverse_uniform_norm(T, tol) ** -2
    hi = op_uniform_norm(T) ** 2
    xx = inner_product(x, x)
    tx = op_apply(T, x)
    txtx = inner_product(tx, tx)
    scale = max(1.0, hi)
    return is_positive(txtx - lo * xx, tol * scale) and is_positive(hi * xx - txtx, tol * scale)


def surjectivity_bounds(T, tol=DEFAULT_TOL):
    """Inner-product bounds certifying surjectivity of a self-adjoint ``T``.

    Returns ``(m', M')`` with ``m' <x,x> <= <Tx,Tx> <= M' <x,x>``, namely
    the extreme squared singular values over all blocks, or ``None`` when
    some block is singular.
    """
    if not op_is_self_adjoint(T, tol):
        raise NotSelfAdjointError("surjectivity bounds need a self-adjoint operator")
    if not op_is_invertible(T, tol):
        return None
    lo, hi = uniform_bound_constants(T)
    return lo**2, hi**2


@dataclass(frozen=True)
class CoefficientSequence:
    """Finite sequence in ``l^2(X)``."""

    space: ModuleSpace
    items: tuple

    def __post_init__(self):
        items = tuple(self.items)
        for x in items:
            if x.space != self.space:
                raise IncompatibleSignatureError("all items must share the space")
        object.__setattr__(self, "items", items)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def inner(self, other):
        """``sum_i <x_i, y_i>``."""
        if len(self) != len(other):
            raise IncompatibleSignatureError("sequences differ in length")
        total = AlgebraElement.zero(self.space.signature)
        for x, y in zip(self.items, other.items):
            total = total + inner_product(x, y)
        return total
