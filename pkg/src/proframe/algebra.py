"""Finite products of matrix algebras with one C*-seminorm per block.

An element of ``M_{n_1}(C) x ... x M_{n_K}(C)`` is stored as a tuple of
square complex blocks.  The k-th seminorm is the spectral norm of block k,
so every statement quantified over all seminorms becomes a finite
conjunction over blocks.  Block indices are 0-based.
"""

from dataclasses import dataclass
from numbers import Number

import numpy as np

from . import _linalg
from ._linalg import DEFAULT_TOL
from .errors import (
    BlockIndexError,
    HermitianRequiredError,
    IncompatibleSignatureError,
)

__all__ = [
    "AlgebraSignature",
    "AlgebraElement",
    "BlockHom",
    "alg_arith",
    "seminorm",
    "seminorms",
    "is_hermitian",
    "is_positive",
    "order_leq",
    "hermitian_spectrum",
    "positive_calculus",
    "hom_apply",
]


@dataclass(frozen=True)
class AlgebraSignature:
    """Block sizes ``(n_1, ..., n_K)`` of a product algebra."""

    block_dims: tuple

    def __post_init__(self):
        dims = tuple(int(n) for n in self.block_dims)
        if not dims:
            raise ValueError("a signature needs at least one block")
        if any(n < 1 for n in dims):
            raise ValueError(f"block dimensions must be positive, got {dims}")
        object.__setattr__(self, "block_dims", dims)

    @property
    def n_blocks(self):
        return len(self.block_dims)

    def check_index(self, k):
        if not 0 <= k < self.n_blocks:
            raise BlockIndexError(f"block index {k} out of range for {self.n_blocks} blocks")

    def __iter__(self):
        return iter(self.block_dims)

    def __repr__(self):
        return f"AlgebraSignature{self.block_dims}"


def _check_same(a, b):
    if a.signature != b.signature:
        raise IncompatibleSignatureError(f"{a.signature} vs {b.signature}")


class AlgebraElement:
    """Immutable element of a product of matrix algebras.

    Arithmetic follows the usual operators: ``+``, ``-``, ``@`` for the
    algebra product and ``*`` for scalars.  ``a.H`` is the involution.
    """

    __slots__ = ("signature", "blocks")

    def __init__(self, signature, blocks):
        if not isinstance(signature, AlgebraSignature):
            signature = AlgebraSignature(tuple(signature))
        blocks = tuple(blocks)
        if len(blocks) != signature.n_blocks:
            raise IncompatibleSignatureError(
                f"expected {signature.n_blocks} blocks, got {len(blocks)}"
            )
        blocks = tuple(
            _linalg.as_complex_matrix(b, (n, n), what=f"block {k}")
            for k, (b, n) in enumerate(zip(blocks, signature.block_dims))
        )
        object.__setattr__(self, "signature", signature)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("AlgebraElement is immutable")

    @classmethod
    def from_blocks(cls, blocks):
        blocks = [np.atleast_2d(np.asarray(b, dtype=np.complex128)) for b in blocks]
        return cls(AlgebraSignature(tuple(b.shape[0] for b in blocks)), blocks)

    @classmethod
    def unit(cls, signature):
        if not isinstance(signature, AlgebraSignature):
            signature = AlgebraSignature(tuple(signature))
        return cls(signature, [np.eye(n) for n in signature.block_dims])

    @classmethod
    def zero(cls, signature):
        if not isinstance(signature, AlgebraSignature):
            signature = AlgebraSignature(tuple(signature))
        return cls(signature, [np.zeros((n, n)) for n in signature.block_dims])

    @classmethod
    def central(cls, signature, scalars):
        """Central element with scalar ``scalars[k]`` on block k."""
        if not isinstance(signature, AlgebraSignature):
            signature = AlgebraSignature(tuple(signature))
        if len(scalars) != signature.n_blocks:
            raise IncompatibleSignatureError("one scalar per block is required")
        return cls(signature, [c * np.eye(n) for c, n in zip(scalars, signature.block_dims)])

    @property
    def H(self):
        return AlgebraElement(self.signature, [b.conj().T for b in self.blocks])

    def adjoint(self):
        return self.H

    def __add__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _check_same(self, other)
        return AlgebraElement(self.signature, [x + y for x, y in zip(self.blocks, other.blocks)])

    def __sub__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _check_same(self, other)
        return AlgebraElement(self.signature, [x - y for x, y in zip(self.blocks, other.blocks)])

    def __neg__(self):
        return AlgebraElement(self.signature, [-b for b in self.blocks])

    def __matmul__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        _check_same(self, other)
        return AlgebraElement(self.signature, [x @ y for x, y in zip(self.blocks, other.blocks)])

    def __mul__(self, c):
        if not isinstance(c, Number):
            return NotImplemented
        return AlgebraElement(self.signature, [c * b for b in self.blocks])

    __rmul__ = __mul__

    def allclose(self, other, atol=1e-12):
        _check_same(self, other)
        return all(np.allclose(x, y, rtol=0, atol=atol) for x, y in zip(self.blocks, other.blocks))

    def max_abs_diff(self, other):
        _check_same(self, other)
        return max(float(np.max(np.abs(x - y), initial=0.0)) for x, y in zip(self.blocks, other.blocks))

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.signature == other.signature and all(
            np.array_equal(x, y) for x, y in zip(self.blocks, other.blocks)
        )

    __hash__ = None

    def __repr__(self):
        return f"AlgebraElement({self.signature.block_dims}, blocks={[b.tolist() for b in self.blocks]})"


def alg_arith(a, b=None, kind="add"):
    """Dispatch table over the *-algebra operations.

    ``kind`` is one of ``add``, ``sub``, ``mul``, ``adjoint`` or
    ``("scale", c)``; for the unary kinds ``b`` is ignored.
    """
    if kind == "adjoint":
        return a.H
    if isinstance(kind, tuple) and kind[0] == "scale":
        return float(kind[1]) * a
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a @ b
    raise ValueError(f"unknown operation {kind!r}")


def seminorm(a, k):
    """Spectral norm of block ``k`` of ``a``."""
    a.signature.check_index(k)
    return _linalg.spectral_norm(a.blocks[k])


def seminorms(a):
    return np.array([_linalg.spectral_norm(b) for b in a.blocks])


def is_hermitian(a, tol=DEFAULT_TOL):
    return all(_linalg.is_hermitian(b, tol) for b in a.blocks)


def is_positive(a, tol=DEFAULT_TOL):
    """True iff every block is Hermitian PSD up to a scale-aware tolerance."""
    return all(_linalg.is_psd(b, tol) for b in a.blocks)


def order_leq(a, b, tol=DEFAULT_TOL):
    return is_positive(b - a, tol)


def hermitian_spectrum(a, tol=DEFAULT_TOL):
    """Ascending eigenvalues of each block of a Hermitian element."""
    if not is_hermitian(a, tol):
        raise HermitianRequiredError("spectrum is only computed for Hermitian elements")
    return [np.linalg.eigvalsh(0.5 * (b + b.conj().T)) for b in a.blocks]


def positive_calculus(a, kind, tol=DEFAULT_TOL):
    """``sqrt``, ``inv`` or ``inv_sqrt`` of a positive element, block by block."""
    return AlgebraElement(a.signature, [_linalg.hermitian_function(b, kind, tol) for b in a.blocks])


class BlockHom:
    """Unital *-homomorphism built from block reindexing and unitary conjugation.

    Target block ``l`` of ``phi(a)`` is ``U_l @ a[block_map[l]] @ U_l^H``.
    A constant ``block_map`` gives an amplification; an injective one a
    projection onto a sub-product; a permutation a block swap.
    """

    def __init__(self, source, target, block_map, conjugators=None, tol=DEFAULT_TOL):
        if not isinstance(source, AlgebraSignature):
            source = AlgebraSignature(tuple(source))
        if not isinstance(target, AlgebraSignature):
            target = AlgebraSignature(tuple(target))
        block_map = tuple(int(s) for s in block_map)
        if len(block_map) != target.n_blocks:
            raise IncompatibleSignatureError("block_map needs one entry per target block")
        for l, s in enumerate(block_map):
            source.check_index(s)
            if target.block_dims[l] != source.block_dims[s]:
                raise IncompatibleSignatureError(
                    f"target block {l} has dim {target.block_dims[l]} but source block {s} "
                    f"has dim {source.block_dims[s]}"
                )
        if conjugators is None:
            conjugators = [np.eye(n) for n in target.block_dims]
        conjugators = tuple(
            _linalg.as_complex_matrix(u, (n, n), what=f"conjugator {l}")
            for l, (u, n) in enumerate(zip(conjugators, target.block_dims))
        )
        if len(conjugators) != target.n_blocks:
            raise IncompatibleSignatureError("one conjugator per target block is required")
        for l, u in enumerate(conjugators):
            if not _linalg.is_unitary(u, tol):
                raise ValueError(f"conjugator {l} is not unitary")
        self.source = source
        self.target = target
        self.block_map = block_map
        self.conjugators = conjugators

    @classmethod
    def identity(cls, signature):
        if not isinstance(signature, AlgebraSignature):
            signature = AlgebraSignature(tuple(signature))
        return cls(signature, signature, range(signature.n_blocks))

    def __call__(self, a):
        return hom_apply(self, a)

    def compose(self, inner):
        """``self after inner`` as a single BlockHom."""
        if inner.target != self.source:
            raise IncompatibleSignatureError("homs do not compose")
        bm = [inner.block_map[s] for s in self.block_map]
        us = [u @ inner.conjugators[s] for u, s in zip(self.conjugators, self.block_map)]
        return BlockHom(inner.source, self.target, bm, us)

    def __repr__(self):
        return f"BlockHom({self.source.block_dims} -> {self.target.block_dims}, map={self.block_map})"


def hom_apply(phi, a):
    if a.signature != phi.source:
        raise IncompatibleSignatureError(f"hom expects {phi.source}, got {a.signature}")
    return AlgebraElement(
        phi.target,
        [u @ a.blocks[s] @ u.conj().T for u, s in zip(phi.conjugators, phi.block_map)],
    )
