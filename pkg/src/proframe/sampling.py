"""Seeded random instances for tests, demos and the selftest command.

Every function takes a :class:`numpy.random.Generator`, so a fixed seed
reproduces the same instance bit for bit.
"""

import numpy as np

from .algebra import AlgebraElement, AlgebraSignature
from .module import ModuleElement, ModuleOperator

__all__ = [
    "complex_gaussian",
    "random_unitary",
    "random_element",
    "random_positive",
    "random_module_element",
    "random_operator",
    "random_self_adjoint",
    "random_invertible",
]


def complex_gaussian(rng, shape):
    """Standard complex Gaussian entries (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def random_unitary(rng, n):
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _sig(signature):
    return signature if isinstance(signature, AlgebraSignature) else AlgebraSignature(tuple(signature))


def random_element(rng, signature):
    sig = _sig(signature)
    return AlgebraElement(sig, [complex_gaussian(rng, (n, n)) for n in sig.block_dims])


def random_positive(rng, signature, definite=False):
    """``c* c`` for Gaussian ``c``; shifted by the unit when ``definite``."""
    c = random_element(rng, signature)
    p = c.H @ c
    if definite:
        p = p + 0.1 * AlgebraElement.unit(p.signature)
    return AlgebraElement(p.signature, [0.5 * (b + b.conj().T) for b in p.blocks])


def random_module_element(rng, space):
    return ModuleElement(space, [complex_gaussian(rng, space.element_shape(k)) for k in range(space.n_blocks)])


def random_operator(rng, space):
    return ModuleOperator(space, [complex_gaussian(rng, space.operator_shape(k)) for k in range(space.n_blocks)])


def random_self_adjoint(rng, space, invertible=True):
    """Hermitian operator; when ``invertible`` the spectrum avoids ``(-0.2, 0.2)``."""
    blocks = []
    for k in range(space.n_blocks):
        d = space.operator_shape(k)[0]
        u = random_unitary(rng, d)
        w = rng.uniform(0.2, 2.0, d) * rng.choice([-1.0, 1.0], d)
        if not invertible:
            w[rng.integers(d)] = 0.0
        b = (u * w) @ u.conj().T
        blocks.append(0.5 * (b + b.conj().T))
    return ModuleOperator(space, blocks)


def random_invertible(rng, space):
    blocks = []
    for k in range(space.n_blocks):
        d = space.operator_shape(k)[0]
        s = rng.uniform(0.3, 2.0, d)
        blocks.append((random_unitary(rng, d) * s) @ random_unitary(rng, d))
    return ModuleOperator(space, blocks)
