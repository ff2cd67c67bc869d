"""
Composition and transport
=========================

Composing with a surjective self-adjoint operator keeps a frame a frame,
and a compatible pair (theta, phi) carries frames between modules over
different algebras.
"""

import numpy as np

from proframe import BlockHom, ModuleSpace, optimal_bounds
from proframe.frames import ThetaMap, compose_right, gen_frame, transform, transport_residual
from proframe.module import surjectivity_bounds
from proframe.sampling import random_module_element, random_self_adjoint, random_unitary

rng = np.random.default_rng(1)
space = ModuleSpace((1, 2), 2)
F = gen_frame(11, space, 3)
A, B = optimal_bounds(F)

Q = random_self_adjoint(rng, space)
m_lo, m_hi = surjectivity_bounds(Q)
_, b = compose_right(F, Q)
print(f"{A * m_lo:.4f} <= {b.lower:.4f} <= {b.upper:.4f} <= {B * m_hi:.4f}")

# amplify the 2x2 block twice: the target algebra is M_2 x M_2
hom = BlockHom((1, 2), (2, 2), [1, 1], [random_unitary(rng, 2), random_unitary(rng, 2)])
target = ModuleSpace((2, 2), 2)
theta = ThetaMap(space, target, hom, [random_unitary(rng, 4) for _ in range(2)])
G, bg = transform(F, theta)
x, y = random_module_element(rng, space), random_module_element(rng, space)
print("transport residual:", transport_residual(F, theta, x, y))
print("source block 1 bounds:", optimal_bounds(F).per_block[1], "target bounds:", (bg.lower, bg.upper))
