"""
Fusion frames
=============

Weighted projections onto submodules give operator frames, and conjugating
the projections by the fusion operator gives an explicit dual pair.
"""

import numpy as np

from proframe import ModuleOperator, ModuleSpace, optimal_bounds
from proframe.frames import dual_residual
from proframe.fusion import FusionSystem, fusion_dual_pair, fusion_to_operator_frame, parseval_self_dual_check
from proframe.sampling import random_unitary

space = ModuleSpace((1,), 2)
sysw = FusionSystem.build([ModuleOperator(space, [np.diag([1, 0])]), ModuleOperator(space, [np.diag([0, 1])])], [1.0, 2.0])
print("bounds:", tuple(optimal_bounds(fusion_to_operator_frame(sysw))))
T, Q = fusion_dual_pair(sysw)
print("T:", [np.diag(t.blocks[0]).real for t in T], "Q:", [np.diag(q.blocks[0]).real for q in Q])

# non-commuting projections on M_2(C)^2
rng = np.random.default_rng(4)
space = ModuleSpace((2,), 2)
ps = []
for _ in range(3):
    u = random_unitary(rng, 4)[:, :2]
    ps.append(ModuleOperator(space, [u @ u.conj().T]))
sysw = FusionSystem.build(ps + [ModuleOperator.identity(space)], [1.0, 0.5, 2.0, 1.0])
T, Q = fusion_dual_pair(sysw)
print("dual residual:", dual_residual(T, Q))

# splitting the module in two orthogonal halves gives a Parseval system
u = random_unitary(rng, 4)
halves = [ModuleOperator(space, [u[:, s] @ u[:, s].conj().T]) for s in (slice(0, 2), slice(2, 4))]
print("self dual:", parseval_self_dual_check(FusionSystem.build(halves, [1.0, 1.0])))
