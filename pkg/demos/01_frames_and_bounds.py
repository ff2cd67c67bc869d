"""
Operator frames and their optimal bounds
========================================

A frame on the rank-2 module over the one-block algebra C, first by
hand and then a random one over a two-block algebra.
"""

import numpy as np

from proframe import ModuleOperator, ModuleSpace, OperatorFrame, classify, frame_operator, optimal_bounds
from proframe.frames import extremal_element, gen_frame

# two weighted coordinate projections
space = ModuleSpace((1,), 2)
F = OperatorFrame([ModuleOperator(space, [np.diag([1, 0])]), ModuleOperator(space, [np.diag([0, 2])])])

print("frame operator:\n", frame_operator(F).blocks[0].real)
A, B = optimal_bounds(F)
print(f"optimal bounds A={A:g} B={B:g}, class {classify(F)}")

# a random family over C x M_2(C); each block contributes its own eigenvalues
space = ModuleSpace((1, 2), 2)
G = gen_frame(seed=7, space=space, count=3)
b = optimal_bounds(G)
for k, (lo, hi) in enumerate(b.per_block):
    print(f"block {k}: lambda_min={lo:.4f} lambda_max={hi:.4f}")
print(f"overall: A={b.lower:.4f} B={b.upper:.4f}")

# the element attaining A: <Sx, x> = A <x, x>
x = extremal_element(G, "lower")
k = next(k for k, blk in enumerate(x.blocks) if np.any(blk))
X, S = x.blocks[k], frame_operator(G).blocks[k]
print("Rayleigh quotient at the witness:", (X @ S @ X.conj().T)[0, 0].real / (X @ X.conj().T)[0, 0].real)

# Parseval and tight families by construction
print(classify(gen_frame(7, space, 3, "parseval")), classify(gen_frame(7, space, 3, "tight(4)")))
