"""
Canonical duals and reconstruction
==================================

Every frame reconstructs its elements through the inverse frame
operator, and the canonical dual packages that inverse into a family.
"""

import numpy as np

from proframe import ModuleSpace, canonical_dual, optimal_bounds, reconstruct, verify_dual
from proframe.frames import dual_bound_estimates, dual_residual, gen_frame
from proframe.sampling import random_module_element

rng = np.random.default_rng(0)
space = ModuleSpace((2, 3), 2)
F = gen_frame(3, space, 4)
x = random_module_element(rng, space)

r = reconstruct(F, x)
print("reconstruction error:", max(np.linalg.norm(a - b, 2) for a, b in zip(r.blocks, x.blocks)))

D = canonical_dual(F)
print("dual residual:", dual_residual(F, D), "verified:", verify_dual(F, D))

A, B = optimal_bounds(F)
a, b = optimal_bounds(D)
print(f"frame bounds ({A:.4f}, {B:.4f}); dual bounds ({a:.4f}, {b:.4f}) = (1/B, 1/A) = ({1 / B:.4f}, {1 / A:.4f})")
lo, hi = dual_bound_estimates(F)
print(f"coarser a-priori window for the dual: ({lo:.5f}, {hi:.4f})")
