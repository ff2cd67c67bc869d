"""
Tensor products of frames
=========================

The frame operator of {T_i (x) L_j} is S_T (x) S_L, so bounds multiply,
and the tensor of dual pairs is again a dual pair.
"""

from proframe import ModuleSpace, canonical_dual, frame_operator, optimal_bounds
from proframe.frames import gen_frame
from proframe.tensor import tensor_dual_check, tensor_frame, tensor_operator

F = gen_frame(1, ModuleSpace((1, 2), 2), 3)
G = gen_frame(2, ModuleSpace((2,), 1), 2)
H, b = tensor_frame(F, G)
(a1, b1), (a2, b2) = optimal_bounds(F), optimal_bounds(G)
print(f"{len(F)} x {len(G)} = {len(H)} operators over block dims {H.space.signature.block_dims}")
print(f"A: {a1:.4f} * {a2:.4f} = {a1 * a2:.4f} vs {b.lower:.4f}")
print(f"B: {b1:.4f} * {b2:.4f} = {b1 * b2:.4f} vs {b.upper:.4f}")
print("S_H - S_F (x) S_G:", frame_operator(H).max_abs_diff(tensor_operator(frame_operator(F), frame_operator(G))))
print("tensor of duals is dual:", tensor_dual_check(F, canonical_dual(F), G, canonical_dual(G), tol=1e-10))
