"""
Perturbing a frame
==================

Subtracting a family whose Bessel bound M is below the lower frame
bound A leaves a frame, with bounds bracketed by (sqrt A -+ sqrt M)^2.
The deviation constant measures how far one frame is from another.
"""

import numpy as np

from proframe import ModuleSpace, OperatorFrame, optimal_bounds
from proframe.frames import gen_frame
from proframe.perturbation import deviation_constants, perturb_check

space = ModuleSpace((2,), 3)
F = gen_frame(5, space, 4)
R = gen_frame(6, space, 4)
A = optimal_bounds(F).lower
R = OperatorFrame([np.sqrt(0.5 * A / optimal_bounds(R).upper) * t for t in R], space)

rep = perturb_check(F, R)
print(f"A={rep.bounds_T.lower:.4f} M={rep.bessel_R:.4f}")
print(f"difference bounds ({rep.frame_diff.lower:.4f}, {rep.frame_diff.upper:.4f})")
print(f"guaranteed window ({rep.guaranteed_lower:.4f}, {rep.guaranteed_upper:.4f})")

dc = deviation_constants(F, R)
print(f"deviation: against F {dc.M_against_T:.4f}, against R {dc.M_against_R:.4f}, M {dc.M:.4f}")
