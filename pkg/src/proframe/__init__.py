"""Operator frames for Hilbert modules over finite products of matrix algebras.

The algebra ``M_{n_1}(C) x ... x M_{n_K}(C)`` carries one C*-seminorm per
block.  On the free module ``A^m`` this package builds operator frames and
computes their frame operators, optimal bounds, canonical duals,
perturbation constants, tensor products and fusion-frame counterparts.
"""

from .algebra import (
    AlgebraElement,
    AlgebraSignature,
    BlockHom,
    alg_arith,
    hermitian_spectrum,
    hom_apply,
    is_positive,
    order_leq,
    positive_calculus,
    seminorm,
)
from .errors import *  # noqa: F401,F403
from .frames import (
    Classification,
    FrameBounds,
    FrameKind,
    OperatorFrame,
    ThetaMap,
    analysis_apply,
    canonical_dual,
    classify,
    compose_left,
    compose_right,
    dual_residual,
    extremal_element,
    frame_energy,
    frame_operator,
    gen_frame,
    optimal_bounds,
    reconstruct,
    reconstruct_operator,
    synthesis_apply,
    transform,
    vector_frame_lift,
    verify_dual,
)
from .fusion import (
    CentralWeight,
    FusionSystem,
    SubmoduleProjection,
    frame_operator_conjugation_check,
    fusion_dual_pair,
    fusion_to_operator_frame,
    parseval_self_dual_check,
)
from .module import (
    CoefficientSequence,
    ModuleElement,
    ModuleOperator,
    ModuleSpace,
    inner_product,
    module_seminorm,
    op_apply,
    op_calculus,
    op_is_positive,
    op_seminorm,
    op_uniform_norm,
    sandwich_check,
    surjectivity_bounds,
)
from .perturbation import DeviationConstants, PerturbationReport, deviation_constants, equivalence_check, perturb_check
from .tensor import (
    tensor_algebra,
    tensor_dual_check,
    tensor_element,
    tensor_frame,
    tensor_module,
    tensor_module_element,
    tensor_operator,
)

__version__ = "0.1.0"
