"""Exact abelian Chern-Simons partition functions and RT invariants."""

from .errors import (
    AbelianCSError,
    BudgetExceeded,
    Degenerate,
    ElementMismatch,
    NonSquare,
    NonSymmetric,
    NotEven,
    NotUnimodular,
    ParseError,
    RouteMismatch,
    SizeMismatch,
)
from .exact_linalg import (
    IntMatrix,
    RationalMatrix,
    SmithDecomposition,
    check_even_symmetric_nondegenerate,
    determinant,
    matrix,
    rational_inverse,
    signature,
    smith_normal_form,
    symmetrize,
)
from .invariants import (
    braiding,
    delta,
    duality_check,
    global_dimension,
    lens_example,
    partition_function,
    reciprocity_check,
    rt_invariant,
    s_matrix,
    twist,
)
from .moves import E8, HYPERBOLIC, MoveSequence, Slide, Stabilize, apply_slide, apply_stabilize, invariance_suite
from .phases import GaussSum, InvariantValue, PhaseRational
from .torsion_group import GroupElement, GroupPresentation, cokernel, enumerate_group, pairing, quadratic, tensor_quadratic

__version__ = "0.1.0"
