"""Bounded-coefficient factorization of SU(2) over two su(2) generators."""
from .canonicalizer import (
    CanonicalFrame,
    GeneratorPair,
    adjoint_rotation,
    canonicalize,
    lift_rotation,
    nulling_rotation,
)
from .core import (
    expm_su2,
    frobenius_distance,
    haar_random,
    matrix_to_vec,
    trace_inner,
    vec_to_matrix,
)
from .errors import (
    DegenerateDirection,
    DependentGenerators,
    InvalidBound,
    NoViableFrame,
    NotARotation,
    NotInAlgebra,
    NotUnitary,
    ResidualTooLarge,
    SingularMixing,
    SU2Error,
)
from .factorizer import (
    DecompositionReport,
    Factor,
    FactorSequence,
    choose_frame_angle,
    enforce_positivity,
    euler_inplane,
    factorize,
    merge_adjacent,
    solve_coefficients,
    split_for_bound,
    verify,
)

__version__ = "0.1.0"
