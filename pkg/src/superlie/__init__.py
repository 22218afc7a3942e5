"""Exact structure-constant toolkit for graded Lie superalgebras, the functors
T', gr', pi', iota' and F'_n, and the covering F'_n(g) -> g."""

from .builders import (
    SuperMatrix,
    build_abelian,
    build_gl,
    build_gl_zgraded,
    build_osp,
    build_sl11,
    from_matrix_basis,
    parse_builtin,
)
from .core import (
    AxiomReport,
    DomainError,
    Element,
    GradedLieSuperalgebra,
    InternalConsistencyError,
    SkewConflictError,
    Weight,
    WeightSystem,
    bracket,
    homogeneous_component,
    support,
    verify_axioms,
)
from .covering import (
    CoveringCertificate,
    HomVerdict,
    build_projection,
    check_homomorphism,
    check_partial_homomorphism,
    covering_certificate,
    lift_between_coverings,
    lift_universal,
    verify_covering,
)
from .functors import (
    DiagonalGenerator,
    FunctorOutput,
    MultiIndexBasisElement,
    f_prime_n,
    gr_prime,
    iota_prime,
    map_through,
    pi_prime,
    takiff,
    truncation_projection,
)
from .grassmann import grassmann_oracle_check
from .io import ParseError, SemanticError, dumps, load, parse
from .loop import LoopModel, loop_model, matrix_realization, verify_loop_isomorphism
from .morphism import GradedMorphism, GradingMap, change_basis, compose

__all__ = [name for name in dir() if not name.startswith("_")]
