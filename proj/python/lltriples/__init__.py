"""Lie-Leibniz triples, racks and their local integration."""

from ._llt import (
    CapabilityError,
    ChartError,
    ConstraintError,
    DomainError,
    LieLeibnizTriple,
    StructuralError,
    TripleComponents,
    a_theta,
    check_conjugation_rack,
    check_relaxed_s3_a3,
    evaluate_triple,
    group_names,
    heisenberg_ideal,
    integrate,
    is_strict,
    max_strictness_subalgebra,
    random_triple,
    recover_a_theta,
    run_cli,
    scaling_family,
    sl2_adjoint,
    triple_components,
)

__all__ = [name for name in dir() if not name.startswith("_")]
