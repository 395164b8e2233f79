"""Exact divisor invariants on surfaces and delta-invariant lower bounds.

Scalars come back as fractions.Fraction; reports come back as dicts in the
same JSON schema the command line prints (rationals as "p/q" strings).
"""

from ._kbound import (
    DomainError,
    InputError,
    InternalError,
    ModelError,
    cli,
    delta_bound,
    hypersurface_verdict,
    k3_tau_bound,
    lift_dimension,
    point_invariants,
    s_invariant,
    surface,
    threefold_verdict,
    verify_lemma,
    zariski,
)

__all__ = [
    "DomainError",
    "InputError",
    "InternalError",
    "ModelError",
    "cli",
    "delta_bound",
    "hypersurface_verdict",
    "k3_tau_bound",
    "lift_dimension",
    "point_invariants",
    "s_invariant",
    "surface",
    "threefold_verdict",
    "verify_lemma",
    "zariski",
]
