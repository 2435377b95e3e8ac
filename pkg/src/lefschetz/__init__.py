"""Exact weak/strong Lefschetz computations for Artinian monomial algebras."""

from __future__ import annotations

from .engine import (
    DimensionCapExceeded,
    HVector,
    SlpReport,
    SocleInfo,
    Verdict,
    WlpReport,
    WlpRow,
    h_vector,
    map_rank,
    slp_check,
    socle,
    wlp_check,
    wlp_verdict,
)
from .families import (
    FamilySpec,
    FamilyTag,
    IdealSyntaxError,
    ParameterError,
    family_J,
    family_mixed,
    family_squares,
    family_uniform,
    minimalize,
    parse_ideal,
    render_ideal,
)
from .linalg import Characteristic, ExactMatrix, build_mult_matrix, kernel_basis, rank
from .monomials import (
    ContractViolation,
    GradedBasis,
    Monomial,
    MonomialIdeal,
    Polynomial,
    RingContext,
    divides,
    enumerate_monomials,
    multiply_linear,
    reduce_mod_ideal,
    standard_basis,
)
from .report import RunRecord, emit_report
from .witnesses import (
    IdentityKind,
    Witness,
    WitnessCheck,
    counting_identity_check,
    failing_primes_squares,
    hilbert_inequality_check,
    verify_witness,
    witness_prop,
    witness_thmA,
    witness_thmB,
    witness_thmC,
)

__version__ = "0.1.0"
