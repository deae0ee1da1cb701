"""Exact eigenbasis of the osp(1,2) supersymmetric Gaudin magnet (spin 1/2)."""

from .algebra import GENERATOR_NAMES, GradedMatrix, casimir_parts, generator, site_generator, supercommutator, verify_defining_relations
from .coproduct import HamiltonianParams, coproduct, gaudin_spin_form, general_hamiltonian, observable_family, partial_casimir
from .eigenbasis import (
    EigenLabel,
    LabelChain,
    SpectrumRecord,
    casimir_eigenvalue,
    enumerate_label_chains,
    full_spectrum,
    hamiltonian_eigenvalue,
    irrep_counts,
    kernel_state,
    ladder_states,
    pseudovacuum,
    step_coefficients,
)
from .exact_linalg import SparseMatrix, StateVector, mat_apply, nullspace_basis, rank
from .graded_tensor import embed_at_site, graded_kron, tensor_degree
from .report import VerificationReport

__version__ = "0.1.0"
