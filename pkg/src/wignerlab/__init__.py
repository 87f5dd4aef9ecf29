"""Verification toolkit for duality circuits and non-invertible symmetries of
the transverse-field Ising chain."""

__version__ = "0.1.0"

from .pauli import (HilbertLayout, PauliString, PauliSum, ancilla_layout,
                    commutes, eta_string, link_layout, matter_layout, mul,
                    sum_commutator, symmetry_projector)
from .clifford import (CliffordCircuit, ControlledX, ControlledZ, DualityMap,
                       Hadamard, QuarterRotation, Swap, build_u1, build_u2,
                       build_u_gauged, conjugate_circuit, conjugate_gate,
                       phi1_table, phi2_table, phi_gauged_table,
                       verify_automorphism)
from .models import Family, ModelSpec, build_hamiltonian, gauss_law_operators
from .dense import (DenseOperator, SpectrumResult, StateVector,
                    hermitian_eigensolve, materialize, random_state,
                    transition_experiment)
from .polar import (PolarFactors, SVDResult, corollary_check, polar_decompose,
                    svd, verify_theorem_structure)
from .gauge import (SectorEmbedding, ancilla_sector_embedding, build_d_hat,
                    build_d_noninvertible, embed_state, gauss_sector_projector,
                    sector_blocks, spectral_equivalence_check)
