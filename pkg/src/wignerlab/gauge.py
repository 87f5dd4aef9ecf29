"""Sector embeddings, the non-invertible operators D± and D̂±, the Gauss-law
projector of the fully gauged chain, and the spectral-equivalence report."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford import build_u2, build_u_gauged
from .dense import DenseOperator, StateVector, hermitian_eigensolve, materialize
from .models import Family, ModelSpec, build_hamiltonian, gauss_law_operators
from .pauli import ancilla_layout, matter_layout, symmetry_projector


@dataclass(frozen=True)
class SectorEmbedding:
    """Isometric inclusion of the physical space into one gauge sector."""
    source_dim: int
    target_dim: int
    label: str
    isometry: np.ndarray  # target_dim x source_dim, orthonormal columns

    def projector(self) -> np.ndarray:
        return self.isometry @ self.isometry.conj().T


def ancilla_sector_embedding(L: int, sign: int) -> SectorEmbedding:
    """|g±> ⊗ |alpha> with the ancilla ordered so |g+> is the first basis
    vector (ancilla bit 0 carries Z-eigenvalue +1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    d = 1 << L
    iota = np.zeros((2 * d, d), dtype=complex)
    offset = 0 if sign > 0 else d
    iota[offset:offset + d, :] = np.eye(d)
    return SectorEmbedding(d, 2 * d, f"ancilla{'+' if sign > 0 else '-'}", iota)


def embed_state(alpha: StateVector, e: SectorEmbedding) -> StateVector:
    if alpha.dim != e.source_dim:
        raise ValueError("state dimension does not match embedding source")
    return StateVector(e.isometry @ alpha.amplitudes)


def build_d_noninvertible(L: int, sign: int) -> DenseOperator:
    """D± = U2 * (1 ± eta)/2 on the matter space; rank 2^(L-1)."""
    layout = matter_layout(L)
    u = materialize(build_u2(L))
    p = materialize(symmetry_projector(sign, layout))
    return u.compose(p)


def build_d_hat(L: int, sign: int, antilinear: bool = False) -> DenseOperator:
    """D̂± = U_gauged * (1 ± Z_{L+1})/2 on the enlarged space; optionally the
    antilinear variant U_gauged * P̃± * K."""
    layout = ancilla_layout(L)
    u = materialize(build_u_gauged(L))
    p = materialize(symmetry_projector(sign, layout, on_ancilla=True))
    return DenseOperator(u.matrix @ p.matrix, antilinear=antilinear)


def gauss_sector_projector(L: int) -> DenseOperator:
    """prod_j (1 + G_j)/2 on the fully gauged space; trace 2^L."""
    if L > 5:
        raise ValueError("fully gauged projector capped at L = 5")
    ops = gauss_law_operators(L)
    dim = ops[0].layout.dim
    proj = np.eye(dim, dtype=complex)
    for g in ops:
        proj = proj @ (np.eye(dim) + materialize(g).matrix) / 2
    return DenseOperator(proj)


def _cluster(values: np.ndarray, tol: float = 1e-8) -> list[tuple[float, int]]:
    out: list[list] = []
    for v in np.sort(values):
        if out and abs(v - out[-1][0]) < tol:
            out[-1][1] += 1
        else:
            out.append([float(v), 1])
    return [(v, m) for v, m in out]


def spectral_multiset_factor(ev_a: np.ndarray, ev_b: np.ndarray,
                             tol: float = 1e-8) -> dict:
    """Uniform multiplicity factor between two eigenvalue multisets, if any."""
    ca, cb = _cluster(ev_a, tol), _cluster(ev_b, tol)
    mismatches = []
    factor = None
    if len(ca) != len(cb):
        mismatches.append({"reason": "different cluster counts",
                           "a": len(ca), "b": len(cb)})
    else:
        ratios = []
        for (va, ma), (vb, mb) in zip(ca, cb):
            if abs(va - vb) > tol:
                mismatches.append({"a_value": va, "b_value": vb})
                continue
            if ma % mb:
                mismatches.append({"value": va, "a_mult": ma, "b_mult": mb})
                continue
            ratios.append(ma // mb)
        if not mismatches:
            if len(set(ratios)) == 1:
                factor = ratios[0]
            else:
                mismatches.append({"reason": "non-uniform factor",
                                   "ratios": ratios})
    return {"uniform_factor": factor, "mismatches": mismatches,
            "equivalent": factor is not None}


def spectral_equivalence_check(L: int, include_dense: bool = True) -> dict:
    """Fully gauged vs minimally gauged spectra, up to a uniform degeneracy.

    The observed factor is reported, not assumed; dimension counting predicts
    2^(L-1).
    """
    if L > 5:
        raise ValueError("spectral equivalence capped at L = 5")
    h_full = materialize(build_hamiltonian(ModelSpec(Family.FULLY_GAUGED_HG, L)))
    h_min = materialize(build_hamiltonian(ModelSpec(Family.MINIMAL_GAUGED_HG, L)))
    ev_full = hermitian_eigensolve(h_full).eigenvalues
    ev_min = hermitian_eigensolve(h_min).eigenvalues
    res = spectral_multiset_factor(ev_full, ev_min)
    res.update({"model_a": "h-full-gauged", "model_b": "h-min-gauged", "L": L,
                "predicted_factor": 1 << (L - 1)})
    return res


def sector_blocks(op: DenseOperator, L: int) -> tuple[np.ndarray, np.ndarray]:
    """(+, -) ancilla blocks of an operator on the minimally gauged space."""
    d = 1 << L
    if op.dim != 2 * d:
        raise ValueError("operator is not on the ancilla layout")
    return op.matrix[:d, :d], op.matrix[d:, d:]
