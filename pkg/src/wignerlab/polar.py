"""Singular value and polar decomposition built on the Jacobi eigensolver,
plus the block-structure and commutation checks for candidate non-invertible
symmetry operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dense import DenseOperator, hermitian_eigensolve

TAU_RANK_REL = 1e-10


@dataclass(frozen=True)
class SVDResult:
    w: np.ndarray       # left unitary
    sigma: np.ndarray   # non-negative, descending
    v: np.ndarray       # right unitary
    rank: int

    def reconstruct(self) -> np.ndarray:
        return (self.w * self.sigma) @ self.v.conj().T


@dataclass(frozen=True)
class PolarFactors:
    unitary_part: DenseOperator   # antilinear iff the input was (the K factor)
    psd_part: DenseOperator       # Hermitian positive semi-definite, linear
    rank: int
    invertible: bool


def _complete_kernel(w: np.ndarray, n_range: int) -> np.ndarray:
    """Fill kernel columns by Gram-Schmidt of standard basis vectors against
    the range columns, in index order, with a re-orthogonalization pass."""
    n = w.shape[0]
    cols = [w[:, i] for i in range(n_range)]
    for idx in range(n):
        if len(cols) == n:
            break
        cand = np.zeros(n, dtype=complex)
        cand[idx] = 1.0
        for _ in range(2):  # re-orthogonalize once
            for c in cols:
                cand = cand - np.vdot(c, cand) * c
        nrm = np.linalg.norm(cand)
        if nrm > 1e-8:
            cols.append(cand / nrm)
    if len(cols) != n:
        raise RuntimeError("kernel completion failed")
    out = w.copy()
    for i, c in enumerate(cols[n_range:], start=n_range):
        out[:, i] = c
    return out


def svd(a: DenseOperator | np.ndarray) -> SVDResult:
    """SVD of a square linear operator via the eigenbasis of A†A.

    Right singular vectors come from the Jacobi eigensolver; range columns of
    W are A v_i / sigma_i, kernel columns are completed deterministically.
    """
    if isinstance(a, DenseOperator):
        if a.antilinear:
            raise ValueError("svd expects the linear matrix part")
        a = a.matrix
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("svd requires a square matrix")
    n = a.shape[0]
    gram = a.conj().T @ a
    gram = 0.5 * (gram + gram.conj().T)
    spec = hermitian_eigensolve(DenseOperator(gram))
    # recompute sigma_i = |A v_i| directly: the squared (Gram) eigenvalues
    # carry an eps * sigma_max**2 noise floor that would inflate the rank
    av = a @ spec.eigenvectors
    sigma_all = np.linalg.norm(av, axis=0)
    order = np.argsort(sigma_all, kind="stable")[::-1]
    sigma = sigma_all[order]
    v = spec.eigenvectors[:, order]
    av = av[:, order]
    smax = sigma[0] if n else 0.0
    tau = TAU_RANK_REL * smax
    rank = int(np.sum(sigma > tau))
    w = np.zeros((n, n), dtype=complex)
    for i in range(rank):
        w[:, i] = av[:, i] / sigma[i]
    w = _complete_kernel(w, rank)
    return SVDResult(w, sigma, v, rank)


def polar_decompose(a: DenseOperator | np.ndarray) -> PolarFactors:
    """A = U_hat P_hat with U_hat = W V† unitary and P_hat = V Sigma V† PSD.

    Antilinear input M∘K is decomposed through its linear matrix M; the
    unitary factor is then reported as the antiunitary U_hat∘K, composing in
    the order unitary * PSD * K.
    """
    antilinear = isinstance(a, DenseOperator) and a.antilinear
    mat = a.matrix if isinstance(a, DenseOperator) else np.asarray(a, dtype=complex)
    res = svd(mat)
    u_hat = res.w @ res.v.conj().T
    p_hat = (res.v * res.sigma) @ res.v.conj().T
    p_hat = 0.5 * (p_hat + p_hat.conj().T)
    return PolarFactors(DenseOperator(u_hat, antilinear=antilinear),
                        DenseOperator(p_hat), res.rank,
                        invertible=res.rank == mat.shape[0])


def verify_theorem_structure(d: DenseOperator, isometry: np.ndarray,
                             tol: float = 1e-9) -> dict:
    """Block-structure checks on the PSD polar factor of a candidate symmetry.

    With iota the isometric embedding of the physical space, checks that
    (i) the embedded block of P_hat is the identity, (ii) P_hat^2 has no
    matrix elements between the embedded space and its complement, and
    (iii) P_H P_hat = P_hat P_H = P_H.
    """
    iota = np.asarray(isometry, dtype=complex)
    if iota.shape[0] != d.dim:
        raise ValueError("embedding dimension exceeds or mismatches operator")
    if iota.shape[1] > iota.shape[0]:
        raise ValueError("embedded space larger than total space")
    factors = polar_decompose(d)
    p_hat = factors.psd_part.matrix
    p_h = iota @ iota.conj().T
    k = iota.shape[1]

    block_identity_error = float(np.linalg.norm(
        iota.conj().T @ p_hat @ iota - np.eye(k)))
    p2 = p_hat @ p_hat
    perp = np.eye(d.dim) - p_h
    offdiag_error = float(np.linalg.norm(perp @ p2 @ p_h))
    proj_error = float(max(np.linalg.norm(p_h @ p_hat - p_h),
                           np.linalg.norm(p_hat @ p_h - p_h)))

    svd_res = svd(d.matrix if not d.antilinear else d.matrix)
    return {
        "reconstruction_error": float(np.linalg.norm(
            factors.unitary_part.matrix @ p_hat - d.matrix)),
        "sigma": [float(s) for s in svd_res.sigma],
        "rank": factors.rank,
        "invertible": factors.invertible,
        "block_identity_error": block_identity_error,
        "offdiag_error": offdiag_error,
        "projector_identity_error": proj_error,
        "passed": (block_identity_error < tol and offdiag_error < tol
                   and proj_error < tol),
    }


def corollary_check(h_g: DenseOperator, d: DenseOperator,
                    isometry: np.ndarray, tol: float = 1e-9) -> dict:
    """P_H [H_G, U_hat] P_H must vanish when [H_G, P_H] = 0.

    The precondition is verified first; on violation the check is reported
    as skipped.
    """
    iota = np.asarray(isometry, dtype=complex)
    p_h = iota @ iota.conj().T
    hg = h_g.matrix
    scale = max(float(np.linalg.norm(hg)), 1.0)
    pre = float(np.linalg.norm(hg @ p_h - p_h @ hg))
    if pre > 1e-10 * scale:
        return {"status": "skipped", "precondition_norm": pre,
                "reason": "[H_G, P_H] != 0"}
    u_hat = polar_decompose(d).unitary_part.matrix
    comm = hg @ u_hat - u_hat @ hg
    measured = float(np.linalg.norm(p_h @ comm @ p_h))
    return {"status": "pass" if measured < tol else "fail",
            "precondition_norm": pre, "measured": measured, "threshold": tol}
