"""Dense complex-matrix materialization, eigensolving, and state experiments.

Strings are materialized by direct bit action on basis states (no Kronecker
chains); circuits as ordered products of exact gate matrices.  The Hermitian
eigensolver is a self-contained cyclic Jacobi iteration.  Operators carry an
``antilinear`` flag: such an operator acts as ``M . K`` (complex conjugation
first).
"""

from __future__ import annotations

import math
import os
import struct
from dataclasses import dataclass, field

import numpy as np

from .clifford import (CliffordCircuit, ControlledX, ControlledZ, Hadamard,
                       QuarterRotation, Swap)
from .pauli import HilbertLayout, PauliString, PauliSum, SiteRef, mul

TAU_UNIT = 1e-10
TAU_EIG_PER_DIM = 1e-9
JACOBI_SWEEP_CAP = 100

DEFAULT_STRING_CAP = 14   # total sites
DEFAULT_CIRCUIT_CAP = 12

DENSE_CAP_ENV = "WIGNERLAB_DENSE_CAP"


class DimensionCapError(ValueError):
    """Raised when a materialization would exceed the configured site cap."""


class ConvergenceError(RuntimeError):
    """Jacobi sweeps exhausted before the off-diagonal norm target."""


def _cap(kind: str) -> int:
    env = os.environ.get(DENSE_CAP_ENV)
    if env is not None:
        return int(env)
    return DEFAULT_STRING_CAP if kind == "string" else DEFAULT_CIRCUIT_CAP


@dataclass(frozen=True)
class DenseOperator:
    matrix: np.ndarray
    antilinear: bool = False

    def __post_init__(self) -> None:
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("operator matrix must be square")
        object.__setattr__(self, "matrix", m)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def apply(self, psi: np.ndarray) -> np.ndarray:
        psi = np.asarray(psi, dtype=complex)
        if psi.shape[0] != self.dim:
            raise ValueError("dimension mismatch")
        return self.matrix @ (np.conj(psi) if self.antilinear else psi)

    def compose(self, other: "DenseOperator") -> "DenseOperator":
        """``self`` after ``other``; two antilinear factors compose to linear."""
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        right = np.conj(other.matrix) if self.antilinear else other.matrix
        return DenseOperator(self.matrix @ right,
                             antilinear=self.antilinear != other.antilinear)

    def is_unitary(self, tol: float = TAU_UNIT) -> bool:
        d = self.matrix.conj().T @ self.matrix - np.eye(self.dim)
        return float(np.linalg.norm(d)) < tol

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        if self.antilinear:
            return False
        scale = max(1.0, float(np.linalg.norm(self.matrix)))
        return float(np.linalg.norm(self.matrix - self.matrix.conj().T)) < tol * scale


@dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        object.__setattr__(self, "amplitudes", v)

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class SpectrumResult:
    eigenvalues: np.ndarray   # ascending
    eigenvectors: np.ndarray  # unitary, column i pairs with eigenvalue i
    residual: float
    sweeps: int


# ---------------------------------------------------------------------------
# materialization
# ---------------------------------------------------------------------------

def _string_matrix(p: PauliString) -> np.ndarray:
    dim = p.layout.dim
    cols = np.arange(dim)
    rows = cols ^ p.x_mask
    # Z acts first in the per-site X·Z order
    signs = 1 - 2 * (np.bitwise_count(cols & p.z_mask) & 1).astype(np.int64)
    m = np.zeros((dim, dim), dtype=complex)
    m[rows, cols] = (1j ** p.phase_exp) * signs
    return m


def _rotation_matrix(axis: PauliString, sign: int) -> np.ndarray:
    # exp(i s pi/4 A) = (I + i s A)/sqrt(2) for Hermitian A with A^2 = I
    a = _string_matrix(axis)
    return (np.eye(axis.layout.dim) + 1j * sign * a) / math.sqrt(2.0)


def _gate_matrix(layout: HilbertLayout, g) -> np.ndarray:
    dim = layout.dim
    single = lambda k, s: PauliString.single(layout, k, s)
    if isinstance(g, QuarterRotation):
        return _rotation_matrix(g.axis, g.sign)
    if isinstance(g, Hadamard):
        # i exp(-i pi (Z+X) / (2 sqrt 2)) collapses to (X+Z)/sqrt(2)
        return (_string_matrix(single("X", g.site))
                + _string_matrix(single("Z", g.site))) / math.sqrt(2.0)
    if isinstance(g, ControlledX):
        m = _rotation_matrix(mul(single("Z", g.control), single("X", g.target)), 1)
        m = m @ _rotation_matrix(single("Z", g.control), -1)
        m = m @ _rotation_matrix(single("X", g.target), -1)
        return np.exp(1j * math.pi / 4) * m
    if isinstance(g, ControlledZ):
        m = _rotation_matrix(mul(single("Z", g.i), single("Z", g.j)), -1)
        m = m @ _rotation_matrix(single("Z", g.i), 1)
        m = m @ _rotation_matrix(single("Z", g.j), 1)
        return np.exp(-1j * math.pi / 4) * m
    if isinstance(g, Swap):
        cx = lambda c, t: _gate_matrix(layout, ControlledX(c, t))
        return cx(g.i, g.j) @ cx(g.j, g.i) @ cx(g.i, g.j)
    raise TypeError(f"unknown gate {g!r}")


def materialize(obj: PauliString | PauliSum | CliffordCircuit) -> DenseOperator:
    """Explicit complex matrix of a string, sum, or circuit."""
    if isinstance(obj, PauliString):
        if obj.layout.total_sites > _cap("string"):
            raise DimensionCapError(f"{obj.layout.total_sites} sites exceeds cap")
        return DenseOperator(_string_matrix(obj))
    if isinstance(obj, PauliSum):
        if obj.layout.total_sites > _cap("string"):
            raise DimensionCapError(f"{obj.layout.total_sites} sites exceeds cap")
        m = np.zeros((obj.layout.dim, obj.layout.dim), dtype=complex)
        for c, p in obj:
            m += c * _string_matrix(p)
        return DenseOperator(m)
    if isinstance(obj, CliffordCircuit):
        if obj.layout.total_sites > _cap("circuit"):
            raise DimensionCapError(f"{obj.layout.total_sites} sites exceeds cap")
        m = np.eye(obj.layout.dim, dtype=complex)
        for g in obj.gates:  # leftmost factor first in the matrix product
            m = m @ _gate_matrix(obj.layout, g)
        return DenseOperator(m)
    raise TypeError(f"cannot materialize {type(obj).__name__}")


# ---------------------------------------------------------------------------
# Hermitian eigensolver (cyclic Jacobi)
# ---------------------------------------------------------------------------

def _offdiag_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def hermitian_eigensolve(op: DenseOperator | np.ndarray,
                         sweep_cap: int = JACOBI_SWEEP_CAP) -> SpectrumResult:
    """Diagonalize a Hermitian operator by cyclic Jacobi rotations.

    Each rotation exactly diagonalizes one Hermitian 2x2 block; eigenvalues
    are returned ascending with the matching eigenvector columns.  Raises on
    non-Hermitian input or if ``sweep_cap`` sweeps fail to converge.
    """
    if isinstance(op, np.ndarray):
        op = DenseOperator(op)
    if op.antilinear or not op.is_hermitian():
        raise ValueError("eigensolver requires a Hermitian linear operator")
    a0 = op.matrix
    n = op.dim
    a = a0.copy()
    v = np.eye(n, dtype=complex)
    scale = max(float(np.linalg.norm(a)), 1e-300)
    target = 1e-13 * scale
    sweeps = 0
    while _offdiag_norm(a) > target:
        if sweeps >= sweep_cap:
            raise ConvergenceError(
                f"no convergence after {sweep_cap} sweeps; "
                f"off-diagonal norm {_offdiag_norm(a):.3e}")
        thresh = 1e-16 * scale
        for p in range(n - 1):
            for q in range(p + 1, n):
                c = a[p, q]
                if abs(c) <= thresh:
                    continue
                app = a[p, p].real
                aqq = a[q, q].real
                ac = abs(c)
                phase = c / ac
                # minimal-angle rotation zeroing a[p,q]: tan(2θ) = 2|c|/(app-aqq)
                tau = (app - aqq) / (2.0 * ac)
                t = math.copysign(1.0, tau) / (abs(tau) + math.hypot(tau, 1.0))
                ct = 1.0 / math.sqrt(1.0 + t * t)
                st = t * ct
                rot = np.array([[ct, -st * phase],
                                [st * np.conj(phase), ct]], dtype=complex)
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.conj().T @ a[[p, q], :]
                v[:, [p, q]] = v[:, [p, q]] @ rot
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
        sweeps += 1
    vals = np.diag(a).real
    order = np.argsort(vals, kind="stable")
    vals = vals[order]
    vecs = v[:, order]
    residual = float(np.max(np.linalg.norm(a0 @ vecs - vecs * vals, axis=0))) if n else 0.0
    return SpectrumResult(vals, vecs, residual, sweeps)


# ---------------------------------------------------------------------------
# states and experiments
# ---------------------------------------------------------------------------

def random_state(dim: int, seed: int) -> StateVector:
    """Normalized state with Gaussian real/imag parts from PCG64(seed)."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    rng = np.random.default_rng(seed)
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return StateVector(v / np.linalg.norm(v))


def transition_experiment(d: DenseOperator,
                          pairs: list[tuple[StateVector, StateVector]]) -> dict:
    """Transformed vs reference transition probabilities per state pair.

    The reference for a linear operator is |<beta|alpha>|^2; for an
    antilinear one it is |<alpha|beta>|^2 (equal in modulus).
    """
    rows = []
    for alpha, beta in pairs:
        if alpha.dim != d.dim or beta.dim != d.dim:
            raise ValueError("state/operator dimension mismatch")
        ta = d.apply(alpha.amplitudes)
        tb = d.apply(beta.amplitudes)
        p_t = abs(np.vdot(tb, ta)) ** 2
        if d.antilinear:
            p_ref = abs(np.vdot(alpha.amplitudes, beta.amplitudes)) ** 2
        else:
            p_ref = abs(np.vdot(beta.amplitudes, alpha.amplitudes)) ** 2
        rows.append({"p_transformed": float(p_t), "p_reference": float(p_ref),
                     "deviation": float(abs(p_t - p_ref))})
    return {"pairs": rows,
            "max_deviation": max((r["deviation"] for r in rows), default=0.0)}


# ---------------------------------------------------------------------------
# matrix/state dumps
# ---------------------------------------------------------------------------

_MAGIC = b"WLDENSE1"


def write_dense_binary(path: str, m: np.ndarray) -> None:
    """Little-endian interleaved re/im doubles after a 16-byte header."""
    m = np.asarray(m, dtype=complex)
    dim = m.shape[0]
    inter = np.empty(m.size * 2, dtype="<f8")
    flat = m.reshape(-1)
    inter[0::2] = flat.real
    inter[1::2] = flat.imag
    with open(path, "wb") as fh:
        fh.write(_MAGIC + struct.pack("<II", dim, m.shape[1] if m.ndim == 2 else 1))
        fh.write(inter.tobytes())


def read_dense_binary(path: str) -> np.ndarray:
    with open(path, "rb") as fh:
        header = fh.read(16)
        if header[:8] != _MAGIC:
            raise ValueError("bad magic")
        rows, cols = struct.unpack("<II", header[8:])
        inter = np.frombuffer(fh.read(), dtype="<f8")
    flat = inter[0::2] + 1j * inter[1::2]
    return flat.reshape(rows, cols)


def write_dense_csv(path: str, m: np.ndarray) -> None:
    m = np.asarray(m, dtype=complex)
    with open(path, "w") as fh:
        for row in np.atleast_2d(m):
            fh.write(",".join(f"{float(v.real)!r};{float(v.imag)!r}"
                              for v in row) + "\n")


def read_dense_csv(path: str) -> np.ndarray:
    rows = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            rows.append([complex(float(re), float(im))
                         for re, im in (cell.split(";") for cell in line.strip().split(","))])
    return np.array(rows, dtype=complex)
