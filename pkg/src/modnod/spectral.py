"""Leading eigenstructure of the additive matrix and the critical attention.

The neutral state loses stability where ``-1 + u0 * S'(0) * lambda`` crosses
zero for the leading eigenvalue of A, i.e. at ``u0* = 1 / (S'(0) *
lambda_max)``.  Because the Jacobian at the origin does not see the
modulation coefficients, everything here reads only A and S'(0).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
import scipy.linalg

from .errors import DegenerateLeader, NonConvergence, NoStrictLeader
from .model import NetworkSpec

__all__ = [
    "EigenTriple",
    "full_spectrum",
    "leading_eigenpair",
    "eigenpair_near",
    "critical_attention",
    "max_entry_normalized",
]

#: absolute tolerance on the spectral gap below which "simple real leading
#: eigenvalue" cannot be certified numerically
GAP_TOL = 1e-9


@dataclass(frozen=True)
class EigenTriple:
    """A simple real eigenvalue of A with its right/left eigenvectors.

    Normalization: ``norm(v_max) = 1`` unless rescaled, and always
    ``dot(w_max, v_max) = 1``.  The sign is fixed so the largest-magnitude
    entry of v_max is positive, which keeps branch labels and diagrams
    reproducible.

    Attributes:
        lambda_max: the eigenvalue.
        v_max: right eigenvector.
        w_max: left eigenvector (row sense: w @ A = lambda * w).
        u0_star: critical attention 1 / (S'(0) * lambda).
        spectral_gap: lambda minus the largest real part of the remaining
            eigenvalues (positive for a strict leader).
    """

    lambda_max: float
    v_max: np.ndarray
    w_max: np.ndarray
    u0_star: float
    spectral_gap: float

    def rescaled(self, scale: float) -> "EigenTriple":
        """Rescale v_max by ``scale`` (and w_max by 1/scale) so the pairing
        dot(w_max, v_max) = 1 is preserved."""
        return replace(self, v_max=self.v_max * scale, w_max=self.w_max / scale)


def full_spectrum(A) -> np.ndarray:
    """All eigenvalues of A (with multiplicity), as a complex array."""
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix contains non-finite entries")
    try:
        return np.linalg.eigvals(A)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"eigenvalue iteration failed: {exc}") from exc


def _fix_sign(v: np.ndarray) -> np.ndarray:
    # first entry of maximal magnitude made positive
    idx = int(np.argmax(np.abs(v)))
    return -v if v[idx] < 0 else v


def _eigen_data(A: np.ndarray):
    try:
        vals, vl, vr = scipy.linalg.eig(A, left=True, right=True)
    except np.linalg.LinAlgError as exc:
        raise NonConvergence(f"eigenvalue iteration failed: {exc}") from exc
    return vals, vl, vr


def _build_triple(A: np.ndarray, vals, vl, vr, idx: int, sat_deriv0: float) -> EigenTriple:
    scale = max(1.0, float(np.max(np.abs(vals))))
    lam = vals[idx]
    if abs(lam.imag) > GAP_TOL * scale:
        raise NoStrictLeader(f"eigenvalue {lam} is not real")
    others = np.delete(vals, idx)
    gap = float(lam.real - np.max(others.real)) if others.size else np.inf
    if gap <= GAP_TOL:
        raise NoStrictLeader(
            f"spectral gap {gap:.3e} at eigenvalue {lam.real:.6g} is below {GAP_TOL:.0e}"
        )

    v = vr[:, idx]
    w = vl[:, idx].conj()  # scipy convention: vl.conj().T @ A = diag(vals) @ vl.conj().T
    if max(np.max(np.abs(v.imag)), np.max(np.abs(w.imag))) > 1e-12 * scale:
        raise NoStrictLeader("eigenvectors of the leading eigenvalue are not real")
    v = _fix_sign(v.real.copy())
    v /= np.linalg.norm(v)
    w = w.real.copy()
    pairing = float(w @ v)
    if abs(pairing) < 1e-12:
        raise NoStrictLeader("left/right eigenvectors are numerically orthogonal")
    w /= pairing
    return EigenTriple(
        lambda_max=float(lam.real),
        v_max=v,
        w_max=w,
        u0_star=1.0 / (sat_deriv0 * float(lam.real)) if lam.real != 0 else np.inf,
        spectral_gap=gap,
    )


def leading_eigenpair(spec: NetworkSpec) -> EigenTriple:
    """Leading eigenvalue of spec.A with right/left eigenvectors.

    Raises NoStrictLeader when the eigenvalue of largest real part is
    complex, repeated, or has spectral gap below GAP_TOL.
    """
    sat_deriv0 = float(spec.saturation.derivative(0.0))
    vals, vl, vr = _eigen_data(spec.A)
    idx = int(np.argmax(vals.real))
    return _build_triple(spec.A, vals, vl, vr, idx, sat_deriv0)


def eigenpair_near(spec: NetworkSpec, target: float) -> EigenTriple:
    """Eigen data for the real eigenvalue of spec.A closest to ``target``.

    Same normalization and simpleness checks as leading_eigenpair; used to
    classify neutral-branch crossings of non-leading eigenvalues.
    """
    sat_deriv0 = float(spec.saturation.derivative(0.0))
    vals, vl, vr = _eigen_data(spec.A)
    scale = max(1.0, float(np.max(np.abs(vals))))
    real_idx = [i for i in range(len(vals)) if abs(vals[i].imag) <= GAP_TOL * scale]
    if not real_idx:
        raise NoStrictLeader("matrix has no real eigenvalues")
    idx = min(real_idx, key=lambda i: abs(vals[i].real - target))
    lam = vals[idx].real
    others = np.delete(vals, idx)
    if others.size and np.min(np.abs(others - lam)) <= GAP_TOL * scale:
        raise NoStrictLeader(f"eigenvalue {lam:.6g} is not simple")

    v = _fix_sign(vr[:, idx].real.copy())
    v /= np.linalg.norm(v)
    w = vl[:, idx].conj().real.copy()
    pairing = float(w @ v)
    if abs(pairing) < 1e-12:
        raise NoStrictLeader("left/right eigenvectors are numerically orthogonal")
    w /= pairing
    gap = float(lam - np.max(others.real)) if others.size else np.inf
    return EigenTriple(
        lambda_max=float(lam),
        v_max=v,
        w_max=w,
        u0_star=1.0 / (sat_deriv0 * float(lam)) if lam != 0 else np.inf,
        spectral_gap=gap,
    )


def critical_attention(spec: NetworkSpec) -> float:
    """Attention value at which the neutral state loses stability:
    ``1 / (S'(0) * lambda_max)``.

    Raises DegenerateLeader when lambda_max <= 0 (no opinion-forming
    bifurcation at positive attention); propagates NoStrictLeader.
    """
    eig = leading_eigenpair(spec)
    if eig.lambda_max <= 0:
        raise DegenerateLeader(
            f"leading eigenvalue {eig.lambda_max:.6g} is not positive"
        )
    return eig.u0_star


def max_entry_normalized(eig: EigenTriple) -> EigenTriple:
    """Rescale so the largest-magnitude entry of v_max is exactly 1.

    This is the normalization under which reduced-map derivatives are
    reported: for an all-ones kernel it makes v_max the literal ones
    vector, so coefficients refer to per-node opinion amplitude.
    """
    peak = float(np.max(np.abs(eig.v_max)))
    return eig.rescaled(1.0 / peak)
