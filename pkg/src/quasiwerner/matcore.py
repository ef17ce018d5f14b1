"""Small dense complex-matrix kernel for one- and two-qubit operators.

Matrices are plain ``numpy`` arrays of dtype ``complex128`` with shape
``(2, 2)`` or ``(4, 4)``. Two-qubit operators use the basis ordering
``|++>, |+->, |-+>, |-->`` (first factor is subsystem X, second is Y).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-12
EIG_INPUT_TOL = 1e-10
JACOBI_OFF_TOL = 1e-14
JACOBI_MAX_SWEEPS = 60

SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
I2 = np.eye(2, dtype=complex)
I4 = np.eye(4, dtype=complex)

_X_MASK = np.array(
    [[1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 1, 0], [1, 0, 0, 1]], dtype=bool
)


class NumericalError(ArithmeticError):
    """A computation produced a value outside its admissible range."""


def as_matrix(m, dims=(2, 4)) -> np.ndarray:
    """Coerce ``m`` to a square complex array whose size is in ``dims``."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of size {dims}, got shape {a.shape}")
    return a


def dagger(a) -> np.ndarray:
    return as_matrix(a).conj().T


def mat_mul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def tensor_product(a, b) -> np.ndarray:
    """Kronecker product ``a (x) b`` of two single-qubit operators."""
    a = as_matrix(a, dims=(2,))
    b = as_matrix(b, dims=(2,))
    return np.kron(a, b)


def partial_trace(rho, keep: str = "X") -> np.ndarray:
    """Reduce a two-qubit operator to subsystem ``keep`` ('X' or 'Y')."""
    rho = as_matrix(rho, dims=(4,))
    t = rho.reshape(2, 2, 2, 2)  # [x, y, x', y']
    if keep == "X":
        return np.einsum("ikjk->ij", t)
    if keep == "Y":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"keep must be 'X' or 'Y', got {keep!r}")


def swap_subsystems(rho) -> np.ndarray:
    """Exchange the roles of X and Y in a two-qubit operator."""
    rho = as_matrix(rho, dims=(4,))
    return rho.reshape(2, 2, 2, 2).transpose(1, 0, 3, 2).reshape(4, 4)


def hermiticity_defect(h) -> float:
    h = np.asarray(h)
    return float(np.max(np.abs(h - h.conj().T)))


def is_x_state(h) -> bool:
    """True when every entry off the diagonal and anti-diagonal is exactly zero."""
    h = np.asarray(h)
    return h.shape == (4, 4) and not np.any(h[~_X_MASK])


def _jacobi_pair(h: np.ndarray, p: int, q: int) -> np.ndarray:
    # Phase rotation makes h[p, q] real, then a real Jacobi rotation zeroes it.
    g = h[p, q]
    mag = abs(g)
    n = h.shape[0]
    theta = (h[q, q].real - h[p, p].real) / (2.0 * mag)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c
    phase = np.conj(g) / mag
    rot = np.eye(n, dtype=complex)
    rot[p, p] = c
    rot[p, q] = s
    rot[q, p] = -s * phase
    rot[q, q] = c * phase
    return rot


def jacobi_eigh(h, tol: float = JACOBI_OFF_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS):
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Returns ``(eigenvalues, vectors)`` with the eigenvalues in descending
    order and the matching orthonormal eigenvectors as columns. The sweep
    stops when the off-diagonal Frobenius norm drops below
    ``tol * max(1, ||h||_F)``.
    """
    a = as_matrix(h).copy()
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.abs(a - np.diag(np.diag(a))) ** 2))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) < 1e-300:
                    continue
                rot = _jacobi_pair(a, p, q)
                a = rot.conj().T @ a @ rot
                a[p, q] = a[q, p] = 0.0
                v = v @ rot
    else:
        raise NumericalError("Jacobi diagonalization did not converge")
    w = np.diag(a).real
    order = np.argsort(-w, kind="stable")
    return w[order], v[:, order]


def _eig_2x2(a: complex, b: complex, d: complex):
    mean = 0.5 * (a.real + d.real)
    rad = np.hypot(0.5 * (a.real - d.real), abs(b))
    return [mean + rad, mean - rad]


def x_state_eigenvalues(h) -> np.ndarray:
    """Closed-form spectrum of an X-structured 4x4 Hermitian matrix."""
    h = as_matrix(h, dims=(4,))
    if not is_x_state(h):
        raise ValueError("matrix is not X-structured")
    w = _eig_2x2(h[0, 0], h[0, 3], h[3, 3]) + _eig_2x2(h[1, 1], h[1, 2], h[2, 2])
    return np.sort(np.array(w))[::-1]


def hermitian_eigenvalues(h, method: str = "auto") -> np.ndarray:
    """Eigenvalues of a Hermitian 2x2 or 4x4 matrix, sorted descending.

    ``method`` is ``"jacobi"``, ``"xstate"`` (closed form, X-structured
    input only) or ``"auto"`` which takes the closed form when it applies.
    """
    h = as_matrix(h)
    if hermiticity_defect(h) > EIG_INPUT_TOL:
        raise ValueError("matrix is not Hermitian")
    if method == "auto":
        method = "xstate" if is_x_state(h) else "jacobi"
    if method == "xstate":
        return x_state_eigenvalues(h)
    if method == "jacobi":
        return jacobi_eigh(h)[0]
    raise ValueError(f"unknown eigenvalue method {method!r}")


def eigvalsh_2x2_batch(m: np.ndarray) -> np.ndarray:
    """Eigenvalues of a stack of 2x2 Hermitian matrices, shape ``(..., 2)``.

    Column 0 holds the larger eigenvalue.
    """
    a = m[..., 0, 0].real
    d = m[..., 1, 1].real
    mean = 0.5 * (a + d)
    rad = np.hypot(0.5 * (a - d), np.abs(m[..., 0, 1]))
    return np.stack([mean + rad, mean - rad], axis=-1)


def clamp_spectrum(w, tol: float = POSITIVITY_TOL) -> np.ndarray:
    """Zero eigenvalues in ``[-tol, 0)``; anything more negative is an error."""
    w = np.asarray(w, dtype=float)
    if np.any(w < -tol):
        raise NumericalError(f"eigenvalue {w.min():.3e} is below -{tol:g}")
    return np.where(w < 0.0, 0.0, w)


def hermitian_sqrt(h) -> np.ndarray:
    """Principal square root of a positive semidefinite Hermitian matrix."""
    w, v = jacobi_eigh(h)
    w = clamp_spectrum(w)
    return (v * np.sqrt(w)) @ v.conj().T


@dataclass(frozen=True)
class ValidationReport:
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float
    tol: float = HERMITIAN_TOL

    @property
    def ok(self) -> bool:
        return (
            self.hermiticity_defect <= self.tol
            and self.trace_defect <= self.tol
            and self.min_eigenvalue >= -self.tol
        )

    def __bool__(self) -> bool:
        return self.ok


def validate_density(rho, tol: float = HERMITIAN_TOL) -> ValidationReport:
    """Diagnose whether ``rho`` is a valid density matrix; never raises on bad states."""
    rho = as_matrix(rho)
    herm = hermiticity_defect(rho)
    tr = np.trace(rho)
    trace_defect = float(abs(tr - 1.0))
    sym = 0.5 * (rho + rho.conj().T)
    min_eig = float(hermitian_eigenvalues(sym)[-1])
    return ValidationReport(herm, trace_defect, min_eig, tol)


def check_density(rho, dims=(2, 4)) -> np.ndarray:
    """Return ``rho`` as an array, raising ``ValueError`` if it is not a valid state."""
    rho = as_matrix(rho, dims=dims)
    report = validate_density(rho)
    if not report.ok:
        raise ValueError(
            "invalid density matrix: hermiticity defect "
            f"{report.hermiticity_defect:.2e}, trace defect {report.trace_defect:.2e}, "
            f"min eigenvalue {report.min_eigenvalue:.2e}"
        )
    return rho
