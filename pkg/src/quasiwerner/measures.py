"""Correlation quantifiers for two-qubit states.

All entropies are in bits. Discord is computed with projective measurements
on one subsystem (Y unless told otherwise) parameterized by two angles::

    |Pi_1> = cos(theta)|+> + exp(i phi) sin(theta)|->
    |Pi_2> = sin(theta)|+> - exp(i phi) cos(theta)|->
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize

from .matcore import (
    SIGMA_Y,
    NumericalError,
    as_matrix,
    check_density,
    clamp_spectrum,
    eigvalsh_2x2_batch,
    hermitian_eigenvalues,
    hermitian_sqrt,
    partial_trace,
    swap_subsystems,
    tensor_product,
)

PROB_TOL = 1e-10
ZERO_OUTCOME = 1e-14
DISCORD_CLAMP = 1e-9
# Eigenvalues of rho * rho~ this small (relative to the largest) are rounding noise.
CONCURRENCE_SNAP = 1e-15

_SY_SY = tensor_product(SIGMA_Y, SIGMA_Y)


def _xlog2x(p: np.ndarray) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    safe = np.where(p > 0, p, 1.0)
    return np.where(p > 0, p * np.log2(safe), 0.0)


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float).ravel()
    if p.size == 0 or np.any(p < 0) or abs(p.sum() - 1.0) > PROB_TOL:
        raise ValueError("not a probability distribution")
    return float(-_xlog2x(p).sum()) + 0.0


def _check_joint(joint) -> np.ndarray:
    joint = np.asarray(joint, dtype=float)
    if joint.ndim != 2:
        raise ValueError("joint distribution must be a 2D table")
    shannon_entropy(joint)
    return joint


def classical_mutual_information(joint) -> float:
    """``H(X) + H(Y) - H(X, Y)`` for a joint table indexed ``[x, y]``."""
    joint = _check_joint(joint)
    return (
        shannon_entropy(joint.sum(axis=1))
        + shannon_entropy(joint.sum(axis=0))
        - shannon_entropy(joint)
    )


def classical_conditional_entropy(joint) -> float:
    """``H(X|Y)`` as the ``p(y)``-weighted entropy of ``p(x|y)``."""
    joint = _check_joint(joint)
    py = joint.sum(axis=0)
    total = 0.0
    for j, p in enumerate(py):
        if p > 0:
            total += p * shannon_entropy(joint[:, j] / p)
    return total


def _entropy_of_spectrum(w) -> float:
    return float(-_xlog2x(clamp_spectrum(w)).sum()) + 0.0


def von_neumann_entropy(rho) -> float:
    rho = check_density(rho)
    return _entropy_of_spectrum(hermitian_eigenvalues(rho))


def quantum_mutual_information(rho) -> float:
    rho = check_density(rho, dims=(4,))
    return (
        von_neumann_entropy(partial_trace(rho, "X"))
        + von_neumann_entropy(partial_trace(rho, "Y"))
        - von_neumann_entropy(rho)
    )


@dataclass(frozen=True)
class MeasurementBasis:
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.theta <= math.pi and 0.0 <= self.phi < 2 * math.pi):
            raise ValueError(
                f"angles out of range: theta={self.theta} in [0, pi], phi={self.phi} in [0, 2pi)"
            )

    @classmethod
    def wrapped(cls, theta: float, phi: float) -> "MeasurementBasis":
        """Fold arbitrary angles into the canonical ranges without changing the measurement."""
        theta = float(theta) % (2 * math.pi)
        phi = float(phi)
        # theta -> theta - pi only flips both kets' signs
        if theta > math.pi:
            theta -= math.pi
        phi = phi % (2 * math.pi)
        if phi >= 2 * math.pi:
            phi = 0.0
        return cls(theta, phi)

    def kets(self) -> np.ndarray:
        """Rows are ``|Pi_1>`` and ``|Pi_2>``."""
        return _measurement_kets(np.array(self.theta), np.array(self.phi))


def _measurement_kets(theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    theta, phi = np.broadcast_arrays(theta, phi)
    c, s = np.cos(theta), np.sin(theta)
    e = np.exp(1j * phi)
    k1 = np.stack([c + 0j, e * s], axis=-1)
    k2 = np.stack([s + 0j, -e * c], axis=-1)
    return np.stack([k1, k2], axis=-2)


def measurement_projectors(basis: MeasurementBasis):
    k = basis.kets()
    return np.outer(k[0], k[0].conj()), np.outer(k[1], k[1].conj())


def _conditional_blocks(rho: np.ndarray, kets: np.ndarray) -> np.ndarray:
    """Unnormalized X states ``<Pi_j|_Y rho |Pi_j>_Y`` for a stack of ket pairs."""
    t = rho.reshape(2, 2, 2, 2)  # [x, y, x', y']
    return np.einsum("...y,xyXz,...z->...xX", kets.conj(), t, kets)


def _conditional_entropy_batch(rho: np.ndarray, theta, phi) -> np.ndarray:
    blocks = _conditional_blocks(rho, _measurement_kets(theta, phi))
    p = np.trace(blocks, axis1=-2, axis2=-1).real
    w = eigvalsh_2x2_batch(blocks)
    live = p > ZERO_OUTCOME
    q = np.where(live[..., None], w / np.where(live, p, 1.0)[..., None], 0.0)
    q = np.clip(q, 0.0, 1.0)
    h = -_xlog2x(q).sum(axis=-1)
    return np.where(live, p * h, 0.0).sum(axis=-1)


def _oriented(rho: np.ndarray, measured: str) -> np.ndarray:
    if measured == "Y":
        return rho
    if measured == "X":
        return swap_subsystems(rho)
    raise ValueError(f"measured must be 'X' or 'Y', got {measured!r}")


def conditional_entropy_after_measurement(rho, basis: MeasurementBasis, measured: str = "Y"):
    """Average entropy of the unmeasured qubit after a projective measurement.

    Returns ``(s_cond, (p1, p2))``. Outcomes with probability below 1e-14
    contribute nothing.
    """
    rho = _oriented(check_density(rho, dims=(4,)), measured)
    blocks = _conditional_blocks(rho, basis.kets())
    probs = []
    s = 0.0
    for blk in blocks:
        p = float(np.trace(blk).real)
        probs.append(p)
        if p >= ZERO_OUTCOME:
            s += p * _entropy_of_spectrum(hermitian_eigenvalues(blk / p))
    return s, tuple(probs)


def classical_correlation_J(rho, basis: MeasurementBasis, measured: str = "Y") -> float:
    rho = check_density(rho, dims=(4,))
    keep = "X" if measured == "Y" else "Y"
    s_cond, _ = conditional_entropy_after_measurement(rho, basis, measured)
    return von_neumann_entropy(partial_trace(rho, keep)) - s_cond


@dataclass(frozen=True)
class OptimizerOptions:
    """Coarse ``n_theta x n_phi`` grid, then Nelder-Mead from the best cell."""

    n_theta: int = 64
    n_phi: int = 64
    tol: float = 1e-9
    max_iter: int = 2000

    def __post_init__(self):
        if self.n_theta < 1 or self.n_phi < 1:
            raise ValueError("grid density must be positive")
        if not self.tol > 0:
            raise ValueError("refinement tolerance must be positive")


def angle_grid(n_theta: int, n_phi: int):
    """Half-open grids ``theta_k = k pi / n_theta`` and ``phi_k = 2 k pi / n_phi``."""
    return (
        np.arange(n_theta) * (math.pi / n_theta),
        np.arange(n_phi) * (2 * math.pi / n_phi),
    )


def conditional_entropy_grid(rho, n_theta: int, n_phi: int, measured: str = "Y") -> np.ndarray:
    """Conditional entropy on the full angle grid, shape ``(n_theta, n_phi)``."""
    rho = _oriented(as_matrix(rho, dims=(4,)), measured)
    thetas, phis = angle_grid(n_theta, n_phi)
    out = np.empty((n_theta, n_phi))
    rows = max(1, 2**18 // n_phi)
    for start in range(0, n_theta, rows):
        th = thetas[start:start + rows, None]
        out[start:start + rows] = _conditional_entropy_batch(rho, th, phis[None, :])
    return out


def minimize_conditional_entropy(rho, opts: OptimizerOptions | None = None, measured: str = "Y"):
    """Minimize the measured conditional entropy over ``(theta, phi)``.

    Returns ``(theta_star, phi_star, s_min)``. The result never exceeds the
    best coarse-grid value, and is deterministic for fixed options.
    """
    opts = opts or OptimizerOptions()
    rho = check_density(rho, dims=(4,))
    grid = conditional_entropy_grid(rho, opts.n_theta, opts.n_phi, measured)
    # argmin of the row-major grid breaks ties by smallest theta, then phi
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    thetas, phis = angle_grid(opts.n_theta, opts.n_phi)
    best = (float(thetas[i]), float(phis[j]), float(grid[i, j]))

    oriented = _oriented(rho, measured)

    def f(x):
        return float(_conditional_entropy_batch(oriented, np.array(x[0]), np.array(x[1])))

    step = (math.pi / opts.n_theta, 2 * math.pi / opts.n_phi)
    simplex = np.array(
        [[best[0], best[1]], [best[0] + step[0], best[1]], [best[0], best[1] + step[1]]]
    )
    res = minimize(
        f,
        simplex[0],
        method="Nelder-Mead",
        options={
            "initial_simplex": simplex,
            "xatol": 1e-10,
            "fatol": opts.tol,
            "maxiter": opts.max_iter,
        },
    )
    if res.fun < best[2]:
        b = MeasurementBasis.wrapped(res.x[0], res.x[1])
        best = (b.theta, b.phi, float(res.fun))
    return best


@dataclass(frozen=True)
class CorrelationReport:
    discord: float
    concurrence: float
    mutual_information: float
    classical_correlation: float
    theta_star: float
    phi_star: float
    s_cond_min: float

    def as_dict(self) -> dict:
        return asdict(self)


def _discord_parts(rho, opts, measured):
    rho = check_density(rho, dims=(4,))
    s_x = von_neumann_entropy(partial_trace(rho, "X"))
    s_y = von_neumann_entropy(partial_trace(rho, "Y"))
    s_xy = von_neumann_entropy(rho)
    theta, phi, s_min = minimize_conditional_entropy(rho, opts, measured)
    s_measured, s_kept = (s_y, s_x) if measured == "Y" else (s_x, s_y)
    mutual = s_x + s_y - s_xy
    discord = s_measured - s_xy + s_min
    if discord < -DISCORD_CLAMP:
        raise NumericalError(f"negative discord {discord:.3e}")
    discord = max(discord, 0.0)
    return discord, mutual, mutual - discord, theta, phi, s_min


def quantum_discord(rho, opts: OptimizerOptions | None = None, measured: str = "Y") -> CorrelationReport:
    """Discord with the optimal measurement on ``measured``; concurrence left as NaN."""
    d, i, j, theta, phi, s_min = _discord_parts(rho, opts, measured)
    return CorrelationReport(d, float("nan"), i, j, theta, phi, s_min)


def spin_flip(rho) -> np.ndarray:
    """``(sy x sy) rho* (sy x sy)``."""
    rho = as_matrix(rho, dims=(4,))
    return _SY_SY @ rho.conj() @ _SY_SY


def concurrence_xstate(rho) -> float:
    """Closed-form concurrence of an X-structured state."""
    rho = as_matrix(rho, dims=(4,))
    d = rho.diagonal().real
    c = 2.0 * max(
        0.0,
        abs(rho[0, 3]) - math.sqrt(max(d[1] * d[2], 0.0)),
        abs(rho[1, 2]) - math.sqrt(max(d[0] * d[3], 0.0)),
    )
    return c


def wootters_lambdas(rho) -> np.ndarray:
    """Square roots of the eigenvalues of ``rho rho~``, descending.

    Taken from the Hermitian similar matrix ``sqrt(rho) rho~ sqrt(rho)``.
    """
    rho = as_matrix(rho, dims=(4,))
    root = hermitian_sqrt(rho)
    herm = root @ spin_flip(rho) @ root
    w = hermitian_eigenvalues(0.5 * (herm + herm.conj().T), method="jacobi")
    w = np.where(np.abs(w) <= CONCURRENCE_SNAP * max(w[0], 1e-300), 0.0, w)
    return np.sqrt(clamp_spectrum(w))


def concurrence(rho, method: str = "spectral") -> float:
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``.

    ``method='xstate'`` uses the closed form, valid only for X-structured input.
    """
    rho = check_density(rho, dims=(4,))
    if method == "xstate":
        return concurrence_xstate(rho)
    if method != "spectral":
        raise ValueError(f"unknown concurrence method {method!r}")
    lam = wootters_lambdas(rho)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def analyze(rho, opts: OptimizerOptions | None = None, measured: str = "Y") -> CorrelationReport:
    """Discord, concurrence and the mutual-information split for one state."""
    d, i, j, theta, phi, s_min = _discord_parts(rho, opts, measured)
    return CorrelationReport(d, concurrence(rho), i, j, theta, phi, s_min)
