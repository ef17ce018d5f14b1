"""Oracle cross-checks runnable from the command line.

Each check computes a residual and compares it to a fixed tolerance. The
dense-grid discord oracle here deliberately avoids the optimizer's code
path: it applies ``I (x) Pi_j`` to the full 4x4 state and diagonalizes the
reduced blocks with LAPACK.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import matcore
from .measures import OptimizerOptions, concurrence, concurrence_xstate, quantum_discord, von_neumann_entropy
from .matcore import partial_trace
from .states import build_psi_plus, fock_overlap, overlap_M, perfect_werner, quasi_werner, werner_mixture

FOCK_RADII = (0.1, 0.5, 0.7, 1.0, 1.5, 2.0)
A_GRID = tuple(k / 10 for k in range(11))
R_GRID = (0.1, 0.3, 0.7, 1.0, 1.5, 2.5, 5.0)
ORACLE_STATES = (
    ("perfect", 0.5, None),
    ("perfect", 0.9, None),
    ("quasi", 0.4, 0.7),
    ("quasi", 0.7, 2.5),
    ("quasi", 1.0, 0.3),
)


def brute_force_min_conditional_entropy(rho, n_theta: int, n_phi: int, chunk: int = 65536) -> float:
    """Minimum over the half-open ``n_theta x n_phi`` angle grid, measuring Y."""
    rho = np.asarray(rho, dtype=complex)
    th = np.arange(n_theta) * (math.pi / n_theta)
    ph = np.arange(n_phi) * (2 * math.pi / n_phi)
    tt, pp = (g.ravel() for g in np.meshgrid(th, ph, indexing="ij"))
    eye = np.eye(2)
    best = math.inf
    for s in range(0, tt.size, chunk):
        c, sn, e = np.cos(tt[s:s + chunk]), np.sin(tt[s:s + chunk]), np.exp(1j * pp[s:s + chunk])
        total = np.zeros(c.size)
        for ket in (np.stack([c + 0j, e * sn], -1), np.stack([sn + 0j, -e * c], -1)):
            proj = ket[:, :, None] * ket[:, None, :].conj()
            big = np.einsum("ab,nij->naibj", eye, proj).reshape(-1, 4, 4)
            post = big @ rho @ big
            p = np.trace(post, axis1=1, axis2=2).real
            reduced = np.einsum("nikjk->nij", post.reshape(-1, 2, 2, 2, 2))
            live = p > 1e-14
            w = np.linalg.eigvalsh(reduced[live] / p[live, None, None])
            w = np.clip(w, 1e-300, 1.0)
            total[live] += p[live] * -(w * np.log2(w)).sum(axis=1)
        best = min(best, float(total.min()))
    return best


def brute_force_discord(rho, n: int = 1024) -> float:
    s_y = von_neumann_entropy(partial_trace(rho, "Y"))
    s_xy = von_neumann_entropy(rho)
    return s_y - s_xy + brute_force_min_conditional_entropy(rho, n, n)


def _state(family, a, r):
    return perfect_werner(a) if family == "perfect" else quasi_werner(a, r)


def fock_residual() -> float:
    return max(abs(fock_overlap(r, 500) - overlap_M(r)) for r in FOCK_RADII)


def mixture_residual() -> float:
    return max(
        float(np.max(np.abs(werner_mixture(build_psi_plus(r), a) - quasi_werner(a, r))))
        for a in A_GRID
        for r in R_GRID
    )


def concurrence_residual() -> float:
    states = [perfect_werner(a) for a in A_GRID] + [quasi_werner(a, r) for a in A_GRID for r in R_GRID]
    return max(abs(concurrence(s) - concurrence_xstate(s)) for s in states)


def eigen_residual() -> float:
    states = [perfect_werner(a) for a in A_GRID] + [quasi_werner(a, r) for a in A_GRID for r in R_GRID]
    return max(
        float(np.max(np.abs(
            matcore.hermitian_eigenvalues(s, "jacobi") - matcore.hermitian_eigenvalues(s, "xstate")
        )))
        for s in states
    )


def decomposition_residual() -> float:
    out = 0.0
    for fam, a, r in ORACLE_STATES:
        rep = quantum_discord(_state(fam, a, r))
        out = max(out, abs(rep.discord + rep.classical_correlation - rep.mutual_information))
    return out


def grid_oracle_residual(n: int, opts: OptimizerOptions | None = None) -> float:
    out = 0.0
    for fam, a, r in ORACLE_STATES:
        rho = _state(fam, a, r)
        out = max(out, abs(quantum_discord(rho, opts).discord - brute_force_discord(rho, n)))
    return out


@dataclass
class Check:
    name: str
    tolerance: float
    residual: Callable[[], float]


@dataclass
class CheckResult:
    name: str
    tolerance: float
    residual: float
    seconds: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.residual) and self.residual <= self.tolerance


def default_checks(full: bool = False) -> list[Check]:
    checks = [
        Check("fock overlap vs closed form", 1e-9, fock_residual),
        Check("werner mixture vs explicit quasi matrix", 1e-12, mixture_residual),
        Check("jacobi vs X-state eigenvalues", 1e-10, eigen_residual),
        Check("concurrence spectral vs X-state closed form", 1e-10, concurrence_residual),
        Check("discord + J - I", 1e-9, decomposition_residual),
        Check("refined discord vs 256x256 grid", 1e-6, lambda: grid_oracle_residual(256)),
    ]
    if full:
        checks.append(Check("refined discord vs 1024x1024 grid", 1e-6, lambda: grid_oracle_residual(1024)))
    return checks


def run_checks(checks, echo: Callable[[str], None] | None = print) -> list[CheckResult]:
    results = []
    for check in checks:
        t0 = time.perf_counter()
        try:
            res = float(check.residual())
        except Exception as exc:  # a crashing check is a failing check
            res = math.nan
            if echo:
                echo(f"  {check.name}: raised {type(exc).__name__}: {exc}")
        result = CheckResult(check.name, check.tolerance, res, time.perf_counter() - t0)
        results.append(result)
        if echo:
            status = "PASS" if result.passed else "FAIL"
            echo(f"{status}  {check.name}: residual {res:.3e} (tol {check.tolerance:.0e}, {result.seconds:.2f}s)")
    return results


def verify(full: bool = False, checks=None, echo=print) -> int:
    """Run the oracle suite; returns the process exit status (0 or 2)."""
    results = run_checks(default_checks(full) if checks is None else checks, echo)
    return 0 if all(r.passed for r in results) else 2
