"""Squeezed-state family and the perfect / quasi Werner density matrices.

The qubit basis is the even/odd cat pair ``|+>, |->`` built from the
squeezed vacua ``|xi>`` and ``|-xi>``. Everything a state needs from the
squeeze parameter ``r`` flows through the overlap ``M = <xi|-xi>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .matcore import I4

DEFAULT_FOCK_CUTOFF = 500


def _check_r(r: float, allow_zero: bool) -> float:
    r = float(r)
    if not math.isfinite(r) or r < 0 or (r == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise ValueError(f"squeeze parameter r must be finite and {bound}, got {r}")
    return r


def _check_a(a: float) -> float:
    a = float(a)
    if not 0.0 <= a <= 1.0:
        raise ValueError(f"mixing parameter a must lie in [0, 1], got {a}")
    return a


def overlap_M(r: float) -> float:
    """Overlap ``<xi|-xi> = 1/sqrt(cosh 2r)`` of the two squeezed vacua."""
    r = _check_r(r, allow_zero=True)
    # cosh overflows near r = 355; the overlap is zero to double precision long before.
    if r > 300:
        return 0.0
    return 1.0 / math.sqrt(math.cosh(2.0 * r))


def fock_overlap(r: float, n_max: int = DEFAULT_FOCK_CUTOFF) -> float:
    """Overlap ``<xi|-xi>`` summed term by term in the Fock basis.

    Only even photon numbers contribute. Flipping the sign of the squeezing
    flips the sign of every odd-``n`` pair amplitude, so the overlap is::

        (1/cosh r) * sum_{n=0}^{n_max} (2n)!/(n!)^2 * (-tanh(r)^2 / 4)^n

    The terms are generated by their ratio so no factorial is ever formed.
    """
    r = _check_r(r, allow_zero=True)
    n_max = int(n_max)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    x = -math.tanh(r) ** 2 / 4.0
    term = 1.0
    total = 1.0
    for n in range(n_max):
        term *= (2 * n + 2) * (2 * n + 1) / (n + 1) ** 2 * x
        total += term
    return total / math.cosh(r)


@dataclass(frozen=True)
class SqueezedFamily:
    """Scalars derived from one squeeze parameter."""

    r: float
    M: float
    n_plus: float
    n_minus: float
    N_plus: float
    N_minus: float
    alpha: float
    beta: float


def squeezed_family(r: float) -> SqueezedFamily:
    r = _check_r(r, allow_zero=False)
    m = overlap_M(r)
    if m >= 1.0:
        raise ValueError(f"r = {r} is too small: the odd cat normalization diverges")
    n_plus = (2.0 * (1.0 + m * m)) ** -0.5
    n_minus = (2.0 * (1.0 - m * m)) ** -0.5
    big_plus = (2.0 * (1.0 + m)) ** -0.5
    big_minus = (2.0 * (1.0 - m)) ** -0.5
    # n_plus / (2 N_+^2) and n_plus / (2 N_-^2), simplified
    alpha = (1.0 + m) * n_plus
    beta = (1.0 - m) * n_plus
    return SqueezedFamily(r, m, n_plus, n_minus, big_plus, big_minus, alpha, beta)


def build_psi_plus(r: float) -> np.ndarray:
    """Non-maximally entangled ``alpha|++> + beta|-->``."""
    fam = squeezed_family(r)
    return np.array([fam.alpha, 0.0, 0.0, fam.beta], dtype=complex)


def build_psi_minus() -> np.ndarray:
    """Maximally entangled ``(|+-> + |-+>)/sqrt(2)``."""
    s = 1.0 / math.sqrt(2.0)
    return np.array([0.0, s, s, 0.0], dtype=complex)


def bell_corner_state() -> np.ndarray:
    """``(|++> + |-->)/sqrt(2)``, the pure part of :func:`perfect_werner`.

    It is ``build_psi_minus()`` with Y relabelled ``|+> <-> |->``, so both
    carry the same spectrum, concurrence and discord.
    """
    s = 1.0 / math.sqrt(2.0)
    return np.array([s, 0.0, 0.0, s], dtype=complex)


def werner_mixture(psi, a: float) -> np.ndarray:
    """``(1 - a) I/4 + a |psi><psi|``."""
    a = _check_a(a)
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (4,):
        raise ValueError("psi must hold four amplitudes")
    norm = float(np.vdot(psi, psi).real)
    if abs(norm - 1.0) > 1e-12:
        raise ValueError(f"psi is not normalized (norm^2 = {norm})")
    return (1.0 - a) * I4 / 4.0 + a * np.outer(psi, psi.conj())


def quasi_werner(a: float, r: float) -> np.ndarray:
    """Werner mixture over ``build_psi_plus(r)`` written out entry by entry."""
    a = _check_a(a)
    r = _check_r(r, allow_zero=False)
    m = overlap_M(r)
    den = 2.0 * (1.0 + m * m)
    bg = (1.0 - a) / 4.0
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = bg + a * (1.0 + m) ** 2 / den
    rho[1, 1] = bg
    rho[2, 2] = bg
    rho[3, 3] = bg + a * (1.0 - m) ** 2 / den
    rho[0, 3] = rho[3, 0] = a * (1.0 + m) * (1.0 - m) / den
    return rho


def perfect_werner(a: float) -> np.ndarray:
    """Werner mixture over the maximally entangled state, corner form.

    The pure part sits on the outer corners, i.e. the mixture over
    :func:`bell_corner_state`; there is no ``r`` dependence.
    """
    a = _check_a(a)
    rho = np.zeros((4, 4), dtype=complex)
    rho[0, 0] = rho[3, 3] = (1.0 + a) / 4.0
    rho[1, 1] = rho[2, 2] = (1.0 - a) / 4.0
    rho[0, 3] = rho[3, 0] = a / 2.0
    return rho


def werner_state(family: str, a: float, r: float | None = None) -> np.ndarray:
    """Dispatch on ``family`` ('perfect' or 'quasi')."""
    if family == "perfect":
        return perfect_werner(a)
    if family == "quasi":
        if r is None:
            raise ValueError("quasi-Werner states need a squeeze parameter r")
        return quasi_werner(a, r)
    raise ValueError(f"unknown family {family!r}")
