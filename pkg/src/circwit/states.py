"""Maximally entangled states, shifted diagonal projectors and Horodecki states."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, ParameterError
from .linalg import as_matrix, hermitian_spectrum, is_hermitian, partial_transpose

PPT_TOL = 1e-10

# legitimacy ranges of alpha (nonnegative mixture weights)
ALPHA_RANGE = {3: (0.0, 5.0), 4: (0.0, 10.0)}
# alpha ranges on which the states are PPT
PPT_RANGE = {3: (1.0, 4.0), 4: (1.0, 9.0)}


def max_entangled(n: int) -> np.ndarray:
    """``P+ = (1/n) sum_ij |ii><jj|``."""
    if n < 2:
        raise ParameterError("n must be at least 2")
    omega = np.zeros(n * n, dtype=complex)
    omega[:: n + 1] = 1.0
    return np.outer(omega, omega) / n


def pi_projector(n: int, k: int) -> np.ndarray:
    """``Pi_k = (1/n) sum_l |l, l+k><l, l+k|`` (indices mod n)."""
    if not 1 <= k <= n - 1:
        raise ParameterError(f"k must lie in [1, {n - 1}], got {k}")
    P = np.zeros((n * n, n * n), dtype=complex)
    for l in range(n):
        idx = l * n + (l + k) % n
        P[idx, idx] = 1.0 / n
    return P


@dataclass(frozen=True)
class HorodeckiParams:
    n: int
    alpha: float

    def __post_init__(self):
        if self.n not in ALPHA_RANGE:
            raise ParameterError(f"Horodecki states are defined for n=3,4, got {self.n}")
        lo, hi = ALPHA_RANGE[self.n]
        if not (math.isfinite(self.alpha) and lo <= self.alpha <= hi):
            raise ParameterError(f"alpha={self.alpha} outside the legitimacy range [{lo}, {hi}]")

    def to_dict(self) -> dict:
        return {"kind": "horodecki", "n": self.n, "alpha": self.alpha}


def horodecki_state(h: HorodeckiParams) -> np.ndarray:
    """Generalized Horodecki state.

    n=3: (2 P+ + alpha Pi_1 + (5 - alpha) Pi_2) / 7
    n=4: (3 P+ + alpha Pi_1 + 3 Pi_2 + (10 - alpha) Pi_3) / 16
    """
    n, al = h.n, h.alpha
    if n == 3:
        rho = 2 * max_entangled(3) + al * pi_projector(3, 1) + (5 - al) * pi_projector(3, 2)
        return rho / 7.0
    rho = (
        3 * max_entangled(4)
        + al * pi_projector(4, 1)
        + 3 * pi_projector(4, 2)
        + (10 - al) * pi_projector(4, 3)
    )
    return rho / 16.0


def check_density(rho, tol: float = PPT_TOL) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; returns the array."""
    rho = as_matrix(rho)
    if not is_hermitian(rho):
        raise ParameterError("density matrix must be Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > 1e-12:
        raise ParameterError(f"density matrix must have unit trace, got {tr!r}")
    lam = hermitian_spectrum(rho)[0]
    if lam < -tol:
        raise ParameterError(f"density matrix has negative eigenvalue {lam:.3g}")
    return rho


def is_ppt(rho, n: int, tol: float = PPT_TOL) -> tuple[bool, float]:
    """PPT test: ``(min eig of rho^Gamma >= -tol, min eig)``."""
    rho = as_matrix(rho)
    if rho.shape[0] != n * n:
        raise DimensionError(f"state of dim {rho.shape[0]} is not on C^{n} (x) C^{n}")
    lam = float(hermitian_spectrum(partial_transpose(rho, n))[0])
    return lam >= -tol, lam


def horodecki_ppt(n: int, alpha: float) -> tuple[bool, float]:
    return is_ppt(horodecki_state(HorodeckiParams(n, alpha)), n)


def locate_ppt_boundary(n: int, inside: float, outside: float, width: float = 1e-6) -> float:
    """Bisect between a PPT ``inside`` alpha and an NPT ``outside`` alpha.

    Returns the midpoint of the final bracket, whose width is at most ``width``.
    """
    if not horodecki_ppt(n, inside)[0]:
        raise ParameterError(f"alpha={inside} is not PPT")
    if horodecki_ppt(n, outside)[0]:
        raise ParameterError(f"alpha={outside} is PPT")
    lo, hi = inside, outside
    while abs(hi - lo) > width:
        mid = 0.5 * (lo + hi)
        if horodecki_ppt(n, mid)[0]:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def ppt_boundaries(n: int, grid: int = 101, width: float = 1e-6) -> list[float]:
    """Alphas where the Horodecki family switches PPT status.

    Scans the legitimacy range on a uniform grid and bisects every sign
    change of the PPT test down to ``width``.
    """
    lo, hi = ALPHA_RANGE[n]
    alphas = np.linspace(lo, hi, grid)
    flags = [horodecki_ppt(n, float(al))[0] for al in alphas]
    out = []
    for k in range(grid - 1):
        if flags[k] != flags[k + 1]:
            inside, outside = (alphas[k], alphas[k + 1]) if flags[k] else (alphas[k + 1], alphas[k])
            out.append(locate_ppt_boundary(n, float(inside), float(outside), width))
    return out


def circulant_state(n: int, offset_weights, block) -> np.ndarray:
    """State invariant under cyclic shifts and diagonal phase twirls.

    ``offset_weights[k]`` (k = 1..n-1) is the population of each ket
    ``|l, l+k>``; ``block[k]`` (k = 0..n-1) is the circulant entry
    ``<ll|rho|l+k, l+k>``.  The result is trace-normalized.
    """
    offset_weights = np.asarray(offset_weights, dtype=float)
    block = np.asarray(block, dtype=complex)
    if offset_weights.shape != (n,) or block.shape != (n,):
        raise DimensionError("offset_weights and block need n entries")
    rho = np.zeros((n * n, n * n), dtype=complex)
    for l in range(n):
        for k in range(1, n):
            idx = l * n + (l + k) % n
            rho[idx, idx] = offset_weights[k]
        for k in range(n):
            m = (l + k) % n
            rho[l * (n + 1), m * (n + 1)] = block[k]
    tr = np.trace(rho).real
    if tr <= 0.0:
        raise ParameterError("state has zero trace")
    return rho / tr
