"""Pairing states with family witnesses and searching the curves for detection.

``Tr(rho W_p)`` is linear in the coefficients ``(a, b, c[, d])``:
``Tr(rho W_p) = sum_k v_k G_k(rho) - H(rho)`` where ``G_k`` collects the
populations of the kets ``|l, l+k>`` and ``H`` the coherences between
``|ll>`` and ``|mm>``.  Curve searches evaluate this form on whole grids.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .errors import DimensionError, ParameterError
from .io import write_csv
from .linalg import as_matrix
from .states import (
    ALPHA_RANGE,
    PPT_RANGE,
    HorodeckiParams,
    circulant_state,
    horodecki_state,
    is_ppt,
)
from .witness import (
    DRIVER_RANGE,
    FAMILY_DIM,
    Family,
    WitnessParams,
    build_witness,
    classify,
    params_on_curve,
)

DETECT_TOL = 1e-10
DEFAULT_GRID = 1000
DRIVER_TOL = 1e-10

CSV_COLUMNS = ("alpha", "ppt_min_eig", "best_driver", "best_branch", "best_value", "detected")


@dataclass
class DetectionReport:
    state: dict
    family: str
    best_params: Optional[WitnessParams]
    best_driver: Optional[float]
    best_branch: Optional[int]
    best_value: float
    detected: bool
    ppt_status: bool
    ppt_min_eig: float
    indecomposability_certified: bool = False
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "state": dict(self.state),
            "family": self.family,
            "best_params": None if self.best_params is None else self.best_params.to_dict(),
            "best_driver": self.best_driver,
            "best_branch": self.best_branch,
            "best_value": self.best_value,
            "detected": self.detected,
            "ppt_status": self.ppt_status,
            "ppt_min_eig": self.ppt_min_eig,
            "indecomposability_certified": self.indecomposability_certified,
            "notes": list(self.notes),
        }

    def csv_row(self) -> dict:
        return {
            "alpha": self.state.get("alpha"),
            "ppt_min_eig": self.ppt_min_eig,
            "best_driver": self.best_driver,
            "best_branch": self.best_branch,
            "best_value": self.best_value,
            "detected": self.detected,
        }


def reports_to_csv(reports: Iterable[DetectionReport]) -> str:
    return write_csv([r.csv_row() for r in reports], CSV_COLUMNS)


def state_descriptor(rho) -> dict:
    A = np.ascontiguousarray(as_matrix(rho))
    return {"kind": "matrix", "dim": int(A.shape[0]), "sha256": hashlib.sha256(A.tobytes()).hexdigest()}


def _dim(rho) -> int:
    d = as_matrix(rho).shape[0]
    n = math.isqrt(d)
    if n * n != d:
        raise DimensionError(f"state of dim {d} is not bipartite n x n")
    return n


def pair(rho, p: WitnessParams) -> float:
    """``Tr(rho W_p)``."""
    rho = as_matrix(rho)
    if rho.shape[0] != p.n * p.n:
        raise DimensionError(f"state of dim {rho.shape[0]} vs witness on C^{p.n} (x) C^{p.n}")
    val = np.trace(rho @ build_witness(p))
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ValueError("Tr(rho W) has a sizable imaginary part; is rho Hermitian?")
    return float(val.real)


def pair_form(rho, n: int) -> tuple[np.ndarray, float]:
    """``(G, H)`` with ``Tr(rho W_p) = values(p) . G - H``."""
    rho = as_matrix(rho)
    if rho.shape[0] != n * n:
        raise DimensionError(f"state of dim {rho.shape[0]} is not on C^{n} (x) C^{n}")
    G = np.zeros(n)
    for l in range(n):
        for k in range(n):
            idx = l * n + (l + k) % n
            G[k] += rho[idx, idx].real
    diag = np.arange(n) * (n + 1)
    block = rho[np.ix_(diag, diag)]
    H = float(block.sum().real - np.trace(block).real)
    return G, H


def _curve_values(family: Family, drivers: np.ndarray, branch: int) -> np.ndarray:
    # vectorized params_on_curve: rows (a, b, c[, d])
    x = np.asarray(drivers, dtype=float)
    if family is Family.ELLIPSE3:
        s, prod = 2.0 - x, (1.0 - x) ** 2
    else:
        s, prod = np.ones_like(x), (1.0 - x) ** 2
    r = np.sqrt(np.maximum(s * s - 4.0 * prod, 0.0))
    hi = 0.5 * (s + r)
    lo = np.where(hi > 0.0, prod / np.where(hi > 0.0, hi, 1.0), 0.5 * (s - r))
    first, second = (hi, lo) if branch == 1 else (lo, hi)
    if family is Family.ELLIPSE3:
        return np.stack([x, first, second], axis=1)
    if family is Family.CLASS_I4:
        return np.stack([x, first, 2.0 - x, second], axis=1)
    return np.stack([first, x, second, 2.0 - x], axis=1)


def golden_section(f: Callable[[float], float], lo: float, hi: float, tol: float = DRIVER_TOL):
    """Minimize a unimodal ``f`` on ``[lo, hi]`` to bracket width ``tol``.

    Returns ``(x, f(x))`` for the best point evaluated, endpoints included.
    """
    if hi < lo:
        raise ParameterError("empty bracket")
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    best = min(((lo, f(lo)), (hi, f(hi))), key=lambda t: t[1])
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - invphi * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + invphi * (hi - lo)
            f2 = f(x2)
    for cand in ((x1, f1), (x2, f2)):
        if cand[1] < best[1]:
            best = cand
    return best


def _families_for(n: int, family) -> list[Family]:
    if family is None:
        return [f for f, d in FAMILY_DIM.items() if d == n]
    fam = Family(family)
    if fam is Family.RAW or FAMILY_DIM[fam] != n:
        raise ParameterError(f"family {fam.value} cannot be searched on n={n} states")
    return [fam]


def _curve_minimum(G: np.ndarray, H: float, fam: Family, grid: int, refine: bool):
    lo, hi = DRIVER_RANGE[fam][1]
    xs = np.linspace(lo, hi, grid)
    best = None
    for branch in (1, -1):
        vals = _curve_values(fam, xs, branch) @ G - H
        k = int(np.argmin(vals))
        x, v = float(xs[k]), float(vals[k])
        if refine:
            a, b = float(xs[max(k - 1, 0)]), float(xs[min(k + 1, grid - 1)])

            def f(t, branch=branch):
                return float(_curve_values(fam, np.array([t]), branch)[0] @ G - H)

            xr, vr = golden_section(f, a, b)
            if vr < v:
                x, v = xr, vr
        if best is None or v < best[2]:
            best = (fam, x, v, branch)
    return best


def search_curve(
    rho,
    family=None,
    grid: int = DEFAULT_GRID,
    refine: bool = True,
    state: Optional[dict] = None,
    ppt: Optional[tuple] = None,
) -> DetectionReport:
    """Minimize ``Tr(rho W)`` along a family curve, both root branches.

    ``family=None`` searches every family of matching dimension (both
    classes for n=4).  Failure to detect means only that no witness of the
    searched family detects ``rho``.
    """
    if grid < 2:
        raise ParameterError("grid needs at least 2 points")
    rho = as_matrix(rho)
    n = _dim(rho)
    G, H = pair_form(rho, n)
    best = None
    for fam in _families_for(n, family):
        cand = _curve_minimum(G, H, fam, grid, refine)
        if best is None or cand[2] < best[2]:
            best = cand
    fam, x, _, branch = best
    params = params_on_curve(fam, x, branch)
    value = pair(rho, params)
    ok, lam = ppt if ppt is not None else is_ppt(rho, n)
    detected = value < -DETECT_TOL
    return DetectionReport(
        state=state if state is not None else state_descriptor(rho),
        family=fam.value,
        best_params=params,
        best_driver=x,
        best_branch=branch,
        best_value=value,
        detected=detected,
        ppt_status=ok,
        ppt_min_eig=lam,
        indecomposability_certified=detected and ok,
    )


def detect_horodecki(n: int, alpha: float, family=None, grid: int = DEFAULT_GRID) -> DetectionReport:
    h = HorodeckiParams(n, alpha)
    return search_curve(horodecki_state(h), family, grid, state=h.to_dict())


def alpha_grid(n: int, lo: Optional[float] = None, hi: Optional[float] = None, step: float = 0.05):
    """Uniform alpha grid, rounded so that grid points hit round values exactly."""
    rlo, rhi = ALPHA_RANGE[n]
    lo = rlo if lo is None else lo
    hi = rhi if hi is None else hi
    if step <= 0.0:
        raise ParameterError("step must be positive")
    if not (rlo <= lo <= hi <= rhi):
        raise ParameterError(f"alpha range [{lo}, {hi}] outside the legitimacy range [{rlo}, {rhi}]")
    count = int(math.floor((hi - lo) / step + 1e-9)) + 1
    return [round(lo + k * step, 12) for k in range(count)]


def sweep_alpha(n: int, family=None, alphas: Optional[Sequence[float]] = None, grid: int = DEFAULT_GRID):
    """One report per alpha, in the given order."""
    if alphas is None:
        alphas = alpha_grid(n)
    return [detect_horodecki(n, float(al), family, grid) for al in alphas]


def circulant_probe(p: WitnessParams):
    """PPT state matched to ``W_p``; detected by ``W_p`` exactly when it is indecomposable.

    Populations ``|l, l+k>`` get weight ``w_{-k}`` and the ``|ll>`` block is
    circulant with every entry ``s = sqrt(w_1 w_{-1})``; the partial transpose
    is then a sum of rank-one 2x2 blocks.  For n=4 the distance-2 kets get
    population ``s`` too.  Returns ``None`` when ``s = 0``.
    """
    v = p.values
    s = math.sqrt(v[1] * v[-1])
    if s == 0.0:
        return None
    if p.n == 3:
        offsets = [0.0, v[2], v[1]]
    else:
        offsets = [0.0, v[3], s, v[1]]
    rho = circulant_state(p.n, offsets, [s] * p.n)
    desc = {"kind": "circulant_probe", "n": p.n, "offset_weights": offsets, "block": [s] * p.n}
    return rho, desc


def certify_indecomposable(p: WitnessParams, grid: int = 81) -> tuple[bool, DetectionReport]:
    """Look for a PPT state detected by ``W_p``.

    Sweeps the Horodecki states over their PPT band first, then the circulant
    probe.  ``True`` means ``W_p`` cannot be decomposable; ``False`` means only
    that no probe detected.
    """
    p = classify(p)
    if p.n not in PPT_RANGE:
        raise ParameterError(f"no probe states for n={p.n}")
    lo, hi = PPT_RANGE[p.n]
    best = None
    for al in np.linspace(lo, hi, grid):
        h = HorodeckiParams(p.n, float(al))
        rho = horodecki_state(h)
        val = pair(rho, p)
        if best is None or val < best[0]:
            best = (val, rho, h.to_dict())
    candidates = [best]
    probe = circulant_probe(p)
    if probe is not None:
        candidates.append((pair(probe[0], p), probe[0], probe[1]))
    report = None
    for val, rho, desc in candidates:
        ok, lam = is_ppt(rho, p.n)
        detected = val < -DETECT_TOL
        report = DetectionReport(
            state=desc,
            family=p.family.value,
            best_params=p,
            best_driver=None,
            best_branch=None,
            best_value=val,
            detected=detected,
            ppt_status=ok,
            ppt_min_eig=lam,
            indecomposability_certified=detected and ok,
        )
        if report.indecomposability_certified:
            return True, report
    return False, report
