"""Circulant positive maps on M_3 / M_4 and their entanglement witnesses.

The witness for parameters ``(a, b, c[, d])`` is

    W = sum_{i,j} w[i][j] |ij><ij|  -  sum_{i != j} |ii><jj|

with the circulant coefficient table ``w[i][i+k mod n]`` equal to
``a, b, c, d`` for ``k = 0, 1, 2, 3``.  Witnesses are kept unnormalized; the
map carries the prefactor ``1/s`` with ``s = a+b+c`` (n=3) or ``s = 3`` (n=4).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DimensionError, NoRealBranchError, ParameterError
from .linalg import as_matrix

CONSTRUCT_TOL = 1e-12
USER_TOL = 1e-10


class Family(str, enum.Enum):
    ELLIPSE3 = "ellipse3"
    CLASS_I4 = "class1"
    CLASS_II4 = "class2"
    RAW = "raw"


class Decomposability(str, enum.Enum):
    DECOMPOSABLE = "Decomposable"
    INDECOMPOSABLE = "Indecomposable"
    UNKNOWN = "Unknown"


FAMILY_DIM = {Family.ELLIPSE3: 3, Family.CLASS_I4: 4, Family.CLASS_II4: 4}

# (name of the driving parameter, admissible driver interval)
DRIVER_RANGE = {
    Family.ELLIPSE3: ("a", (0.0, 1.0)),
    Family.CLASS_I4: ("a", (0.5, 1.0)),
    Family.CLASS_II4: ("b", (0.5, 1.5)),
}


def family_residual(family: Family, a: float, b: float, c: float, d: Optional[float]) -> float:
    """Largest violation of the defining equalities of ``family``."""
    if family is Family.ELLIPSE3:
        return max(abs(a + b + c - 2.0), abs(b * c - (1.0 - a) ** 2), max(a - 1.0, 0.0))
    if family is Family.CLASS_I4:
        return max(abs(a + c - 2.0), abs(b + d - 1.0), abs(b * d - (1.0 - a) ** 2))
    if family is Family.CLASS_II4:
        return max(abs(a + c - 1.0), abs(b + d - 2.0), abs(a * c - (1.0 - b) ** 2))
    return 0.0


@dataclass(frozen=True)
class WitnessParams:
    """Parameters of ``Phi[a,b,c]`` (n=3) or ``Phi[a,b,c,d]`` (n=4)."""

    n: int
    a: float
    b: float
    c: float
    d: Optional[float] = None
    family: Family = Family.RAW

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        if self.n not in (3, 4):
            raise ParameterError(f"n must be 3 or 4, got {self.n}")
        if (self.d is None) != (self.n == 3):
            raise ParameterError("d is required for n=4 and forbidden for n=3")
        vals = self.values
        if not all(math.isfinite(v) for v in vals):
            raise ParameterError("parameters must be finite")
        if min(vals) < 0.0:
            raise ParameterError(f"parameters must be nonnegative, got {vals}")
        if self.n == 4 and abs(sum(vals) - 3.0) > USER_TOL:
            raise ParameterError(f"n=4 requires a+b+c+d=3, got {sum(vals)!r}")
        if self.family is not Family.RAW:
            if FAMILY_DIM[self.family] != self.n:
                raise ParameterError(f"family {self.family.value} requires n={FAMILY_DIM[self.family]}")
            res = family_residual(self.family, self.a, self.b, self.c, self.d)
            if res > USER_TOL:
                raise ParameterError(f"point is off the {self.family.value} curve (residual {res:.3g})")

    @property
    def values(self) -> tuple:
        return (self.a, self.b, self.c) if self.n == 3 else (self.a, self.b, self.c, self.d)

    @property
    def scale(self) -> float:
        """Normalization ``s`` of the map: a+b+c for n=3, 3 for n=4."""
        return self.a + self.b + self.c if self.n == 3 else 3.0

    def to_dict(self) -> dict:
        out = {"n": self.n, "a": self.a, "b": self.b, "c": self.c}
        if self.n == 4:
            out["d"] = self.d
        out["family"] = self.family.value
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "WitnessParams":
        return cls(data["n"], data["a"], data["b"], data["c"], data.get("d"), Family(data.get("family", "raw")))


def raw(*values: float) -> WitnessParams:
    """Parameters given positionally, without a family tag."""
    if len(values) == 3:
        return WitnessParams(3, *values)
    if len(values) == 4:
        return WitnessParams(4, *values)
    raise ParameterError("expected 3 or 4 parameters")


def classify(p: WitnessParams, tol: float = USER_TOL) -> WitnessParams:
    """Attach the family tag of the curve ``p`` lies on, if any."""
    if p.family is not Family.RAW:
        return p
    for fam, dim in FAMILY_DIM.items():
        if dim == p.n and family_residual(fam, p.a, p.b, p.c, p.d) <= tol:
            return WitnessParams(p.n, p.a, p.b, p.c, p.d, fam)
    return p


def _roots(s: float, prod: float) -> tuple[float, float]:
    # roots of x^2 - s x + prod, larger first
    disc = s * s - 4.0 * prod
    if disc < 0.0:
        if disc < -1e-14 * max(1.0, s * s):
            raise NoRealBranchError(f"x^2 - {s}x + {prod} has no real roots")
        disc = 0.0
    r = math.sqrt(disc)
    hi = 0.5 * (s + r)
    lo = prod / hi if hi > 0.0 else 0.5 * (s - r)
    return hi, lo


def params_on_curve(family, driver: float, branch: int = 1) -> WitnessParams:
    """Point of a positive-map family selected by its driver and root branch.

    ``branch=+1`` assigns the larger quadratic root to ``b`` (ellipse, Class I)
    or to ``a`` (Class II).
    """
    family = Family(family)
    if family is Family.RAW:
        raise ParameterError("raw parameters have no curve")
    if branch not in (1, -1):
        raise ParameterError("branch must be +1 or -1")
    name, (lo, hi) = DRIVER_RANGE[family]
    if not (lo - 1e-15 <= driver <= hi + 1e-15):
        raise NoRealBranchError(f"{name}={driver} outside [{lo}, {hi}] for {family.value}")
    x = min(max(driver, lo), hi)
    if family is Family.ELLIPSE3:
        big, small = _roots(2.0 - x, (1.0 - x) ** 2)
        b, c = (big, small) if branch == 1 else (small, big)
        return WitnessParams(3, x, b, c, family=family)
    big, small = _roots(1.0, (1.0 - x) ** 2)
    first, second = (big, small) if branch == 1 else (small, big)
    if family is Family.CLASS_I4:
        return WitnessParams(4, x, first, 2.0 - x, second, family)
    return WitnessParams(4, first, x, second, 2.0 - x, family)


def coefficient_table(p: WitnessParams) -> np.ndarray:
    """Unnormalized circulant table ``w[i][(i+k) % n] = (a, b, c, d)[k]``."""
    vals = np.array(p.values, dtype=float)
    n = p.n
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    return vals[idx]


def build_witness(p: WitnessParams) -> np.ndarray:
    n = p.n
    w = coefficient_table(p)
    W = np.diag(w.ravel()).astype(complex)
    diag_idx = np.arange(n) * (n + 1)
    for i in diag_idx:
        for j in diag_idx:
            if i != j:
                W[i, j] = -1.0
    return W


def apply_map(p: WitnessParams, X) -> np.ndarray:
    """``Phi(X) = (1/s) M`` with ``M_ii = sum_j w[i][j] x_jj`` and ``M_ij = -x_ij``."""
    X = as_matrix(X)
    if X.shape[0] != p.n:
        raise DimensionError(f"map acts on M_{p.n}, got a {X.shape[0]}x{X.shape[0]} matrix")
    M = -X.copy()
    np.fill_diagonal(M, coefficient_table(p) @ np.diag(X))
    return M / p.scale


def choi_matrix(p: WitnessParams) -> np.ndarray:
    """``sum_ij Phi(|i><j|) (x) |i><j|``; equals ``build_witness(p) / s``."""
    n = p.n
    C = np.zeros((n * n, n * n), dtype=complex)
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n))
            E[i, j] = 1.0
            C += np.kron(apply_map(p, E), E)
    return C


def is_positive_condition(p: WitnessParams, tol: float = USER_TOL) -> bool:
    """Algebraic sufficient conditions for positivity of the map.

    n=3: ``a+b+c >= 2`` and ``a <= 1 => bc >= (1-a)^2``.
    n=4: membership in Class I or Class II (no general criterion is used).
    """
    if p.n == 3:
        a, b, c = p.values
        if a + b + c < 2.0 - tol:
            return False
        return a > 1.0 or b * c >= (1.0 - a) ** 2 - tol
    return any(
        family_residual(fam, p.a, p.b, p.c, p.d) <= tol for fam in (Family.CLASS_I4, Family.CLASS_II4)
    )


def decomposability_flag(p: WitnessParams, tol: float = CONSTRUCT_TOL) -> Decomposability:
    if p.family is Family.RAW:
        return Decomposability.UNKNOWN
    if p.n == 3:
        equal = abs(p.b - p.c) <= tol
    else:
        equal = abs(p.b - p.d) <= tol
    return Decomposability.DECOMPOSABLE if equal else Decomposability.INDECOMPOSABLE


def omega_expectation(p: WitnessParams) -> float:
    """Closed form of ``<Omega|W|Omega>`` for ``Omega = sum_i |ii>``: n*a - n(n-1)."""
    return p.n * p.a - p.n * (p.n - 1)
