"""Zero-expectation product vectors and spanning certificates for witnesses.

A witness W is optimal when the product vectors ``psi (x) phi`` with
``<psi phi|W|psi phi> = 0`` span the whole space.  Spanning of the
partially conjugated vectors ``psi (x) phi*`` certifies the same for
``W^Gamma``, because ``<psi phi*|W^Gamma|psi phi*> = <psi phi|W|psi phi>``.
Both together certify nd-optimality.

Three sources of zero vectors are available:

* the explicit vector lists for the n=4 classes, transcribed verbatim as
  data and audited rather than trusted;
* exact solutions of the two-mode and four-mode ansatz quadratics;
* see-saw minimization over product vectors, polished onto the real
  modulus problem.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DegenerateFamilyError, DimensionError, NoRealBranchError, ParameterError
from .linalg import as_matrix, singular_values
from .witness import Family, WitnessParams, build_witness, classify, coefficient_table

DEFAULT_SEED = 20110824
ZERO_TOL = 1e-10  # relative to ||W||_F, on normalized product vectors
SPAN_TOL = 1e-8  # relative singular value threshold for exact vectors
# See-saw minimizers are only located to ~sqrt(ZERO_TOL) in flat directions,
# so their span is measured at a correspondingly coarser threshold.
HUNT_SPAN_TOL = 1e-4
CLUSTER_TOL = 1e-6
AUDIT_FLAG_TOL = 1e-8


class Strategy(str, enum.Enum):
    PRINTED = "printed"
    SOLVER = "solver"
    SEESAW = "seesaw"


class Verdict(str, enum.Enum):
    ND_OPTIMAL = "NdOptimal"
    OPTIMAL = "Optimal"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class ProductVector:
    """Unnormalized pair ``(psi, phi)`` standing for ``psi (x) phi``."""

    psi: np.ndarray
    phi: np.ndarray
    label: str = ""

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=complex).ravel()
        phi = np.asarray(self.phi, dtype=complex).ravel()
        if psi.shape != phi.shape:
            raise DimensionError("psi and phi must have the same dimension")
        if not (np.all(np.isfinite(psi)) and np.all(np.isfinite(phi))):
            raise ValueError("product vector has non-finite entries")
        if np.linalg.norm(psi) == 0.0 or np.linalg.norm(phi) == 0.0:
            raise DegenerateFamilyError(f"zero local vector in product vector {self.label!r}")
        object.__setattr__(self, "psi", psi)
        object.__setattr__(self, "phi", phi)

    @property
    def n(self) -> int:
        return self.psi.size

    def tensor(self) -> np.ndarray:
        return np.kron(self.psi, self.phi)

    def conj_tensor(self) -> np.ndarray:
        """``psi (x) phi*``."""
        return np.kron(self.psi, self.phi.conj())

    def normalized(self) -> "ProductVector":
        return ProductVector(
            self.psi / np.linalg.norm(self.psi), self.phi / np.linalg.norm(self.phi), self.label
        )

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "psi": [[float(z.real), float(z.imag)] for z in self.psi],
            "phi": [[float(z.real), float(z.imag)] for z in self.phi],
        }


def expectation(W, v: ProductVector) -> float:
    """``<psi (x) phi| W |psi (x) phi>`` for the vectors as stored."""
    W = as_matrix(W)
    if W.shape[0] != v.n * v.n:
        raise DimensionError(f"witness of dim {W.shape[0]} vs product vector of dim {v.n}^2")
    x = v.tensor()
    val = np.vdot(x, W @ x)
    scale = max(np.linalg.norm(W) * np.vdot(x, x).real, 1.0)
    if abs(val.imag) > 1e-12 * scale:
        raise ValueError("expectation has a sizable imaginary part; is W Hermitian?")
    return float(val.real)


def relative_expectation(W, v: ProductVector) -> float:
    """Expectation on the normalized vector, divided by ``||W||_F``."""
    W = as_matrix(W)
    return expectation(W, v.normalized()) / np.linalg.norm(W)


def phase_vector_family(n: int, count: int, seed: int = DEFAULT_SEED) -> list[ProductVector]:
    """``psi`` with unit-modulus entries of random phase, ``phi = psi*``."""
    if count < 1:
        raise ParameterError("count must be positive")
    rng = np.random.default_rng(seed)
    lam = rng.uniform(0.0, 2.0 * np.pi, size=(count, n))
    out = []
    for k in range(count):
        psi = np.exp(1j * lam[k])
        out.append(ProductVector(psi, psi.conj(), f"phase[{k}]"))
    return out


# ---------------------------------------------------------------------------
# printed families


def printed_constants(p: WitnessParams) -> dict:
    a, b, c = p.a, p.b, p.c
    if b == 0.0:
        raise DegenerateFamilyError("b = 0: the printed weights are undefined")
    return {
        "t": (1 - a) / b,
        "t1": (2 - a) / (1 + c),
        "t2": (1 + a) / b,
        "t3": (5 - 2 * a) / (1 + 2 * c),
    }


def _pv(label: str, n: int, psi: dict, phi: dict) -> ProductVector:
    u = np.zeros(n, dtype=complex)
    v = np.zeros(n, dtype=complex)
    for k, z in psi.items():
        u[k] = z
    for k, z in phi.items():
        v[k] = z
    return ProductVector(u, v, label)


def printed_family(p: WitnessParams, klass: str, seed: int = DEFAULT_SEED) -> list[ProductVector]:
    """The 16 product vectors listed for Class I or Class II, verbatim.

    Kets |1>..|4> are indices 0..3.  The leading phase vectors use ``seed``.
    """
    if p.n != 4:
        raise ParameterError("printed families exist only for n=4")
    klass = klass.upper()
    if klass not in ("I", "II"):
        raise ParameterError("klass must be 'I' or 'II'")
    k = printed_constants(p)
    t = k["t"]
    if t <= 0.0:
        raise DegenerateFamilyError(f"t = (1-a)/b = {t}: the two-mode vectors degenerate (a >= 1)")
    st, j = math.sqrt(t), 1j
    out: list[ProductVector] = []
    if klass == "I":
        out += [
            ProductVector(v.psi, v.phi, f"psi{m + 1}")
            for m, v in enumerate(phase_vector_family(4, 4, seed))
        ]
        for m, (x, y) in enumerate([(0, 1), (1, 2), (2, 3), (3, 0)]):
            out.append(_pv(f"psi{5 + 2 * m}", 4, {x: st, y: 1}, {x: st, y: t}))
            out.append(_pv(f"psi{6 + 2 * m}", 4, {x: st, y: j}, {x: st, y: -j * t}))
        t1 = k["t1"]
        s1 = math.sqrt(t1)
        out += [
            _pv("psi13", 4, {0: s1, 1: s1, 2: 1, 3: 1}, {0: s1, 1: s1, 2: t1, 3: t1}),
            _pv("psi14", 4, {0: s1, 1: j, 2: j, 3: s1}, {0: s1, 1: -j * t1, 2: -j * t1, 3: s1}),
            _pv("psi15", 4, {0: s1, 1: s1, 2: j, 3: j}, {0: s1, 1: s1, 2: -j * t1, 3: -j * t1}),
            _pv("psi16", 4, {0: j, 1: s1, 2: s1, 3: j}, {0: -j * t1, 1: s1, 2: s1, 3: -j * t1}),
        ]
        return out
    out += [
        ProductVector(v.psi, v.phi, f"chi{m + 1}")
        for m, v in enumerate(phase_vector_family(4, 5, seed))
    ]
    t2, t3 = k["t2"], k["t3"]
    s2, s3 = math.sqrt(t2), math.sqrt(t3)
    out += [
        _pv("chi6", 4, {0: st, 2: 1}, {0: st, 2: t}),
        _pv("chi7", 4, {0: st, 2: j}, {0: st, 2: -j * t}),
        _pv("chi8", 4, {1: st, 3: 1}, {1: st, 3: t}),
        _pv("chi9", 4, {1: st, 3: j}, {1: st, 3: -j * t}),
        _pv("chi10", 4, {2: st, 0: 1}, {2: st, 0: t}),
        _pv("chi11", 4, {2: s2, 0: j}, {2: -j * s2, 0: t2}),
        _pv("chi12", 4, {3: st, 1: 1}, {3: st, 1: t}),
        _pv("chi13", 4, {3: s2, 1: j}, {3: -j * s2, 1: t2}),
        _pv("chi14", 4, {0: s3, 1: j, 2: j, 3: s3}, {0: s3, 1: -j * t3, 2: -j * t3, 3: s3}),
        _pv("chi15", 4, {0: s3, 1: s3, 2: j, 3: j}, {0: s3, 1: s3, 2: -j * t3, 3: -j * t3}),
        _pv("chi16", 4, {0: j, 1: s3, 2: s3, 3: j}, {0: -j * t3, 1: s3, 2: s3, 3: -j * t3}),
    ]
    return out


def audit_printed_family(p: WitnessParams, klass: str, seed: int = DEFAULT_SEED) -> list[dict]:
    """Per-vector residuals of a printed family; never raises on bad vectors."""
    W = build_witness(p)
    rows = []
    for v in printed_family(p, klass, seed):
        res = relative_expectation(W, v)
        rows.append(
            {
                "label": v.label,
                "residual": res,
                "zero": abs(res) <= 1e-12,
                "flagged": abs(res) > AUDIT_FLAG_TOL,
            }
        )
    return rows


# ---------------------------------------------------------------------------
# ansatz solvers


@dataclass(frozen=True)
class AnsatzPattern:
    """Structured product vector with free positive weights.

    ``two_mode``: ``psi = sqrt(t)|i> + e^{i th}|j>``, ``phi = sqrt(t)|i> + t e^{-i th}|j>``;
    ``indices = (i, j)``, ``phases = (e^{i th},)``, ``weights = (t,)``.

    ``four_mode``: ``psi_l = m_l s_l``, ``phi_l = m'_l conj(s_l)`` with moduli
    ``m = sqrt(p)`` on the split pair and 1 elsewhere, ``m' = sqrt(p)`` on the
    split pair and ``q`` elsewhere; ``indices`` is the split pair, ``phases``
    the four unimodular ``s_l``, ``weights = (p, q)``.
    """

    kind: str
    n: int
    indices: tuple
    phases: tuple
    weights: tuple

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise ParameterError("ansatz indices must be distinct")
        if any(not 0 <= i < self.n for i in self.indices):
            raise ParameterError("ansatz index out of range")
        if any(abs(abs(z) - 1.0) > 1e-12 for z in self.phases):
            raise ParameterError("ansatz phases must be unimodular")
        if any(w <= 0.0 for w in self.weights):
            raise ParameterError("ansatz weights must be positive")

    def realize(self) -> ProductVector:
        n = self.n
        psi = np.zeros(n, dtype=complex)
        phi = np.zeros(n, dtype=complex)
        if self.kind == "two_mode":
            (i, j), (ph,), (t,) = self.indices, self.phases, self.weights
            psi[i] = phi[i] = math.sqrt(t)
            psi[j] = ph
            phi[j] = t * np.conj(ph)
            label = f"two_mode({i},{j})"
        else:
            (pw, q) = self.weights
            for l in range(n):
                s = self.phases[l]
                if l in self.indices:
                    psi[l] = math.sqrt(pw) * s
                    phi[l] = math.sqrt(pw) * np.conj(s)
                else:
                    psi[l] = s
                    phi[l] = q * np.conj(s)
            label = f"four_mode{tuple(self.indices)}"
        return ProductVector(psi, phi, label)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "indices": list(self.indices),
            "phases": [[float(z.real), float(z.imag)] for z in self.phases],
            "weights": list(self.weights),
        }


def _positive_roots(A: float, B: float, C: float) -> list[float]:
    """Positive real roots of ``A x^2 + B x + C`` with a double-root tolerance."""
    scale = max(abs(A), abs(B), abs(C), 1e-300)
    if abs(A) <= 1e-14 * scale:
        if abs(B) <= 1e-14 * scale:
            return []
        roots = [-C / B]
    else:
        disc = B * B - 4.0 * A * C
        if disc < -1e-12 * scale * scale:
            return []
        if disc <= 1e-12 * scale * scale:
            disc = 0.0  # double root split by rounding
        r = math.sqrt(disc)
        if r == 0.0:
            roots = [-B / (2.0 * A)]
        else:
            # numerically stable pair
            qq = -0.5 * (B + math.copysign(r, B))
            roots = [qq / A, C / qq] if qq != 0.0 else [0.0]
    return sorted({x for x in roots if x > 0.0})


def solve_two_mode(p: WitnessParams, i: int, j: int, phase: complex = 1.0) -> list[AnsatzPattern]:
    """Zero weights of the two-mode ansatz on the ordered pair ``(i, j)``.

    The expectation is ``t (w_ij t^2 - 2(1-a) t + w_ji)``; roots are
    ``t = [(1-a) +- sqrt((1-a)^2 - w_ij w_ji)] / w_ij``.
    """
    w = coefficient_table(p)
    if i == j:
        raise ParameterError("two-mode ansatz needs distinct indices")
    wij, wji = w[i, j], w[j, i]
    if wij <= 0.0:
        raise DegenerateFamilyError(f"w[{i}][{j}] = 0: two-mode quadratic degenerates")
    s = 1.0 - p.a
    disc = s * s - wij * wji
    tol = 1e-12 * max(s * s, wij * wji, 1e-300)
    if disc < -tol:
        return []
    if disc <= tol:
        disc = 0.0
    r = math.sqrt(disc)
    roots = {(s + r) / wij, (s - r) / wij} if r > 0.0 else {s / wij}
    phase = complex(phase) / abs(phase)
    return [
        AnsatzPattern("two_mode", p.n, (i, j), (phase,), (t,)) for t in sorted(roots) if t > 0.0
    ]


def four_mode_coefficients(p: WitnessParams, split: Sequence[int], fixed_weight: float) -> tuple:
    """Coefficients ``(A, B, C)`` of the four-mode expectation ``A q^2 + B q + C``."""
    if p.n != 4:
        raise ParameterError("the four-mode ansatz is defined for n=4")
    S = tuple(sorted(split))
    if len(S) != 2 or len(set(S)) != 2 or not all(0 <= x < 4 for x in S):
        raise ParameterError("split must be a pair of distinct indices in [0, 4)")
    w = coefficient_table(p)
    P = fixed_weight
    m = np.zeros(4)
    m[list(S)] = 1.0
    t = 1.0 - m
    # block sums of the table, e.g. wst = sum over i in S, j in T of w[i, j]
    wss, wtt, wst, wts = m @ w @ m, t @ w @ t, m @ w @ t, t @ w @ m
    # sum w u_i v_j + sum u_i v_i - (sum r_i)^2 with u=(P,P,1,1), v=(P,P,q^2,q^2), r=(P,P,q,q)
    A = P * wst + wtt - 2.0
    B = -8.0 * P
    C = P * P * (wss - 2.0) + P * wts
    return A, B, C


def solve_four_mode(
    p: WitnessParams, signs: Sequence[complex], split: Sequence[int], fixed_weight: float
) -> list[AnsatzPattern]:
    """Zero weights ``q`` of the four-mode ansatz for a fixed split weight."""
    if fixed_weight <= 0.0:
        raise ParameterError("fixed_weight must be positive")
    if len(signs) != 4:
        raise ParameterError("four-mode ansatz needs 4 phases")
    A, B, C = four_mode_coefficients(p, split, fixed_weight)
    roots = _positive_roots(A, B, C)
    if not roots:
        raise NoRealBranchError(
            f"four-mode quadratic {A:.6g} q^2 + {B:.6g} q + {C:.6g} has no positive root"
        )
    phases = tuple(complex(z) / abs(z) for z in signs)
    return [
        AnsatzPattern("four_mode", 4, tuple(sorted(split)), phases, (fixed_weight, q)) for q in roots
    ]


# ---------------------------------------------------------------------------
# see-saw


def _min_eigvecs(M: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lam, vec = np.linalg.eigh(M)
    return lam[:, 0], vec[:, :, 0]


def seesaw_runs(
    W, n: int, restarts: int = 64, seed: int = DEFAULT_SEED, max_iter: int = 500, tol: float = 1e-13,
    history: bool = False,
):
    """Alternating minimization of ``<psi phi|W|psi phi>`` from seeded starts.

    All restarts are iterated in lockstep; each one freezes once its value
    decreases by less than ``tol``.  Returns ``(values, psis, phis)`` with
    normalized vectors, plus the per-iteration value history if requested.
    """
    W = as_matrix(W)
    if W.shape[0] != n * n:
        raise DimensionError(f"witness of dim {W.shape[0]} is not on C^{n} (x) C^{n}")
    T = W.reshape(n, n, n, n)  # T[i,k,j,l] = <ik|W|jl>
    rng = np.random.default_rng(seed)
    phi = rng.normal(size=(restarts, n)) + 1j * rng.normal(size=(restarts, n))
    phi /= np.linalg.norm(phi, axis=1, keepdims=True)
    psi = np.zeros_like(phi)
    value = np.full(restarts, np.inf)
    active = np.ones(restarts, dtype=bool)
    trace = []
    for _ in range(max_iter):
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        f = phi[idx]
        M = np.einsum("rk,ikjl,rl->rij", f.conj(), T, f)
        _, new_psi = _min_eigvecs(M)
        N = np.einsum("ri,ikjl,rj->rkl", new_psi.conj(), T, new_psi)
        lam, new_phi = _min_eigvecs(N)
        improved = lam < value[idx]
        upd = idx[improved]
        psi[upd] = new_psi[improved]
        phi[upd] = new_phi[improved]
        drop = value[idx] - lam
        value[upd] = lam[improved]
        active[idx[~(drop >= tol)]] = False
        if history:
            trace.append(value.copy())
    if history:
        return value, psi, phi, np.array(trace)
    return value, psi, phi


def seesaw_minimize(W, n: int, restarts: int = 64, seed: int = DEFAULT_SEED, max_iter: int = 500):
    """Smallest see-saw value over seeded restarts and its product vector."""
    value, psi, phi = seesaw_runs(W, n, restarts, seed, max_iter)
    k = int(np.argmin(value))
    return float(value[k]), ProductVector(psi[k], phi[k], "seesaw")


def _modulus_problem(w: np.ndarray, x: np.ndarray, y: np.ndarray):
    """Value, gradient, Hessian of the real modulus form of the expectation.

    With aligned phases ``psi_l phi_l >= 0`` the expectation equals
    ``F = x^2.w.y^2 + x^2.y^2 - (x.y)^2`` in the moduli ``x, y``.
    """
    n = x.size
    x2, y2, S = x * x, y * y, x @ y
    wy, wx = w @ y2, w.T @ x2
    F = x2 @ wy + x2 @ y2 - S * S
    g = np.concatenate([2 * x * wy + 2 * x * y2 - 2 * S * y, 2 * y * wx + 2 * y * x2 - 2 * S * x])
    hxx = np.diag(2 * wy + 2 * y2) - 2 * np.outer(y, y)
    hyy = np.diag(2 * wx + 2 * x2) - 2 * np.outer(x, x)
    hxy = 4 * np.outer(x, y) * w + np.diag(4 * x * y) - 2 * S * np.eye(n) - 2 * np.outer(y, x)
    return F, g, np.block([[hxx, hxy], [hxy.T, hyy]])


def polish_zero(w: np.ndarray, v: ProductVector, steps: int = 30) -> ProductVector:
    """Align phases exactly and Newton-refine the moduli of a near-zero vector."""
    v = v.normalized()
    k = int(np.argmax(np.abs(v.psi * v.phi)))
    common = np.angle(v.psi[k] * v.phi[k])
    theta = np.angle(v.psi)
    x = np.abs(v.psi)
    y = np.real(v.phi * np.exp(1j * (theta - common)))
    n = x.size

    def unit(z):
        return np.concatenate([z[:n] / np.linalg.norm(z[:n]), z[n:] / np.linalg.norm(z[n:])])

    z = unit(np.concatenate([x, y]))
    F = _modulus_problem(w, z[:n], z[n:])[0]
    for _ in range(steps):
        if F <= 1e-30:
            break
        _, g, H = _modulus_problem(w, z[:n], z[n:])
        step = np.linalg.lstsq(H, g, rcond=1e-10)[0]
        cand = unit(z - step)
        F_new = _modulus_problem(w, cand[:n], cand[n:])[0]
        if not F_new < F:
            break
        z, F = cand, F_new
    return ProductVector(z[:n] * np.exp(1j * theta), z[n:] * np.exp(-1j * theta), v.label)


def cluster(vectors: Sequence[ProductVector], tol: float = CLUSTER_TOL) -> list[ProductVector]:
    """Drop vectors whose ``psi (x) phi`` direction repeats an earlier one."""
    kept: list[ProductVector] = []
    units: list[np.ndarray] = []
    for v in vectors:
        x = v.tensor()
        x = x / np.linalg.norm(x)
        if any(abs(np.vdot(u, x)) > 1.0 - tol for u in units):
            continue
        kept.append(v)
        units.append(x)
    return kept


def hunt_zero_vectors(
    p: WitnessParams, restarts: int = 200, seed: int = DEFAULT_SEED, zero_tol: float = ZERO_TOL
) -> list[ProductVector]:
    """Polished see-saw minimizers of ``W_p`` whose value passes ``zero_tol``."""
    W = build_witness(p)
    wnorm = np.linalg.norm(W)
    w = coefficient_table(p)
    values, psis, phis = seesaw_runs(W, p.n, restarts, seed)
    found = []
    for k in np.argsort(values, kind="stable"):
        if values[k] > zero_tol * wnorm:
            continue
        v = polish_zero(w, ProductVector(psis[k], phis[k], f"seesaw[{k}]"))
        if abs(relative_expectation(W, v)) <= zero_tol:
            found.append(v)
    return cluster(found)


def subtraction_test(
    p: WitnessParams, direction, eps: float, restarts: int = 200, seed: int = DEFAULT_SEED
) -> float:
    """See-saw minimum of ``W - eps |x><x|`` over normalized product vectors.

    A nonnegative result for some ``eps > 0`` exhibits a witness detecting
    strictly more states than ``W``, i.e. ``W`` is not optimal.
    """
    x = np.asarray(direction, dtype=complex).ravel()
    x = x / np.linalg.norm(x)
    W = build_witness(p) - eps * np.outer(x, x.conj())
    return seesaw_minimize(W, p.n, restarts, seed)[0]


# ---------------------------------------------------------------------------
# certification


@dataclass
class ZeroFamilyCertificate:
    params: WitnessParams
    strategy: Strategy
    vectors: list
    expectations: list
    rank_direct: int
    rank_conjugate: int
    verdict: Verdict
    seed: int
    tolerances: dict
    sigma_direct: list = field(default_factory=list)
    sigma_conjugate: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "params": self.params.to_dict(),
            "strategy": self.strategy.value,
            "vectors": [v.to_dict() for v in self.vectors],
            "expectations": list(self.expectations),
            "rank_direct": self.rank_direct,
            "rank_conjugate": self.rank_conjugate,
            "verdict": self.verdict.value,
            "seed": self.seed,
            "tolerances": dict(self.tolerances),
            "sigma_direct": list(self.sigma_direct),
            "sigma_conjugate": list(self.sigma_conjugate),
            "notes": list(self.notes),
        }


UNIT_PHASES = (1.0, 1j, -1.0, -1j)
FOUR_MODE_WEIGHTS = (0.25, 0.5, 1.0, 2.0, 4.0)


def solver_vectors(p: WitnessParams, seed: int = DEFAULT_SEED) -> list[ProductVector]:
    """Phase vectors plus every ansatz root over pairs, phases, splits and weights."""
    n = p.n
    out = list(phase_vector_family(n, 2 * n * n, seed))
    w = coefficient_table(p)
    for i, j in itertools.permutations(range(n), 2):
        if w[i, j] <= 0.0:
            continue
        for ph in UNIT_PHASES:
            out += [pat.realize() for pat in solve_two_mode(p, i, j, ph)]
    if n == 4:
        sign_patterns = [(1.0,) + rest for rest in itertools.product((1.0, 1j), repeat=3)]
        for split in itertools.combinations(range(4), 2):
            for pw in FOUR_MODE_WEIGHTS:
                for signs in sign_patterns:
                    try:
                        pats = solve_four_mode(p, signs, split, pw)
                    except NoRealBranchError:
                        break  # the quadratic does not depend on the phases
                    out += [pat.realize() for pat in pats]
    return out


def _verdict(n: int, rank_direct: int, rank_conjugate: int) -> Verdict:
    full = n * n
    if rank_direct == full and rank_conjugate == full:
        return Verdict.ND_OPTIMAL
    if rank_direct == full:
        return Verdict.OPTIMAL
    return Verdict.INCONCLUSIVE


def certify(
    p: WitnessParams,
    strategy=Strategy.SOLVER,
    seed: int = DEFAULT_SEED,
    restarts: int = 200,
    zero_tol: float = ZERO_TOL,
    span_tol: Optional[float] = None,
) -> ZeroFamilyCertificate:
    """Collect zero-expectation product vectors and measure their two spans.

    The verdict is NdOptimal only when both ranks are full and every retained
    vector passes ``zero_tol``; anything short of that is Inconclusive.
    """
    strategy = Strategy(strategy)
    p = classify(p)
    notes = []
    if strategy is Strategy.PRINTED:
        if p.family is Family.CLASS_I4:
            candidates = printed_family(p, "I", seed)
        elif p.family is Family.CLASS_II4:
            candidates = printed_family(p, "II", seed)
        else:
            candidates = phase_vector_family(p.n, 2 * p.n * p.n, seed)
            notes.append("no printed list for this point; phase vectors only")
    elif strategy is Strategy.SOLVER:
        candidates = solver_vectors(p, seed)
    else:
        candidates = hunt_zero_vectors(p, restarts, seed, zero_tol)
    if span_tol is None:
        span_tol = HUNT_SPAN_TOL if strategy is Strategy.SEESAW else SPAN_TOL

    W = build_witness(p)
    kept, values = [], []
    for v in candidates:
        r = relative_expectation(W, v)
        if abs(r) <= zero_tol:
            kept.append(v.normalized())
            values.append(r)
        else:
            notes.append(f"dropped {v.label}: relative expectation {r:.3e}")

    if kept:
        sd = singular_values([v.tensor() for v in kept])
        sc = singular_values([v.conj_tensor() for v in kept])
        rank_d = int(np.sum(sd > span_tol * sd[0]))
        rank_c = int(np.sum(sc > span_tol * sc[0]))
    else:
        sd = sc = np.zeros(0)
        rank_d = rank_c = 0
    return ZeroFamilyCertificate(
        params=p,
        strategy=strategy,
        vectors=kept,
        expectations=values,
        rank_direct=rank_d,
        rank_conjugate=rank_c,
        verdict=_verdict(p.n, rank_d, rank_c),
        seed=seed,
        tolerances={"zero": zero_tol, "span": span_tol, "cluster": CLUSTER_TOL},
        sigma_direct=[float(s) for s in sd],
        sigma_conjugate=[float(s) for s in sc],
        notes=notes,
    )


def span_complement(vectors: Sequence[np.ndarray], rel_tol: float) -> np.ndarray:
    """Orthonormal rows spanning the orthogonal complement of ``vectors``."""
    A = np.vstack([np.asarray(v, dtype=complex).ravel() for v in vectors])
    _, s, vh = np.linalg.svd(A)
    rank = int(np.sum(s > rel_tol * s[0]))
    return vh[rank:].conj()
