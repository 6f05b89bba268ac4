"""Small dense complex linear algebra used by the witness and state modules.

Conventions
-----------
Bipartite operators act on C^n (x) C^n with the row-major double index
``(i, k) -> i * n + k``.  The partial transpose always acts on the *second*
tensor factor.  Kets |1>..|n> of the printed formulas map to 0-based indices.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .errors import DimensionError, EmptyInputError, HermiticityError

HERMITIAN_ATOL = 1e-12
RANK_REL_TOL = 1e-8


def as_matrix(M) -> np.ndarray:
    """Return ``M`` as a square complex array, rejecting NaN/Inf."""
    A = np.asarray(M, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise ValueError("matrix has non-finite entries")
    return A


def is_hermitian(M, atol: float = HERMITIAN_ATOL) -> bool:
    A = as_matrix(M)
    return bool(np.max(np.abs(A - A.conj().T), initial=0.0) <= atol)


def kron(A, B) -> np.ndarray:
    """Tensor product, ``(A (x) B)[i*dB + k, j*dB + l] = A[i, j] * B[k, l]``."""
    return np.kron(as_matrix(A), as_matrix(B))


def partial_transpose(M, n: int) -> np.ndarray:
    """Transpose the second factor of an operator on C^n (x) C^n."""
    A = as_matrix(M)
    if A.shape[0] != n * n:
        raise DimensionError(f"matrix of dim {A.shape[0]} is not on C^{n} (x) C^{n}")
    # out[(i,k),(j,l)] = M[(i,l),(j,k)]
    return A.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(n * n, n * n)


def _jacobi_rotate(A: np.ndarray, V: np.ndarray, p: int, q: int) -> None:
    apq = A[p, q]
    mag = abs(apq)
    if mag == 0.0:
        return
    phase = apq / mag
    tau = (A[q, q].real - A[p, p].real) / (2.0 * mag)
    t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    # J = diag(1, conj(phase)) @ [[c, s], [-s, c]] restricted to (p, q)
    jpp, jpq = c, s
    jqp, jqq = -s * phase.conjugate(), c * phase.conjugate()
    cp, cq = A[:, p].copy(), A[:, q].copy()
    A[:, p] = cp * jpp + cq * jqp
    A[:, q] = cp * jpq + cq * jqq
    rp, rq = A[p, :].copy(), A[q, :].copy()
    A[p, :] = np.conj(jpp) * rp + np.conj(jqp) * rq
    A[q, :] = np.conj(jpq) * rp + np.conj(jqq) * rq
    A[p, q] = A[q, p] = 0.0
    A[p, p] = A[p, p].real
    A[q, q] = A[q, q].real
    vp, vq = V[:, p].copy(), V[:, q].copy()
    V[:, p] = vp * jpp + vq * jqp
    V[:, q] = vp * jpq + vq * jqq


def jacobi_eigh(M, tol: float = 1e-14, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Cyclic Jacobi diagonalization of a Hermitian matrix.

    Sweeps over all pairs until the off-diagonal Frobenius norm drops below
    ``tol * ||M||_F``.  Returns ascending eigenvalues and the matching
    eigenvectors as columns.
    """
    A = as_matrix(M)
    if not is_hermitian(A):
        raise HermiticityError("jacobi_eigh requires a Hermitian matrix")
    A = 0.5 * (A + A.conj().T)
    dim = A.shape[0]
    V = np.eye(dim, dtype=complex)
    scale = np.linalg.norm(A)
    if scale > 0.0:
        for _ in range(max_sweeps):
            off = np.linalg.norm(A - np.diag(np.diag(A)))
            if off <= tol * scale:
                break
            for p in range(dim - 1):
                for q in range(p + 1, dim):
                    _jacobi_rotate(A, V, p, q)
    w = np.diag(A).real
    order = np.argsort(w, kind="stable")
    return w[order], V[:, order]


def hermitian_spectrum(M) -> np.ndarray:
    """Full real spectrum of a Hermitian matrix, ascending."""
    return jacobi_eigh(M)[0]


def _stack(vectors: Sequence) -> np.ndarray:
    if len(vectors) == 0:
        raise EmptyInputError("need at least one vector")
    rows = [np.asarray(v, dtype=complex).ravel() for v in vectors]
    dims = {r.size for r in rows}
    if len(dims) != 1:
        raise DimensionError(f"vectors have mixed dimensions {sorted(dims)}")
    return np.vstack(rows)


def singular_values(vectors: Sequence) -> np.ndarray:
    """Singular values (descending) of the matrix whose rows are ``vectors``."""
    return np.linalg.svd(_stack(vectors), compute_uv=False)


def numerical_rank(vectors: Sequence, rel_tol: float = RANK_REL_TOL) -> int:
    """Number of singular values above ``rel_tol`` times the largest one."""
    s = singular_values(vectors)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > rel_tol * s[0]))
