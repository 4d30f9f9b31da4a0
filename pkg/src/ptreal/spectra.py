"""Dense real eigensolver, spectrum classification, truncation sweeps.

The production solver handles real matrices only, on purpose: an
A-symmetric complex matrix is realified first, after which real QR
arithmetic is sufficient and conjugate eigenvalue pairs come out exact by
construction (2x2 Schur blocks).  The complex path is covered at oracle
scale by char_poly + Durand-Kerner root finding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oscillator_basis import hamiltonian_matrix
from .realify import phase_unitary, realify

MAX_N = 1024
DEFLATION_EPS = 1e-14
MAX_ITER_FACTOR = 40
EXCEPTIONAL_EVERY = 10

TOL_CLASSIFY = 1e-8


class ConvergenceError(RuntimeError):
    """QR iteration exhausted its budget on some diagonal block."""

    def __init__(self, message, block=None):
        super().__init__(message)
        self.block = block


class ClosureError(ValueError):
    """An eigenvalue with significant imaginary part has no conjugate partner."""


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues split into real values and conjugate pairs."""

    eigenvalues: tuple
    real_set: tuple
    pairs: tuple
    tol_classify: float
    backward_error: float
    n_basis: int


@dataclass(frozen=True)
class SweepRow:
    n_basis: int
    level: int
    value: complex
    cauchy_diff: float | None


def _householder(v):
    """Reflector data (u, beta) with (I - beta u u^T) v = (sigma, 0, ..., 0)."""
    v = np.asarray(v, dtype=float)
    norm_tail = np.linalg.norm(v[1:])
    if norm_tail == 0.0:
        return v, 0.0
    alpha = np.hypot(v[0], norm_tail)
    sigma = -alpha if v[0] >= 0 else alpha
    u = v.copy()
    u[0] -= sigma
    beta = 2.0 / (u @ u)
    return u, beta


def _apply_left(mat, u, beta, row0):
    rows = slice(row0, row0 + len(u))
    mat[rows, :] -= beta * np.outer(u, u @ mat[rows, :])


def _apply_right(mat, u, beta, col0):
    cols = slice(col0, col0 + len(u))
    mat[:, cols] -= beta * np.outer(mat[:, cols] @ u, u)


def hessenberg(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Householder reduction to upper Hessenberg form: Q H Q^T = M."""
    mat = np.array(m, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"need a square matrix, got shape {mat.shape}")
    n = mat.shape[0]
    if n < 2:
        raise ValueError("n must be at least 2")
    q = np.eye(n)
    for k in range(n - 2):
        u, beta = _householder(mat[k + 1 :, k])
        if beta == 0.0:
            continue
        _apply_left(mat, u, beta, k + 1)
        _apply_right(mat, u, beta, k + 1)
        _apply_right(q, u, beta, k + 1)
        mat[k + 2 :, k] = 0.0
    return mat, q


def _block_eigenvalues(a, b, c, d):
    """Eigenvalues of [[a, b], [c, d]]; complex ones come out exactly conjugate."""
    mean = (a + d) / 2.0
    disc = ((a - d) / 2.0) ** 2 + b * c
    if disc >= 0.0:
        root = np.sqrt(disc)
        return [complex(mean - root), complex(mean + root)]
    root = np.sqrt(-disc)
    return [complex(mean, -root), complex(mean, root)]


def _francis_step(h, q, lo, hi, exceptional):
    """One implicit double-shift bulge chase on the active block lo..hi."""
    p, r = hi, hi - 1
    if exceptional:
        s = 1.5 * (abs(h[p, p - 1]) + abs(h[r, r - 1]))
        t = (abs(h[p, p - 1]) + abs(h[r, r - 1])) ** 2
    else:
        s = h[r, r] + h[p, p]
        t = h[r, r] * h[p, p] - h[r, p] * h[p, r]
    x = h[lo, lo] * h[lo, lo] + h[lo, lo + 1] * h[lo + 1, lo] - s * h[lo, lo] + t
    y = h[lo + 1, lo] * (h[lo, lo] + h[lo + 1, lo + 1] - s)
    z = h[lo + 2, lo + 1] * h[lo + 1, lo]
    for k in range(lo, hi):
        last = min(k + 2, hi)
        if k == lo:
            v = np.array([x, y, z][: last - k + 1])
        else:
            v = h[k : last + 1, k - 1].copy()
        u, beta = _householder(v)
        if beta != 0.0:
            _apply_left(h, u, beta, k)
            _apply_right(h, u, beta, k)
            _apply_right(q, u, beta, k)
        if k > lo:
            h[k + 1 : last + 1, k - 1] = 0.0


def eigenvalues_real(m: np.ndarray) -> tuple[np.ndarray, float]:
    """All eigenvalues of a real matrix by Francis double-shift QR.

    Returns (eigenvalues, backward_error).  Eigenvalues are sorted
    ascending by real part (ties by imaginary part) and are closed under
    conjugation by construction.  backward_error is the max-norm residual
    of the accumulated Schur factorization ||Q T Q^T - M||_max.

    Raises ConvergenceError after 40*N iterations, naming the stalled
    block; deflation uses |h_{k+1,k}| <= 1e-14 (|h_kk| + |h_{k+1,k+1}|)
    and an ad-hoc exceptional shift fires every 10 stalled iterations.
    """
    mat = np.asarray(m)
    if np.iscomplexobj(mat):
        raise TypeError("eigenvalues_real takes a real matrix; realify complex input first")
    mat = np.array(mat, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"need a square matrix, got shape {mat.shape}")
    n = mat.shape[0]
    if n > MAX_N:
        raise ValueError(f"matrix size {n} exceeds the solver cap {MAX_N}")
    if not np.all(np.isfinite(mat)):
        raise ValueError("matrix has non-finite entries")
    if n == 1:
        return np.array([complex(mat[0, 0])]), 0.0

    h, q = hessenberg(mat)
    budget = MAX_ITER_FACTOR * n
    iterations = 0
    since_deflation = 0
    hi = n - 1
    while hi > 0:
        lo = hi
        while lo > 0:
            s = abs(h[lo - 1, lo - 1]) + abs(h[lo, lo])
            if abs(h[lo, lo - 1]) <= DEFLATION_EPS * s:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            hi -= 1
            since_deflation = 0
        elif lo == hi - 1:
            hi -= 2
            since_deflation = 0
        else:
            iterations += 1
            since_deflation += 1
            if iterations > budget:
                raise ConvergenceError(
                    f"QR did not converge after {budget} iterations; "
                    f"stalled on block rows {lo}..{hi}",
                    block=(lo, hi),
                )
            exceptional = since_deflation % EXCEPTIONAL_EVERY == 0
            _francis_step(h, q, lo, hi, exceptional)

    backward_error = float(np.max(np.abs(q @ h @ q.T - mat)))

    eigs = []
    i = 0
    while i < n:
        if i == n - 1 or h[i + 1, i] == 0.0:
            eigs.append(complex(h[i, i]))
            i += 1
        else:
            eigs.extend(_block_eigenvalues(h[i, i], h[i, i + 1], h[i + 1, i], h[i + 1, i + 1]))
            i += 2
    eigs.sort(key=lambda zz: (zz.real, zz.imag))
    return np.array(eigs), backward_error


def classify_spectrum(
    eigs,
    tol_classify: float = TOL_CLASSIFY,
    backward_error: float = 0.0,
    n_basis: int | None = None,
) -> SpectrumReport:
    """Split eigenvalues into real ones and conjugate pairs.

    |Im| <= tol_classify * scale (scale = max(1, max|eig|)) counts as
    real; the rest are greedily matched to their nearest conjugate
    partner.  A leftover without a partner within tolerance raises
    ClosureError, which signals a non-A-symmetric source or a solver
    failure.
    """
    if tol_classify <= 0:
        raise ValueError("tol_classify must be positive")
    eigs = [complex(z) for z in eigs]
    eigs.sort(key=lambda zz: (zz.real, zz.imag))
    scale = max(1.0, max((abs(z) for z in eigs), default=0.0))
    threshold = tol_classify * scale
    real_set = sorted(z.real for z in eigs if abs(z.imag) <= threshold)
    rest = [z for z in eigs if abs(z.imag) > threshold]
    pairs = []
    while rest:
        z = rest.pop(0)
        if not rest:
            raise ClosureError(f"eigenvalue {z} has no conjugate partner within {threshold:.3e}")
        dists = [abs(z - np.conj(w)) for w in rest]
        j = int(np.argmin(dists))
        if dists[j] > threshold:
            raise ClosureError(
                f"eigenvalue {z} has no conjugate partner within {threshold:.3e} "
                f"(closest miss {dists[j]:.3e})"
            )
        w = rest.pop(j)
        plus, minus = (z, w) if z.imag >= w.imag else (w, z)
        pairs.append((plus, minus))
    pairs.sort(key=lambda pr: (pr[0].real, pr[0].imag))
    return SpectrumReport(
        eigenvalues=tuple(eigs),
        real_set=tuple(real_set),
        pairs=tuple(pairs),
        tol_classify=tol_classify,
        backward_error=backward_error,
        n_basis=len(eigs) if n_basis is None else n_basis,
    )


def convergence_sweep(p, n_list, m_track: int) -> list[SweepRow]:
    """Track the m_track lowest-|Re| eigenvalues across truncation sizes.

    Emits |E_i(N) - E_i(N_prev)| per tracked level (None for the first N).
    High levels of a truncated spectrum are untrusted, so this reports
    Cauchy differences instead of asserting convergence.
    """
    n_list = [int(x) for x in n_list]
    if len(n_list) < 1:
        raise ValueError("n_list must not be empty")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError(f"n_list must be strictly ascending, got {n_list}")
    if not 1 <= m_track <= min(n_list):
        raise ValueError(f"m_track must be in 1..min(n_list) = {min(n_list)}, got {m_track}")
    rows = []
    previous = None
    for n in n_list:
        h = hamiltonian_matrix(p, n)
        real_mat = realify(h, phase_unitary(n))
        eigs, _ = eigenvalues_real(real_mat.entries)
        tracked = sorted(eigs, key=lambda zz: (abs(zz.real), zz.imag))[:m_track]
        for level, value in enumerate(tracked):
            diff = None if previous is None else float(abs(value - previous[level]))
            rows.append(SweepRow(n, level, complex(value), diff))
        previous = tracked
    return rows


def polynomial_roots(coeffs, max_iter: int = 1000, tol: float = 1e-14) -> np.ndarray:
    """All roots of a complex polynomial by Durand-Kerner iteration.

    Oracle-scale companion to char_poly; deterministic (fixed initial
    configuration scaled by a root bound).  coeffs are descending-power,
    leading coefficient nonzero.
    """
    c = np.asarray(coeffs, dtype=complex)
    if c.ndim != 1 or len(c) < 2:
        raise ValueError("need a polynomial of degree >= 1")
    if c[0] == 0:
        raise ValueError("leading coefficient must be nonzero")
    c = c / c[0]
    degree = len(c) - 1
    if degree == 1:
        return np.array([-c[1]])
    bound = 1.0 + float(np.max(np.abs(c[1:])))
    base = (0.4 + 0.9j) / abs(0.4 + 0.9j)
    z = bound * base ** np.arange(1, degree + 1)
    for _ in range(max_iter):
        values = np.polyval(c, z)
        delta = np.empty_like(z)
        for i in range(degree):
            diff = z[i] - z
            diff[i] = 1.0
            delta[i] = values[i] / np.prod(diff)
        z = z - delta
        if np.max(np.abs(delta)) <= tol * max(1.0, float(np.max(np.abs(z)))):
            break
    return z


def report_to_json(report: SpectrumReport) -> str:
    import json

    def cpx(z):
        return {"re": z.real, "im": z.imag}

    return json.dumps(
        {
            "n": report.n_basis,
            "eigenvalues": [cpx(z) for z in report.eigenvalues],
            "real_set": list(report.real_set),
            "pairs": [[cpx(a), cpx(b)] for a, b in report.pairs],
            "tol_classify": report.tol_classify,
            "backward_error": report.backward_error,
        }
    )


def sweep_to_csv(rows: list[SweepRow]) -> str:
    lines = ["N,level,re,im,cauchy_diff"]
    for row in rows:
        diff = "" if row.cauchy_diff is None else repr(row.cauchy_diff)
        lines.append(f"{row.n_basis},{row.level},{row.value.real!r},{row.value.imag!r},{diff}")
    return "\n".join(lines) + "\n"
