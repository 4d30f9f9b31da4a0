"""Similarity transforms carrying A-symmetric matrices to real ones.

Two paths: the O(N^2) diagonal phase unitary U = diag(1, i, 1, i, ...)
for the oscillator-basis case (U H U^dag), and a general A-fixed basis V
(V^dag H V).  Both record the largest discarded imaginary magnitude so a
non-A-symmetric input or an unadapted basis is caught instead of silently
truncated.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .antiunitary import AdaptedBasis, IncompleteBasisError
from .oscillator_basis import OperatorMatrix

TOL_REALITY = 1e-10
CHAR_POLY_MAX_N = 16


class RealityError(ValueError):
    """Transformed matrix kept a significant imaginary part."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class RealMatrix:
    """Dense real matrix plus the imaginary residual discarded to get it."""

    entries: np.ndarray
    imag_residual: float
    source_label: str = ""

    def __post_init__(self):
        entries = np.array(self.entries, dtype=float)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"entries must be square, got shape {entries.shape}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def n_basis(self) -> int:
        return self.entries.shape[0]


def phase_unitary(n_basis: int) -> np.ndarray:
    """Diagonal of U: u_2n = 1, u_2n+1 = i.  U^dag = U* and U^2 = parity."""
    if n_basis < 2:
        raise ValueError("n_basis must be at least 2")
    u = np.ones(n_basis, dtype=complex)
    u[1::2] = 1j
    return u


def realify(h, basis, tol: float = TOL_REALITY) -> RealMatrix:
    """Transform h to its real representation in the given A-fixed basis.

    ``basis`` is either a diagonal-unitary vector (from ``phase_unitary``;
    computes U H U^dag entrywise) or a complete AdaptedBasis (computes
    V^dag H V).  Raises RealityError when the transformed matrix has an
    imaginary part above tol * max|entry| and IncompleteBasisError when
    the basis has rank < N.
    """
    if isinstance(h, OperatorMatrix):
        entries = h.entries
        label = h.label
    else:
        entries = np.asarray(h, dtype=complex)
        label = ""
    n = entries.shape[0]

    if isinstance(basis, AdaptedBasis):
        if basis.n_basis != n:
            raise ValueError(f"basis size {basis.n_basis} does not match matrix size {n}")
        if basis.rank < n:
            raise IncompleteBasisError(
                f"cannot realify with an incomplete basis: rank {basis.rank} of {n} "
                f"({basis.dropped} columns dropped)",
                rank=basis.rank,
                dropped=basis.dropped,
            )
        v = basis.columns
        transformed = v.conj().T @ entries @ v
        label_suffix = basis.recipe
    else:
        u = np.asarray(basis, dtype=complex)
        if u.shape != (n,):
            raise ValueError(f"diagonal unitary shape {u.shape} does not match matrix size {n}")
        transformed = u[:, None] * entries * np.conj(u)[None, :]
        label_suffix = "phase_unitary"

    scale = float(np.max(np.abs(transformed))) if transformed.size else 0.0
    residual = float(np.max(np.abs(transformed.imag))) if transformed.size else 0.0
    if residual > tol * scale:
        raise RealityError(
            f"imaginary residual {residual:.3e} exceeds {tol:.1e} * max|entry| = "
            f"{tol * scale:.3e}; input is not A-symmetric or the basis is not adapted",
            residual=residual,
        )
    source = f"{label} [{label_suffix}]" if label else f"[{label_suffix}]"
    return RealMatrix(transformed.real, residual, source_label=source)


def char_poly(m) -> np.ndarray:
    """Monic characteristic-polynomial coefficients, descending powers.

    Uses the Faddeev-LeVerrier recursion; double precision limits this to
    N <= 16, where it serves as a coefficient-level oracle (the roots of
    a real coefficient list are real or conjugate pairs, which is the
    point of realification).
    """
    if isinstance(m, OperatorMatrix):
        entries = np.asarray(m.entries)
    elif isinstance(m, RealMatrix):
        entries = np.asarray(m.entries)
    else:
        entries = np.asarray(m)
    if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
        raise ValueError(f"need a square matrix, got shape {entries.shape}")
    n = entries.shape[0]
    if n > CHAR_POLY_MAX_N:
        raise ValueError(f"char_poly is an oracle for N <= {CHAR_POLY_MAX_N}, got N = {n}")
    dtype = complex if np.iscomplexobj(entries) else float
    mat = entries.astype(dtype)
    eye = np.eye(n, dtype=dtype)
    coeffs = np.empty(n + 1, dtype=dtype)
    coeffs[0] = 1
    mk = mat.copy()
    c = -np.trace(mk)
    coeffs[1] = c
    for k in range(2, n + 1):
        mk = mat @ (mk + c * eye)
        c = -np.trace(mk) / k
        coeffs[k] = c
    return coeffs


def real_matrix_to_json(r: RealMatrix) -> str:
    import json

    return json.dumps(
        {
            "n": r.n_basis,
            "entries": r.entries.tolist(),
            "imag_residual": r.imag_residual,
            "source_label": r.source_label,
        }
    )
