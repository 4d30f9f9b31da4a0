"""Exact truncated matrices of x^k, p^2 and H = p^2 + V(x) in the H0 basis.

Convention: H0 = p^2 + x^2 with eigenvalues 2n+1 and real eigenfunctions,
so parity acts as (-1)^n on basis index n.  Monomial matrices are computed
from the ladder realization of x built in dimension N+k and truncated
after taking the k-th power, which makes every retained <m|x^k|n> exact
(no leakage through discarded intermediate states).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

MAX_SIZE = 4096
MAX_POWER = 16

_BASIS_TAGS = ("ho", "raw")


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex N x N operator tagged with its basis and size."""

    entries: np.ndarray
    n_basis: int
    basis_tag: str = "ho"
    label: str = ""

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise ValueError(f"entries must be square, got shape {entries.shape}")
        if self.n_basis != entries.shape[0]:
            raise ValueError(f"n_basis {self.n_basis} does not match shape {entries.shape}")
        if self.n_basis < 2:
            raise ValueError("n_basis must be at least 2")
        if self.basis_tag not in _BASIS_TAGS:
            raise ValueError(f"basis_tag must be one of {_BASIS_TAGS}, got {self.basis_tag!r}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)


def position_matrix(n_basis: int, pad: int = 0) -> np.ndarray:
    """Tridiagonal <m|x|n> in dimension n_basis + pad.

    <m|x|n> = sqrt(n/2) delta_{m,n-1} + sqrt((n+1)/2) delta_{m,n+1}.
    """
    if n_basis < 2:
        raise ValueError("n_basis must be at least 2")
    if pad < 0:
        raise ValueError("pad must be nonnegative")
    size = n_basis + pad
    if size > MAX_SIZE:
        raise ValueError(f"matrix size {size} exceeds the hard cap {MAX_SIZE}")
    off = np.sqrt(np.arange(1, size) / 2.0)
    return np.diag(off, 1) + np.diag(off, -1)


def momentum_squared_matrix(n_basis: int) -> np.ndarray:
    """Exact <m|p^2|n>: diagonal n + 1/2, second off-diagonals -sqrt((n+1)(n+2))/2."""
    if n_basis < 2:
        raise ValueError("n_basis must be at least 2")
    n = np.arange(n_basis)
    mat = np.diag(n + 0.5)
    if n_basis > 2:
        off = -np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0)) / 2.0
        mat += np.diag(off, 2) + np.diag(off, -2)
    return mat


def monomial_matrix(k: int, n_basis: int) -> np.ndarray:
    """Exact <m|x^k|n> for m, n < n_basis.

    Parameters
    ----------
    k : int
        Monomial power, 0 <= k <= 16.
    n_basis : int
        Truncation size of the returned block.

    Returns
    -------
    ndarray
        Real symmetric n_basis x n_basis matrix; entries with m+n+k odd
        are exactly zero (parity selection rule).
    """
    if not 0 <= k <= MAX_POWER:
        raise ValueError(f"monomial power must be in 0..{MAX_POWER}, got {k}")
    if k == 0:
        if n_basis < 2:
            raise ValueError("n_basis must be at least 2")
        return np.eye(n_basis)
    x = position_matrix(n_basis, pad=k)
    acc = x
    for _ in range(k - 1):
        acc = acc @ x
    block = acc[:n_basis, :n_basis]
    # matmul rounding is order-dependent; average away the ulp asymmetry
    return (block + block.T) / 2.0


def hamiltonian_matrix(p, n_basis: int) -> OperatorMatrix:
    """Assemble H = p^2 + V(x) in the oscillator basis.

    The PT structure of the coefficients makes even-even and odd-odd
    blocks exactly real and mixed-parity blocks exactly imaginary.
    """
    h = momentum_squared_matrix(n_basis).astype(complex)
    for power, coeff in p.terms:
        h += coeff * monomial_matrix(power, n_basis)
    return OperatorMatrix(h, n_basis, basis_tag="ho", label=f"p^2 + {p.label()}")


def matrix_to_json(m: OperatorMatrix) -> str:
    return json.dumps(
        {
            "n": m.n_basis,
            "basis": m.basis_tag,
            "entries_re": m.entries.real.tolist(),
            "entries_im": m.entries.imag.tolist(),
        }
    )


def matrix_from_json(text: str, label: str = "") -> OperatorMatrix:
    obj = json.loads(text)
    if not isinstance(obj, dict) or not {"n", "basis", "entries_re", "entries_im"} <= set(obj):
        raise ValueError('matrix JSON needs "n", "basis", "entries_re", "entries_im"')
    re = np.asarray(obj["entries_re"], dtype=float)
    im = np.asarray(obj["entries_im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError("entries_re and entries_im have different shapes")
    return OperatorMatrix(re + 1j * im, int(obj["n"]), basis_tag=obj["basis"], label=label)
