"""Antiunitary involutions, symmetry checks and adapted-basis recipes.

An antiunitary operator is stored through its unitary part W, acting as
A(v) = W conj(v).  The involution A^2 = 1 translates to W conj(W) = I and
is validated at construction.  A basis vector v is "A-fixed" when
A(v) = v; matrix elements of an A-symmetric operator between A-fixed
vectors are real, which is what the adapted-basis constructors below are
for.

Four recipes are provided:

* ``bender``      -- seed_j + A(seed_j).  Annihilates every seed vector in
                     the sigma = -1 sector, so the result is generally
                     incomplete; it is kept to make that failure mode
                     observable (rank/dropped diagnostics, no completion).
* ``projector_phase`` -- Q_+ seed_j and i * Q_- seed_j, discarding
                     near-zero vectors and orthonormalizing the survivors.
* ``phase_power`` -- i^n e_n; only defined for the alternating-parity
                     antiunitary (tag ``pt_ho``).
* ``porter``      -- a * seed_j + conj(a) * A(seed_j) for one complex a,
                     then the same discard/orthonormalize pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .oscillator_basis import OperatorMatrix

TOL_UNITARY = 1e-12
TOL_ZERO_VEC = 1e-10
TOL_A_FIXED = 1e-10

RECIPES = ("bender", "projector_phase", "phase_power", "porter")

# i^n without complex pow (which rounds): exact quarter-cycle units
_UNIT_CYCLE = (1.0 + 0.0j, 1.0j, -1.0 + 0.0j, -1.0j)


class IncompleteBasisError(ValueError):
    """An adapted-basis recipe produced fewer than n_basis usable vectors."""

    def __init__(self, message, rank=None, dropped=None):
        super().__init__(message)
        self.rank = rank
        self.dropped = dropped


@dataclass(frozen=True)
class AntiunitaryRep:
    """Antiunitary A = W . conj with A^2 = 1, given by its unitary part W."""

    unitary_part: np.ndarray
    n_basis: int
    tag: str = "custom"

    def __post_init__(self):
        w = np.array(self.unitary_part, dtype=complex)
        if w.ndim != 2 or w.shape[0] != w.shape[1]:
            raise ValueError(f"unitary part must be square, got shape {w.shape}")
        if self.n_basis != w.shape[0]:
            raise ValueError(f"n_basis {self.n_basis} does not match shape {w.shape}")
        if self.n_basis < 2:
            raise ValueError("n_basis must be at least 2")
        eye = np.eye(self.n_basis)
        unit_res = np.max(np.abs(w.conj().T @ w - eye))
        if unit_res > TOL_UNITARY:
            raise ValueError(f"unitary part fails W^dag W = I by {unit_res:.3e}")
        invol_res = np.max(np.abs(w @ np.conj(w) - eye))
        if invol_res > TOL_UNITARY:
            raise ValueError(f"not an involution: W conj(W) = I fails by {invol_res:.3e}")
        if self.tag == "pt_ho":
            alt = np.diag((-1.0) ** np.arange(self.n_basis)).astype(complex)
            if np.max(np.abs(w - alt)) != 0.0:
                raise ValueError("tag pt_ho requires W = diag((-1)^n)")
        elif self.tag != "custom":
            raise ValueError(f"tag must be 'pt_ho' or 'custom', got {self.tag!r}")
        w.setflags(write=False)
        object.__setattr__(self, "unitary_part", w)


@dataclass(frozen=True)
class AdaptedBasis:
    """Columns fixed by A, plus recipe tag and completeness diagnostics.

    ``columns`` is N x rank; rank == n_basis for every recipe except
    ``bender``, where rank + dropped == n_basis.  ``dropped`` counts the
    candidate vectors discarded as near-zero or linearly dependent.
    ``ortho_residual`` is max |(V^dag V - I)_mn| over the retained columns
    (bender columns are kept unnormalized, so it is only a diagnostic
    there).
    """

    columns: np.ndarray
    recipe: str
    rank: int
    dropped: int
    ortho_residual: float
    porter_a: complex | None = None

    def __post_init__(self):
        cols = np.array(self.columns, dtype=complex)
        cols.setflags(write=False)
        object.__setattr__(self, "columns", cols)

    @property
    def n_basis(self) -> int:
        return self.columns.shape[0]


def pt_ho(n_basis: int) -> AntiunitaryRep:
    """The oscillator-basis PT antiunitary: A e_n = (-1)^n e_n."""
    if n_basis < 2:
        raise ValueError("n_basis must be at least 2")
    w = np.diag((-1.0) ** np.arange(n_basis)).astype(complex)
    return AntiunitaryRep(w, n_basis, tag="pt_ho")


def apply(a: AntiunitaryRep, v: np.ndarray) -> np.ndarray:
    """A(v) = W conj(v); antilinear, so apply(c v) = conj(c) apply(v)."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (a.n_basis,):
        raise ValueError(f"vector shape {v.shape} does not match n_basis {a.n_basis}")
    return a.unitary_part @ np.conj(v)


def check_a_symmetry(h, a: AntiunitaryRep) -> float:
    """Max-norm violation of A H A^-1 = H, i.e. ||W conj(H) W^dag - H||_max.

    For tag pt_ho this is entrywise |(-1)^(m+n) conj(H_mn) - H_mn|.
    """
    entries = h.entries if isinstance(h, OperatorMatrix) else np.asarray(h, dtype=complex)
    if entries.shape != (a.n_basis, a.n_basis):
        raise ValueError(f"matrix shape {entries.shape} does not match n_basis {a.n_basis}")
    w = a.unitary_part
    return float(np.max(np.abs(w @ np.conj(entries) @ w.conj().T - entries)))


def projector(a: AntiunitaryRep, sigma: int, v: np.ndarray) -> np.ndarray:
    """Q_sigma v = (v + sigma A(v)) / 2; the result w satisfies A(w) = sigma w."""
    if sigma not in (1, -1):
        raise ValueError(f"sigma must be +1 or -1, got {sigma!r}")
    v = np.asarray(v, dtype=complex)
    return (v + sigma * apply(a, v)) / 2.0


def _orthonormalize_fixed(candidates, n_basis):
    """Modified Gram-Schmidt over A-fixed candidates.

    Inner products between A-fixed vectors are real, so the projection
    coefficients are taken real; this preserves the A-fixed property of
    every retained column exactly.  Returns (kept columns, dropped count).
    """
    kept: list[np.ndarray] = []
    dropped = 0
    for cand in candidates:
        v = np.array(cand, dtype=complex)
        if np.linalg.norm(v) < TOL_ZERO_VEC:
            dropped += 1
            continue
        if len(kept) == n_basis:
            dropped += 1
            continue
        for _ in range(2):  # two-pass re-orthogonalization
            for q in kept:
                v = v - float(np.real(np.vdot(q, v))) * q
        norm = np.linalg.norm(v)
        if norm < TOL_ZERO_VEC:
            dropped += 1
            continue
        kept.append(v / norm)
    return kept, dropped


def _assert_a_fixed(a, columns, recipe):
    worst = 0.0
    for j in range(columns.shape[1]):
        col = columns[:, j]
        worst = max(worst, float(np.linalg.norm(apply(a, col) - col)))
    if worst > TOL_A_FIXED:
        raise ValueError(f"recipe {recipe}: retained column violates A(v) = v by {worst:.3e}")


def _ortho_residual(columns):
    r = columns.conj().T @ columns - np.eye(columns.shape[1])
    return float(np.max(np.abs(r))) if columns.size else 0.0


def adapted_basis(
    a: AntiunitaryRep,
    recipe: str,
    seed_basis: np.ndarray | None = None,
    porter_a: complex = (1 + 1j) / 2,
) -> AdaptedBasis:
    """Construct an A-fixed basis by the requested recipe.

    Parameters
    ----------
    a : AntiunitaryRep
        The antiunitary involution.
    recipe : str
        One of ``bender``, ``projector_phase``, ``phase_power``,
        ``porter``.
    seed_basis : ndarray, optional
        Unitary N x N matrix of seed columns; identity by default.
        Ignored by ``phase_power``.
    porter_a : complex
        The single coefficient of the porter ansatz (default (1+i)/2).

    Raises
    ------
    IncompleteBasisError
        When ``projector_phase`` or ``porter`` end up with fewer than
        n_basis vectors (degenerate seed or degenerate porter_a).
        ``bender`` does NOT raise; its failure is reported through
        rank/dropped so callers can inspect it.
    ValueError
        ``phase_power`` with a non-pt_ho antiunitary, or a non-unitary
        seed basis.
    """
    if recipe not in RECIPES:
        raise ValueError(f"unknown recipe {recipe!r}; expected one of {RECIPES}")
    n = a.n_basis
    if seed_basis is None:
        seed = np.eye(n, dtype=complex)
    else:
        seed = np.asarray(seed_basis, dtype=complex)
        if seed.shape != (n, n):
            raise ValueError(f"seed basis shape {seed.shape} does not match n_basis {n}")
        if np.max(np.abs(seed.conj().T @ seed - np.eye(n))) > TOL_UNITARY:
            raise ValueError("seed basis must be unitary")

    if recipe == "bender":
        kept = []
        dropped = 0
        for j in range(n):
            col = seed[:, j] + apply(a, seed[:, j])
            if np.linalg.norm(col) < TOL_ZERO_VEC:
                dropped += 1
            else:
                kept.append(col)
        columns = np.column_stack(kept) if kept else np.zeros((n, 0), dtype=complex)
        basis = AdaptedBasis(columns, "bender", len(kept), dropped, _ortho_residual(columns))
    elif recipe == "phase_power":
        if a.tag != "pt_ho":
            raise ValueError("phase_power recipe requires the pt_ho antiunitary")
        columns = np.zeros((n, n), dtype=complex)
        for j in range(n):
            columns[j, j] = _UNIT_CYCLE[j % 4]
        basis = AdaptedBasis(columns, "phase_power", n, 0, _ortho_residual(columns))
    else:
        if recipe == "projector_phase":
            candidates = []
            for j in range(n):
                candidates.append(projector(a, +1, seed[:, j]))
                candidates.append(1j * projector(a, -1, seed[:, j]))
            porter_tag = None
        else:  # porter
            pa = complex(porter_a)
            candidates = [pa * seed[:, j] + np.conj(pa) * apply(a, seed[:, j]) for j in range(n)]
            porter_tag = pa
        kept, dropped = _orthonormalize_fixed(candidates, n)
        if len(kept) < n:
            raise IncompleteBasisError(
                f"recipe {recipe}: only {len(kept)} of {n} adapted vectors survive "
                f"({dropped} dropped)",
                rank=len(kept),
                dropped=dropped,
            )
        columns = np.column_stack(kept)
        basis = AdaptedBasis(
            columns, recipe, n, dropped, _ortho_residual(columns), porter_a=porter_tag
        )

    _assert_a_fixed(a, basis.columns, recipe)
    return basis


def antiunitary_from_json(text: str) -> AntiunitaryRep:
    """Load a custom antiunitary from {"n": N, "w_re": [[..]], "w_im": [[..]]}."""
    import json

    obj = json.loads(text)
    if not isinstance(obj, dict) or not {"n", "w_re", "w_im"} <= set(obj):
        raise ValueError('antiunitary JSON needs "n", "w_re", "w_im"')
    re = np.asarray(obj["w_re"], dtype=float)
    im = np.asarray(obj["w_im"], dtype=float)
    if re.shape != im.shape:
        raise ValueError("w_re and w_im have different shapes")
    return AntiunitaryRep(re + 1j * im, int(obj["n"]), tag="custom")
