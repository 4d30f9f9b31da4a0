"""Self-check suite wiring the module-level invariants into one command.

Each group returns a short detail string on success and raises
VerifyFailure with the offending check named otherwise.  Randomized
groups use fixed seeds so the suite is reproducible run to run.
"""

from __future__ import annotations

import importlib
from dataclasses import dataclass

import numpy as np

from . import antiunitary as _anti
from . import spectra as _spectra
from .oscillator_basis import hamiltonian_matrix, monomial_matrix
from .potential import parse_potential

# the package re-exports the realify() function under the module's own
# name, so the submodule has to be fetched explicitly
_realify = importlib.import_module("ptreal.realify")

STANDARD_POTENTIALS = (
    '{"terms":[{"power":2,"re":1,"im":0},{"power":1,"re":0,"im":2}]}',
    '{"terms":[{"power":3,"re":0,"im":1}]}',
    '{"terms":[{"power":2,"re":1,"im":0},{"power":3,"re":0,"im":0.5}]}',
)


class VerifyFailure(AssertionError):
    pass


@dataclass(frozen=True)
class VerifyResult:
    group: str
    passed: bool
    detail: str


def _require(condition, message):
    if not condition:
        raise VerifyFailure(message)


def _custom_involution(n):
    """Exact non-diagonal involution: 2x2 swap blocks with unit phases."""
    w = np.zeros((n, n), dtype=complex)
    for b in range(n // 2):
        phase = _anti._UNIT_CYCLE[b % 4]
        w[2 * b, 2 * b + 1] = phase
        w[2 * b + 1, 2 * b] = phase
    if n % 2 == 1:
        w[n - 1, n - 1] = 1.0
    return _anti.AntiunitaryRep(w, n, tag="custom")


def _random_a_symmetric(rng, n):
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    parity = (-1.0) ** (np.arange(n)[:, None] + np.arange(n)[None, :])
    return (m + parity * np.conj(m)) / 2.0


def check_projectors() -> str:
    rng = np.random.default_rng(101)
    worst = 0.0
    for rep in (_anti.pt_ho(16), _custom_involution(16)):
        for _ in range(100):
            v = rng.standard_normal(16) + 1j * rng.standard_normal(16)
            qp = _anti.projector(rep, +1, v)
            qm = _anti.projector(rep, -1, v)
            scale = max(1.0, float(np.linalg.norm(v)))
            worst = max(worst, float(np.linalg.norm(qp + qm - v)) / scale)
            for sigma, qv in ((+1, qp), (-1, qm)):
                again = _anti.projector(rep, sigma, qv)
                worst = max(worst, float(np.linalg.norm(again - qv)) / scale)
                worst = max(worst, float(np.linalg.norm(_anti.apply(rep, qv) - sigma * qv)) / scale)
    _require(worst <= 1e-12, f"projector algebra violated by {worst:.3e}")
    return f"Q+ + Q- = 1, idempotence, eigen-relation: max violation {worst:.2e}"


def check_involution() -> str:
    rng = np.random.default_rng(202)
    worst = 0.0
    for rep in (_anti.pt_ho(12), _custom_involution(12)):
        for _ in range(100):
            v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
            twice = _anti.apply(rep, _anti.apply(rep, v))
            worst = max(worst, float(np.linalg.norm(twice - v)) / max(1.0, float(np.linalg.norm(v))))
    _require(worst <= 1e-12, f"antiunitary involution A^2 = 1 violated by {worst:.3e}")
    return f"A applied twice returns the vector: max violation {worst:.2e}"


def check_phase_unitary() -> str:
    for n in (2, 7, 16, 33):
        u = _realify.phase_unitary(n)
        mat = np.diag(u)
        dagger_vs_conj = float(np.max(np.abs(mat.conj().T - np.conj(mat))))
        _require(dagger_vs_conj == 0.0, f"U^dag = U* violated by {dagger_vs_conj:.3e} at N={n}")
        parity = _anti.pt_ho(n).unitary_part
        u2_vs_parity = float(np.max(np.abs(np.diag(u * u) - parity)))
        _require(u2_vs_parity == 0.0, f"U^2=P violated by {u2_vs_parity:.3e} at N={n}")
    return "U^dag = U* and U^2=P hold exactly for N in {2, 7, 16, 33}"


def check_real_gram() -> str:
    rng = np.random.default_rng(303)
    worst = 0.0
    for rep in (_anti.pt_ho(12), _custom_involution(12)):
        for _ in range(100):
            raw_u = rng.standard_normal(12) + 1j * rng.standard_normal(12)
            raw_v = rng.standard_normal(12) + 1j * rng.standard_normal(12)
            u = _anti.projector(rep, +1, raw_u)
            v = _anti.projector(rep, +1, raw_v)
            norm = max(1.0, float(np.linalg.norm(u) * np.linalg.norm(v)))
            worst = max(worst, abs(float(np.imag(np.vdot(u, v)))) / norm)
    _require(worst <= 1e-12, f"A-fixed inner products not real: Im up to {worst:.3e}")
    return f"inner products of A-fixed vectors are real: max Im {worst:.2e}"


def check_parity_rules() -> str:
    for k in range(7):
        mat = monomial_matrix(k, 12)
        for m in range(12):
            for n in range(12):
                if (m + n + k) % 2 == 1:
                    _require(
                        mat[m, n] == 0.0,
                        f"parity selection rule broken at <{m}|x^{k}|{n}> = {mat[m, n]!r}",
                    )
    return "<m|x^k|n> = 0 exactly whenever m+n+k is odd (k <= 6, N = 12)"


def _match_sign_vector(m1, m2):
    """Diagonal +-1 similarity with D m1 D = m2, found by entry matching."""
    n = m1.shape[0]
    floor = 1e-8 * max(1.0, float(np.max(np.abs(m1))))
    d = np.zeros(n)
    d[0] = 1.0
    while not np.all(d != 0.0):
        progressed = False
        for j in range(n):
            if d[j] != 0.0:
                continue
            known = [i for i in range(n) if d[i] != 0.0 and abs(m1[i, j]) > floor]
            if known:
                i = max(known, key=lambda idx: abs(m1[idx, j]))
                d[j] = np.sign(m2[i, j] / (d[i] * m1[i, j]))
                progressed = True
        if not progressed:
            # disconnected block: anchor its first undetermined column
            d[int(np.argmin(d != 0.0))] = 1.0
    return d


def check_recipe_agreement() -> str:
    n = 32
    spec = parse_potential(STANDARD_POTENTIALS[2])
    h = hamiltonian_matrix(spec, n)
    rep = _anti.pt_ho(n)
    mats = {
        "phase_unitary": _realify.realify(h, _realify.phase_unitary(n)).entries,
        "phase_power": _realify.realify(h, _anti.adapted_basis(rep, "phase_power")).entries,
        "porter": _realify.realify(h, _anti.adapted_basis(rep, "porter")).entries,
    }
    worst = 0.0
    names = list(mats)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            m1, m2 = mats[names[a]], mats[names[b]]
            d = _match_sign_vector(m1, m2)
            dev = float(np.max(np.abs(d[:, None] * m1 * d[None, :] - m2)))
            _require(
                dev <= 1e-12,
                f"recipes {names[a]} and {names[b]} disagree by {dev:.3e} after sign matching",
            )
            worst = max(worst, dev)
    return f"phase_unitary/phase_power/porter agree up to diagonal signs: max {worst:.2e}"


def check_charpoly_reality() -> str:
    spec = parse_potential(STANDARD_POTENTIALS[1])
    for n in (4, 8, 12):
        h = hamiltonian_matrix(spec, n)
        coeffs = _realify.char_poly(h)
        max_coeff = float(np.max(np.abs(coeffs)))
        imag = float(np.max(np.abs(coeffs.imag)))
        _require(
            imag <= 1e-9 * max_coeff,
            f"char poly of complex H has Im up to {imag:.3e} at N={n} (max coeff {max_coeff:.3e})",
        )
        real_coeffs = _realify.char_poly(_realify.realify(h, _realify.phase_unitary(n)))
        for c_complex, c_real in zip(coeffs, real_coeffs):
            denom = max(abs(c_complex), abs(c_real))
            if denom <= 1e-12 * max_coeff:
                continue
            _require(
                abs(c_complex - c_real) <= 1e-9 * denom,
                f"char poly coefficients of H and realify(H) differ at N={n}: "
                f"{c_complex} vs {c_real}",
            )
    return "characteristic polynomial real and preserved by realification (N = 4, 8, 12)"


def check_oracle_equivalence() -> str:
    rng = np.random.default_rng(404)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 13))
        h = _random_a_symmetric(rng, n)
        real_mat = _realify.realify(h, _realify.phase_unitary(n))
        eigs, _ = _spectra.eigenvalues_real(real_mat.entries)
        roots = list(_spectra.polynomial_roots(_realify.char_poly(h)))
        for z in eigs:
            dists = [abs(z - r) for r in roots]
            j = int(np.argmin(dists))
            worst = max(worst, dists[j])
            roots.pop(j)
        _require(
            worst <= 1e-8,
            f"QR eigenvalues and Durand-Kerner char-poly roots differ by {worst:.3e} at N={n}",
        )
    return f"QR path matches char-poly root oracle on 50 random matrices: max {worst:.2e}"


def check_closure() -> str:
    rng = np.random.default_rng(505)
    checked = 0
    for text in STANDARD_POTENTIALS:
        spec = parse_potential(text)
        h = hamiltonian_matrix(spec, 32)
        real_mat = _realify.realify(h, _realify.phase_unitary(32))
        eigs, backward = _spectra.eigenvalues_real(real_mat.entries)
        report = _spectra.classify_spectrum(eigs, backward_error=backward)
        _require(
            len(report.real_set) + 2 * len(report.pairs) == len(report.eigenvalues),
            "classification lost an eigenvalue",
        )
        checked += 1
    for _ in range(20):
        n = int(rng.integers(2, 17))
        h = _random_a_symmetric(rng, n)
        real_mat = _realify.realify(h, _realify.phase_unitary(n))
        eigs, _ = _spectra.eigenvalues_real(real_mat.entries)
        report = _spectra.classify_spectrum(eigs)
        scale = max(1.0, max(abs(z) for z in report.eigenvalues))
        for plus, minus in report.pairs:
            _require(
                abs(plus - np.conj(minus)) <= report.tol_classify * scale,
                f"pair ({plus}, {minus}) is not conjugate within tolerance",
            )
        checked += 1
    return f"conjugation closure holds for {checked} computed spectra"


GROUPS = (
    ("projectors", check_projectors),
    ("involution", check_involution),
    ("phase_unitary", check_phase_unitary),
    ("real_gram", check_real_gram),
    ("parity", check_parity_rules),
    ("recipes", check_recipe_agreement),
    ("charpoly", check_charpoly_reality),
    ("oracle", check_oracle_equivalence),
    ("closure", check_closure),
)

GROUP_NAMES = tuple(name for name, _ in GROUPS)


def run_verify(groups=None) -> list[VerifyResult]:
    """Run the requested invariant groups (all by default), in order."""
    if groups is None:
        selected = GROUPS
    else:
        unknown = [g for g in groups if g not in GROUP_NAMES]
        if unknown:
            raise ValueError(f"unknown verify group(s) {unknown}; available: {list(GROUP_NAMES)}")
        selected = [(name, fn) for name, fn in GROUPS if name in groups]
    results = []
    for name, fn in selected:
        try:
            detail = fn()
            results.append(VerifyResult(name, True, detail))
        except VerifyFailure as exc:
            results.append(VerifyResult(name, False, str(exc)))
    return results
