"""Independent oracles shared by the test modules.

The quadrature oracle evaluates oscillator matrix elements from Hermite
functions and Gauss-Hermite nodes, with no ladder algebra involved, so it
is a genuinely independent check of the production construction.  The
integrands are polynomials times exp(-x^2), hence the quadrature is exact
once the node count exceeds half the polynomial degree; we still compare
two node counts to keep it honest ("adaptive" in the cheap sense).
"""

import math

import numpy as np
from numpy.polynomial.hermite import hermgauss, hermval


def _hermite(n, x):
    coeffs = np.zeros(n + 1)
    coeffs[n] = 1.0
    return hermval(x, coeffs)


def _norm_factor(n):
    return 1.0 / math.sqrt(2.0**n * math.factorial(n) * math.sqrt(math.pi))


def xk_element(m, n, k):
    """<m| x^k |n> by Gauss-Hermite quadrature."""
    nodes = (m + n + k) // 2 + 4
    values = []
    for extra in (0, 8):
        x, w = hermgauss(nodes + extra)
        f = _hermite(m, x) * _hermite(n, x) * x**k
        values.append(_norm_factor(m) * _norm_factor(n) * float(np.sum(w * f)))
    assert abs(values[0] - values[1]) < 1e-12 * max(1.0, abs(values[0]))
    return values[1]


def p2_element(m, n):
    """<m| p^2 |n> = integral of psi_m' psi_n' dx (integration by parts)."""
    nodes = m + n + 6
    x, w = hermgauss(nodes)

    def dpsi_poly(j):
        # (H_j' - x H_j); the Gaussian factor is carried by the weight
        hp = 2 * j * _hermite(j - 1, x) if j > 0 else np.zeros_like(x)
        return hp - x * _hermite(j, x)

    f = dpsi_poly(m) * dpsi_poly(n)
    return _norm_factor(m) * _norm_factor(n) * float(np.sum(w * f))


def greedy_match_distance(left, right):
    """Max distance of a greedy one-to-one matching between two eigenvalue lists."""
    right = list(right)
    assert len(left) == len(right)
    worst = 0.0
    for z in left:
        dists = [abs(z - w) for w in right]
        j = int(np.argmin(dists))
        worst = max(worst, dists[j])
        right.pop(j)
    return worst


def random_a_symmetric(rng, n):
    """Random complex matrix symmetrized under (-1)^(m+n) conj."""
    m = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    parity = (-1.0) ** (np.arange(n)[:, None] + np.arange(n)[None, :])
    return (m + parity * np.conj(m)) / 2.0


def random_pt_spec(rng, max_degree=8):
    """Random valid PT potential: even powers real, odd powers imaginary."""
    from ptreal import PotentialSpec

    n_terms = int(rng.integers(1, 5))
    powers = rng.choice(np.arange(1, max_degree + 1), size=n_terms, replace=False)
    terms = []
    for power in sorted(int(p) for p in powers):
        value = float(rng.uniform(-2.0, 2.0))
        coeff = complex(value, 0.0) if power % 2 == 0 else complex(0.0, value)
        terms.append((power, coeff))
    return PotentialSpec(tuple(terms))


def stable_levels(eigs_small, eigs_big, match_tol):
    """Eigenvalues of the larger truncation that persist from the smaller one.

    Spurious high Rayleigh-Ritz levels move wildly with the truncation
    size; genuine levels reappear.  Returns the persistent ones sorted by
    real part.
    """
    out = []
    for z in sorted(eigs_big, key=lambda w: (w.real, w.imag)):
        closest = min(abs(z - w) for w in eigs_small)
        if closest <= match_tol * max(1.0, abs(z)):
            out.append(z)
    return out
