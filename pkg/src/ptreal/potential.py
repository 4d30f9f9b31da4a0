"""PT-symmetric polynomial potentials: parsing, validation, decomposition.

A potential V(x) = sum_k c_k x^k satisfies the PT condition V(-x)* = V(x)
exactly when every even-power coefficient is real and every odd-power
coefficient is purely imaginary.  Coefficients are kept as exact double
pairs and the forbidden component is checked against exact zero, so a
config file cannot smuggle in a near-violation.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

MAX_DEGREE = 16


class PotentialError(ValueError):
    """Malformed or invalid potential configuration."""


class PTViolationError(PotentialError):
    """A coefficient breaks the V(-x)* = V(x) condition."""


@dataclass(frozen=True)
class PotentialSpec:
    """Polynomial potential with PT-constrained complex coefficients.

    ``terms`` holds (power, coefficient) pairs, canonicalized at
    construction: sorted by power, exact-zero coefficients removed, at
    most one term per power.  ``parse_potential`` additionally requires
    degree >= 1; ``decompose`` may legitimately return an empty part.
    """

    terms: tuple[tuple[int, complex], ...]

    def __post_init__(self):
        cleaned = []
        seen = set()
        for power, coeff in self.terms:
            if not isinstance(power, int) or isinstance(power, bool) or power < 0:
                raise PotentialError(f"power must be a nonnegative integer, got {power!r}")
            if power > MAX_DEGREE:
                raise PotentialError(f"power {power} exceeds the supported maximum {MAX_DEGREE}")
            if power in seen:
                raise PotentialError(f"duplicate term for power {power}")
            seen.add(power)
            coeff = complex(coeff)
            if power % 2 == 0 and coeff.imag != 0.0:
                raise PTViolationError(
                    f"PT violation at power {power}: even-power coefficient {coeff} must be real"
                )
            if power % 2 == 1 and coeff.real != 0.0:
                raise PTViolationError(
                    f"PT violation at power {power}: odd-power coefficient {coeff} "
                    "must be purely imaginary"
                )
            if coeff != 0:
                cleaned.append((power, coeff))
        cleaned.sort(key=lambda t: t[0])
        object.__setattr__(self, "terms", tuple(cleaned))

    @property
    def degree(self) -> int:
        return self.terms[-1][0] if self.terms else 0

    def coefficient(self, power: int) -> complex:
        for p, c in self.terms:
            if p == power:
                return c
        return 0j

    def label(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for power, coeff in self.terms:
            c = repr(coeff.real) if coeff.imag == 0.0 else f"{coeff.imag!r}j"
            parts.append(c if power == 0 else f"({c})x^{power}")
        return " + ".join(parts)


def parse_potential(text: str) -> PotentialSpec:
    """Parse the JSON term-list config into a validated PotentialSpec.

    Raises PotentialError on malformed input, duplicate powers, or a
    degree-zero potential, and PTViolationError when a coefficient has a
    forbidden component.  Emits a UserWarning when the leading term is
    even with a negative coefficient (likely unconfined), which is
    accepted but worth flagging.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PotentialError(f"potential config is not valid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "terms" not in obj:
        raise PotentialError('potential config must be an object with a "terms" list')
    raw = obj["terms"]
    if not isinstance(raw, list):
        raise PotentialError('"terms" must be a list')
    terms = []
    for entry in raw:
        if not isinstance(entry, dict) or not {"power", "re", "im"} <= set(entry):
            raise PotentialError(f'each term needs "power", "re", "im" fields, got {entry!r}')
        power = entry["power"]
        if not isinstance(power, int) or isinstance(power, bool):
            raise PotentialError(f"power must be an integer, got {power!r}")
        try:
            coeff = complex(float(entry["re"]), float(entry["im"]))
        except (TypeError, ValueError) as exc:
            raise PotentialError(f"non-numeric coefficient in term {entry!r}") from exc
        terms.append((power, coeff))
    powers = [p for p, _ in terms]
    # report duplicates on the raw list, before zero terms are dropped
    for p in powers:
        if powers.count(p) > 1:
            raise PotentialError(f"duplicate term for power {p}")
    spec = PotentialSpec(tuple(terms))
    if spec.degree < 1:
        raise PotentialError("potential degree must be at least 1")
    lead_power, lead_coeff = spec.terms[-1]
    if lead_power % 2 == 0 and lead_coeff.real < 0:
        warnings.warn(
            f"leading term x^{lead_power} has negative coefficient "
            f"{lead_coeff.real!r}; potential is likely unconfined",
            UserWarning,
            stacklevel=2,
        )
    return spec


def serialize_potential(p: PotentialSpec) -> str:
    """Emit the JSON config, powers ascending; parse(serialize(p)) == p."""
    return json.dumps(
        {"terms": [{"power": k, "re": c.real, "im": c.imag} for k, c in p.terms]}
    )


def decompose(p: PotentialSpec) -> tuple[PotentialSpec, PotentialSpec]:
    """Split into (even, odd) parts; even is Re V, odd is i Im V."""
    even = PotentialSpec(tuple(t for t in p.terms if t[0] % 2 == 0))
    odd = PotentialSpec(tuple(t for t in p.terms if t[0] % 2 == 1))
    return even, odd


def recombine(even: PotentialSpec, odd: PotentialSpec) -> PotentialSpec:
    return PotentialSpec(even.terms + odd.terms)


def evaluate(p: PotentialSpec, x: complex) -> complex:
    """Evaluate sum_k c_k x^k by Horner's scheme."""
    if not p.terms:
        return 0j
    coeffs = [0j] * (p.degree + 1)
    for power, c in p.terms:
        coeffs[power] = c
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
