"""Real matrix representations and spectra of PT-symmetric Hamiltonians.

Build polynomial PT-symmetric Hamiltonians in the harmonic-oscillator
basis, transform them to provably real matrices through bases fixed by
the antiunitary symmetry, and classify their spectra into real
eigenvalues and complex-conjugate pairs.
"""

from .antiunitary import (
    AdaptedBasis,
    AntiunitaryRep,
    IncompleteBasisError,
    adapted_basis,
    antiunitary_from_json,
    check_a_symmetry,
    projector,
    pt_ho,
)
from .oscillator_basis import (
    OperatorMatrix,
    hamiltonian_matrix,
    matrix_from_json,
    matrix_to_json,
    momentum_squared_matrix,
    monomial_matrix,
    position_matrix,
)
from .potential import (
    PotentialError,
    PotentialSpec,
    PTViolationError,
    decompose,
    evaluate,
    parse_potential,
    recombine,
    serialize_potential,
)
from .realify import (
    RealityError,
    RealMatrix,
    char_poly,
    phase_unitary,
    real_matrix_to_json,
    realify,
)
from .spectra import (
    ClosureError,
    ConvergenceError,
    SpectrumReport,
    SweepRow,
    classify_spectrum,
    convergence_sweep,
    eigenvalues_real,
    hessenberg,
    polynomial_roots,
    report_to_json,
    sweep_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AdaptedBasis",
    "AntiunitaryRep",
    "ClosureError",
    "ConvergenceError",
    "IncompleteBasisError",
    "OperatorMatrix",
    "PotentialError",
    "PotentialSpec",
    "PTViolationError",
    "RealMatrix",
    "RealityError",
    "SpectrumReport",
    "SweepRow",
    "adapted_basis",
    "antiunitary_from_json",
    "char_poly",
    "check_a_symmetry",
    "classify_spectrum",
    "convergence_sweep",
    "decompose",
    "eigenvalues_real",
    "evaluate",
    "hamiltonian_matrix",
    "hessenberg",
    "matrix_from_json",
    "matrix_to_json",
    "momentum_squared_matrix",
    "monomial_matrix",
    "parse_potential",
    "phase_unitary",
    "polynomial_roots",
    "position_matrix",
    "projector",
    "pt_ho",
    "real_matrix_to_json",
    "realify",
    "recombine",
    "report_to_json",
    "serialize_potential",
    "sweep_to_csv",
]
