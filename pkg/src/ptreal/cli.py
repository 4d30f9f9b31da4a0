"""Command-line interface: build, realify, spectrum, sweep, verify.

One command per process invocation; every run with identical flags and
input files produces byte-identical output files (fixed eigenvalue
ordering, shortest round-trip float formatting).

Exit codes are a stable API:

  0  success
  1  config/usage error (malformed or PT-violating potential, bad flags)
  2  i/o failure (missing input file, unwritable output)
  3  incomplete adapted basis (the bender recipe's demonstrated failure)
  4  reality-tolerance violation (input not A-symmetric / basis unadapted)
  5  eigensolver non-convergence
  6  conjugation-closure violation in spectrum classification
  7  verify found a failing invariant
"""

from __future__ import annotations

import argparse
import sys

from .antiunitary import (
    IncompleteBasisError,
    adapted_basis,
    antiunitary_from_json,
    check_a_symmetry,
    pt_ho,
)
from .oscillator_basis import hamiltonian_matrix, matrix_from_json, matrix_to_json
from .potential import PotentialError, parse_potential
from .realify import RealityError, phase_unitary, real_matrix_to_json, realify
from .spectra import (
    ClosureError,
    ConvergenceError,
    classify_spectrum,
    convergence_sweep,
    eigenvalues_real,
    report_to_json,
    sweep_to_csv,
)
from .verify import GROUP_NAMES, run_verify

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_IO = 2
EXIT_INCOMPLETE = 3
EXIT_REALITY = 4
EXIT_CONVERGENCE = 5
EXIT_CLOSURE = 6
EXIT_VERIFY = 7

CLI_RECIPES = ("phase_unitary", "projector_phase", "phase_power", "porter", "bender")
PORTER_DEFAULT_A = (1 + 1j) / 2


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; our exit-code table reserves 2 for i/o."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="ptreal",
        description="Real matrix representations and spectra of PT-symmetric Hamiltonians.",
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add_io(p, potential=True, matrix=False, out=True):
        if potential:
            p.add_argument("--potential", metavar="PATH", help="potential config JSON")
        if matrix:
            p.add_argument("--matrix", metavar="PATH", help="operator matrix JSON")
            p.add_argument(
                "--antiunitary",
                metavar="PATH",
                help="custom antiunitary JSON (default: alternating-parity)",
            )
        if out:
            p.add_argument("--out", metavar="PATH", required=True, help="output file")

    p_build = sub.add_parser("build", help="build the Hamiltonian matrix for a potential")
    add_io(p_build)
    p_build.add_argument("--n", type=int, required=True, help="basis truncation size")
    p_build.set_defaults(func=cmd_build)

    p_realify = sub.add_parser("realify", help="transform a matrix to its real representation")
    add_io(p_realify, matrix=True)
    p_realify.add_argument("--n", type=int, help="basis size (required with --potential)")
    p_realify.add_argument("--recipe", choices=CLI_RECIPES, default="phase_unitary")
    p_realify.add_argument("--tol-reality", type=float, default=1e-10)
    p_realify.set_defaults(func=cmd_realify)

    p_spectrum = sub.add_parser("spectrum", help="classified spectrum of the realified matrix")
    add_io(p_spectrum, matrix=True)
    p_spectrum.add_argument("--n", type=int, help="basis size (required with --potential)")
    p_spectrum.add_argument("--recipe", choices=CLI_RECIPES, default="phase_unitary")
    p_spectrum.add_argument("--tol-reality", type=float, default=1e-10)
    p_spectrum.add_argument("--tol-classify", type=float, default=1e-8)
    p_spectrum.set_defaults(func=cmd_spectrum)

    p_sweep = sub.add_parser("sweep", help="truncation-convergence table for a potential")
    add_io(p_sweep)
    p_sweep.add_argument("--n-list", required=True, metavar="N1,N2,...", help="ascending sizes")
    p_sweep.add_argument("--m-track", type=int, default=1, help="lowest levels to track")
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="run the invariant suite")
    p_verify.add_argument("--group", choices=GROUP_NAMES, help="run a single group")
    p_verify.set_defaults(func=cmd_verify)

    return parser


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _positive(value, name):
    if value <= 0:
        raise PotentialError(f"{name} must be positive, got {value}")
    return value


def _input_matrix(ns):
    """Resolve --potential/--matrix to an OperatorMatrix (exactly one source)."""
    has_potential = getattr(ns, "potential", None) is not None
    has_matrix = getattr(ns, "matrix", None) is not None
    if has_potential == has_matrix:
        raise PotentialError("exactly one of --potential and --matrix is required")
    if has_potential:
        if ns.n is None:
            raise PotentialError("--n is required with --potential")
        if ns.n < 2:
            raise PotentialError(f"--n must be at least 2, got {ns.n}")
        spec = parse_potential(_read(ns.potential))
        return hamiltonian_matrix(spec, ns.n)
    return matrix_from_json(_read(ns.matrix), label=ns.matrix)


def _resolve_basis(ns, mat):
    """Pick the realification basis from --recipe / --antiunitary flags."""
    n = mat.n_basis
    if ns.recipe == "phase_unitary":
        if getattr(ns, "antiunitary", None):
            raise PotentialError("--antiunitary is only meaningful with adapted-basis recipes")
        return phase_unitary(n)
    if getattr(ns, "antiunitary", None):
        rep = antiunitary_from_json(_read(ns.antiunitary))
        if rep.n_basis != n:
            raise PotentialError(
                f"antiunitary size {rep.n_basis} does not match matrix size {n}"
            )
    else:
        rep = pt_ho(n)
    kwargs = {"porter_a": PORTER_DEFAULT_A} if ns.recipe == "porter" else {}
    basis = adapted_basis(rep, ns.recipe, **kwargs)
    if ns.recipe == "bender":
        print(f"rank {basis.rank} of {n}, {basis.dropped} columns dropped")
    return basis


def cmd_build(ns) -> int:
    if ns.potential is None:
        raise PotentialError("--potential is required")
    if ns.n < 2:
        raise PotentialError(f"--n must be at least 2, got {ns.n}")
    spec = parse_potential(_read(ns.potential))
    mat = hamiltonian_matrix(spec, ns.n)
    violation = check_a_symmetry(mat, pt_ho(ns.n))
    _write(ns.out, matrix_to_json(mat) + "\n")
    print(f"A-symmetry max violation: {violation!r}")
    return EXIT_OK


def cmd_realify(ns) -> int:
    _positive(ns.tol_reality, "--tol-reality")
    mat = _input_matrix(ns)
    basis = _resolve_basis(ns, mat)
    real_mat = realify(mat, basis, tol=ns.tol_reality)
    _write(ns.out, real_matrix_to_json(real_mat) + "\n")
    print(f"imag residual: {real_mat.imag_residual!r}")
    return EXIT_OK


def cmd_spectrum(ns) -> int:
    _positive(ns.tol_reality, "--tol-reality")
    _positive(ns.tol_classify, "--tol-classify")
    mat = _input_matrix(ns)
    basis = _resolve_basis(ns, mat)
    real_mat = realify(mat, basis, tol=ns.tol_reality)
    eigs, backward = eigenvalues_real(real_mat.entries)
    report = classify_spectrum(
        eigs, ns.tol_classify, backward_error=backward, n_basis=mat.n_basis
    )
    _write(ns.out, report_to_json(report) + "\n")
    print(f"real eigenvalues: {len(report.real_set)}  conjugate pairs: {len(report.pairs)}")
    return EXIT_OK


def cmd_sweep(ns) -> int:
    if ns.potential is None:
        raise PotentialError("--potential is required")
    try:
        n_list = [int(x) for x in ns.n_list.split(",") if x.strip()]
    except ValueError as exc:
        raise PotentialError(f"--n-list must be comma-separated integers: {exc}") from exc
    spec = parse_potential(_read(ns.potential))
    try:
        rows = convergence_sweep(spec, n_list, ns.m_track)
    except ValueError as exc:
        raise PotentialError(str(exc)) from exc
    _write(ns.out, sweep_to_csv(rows))
    last_n = rows[-1].n_basis
    final = max((r.cauchy_diff for r in rows if r.n_basis == last_n and r.cauchy_diff is not None),
                default=None)
    print(f"wrote {len(rows)} rows; final max cauchy diff: {final!r}")
    return EXIT_OK


def cmd_verify(ns) -> int:
    results = run_verify([ns.group] if ns.group else None)
    for res in results:
        print(f"{'PASS' if res.passed else 'FAIL'} {res.group}: {res.detail}")
    failing = [res for res in results if not res.passed]
    if failing:
        print(f"verify failed: {failing[0].group}: {failing[0].detail}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits on usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_CONFIG
    try:
        return ns.func(ns)
    except IncompleteBasisError as exc:
        print(f"ptreal: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except RealityError as exc:
        print(f"ptreal: {exc}", file=sys.stderr)
        return EXIT_REALITY
    except ConvergenceError as exc:
        print(f"ptreal: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except ClosureError as exc:
        print(f"ptreal: {exc}", file=sys.stderr)
        return EXIT_CLOSURE
    except OSError as exc:
        print(f"ptreal: i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (PotentialError, ValueError) as exc:
        print(f"ptreal: {exc}", file=sys.stderr)
        return EXIT_CONFIG


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
