"""Command-line entry point: ``qrotor <subcommand> [options]``.

Exit codes: 0 success, 2 bad input, 3 angle solve did not converge,
4 internal cross-check failed.
"""

from __future__ import annotations

import argparse
import io
import sys

import numpy as np

from . import hamiltonian, ops, rotor, states
from .bitalgebra import num_qubits
from .errors import ConvergenceError, InvalidInputError, InvariantViolation, QRotorError
from .jsonio import dumps, format_float, loads

EXIT_OK, EXIT_INPUT, EXIT_CONVERGENCE, EXIT_INVARIANT = 0, 2, 3, 4

ORACLE_TOL = 1e-10
UNITARITY_TOL = 1e-10
ACTION_TOL = 1e-8
RENORM_TOL = 1e-6


class _Output:
    """Collects the document and an exit code; written once at the end."""

    def __init__(self, doc, code=EXIT_OK, csv_rows=None):
        self.doc = doc
        self.code = code
        self.csv_rows = csv_rows


def _read_json(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        return loads(text)
    except OSError as exc:
        raise InvalidInputError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise InvalidInputError(f"{path}: not valid JSON ({exc})") from exc


def _check_n(args, n: int) -> None:
    if args.n is not None and args.n != n:
        raise InvalidInputError(f"--n {args.n} does not match input with n={n}")


def _raw_coeffs(doc) -> np.ndarray:
    try:
        raw = np.asarray(doc["coeffs"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInputError(f"malformed state file: {exc}") from exc
    if raw.ndim != 2 or raw.shape[1] != 2:
        raise InvalidInputError("coeffs must be a list of [re, im] pairs")
    c = raw[:, 0] + 1j * raw[:, 1]
    n = num_qubits(c.shape[0])
    if "n" in doc and doc["n"] != n:
        raise InvalidInputError(f"declared n={doc['n']} but {c.shape[0]} coefficients given")
    return c


def _load_state(path: str, args, notes: dict | None = None) -> states.StateVector:
    c = _raw_coeffs(_read_json(path))
    norm = float(np.linalg.norm(c))
    if notes is not None and abs(norm - 1.0) > RENORM_TOL:
        print(f"warning: {path}: state norm {norm:.6g}, renormalizing", file=sys.stderr)
        notes["renormalized"] = True
        notes["input_norm"] = norm
    st = states.make_state(c)
    _check_n(args, st.n)
    return st


def _solver_opts(args) -> dict:
    for name in ("tol", "zero_tol"):
        if getattr(args, name) <= 0:
            raise InvalidInputError(f"--{name.replace('_', '-')} must be positive")
    if args.max_restarts < 0:
        raise InvalidInputError("--max-restarts must be non-negative")
    return {"tol": args.tol, "zero_tol": args.zero_tol,
            "max_restarts": args.max_restarts, "seed": args.seed}


def _complex_rows(c) -> list:
    return [[float(z.real), float(z.imag)] for z in c]


def _matrix_csv(m) -> list:
    return [("j", "k", "re", "im")] + [
        (j, k, m[j, k].real, m[j, k].imag) for j in range(m.shape[0]) for k in range(m.shape[1])]


def cmd_synth(args) -> _Output:
    doc = _read_json(args.input)
    if isinstance(doc, dict) and "angles" in doc:
        doc = doc["angles"]
    if not isinstance(doc, dict):
        raise InvalidInputError("angle file must be a JSON object")
    angles = rotor.AngleSet.from_dict(doc)
    _check_n(args, angles.n)
    st = rotor.synthesize(angles)
    out = st.to_dict()
    code = EXIT_OK
    if args.oracle:
        dev = states.max_deviation(rotor.rotor_matrix_oracle(angles).matrix[:, 0], st.coeffs)
        out["oracle_deviation"] = dev
        if dev > ORACLE_TOL:
            code = EXIT_INVARIANT
    rows = [("l", "re", "im")] + [(l, z.real, z.imag) for l, z in enumerate(st.coeffs)]
    return _Output(out, code, rows)


def cmd_analyze(args) -> _Output:
    notes: dict = {}
    st = _load_state(args.input, args, notes)
    report = rotor.analyze_report(st, **_solver_opts(args))
    out = report.to_dict()
    out.update(notes)
    code = EXIT_OK if report.converged else EXIT_CONVERGENCE
    if args.oracle and st.n <= rotor.MAX_ORACLE_QUBITS:
        dev = states.max_deviation(rotor.rotor_matrix_oracle(report.angles).matrix[:, 0], st.coeffs)
        out["oracle_deviation"] = dev
        if report.converged and dev > args.tol + ORACLE_TOL:
            code = EXIT_INVARIANT
    a = report.angles
    rows = [("kind", "index", "value")]
    rows += [("theta", l + 1, v) for l, v in enumerate(a.theta)]
    rows += [("phi", l, v) for l, v in enumerate(a.phi)]
    rows += [("residual", "", report.residual)]
    return _Output(out, code, rows)


def cmd_transform(args) -> _Output:
    paths = args.input if isinstance(args.input, list) else [args.input]
    if len(paths) != 2:
        raise InvalidInputError("transform needs two state files: -i A.json -i B.json")
    a = _load_state(paths[0], args)
    b = _load_state(paths[1], args)
    if a.dim != b.dim:
        raise InvalidInputError(f"dimension mismatch: {a.dim} vs {b.dim}")
    U = rotor.transform(a, b, **_solver_opts(args)).matrix
    action = float(np.linalg.norm(U @ a.coeffs - b.coeffs))
    unitarity = float(np.max(np.abs(U.conj().T @ U - np.eye(a.dim))))
    out = ops.OperatorMatrix(U, name="transform").to_dict()
    out["action_error"] = action
    out["unitarity_error"] = unitarity
    code = EXIT_OK if (action <= ACTION_TOL and unitarity <= UNITARITY_TOL) else EXIT_INVARIANT
    return _Output(out, code, _matrix_csv(U))


def cmd_spectrum(args) -> _Output:
    c = _raw_coeffs(_read_json(args.input))
    _check_n(args, num_qubits(c.shape[0]))
    rep = ops.walsh_spectrum_singularity(c)
    out = {"n": num_qubits(c.shape[0]), "spectrum": _complex_rows(rep.spectrum),
           "singular": rep.singular}
    rows = [("k", "re", "im")] + [(k, z.real, z.imag) for k, z in enumerate(rep.spectrum)]
    return _Output(out, EXIT_OK, rows)


def cmd_ops(args) -> _Output:
    n = args.n if args.n is not None else 2
    name = args.name
    if name == "P":
        if args.index is not None:
            raise InvalidInputError("P takes no index")
        op = ops.build_projector(n)
    else:
        if args.index is None:
            raise InvalidInputError(f"operator {name} needs an index")
        builder = {"b": ops.build_b, "z": ops.build_z, "e": ops.build_e}[name]
        op = builder(args.index, n)
    return _Output(op.to_dict(), EXIT_OK, _matrix_csv(op.matrix))


def cmd_ham(args) -> _Output:
    doc = _read_json(args.input)
    if not isinstance(doc, dict):
        raise InvalidInputError("Hamiltonian input must be a JSON object")
    p = hamiltonian.CoupledQubitParams.from_dict(doc)
    _check_n(args, 2)
    spec = hamiltonian.eigenstates(p)
    out = {"params": p.to_dict()}
    out.update(spec.to_dict())
    opts = _solver_opts(args)
    reports = [rotor.analyze_report(s, **opts) for s in spec.eigenstates]
    out["angles"] = [r.angles.to_dict() for r in reports]
    out["residuals"] = [r.residual for r in reports]
    code = EXIT_OK if all(r.converged for r in reports) else EXIT_CONVERGENCE
    rows = [("label", "energy")] + list(zip(("++", "mixed+", "mixed-", "--"), spec.energies))
    return _Output(out, code, rows)


COMMANDS = {
    "synth": (cmd_synth, "angles -> state"),
    "analyze": (cmd_analyze, "state -> angles (inverse solve)"),
    "transform": (cmd_transform, "two states -> unitary mapping the first onto the second"),
    "spectrum": (cmd_spectrum, "Walsh spectrum and singularity of a coefficient vector"),
    "ops": (cmd_ops, "dump b/z/e/P operator matrices"),
    "ham": (cmd_ham, "coupled two-qubit Hamiltonian spectrum and eigenstate angles"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", default="-", help="output path (default stdout)")
    common.add_argument("--tol", type=float, default=rotor.DEFAULT_TOL)
    common.add_argument("--zero-tol", type=float, default=rotor.DEFAULT_ZERO_TOL)
    common.add_argument("--max-restarts", type=int, default=rotor.DEFAULT_MAX_RESTARTS)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--oracle", action="store_true",
                        help="cross-check against the dense exponential product")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--n", type=int, default=None, help="expected qubit count")

    parser = argparse.ArgumentParser(prog="qrotor", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name == "transform":
            p.add_argument("-i", "--input", action="append", default=None,
                           help="state file; give twice (source, then target)")
        elif name != "ops":
            p.add_argument("-i", "--input", default="-", help="input path (default stdin)")
        if name == "ops":
            p.add_argument("name", choices=("b", "z", "e", "P"))
            p.add_argument("index", type=int, nargs="?")
    return parser


def _render(result: _Output, fmt: str) -> str:
    if fmt == "csv" and result.csv_rows is not None:
        buf = io.StringIO()
        for row in result.csv_rows:
            buf.write(",".join(format_float(v) if isinstance(v, float) else str(v) for v in row))
            buf.write("\n")
        return buf.getvalue()
    return dumps(result.doc)


def _write(text: str, path: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        result = func(args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except InvariantViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (InvalidInputError, QRotorError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        _write(_render(result, args.format), args.output)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT
    return result.code


if __name__ == "__main__":
    sys.exit(main())
