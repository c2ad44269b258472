"""Rotor parametrization of n-qubit states by 2N - 1 real angles.

A state is produced from the reference |0> by

    R = exp(-i/2 sum_l phi_l z(l)) exp(-i/2 sum_{l>=1} theta_l b(l))

The b(l) commute and are diagonalized by the Walsh transform W, so the polar
factor is sum_l c_l b(l) with c = W u / N, u_k = exp(-i/2 (W theta)_k). On the
reference state the azimuthal factor multiplies c_l by exp(-i alpha_l / 2) with
alpha = W phi.

The inverse direction (:func:`analyze`) matches |c_l(theta)|^2 to the target
magnitudes with a damped Gauss-Newton solve, then fixes alpha exactly from the
coefficient phases.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bitalgebra import fwht, num_qubits, walsh_matrix
from .errors import ConvergenceError, InvalidInputError
from .ops import (
    MAX_DENSE_QUBITS,
    OperatorMatrix,
    build_b,
    build_z,
    expm_hermitian_oracle,
)
from .states import StateVector, make_state, max_deviation

MAX_ORACLE_QUBITS = 6
DEFAULT_TOL = 1e-9
DEFAULT_ZERO_TOL = 1e-12
DEFAULT_MAX_RESTARTS = 32
DEFAULT_MAX_ITER = 200
SEED_ITERATIONS = 300
SEED_RELAXATION = 0.99
DENSE_SEED_QUBITS = 6


@dataclass(frozen=True)
class AngleSet:
    """N - 1 polar angles theta_1..theta_{N-1} and N azimuthal angles phi_0..phi_{N-1}.

    theta_0 is identically zero and not stored.
    """

    theta: np.ndarray
    phi: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        th = np.array(self.theta, dtype=float).reshape(-1)
        ph = np.array(self.phi, dtype=float).reshape(-1)
        n = num_qubits(ph.shape[0])
        if n < 1:
            raise InvalidInputError("need at least one qubit (two phi angles)")
        if th.shape[0] != ph.shape[0] - 1:
            raise InvalidInputError(
                f"expected {ph.shape[0] - 1} polar angles for N={ph.shape[0]}, got {th.shape[0]}")
        if not (np.all(np.isfinite(th)) and np.all(np.isfinite(ph))):
            raise InvalidInputError("angles must be finite")
        th.setflags(write=False)
        ph.setflags(write=False)
        object.__setattr__(self, "theta", th)
        object.__setattr__(self, "phi", ph)
        object.__setattr__(self, "n", n)

    @classmethod
    def zeros(cls, n: int) -> "AngleSet":
        N = 1 << n
        return cls(np.zeros(N - 1), np.zeros(N))

    @property
    def size(self) -> int:
        return self.theta.shape[0] + self.phi.shape[0]

    def reduced(self) -> "AngleSet":
        """Same rotor with every angle folded into (-2pi, 2pi] (period 4pi)."""
        return AngleSet(_fold(self.theta), _fold(self.phi))

    def to_dict(self) -> dict:
        return {"n": self.n, "theta": [float(x) for x in self.theta],
                "phi": [float(x) for x in self.phi]}

    @classmethod
    def from_dict(cls, doc: dict) -> "AngleSet":
        try:
            angles = cls(doc["theta"], doc["phi"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed angle set: {exc}") from exc
        if "n" in doc and doc["n"] != angles.n:
            raise InvalidInputError(f"declared n={doc['n']} but angle lengths imply n={angles.n}")
        return angles


def _fold(x: np.ndarray) -> np.ndarray:
    return x - 4 * np.pi * np.ceil((x - 2 * np.pi) / (4 * np.pi))


def _full_theta(theta: np.ndarray) -> np.ndarray:
    return np.concatenate(([0.0], theta))


def _polar(theta) -> tuple[np.ndarray, np.ndarray]:
    theta = np.asarray(theta, dtype=float).reshape(-1)
    N = theta.shape[0] + 1
    num_qubits(N)
    u = np.exp(-0.5j * fwht(_full_theta(theta)))
    return fwht(u) / N, u


def polar_coefficients(theta) -> np.ndarray:
    """Coefficients c_l of exp(-i/2 sum theta_l b(l)) = sum_l c_l b(l)."""
    theta = np.asarray(theta, dtype=float).reshape(-1)
    if not is_valid_polar_length(theta.shape[0]):
        raise InvalidInputError(f"{theta.shape[0]} polar angles is not 2**n - 1 for n >= 1")
    return _polar(theta)[0]


def is_valid_polar_length(m: int) -> bool:
    N = m + 1
    return N >= 2 and (N & (N - 1)) == 0


def phases_from_phi(phi) -> np.ndarray:
    """alpha = W phi; the azimuthal factor multiplies c_l by exp(-i alpha_l / 2)."""
    phi = np.asarray(phi, dtype=float).reshape(-1)
    return fwht(phi)


def phi_from_phases(alpha) -> np.ndarray:
    alpha = np.asarray(alpha, dtype=float).reshape(-1)
    return fwht(alpha) / alpha.shape[0]


def _synth_coeffs(angles: AngleSet) -> np.ndarray:
    c = _polar(angles.theta)[0]
    return c * np.exp(-0.5j * phases_from_phi(angles.phi))


def synthesize(angles: AngleSet) -> StateVector:
    """The state R |0> for the given angles."""
    return make_state(_synth_coeffs(angles))


def rotor_matrix(angles: AngleSet) -> OperatorMatrix:
    """Full rotor R, evaluated spectrally.

    The polar factor has entry (j, k) = c[j ^ k]; the azimuthal factor is
    diagonal with entries exp(-i alpha_j / 2).
    """
    if angles.n > MAX_DENSE_QUBITS:
        raise InvalidInputError(f"dense rotor limited to n <= {MAX_DENSE_QUBITS}")
    c = _polar(angles.theta)[0]
    idx = np.arange(c.shape[0])
    polar = c[idx[:, None] ^ idx[None, :]]
    azimuthal = np.exp(-0.5j * phases_from_phi(angles.phi))
    return OperatorMatrix(azimuthal[:, None] * polar, name="R", unitary=True)


def rotor_matrix_oracle(angles: AngleSet) -> OperatorMatrix:
    """R as an explicit product of 2N - 1 single-generator exponentials."""
    n = angles.n
    if n > MAX_ORACLE_QUBITS:
        raise InvalidInputError(f"dense oracle limited to n <= {MAX_ORACLE_QUBITS}")
    N = 1 << n
    R = np.eye(N, dtype=complex)
    for l in range(N):
        R = R @ expm_hermitian_oracle(build_z(l, n), angles.phi[l] / 2).matrix
    for l in range(1, N):
        R = R @ expm_hermitian_oracle(build_b(l, n), angles.theta[l - 1] / 2).matrix
    return OperatorMatrix(R, name="R", unitary=True)


def magnitude_residual(theta, probs) -> np.ndarray:
    """r_l = |c_l(theta)|^2 - probs_l."""
    c = _polar(theta)[0]
    return np.abs(c) ** 2 - np.asarray(probs, dtype=float)


def magnitude_jacobian(theta) -> np.ndarray:
    """d r_l / d theta_m, an N x (N-1) real matrix.

    dc/dtheta_m = W diag(-i u / 2) W[:, m] / N, and
    d|c_l|^2 = 2 Re(conj(c_l) dc_l).
    """
    c, u = _polar(theta)
    return _jacobian_from(c, u)


def _jacobian_from(c: np.ndarray, u: np.ndarray) -> np.ndarray:
    N = c.shape[0]
    # columns m = 1..N-1 of W are the Walsh characters of each generator index
    chars = fwht(np.eye(N)[:, 1:], axis=0)
    dc = fwht((-0.5j * u)[:, None] * chars, axis=0) / N
    return 2.0 * np.real(np.conj(c)[:, None] * dc)


def _residual_and_jacobian(theta: np.ndarray, probs: np.ndarray):
    c, u = _polar(theta)
    return np.abs(c) ** 2 - probs, _jacobian_from(c, u)


def _levenberg_marquardt(fun, x0, max_iter=DEFAULT_MAX_ITER, cost_floor=1e-32):
    """Marquardt-scaled damped Gauss-Newton. Returns (x, cost, iterations).

    Stops early on a stalled positive cost so that unreachable targets do not
    burn the full iteration budget.
    """
    x = np.array(x0, dtype=float)
    r, J = fun(x)
    cost = float(r @ r)
    lam = 1e-3
    slow = 0
    it = 0
    for it in range(1, max_iter + 1):
        if cost <= cost_floor:
            break
        g = J.T @ r
        A = J.T @ J
        d = np.diag(A).copy()
        d += 1e-12 * max(float(d.max()), 1.0)
        accepted = False
        while lam < 1e16:
            try:
                step = np.linalg.solve(A + lam * np.diag(d), -g)
            except np.linalg.LinAlgError:
                lam *= 4.0
                continue
            x_new = x + step
            r_new, J_new = fun(x_new)
            cost_new = float(r_new @ r_new)
            if cost_new < cost:
                accepted = True
                break
            lam *= 4.0
        if not accepted:
            break
        gain = (cost - cost_new) / cost
        x, r, J, cost = x_new, r_new, J_new, cost_new
        lam = max(lam / 5.0, 1e-15)
        if np.linalg.norm(step) <= 1e-15 * (1.0 + np.linalg.norm(x)):
            break
        slow = slow + 1 if (gain < 1e-6 and cost > 1e-20) else 0
        if slow >= 4:
            break
    return x, cost, it


@dataclass(frozen=True)
class AnalysisReport:
    angles: AngleSet
    residual: float
    restarts: int
    iterations: int
    converged: bool

    def to_dict(self) -> dict:
        return {"angles": self.angles.to_dict(), "residual": float(self.residual),
                "restarts": int(self.restarts), "iterations": int(self.iterations)}


def _as_state(target) -> StateVector:
    if isinstance(target, StateVector):
        return target
    return make_state(target, exact=True)


def _phase_solve(theta: np.ndarray, d: np.ndarray, zero_tol: float) -> AngleSet:
    c = _polar(theta)[0]
    alpha = np.where(np.abs(d) >= zero_tol, 2.0 * (np.angle(c) - np.angle(d)), 0.0)
    return AngleSet(theta, phi_from_phases(alpha))


def _seed_from_projections(d: np.ndarray, rng: np.random.Generator,
                           iterations: int = SEED_ITERATIONS,
                           beta: float = SEED_RELAXATION) -> np.ndarray:
    """Polar angles for a restart, from relaxed alternating reflections (RAAR).

    Searches for coefficients with the target magnitudes whose Walsh transform
    has unit modulus, starting from random phases; such a vector is exactly the
    polar factor of some rotor. The angles are read off the Walsh-domain phases.
    """
    N = d.shape[0]
    n = num_qubits(N)
    mag = np.abs(d)
    if n <= DENSE_SEED_QUBITS:
        W = walsh_matrix(n).astype(complex)

        def walsh(x):
            return W @ x
    else:
        walsh = fwht

    def unit(x):
        return x / np.maximum(np.abs(x), 1e-300)

    x = mag * np.exp(1j * rng.uniform(-np.pi, np.pi, N))
    for _ in range(iterations):
        pb = walsh(unit(walsh(x))) / N
        rb = 2.0 * pb - x
        x = 0.5 * beta * (2.0 * mag * unit(rb) - rb + x) + (1.0 - beta) * pb
    u = walsh(mag * unit(walsh(unit(walsh(x))) / N))
    # u_k = exp(-i s_k / 2) with s = W theta; dropping theta_0 only shifts the global phase
    return (fwht(-2.0 * np.angle(u)) / N)[1:]


def _seed_iterations(attempt: int) -> int:
    """Later restarts run the projections longer; hard targets need it."""
    return SEED_ITERATIONS << min((attempt - 1) // 8, 3)


def analyze_report(target, *, tol: float = DEFAULT_TOL, zero_tol: float = DEFAULT_ZERO_TOL,
                   max_restarts: int = DEFAULT_MAX_RESTARTS, seed: int = 0,
                   max_iter: int = DEFAULT_MAX_ITER, reduce_angles: bool = False) -> AnalysisReport:
    """Angles whose synthesized state matches ``target`` componentwise within ``tol``.

    Never raises on non-convergence; the report carries ``converged=False`` and
    the best attempt.
    """
    if tol <= 0 or zero_tol <= 0 or max_restarts < 0:
        raise InvalidInputError("tolerances must be positive and max_restarts non-negative")
    state = _as_state(target)
    d = state.coeffs
    probs = np.abs(d) ** 2
    rng = np.random.default_rng(seed)
    theta0 = 2.0 * np.arcsin(np.clip(np.abs(d[1:]), 0.0, 1.0))

    def fun(th):
        return _residual_and_jacobian(th, probs)

    best = None
    total_iter = 0
    for attempt in range(max_restarts + 1):
        theta, _, iters = _levenberg_marquardt(fun, theta0, max_iter=max_iter)
        total_iter += iters
        angles = _phase_solve(theta, d, zero_tol)
        residual = max_deviation(_synth_coeffs(angles), d)
        if best is None or residual < best[1]:
            best = (angles, residual)
        if residual <= tol:
            break
        theta0 = _seed_from_projections(d, rng, _seed_iterations(attempt + 1))
    angles, residual = best
    if reduce_angles:
        angles = angles.reduced()
    return AnalysisReport(angles, residual, attempt, total_iter, residual <= tol)


def analyze(target, **opts) -> AngleSet:
    """Inverse of :func:`synthesize`; raises ConvergenceError when no match is found."""
    report = analyze_report(target, **opts)
    if not report.converged:
        raise ConvergenceError(
            f"no angle set reproduces the target: residual {report.residual:.3e} "
            f"after {report.restarts} restarts",
            residual=report.residual, restarts=report.restarts,
            iterations=report.iterations, angles=report.angles)
    return report.angles


def euler_rotor(phi: float, theta: float, chi: float) -> np.ndarray:
    """exp(-i phi s3 / 2) exp(-s13 theta / 2) exp(-i chi s3 / 2), with s13 = s1 s3."""
    def z_phase(a):
        return np.diag([np.exp(-0.5j * a), np.exp(0.5j * a)])
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    polar = np.array([[c, s], [-s, c]], dtype=complex)
    return z_phase(phi) @ polar @ z_phase(chi)


def euler_state(phi: float, theta: float, chi: float) -> np.ndarray:
    return euler_rotor(phi, theta, chi)[:, 0]


def euler_single_qubit(c0: complex, c1: complex, eps: float = 1e-15) -> tuple[float, float, float]:
    """Euler angles (phi, theta, chi) with euler_state(phi, theta, chi) == (c0, c1).

    The factored rotor gives c0 = e^{-i(phi+chi)/2} cos(theta/2) and
    c1 = -e^{i(phi-chi)/2} sin(theta/2), hence phi = arg(-c1) - arg(c0) and
    chi = -2 arg(c0) - phi. At a pole the undefined phase is taken as zero.
    """
    c0, c1 = complex(c0), complex(c1)
    norm2 = abs(c0) ** 2 + abs(c1) ** 2
    if abs(norm2 - 1.0) > 1e-9:
        raise InvalidInputError(f"single-qubit state is not normalized (|c|^2 = {norm2!r})")
    theta = 2.0 * math.atan2(abs(c1), abs(c0))
    a = math.atan2(c0.imag, c0.real) if abs(c0) > eps else 0.0
    b = math.atan2(-c1.imag, -c1.real) if abs(c1) > eps else a
    phi = math.remainder(b - a, 2 * math.pi)
    chi = -2.0 * a - phi
    return phi, theta, chi


def transform(a, b, **opts) -> OperatorMatrix:
    """Unitary U = R_b R_a^dagger, which maps state ``a`` onto state ``b``."""
    sa, sb = _as_state(a), _as_state(b)
    if sa.dim != sb.dim:
        raise InvalidInputError(f"dimension mismatch: {sa.dim} vs {sb.dim}")
    Ra = rotor_matrix(analyze(sa, **opts)).matrix
    Rb = rotor_matrix(analyze(sb, **opts)).matrix
    return OperatorMatrix(Rb @ Ra.conj().T, name="transform", unitary=True)
