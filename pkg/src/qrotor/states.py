"""State vectors psi = sum_l c_l |l>, with |l> = b(l) P.

Equality is componentwise including the global phase: the overall phase is one
of the rotor parameters, so two states differing by a phase are different here.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bitalgebra import num_qubits
from .errors import DegenerateInputError, InvalidInputError

NORM_TOL = 1e-9
STATE_ATOL = 1e-9


@dataclass(frozen=True)
class StateVector:
    """Normalized coefficient vector of length N = 2**n (read-only)."""

    coeffs: np.ndarray
    n: int = field(init=False)

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex)
        if c.ndim != 1:
            raise InvalidInputError("state coefficients must be a 1-D vector")
        object.__setattr__(self, "n", num_qubits(c.shape[0]))
        if not np.all(np.isfinite(c)):
            raise InvalidInputError("state coefficients must be finite")
        norm2 = float(np.vdot(c, c).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvalidInputError(f"state is not normalized (|c|^2 = {norm2!r})")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def dim(self) -> int:
        return self.coeffs.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.coeffs.copy() if copy else self.coeffs
        return self.coeffs.astype(dtype)

    def __eq__(self, other):
        if not isinstance(other, StateVector):
            return NotImplemented
        return allclose(self, other)

    __hash__ = None

    def to_dict(self) -> dict:
        return {"n": self.n, "coeffs": [[float(z.real), float(z.imag)] for z in self.coeffs]}

    @classmethod
    def from_dict(cls, doc: dict, *, exact: bool = False) -> "StateVector":
        raw = np.asarray(doc["coeffs"], dtype=float)
        if raw.ndim != 2 or raw.shape[1] != 2:
            raise InvalidInputError("coeffs must be a list of [re, im] pairs")
        st = make_state(raw[:, 0] + 1j * raw[:, 1], exact=exact)
        if "n" in doc and doc["n"] != st.n:
            raise InvalidInputError(f"declared n={doc['n']} but {st.dim} coefficients given")
        return st


def make_state(coeffs, *, exact: bool = False) -> StateVector:
    """Build a state, normalizing unless ``exact`` (then bad norms are an error)."""
    c = np.asarray(coeffs, dtype=complex)
    if exact:
        return StateVector(c)
    norm = np.linalg.norm(c)
    if not np.isfinite(norm) or norm == 0.0:
        raise DegenerateInputError("cannot normalize a zero or non-finite vector")
    return StateVector(c / norm)


def basis_state(l: int, n: int) -> StateVector:
    N = 1 << n
    if not 0 <= l < N:
        raise InvalidInputError(f"basis index {l} out of range for n={n}")
    c = np.zeros(N, dtype=complex)
    c[l] = 1.0
    return StateVector(c)


def bell_state(sign: int = 1) -> StateVector:
    """(|0> + sign |3>) / sqrt(2)."""
    if sign not in (1, -1):
        raise InvalidInputError("sign must be +1 or -1")
    s = 1 / np.sqrt(2)
    return StateVector(np.array([s, 0, 0, sign * s], dtype=complex))


def random_state(n: int, rng: np.random.Generator) -> StateVector:
    """Haar-random state from a complex Gaussian draw."""
    N = 1 << n
    return make_state(rng.normal(size=N) + 1j * rng.normal(size=N))


def _check_pair(a: StateVector, b: StateVector) -> None:
    if a.dim != b.dim:
        raise InvalidInputError(f"dimension mismatch: {a.dim} vs {b.dim}")


def inner(a: StateVector, b: StateVector) -> complex:
    """<b|a> = sum_l conj(b_l) a_l."""
    _check_pair(a, b)
    return complex(np.vdot(b.coeffs, a.coeffs))


def ideal_matrix(state: StateVector) -> np.ndarray:
    """The state as an element of the minimal left ideal: one nonzero column."""
    m = np.zeros((state.dim, state.dim), dtype=complex)
    m[:, 0] = state.coeffs
    return m


def scalar_part(x: np.ndarray) -> complex:
    """Coefficient of the identity in the Pauli tensor expansion of ``x``."""
    return complex(np.trace(x)) / x.shape[0]


def inner_algebraic(a: StateVector, b: StateVector) -> complex:
    """<b|a> computed as N times the scalar part of psi_a psi_b^dagger."""
    _check_pair(a, b)
    Ma, Mb = ideal_matrix(a), ideal_matrix(b)
    return a.dim * scalar_part(Ma @ Mb.conj().T)


def allclose(a: StateVector, b: StateVector, atol: float = STATE_ATOL) -> bool:
    _check_pair(a, b)
    return bool(np.max(np.abs(a.coeffs - b.coeffs)) <= atol)


def max_deviation(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
