"""Two coupled spin-1/2 qubits in a field along z, with isotropic coupling.

Units have hbar = 1. With omega_{0+-} meaning omega0 + omega1 - omega2 and so
on, the matrix in the basis |0>..|3> is::

    [ w0++ + lam/2   0               0               0            ]
    [ 0              w0+- - lam/2    lam             0            ]
    [ 0              lam             w0-+ - lam/2    0            ]
    [ 0              0               0               w0-- + lam/2 ]

omega1 belongs to the left tensor factor (the high bit of the index).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .ops import OperatorMatrix, pauli
from .rotor import AngleSet, analyze
from .states import StateVector, basis_state


@dataclass(frozen=True)
class CoupledQubitParams:
    omega0: float
    omega1: float
    omega2: float
    lam: float

    def __post_init__(self):
        for name in ("omega0", "omega1", "omega2", "lam"):
            v = getattr(self, name)
            if not isinstance(v, (int, float, np.floating, np.integer)) or not math.isfinite(v):
                raise InvalidInputError(f"{name} must be a finite real number, got {v!r}")
            object.__setattr__(self, name, float(v))

    @property
    def delta(self) -> float:
        return self.omega1 - self.omega2

    @classmethod
    def from_operator_form(cls, E0: float, gamma1: float, gamma2: float, B: float,
                           lam: float) -> "CoupledQubitParams":
        """E0 + gamma1 s1.B (x) 1 + 1 (x) gamma2 s2.B + 2 lam s1.s2 with B along z, s = sigma/2."""
        return cls(E0, gamma1 * B / 2, gamma2 * B / 2, lam)

    def to_dict(self) -> dict:
        return {"omega0": self.omega0, "omega1": self.omega1,
                "omega2": self.omega2, "lambda": self.lam}

    @classmethod
    def from_dict(cls, doc: dict) -> "CoupledQubitParams":
        try:
            return cls(doc["omega0"], doc["omega1"], doc["omega2"], doc["lambda"])
        except KeyError as exc:
            raise InvalidInputError(f"missing Hamiltonian parameter {exc}") from exc


def build_hamiltonian(p: CoupledQubitParams) -> OperatorMatrix:
    w0, w1, w2, lam = p.omega0, p.omega1, p.omega2, p.lam
    H = np.diag([w0 + w1 + w2 + lam / 2,
                 w0 + w1 - w2 - lam / 2,
                 w0 - w1 + w2 - lam / 2,
                 w0 - w1 - w2 + lam / 2]).astype(complex)
    H[1, 2] = H[2, 1] = lam
    return OperatorMatrix(H, name="H", hermitian=True)


def build_hamiltonian_operator_form(E0: float, gamma1: float, gamma2: float, B: float,
                                    lam: float) -> OperatorMatrix:
    """Same Hamiltonian assembled from spin operators, for cross-checking."""
    s = [pauli(mu).matrix / 2 for mu in range(4)]
    one = np.eye(2)
    H = E0 * np.eye(4, dtype=complex)
    H += gamma1 * B * np.kron(s[3], one) + gamma2 * B * np.kron(one, s[3])
    H += 2 * lam * sum(np.kron(s[j], s[j]) for j in (1, 2, 3))
    return OperatorMatrix(H, name="H", hermitian=True)


def eigenenergies(p: CoupledQubitParams) -> np.ndarray:
    """Energies in the order (|0>, mixed +, mixed -, |3>)."""
    root = math.hypot(p.delta, p.lam)
    centre = p.omega0 - p.lam / 2
    return np.array([p.omega0 + p.omega1 + p.omega2 + p.lam / 2,
                     centre + root,
                     centre - root,
                     p.omega0 - p.omega1 - p.omega2 + p.lam / 2])


@dataclass(frozen=True)
class SpectrumReport:
    energies: np.ndarray
    eigenstates: tuple
    delta: float

    def to_dict(self) -> dict:
        return {"delta": float(self.delta),
                "energies": [float(e) for e in self.energies],
                "eigenstates": [s.to_dict() for s in self.eigenstates]}


def eigenstates(p: CoupledQubitParams) -> SpectrumReport:
    """Eigenpairs; the mixed pair diagonalizes [[delta, lam], [lam, -delta]] on |1>, |2>.

    With delta = lam = 0 the mixed pair is returned as |1>, |2>.
    """
    gamma = math.atan2(p.lam, p.delta)
    ch, sh = math.cos(gamma / 2), math.sin(gamma / 2)
    plus = StateVector(np.array([0, ch, sh, 0], dtype=complex))
    minus = StateVector(np.array([0, -sh, ch, 0], dtype=complex))
    return SpectrumReport(eigenenergies(p), (basis_state(0, 2), plus, minus, basis_state(3, 2)),
                          p.delta)


def parametrize_eigenstates(p: CoupledQubitParams, **opts) -> list[AngleSet]:
    return [analyze(s, **opts) for s in eigenstates(p).eigenstates]
