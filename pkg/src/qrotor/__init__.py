"""Rotor parametrization of n-qubit states with 2^(n+1) - 1 real angles."""

from .bitalgebra import BACKEND, fwht, fwht_naive, num_qubits, parity_sign
from .errors import (ConvergenceError, DegenerateInputError, InvalidInputError,
                     InvariantViolation, QRotorError)
from .hamiltonian import CoupledQubitParams, build_hamiltonian, eigenenergies, eigenstates
from .ops import (BasisChoice, OperatorMatrix, build_b, build_e, build_projector, build_z,
                  group_element, walsh_spectrum_singularity)
from .rotor import (AngleSet, analyze, analyze_report, euler_single_qubit, phases_from_phi,
                    phi_from_phases, polar_coefficients, rotor_matrix, synthesize, transform)
from .states import StateVector, basis_state, bell_state, make_state, random_state

__all__ = [
    "BACKEND", "fwht", "fwht_naive", "num_qubits", "parity_sign",
    "ConvergenceError", "DegenerateInputError", "InvalidInputError", "InvariantViolation",
    "QRotorError",
    "CoupledQubitParams", "build_hamiltonian", "eigenenergies", "eigenstates",
    "BasisChoice", "OperatorMatrix", "build_b", "build_e", "build_projector", "build_z",
    "group_element", "walsh_spectrum_singularity",
    "AngleSet", "analyze", "analyze_report", "euler_single_qubit", "phases_from_phi",
    "phi_from_phases", "polar_coefficients", "rotor_matrix", "synthesize", "transform",
    "StateVector", "basis_state", "bell_state", "make_state", "random_state",
]
