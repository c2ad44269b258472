"""Dense operator families: Pauli matrices, b(l), z(l), the projector P,
Clifford generators e_m, alternative bases B(l), and an exact exponential.

All builders return :class:`OperatorMatrix`. Dense matrices are limited to
n <= MAX_DENSE_QUBITS.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bitalgebra import fwht, num_qubits, parity_signs
from .errors import DegenerateInputError, InvalidInputError

MAX_DENSE_QUBITS = 10
SINGULAR_RTOL = 1e-12

_PAULI = (
    np.array([[1, 0], [0, 1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


@dataclass(frozen=True)
class OperatorMatrix:
    """A dense 2**n x 2**n complex matrix with structural flags.

    ``hermitian`` and ``unitary`` record what the constructor guarantees;
    :meth:`flags_consistent` re-checks them against the entries.
    """

    matrix: np.ndarray
    name: str = ""
    hermitian: bool = False
    unitary: bool = False
    n: int = field(init=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise InvalidInputError(f"operator must be square, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "n", num_qubits(m.shape[0]))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.matrix.copy() if copy else self.matrix
        return self.matrix.astype(dtype)

    def __matmul__(self, other):
        return self.matrix @ np.asarray(other)

    def __rmatmul__(self, other):
        return np.asarray(other) @ self.matrix

    def flags_consistent(self, tol: float = 1e-12) -> bool:
        m = self.matrix
        if self.hermitian and np.max(np.abs(m - m.conj().T)) > tol:
            return False
        if self.unitary:
            eye = np.eye(self.dim)
            if np.max(np.abs(m.conj().T @ m - eye)) > tol * self.dim:
                return False
        return True

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "name": self.name,
            "rows": [[[float(z.real), float(z.imag)] for z in row] for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "OperatorMatrix":
        rows = np.array(doc["rows"], dtype=float)
        op = cls(rows[..., 0] + 1j * rows[..., 1], name=doc.get("name", ""))
        if "n" in doc and doc["n"] != op.n:
            raise InvalidInputError(f"declared n={doc['n']} but matrix has n={op.n}")
        return op


def _check_dense(n: int) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise InvalidInputError(f"qubit count must be a positive integer, got {n!r}")
    if n > MAX_DENSE_QUBITS:
        raise InvalidInputError(f"dense operators are limited to n <= {MAX_DENSE_QUBITS}")
    return 1 << n


def _check_index(l: int, n: int) -> None:
    if not 0 <= l < (1 << n):
        raise InvalidInputError(f"index {l} out of range for n={n}")


def pauli(mu: int) -> OperatorMatrix:
    if mu not in (0, 1, 2, 3):
        raise InvalidInputError(f"Pauli index must be 0..3, got {mu}")
    return OperatorMatrix(_PAULI[mu], name=f"sigma{mu}", hermitian=True, unitary=True)


def kron(a, b) -> OperatorMatrix:
    """Kronecker product; flags carry over when both factors have them."""
    ha = getattr(a, "hermitian", None)
    hb = getattr(b, "hermitian", None)
    ua = getattr(a, "unitary", None)
    ub = getattr(b, "unitary", None)
    m = np.kron(np.asarray(a), np.asarray(b))
    if None in (ha, hb, ua, ub):
        herm = bool(np.allclose(m, m.conj().T, atol=1e-12))
        unit = bool(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), atol=1e-12))
    else:
        herm, unit = ha and hb, ua and ub
    names = [getattr(x, "name", "") for x in (a, b)]
    return OperatorMatrix(m, name="(x)".join(s for s in names if s), hermitian=herm, unitary=unit)


def build_b(l: int, n: int) -> OperatorMatrix:
    """XOR permutation matrix: entry (j, k) is 1 iff j == k ^ l."""
    N = _check_dense(n)
    _check_index(l, n)
    m = np.zeros((N, N), dtype=complex)
    k = np.arange(N)
    m[k ^ l, k] = 1.0
    return OperatorMatrix(m, name=f"b({l})", hermitian=True, unitary=True)


def build_b_kron(l: int, n: int) -> OperatorMatrix:
    """b(l) as the tensor product of sigma_1 powers, most significant bit first."""
    _check_dense(n)
    _check_index(l, n)
    m = np.eye(1, dtype=complex)
    for j in reversed(range(n)):
        m = np.kron(m, _PAULI[1] if (l >> j) & 1 else _PAULI[0])
    return OperatorMatrix(m, name=f"b({l})", hermitian=True, unitary=True)


def build_z(l: int, n: int) -> OperatorMatrix:
    _check_dense(n)
    _check_index(l, n)
    return OperatorMatrix(np.diag(parity_signs(l, n)).astype(complex), name=f"z({l})",
                          hermitian=True, unitary=True)


def build_projector(n: int) -> OperatorMatrix:
    N = _check_dense(n)
    m = np.zeros((N, N), dtype=complex)
    m[0, 0] = 1.0
    return OperatorMatrix(m, name="P", hermitian=True)


def build_e(m: int, n: int) -> OperatorMatrix:
    """Clifford generator e_m = b(2**(m-1)) z(2**(m-1) - 1), for 1 <= m <= n."""
    _check_dense(n)
    if not 1 <= m <= n:
        raise InvalidInputError(f"generator index must be in 1..{n}, got {m}")
    bit = 1 << (m - 1)
    mat = build_b(bit, n).matrix @ build_z(bit - 1, n).matrix
    return OperatorMatrix(mat, name=f"e{m}", hermitian=True, unitary=True)


@dataclass(frozen=True)
class BasisChoice:
    """Basis operators B(l) = phase_map[l] * b(l) z(z_map[l]).

    Every such B(l) sends the reference state to phase_map[l] times |l>, since
    z(L) P = P. ``kind`` is one of "plain", "clifford", "custom".
    """

    kind: str = "plain"
    phase_map: tuple = ()
    z_map: tuple = ()

    def __post_init__(self):
        if self.kind not in ("plain", "clifford", "custom"):
            raise InvalidInputError(f"unknown basis kind {self.kind!r}")
        if len(self.phase_map) != len(self.z_map):
            raise InvalidInputError("phase_map and z_map must have equal length")
        if self.kind != "plain":
            num_qubits(len(self.phase_map))
            if not np.allclose(np.abs(np.asarray(self.phase_map, dtype=complex)), 1.0, atol=1e-12):
                raise InvalidInputError("basis phases must be unimodular")
            N = len(self.z_map)
            if any(not 0 <= int(L) < N for L in self.z_map):
                raise InvalidInputError("z_map entries out of range")

    @classmethod
    def plain(cls) -> "BasisChoice":
        return cls("plain")

    @classmethod
    def clifford(cls, n: int) -> "BasisChoice":
        """Ordered products of generators, B(l) = e_{m1} e_{m2} ... over set bits m1 < m2 < ..."""
        N = _check_dense(n)
        gens = [build_e(m, n).matrix for m in range(1, n + 1)]
        phases, zs = [], []
        for l in range(N):
            mat = np.eye(N, dtype=complex)
            for j in range(n):
                if (l >> j) & 1:
                    mat = mat @ gens[j]
            phase, L = _decompose_signed_permutation(mat, l)
            phases.append(phase)
            zs.append(L)
        return cls("clifford", tuple(phases), tuple(zs))

    @classmethod
    def antihermitian_cl2(cls) -> "BasisChoice":
        """The n=2 Clifford basis {1, i e1, i e2, e1 e2}: all non-identity elements antihermitian."""
        return cls("custom", (1, 1j, 1j, 1), (0, 0, 1, 1))

    def operators(self, n: int) -> list[np.ndarray]:
        N = _check_dense(n)
        if self.kind == "plain":
            return [build_b(l, n).matrix for l in range(N)]
        if len(self.phase_map) != N:
            raise InvalidInputError(f"basis defined for N={len(self.phase_map)}, not N={N}")
        return [
            complex(self.phase_map[l]) * (build_b(l, n).matrix @ build_z(int(self.z_map[l]), n).matrix)
            for l in range(N)
        ]


def _decompose_signed_permutation(mat: np.ndarray, l: int) -> tuple[complex, int]:
    N = mat.shape[0]
    phase = complex(mat[l, 0])
    L = 0
    bit = 1
    while bit < N:
        if (mat[l ^ bit, bit] / phase).real < 0:
            L |= bit
        bit <<= 1
    return phase, L


def group_element(c, basis: BasisChoice | None = None) -> OperatorMatrix:
    """sum_l c[l] B(l). For the plain basis entry (j, k) is c[j ^ k]."""
    c = np.asarray(c, dtype=complex)
    n = num_qubits(c.shape[0])
    N = _check_dense(n)
    basis = basis or BasisChoice.plain()
    if basis.kind == "plain":
        idx = np.arange(N)
        m = c[idx[:, None] ^ idx[None, :]]
        herm = bool(np.all(np.abs(c.imag) == 0))
        return OperatorMatrix(m, name="group_element", hermitian=herm)
    m = sum(cl * B for cl, B in zip(c, basis.operators(n)))
    return OperatorMatrix(m, name="group_element")


@dataclass(frozen=True)
class SingularityReport:
    spectrum: np.ndarray
    singular: bool


def walsh_spectrum_singularity(c, rtol: float = SINGULAR_RTOL) -> SingularityReport:
    """Eigenvalues of the plain group element via fwht, and a singularity flag.

    The plain-basis group element is diagonalized by the Walsh transform, so its
    determinant is the product of the spectrum.
    """
    c = np.asarray(c, dtype=complex)
    if c.ndim != 1:
        raise InvalidInputError("coefficients must be a 1-D vector")
    num_qubits(c.shape[0])
    spec = fwht(c)
    mags = np.abs(spec)
    top = mags.max()
    if top == 0.0:
        raise DegenerateInputError("all-zero coefficient vector has no spectrum to test")
    return SingularityReport(spec, bool(mags.min() < rtol * top))


def expm_hermitian_oracle(H, t: float = 1.0) -> OperatorMatrix:
    """exp(-i t H) from the eigendecomposition of a hermitian H."""
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise InvalidInputError("expected a square matrix")
    if np.max(np.abs(H - H.conj().T), initial=0.0) > 1e-10:
        raise InvalidInputError("matrix is not hermitian within 1e-10")
    w, V = np.linalg.eigh((H + H.conj().T) / 2)
    U = (V * np.exp(-1j * t * w)) @ V.conj().T
    return OperatorMatrix(U, name="expm", unitary=True)
