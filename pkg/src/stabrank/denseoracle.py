"""Brute-force statevector engine used only for verification.

Deliberately shares nothing with the stabilizer machinery beyond gate
names: states are plain numpy vectors indexed so that bit i of the
basis-state index is qubit i, and gates act by textbook matrix
multiplication on reshaped axes.
"""

from __future__ import annotations

import math

import numpy as np

DENSE_CAP = 24


class CapExceeded(Exception):
    """Raised when a dense object would exceed the configured qubit cap."""


def _check_cap(n: int, cap: int = DENSE_CAP) -> None:
    if n > cap:
        raise CapExceeded(f"{n} qubits exceeds dense cap {cap}")


_SQ2 = 1.0 / math.sqrt(2.0)

_GATES_1Q = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
    "H": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "T": np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    "TDG": np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex),
}
# A = e^{-i pi/4} S X and its inverse.
_GATES_1Q["A"] = np.exp(-1j * math.pi / 4) * (_GATES_1Q["S"] @ _GATES_1Q["X"])
_GATES_1Q["ADG"] = _GATES_1Q["A"].conj().T

_GATES_2Q = {
    "CX": np.array(
        [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
    ),
    "CZ": np.diag([1, 1, 1, -1]).astype(complex),
}


def qubit_state(kind: str, theta: float | None = None) -> np.ndarray:
    """Single-qubit defining vectors: 0, 1, +, -, T, Tperp, F, Fperp, R, Rperp."""
    w = np.exp(1j * math.pi / 4)
    if kind == "0":
        return np.array([1, 0], dtype=complex)
    if kind == "1":
        return np.array([0, 1], dtype=complex)
    if kind == "+":
        return np.array([_SQ2, _SQ2], dtype=complex)
    if kind == "-":
        return np.array([_SQ2, -_SQ2], dtype=complex)
    if kind == "T":
        return np.array([_SQ2, w * _SQ2], dtype=complex)
    if kind == "Tperp":
        return np.array([_SQ2, -w * _SQ2], dtype=complex)
    if kind == "F":
        beta = 0.5 * math.acos(1.0 / math.sqrt(3.0))
        return np.array([math.cos(beta), w * math.sin(beta)], dtype=complex)
    if kind == "Fperp":
        beta = 0.5 * math.acos(1.0 / math.sqrt(3.0))
        return np.array([math.sin(beta), -w * math.cos(beta)], dtype=complex)
    if kind == "R":
        if theta is None:
            raise ValueError("R requires theta")
        return np.array([_SQ2, np.exp(1j * theta) * _SQ2], dtype=complex)
    if kind == "Rperp":
        if theta is None:
            raise ValueError("Rperp requires theta")
        return np.array([_SQ2, -np.exp(1j * theta) * _SQ2], dtype=complex)
    raise ValueError(f"unknown state kind {kind!r}")


def power(v: np.ndarray, m: int) -> np.ndarray:
    """|v>^{tensor m} with qubit 0 as the least significant index bit."""
    _check_cap(m)
    out = np.array([1.0 + 0j])
    for _ in range(m):
        # kron with qubit appended as the next-higher index bit
        out = np.concatenate([out * v[0], out * v[1]])
    return out


def cat_state(kind: str, m: int, theta: float | None = None) -> np.ndarray:
    """(|psi>^m + |psi_perp>^m)/sqrt(2) for psi in {T, F, R(theta)}."""
    perp = {"T": "Tperp", "F": "Fperp", "R": "Rperp"}[kind]
    return (power(qubit_state(kind, theta), m) + power(qubit_state(perp, theta), m)) * _SQ2


def cat_state_minus(kind: str, m: int, theta: float | None = None) -> np.ndarray:
    """(|psi>^m - |psi_perp>^m)/sqrt(2)."""
    perp = {"T": "Tperp", "F": "Fperp", "R": "Rperp"}[kind]
    return (power(qubit_state(kind, theta), m) - power(qubit_state(perp, theta), m)) * _SQ2


def basis_state(x: int, n: int) -> np.ndarray:
    _check_cap(n)
    v = np.zeros(1 << n, dtype=complex)
    v[x] = 1.0
    return v


def apply_gate(vec: np.ndarray, name: str, qubits: tuple[int, ...], theta: float | None = None) -> np.ndarray:
    """Apply one named gate to a dense vector; returns a new vector."""
    n = int(vec.size).bit_length() - 1
    if name == "RZ":
        if theta is None:
            raise ValueError("RZ requires an angle")
        (q,) = qubits
        out = vec.copy()
        idx = np.arange(vec.size)
        out[(idx >> q) & 1 == 1] *= np.exp(1j * theta)
        return out
    if name in _GATES_1Q:
        (q,) = qubits
        mat = _GATES_1Q[name]
        work = vec.reshape(1 << (n - q - 1), 2, 1 << q)
        return np.einsum("ab,ibj->iaj", mat, work).reshape(vec.size)
    if name in _GATES_2Q:
        a, b = qubits
        if a == b:
            raise ValueError("two-qubit gate needs distinct qubits")
        mat = _GATES_2Q[name].reshape(2, 2, 2, 2)  # [a', b', a, b]
        work = vec.copy().reshape([2] * n)
        # numpy axis k addresses qubit n-1-k in our bit convention
        axa, axb = n - 1 - a, n - 1 - b
        work = np.moveaxis(work, (axa, axb), (0, 1))
        out = np.einsum("abcd,cd...->ab...", mat, work)
        out = np.moveaxis(out, (0, 1), (axa, axb))
        return out.reshape(vec.size)
    raise ValueError(f"unknown gate {name!r}")


def apply_circuit(gates, vec: np.ndarray) -> np.ndarray:
    """Apply a list of (name, qubits, theta) tuples in order."""
    for name, qubits, theta in gates:
        vec = apply_gate(vec, name, tuple(qubits), theta)
    return vec


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("fidelity of zero vector")
    return abs(np.vdot(a, b)) / (na * nb)
