"""Weighted sums of stabilizer states and the canonical magic-state builders.

A Decomposition represents an unnormalized vector sum_i c_i |Phi_i> with
exact sqrt(2)-exponents in the coefficients.  Builders return the
closed-form decompositions of two- and six-qubit magic cat states (and
friends); each is pinned against the dense oracle by the test suite.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .stabstate import (
    DENSE_CAP,
    CapExceeded,
    Scalar,
    StabilizerState,
    dagger_gates,
    prepare_circuit,
)

_OMEGA = cmath.exp(1j * math.pi / 4)


@dataclass
class Coeff:
    """Complex coefficient c * 2^{sqrt2/2} with the root kept exact."""

    c: complex
    sqrt2: int = 0

    def value(self) -> complex:
        return self.c * 2.0 ** (self.sqrt2 / 2.0)

    def times(self, other: "Coeff") -> "Coeff":
        return Coeff(self.c * other.c, self.sqrt2 + other.sqrt2)

    def conj(self) -> "Coeff":
        return Coeff(self.c.conjugate(), self.sqrt2)

    @classmethod
    def from_scalar(cls, s: Scalar) -> "Coeff":
        return cls(s.generic * cmath.exp(1j * math.pi * (s.phase8 % 8) / 4), s.sqrt2)

    def is_zero(self) -> bool:
        return self.c == 0


@dataclass
class Decomposition:
    """List of (coefficient, stabilizer state) terms on a common qubit count."""

    n: int
    terms: list[tuple[Coeff, StabilizerState]]

    def __post_init__(self):
        for _, s in self.terms:
            if s.n != self.n:
                raise ValueError("term qubit count mismatch")

    @property
    def term_count(self) -> int:
        return len(self.terms)

    def pruned(self) -> "Decomposition":
        return Decomposition(
            self.n, [(c, s) for c, s in self.terms if not (s.zero or c.is_zero())]
        )

    def scaled(self, k: Coeff) -> "Decomposition":
        return Decomposition(self.n, [(c.times(k), s) for c, s in self.terms])

    def conj(self) -> "Decomposition":
        return Decomposition(self.n, [(c.conj(), s.conj()) for c, s in self.terms])

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        if self.n > cap:
            raise CapExceeded(f"n={self.n} exceeds dense cap {cap}")
        out = np.zeros(max(1 << self.n, 1), dtype=complex)
        for c, s in self.terms:
            out += c.value() * s.to_dense(cap)
        return out

    def to_json_dict(self) -> dict:
        return {
            "version": 1,
            "n": self.n,
            "terms": [
                {
                    "coeff": {"re": c.c.real, "im": c.c.imag, "sqrt2_exponent": c.sqrt2},
                    "state": s.to_json_dict(),
                }
                for c, s in self.terms
            ],
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "Decomposition":
        terms = []
        for t in d["terms"]:
            co = t["coeff"]
            terms.append(
                (
                    Coeff(complex(float(co["re"]), float(co["im"])), int(co["sqrt2_exponent"])),
                    StabilizerState.from_json_dict(t["state"]),
                )
            )
        return cls(int(d["n"]), terms)


# -- elementary states ----------------------------------------------------


def _ones(m: int) -> int:
    return (1 << m) - 1


def E_state(m: int) -> StabilizerState:
    """Normalized uniform superposition of even-weight strings."""
    if m < 1:
        raise ValueError("m >= 1")
    basis = [0b11 << i for i in range(m - 1)]
    return StabilizerState.from_phase_data(m, basis, 0, scalar=Scalar(0, -(m - 1)))


def K_state(m: int) -> StabilizerState:
    """prod_{i<j} CZ_ij applied to the even-weight uniform state."""
    s = E_state(m)
    for i in range(m):
        s.quad[i] = _ones(m) ^ (1 << i)
    return s


def _cat_extreme(m: int, lin0: int) -> StabilizerState:
    """Unnormalized |0^m> + i^{lin0} |1^m>."""
    s = StabilizerState.from_phase_data(m, [_ones(m)], 0)
    s._plane_add(1, lin0)
    return s


def _basis(m: int, x: int) -> StabilizerState:
    return StabilizerState.basis_state(x, m)


# -- named builders --------------------------------------------------------


def t2() -> Decomposition:
    """Two-term decomposition of |T>|T>."""
    off = StabilizerState.from_phase_data(2, [0b11], 0b01)
    return Decomposition(
        2,
        [
            (Coeff(1.0, -2), _cat_extreme(2, 1)),
            (Coeff(_OMEGA, -2), off),
        ],
    )


def t1() -> Decomposition:
    return Decomposition(1, [(Coeff(1.0, -1), _basis(1, 0)), (Coeff(_OMEGA, -1), _basis(1, 1))])


def t3() -> Decomposition:
    """Three-term decomposition of |T>|T>|T>.

    Found by exhaustive search over the 1080 three-qubit stabilizer
    states (no pair spans the target, so three terms is optimal).
    """
    u = 2.0 ** (-1.5)
    ghz = _cat_extreme(3, 0)
    ghz.sqrt2 -= 1
    full_s = StabilizerState.from_phase_data(3, [1, 2, 4], 0, lin=[1, 1, 1],
                                             scalar=Scalar(0, -3))
    full_sk = StabilizerState.from_phase_data(
        3, [1, 2, 4], 0, lin=[1, 1, 1],
        quad_pairs=[(0, 1), (0, 2), (1, 2)], scalar=Scalar(0, -3))
    return Decomposition(
        3,
        [
            (Coeff(complex(0.5 - u, u), 0), ghz),
            (Coeff(complex(u, -(0.5 + u)), 0), full_s),
            (Coeff(complex(u, 0.5 - u), 0), full_sk),
        ],
    )


def cat2() -> Decomposition:
    return Decomposition(2, [(Coeff(1.0, -1), _cat_extreme(2, 1))])


def cat4() -> Decomposition:
    return Decomposition(
        4,
        [
            (Coeff(1j, 0), E_state(4)),
            (Coeff(cmath.exp(-1j * math.pi / 4), -2), _cat_extreme(4, 3)),
        ],
    )


def cat6() -> Decomposition:
    return Decomposition(
        6,
        [
            (Coeff(1.0, -3), _cat_extreme(6, 3)),
            (Coeff(cmath.exp(3j * math.pi / 4), -1), E_state(6)),
            (Coeff(cmath.exp(3j * math.pi / 4) * 1j, -1), K_state(6)),
        ],
    )


def _psi2_F() -> StabilizerState:
    # 2^{-3} sum_x (-i)^{|x| mod 2} |x>
    s = StabilizerState.from_phase_data(6, [1 << i for i in range(6)], 0, scalar=Scalar(0, -6))
    for j in range(6):
        s._plane_add(1 << j, 3)
        s.quad[j] = _ones(6) ^ (1 << j)
    return s


def _psi3_F() -> StabilizerState:
    # 2^{-3} sum_x (-1)^{|x|(|x|+1)/2} |x>
    s = StabilizerState.from_phase_data(6, [1 << i for i in range(6)], 0, scalar=Scalar(0, -6))
    for j in range(6):
        s._plane_add(1 << j, 2)
        s.quad[j] = _ones(6) ^ (1 << j)
    return s


def cat6_F() -> Decomposition:
    psi1 = _cat_extreme(6, 3)
    psi1.sqrt2 -= 1
    third = 2.0 / 3.0
    return Decomposition(
        6,
        [
            (Coeff(third, 0), psi1),
            (Coeff(third * cmath.exp(3j * math.pi / 4), 0), _psi2_F()),
            (Coeff(-third * cmath.exp(1j * math.pi / 4), 0), _psi3_F()),
        ],
    )


def f1() -> Decomposition:
    beta = 0.5 * math.acos(1.0 / math.sqrt(3.0))
    return Decomposition(
        1,
        [
            (Coeff(math.cos(beta), 0), _basis(1, 0)),
            (Coeff(math.sin(beta) * _OMEGA, 0), _basis(1, 1)),
        ],
    )


def f2_pair() -> Decomposition:
    """Two-term decomposition of |F>|F> (graph-state term plus a magic cat)."""
    graph = StabilizerState.from_phase_data(2, [0b01, 0b10], 0, quad_pairs=[(0, 1)])
    cat = _cat_extreme(2, 1)
    c_graph = Coeff(_OMEGA / math.sqrt(3.0), -1)
    c_cat = Coeff(complex(0.5, -0.5 / math.sqrt(3.0)), 0)
    return Decomposition(2, [(c_graph, graph), (c_cat, cat)])


def _is_stab_angle(theta: float, tol: float = 1e-12) -> tuple[bool, int]:
    k = 2.0 * theta / (math.pi / 2.0)
    kr = round(k)
    return abs(k - kr) < tol, int(kr) % 4


def cat2_R(theta: float) -> Decomposition:
    stab, k = _is_stab_angle(theta)
    if stab:
        return Decomposition(2, [(Coeff(1.0, -1), _cat_extreme(2, k))])
    return Decomposition(
        2,
        [
            (Coeff(1.0, -1), _basis(2, 0b00)),
            (Coeff(cmath.exp(2j * theta), -1), _basis(2, 0b11)),
        ],
    )


def cat6_R(theta: float) -> Decomposition:
    e2, e3 = cmath.exp(2j * theta), cmath.exp(3j * theta)
    return Decomposition(
        6,
        [
            (Coeff(1.0 - e2 * e2, -5), _basis(6, 0)),
            (Coeff(e3 * e3 - e2, -5), _basis(6, _ones(6))),
            (Coeff(e3 * math.cos(theta), 0), E_state(6)),
            (Coeff(e3 * (1j * math.sin(theta)), 0), K_state(6)),
        ],
    )


def cat4_R(theta: float) -> Decomposition:
    e3 = cmath.exp(3j * theta)
    return Decomposition(
        4,
        [
            (Coeff(1.0 - cmath.exp(4j * theta), -3), _basis(4, 0)),
            (Coeff(e3 * math.cos(theta), 0), E_state(4)),
            (Coeff(e3 * (1j * math.sin(theta)), 0), K_state(4)),
        ],
    )


def r1(theta: float) -> Decomposition:
    return Decomposition(
        1,
        [
            (Coeff(1.0, -1), _basis(1, 0)),
            (Coeff(cmath.exp(1j * theta), -1), _basis(1, 1)),
        ],
    )


_BUILDERS = {
    "t1": lambda params: t1(),
    "t2": lambda params: t2(),
    "t3": lambda params: t3(),
    "cat2": lambda params: cat2(),
    "cat4": lambda params: cat4(),
    "cat6": lambda params: cat6(),
    "cat6_F": lambda params: cat6_F(),
    "f1": lambda params: f1(),
    "f2": lambda params: f2_pair(),
    "cat2_R": lambda params: cat2_R(params["theta"]),
    "cat4_R": lambda params: cat4_R(params["theta"]),
    "cat6_R": lambda params: cat6_R(params["theta"]),
    "r1": lambda params: r1(params["theta"]),
    "E": lambda params: Decomposition(params["m"], [(Coeff(1.0), E_state(params["m"]))]),
    "K": lambda params: Decomposition(params["m"], [(Coeff(1.0), K_state(params["m"]))]),
}


def build_named(name: str, **params) -> Decomposition:
    if name not in _BUILDERS:
        raise ValueError(f"unknown builder {name!r}")
    return _BUILDERS[name](params)


# -- operations -------------------------------------------------------------


def tensor(d1: Decomposition, d2: Decomposition) -> Decomposition:
    terms = []
    for c1, s1 in d1.terms:
        for c2, s2 in d2.terms:
            terms.append((c1.times(c2), s1.tensor(s2)))
    return Decomposition(d1.n + d2.n, terms)


def postselect(d: Decomposition, qubit: int, bit: int) -> Decomposition:
    if not (0 <= qubit < d.n):
        raise ValueError("qubit out of range")
    terms = []
    for c, s in d.terms:
        s2 = s.copy()
        s2.postselect_inplace(qubit, bit)
        if not s2.zero:
            terms.append((c, s2))
    return Decomposition(d.n - 1, terms)


def _contract_term(state: StabilizerState, gates, qubits) -> StabilizerState:
    s = state.copy()
    s.apply_gates_inplace(gates, qubit_map=dict(enumerate(qubits)))
    for q in sorted(qubits, reverse=True):
        s.postselect_inplace(q, 0)
    return s


_CAT2_BRA_GATES = [("SDG", (0,)), ("CX", (0, 1)), ("H", (0,))]


def contract_bra_cat2(d: Decomposition, qubit_a: int, qubit_b: int) -> Decomposition:
    """Apply <cat_2| to the chosen pair and remove both qubits."""
    if qubit_a == qubit_b:
        raise ValueError("need distinct qubits")
    for q in (qubit_a, qubit_b):
        if not (0 <= q < d.n):
            raise ValueError("qubit out of range")
    terms = []
    for c, s in d.terms:
        s2 = _contract_term(s, _CAT2_BRA_GATES, (qubit_a, qubit_b))
        if not s2.zero:
            terms.append((c, s2))
    return Decomposition(d.n - 2, terms)


def contract_bra(d: Decomposition, bra: Decomposition, qubits) -> Decomposition:
    """Apply the conjugate of ``bra`` to the listed qubits of ``d``."""
    qubits = list(qubits)
    if len(qubits) != bra.n:
        raise ValueError("qubit list length must equal bra qubit count")
    if len(set(qubits)) != len(qubits):
        raise ValueError("duplicate qubits")
    for q in qubits:
        if not (0 <= q < d.n):
            raise ValueError("qubit out of range")
    terms = []
    for bc, bs in bra.terms:
        gates, leftover = prepare_circuit(bs)
        undo = dagger_gates(gates)
        mult = bc.conj().times(Coeff.from_scalar(leftover).conj())
        for c, s in d.terms:
            s2 = _contract_term(s, undo, qubits)
            if not s2.zero:
                terms.append((c.times(mult), s2))
    return Decomposition(d.n - len(qubits), terms).pruned()


def cat_to_T(d: Decomposition) -> Decomposition:
    """|T>^m from a |cat_m> decomposition via the magic projector identity."""
    half = Coeff(1.0, -1)
    terms = []
    for c, s in d.terms:
        terms.append((c.times(half), s))
    for c, s in d.terms:
        s2 = s.copy()
        s2._apply_inplace("A", (0,))
        terms.append((c.times(half), s2))
    return Decomposition(d.n, terms)


def fidelity_vs_dense(d: Decomposition, reference: np.ndarray, cap: int = DENSE_CAP) -> float:
    vec = d.to_dense(cap)
    nv, nr = np.linalg.norm(vec), np.linalg.norm(reference)
    if nv == 0 or nr == 0:
        raise ValueError("fidelity of zero vector")
    return float(abs(np.vdot(reference, vec)) / (nv * nr))
