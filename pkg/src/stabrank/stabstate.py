"""Exact unnormalized stabilizer states in affine/quadratic form.

A state is stored as an affine subspace A = offset + span(basis) of
F_2^n together with a phase function and a global scalar:

    amp(x) = scalar * i^(sum_j lin_j x_j mod 4) * (-1)^(sum_{i<j} quad_ij x_i x_j)

for x in A, and 0 elsewhere.  ``lin`` is a Z_4 vector stored as two bit
planes, ``quad`` a symmetric zero-diagonal bit matrix stored as int
rows.  The scalar keeps the power of sqrt(2) as an exact integer
exponent so chain constructions at hundreds of qubits never underflow.

All Clifford gates, postselection and amplitudes are polynomial-time in
this form; Hadamard needs a case split on how the target coordinate
sits inside A and a one-variable quadratic Gauss sum, which is where
the e^{i pi/4} scalar units come from.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from . import f2
from .f2 import iter_bits, parity

DENSE_CAP = 24


class CapExceeded(Exception):
    pass


_I_POW = np.array([1.0, 1.0j, -1.0, -1.0j], dtype=complex)


@dataclass
class Scalar:
    """Exact scalar: generic * e^{i pi phase8 / 4} * 2^{sqrt2 / 2}."""

    phase8: int = 0
    sqrt2: int = 0
    generic: complex = 1.0 + 0.0j

    def value(self) -> complex:
        return self.generic * cmath.exp(1j * math.pi * (self.phase8 % 8) / 4) * (2.0 ** (self.sqrt2 / 2.0))

    def times(self, other: "Scalar") -> "Scalar":
        return Scalar((self.phase8 + other.phase8) % 8, self.sqrt2 + other.sqrt2, self.generic * other.generic)

    def conj(self) -> "Scalar":
        return Scalar((-self.phase8) % 8, self.sqrt2, self.generic.conjugate())

    def abs_sq(self) -> float:
        return abs(self.generic) ** 2 * 2.0**self.sqrt2


@dataclass
class StabilizerState:
    """Unnormalized n-qubit stabilizer state (or the zero vector)."""

    n: int
    basis: list[int] = field(default_factory=list)
    offset: int = 0
    lin_lo: int = 0
    lin_hi: int = 0
    quad: list[int] = field(default_factory=list)
    phase8: int = 0
    sqrt2: int = 0
    generic: complex = 1.0 + 0.0j
    zero: bool = False

    def __post_init__(self):
        if not self.quad:
            self.quad = [0] * self.n

    # -- constructors ------------------------------------------------

    @classmethod
    def basis_state(cls, x: int, n: int) -> "StabilizerState":
        if x >> n:
            raise ValueError("basis label out of range")
        return cls(n=n, offset=x)

    @classmethod
    def zero_state(cls, n: int) -> "StabilizerState":
        return cls(n=n, zero=True)

    @classmethod
    def from_phase_data(cls, n: int, basis: list[int], offset: int,
                        lin: list[int] | None = None, quad_pairs=(),
                        scalar: Scalar | None = None) -> "StabilizerState":
        """Build directly from affine data; lin is a Z_4 vector per coordinate."""
        s = cls(n=n, basis=list(basis), offset=offset)
        if lin is not None:
            for j, v in enumerate(lin):
                s._plane_add(1 << j, v % 4)
        for (i, j) in quad_pairs:
            s.quad[i] ^= 1 << j
            s.quad[j] ^= 1 << i
        if scalar is not None:
            s.phase8, s.sqrt2, s.generic = scalar.phase8, scalar.sqrt2, scalar.generic
        return s

    # -- scalar helpers ----------------------------------------------

    @property
    def scalar(self) -> Scalar:
        return Scalar(self.phase8, self.sqrt2, self.generic)

    def scalar_value(self) -> complex:
        return Scalar(self.phase8, self.sqrt2, self.generic).value()

    def norm_sq(self) -> float:
        if self.zero:
            return 0.0
        return abs(self.generic) ** 2 * 2.0 ** (self.sqrt2 + len(self.basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def copy(self) -> "StabilizerState":
        return StabilizerState(self.n, list(self.basis), self.offset, self.lin_lo,
                               self.lin_hi, list(self.quad), self.phase8, self.sqrt2,
                               self.generic, self.zero)

    def conj(self) -> "StabilizerState":
        """Entrywise complex conjugate (still a stabilizer state)."""
        s = self.copy()
        s.lin_hi ^= s.lin_lo          # negate Z_4 vector: 1<->3, 2 fixed
        s.phase8 = (-s.phase8) % 8
        s.generic = s.generic.conjugate()
        return s

    # -- phase plumbing ----------------------------------------------

    def _lin_at(self, k: int) -> int:
        return ((self.lin_lo >> k) & 1) | (((self.lin_hi >> k) & 1) << 1)

    def _plane_add(self, mask: int, v: int) -> None:
        """Add v (mod 4) to lin at every coordinate in mask."""
        v %= 4
        if not mask or not v:
            return
        if v & 1:
            carry = self.lin_lo & mask
            self.lin_lo ^= mask
            self.lin_hi ^= carry
        if v & 2:
            self.lin_hi ^= mask

    def _mul_phase_affine(self, c: int, wmask: int, b0: int) -> None:
        """Multiply the amplitude function by i^{c * beta(x)}, beta = b0 xor parity(wmask & x)."""
        c %= 4
        if c == 0:
            return
        if b0:
            self.phase8 = (self.phase8 + 2 * c) % 8
        v = (c + 2 * (c & 1) * b0) % 4
        self._plane_add(wmask, v)
        if c & 1:
            for i in iter_bits(wmask):
                self.quad[i] ^= wmask & ~(1 << i)

    def _substitute(self, k: int, wmask: int, b0: int) -> None:
        """Replace variable x_k by b0 xor parity(wmask & x) inside the phase function."""
        c = self._lin_at(k)
        ek = 1 << k
        self.lin_lo &= ~ek
        self.lin_hi &= ~ek
        wk = self.quad[k]
        self.quad[k] = 0
        for j in iter_bits(wk):
            self.quad[j] &= ~ek
        if c:
            self._mul_phase_affine(c, wmask, b0)
        for j in iter_bits(wk):
            if b0:
                self._plane_add(1 << j, 2)
            wj = wmask
            if (wj >> j) & 1:
                self._plane_add(1 << j, 2)
                wj &= ~(1 << j)
            self.quad[j] ^= wj
            for w in iter_bits(wj):
                self.quad[w] ^= 1 << j

    # -- gates --------------------------------------------------------

    def _x(self, k: int) -> None:
        self._substitute(k, 1 << k, 1)
        self.offset ^= 1 << k

    def _z(self, k: int) -> None:
        self._plane_add(1 << k, 2)

    def _s(self, k: int) -> None:
        self._plane_add(1 << k, 1)

    def _sdg(self, k: int) -> None:
        self._plane_add(1 << k, 3)

    def _y(self, k: int) -> None:
        self.phase8 = (self.phase8 + 2) % 8
        self._z(k)
        self._x(k)

    def _a(self, k: int) -> None:
        # A = e^{-i pi/4} S X
        self.phase8 = (self.phase8 + 7) % 8
        self._x(k)
        self._s(k)

    def _adg(self, k: int) -> None:
        # A^dagger = e^{i pi/4} X S^dagger
        self.phase8 = (self.phase8 + 1) % 8
        self._sdg(k)
        self._x(k)

    def _cz(self, a: int, b: int) -> None:
        self.quad[a] ^= 1 << b
        self.quad[b] ^= 1 << a

    def _cx(self, a: int, b: int) -> None:
        """CNOT with control a, target b."""
        bb = 1 << b
        for i, g in enumerate(self.basis):
            if (g >> a) & 1:
                self.basis[i] = g ^ bb
        if (self.offset >> a) & 1:
            self.offset ^= bb
        self._substitute(b, (1 << a) | bb, 0)

    def _h(self, k: int) -> None:
        ek = 1 << k
        if (self.offset >> k) & 1:
            self._x(k)
            self._h(k)
            self._z(k)
            return
        rows_k = [i for i, g in enumerate(self.basis) if (g >> k) & 1]
        if not rows_k:
            # free direction: amplitude doubles into both y_k values
            self._substitute(k, 0, 0)
            self.basis.append(ek)
            self.sqrt2 -= 1
            return
        p = rows_k[0]
        for i in rows_k[1:]:
            self.basis[i] ^= self.basis[p]
        gp = self.basis[p]
        if gp != ek:
            others = [g for i, g in enumerate(self.basis) if i != p]
            if f2.in_span(others, gp ^ ek):
                gp = ek
                self.basis[p] = ek
        if gp == ek:
            # Gauss-sum branch: y_k couples only through phases
            del self.basis[p]
            c_l = self._lin_at(k)
            wk = self.quad[k]
            self._substitute(k, 0, 0)
            if c_l % 2 == 0:
                c2 = (c_l >> 1) & 1
                for i, g in enumerate(self.basis):
                    if parity(wk & g):
                        self.basis[i] = g ^ ek
                if c2 ^ parity(wk & self.offset):
                    self.offset ^= ek
                self.sqrt2 += 1
            else:
                self.basis.append(ek)
                self.phase8 = (self.phase8 + 1) % 8
                b0 = ((c_l - 1) >> 1) & 1
                self._mul_phase_affine(3, wk | ek, b0)
            return
        # injective-projection branch: x_k is an affine function of the
        # other coordinates; Hadamard frees it
        rows2 = [g & ~ek for g in self.basis]
        d = f2.solve_dual(rows2, p, self.n, forbidden=ek)
        if d is None:
            raise AssertionError("dual functional must exist in this branch")
        d0 = parity(d & self.offset)
        self._substitute(k, d, d0)
        for w in iter_bits(d):
            self.quad[w] ^= ek
            self.quad[k] ^= 1 << w
        if d0:
            self._plane_add(ek, 2)
        self.basis[p] = gp & ~ek
        self.basis.append(ek)
        self.sqrt2 -= 1

    _GATE_ARITY = {"X": 1, "Y": 1, "Z": 1, "S": 1, "SDG": 1, "H": 1, "A": 1,
                   "ADG": 1, "CX": 2, "CZ": 2}

    def _apply_inplace(self, name: str, qubits: tuple[int, ...]) -> None:
        if self.zero:
            return
        arity = self._GATE_ARITY.get(name)
        if arity is None:
            raise ValueError(f"unknown gate {name!r}")
        if len(qubits) != arity:
            raise ValueError(f"{name} expects {arity} qubit(s)")
        for q in qubits:
            if not (0 <= q < self.n):
                raise ValueError(f"qubit {q} out of range for n={self.n}")
        if arity == 2 and qubits[0] == qubits[1]:
            raise ValueError("two-qubit gate needs distinct qubits")
        if name == "X":
            self._x(qubits[0])
        elif name == "Y":
            self._y(qubits[0])
        elif name == "Z":
            self._z(qubits[0])
        elif name == "S":
            self._s(qubits[0])
        elif name == "SDG":
            self._sdg(qubits[0])
        elif name == "H":
            self._h(qubits[0])
        elif name == "A":
            self._a(qubits[0])
        elif name == "ADG":
            self._adg(qubits[0])
        elif name == "CX":
            self._cx(qubits[0], qubits[1])
        elif name == "CZ":
            self._cz(qubits[0], qubits[1])

    def apply_gates_inplace(self, gates, qubit_map=None) -> None:
        for name, qubits in gates:
            if qubit_map is not None:
                qubits = tuple(qubit_map[q] for q in qubits)
            self._apply_inplace(name, tuple(qubits))

    # -- postselection -------------------------------------------------

    def _squeeze(self, k: int) -> None:
        """Remove coordinate k (which must be phase- and basis-free)."""
        low = (1 << k) - 1

        def sq(m: int) -> int:
            return (m & low) | ((m >> 1) & ~low)

        self.offset = sq(self.offset)
        self.basis = [sq(g) for g in self.basis]
        self.lin_lo = sq(self.lin_lo)
        self.lin_hi = sq(self.lin_hi)
        del self.quad[k]
        self.quad = [sq(r) for r in self.quad]
        self.n -= 1

    def postselect_inplace(self, k: int, bit: int) -> None:
        """<bit|_k applied in place; may set the zero flag."""
        if not (0 <= k < self.n):
            raise ValueError("qubit out of range")
        if self.zero:
            self.n -= 1
            self.quad = [0] * self.n
            return
        rows_k = [i for i, g in enumerate(self.basis) if (g >> k) & 1]
        if not rows_k:
            if ((self.offset >> k) & 1) != bit:
                n2 = self.n - 1
                self.__dict__.update(StabilizerState.zero_state(n2).__dict__)
                return
            self._substitute(k, 0, bit)
            self._squeeze(k)
            return
        p = rows_k[0]
        for i in rows_k[1:]:
            self.basis[i] ^= self.basis[p]
        if ((self.offset >> k) & 1) != bit:
            self.offset ^= self.basis[p]
        del self.basis[p]
        self._substitute(k, 0, bit)
        self._squeeze(k)

    # -- readout -------------------------------------------------------

    def is_deterministic(self, k: int) -> tuple[bool, int]:
        """Whether x_k is constant on A; returns (flag, value)."""
        for g in self.basis:
            if (g >> k) & 1:
                return False, 0
        return True, (self.offset >> k) & 1

    def amplitude(self, x: int) -> complex:
        if self.zero:
            return 0.0
        if x >> self.n:
            raise ValueError("bitstring out of range")
        width = max(self.n, 1)
        red, pivots, _ = f2.rref(f2.F2Matrix(list(self.basis), width))
        v = f2.reduce_against(red.rows, pivots, x ^ self.offset)
        if v:
            return 0.0
        linval = ((self.lin_lo & x).bit_count() + 2 * (self.lin_hi & x).bit_count()) % 4
        tot = 0
        for i in iter_bits(x):
            tot += (self.quad[i] & x).bit_count()
        quadval = (tot >> 1) & 1
        amp = self.scalar_value() * _I_POW[linval]
        return -amp if quadval else amp

    def _quad_value(self, x: int) -> int:
        tot = 0
        for i in iter_bits(x):
            tot += (self.quad[i] & x).bit_count()
        return (tot >> 1) & 1

    def to_dense(self, cap: int = DENSE_CAP) -> np.ndarray:
        if self.n > cap:
            raise CapExceeded(f"n={self.n} exceeds dense cap {cap}")
        vec = np.zeros(1 << self.n, dtype=complex)
        if self.zero:
            return vec
        h = self.offset
        ph0 = ((self.lin_lo & h).bit_count() + 2 * (self.lin_hi & h).bit_count()
               + 2 * self._quad_value(h)) % 4
        idx = np.array([h], dtype=np.int64)
        ph = np.array([ph0], dtype=np.uint8)
        for g in self.basis:
            kappa = ((self.lin_lo & g).bit_count() + 2 * (self.lin_hi & g).bit_count()
                     + 2 * self._quad_value(g)) % 4
            w = self.lin_lo & g
            for j in range(self.n):
                if parity(self.quad[j] & g):
                    w ^= 1 << j
            delta = (kappa + 2 * (np.bitwise_count(idx & np.int64(w)).astype(np.uint8) & 1)) % 4
            ph = np.concatenate([ph, (ph + delta.astype(np.uint8)) & 3])
            idx = np.concatenate([idx, idx ^ np.int64(g)])
        vec[idx] = self.scalar_value() * _I_POW[ph]
        return vec

    def tensor(self, other: "StabilizerState") -> "StabilizerState":
        n = self.n + other.n
        if self.zero or other.zero:
            return StabilizerState.zero_state(n)
        s = StabilizerState(
            n=n,
            basis=list(self.basis) + [g << self.n for g in other.basis],
            offset=self.offset | (other.offset << self.n),
            lin_lo=self.lin_lo | (other.lin_lo << self.n),
            lin_hi=self.lin_hi | (other.lin_hi << self.n),
            quad=list(self.quad) + [r << self.n for r in other.quad],
            phase8=(self.phase8 + other.phase8) % 8,
            sqrt2=self.sqrt2 + other.sqrt2,
            generic=self.generic * other.generic,
        )
        return s

    def permute(self, perm: list[int]) -> "StabilizerState":
        """Relabel qubits: new qubit perm[i] is old qubit i."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        if self.zero:
            return StabilizerState.zero_state(self.n)

        def pm(mask: int) -> int:
            out = 0
            for i in iter_bits(mask):
                out |= 1 << perm[i]
            return out

        s = StabilizerState(n=self.n, basis=[pm(g) for g in self.basis], offset=pm(self.offset),
                            lin_lo=pm(self.lin_lo), lin_hi=pm(self.lin_hi),
                            quad=[0] * self.n, phase8=self.phase8, sqrt2=self.sqrt2,
                            generic=self.generic)
        for i in range(self.n):
            s.quad[perm[i]] = pm(self.quad[i])
        return s

    # -- serialization ---------------------------------------------------

    def to_json_dict(self) -> dict:
        n = self.n
        upper = []
        for i in range(n):
            row = self.quad[i] & ~((1 << (i + 1)) - 1)
            upper.append(f2.vec_to_str(row, n))
        return {
            "n": n,
            "is_zero": self.zero,
            "basis": [f2.vec_to_str(g, n) for g in self.basis],
            "offset": f2.vec_to_str(self.offset, n),
            "l": f2.vec_to_str(self.lin_lo, n),
            "q": {"diag": f2.vec_to_str(self.lin_hi, n), "upper": upper},
            "scalar": {
                "phase8": self.phase8 % 8,
                "sqrt2_exponent": self.sqrt2,
                "re": self.generic.real,
                "im": self.generic.imag,
            },
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "StabilizerState":
        n = int(d["n"])
        if d.get("is_zero"):
            return cls.zero_state(n)
        s = cls(
            n=n,
            basis=[f2.vec_from_str(b) for b in d["basis"]],
            offset=f2.vec_from_str(d["offset"]),
            lin_lo=f2.vec_from_str(d["l"]),
            lin_hi=f2.vec_from_str(d["q"]["diag"]),
        )
        for i, row in enumerate(d["q"]["upper"]):
            mask = f2.vec_from_str(row)
            s.quad[i] |= mask
            for j in iter_bits(mask):
                s.quad[j] |= 1 << i
        sc = d["scalar"]
        s.phase8 = int(sc["phase8"]) % 8
        s.sqrt2 = int(sc["sqrt2_exponent"])
        s.generic = complex(float(sc["re"]), float(sc["im"]))
        return s


# -- functional API ------------------------------------------------------

def basis_state(x: int, n: int) -> StabilizerState:
    return StabilizerState.basis_state(x, n)


def apply_gate(state: StabilizerState, name: str, qubits) -> StabilizerState:
    s = state.copy()
    s._apply_inplace(name.upper(), tuple(qubits))
    return s


def apply_gates(state: StabilizerState, gates, qubit_map=None) -> StabilizerState:
    s = state.copy()
    s.apply_gates_inplace(gates, qubit_map)
    return s


def postselect(state: StabilizerState, qubit: int, bit: int) -> StabilizerState:
    s = state.copy()
    s.postselect_inplace(qubit, bit)
    return s


def dagger_gates(gates) -> list[tuple[str, tuple[int, ...]]]:
    """Inverse of a Clifford gate list."""
    swap = {"S": "SDG", "SDG": "S", "A": "ADG", "ADG": "A"}
    return [(swap.get(name, name), tuple(qubits)) for name, qubits in reversed(list(gates))]


def global_phase_gates(phase8: int, qubit: int = 0) -> list[tuple[str, tuple[int, ...]]]:
    """Gate sequence on one qubit realizing the global phase e^{i pi k / 4}."""
    # e^{-i pi/4} I = A X S^dagger applied as [SDG, X, A]; stack k copies of
    # the inverse sequence for positive phases.
    seq_plus = [("A", (qubit,)), ("X", (qubit,)), ("S", (qubit,))]  # e^{+i pi/4}
    out: list[tuple[str, tuple[int, ...]]] = []
    for _ in range(phase8 % 8):
        out.extend(seq_plus)
    return out


def prepare_circuit(state: StabilizerState) -> tuple[list[tuple[str, tuple[int, ...]]], Scalar]:
    """Clifford gate list C with state = leftover * C|0^n>, leftover exact."""
    if state.zero:
        raise ValueError("cannot prepare the zero vector")
    n = state.n
    width = max(n, 1)
    red, pivots, r = f2.rref(f2.F2Matrix(list(state.basis), width))
    if r != len(state.basis):
        raise AssertionError("basis lost independence")
    offset = f2.reduce_against(red.rows[:r], pivots, state.offset)
    gates: list[tuple[str, tuple[int, ...]]] = []
    for p in pivots:
        gates.append(("H", (p,)))
    for i in range(r):
        for j in iter_bits(red.rows[i] ^ (1 << pivots[i])):
            gates.append(("CX", (pivots[i], j)))
    for j in iter_bits(offset):
        gates.append(("X", (j,)))
    for j in range(n):
        v = state._lin_at(j)
        if v == 1:
            gates.append(("S", (j,)))
        elif v == 2:
            gates.append(("Z", (j,)))
        elif v == 3:
            gates.append(("SDG", (j,)))
    for i in range(n):
        for j in iter_bits(state.quad[i]):
            if j > i:
                gates.append(("CZ", (i, j)))
    leftover = Scalar(state.phase8, state.sqrt2 + r, state.generic)
    return gates, leftover
