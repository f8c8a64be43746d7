"""Exact linear algebra over GF(2) using int bitsets.

Vectors are plain Python ints: bit ``i`` of the int is coordinate ``i``
(qubit ``i``).  Matrices carry an explicit column count since leading
zeros are invisible in an int.
"""

from __future__ import annotations

from dataclasses import dataclass


def vec_from_str(s: str) -> int:
    """Parse a '0'/'1' string; character i becomes bit i."""
    v = 0
    for i, ch in enumerate(s):
        if ch == "1":
            v |= 1 << i
        elif ch != "0":
            raise ValueError(f"bad bit character {ch!r}")
    return v


def vec_to_str(v: int, n: int) -> str:
    return "".join("1" if (v >> i) & 1 else "0" for i in range(n))


def iter_bits(mask: int):
    """Yield set bit positions of mask, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parity(mask: int) -> int:
    return mask.bit_count() & 1


@dataclass
class F2Matrix:
    """Bit-packed matrix over GF(2): rows[i] has bit j set iff entry (i, j) = 1."""

    rows: list[int]
    cols: int

    @classmethod
    def from_strings(cls, lines: list[str]) -> "F2Matrix":
        lines = [ln.strip() for ln in lines if ln.strip()]
        if not lines:
            raise ValueError("empty matrix")
        width = len(lines[0])
        if any(len(ln) != width for ln in lines):
            raise ValueError("ragged rows")
        return cls([vec_from_str(ln) for ln in lines], width)

    def to_strings(self) -> list[str]:
        return [vec_to_str(r, self.cols) for r in self.rows]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def copy(self) -> "F2Matrix":
        return F2Matrix(list(self.rows), self.cols)

    def transpose(self) -> "F2Matrix":
        out = [0] * self.cols
        for i, r in enumerate(self.rows):
            for j in iter_bits(r):
                out[j] |= 1 << i
        return F2Matrix(out, self.nrows)


def rref(m: F2Matrix) -> tuple[F2Matrix, list[int], int]:
    """Reduced row echelon form.  Returns (R, pivot columns, rank)."""
    rows = list(m.rows)
    pivots: list[int] = []
    rank = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r] & bit:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and (rows[r] & bit):
                rows[r] ^= rows[rank]
        pivots.append(col)
        rank += 1
    return F2Matrix(rows, m.cols), pivots, rank


def rank(m: F2Matrix) -> int:
    return rref(m)[2]


def kernel_basis(m: F2Matrix) -> list[int]:
    """Basis of {v : M v = 0} over GF(2); len = cols - rank(M)."""
    red, pivots, rk = rref(m)
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        v = 1 << free
        for i, pc in enumerate(pivots):
            if (red.rows[i] >> free) & 1:
                v |= 1 << pc
        basis.append(v)
    return basis


def in_span(rows: list[int], v: int) -> bool:
    """Membership of v in the row span of rows."""
    if v == 0:
        return True
    width = max([v.bit_length()] + [r.bit_length() for r in rows])
    red, pivots, _ = rref(F2Matrix(list(rows), width))
    v = reduce_against(red.rows, pivots, v)
    return v == 0


def reduce_against(red_rows: list[int], pivots: list[int], v: int) -> int:
    """Reduce v against rows already in RREF with the given pivot columns."""
    for row, pc in zip(red_rows, pivots):
        if (v >> pc) & 1:
            v ^= row
    return v


def affine_space_members(basis: list[int], offset: int):
    """Iterate all 2^r members of offset + span(basis).  Basis must be independent."""
    r = len(basis)
    if rank(F2Matrix(list(basis), max((b.bit_length() for b in basis), default=1))) != r:
        raise ValueError("dependent basis")
    # Gray-code walk so successive members differ by one basis vector.
    x = offset
    yield x
    gray_prev = 0
    for t in range(1, 1 << r):
        gray = t ^ (t >> 1)
        flip = (gray ^ gray_prev).bit_length() - 1
        gray_prev = gray
        x ^= basis[flip]
        yield x


def solve_dual(rows: list[int], target_index: int, ncols: int, forbidden: int = 0) -> int | None:
    """Find d with d.rows[i] = delta_{i,target_index} (mod 2) and d & forbidden = 0.

    Returns the dual vector as an int mask, or None if no such functional exists.
    Used to express one affine coordinate as a function of the others.
    """
    allowed = [c for c in range(ncols) if not ((forbidden >> c) & 1)]
    # Solve A d = e_target where A has rows restricted to allowed columns.
    aug = []
    for i, row in enumerate(rows):
        rhs = 1 if i == target_index else 0
        packed = 0
        for j, c in enumerate(allowed):
            if (row >> c) & 1:
                packed |= 1 << j
        aug.append((packed, rhs))
    w = len(allowed)
    # Gaussian elimination on the r x w system.
    pivots: list[tuple[int, int]] = []  # (row index in aug, column)
    used_rows: set[int] = set()
    for col in range(w):
        bit = 1 << col
        pivot = None
        for r in range(len(aug)):
            if r not in used_rows and (aug[r][0] & bit):
                pivot = r
                break
        if pivot is None:
            continue
        used_rows.add(pivot)
        pivots.append((pivot, col))
        for r in range(len(aug)):
            if r != pivot and (aug[r][0] & bit):
                aug[r] = (aug[r][0] ^ aug[pivot][0], aug[r][1] ^ aug[pivot][1])
    # Consistency: any zero row must have zero rhs.
    for packed, rhs in aug:
        if packed == 0 and rhs:
            return None
    d = 0
    for r, col in pivots:
        if aug[r][1]:
            d |= 1 << allowed[col]
    return d


def parse_generator_text(text: str) -> F2Matrix:
    """Generator-matrix text: one '0'/'1' row per line, blank lines ignored."""
    return F2Matrix.from_strings(text.splitlines())


def format_generator_text(m: F2Matrix) -> str:
    return "\n".join(m.to_strings()) + "\n"
