"""Exact linear algebra over the rationals: sparse spans, kernels, matrices."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

_ZERO = Fraction(0)


class SpanBuilder:
    """Incrementally built row space of sparse vectors.

    Vectors are dicts mapping mutually comparable keys to nonzero Fraction
    coefficients.  Each stored pivot row is monic in its largest key, so the
    pivot of a row is always its maximum key.
    """

    def __init__(self) -> None:
        self._pivots: dict = {}
        self._leads: list = []

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def leads(self) -> list:
        return list(self._leads)

    def _eliminate(self, row: dict) -> dict:
        row = {k: Fraction(c) for k, c in row.items() if c}
        while row:
            lead = max(row)
            piv = self._pivots.get(lead)
            if piv is None:
                return row
            factor = row.pop(lead)
            for k, c in piv.items():
                if k == lead:
                    continue
                v = row.get(k, _ZERO) - factor * c
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
        return row

    def add(self, row: dict) -> bool:
        """Insert a vector; True when it enlarged the span."""
        row = self._eliminate(row)
        if not row:
            return False
        lead = max(row)
        inv = 1 / row[lead]
        self._pivots[lead] = {k: c * inv for k, c in row.items()}
        self._leads.append(lead)
        return True

    def contains(self, row: dict) -> bool:
        return not self._eliminate(row)

    def residue(self, row: dict) -> dict:
        """Canonical representative of ``row`` modulo the span.

        Unlike :meth:`contains` this clears pivot keys everywhere in the
        vector, not just in leading position.
        """
        out = {k: Fraction(c) for k, c in row.items() if c}
        while True:
            hit = None
            for k in sorted(out, reverse=True):
                if k in self._pivots:
                    hit = k
                    break
            if hit is None:
                return out
            factor = out.pop(hit)
            for k, c in self._pivots[hit].items():
                if k == hit:
                    continue
                v = out.get(k, _ZERO) - factor * c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)


def kernel_combos(vectors: Sequence[dict]) -> list[dict[int, Fraction]]:
    """Linear dependencies among the given sparse vectors.

    Returns one ``{index: coefficient}`` dict per dependency, in discovery
    order; each expresses a vanishing combination of the inputs.
    """
    pivots: dict = {}
    out = []
    for i, vec in enumerate(vectors):
        row = {k: Fraction(c) for k, c in vec.items() if c}
        combo = {i: Fraction(1)}
        while row:
            lead = max(row)
            if lead not in pivots:
                inv = 1 / row[lead]
                pivots[lead] = (
                    {k: c * inv for k, c in row.items()},
                    {k: c * inv for k, c in combo.items()},
                )
                break
            prow, pcombo = pivots[lead]
            factor = row.pop(lead)
            for k, c in prow.items():
                if k == lead:
                    continue
                v = row.get(k, _ZERO) - factor * c
                if v:
                    row[k] = v
                else:
                    row.pop(k, None)
            for k, c in pcombo.items():
                v = combo.get(k, _ZERO) - factor * c
                if v:
                    combo[k] = v
                else:
                    combo.pop(k, None)
        else:
            out.append(combo)
    return out


def rref(matrix: Sequence[Sequence[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    rows = [[Fraction(x) for x in r] for r in matrix]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        sel = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def nullspace(matrix: Sequence[Sequence[Fraction]], ncols: int) -> list[list[Fraction]]:
    """Basis of {x : M x = 0} for a dense rational matrix with ncols columns."""
    if not matrix:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(ncols)] for j in range(ncols)]
    reduced, pivots = rref(matrix)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            vec[p] = -row[f]
        basis.append(vec)
    return basis


def primitive_kernel_vector(matrix: Sequence[Sequence[int]]) -> list[int]:
    """The primitive integer vector with positive entries spanning ker(M).

    Raises ValueError unless the kernel is one-dimensional with a strictly
    positive (after sign normalization) spanning vector.
    """
    n = len(matrix[0]) if matrix else 0
    basis = nullspace([[Fraction(x) for x in row] for row in matrix], n)
    if len(basis) != 1:
        raise ValueError(f"kernel is {len(basis)}-dimensional, expected 1")
    vec = basis[0]
    denom = 1
    for x in vec:
        denom = denom * x.denominator // _gcd(denom, x.denominator)
    ints = [int(x * denom) for x in vec]
    g = 0
    for x in ints:
        g = _gcd(g, abs(x))
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if any(x <= 0 for x in ints):
        raise ValueError("kernel vector is not sign-definite")
    return ints


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


@dataclass(frozen=True)
class Mat:
    """Dense rational matrix with explicit shape (zero-sized sides allowed)."""

    rows: int
    cols: int
    data: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix shape")
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix data does not match its shape")

    @staticmethod
    def from_rows(rows: Iterable[Iterable]) -> "Mat":
        data = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if not data:
            raise ValueError("from_rows needs at least one row; use Mat.zero")
        return Mat(len(data), len(data[0]), data)

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat(rows, cols, tuple(tuple(_ZERO for _ in range(cols)) for _ in range(rows)))

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat(n, n, tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n)))

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in matrix sum")
        return Mat(self.rows, self.cols,
                   tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)))

    def __sub__(self, other: "Mat") -> "Mat":
        return self + other.scale(Fraction(-1))

    def scale(self, c) -> "Mat":
        c = Fraction(c)
        return Mat(self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.data))

    def __mul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        data = tuple(
            tuple(sum((self.data[i][k] * other.data[k][j] for k in range(self.cols)), _ZERO)
                  for j in range(other.cols))
            for i in range(self.rows)
        )
        return Mat(self.rows, other.cols, data)

    def is_zero(self) -> bool:
        return all(not x for r in self.data for x in r)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), _ZERO)

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        work = [list(r) + [Fraction(1 if i == j else 0) for j in range(n)]
                for i, r in enumerate(self.data)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col]), None)
            if pivot is None:
                raise ValueError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = 1 / work[col][col]
            work[col] = [x * inv for x in work[col]]
            for r in range(n):
                if r != col and work[r][col]:
                    f = work[r][col]
                    work[r] = [x - f * y for x, y in zip(work[r], work[col])]
        return Mat(n, n, tuple(tuple(row[n:]) for row in work))


def block_diag(a: Mat, b: Mat) -> Mat:
    rows = a.rows + b.rows
    cols = a.cols + b.cols
    data = []
    for i in range(a.rows):
        data.append(tuple(a.data[i]) + tuple(_ZERO for _ in range(b.cols)))
    for i in range(b.rows):
        data.append(tuple(_ZERO for _ in range(a.cols)) + tuple(b.data[i]))
    return Mat(rows, cols, tuple(data))


def block_upper(a: Mat, x: Mat, b: Mat) -> Mat:
    """[[a, x], [0, b]] with x of shape a.rows x b.cols."""
    if x.rows != a.rows or x.cols != b.cols:
        raise ValueError("off-diagonal block has the wrong shape")
    data = []
    for i in range(a.rows):
        data.append(tuple(a.data[i]) + tuple(x.data[i]))
    for i in range(b.rows):
        data.append(tuple(_ZERO for _ in range(a.cols)) + tuple(b.data[i]))
    return Mat(a.rows + b.rows, a.cols + b.cols, tuple(data))
