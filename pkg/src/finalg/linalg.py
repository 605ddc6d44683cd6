"""Exact linear algebra over the rationals.

Scalars are `fractions.Fraction` throughout; there is no floating-point
path anywhere.  Rationals serialize as ``p/q`` (or just ``p`` when the
denominator is 1) with the sign on the numerator.

Subspaces of Q^n are stored by their reduced-row-echelon basis.  That
basis is unique, so two equal subspaces have identical representations
and ``==`` decides set equality structurally.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

Rat = Fraction
Vec = tuple[Fraction, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/(\d+))?\Z")


class Infeasible(Exception):
    """A linear system with no exact solution."""


def parse_rational(token: str) -> Fraction:
    """Parse ``p`` or ``p/q`` with integer numerator and positive denominator."""
    match = _RATIONAL_RE.match(token)
    if match is None:
        raise ValueError(f"malformed rational literal {token!r}")
    if match.group(1) is not None and int(match.group(1)) == 0:
        raise ValueError(f"zero denominator in {token!r}")
    return Fraction(token)


def format_rational(value: Fraction) -> str:
    return str(value)


def as_vector(values: Iterable) -> Vec:
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in values)


def dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    if len(u) != len(v):
        raise ValueError("dot product of vectors with different lengths")
    total = _ZERO
    for a, b in zip(u, v):
        if a and b:
            total += a * b
    return total


class Mat:
    """Immutable dense matrix of rationals, row-major."""

    __slots__ = ("rows", "cols", "data", "_rref_cache")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(as_vector(r) for r in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("rows of unequal length")
            if cols is not None and cols != width:
                raise ValueError("explicit column count disagrees with row width")
        else:
            if cols is None:
                raise ValueError("an empty matrix needs an explicit column count")
            width = cols
        self.data = rows
        self.rows = len(rows)
        self.cols = width
        self._rref_cache = None

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[_ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls(
            [[_ONE if i == j else _ZERO for j in range(n)] for i in range(n)], cols=n
        )

    def row(self, i: int) -> Vec:
        return self.data[i]

    def column(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def transpose(self) -> "Mat":
        return Mat([self.column(j) for j in range(self.cols)], cols=self.rows)

    def trace(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("trace of a non-square matrix")
        return sum((self.data[i][i] for i in range(self.rows)), _ZERO)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.data))

    def __repr__(self) -> str:
        return f"Mat({self.rows}x{self.cols})"

    def __add__(self, other: "Mat") -> "Mat":
        self._shape_check(other)
        return Mat(
            [tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __sub__(self, other: "Mat") -> "Mat":
        self._shape_check(other)
        return Mat(
            [tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(self.data, other.data)],
            cols=self.cols,
        )

    def __neg__(self) -> "Mat":
        return Mat([tuple(-a for a in r) for r in self.data], cols=self.cols)

    def scaled(self, factor) -> "Mat":
        f = factor if isinstance(factor, Fraction) else Fraction(factor)
        return Mat([tuple(f * a for a in r) for r in self.data], cols=self.cols)

    def __mul__(self, other: "Mat") -> "Mat":
        if not isinstance(other, Mat):
            return NotImplemented
        if self.cols != other.rows:
            raise ValueError("matrix product shape mismatch")
        out = []
        for r in self.data:
            row = [_ZERO] * other.cols
            for k, a in enumerate(r):
                if a:
                    orow = other.data[k]
                    for j, b in enumerate(orow):
                        if b:
                            row[j] += a * b
            out.append(row)
        return Mat(out, cols=other.cols)

    def apply(self, v: Sequence) -> Vec:
        """Matrix-vector action on a coefficient column."""
        x = as_vector(v)
        if len(x) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(dot(r, x) for r in self.data)

    def augment(self, column: Sequence) -> "Mat":
        col = as_vector(column)
        if len(col) != self.rows:
            raise ValueError("augment column has wrong length")
        return Mat([r + (c,) for r, c in zip(self.data, col)], cols=self.cols + 1)

    def _shape_check(self, other: "Mat") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("matrix shape mismatch")

    def rref(self) -> tuple["Mat", tuple[int, ...], int]:
        """Reduced row echelon form, pivot columns, and rank.

        The result is the unique RREF of the matrix; it is cached.
        """
        if self._rref_cache is None:
            work = [list(r) for r in self.data]
            pivots: list[int] = []
            r = 0
            for c in range(self.cols):
                if r == self.rows:
                    break
                choice = -1
                for i in range(r, self.rows):
                    e = work[i][c]
                    if e:
                        if choice < 0:
                            choice = i
                        if e == 1 or e == -1:
                            choice = i
                            break
                if choice < 0:
                    continue
                work[r], work[choice] = work[choice], work[r]
                lead = work[r][c]
                if lead != 1:
                    inv = _ONE / lead
                    work[r] = [x * inv for x in work[r]]
                prow = work[r]
                for i in range(self.rows):
                    if i == r:
                        continue
                    f = work[i][c]
                    if f:
                        work[i] = [a - f * b if b else a for a, b in zip(work[i], prow)]
                pivots.append(c)
                r += 1
            self._rref_cache = (Mat(work, cols=self.cols), tuple(pivots), r)
        return self._rref_cache

    def rank(self) -> int:
        return self.rref()[2]

    def kernel(self) -> tuple[Vec, ...]:
        """A basis of the null space {x : Mx = 0} (one vector per free column)."""
        reduced, pivots, _ = self.rref()
        pivot_set = set(pivots)
        vectors = []
        for free in range(self.cols):
            if free in pivot_set:
                continue
            v = [_ZERO] * self.cols
            v[free] = _ONE
            for i, p in enumerate(pivots):
                v[p] = -reduced.data[i][free]
            vectors.append(tuple(v))
        return tuple(vectors)


@dataclass(frozen=True)
class AffineSolution:
    """Full solution set of M x = b: one particular solution plus the kernel."""

    particular: Vec
    kernel: "Subspace"


def solve_affine(m: Mat, rhs: Sequence) -> AffineSolution:
    """Solve M x = b exactly; raises Infeasible when rank(M) < rank([M|b])."""
    b = as_vector(rhs)
    if len(b) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    reduced, pivots, _ = m.augment(b).rref()
    if pivots and pivots[-1] == m.cols:
        raise Infeasible("inconsistent linear system")
    x = [_ZERO] * m.cols
    for i, p in enumerate(pivots):
        x[p] = reduced.data[i][m.cols]
    return AffineSolution(tuple(x), Subspace.from_rows(m.cols, m.kernel()))


@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^ambient_dim with a canonical RREF basis.

    Invariants (checked at construction): basis rows are nonzero, each
    leading entry is 1, pivot columns are strictly increasing and are zero
    in every other basis row.  Construct via :meth:`from_rows` unless the
    rows are already canonical.
    """

    ambient_dim: int
    basis: tuple[Vec, ...]

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(as_vector(r) for r in self.basis))
        last = -1
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ValueError("basis row has wrong length")
            lead = next((i for i, x in enumerate(row) if x), None)
            if lead is None:
                raise ValueError("zero basis row")
            if lead <= last:
                raise ValueError("pivot columns must increase strictly")
            if row[lead] != 1:
                raise ValueError("pivot entries must be 1")
            last = lead
        pivots = tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)
        for i, row in enumerate(self.basis):
            for j, p in enumerate(pivots):
                if i != j and row[p]:
                    raise ValueError("pivot columns must be zero in other rows")

    @classmethod
    def from_rows(cls, ambient_dim: int, rows: Iterable[Sequence]) -> "Subspace":
        rows = [as_vector(r) for r in rows]
        if not rows:
            return cls(ambient_dim, ())
        reduced, _, rank = Mat(rows, cols=ambient_dim).rref()
        return cls(ambient_dim, reduced.data[:rank])

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Mat.identity(ambient_dim).data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(row) if x) for row in self.basis)

    def __repr__(self) -> str:
        return f"Subspace(dim {self.dim} of Q^{self.ambient_dim})"

    def reduce_vector(self, v: Sequence) -> Vec:
        """Residual of v after eliminating along the basis; zero iff v is a member."""
        r = list(as_vector(v))
        if len(r) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self.pivots):
            c = r[p]
            if c:
                r = [a - c * b if b else a for a, b in zip(r, row)]
        return tuple(r)

    def contains_vector(self, v: Sequence) -> bool:
        return not any(self.reduce_vector(v))

    def coordinates(self, v: Sequence) -> Vec | None:
        """Coordinates of v in the canonical basis, or None when v is outside."""
        r = list(as_vector(v))
        if len(r) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        coords = []
        for row, p in zip(self.basis, self.pivots):
            c = r[p]
            coords.append(c)
            if c:
                r = [a - c * b if b else a for a, b in zip(r, row)]
        if any(r):
            return None
        return tuple(coords)

    def contains(self, other: "Subspace") -> bool:
        self._ambient_check(other)
        return all(self.contains_vector(row) for row in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Subspace") -> bool:
        return self.contains(other)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._ambient_check(other)
        return Subspace.from_rows(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._ambient_check(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def annihilator(self) -> "Subspace":
        """Covectors vanishing on this subspace (kernel of the stacked basis)."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return Subspace.from_rows(self.ambient_dim, Mat(self.basis).kernel())

    def _ambient_check(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")


def subspace_lattice(op: str, v: Subspace, w: Subspace):
    """Lattice dispatcher: op in {"sum", "intersect", "contains", "equal"}."""
    if v.ambient_dim != w.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    if op == "sum":
        return v + w
    if op == "intersect":
        return v & w
    if op == "contains":
        return v.contains(w)
    if op == "equal":
        return v == w
    raise ValueError(f"unknown lattice operation {op!r}")


def kernel_from_constraints(
    n: int, rows: Iterable[Iterable[tuple[int, Fraction]]]
) -> Subspace:
    """Common null space of a stream of sparse constraint rows on Q^n.

    Each row is an iterable of (index, coefficient) pairs.  The current
    null space is maintained as an explicit basis and shrunk one dimension
    per independent constraint, so redundant rows only cost a sparse dot
    product per surviving basis vector.  Intended for the long,
    highly redundant systems produced by polarized identities.
    """
    basis: list[list[Fraction]] = []
    for i in range(n):
        v = [_ZERO] * n
        v[i] = _ONE
        basis.append(v)
    for row in rows:
        if not basis:
            break
        entries = [(i, c) for i, c in row if c]
        if not entries:
            continue
        vals = []
        hit = False
        for v in basis:
            s = _ZERO
            for idx, coef in entries:
                x = v[idx]
                if x:
                    s += coef * x
            vals.append(s)
            if s:
                hit = True
        if not hit:
            continue
        pivot = -1
        for i, val in enumerate(vals):
            if val:
                if pivot < 0:
                    pivot = i
                if val == 1 or val == -1:
                    pivot = i
                    break
        pvec = basis[pivot]
        pval = vals[pivot]
        new_basis = []
        for i, (v, val) in enumerate(zip(basis, vals)):
            if i == pivot:
                continue
            if val:
                f = val / pval
                v = [a - f * b if b else a for a, b in zip(v, pvec)]
            new_basis.append(v)
        basis = new_basis
    return Subspace.from_rows(n, basis)
