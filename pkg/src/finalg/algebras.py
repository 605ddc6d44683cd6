"""Finite-dimensional associative algebras presented by structure constants.

An algebra of dimension d over Q is given by a tensor c with
``b_i * b_j = sum_k c[i][j][k] b_k`` on a fixed basis b_0..b_{d-1}.
Associativity (and the unit law, when a unit is declared) is checked at
construction; instances are immutable afterwards.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from random import Random
from typing import Iterable, Sequence

from .linalg import Mat, Subspace, Vec, as_vector, kernel_from_constraints

_ZERO = Fraction(0)
_ONE = Fraction(1)


class AssociativityError(ValueError):
    """A structure tensor violating (xy)z = x(yz) on some basis triple."""

    def __init__(self, triple: tuple[int, int, int], left: Vec, right: Vec):
        i, j, k = triple
        super().__init__(
            f"associativity fails at basis triple ({i},{j},{k}): "
            f"(b{i}*b{j})*b{k} = {[str(x) for x in left]} but "
            f"b{i}*(b{j}*b{k}) = {[str(x) for x in right]}"
        )
        self.triple = triple
        self.left = left
        self.right = right


class FinAlgebra:
    """An associative algebra over Q given by exact structure constants."""

    __slots__ = ("dim", "c", "unit", "labels", "_pairs")

    def __init__(self, c, unit=None, labels=None):
        tensor = tuple(tuple(as_vector(row) for row in plane) for plane in c)
        dim = len(tensor)
        for plane in tensor:
            if len(plane) != dim or any(len(row) != dim for row in plane):
                raise ValueError("structure tensor must be dim x dim x dim")
        self.dim = dim
        self.c = tensor
        self._pairs = tuple(
            tuple(tuple((k, v) for k, v in enumerate(row) if v) for row in plane)
            for plane in tensor
        )
        self.unit = None if unit is None else as_vector(unit)
        if self.unit is not None and len(self.unit) != dim:
            raise ValueError("unit vector has wrong length")
        self.labels = None if labels is None else tuple(str(s) for s in labels)
        if self.labels is not None and len(self.labels) != dim:
            raise ValueError("label list has wrong length")
        self._validate()

    def _validate(self) -> None:
        d, c, pairs = self.dim, self.c, self._pairs
        for i in range(d):
            for j in range(d):
                pij = pairs[i][j]
                for k in range(d):
                    left = [_ZERO] * d
                    for t, a in pij:
                        row = c[t][k]
                        for s in range(d):
                            x = row[s]
                            if x:
                                left[s] += a * x
                    right = [_ZERO] * d
                    for t, b in pairs[j][k]:
                        row = c[i][t]
                        for s in range(d):
                            x = row[s]
                            if x:
                                right[s] += b * x
                    if left != right:
                        raise AssociativityError((i, j, k), tuple(left), tuple(right))
        if self.unit is not None:
            for i in range(d):
                e = tuple(_ONE if s == i else _ZERO for s in range(d))
                if self._mul_vec(self.unit, e) != e or self._mul_vec(e, self.unit) != e:
                    raise ValueError(f"claimed unit fails the unit law on basis element {i}")

    # -- raw coefficient-vector arithmetic ---------------------------------

    def _mul_vec(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vec:
        out = [_ZERO] * self.dim
        pairs = self._pairs
        for i, xi in enumerate(x):
            if not xi:
                continue
            row_pairs = pairs[i]
            for j, yj in enumerate(y):
                if not yj:
                    continue
                f = xi * yj
                for k, coef in row_pairs[j]:
                    out[k] += f * coef
        return tuple(out)

    def _basis_mul_vec(self, i: int, v: Sequence[Fraction], side: str = "left") -> Vec:
        """b_i * v (left) or v * b_i (right) without building a basis vector."""
        out = [_ZERO] * self.dim
        pairs = self._pairs
        if side == "left":
            for j, vj in enumerate(v):
                if vj:
                    for k, coef in pairs[i][j]:
                        out[k] += vj * coef
        else:
            for j, vj in enumerate(v):
                if vj:
                    for k, coef in pairs[j][i]:
                        out[k] += vj * coef
        return tuple(out)

    # -- public interface ----------------------------------------------------

    @property
    def is_unital(self) -> bool:
        return self.unit is not None

    def element(self, coeffs: Sequence) -> "Element":
        v = as_vector(coeffs)
        if len(v) != self.dim:
            raise ValueError("coefficient vector has wrong length")
        return Element(self, v)

    def basis_element(self, i: int) -> "Element":
        if not 0 <= i < self.dim:
            raise ValueError("basis index out of range")
        return Element(self, tuple(_ONE if s == i else _ZERO for s in range(self.dim)))

    def zero(self) -> "Element":
        return Element(self, (_ZERO,) * self.dim)

    def unit_element(self) -> "Element":
        if self.unit is None:
            raise ValueError("algebra has no unit")
        return Element(self, self.unit)

    def multiply(self, x: "Element", y: "Element") -> "Element":
        self._element_check(x)
        self._element_check(y)
        return Element(self, self._mul_vec(x.coeffs, y.coeffs))

    def mult_operator(self, x, side: str = "left") -> Mat:
        """Matrix of y -> xy (left) or y -> yx (right) on coefficient columns."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        xs = x.coeffs if isinstance(x, Element) else as_vector(x)
        if len(xs) != self.dim:
            raise ValueError("coefficient vector has wrong length")
        d = self.dim
        m = [[_ZERO] * d for _ in range(d)]
        pairs = self._pairs
        for i, xi in enumerate(xs):
            if not xi:
                continue
            for j in range(d):
                row_pairs = pairs[i][j] if side == "left" else pairs[j][i]
                for k, coef in row_pairs:
                    m[k][j] += xi * coef
        return Mat(m)

    def _element_check(self, x: "Element") -> None:
        if x.algebra is not self and x.algebra != self:
            raise ValueError("element belongs to a different algebra")

    def __eq__(self, other) -> bool:
        if not isinstance(other, FinAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c and self.unit == other.unit

    def __hash__(self) -> int:
        return hash((self.dim, self.c, self.unit))

    def __repr__(self) -> str:
        return f"FinAlgebra(dim={self.dim}, unital={self.is_unital})"


@dataclass(frozen=True)
class Element:
    """A coefficient vector over an algebra's basis, with arithmetic."""

    algebra: FinAlgebra
    coeffs: Vec

    def __post_init__(self):
        object.__setattr__(self, "coeffs", as_vector(self.coeffs))
        if len(self.coeffs) != self.algebra.dim:
            raise ValueError("coefficient vector has wrong length")

    def _peer(self, other: "Element") -> None:
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            raise ValueError("elements of different algebras")

    def __add__(self, other: "Element") -> "Element":
        self._peer(other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Element") -> "Element":
        self._peer(other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Element":
        return Element(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._peer(other)
            return Element(self.algebra, self.algebra._mul_vec(self.coeffs, other.coeffs))
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return Element(self.algebra, tuple(f * a for a in self.coeffs))
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("negative powers are not defined")
        if n == 0:
            return self.algebra.unit_element()
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        if self.algebra is not other.algebra and self.algebra != other.algebra:
            return False
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        labels = self.algebra.labels
        terms = []
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            name = labels[i] if labels else f"b{i}"
            terms.append(name if a == 1 else f"{a}*{name}")
        return " + ".join(terms) if terms else "0"


def random_element(a: FinAlgebra, rng: Random, numerator_bound: int = 9,
                   denominator_bound: int = 4) -> Element:
    """A seeded random element with small rational coefficients."""
    return Element(
        a,
        tuple(
            Fraction(rng.randint(-numerator_bound, numerator_bound),
                     rng.randint(1, denominator_bound))
            for _ in range(a.dim)
        ),
    )


class FiniteGroup:
    """A finite group given by a Cayley table of 0-based indices.

    Construction checks that every row and column is a permutation, that
    the table is associative, and that an identity and all inverses exist.
    """

    __slots__ = ("order", "cayley", "identity_index", "_inverse")

    def __init__(self, cayley: Iterable[Iterable[int]], identity_index: int | None = None):
        table = tuple(tuple(int(v) for v in row) for row in cayley)
        n = len(table)
        if n == 0:
            raise ValueError("empty Cayley table")
        full = frozenset(range(n))
        for row in table:
            if len(row) != n:
                raise ValueError("Cayley table must be square")
            if frozenset(row) != full:
                raise ValueError("a Cayley row is not a permutation")
        for j in range(n):
            if frozenset(table[i][j] for i in range(n)) != full:
                raise ValueError("a Cayley column is not a permutation")
        identity = None
        for e in range(n):
            if all(table[e][x] == x for x in range(n)) and all(table[x][e] == x for x in range(n)):
                identity = e
                break
        if identity is None:
            raise ValueError("Cayley table has no identity element")
        if identity_index is not None and identity_index != identity:
            raise ValueError(
                f"declared identity index {identity_index} but the table's identity is {identity}"
            )
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if table[table[i][j]][k] != table[i][table[j][k]]:
                        raise ValueError(f"Cayley table is not associative at ({i},{j},{k})")
        inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if table[i][j] == identity and table[j][i] == identity:
                    inverse[i] = j
                    break
            if inverse[i] is None:
                raise ValueError(f"element {i} has no inverse")
        self.order = n
        self.cayley = table
        self.identity_index = identity
        self._inverse = tuple(inverse)

    def mul(self, i: int, j: int) -> int:
        return self.cayley[i][j]

    def inverse(self, i: int) -> int:
        return self._inverse[i]

    def is_abelian(self) -> bool:
        n = self.order
        return all(self.cayley[i][j] == self.cayley[j][i] for i in range(n) for j in range(n))

    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        seen = [False] * n
        classes = []
        for x in range(n):
            if seen[x]:
                continue
            orbit = {self.mul(self.mul(g, x), self.inverse(g)) for g in range(n)}
            for y in orbit:
                seen[y] = True
            classes.append(tuple(sorted(orbit)))
        return tuple(sorted(classes))

    def __repr__(self) -> str:
        return f"FiniteGroup(order={self.order})"


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise ValueError("group order must be at least 1")
    return FiniteGroup([[(i + j) % n for j in range(n)] for i in range(n)])


def symmetric_group(n: int) -> FiniteGroup:
    """S_n on {0..n-1}; elements are permutations in lexicographic order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[s]] for s in range(n))] for q in perms]
        for p in perms
    ]
    return FiniteGroup(table)


def dihedral_group(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: rotations r^k and reflections r^k s."""
    if n < 1:
        raise ValueError("n must be at least 1")
    order = 2 * n

    def encode(k: int, f: int) -> int:
        return k % n + n * f

    table = []
    for x in range(order):
        a, e = x % n, x // n
        row = []
        for y in range(order):
            b, f = y % n, y // n
            row.append(encode(a + (b if e == 0 else -b), (e + f) % 2))
        table.append(row)
    return FiniteGroup(table)


# -- constructors of the standard families ----------------------------------

def build_matrix_algebra(n: int) -> FinAlgebra:
    """Full matrix algebra M_n with basis e_pq (row-major), e_pq e_rs = [q=r] e_ps."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    d = n * n

    def idx(p: int, q: int) -> int:
        return p * n + q

    c = [[[_ZERO] * d for _ in range(d)] for _ in range(d)]
    for p in range(n):
        for q in range(n):
            for s in range(n):
                c[idx(p, q)][idx(q, s)][idx(p, s)] = _ONE
    unit = [_ZERO] * d
    for p in range(n):
        unit[idx(p, p)] = _ONE
    labels = [f"e{p + 1}{q + 1}" for p in range(n) for q in range(n)]
    return FinAlgebra(c, unit, labels)


def build_upper_triangular(n: int) -> FinAlgebra:
    """Upper-triangular n x n matrices; dim n(n+1)/2, unital."""
    if n < 1:
        raise ValueError("matrix size must be at least 1")
    positions = [(p, q) for p in range(n) for q in range(p, n)]
    index = {pq: i for i, pq in enumerate(positions)}
    d = len(positions)
    c = [[[_ZERO] * d for _ in range(d)] for _ in range(d)]
    for (p, q), i in index.items():
        for (r, s), j in index.items():
            if q == r:
                c[i][j][index[(p, s)]] = _ONE
    unit = [_ZERO] * d
    for p in range(n):
        unit[index[(p, p)]] = _ONE
    labels = [f"e{p + 1}{q + 1}" for p, q in positions]
    return FinAlgebra(c, unit, labels)


def build_group_algebra(g: FiniteGroup) -> FinAlgebra:
    """Group algebra Q[G]: basis indexed by G, product from the Cayley table."""
    n = g.order
    c = [[[_ZERO] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c[i][j][g.mul(i, j)] = _ONE
    unit = [_ZERO] * n
    unit[g.identity_index] = _ONE
    return FinAlgebra(c, unit, [f"g{i}" for i in range(n)])


def direct_product(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    """A x B with componentwise product; unital iff both factors are."""
    da, db = a.dim, b.dim
    d = da + db
    c = [[[_ZERO] * d for _ in range(d)] for _ in range(d)]
    for i in range(da):
        for j in range(da):
            row = c[i][j]
            for k, coef in a._pairs[i][j]:
                row[k] = coef
    for i in range(db):
        for j in range(db):
            row = c[da + i][da + j]
            for k, coef in b._pairs[i][j]:
                row[da + k] = coef
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = tuple(a.unit) + tuple(b.unit)
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [f"l_{s}" for s in a.labels] + [f"r_{s}" for s in b.labels]
    return FinAlgebra(c, unit, labels)


def tensor_product(a: FinAlgebra, b: FinAlgebra) -> FinAlgebra:
    """A (x) B on the lexicographic basis b_i (x) b_j, (x(x)y)(x'(x)y') = xx'(x)yy'."""
    da, db = a.dim, b.dim
    d = da * db
    c = [[[_ZERO] * d for _ in range(d)] for _ in range(d)]
    for i1 in range(da):
        for i2 in range(da):
            pa = a._pairs[i1][i2]
            if not pa:
                continue
            for j1 in range(db):
                x1 = i1 * db + j1
                for j2 in range(db):
                    pb = b._pairs[j1][j2]
                    if not pb:
                        continue
                    row = c[x1][i2 * db + j2]
                    for k1, alpha in pa:
                        for k2, beta in pb:
                            row[k1 * db + k2] += alpha * beta
    unit = None
    if a.unit is not None and b.unit is not None:
        unit = [_ZERO] * d
        for i, x in enumerate(a.unit):
            if x:
                for j, y in enumerate(b.unit):
                    if y:
                        unit[i * db + j] = x * y
    labels = None
    if a.labels is not None and b.labels is not None:
        labels = [f"{s}*{t}" for s in a.labels for t in b.labels]
    return FinAlgebra(c, unit, labels)


def adjoin_unit(a: FinAlgebra) -> FinAlgebra:
    """Adjoin a fresh unit at index 0; the original algebra embeds at 1..dim.

    Applies to unital input as well, in which case the old unit becomes a
    non-identity idempotent.
    """
    d = a.dim + 1
    c = [[[_ZERO] * d for _ in range(d)] for _ in range(d)]
    c[0][0][0] = _ONE
    for i in range(a.dim):
        c[0][i + 1][i + 1] = _ONE
        c[i + 1][0][i + 1] = _ONE
        for j in range(a.dim):
            row = c[i + 1][j + 1]
            for k, coef in a._pairs[i][j]:
                row[k + 1] = coef
    unit = [_ONE] + [_ZERO] * a.dim
    labels = None if a.labels is None else ["one"] + list(a.labels)
    return FinAlgebra(c, unit, labels)


def center(a: FinAlgebra) -> Subspace:
    """{x : x b_i = b_i x for all i}, computed as a kernel."""
    d = a.dim
    c = a.c

    def rows():
        for i in range(d):
            for k in range(d):
                row = []
                for j in range(d):
                    coef = c[j][i][k] - c[i][j][k]
                    if coef:
                        row.append((j, coef))
                if row:
                    yield row

    return kernel_from_constraints(d, rows())


def quotient_algebra(a: FinAlgebra, ideal: Subspace) -> FinAlgebra:
    """The quotient A / I for a two-sided ideal I, on the non-pivot coordinates.

    Coset representatives are the standard basis vectors at the non-pivot
    columns of the ideal's canonical basis; products are reduced modulo I.
    """
    if ideal.ambient_dim != a.dim:
        raise ValueError("ideal lives in a different ambient space")
    for u in ideal.basis:
        for i in range(a.dim):
            if not ideal.contains_vector(a._basis_mul_vec(i, u, "left")):
                raise ValueError("subspace is not a left ideal")
            if not ideal.contains_vector(a._basis_mul_vec(i, u, "right")):
                raise ValueError("subspace is not a right ideal")
    pivot_set = set(ideal.pivots)
    keep = [q for q in range(a.dim) if q not in pivot_set]
    m = len(keep)
    c = [[[_ZERO] * m for _ in range(m)] for _ in range(m)]
    for s, qs in enumerate(keep):
        for t, qt in enumerate(keep):
            reduced = ideal.reduce_vector(a.c[qs][qt])
            c[s][t] = [reduced[q] for q in keep]
    unit = None
    if a.unit is not None and m > 0:
        reduced = ideal.reduce_vector(a.unit)
        if any(reduced):
            unit = [reduced[q] for q in keep]
    labels = None if a.labels is None else [a.labels[q] for q in keep]
    return FinAlgebra(c, unit, labels)
