"""Shared fixtures: the standard algebra corpus, random generators, and
independent closure/nilpotency checks used as oracles."""

from fractions import Fraction
from functools import lru_cache
from random import Random

import finalg as fa

# Names of the corpus members with zero radical (semisimple over Q).
SEMIPRIME_NAMES = {"M2", "M3", "QC2", "QS3", "QD4", "M2xQC2", "M2tQC2"}


@lru_cache(maxsize=1)
def corpus():
    m2 = fa.build_matrix_algebra(2)
    qc2 = fa.build_group_algebra(fa.cyclic_group(2))
    return (
        ("M2", m2),
        ("M3", fa.build_matrix_algebra(3)),
        ("QC2", qc2),
        ("QS3", fa.build_group_algebra(fa.symmetric_group(3))),
        ("QD4", fa.build_group_algebra(fa.dihedral_group(4))),
        ("M2xQC2", fa.direct_product(m2, qc2)),
        ("M2tQC2", fa.tensor_product(m2, qc2)),
        ("T2", fa.build_upper_triangular(2)),
        ("T3", fa.build_upper_triangular(3)),
    )


def corpus_algebra(name):
    return dict(corpus())[name]


def zero_product_algebra(dim=1):
    zero = Fraction(0)
    c = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
    return fa.FinAlgebra(c)


def random_algebra(rng: Random) -> fa.FinAlgebra:
    """A seeded random pick from the constructor families, dimension <= 9."""
    m2 = fa.build_matrix_algebra(2)
    t2 = fa.build_upper_triangular(2)
    small = [
        m2,
        t2,
        fa.build_matrix_algebra(1),
        fa.build_upper_triangular(3),
        fa.build_group_algebra(fa.cyclic_group(rng.randint(1, 4))),
        fa.build_group_algebra(fa.symmetric_group(3)),
        fa.build_group_algebra(fa.dihedral_group(3)),
    ]
    kind = rng.randrange(5)
    if kind == 0:
        return rng.choice(small)
    if kind == 1:
        left = rng.choice(small)
        right = rng.choice(small)
        if left.dim + right.dim <= 9:
            return fa.direct_product(left, right)
        return left
    if kind == 2:
        right = rng.choice([t2, fa.build_group_algebra(fa.cyclic_group(2))])
        return fa.tensor_product(m2, right) if right.dim * 4 <= 12 else m2
    if kind == 3:
        return fa.adjoin_unit(rng.choice([t2, zero_product_algebra(rng.randint(1, 2))]))
    return fa.adjoin_unit(rng.choice(small[:4]))


def random_subspace(a: fa.FinAlgebra, rng: Random, rank: int) -> fa.Subspace:
    rows = [fa.random_element(a, rng).coeffs for _ in range(rank)]
    return fa.Subspace.from_rows(a.dim, rows)


def is_ideal_direct(a: fa.FinAlgebra, sub: fa.Subspace) -> bool:
    """Closure check by direct multiplication, independent of the fixed-point
    solver: b_i * u and u * b_i stay inside sub for every basis pair."""
    for u in sub.basis:
        uel = a.element(u)
        for i in range(a.dim):
            b = a.basis_element(i)
            if not sub.contains_vector((b * uel).coeffs):
                return False
            if not sub.contains_vector((uel * b).coeffs):
                return False
    return True


def power_chain_dims(a: fa.FinAlgebra, sub: fa.Subspace, limit: int) -> list[int]:
    """Dimensions of sub, sub^2, ... where sub^{k+1} is spanned by products of
    sub-basis elements with sub^k-basis elements; stops at zero or the limit."""
    dims = [sub.dim]
    current = sub
    for _ in range(limit):
        rows = []
        for u in sub.basis:
            for v in current.basis:
                rows.append(a._mul_vec(u, v))
        current = fa.Subspace.from_rows(a.dim, rows)
        dims.append(current.dim)
        if current.dim == 0:
            break
    return dims


def matrix_trace(n: int, vec) -> Fraction:
    """Trace of a coefficient vector on the row-major matrix-unit basis."""
    return sum((vec[p * n + p] for p in range(n)), Fraction(0))


def conjugation_map(a: fa.FinAlgebra, group: fa.FiniteGroup, g: int) -> fa.Mat:
    """x -> g x g^{-1} on a group algebra: a basis permutation."""
    ginv = group.inverse(g)
    images = [
        a.basis_element(group.mul(group.mul(g, h), ginv)) for h in range(group.order)
    ]
    return fa.map_from_basis_images(a, images)


def random_invertible(a: fa.FinAlgebra, rng: Random) -> fa.Element:
    while True:
        u = fa.random_element(a, rng)
        if a.mult_operator(u, "left").rank() == a.dim:
            return u


def inner_automorphism_map(a: fa.FinAlgebra, u: fa.Element) -> fa.Mat:
    """x -> u x u^{-1} for invertible u."""
    left = a.mult_operator(u, "left")
    inv = fa.solve_affine(left, a.unit).particular
    return left * a.mult_operator(inv, "right")
