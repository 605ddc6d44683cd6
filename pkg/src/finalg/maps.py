"""Linear self-maps of an algebra: derivation-type subspaces and checks.

Linear maps are square `Mat` values acting on coefficient columns, so the
j-th column is the image of basis element b_j.  Spaces of maps are
subspaces of Q^(dim^2) under row-major flattening.

Quantified identities ("for all x") are decided exactly by polarization:
over the rationals a homogeneous identity of degree d holds for all x iff
all of its multilinear symmetrizations over basis d-tuples hold, which
turns each identity into finitely many linear constraints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .algebras import Element, FinAlgebra, random_element
from .linalg import Infeasible, Mat, Subspace, Vec, kernel_from_constraints, solve_affine
from .structure import commutator_subspace, is_commutator_simple, is_semiprime

_ZERO = Fraction(0)
_ONE = Fraction(1)

VERDICT_VERIFIED = "verified"
VERDICT_HYPOTHESES_NOT_MET = "hypotheses-not-met"
VERDICT_REFUTATION = "REFUTATION"

LOCAL_TEST_CAVEAT = (
    "a pass certifies only the sampled points (sound for refutation, "
    "incomplete for verification)"
)


def flatten_map(t: Mat) -> Vec:
    return tuple(x for row in t.data for x in row)


def unflatten_map(flat, dim: int) -> Mat:
    values = list(flat)
    if len(values) != dim * dim:
        raise ValueError("flattened map has wrong length")
    return Mat([values[r * dim : (r + 1) * dim] for r in range(dim)])


def apply_map(t: Mat, x: Element) -> Element:
    return Element(x.algebra, t.apply(x.coeffs))


def map_from_basis_images(a: FinAlgebra, images) -> Mat:
    """The matrix whose j-th column is the coefficient vector of image j."""
    cols = [img.coeffs if isinstance(img, Element) else tuple(img) for img in images]
    if len(cols) != a.dim or any(len(col) != a.dim for col in cols):
        raise ValueError("need one image of length dim per basis element")
    return Mat([[cols[j][k] for j in range(a.dim)] for k in range(a.dim)])


def scaled_identity_map(dim: int, factor) -> Mat:
    return Mat.identity(dim).scaled(factor)


def transpose_map(n: int) -> Mat:
    """e_pq -> e_qp on the row-major matrix-unit basis of M_n."""
    d = n * n
    m = [[_ZERO] * d for _ in range(d)]
    for p in range(n):
        for q in range(n):
            m[q * n + p][p * n + q] = _ONE
    return Mat(m)


def _square_check(a: FinAlgebra, t: Mat) -> None:
    if t.rows != a.dim or t.cols != a.dim:
        raise ValueError("map matrix must be dim x dim for this algebra")


@dataclass(frozen=True)
class MapSpace:
    """A linear space of maps, stored as a subspace of Q^(dim^2)."""

    algebra_dim: int
    space: Subspace

    def __post_init__(self):
        if self.space.ambient_dim != self.algebra_dim ** 2:
            raise ValueError("map space must live in Q^(dim^2)")

    @property
    def dim(self) -> int:
        return self.space.dim

    def contains_map(self, t: Mat) -> bool:
        return self.space.contains_vector(flatten_map(t))

    def basis_maps(self) -> tuple[Mat, ...]:
        return tuple(unflatten_map(row, self.algebra_dim) for row in self.space.basis)

    @classmethod
    def full(cls, algebra_dim: int) -> "MapSpace":
        return cls(algebra_dim, Subspace.full(algebra_dim ** 2))


def _bump(row: dict[int, Fraction], idx: int, value: Fraction) -> None:
    cur = row.get(idx)
    if cur is None:
        row[idx] = value
    else:
        cur += value
        if cur:
            row[idx] = cur
        else:
            del row[idx]


def derivation_space(a: FinAlgebra) -> MapSpace:
    """Solutions of D(b_i b_j) = D(b_i) b_j + b_i D(b_j) over all basis pairs."""
    d = a.dim
    c = a.c

    def rows():
        for i in range(d):
            ci = c[i]
            for j in range(d):
                pij = a._pairs[i][j]
                for k in range(d):
                    row: dict[int, Fraction] = {}
                    for t, coef in pij:
                        _bump(row, k * d + t, coef)
                    for q in range(d):
                        x = c[q][j][k]
                        if x:
                            _bump(row, q * d + i, -x)
                        y = ci[q][k]
                        if y:
                            _bump(row, q * d + j, -y)
                    if row:
                        yield row.items()

    return MapSpace(d, kernel_from_constraints(d * d, rows()))


def inner_derivation_space(a: FinAlgebra) -> MapSpace:
    """The span of the maps ad_{b_k} : x -> [x, b_k] = x b_k - b_k x."""
    d = a.dim
    rows = []
    for k in range(d):
        m = [[_ZERO] * d for _ in range(d)]
        for j in range(d):
            for t, coef in a._pairs[j][k]:
                m[t][j] += coef
            for t, coef in a._pairs[k][j]:
                m[t][j] -= coef
        rows.append([x for r in m for x in r])
    return MapSpace(d, Subspace.from_rows(d * d, rows))


def jordan_derivation_space(a: FinAlgebra) -> MapSpace:
    """Solutions of the symmetrized identity
    D(b_i b_j + b_j b_i) = D(b_i) b_j + b_i D(b_j) + D(b_j) b_i + b_j D(b_i),
    the polarization of D(x^2) = D(x) x + x D(x) over the infinite field."""
    d = a.dim
    c = a.c

    def rows():
        for i in range(d):
            for j in range(i, d):
                for k in range(d):
                    row: dict[int, Fraction] = {}
                    for t, coef in a._pairs[i][j]:
                        _bump(row, k * d + t, coef)
                    for t, coef in a._pairs[j][i]:
                        _bump(row, k * d + t, coef)
                    for q in range(d):
                        x = c[q][j][k] + c[j][q][k]
                        if x:
                            _bump(row, q * d + i, -x)
                        y = c[q][i][k] + c[i][q][k]
                        if y:
                            _bump(row, q * d + j, -y)
                    if row:
                        yield row.items()

    return MapSpace(d, kernel_from_constraints(d * d, rows()))


def derivation_criterion_space(a: FinAlgebra) -> MapSpace:
    """Maps D with D(x) x and D(x) x^2 in [A, A] for every x.

    Encoded exactly by polarization: the degree-2 identity becomes
    D(b_i) b_j + D(b_j) b_i in [A,A] for i <= j, the degree-3 identity
    becomes the full symmetrization over triples i <= j <= k.  Each
    membership is a linear constraint modulo the commutator subspace.
    On semiprime commutator-simple algebras these maps are exactly the
    derivations.
    """
    d = a.dim
    c = a.c
    commutators = commutator_subspace(a)
    functionals = commutators.annihilator().basis
    if not functionals:
        return MapSpace.full(d)

    def rows():
        for f in functionals:
            # fc[q][r] = f(b_q b_r)
            fc = [
                [
                    sum((coef * f[k] for k, coef in a._pairs[q][r] if f[k]), _ZERO)
                    for r in range(d)
                ]
                for q in range(d)
            ]
            for i in range(d):
                for j in range(i, d):
                    row: dict[int, Fraction] = {}
                    for q in range(d):
                        v = fc[q][j]
                        if v:
                            _bump(row, q * d + i, v)
                        w = fc[q][i]
                        if w:
                            _bump(row, q * d + j, w)
                    if row:
                        yield row.items()
            # g[q][t][u] = f(b_q (b_t b_u))
            g = [
                [
                    [
                        sum((coef * fc[q][r] for r, coef in a._pairs[t][u] if fc[q][r]), _ZERO)
                        for u in range(d)
                    ]
                    for t in range(d)
                ]
                for q in range(d)
            ]
            for i in range(d):
                for j in range(i, d):
                    for k in range(j, d):
                        row = {}
                        for s, t, u in itertools.permutations((i, j, k)):
                            for q in range(d):
                                v = g[q][t][u]
                                if v:
                                    _bump(row, q * d + s, v)
                        if row:
                            yield row.items()

    return MapSpace(d, kernel_from_constraints(d * d, rows()))


@dataclass(frozen=True)
class TheoremCheck:
    name: str
    passed: bool
    detail: str = ""


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of a hypotheses-then-conclusion verification run.

    ``verdict`` is "verified", "hypotheses-not-met", or "REFUTATION"; a
    refutation always carries a concrete re-checkable witness.
    """

    checks: tuple[TheoremCheck, ...]
    spaces: dict[str, int]
    verdict: str
    witness: dict | None = None


def _leibniz_violation(a: FinAlgebra, t: Mat) -> tuple[int, int, Vec, Vec] | None:
    """First basis pair where t fails D(xy) = D(x)y + xD(y), with both sides."""
    d = a.dim
    images = [t.column(j) for j in range(d)]
    for i in range(d):
        for j in range(d):
            lhs = t.apply(a.c[i][j])
            rhs = tuple(
                x + y
                for x, y in zip(
                    a._mul_vec(images[i], _basis_vec(d, j)),
                    a._mul_vec(_basis_vec(d, i), images[j]),
                )
            )
            if lhs != rhs:
                return (i, j, lhs, rhs)
    return None


def _basis_vec(d: int, i: int) -> Vec:
    return tuple(_ONE if s == i else _ZERO for s in range(d))


def _criterion_violation(a: FinAlgebra, t: Mat) -> dict | None:
    """First polarized membership constraint that t fails, with the residual."""
    d = a.dim
    commutators = commutator_subspace(a)
    images = [t.column(j) for j in range(d)]
    basis = [_basis_vec(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i, d):
            expr = tuple(
                x + y
                for x, y in zip(
                    a._mul_vec(images[i], basis[j]), a._mul_vec(images[j], basis[i])
                )
            )
            if not commutators.contains_vector(expr):
                return {"degree": 2, "tuple": (i, j), "value": expr}
    for i in range(d):
        for j in range(i, d):
            for k in range(j, d):
                total = [_ZERO] * d
                for s, u, v in itertools.permutations((i, j, k)):
                    term = a._mul_vec(images[s], a.c[u][v])
                    for idx, x in enumerate(term):
                        if x:
                            total[idx] += x
                if not commutators.contains_vector(total):
                    return {"degree": 3, "tuple": (i, j, k), "value": tuple(total)}
    return None


def verify_derivation_criterion(a: FinAlgebra) -> VerificationReport:
    """On a semiprime, commutator-simple algebra, the maps with
    D(x)x, D(x)x^2 in [A,A] are exactly the derivations; check that the two
    spaces agree.  A disagreement under the hypotheses is a refutation and
    carries a witness map."""
    semiprime = is_semiprime(a)
    simplicity = is_commutator_simple(a)
    derivations = derivation_space(a)
    criterion = derivation_criterion_space(a)
    inner = inner_derivation_space(a)
    checks = (
        TheoremCheck("semiprime", semiprime, "radical is zero" if semiprime else "radical is nonzero"),
        TheoremCheck(
            "commutator-simple",
            bool(simplicity),
            "" if simplicity else simplicity.witness.certificate,
        ),
    )
    spaces = {
        "inner-derivations": inner.dim,
        "derivations": derivations.dim,
        "criterion-maps": criterion.dim,
    }
    if not (semiprime and simplicity):
        return VerificationReport(checks, spaces, VERDICT_HYPOTHESES_NOT_MET)
    if criterion.space == derivations.space:
        return VerificationReport(checks, spaces, VERDICT_VERIFIED)
    witness: dict | None = None
    for m in criterion.basis_maps():
        if not derivations.contains_map(m):
            violation = _leibniz_violation(a, m)
            witness = {
                "direction": "criterion map is not a derivation",
                "map": [list(row) for row in m.data],
                "pair": violation[:2] if violation else None,
                "lhs": violation[2] if violation else None,
                "rhs": violation[3] if violation else None,
            }
            break
    if witness is None:
        for m in derivations.basis_maps():
            if not criterion.contains_map(m):
                witness = {
                    "direction": "derivation fails a polarized membership",
                    "map": [list(row) for row in m.data],
                    "violation": _criterion_violation(a, m),
                }
                break
    return VerificationReport(checks, spaces, VERDICT_REFUTATION, witness)


def pointwise_inner_witness(a: FinAlgebra, d_map: Mat, x: Element) -> Element:
    """Some m with [x, m] = d(x), or Infeasible when no such m exists."""
    _square_check(a, d_map)
    a._element_check(x)
    system = a.mult_operator(x, "left") - a.mult_operator(x, "right")
    solution = solve_affine(system, d_map.apply(x.coeffs))
    return a.element(solution.particular)


@dataclass(frozen=True)
class LocalDerivationResult:
    passed: bool
    counterexample: Element | None
    points_tested: int
    caveat: str = LOCAL_TEST_CAVEAT

    def __bool__(self) -> bool:
        return self.passed


def local_derivation_test(a: FinAlgebra, d_map: Mat, seed: int, samples: int) -> LocalDerivationResult:
    """Sampling test of the local-derivation property: for each tested x,
    is d(x) the value at x of some derivation?

    Tests the unit (when present), every basis element, and ``samples``
    seeded random elements.  Failures are conclusive counterexamples; a
    pass certifies only the sampled set.
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    _square_check(a, d_map)
    basis_maps = derivation_space(a).basis_maps()
    rng = Random(seed)
    points: list[Element] = []
    if a.unit is not None:
        points.append(a.unit_element())
    points.extend(a.basis_element(i) for i in range(a.dim))
    points.extend(random_element(a, rng) for _ in range(samples))
    tested = 0
    for x in points:
        tested += 1
        target = d_map.apply(x.coeffs)
        columns = [e.apply(x.coeffs) for e in basis_maps]
        system = Mat(
            [[col[k] for col in columns] for k in range(a.dim)], cols=len(columns)
        )
        try:
            solve_affine(system, target)
        except Infeasible:
            return LocalDerivationResult(False, x, tested)
    return LocalDerivationResult(True, None, tested)


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: dict | None = None

    def __bool__(self) -> bool:
        return self.ok


def jordan_homomorphism_check(a: FinAlgebra, t: Mat) -> CheckResult:
    """Polarized exact check of T(x^2) = T(x)^2:
    T(b_i b_j + b_j b_i) = T(b_i)T(b_j) + T(b_j)T(b_i) for all i <= j."""
    _square_check(a, t)
    d = a.dim
    images = [t.column(j) for j in range(d)]
    for i in range(d):
        for j in range(i, d):
            lhs = t.apply(tuple(x + y for x, y in zip(a.c[i][j], a.c[j][i])))
            prod_ij = a._mul_vec(images[i], images[j])
            prod_ji = a._mul_vec(images[j], images[i])
            rhs = tuple(x + y for x, y in zip(prod_ij, prod_ji))
            if lhs != rhs:
                return CheckResult(False, {"pair": (i, j), "lhs": lhs, "rhs": rhs})
    return CheckResult(True)


def multiplicativity_check(a: FinAlgebra, t: Mat, mode: str) -> CheckResult:
    """T(b_i b_j) = T(b_i)T(b_j) (homomorphism) or T(b_j)T(b_i) (antihomomorphism)."""
    if mode not in ("homomorphism", "antihomomorphism"):
        raise ValueError("mode must be 'homomorphism' or 'antihomomorphism'")
    _square_check(a, t)
    d = a.dim
    images = [t.column(j) for j in range(d)]
    for i in range(d):
        for j in range(d):
            lhs = t.apply(a.c[i][j])
            if mode == "homomorphism":
                rhs = a._mul_vec(images[i], images[j])
            else:
                rhs = a._mul_vec(images[j], images[i])
            if lhs != rhs:
                return CheckResult(False, {"pair": (i, j), "lhs": lhs, "rhs": rhs})
    return CheckResult(True)


def cubic_condition_check(a: FinAlgebra, t: Mat) -> CheckResult:
    """Exact polarized check of T(x)^3 - x^3 in [A, A] for every x.

    Over the rationals the quantified statement is equivalent to the full
    symmetrization over basis triples i <= j <= k.
    """
    _square_check(a, t)
    d = a.dim
    commutators = commutator_subspace(a)
    images = [t.column(j) for j in range(d)]
    timage_products: dict[tuple[int, int], Vec] = {}

    def tprod(x: int, y: int) -> Vec:
        key = (x, y)
        got = timage_products.get(key)
        if got is None:
            got = a._mul_vec(images[x], images[y])
            timage_products[key] = got
        return got

    basis = [_basis_vec(d, i) for i in range(d)]
    for i in range(d):
        for j in range(i, d):
            for k in range(j, d):
                total = [_ZERO] * d
                for x, y, z in itertools.permutations((i, j, k)):
                    mapped = a._mul_vec(tprod(x, y), images[z])
                    plain = a._mul_vec(a.c[x][y], basis[z])
                    for idx in range(d):
                        delta = mapped[idx] - plain[idx]
                        if delta:
                            total[idx] += delta
                if not commutators.contains_vector(total):
                    return CheckResult(
                        False, {"triple": (i, j, k), "value": tuple(total)}
                    )
    return CheckResult(True)


def verify_jordan_criterion(a: FinAlgebra, t: Mat) -> VerificationReport:
    """On a commutator-simple unital algebra, a surjective map with T(1) = 1
    and T(x)^3 - x^3 in [A,A] must be a Jordan homomorphism; check it.

    When the hypotheses hold, the report also records whether the map is
    multiplicative or antimultiplicative.
    """
    _square_check(a, t)
    unital = a.unit is not None
    simplicity = is_commutator_simple(a)
    rank = t.rank()
    surjective = rank == a.dim
    unit_preserved = unital and t.apply(a.unit) == a.unit
    cubic = cubic_condition_check(a, t)
    checks = [
        TheoremCheck("unital", unital),
        TheoremCheck(
            "commutator-simple",
            bool(simplicity),
            "" if simplicity else simplicity.witness.certificate,
        ),
        TheoremCheck("surjective", surjective, f"rank {rank} of {a.dim}"),
        TheoremCheck("unit-preserved", unit_preserved),
        TheoremCheck(
            "cubic-condition",
            cubic.ok,
            "" if cubic.ok else f"fails at basis triple {cubic.witness['triple']}",
        ),
    ]
    spaces = {"commutators": commutator_subspace(a).dim, "rank": rank}
    if not (unital and simplicity and surjective and unit_preserved and cubic.ok):
        return VerificationReport(tuple(checks), spaces, VERDICT_HYPOTHESES_NOT_MET)
    homo = multiplicativity_check(a, t, "homomorphism")
    anti = multiplicativity_check(a, t, "antihomomorphism")
    checks.append(TheoremCheck("homomorphism", homo.ok))
    checks.append(TheoremCheck("antihomomorphism", anti.ok))
    jordan = jordan_homomorphism_check(a, t)
    if jordan.ok:
        return VerificationReport(tuple(checks), spaces, VERDICT_VERIFIED)
    witness = dict(jordan.witness)
    witness["direction"] = "cubic condition held but the Jordan identity fails"
    return VerificationReport(tuple(checks), spaces, VERDICT_REFUTATION, witness)


@dataclass(frozen=True)
class SimilaritySearch:
    status: str  # "witness" | "infeasible" | "inconclusive"
    witness: Element | None = None


def inner_similarity_witness(
    a: FinAlgebra, x: Element, target: Element, rng: Random, trials: int = 20
) -> SimilaritySearch:
    """Search for invertible u with u x u^{-1} = target.

    Solves the linear intertwining system u x = target u; a zero solution
    space is a definite "infeasible".  Otherwise the unit (when it lies in
    the solution space), the solution basis vectors, and ``trials`` seeded
    random combinations are tested for invertibility (full rank of left
    multiplication); exhausting them is inconclusive.
    """
    if a.unit is None:
        raise ValueError("inner similarity needs a unital algebra")
    a._element_check(x)
    a._element_check(target)
    system = a.mult_operator(x, "right") - a.mult_operator(target, "left")
    kernel = system.kernel()
    if not kernel:
        return SimilaritySearch("infeasible")
    span = Subspace.from_rows(a.dim, kernel)

    def invertible(u: Vec) -> bool:
        return any(u) and a.mult_operator(u, "left").rank() == a.dim

    candidates: list[Vec] = []
    if span.contains_vector(a.unit):
        candidates.append(a.unit)
    candidates.extend(kernel)
    for u in candidates:
        if invertible(u):
            return SimilaritySearch("witness", a.element(u))
    for _ in range(trials):
        weights = [Fraction(rng.randint(-9, 9)) for _ in kernel]
        u = [_ZERO] * a.dim
        for w, vec in zip(weights, kernel):
            if w:
                for idx, val in enumerate(vec):
                    if val:
                        u[idx] += w * val
        if invertible(tuple(u)):
            return SimilaritySearch("witness", a.element(u))
    return SimilaritySearch("inconclusive")


@dataclass(frozen=True)
class InnerAutoSample:
    label: str
    point: Element
    status: str
    witness: Element | None


def local_inner_automorphism_test(
    a: FinAlgebra,
    t: Mat,
    seed: int,
    samples: int,
    invertibility_trials: int = 20,
) -> tuple[InnerAutoSample, ...]:
    """Per-point feasibility of t(x) = u x u^{-1} on the unit, the basis, and
    ``samples`` seeded random points.  Statuses are "witness" (with the u
    found), "infeasible" (no intertwiner at all), or "inconclusive" (no
    invertible intertwiner found within the trial budget)."""
    if a.unit is None:
        raise ValueError("local inner-automorphism testing needs a unital algebra")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    _square_check(a, t)
    rng = Random(seed)
    points: list[tuple[str, Element]] = [("unit", a.unit_element())]
    points.extend((f"basis-{i}", a.basis_element(i)) for i in range(a.dim))
    points.extend((f"random-{s}", random_element(a, rng)) for s in range(samples))
    results = []
    for label, x in points:
        target = apply_map(t, x)
        found = inner_similarity_witness(a, x, target, rng, invertibility_trials)
        results.append(InnerAutoSample(label, x, found.status, found.witness))
    return tuple(results)
