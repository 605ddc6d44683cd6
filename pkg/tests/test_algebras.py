from fractions import Fraction
from random import Random

import pytest

import finalg as fa
from helpers import corpus, random_algebra, zero_product_algebra

F = Fraction


class TestMatrixAlgebra:
    def test_rejects_zero_size(self):
        with pytest.raises(ValueError):
            fa.build_matrix_algebra(0)

    def test_n1_is_the_field(self):
        a = fa.build_matrix_algebra(1)
        assert a.dim == 1
        assert a.is_unital
        x, y = a.element([F(2, 3)]), a.element([F(3)])
        assert x * y == y * x == a.element([F(2)])

    def test_n2_unit(self):
        a = fa.build_matrix_algebra(2)
        assert a.dim == 4
        assert a.unit == (F(1), F(0), F(0), F(1))

    def test_matrix_unit_product_rule(self):
        a = fa.build_matrix_algebra(2)
        e11, e12, e21, e22 = (a.basis_element(i) for i in range(4))
        assert e12 * e21 == e11
        assert e21 * e12 == e22
        assert (e12 * e12).is_zero()

    def test_left_mult_rank_of_e11(self):
        # Oracle: images of the four matrix units under left multiplication by
        # e11 are e11, e12, 0, 0, so exactly two are independent.
        a = fa.build_matrix_algebra(2)
        e11 = a.basis_element(0)
        images = [(e11 * a.basis_element(j)).coeffs for j in range(4)]
        assert images[0] == a.basis_element(0).coeffs
        assert images[1] == a.basis_element(1).coeffs
        assert not any(images[2]) and not any(images[3])
        assert a.mult_operator(e11, "left").rank() == 2


class TestGroupAlgebra:
    def test_c2_is_commutative(self):
        a = fa.build_group_algebra(fa.cyclic_group(2))
        assert a.dim == 2
        g0, g1 = a.basis_element(0), a.basis_element(1)
        assert g0 * g1 == g1 * g0 == g1
        assert g1 * g1 == g0

    def test_s3_is_noncommutative(self):
        group = fa.symmetric_group(3)
        a = fa.build_group_algebra(group)
        assert a.dim == 6
        noncommuting = any(
            group.mul(i, j) != group.mul(j, i)
            for i in range(6)
            for j in range(6)
        )
        assert noncommuting
        i, j = next(
            (i, j)
            for i in range(6)
            for j in range(6)
            if group.mul(i, j) != group.mul(j, i)
        )
        assert a.basis_element(i) * a.basis_element(j) != a.basis_element(j) * a.basis_element(i)

    def test_basis_products_follow_cayley(self):
        group = fa.dihedral_group(4)
        a = fa.build_group_algebra(group)
        for i in range(group.order):
            for j in range(group.order):
                prod = a.basis_element(i) * a.basis_element(j)
                assert prod == a.basis_element(group.mul(i, j))

    def test_unit_is_group_identity(self):
        group = fa.symmetric_group(3)
        a = fa.build_group_algebra(group)
        assert a.unit == a.basis_element(group.identity_index).coeffs


class TestFiniteGroup:
    def test_column_permutation_enforced(self):
        with pytest.raises(ValueError, match="not a permutation"):
            fa.FiniteGroup([[0, 1], [0, 1]])

    def test_identity_required(self):
        # Latin square on {0,1,2} with no identity row/column pair.
        with pytest.raises(ValueError, match="identity"):
            fa.FiniteGroup([[1, 0, 2], [0, 2, 1], [2, 1, 0]])

    def test_nonassociative_loop_rejected(self):
        # Smallest loop that is not a group: order 5, identity 0, but
        # (1*1)*2 = 2 while 1*(1*2) = 4.
        table = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(ValueError, match="associative"):
            fa.FiniteGroup(table)

    def test_declared_identity_validated(self):
        fa.FiniteGroup([[0, 1], [1, 0]], identity_index=0)
        with pytest.raises(ValueError, match="identity"):
            fa.FiniteGroup([[0, 1], [1, 0]], identity_index=1)

    def test_conjugacy_classes_s3(self):
        classes = fa.symmetric_group(3).conjugacy_classes()
        assert len(classes) == 3
        assert sorted(len(c) for c in classes) == [1, 2, 3]

    def test_conjugacy_classes_d4(self):
        classes = fa.dihedral_group(4).conjugacy_classes()
        assert len(classes) == 5
        assert sorted(len(c) for c in classes) == [1, 1, 2, 2, 2]

    def test_inverse(self):
        g = fa.dihedral_group(3)
        for i in range(g.order):
            assert g.mul(i, g.inverse(i)) == g.identity_index


class TestUpperTriangular:
    def test_rejects_zero_size(self):
        with pytest.raises(ValueError):
            fa.build_upper_triangular(0)

    def test_n1_is_the_field(self):
        assert fa.build_upper_triangular(1).dim == 1

    def test_n2_basis(self):
        a = fa.build_upper_triangular(2)
        assert a.dim == 3
        assert a.labels == ("e11", "e12", "e22")
        assert a.unit == (F(1), F(0), F(1))

    def test_e12_spans_a_square_zero_ideal(self):
        a = fa.build_upper_triangular(2)
        e12 = a.basis_element(1)
        assert (e12 * e12).is_zero()
        line = fa.Subspace.from_rows(3, [e12.coeffs])
        for i in range(3):
            b = a.basis_element(i)
            assert line.contains_vector((b * e12).coeffs)
            assert line.contains_vector((e12 * b).coeffs)

    def test_nilpotent_left_multiplication(self):
        a = fa.build_upper_triangular(2)
        left = a.mult_operator(a.basis_element(1), "left")
        assert left * left == fa.Mat.zeros(3, 3)


class TestAssociativityValidation:
    def test_corrupted_tensor_rejected_with_triple(self):
        good = fa.build_matrix_algebra(2)
        c = [[list(row) for row in plane] for plane in good.c]
        c[0][1][2] += 1
        with pytest.raises(fa.AssociativityError) as excinfo:
            fa.FinAlgebra(c)
        i, j, k = excinfo.value.triple
        # Re-evaluate both sides at the reported triple straight from the
        # corrupted constants.
        dim = 4
        left = [F(0)] * dim
        for t in range(dim):
            for s in range(dim):
                left[s] += c[i][j][t] * c[t][k][s]
        right = [F(0)] * dim
        for t in range(dim):
            for s in range(dim):
                right[s] += c[j][k][t] * c[i][t][s]
        assert tuple(left) == excinfo.value.left
        assert tuple(right) == excinfo.value.right
        assert left != right

    def test_bad_unit_rejected(self):
        a = fa.build_matrix_algebra(2)
        with pytest.raises(ValueError, match="unit"):
            fa.FinAlgebra(a.c, unit=[1, 1, 0, 1])


class TestElementArithmetic:
    def test_bilinearity_zero(self):
        rng = Random(0)
        for _, a in corpus():
            x = fa.random_element(a, rng)
            assert (x * a.zero()).is_zero()
            assert (a.zero() * x).is_zero()

    def test_mixed_algebra_rejected(self):
        a = fa.build_matrix_algebra(2)
        b = fa.build_upper_triangular(2)
        with pytest.raises(ValueError):
            a.basis_element(0) * b.basis_element(0)

    def test_powers(self):
        a = fa.build_matrix_algebra(2)
        x = a.element([1, 2, 0, 3])
        assert x ** 1 == x
        assert x ** 2 == x * x
        assert x ** 0 == a.unit_element()

    def test_random_element_is_seed_deterministic(self):
        a = fa.build_matrix_algebra(2)
        assert fa.random_element(a, Random(5)) == fa.random_element(a, Random(5))


class TestMultOperator:
    def test_unit_gives_identity(self):
        for _, a in corpus():
            if a.is_unital:
                assert a.mult_operator(a.unit_element(), "left") == fa.Mat.identity(a.dim)
                assert a.mult_operator(a.unit_element(), "right") == fa.Mat.identity(a.dim)

    def test_multiplicative_on_random_pairs(self):
        rng = Random(1)
        pool = [a for _, a in corpus()]
        for trial in range(100):
            a = pool[trial % len(pool)]
            x = fa.random_element(a, rng)
            y = fa.random_element(a, rng)
            lx = a.mult_operator(x, "left")
            ly = a.mult_operator(y, "left")
            assert a.mult_operator(x * y, "left") == lx * ly
            rx = a.mult_operator(x, "right")
            ry = a.mult_operator(y, "right")
            assert a.mult_operator(x * y, "right") == ry * rx

    def test_operator_agrees_with_multiply(self):
        rng = Random(2)
        for _, a in corpus():
            x = fa.random_element(a, rng)
            y = fa.random_element(a, rng)
            assert a.mult_operator(x, "left").apply(y.coeffs) == (x * y).coeffs
            assert a.mult_operator(x, "right").apply(y.coeffs) == (y * x).coeffs


class TestProducts:
    def test_direct_product_dimensions_add(self):
        m2 = fa.build_matrix_algebra(2)
        qc2 = fa.build_group_algebra(fa.cyclic_group(2))
        assert fa.direct_product(m2, qc2).dim == 6

    def test_componentwise_annihilation(self):
        m2 = fa.build_matrix_algebra(2)
        qc2 = fa.build_group_algebra(fa.cyclic_group(2))
        p = fa.direct_product(m2, qc2)
        left = p.element([1, 2, 3, 4, 0, 0])
        right = p.element([0, 0, 0, 0, 5, 6])
        assert (left * right).is_zero()
        assert (right * left).is_zero()

    def test_product_units(self):
        m2 = fa.build_matrix_algebra(2)
        qc2 = fa.build_group_algebra(fa.cyclic_group(2))
        p = fa.direct_product(m2, qc2)
        assert p.unit == tuple(m2.unit) + tuple(qc2.unit)
        t = fa.tensor_product(m2, qc2)
        expected = [F(0)] * 8
        for i, x in enumerate(m2.unit):
            for j, y in enumerate(qc2.unit):
                expected[i * 2 + j] = x * y
        assert t.unit == tuple(expected)

    def test_tensor_dimensions_multiply(self):
        m2 = fa.build_matrix_algebra(2)
        assert fa.tensor_product(m2, m2).dim == 16

    def test_tensor_product_rule(self):
        m2 = fa.build_matrix_algebra(2)
        qc2 = fa.build_group_algebra(fa.cyclic_group(2))
        t = fa.tensor_product(m2, qc2)
        # (e12 (x) g1)(e21 (x) g1) = e11 (x) g0
        x = t.basis_element(1 * 2 + 1)
        y = t.basis_element(2 * 2 + 1)
        assert x * y == t.basis_element(0)


class TestAdjoinUnit:
    def test_dimension_grows_by_one(self):
        t2 = fa.build_upper_triangular(2)
        assert fa.adjoin_unit(t2).dim == 4

    def test_commutators_unchanged_in_old_coordinates(self):
        t2 = fa.build_upper_triangular(2)
        extended = fa.adjoin_unit(t2)
        old = fa.commutator_subspace(t2)
        embedded = fa.Subspace.from_rows(4, [(F(0),) + row for row in old.basis])
        assert fa.commutator_subspace(extended) == embedded

    def test_zero_algebra_generator_still_squares_to_zero(self):
        extended = fa.adjoin_unit(zero_product_algebra(1))
        assert extended.dim == 2
        x = extended.basis_element(1)
        assert (x * x).is_zero()
        assert extended.unit_element() * x == x

    def test_embedded_copy_is_an_ideal(self):
        for base in (fa.build_upper_triangular(2), fa.build_matrix_algebra(2)):
            extended = fa.adjoin_unit(base)
            embedded = fa.Subspace.from_rows(
                extended.dim,
                [fa.Mat.identity(extended.dim).data[i] for i in range(1, extended.dim)],
            )
            for i in range(extended.dim):
                b = extended.basis_element(i)
                for j in range(1, extended.dim):
                    u = extended.basis_element(j)
                    assert embedded.contains_vector((b * u).coeffs)
                    assert embedded.contains_vector((u * b).coeffs)

    def test_old_unit_becomes_idempotent_not_identity(self):
        m1 = fa.build_matrix_algebra(1)
        extended = fa.adjoin_unit(m1)
        old_unit = extended.basis_element(1)
        assert old_unit * old_unit == old_unit
        assert old_unit != extended.unit_element()


class TestCenter:
    def test_center_of_m2_is_scalars(self):
        a = fa.build_matrix_algebra(2)
        z = fa.center(a)
        assert z.dim == 1
        assert z.contains_vector(a.unit)

    def test_center_of_commutative_is_everything(self):
        a = fa.build_group_algebra(fa.cyclic_group(4))
        assert fa.center(a) == fa.Subspace.full(4)

    def test_center_of_qs3_is_class_sums(self):
        group = fa.symmetric_group(3)
        a = fa.build_group_algebra(group)
        z = fa.center(a)
        classes = group.conjugacy_classes()
        assert z.dim == len(classes) == 3
        for cls in classes:
            vec = [F(0)] * 6
            for g in cls:
                vec[g] = F(1)
            assert z.contains_vector(vec)


class TestQuotient:
    def test_t2_modulo_radical(self):
        t2 = fa.build_upper_triangular(2)
        rad = fa.radical(t2)
        q = fa.quotient_algebra(t2, rad)
        assert q.dim == 2
        assert q.is_unital
        x, y = q.basis_element(0), q.basis_element(1)
        assert x * y == y * x

    def test_non_ideal_rejected(self):
        a = fa.build_matrix_algebra(2)
        line = fa.Subspace.from_rows(4, [(1, 0, 0, 0)])
        with pytest.raises(ValueError, match="ideal"):
            fa.quotient_algebra(a, line)

    def test_quotient_by_whole_algebra_is_zero_dimensional(self):
        a = zero_product_algebra(2)
        q = fa.quotient_algebra(a, fa.Subspace.full(2))
        assert q.dim == 0


class TestRandomConstructions:
    def test_random_algebras_validate(self):
        rng = Random(7)
        for _ in range(25):
            a = random_algebra(rng)
            assert a.dim <= 12
            if a.is_unital:
                assert a.unit_element() * a.basis_element(0) == a.basis_element(0)
