"""The quotient module of the node: reduction, dimensions, actions, checks."""

import random
from fractions import Fraction

import pytest

from nodehilb.exact import Poly, span_solve
from nodehilb.nodemodule import (
    NodeClass,
    apply_generator,
    betti_table,
    dim_ambient,
    dim_piece,
    dim_submodule,
    fundamental_class,
    generation_checks,
    injectivity_checks,
    no_extension_witness,
    operator_matrix,
    piece_data,
    piece_monomials,
    reduce_poly,
    relation_matrix_checks,
    u_generator_exponents,
    u_generator_poly,
    u_preservation_checks,
)
from nodehilb.weyl import Generator

X1, X2, Y1, Y2 = Poly.x(2, 1), Poly.x(2, 2), Poly.y(2, 1), Poly.y(2, 2)

# the graded dimension table of the module, rows n = 0..5
KNOWN_ROWS = [
    [1],
    [1, 2],
    [1, 3, 3],
    [1, 4, 5, 4],
    [1, 5, 7, 7, 5],
    [1, 6, 9, 10, 9, 6],
]


class TestReduction:
    def test_x1_minus_x2_dies(self):
        assert reduce_poly(X1 - X2).is_zero()

    def test_y1_minus_y2_survives(self):
        # the submodule has no piece in bidegree (1, 2)
        assert u_generator_exponents(1, 2) == []
        cls = reduce_poly(Y1 - Y2)
        assert cls.rep == Y1 - Y2

    def test_difference_of_squares_dies(self):
        # oracle: x1^2 - x2^2 is an exact combination of submodule generators
        gens = [u_generator_poly(1, 0, 0), u_generator_poly(0, 1, 0)]
        assert span_solve(gens, X1**2 - X2**2) == [1, 1]
        assert reduce_poly(X1**2 - X2**2).is_zero()

    def test_reduce_is_idempotent_and_linear(self):
        rng = random.Random(12)
        for _ in range(200):
            n, j = rng.randrange(6), rng.randrange(6)
            if j > n:
                continue
            p = _random_piece_element(rng, n, 2 * j)
            q = _random_piece_element(rng, n, 2 * j)
            rp = reduce_poly(p, (n, 2 * j))
            assert reduce_poly(rp.rep, (n, 2 * j)).rep == rp.rep
            rq = reduce_poly(q, (n, 2 * j))
            assert reduce_poly(p + q, (n, 2 * j)).rep == rp.rep + rq.rep

    def test_kernel_of_reduce_is_exactly_the_submodule(self):
        for n in range(7):
            for j in range(n + 1):
                d = 2 * j
                killed = [
                    e
                    for e in piece_monomials(n, d)
                    if reduce_poly(Poly.monomial(2, e), (n, d)).rep
                    != Poly.monomial(2, e)
                ]
                # pivot monomials are in bijection with the submodule rank
                assert len(killed) == dim_submodule(n, d)
                for a, b, s in u_generator_exponents(n, d):
                    assert reduce_poly(u_generator_poly(a, b, s), (n, d)).is_zero()

    def test_inhomogeneous_rejected(self):
        with pytest.raises(ValueError):
            reduce_poly(X1 + X1**2)

    def test_zero_needs_grade(self):
        with pytest.raises(ValueError):
            reduce_poly(Poly.zero(2))
        assert reduce_poly(Poly.zero(2), (3, 2)).is_zero()


def _random_piece_element(rng, n, d):
    coeffs = {}
    for e in piece_monomials(n, d):
        if rng.random() < 0.4:
            coeffs[e] = Fraction(rng.randrange(-5, 6), rng.randrange(1, 3))
    return Poly(2, coeffs)


class TestDimensions:
    def test_rows_zero_to_five(self):
        table = betti_table(5)
        for n, expected in enumerate(KNOWN_ROWS):
            assert [table[n][j] for j in range(n + 1)] == expected

    def test_empty_subscheme(self):
        assert dim_piece(0, 0) == 1

    def test_row_two_column_one(self):
        assert dim_piece(2, 2) == 3

    def test_row_five_column_three(self):
        assert dim_piece(5, 6) == 10

    def test_odd_degree_rejected(self):
        with pytest.raises(ValueError):
            dim_piece(3, 3)

    def test_out_of_range_is_zero(self):
        assert dim_piece(-1, 0) == 0
        assert dim_piece(2, 6) == 0

    def test_ambient_minus_submodule(self):
        for n in range(10):
            for j in range(n + 1):
                d = 2 * j
                assert dim_piece(n, d) == dim_ambient(n, d) - dim_submodule(n, d)

    def test_submodule_spanning_set_is_independent(self):
        for n in range(10):
            for j in range(n + 1):
                # rank equals the number of listed generators
                assert dim_submodule(n, 2 * j) == len(u_generator_exponents(n, 2 * j))

    def test_diagonal_dimension_counts_components(self):
        for n in range(11):
            assert dim_piece(n, 2 * n) == n + 1

    def test_rows_match_closed_form_series(self):
        # cross-module oracle: the generating-function route
        from nodehilb.series import closed_form_pv

        closed = closed_form_pv(10)
        table = betti_table(10)
        for n in range(11):
            for j in range(n + 1):
                assert table[n][j] == closed.c[n][j]


class TestAction:
    def test_mu_plus_on_unit(self):
        one = reduce_poly(Poly.one(2), (0, 0))
        out = apply_generator(Generator("mu+"), one)
        assert out.rep == Y1 + Y2 and (out.n, out.d) == (1, 2)

    def test_d1_on_y1y2(self):
        v = reduce_poly(Y1 * Y2, (2, 4))
        out = apply_generator(Generator("d", 1), v)
        assert out.rep == Y2 and (out.n, out.d) == (1, 2)

    def test_mu_minus_on_x1sq_x2(self):
        # derivative gives 2 x1 x2 + x1^2; its canonical representative is
        # 3 x2^2 since x1^2 and x1 x2 are pivot monomials of the submodule
        v = reduce_poly(X1**2 * X2, (3, 0))
        out = apply_generator(Generator("mu-"), v)
        assert out.rep == reduce_poly(2 * X1 * X2 + X1**2, (2, 0)).rep
        assert out.rep == 3 * X2**2

    def test_acting_into_negative_points_gives_zero(self):
        one = reduce_poly(Poly.one(2), (0, 0))
        assert apply_generator(Generator("mu-"), one).is_zero()
        assert apply_generator(Generator("d", 1), one).is_zero()

    def test_bad_generator_index(self):
        one = reduce_poly(Poly.one(2), (0, 0))
        with pytest.raises(ValueError):
            apply_generator(Generator("x", 3), one)


class TestFundamentalClasses:
    def test_small_cases(self):
        assert fundamental_class(1, 1).rep == Y1
        assert fundamental_class(2, 1).rep == Y1 * Y2
        assert fundamental_class(3, 2).rep == Y1**2 * Y2 * Fraction(1, 2)

    def test_k_out_of_range(self):
        with pytest.raises(ValueError):
            fundamental_class(2, 3)

    def test_mu_minus_annihilates_diagonal(self):
        # on the top-degree row there is nothing below: degree reasons
        for n in range(6):
            for k in range(n + 1):
                out = apply_generator(Generator("mu-"), fundamental_class(n, k))
                assert out.is_zero()

    def test_mu_plus_is_symmetric_multiplication(self):
        for n in range(5):
            for k in range(n + 1):
                fc = fundamental_class(n, k)
                out = apply_generator(Generator("mu+"), fc)
                assert out.rep == fundamental_class(n + 1, k + 1).rep * (k + 1) + (
                    fundamental_class(n + 1, k).rep * (n - k + 1)
                )

    def test_gysin_descent(self):
        # d1 sends the class with k on the first branch to the one with k-1
        for n in range(1, 6):
            for k in range(1, n + 1):
                out = apply_generator(Generator("d", 1), fundamental_class(n, k))
                assert out.rep == fundamental_class(n - 1, k - 1).rep
        for n in range(1, 6):
            for k in range(n):
                out = apply_generator(Generator("d", 2), fundamental_class(n, k))
                assert out.rep == fundamental_class(n - 1, k).rep


class TestGeneration:
    def test_diagonal_alone(self):
        # on the diagonal the fundamental classes themselves are a basis
        for n in range(6):
            data = piece_data(n, 2 * n)
            vectors = [fundamental_class(n, k).rep for k in range(n + 1)]
            for target_exps in data.basis:
                target = Poly.monomial(2, target_exps)
                assert span_solve(vectors, target) is not None

    def test_generation_to_six(self):
        checks = generation_checks(6)
        assert all(c.ok for c in checks)
        by_key = {(c.points, c.row): c for c in checks}
        assert by_key[(1, 0)].rank == 1 and by_key[(1, 0)].dim == 1
        assert by_key[(2, 1)].rank == 3 and by_key[(2, 1)].dim == 3


class TestNoExtension:
    def test_witness(self):
        w = no_extension_witness()
        assert w["witness_found"]
        assert w["symmetric_product_reduces_to"] == "0"

    def test_y1_alone_does_not_preserve_submodule(self):
        u = X1 - X2
        assert not reduce_poly(Y1 * u, (2, 2)).is_zero()
        assert not reduce_poly(Y2 * u, (2, 2)).is_zero()
        assert reduce_poly((Y1 + Y2) * u, (2, 2)).is_zero()

    def test_against_span_oracle(self):
        # bidegree (2, 2) of the submodule is spanned by (y1+y2)(x1-x2) alone;
        # y1(x1-x2) is not a multiple of it
        gens = [u_generator_poly(a, b, s) for a, b, s in u_generator_exponents(2, 2)]
        assert len(gens) == 1
        assert span_solve(gens, Y1 * (X1 - X2)) is None


class TestOperatorIdentities:
    def test_relation_matrices_to_six(self):
        checks = relation_matrix_checks(6)
        assert all(c.ok for c in checks), [c for c in checks if not c.ok]

    def test_injectivity_to_six(self):
        checks = injectivity_checks(6)
        assert all(c.ok for c in checks)

    def test_operator_matrix_shapes(self):
        mat = operator_matrix(Generator("x", 1), 1, 0)
        assert len(mat) == dim_piece(2, 0) and len(mat[0]) == dim_piece(1, 0)
        empty = operator_matrix(Generator("d", 1), 0, 0)
        assert empty == []

    def test_unit_commutator_on_one_piece(self):
        # [d1, mu+] as honest matrices on the (2, 2) piece
        from nodehilb.nodemodule import commutator_columns

        cols = commutator_columns(Generator("d", 1), Generator("mu+"), 2, 2)
        assert cols == [{i: 1} for i in range(dim_piece(2, 2))]


class TestUPreservation:
    def test_all_generators_preserve_submodule(self):
        rng = random.Random(60302)
        results = u_preservation_checks(100, rng)
        assert len(results) >= 600  # six generators per sample
        assert all(results)


class TestNodeClass:
    def test_coordinates_roundtrip(self):
        cls = reduce_poly(2 * Y1 * Y2 + Y1**2, (2, 4))
        data = piece_data(2, 4)
        coords = cls.coordinates()
        rebuilt = sum(
            (Poly.monomial(2, e) * c for e, c in zip(data.basis, coords)),
            Poly.zero(2),
        )
        assert rebuilt == cls.rep

    def test_str(self):
        cls = reduce_poly(Y1, (1, 2))
        assert str(cls) == "[y1] @ (n=1, d=2)"
