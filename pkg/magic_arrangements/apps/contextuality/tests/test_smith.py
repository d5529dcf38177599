import ddt
from django.test import SimpleTestCase
from factory.random import randgen, reseed_random
from sympy import Matrix
from sympy.matrices.normalforms import invariant_factors as sympy_invariant_factors

from magic_arrangements.apps.contextuality.smith import (
    identity,
    invariant_factors,
    mat_mul,
    mat_vec,
    smith_normal_form,
    solve_mod_system,
    vec_mat,
)


def random_matrix(rows, columns, bound=4):
    return [[randgen.randint(-bound, bound) for _ in range(columns)] for _ in range(rows)]


@ddt.ddt
class SmithNormalFormTests(SimpleTestCase):

    def setUp(self):
        super().setUp()
        reseed_random(20240917)

    def assert_smith(self, matrix, columns):
        smith = smith_normal_form(matrix, columns=columns)
        rows = len(matrix)
        assert mat_mul(mat_mul(smith.u, matrix, columns), smith.v, columns) == smith.diagonal_matrix()
        assert mat_mul(smith.u, smith.u_inverse, rows) == identity(rows)
        assert mat_mul(smith.v, smith.v_inverse, columns) == identity(columns)
        nonzero = [entry for entry in smith.diagonal if entry]
        assert all(entry >= 0 for entry in smith.diagonal)
        assert smith.diagonal[:len(nonzero)] == nonzero
        for first, second in zip(nonzero, nonzero[1:]):
            assert second % first == 0
        return smith

    @ddt.data((1, 1), (2, 3), (3, 2), (4, 4), (5, 3), (6, 7))
    @ddt.unpack
    def test_random_matrices(self, rows, columns):
        for _ in range(10):
            self.assert_smith(random_matrix(rows, columns), columns)

    def test_known_diagonal(self):
        smith = self.assert_smith([[12, 6, 4], [3, 9, 6], [2, 16, 14]], 3)
        assert smith.diagonal == [1, 10, 30]

    def test_empty_matrix(self):
        smith = smith_normal_form([], columns=3)
        assert smith.diagonal == []
        assert smith.rank == 0
        assert invariant_factors([], columns=3) == [0, 0, 0]

    def test_transposed(self):
        matrix = random_matrix(3, 5)
        smith = smith_normal_form(matrix, columns=5).transposed()
        columns_of_transpose = 3
        transposed = [list(row) for row in zip(*matrix)]
        assert mat_mul(mat_mul(smith.u, transposed, columns_of_transpose), smith.v, columns_of_transpose) == \
            smith.diagonal_matrix()

    def test_invariant_factors_match_sympy(self):
        for _ in range(25):
            rows, columns = randgen.randint(1, 5), randgen.randint(1, 5)
            matrix = random_matrix(rows, columns, bound=6)
            ours = [factor for factor in smith_normal_form(matrix, columns=columns).diagonal if factor]
            theirs = [abs(int(factor)) for factor in sympy_invariant_factors(Matrix(matrix)) if factor]
            assert ours == sorted(theirs)


@ddt.ddt
class SolveModTests(SimpleTestCase):

    def setUp(self):
        super().setUp()
        reseed_random(7)

    @ddt.data(2, 3, 4, 6, 12)
    def test_solution_or_witness(self, d):
        for _ in range(40):
            rows, columns = randgen.randint(1, 4), randgen.randint(1, 4)
            matrix = random_matrix(rows, columns)
            rhs = [randgen.randrange(d) for _ in range(rows)]
            outcome = solve_mod_system(matrix, rhs, d, columns=columns)
            if outcome.feasible:
                assert [value % d for value in mat_vec(matrix, outcome.solution)] == [value % d for value in rhs]
            else:
                assert all(value % d == 0 for value in vec_mat(outcome.witness, matrix, columns))
                assert sum(y * b for y, b in zip(outcome.witness, rhs)) % d != 0

    def test_composite_modulus(self):
        # 2x = 1 has no solution mod 4, 2x = 2 does
        assert not solve_mod_system([[2]], [1], 4).feasible
        outcome = solve_mod_system([[2]], [2], 4)
        assert outcome.feasible
        assert 2 * outcome.solution[0] % 4 == 2
