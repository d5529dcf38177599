"""
Integer Smith normal form and linear systems over Z_d.

Everything here works on plain lists of Python ints, so entries never overflow
however large the unimodular transforms get.
"""
import logging
from dataclasses import dataclass
from math import gcd
from typing import List, Optional

from magic_arrangements.apps.contextuality.utils import modinv


logger = logging.getLogger(__name__)


def identity(size):
    return [[int(i == j) for j in range(size)] for i in range(size)]


def transpose(matrix, columns=None):
    if not matrix:
        return [[] for _ in range(columns or 0)]
    return [list(column) for column in zip(*matrix)]


def mat_mul(left, right, columns=None):
    """
    Multiply ``left`` (m x k) by ``right`` (k x p). ``columns`` gives p when k == 0.
    """
    if right:
        columns = len(right[0])
    columns = columns or 0
    return [
        [sum(row[k] * right[k][j] for k in range(len(right))) for j in range(columns)]
        for row in left
    ]


def mat_vec(matrix, vector):
    return [sum(entry * value for entry, value in zip(row, vector)) for row in matrix]


def vec_mat(vector, matrix, columns):
    return [sum(vector[i] * matrix[i][j] for i in range(len(matrix))) for j in range(columns)]


@dataclass(frozen=True)
class SmithForm:
    """
    ``u * matrix * v == diag(diagonal)`` with ``u``, ``v`` unimodular.

    ``diagonal`` has min(rows, columns) entries, non-negative, each dividing the next,
    zeros last. ``u_inverse`` and ``v_inverse`` are tracked alongside so that kernels and
    transposes never need a matrix inversion.
    """
    rows: int
    columns: int
    u: List[List[int]]
    u_inverse: List[List[int]]
    v: List[List[int]]
    v_inverse: List[List[int]]
    diagonal: List[int]

    @property
    def rank(self):
        return sum(1 for entry in self.diagonal if entry)

    def diagonal_matrix(self):
        return [
            [self.diagonal[i] if i == j else 0 for j in range(self.columns)]
            for i in range(self.rows)
        ]

    def transposed(self):
        """
        Smith form of the transposed matrix: v^T A^T u^T == S^T.
        """
        return SmithForm(
            rows=self.columns,
            columns=self.rows,
            u=transpose(self.v, self.columns),
            u_inverse=transpose(self.v_inverse, self.columns),
            v=transpose(self.u, self.rows),
            v_inverse=transpose(self.u_inverse, self.rows),
            diagonal=list(self.diagonal),
        )


def smith_normal_form(matrix, columns=None):
    """
    Diagonalize an integer matrix with unimodular row and column operations.

    Arguments:
        matrix (list of lists of int): m x n matrix.
        columns (int): n, required only when m == 0.
    Returns:
        a SmithForm.
    """
    rows = len(matrix)
    if columns is None:
        columns = len(matrix[0]) if rows else 0
    s = [[int(entry) for entry in row] for row in matrix]
    u, u_inv = identity(rows), identity(rows)
    v, v_inv = identity(columns), identity(columns)

    def add_row(target, source, factor):
        s[target] = [x + factor * y for x, y in zip(s[target], s[source])]
        u[target] = [x + factor * y for x, y in zip(u[target], u[source])]
        for row in u_inv:
            row[source] -= factor * row[target]

    def swap_rows(i, j):
        if i == j:
            return
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]
        for row in u_inv:
            row[i], row[j] = row[j], row[i]

    def negate_row(i):
        s[i] = [-x for x in s[i]]
        u[i] = [-x for x in u[i]]
        for row in u_inv:
            row[i] = -row[i]

    def add_column(target, source, factor):
        for row in s:
            row[target] += factor * row[source]
        for row in v:
            row[target] += factor * row[source]
        v_inv[source] = [x - factor * y for x, y in zip(v_inv[source], v_inv[target])]

    def swap_columns(i, j):
        if i == j:
            return
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        v_inv[i], v_inv[j] = v_inv[j], v_inv[i]

    t = 0
    while t < min(rows, columns):
        pivot = None
        for i in range(t, rows):
            for j in range(t, columns):
                if s[i][j] and (pivot is None or abs(s[i][j]) < abs(s[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_columns(t, pivot[1])

        while True:
            for i in range(t + 1, rows):
                while s[i][t]:
                    add_row(i, t, -(s[i][t] // s[t][t]))
                    if s[i][t]:
                        swap_rows(i, t)
            for j in range(t + 1, columns):
                while s[t][j]:
                    add_column(j, t, -(s[t][j] // s[t][t]))
                    if s[t][j]:
                        swap_columns(j, t)
            if any(s[i][t] for i in range(t + 1, rows)):
                continue
            offender = next(
                (
                    i for i in range(t + 1, rows)
                    if any(s[i][j] % s[t][t] for j in range(t + 1, columns))
                ),
                None,
            )
            if offender is None:
                break
            # pull the non-multiple into the pivot row; clearing it shrinks the pivot
            add_row(t, offender, 1)

        if s[t][t] < 0:
            negate_row(t)
        t += 1

    diagonal = [s[i][i] for i in range(min(rows, columns))]
    logger.debug('Smith form of a %dx%d matrix has rank %d', rows, columns, t)
    return SmithForm(rows=rows, columns=columns, u=u, u_inverse=u_inv, v=v, v_inverse=v_inv, diagonal=diagonal)


def cokernel_invariants(diagonal, dimension):
    """
    Invariant factors of Z^dimension modulo the image of a map with the given Smith diagonal.

    Returns:
        torsion factors (> 1, in divisibility order) followed by one 0 per free factor.
    """
    rank = sum(1 for entry in diagonal if entry)
    torsion = [entry for entry in diagonal if entry > 1]
    return torsion + [0] * (dimension - rank)


def invariant_factors(matrix, columns):
    """
    Invariant factors of the cokernel of ``matrix`` read as a map into Z^columns by rows.
    """
    smith = smith_normal_form(matrix, columns=columns)
    return cokernel_invariants(smith.diagonal, columns)


@dataclass(frozen=True)
class ModularSolution:
    """
    Either a solution x of A x = b (mod d) or a witness row y with y A = 0 and y b != 0 (mod d).
    """
    solution: Optional[List[int]]
    witness: Optional[List[int]]

    @property
    def feasible(self):
        return self.solution is not None


def solve_mod(smith, rhs, d):
    """
    Solve A x = rhs (mod d), given the integer Smith form of A.

    Works for composite d: each diagonal equation s_i y_i = b_i is solved in Z_d through
    gcd(s_i, d). When some b_i is not divisible by gcd(s_i, d), the scaled row
    (d / gcd) * U[i] is returned as the obstruction.
    """
    b = [entry % d for entry in mat_vec(smith.u, rhs)]
    y = [0] * smith.columns
    for i in range(smith.rows):
        s_i = smith.diagonal[i] if i < len(smith.diagonal) else 0
        g = gcd(s_i, d)
        if b[i] % g:
            witness = [(d // g) * entry % d for entry in smith.u[i]]
            return ModularSolution(solution=None, witness=witness)
        if s_i:
            modulus = d // g
            y[i] = (b[i] // g) * modinv(s_i // g, modulus) % modulus
    solution = [entry % d for entry in mat_vec(smith.v, y)]
    return ModularSolution(solution=solution, witness=None)


def solve_mod_system(matrix, rhs, d, columns=None):
    return solve_mod(smith_normal_form(matrix, columns=columns), rhs, d)
