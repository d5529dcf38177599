"""
The two-term chain complex of an arrangement and the classical realizability decision dc = tau.
"""
import itertools
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Tuple

from django.conf import settings

from magic_arrangements.apps.contextuality.complex2 import (
    boundary_matrix,
    vertex_boundary_matrix,
)
from magic_arrangements.apps.contextuality.constants import (
    FEASIBLE,
    INFEASIBLE,
    TOO_LARGE,
)
from magic_arrangements.apps.contextuality.smith import (
    SmithForm,
    cokernel_invariants,
    smith_normal_form,
    solve_mod,
    transpose,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ChainData:
    """
    Boundary matrix D_2 -> D_1 of an arrangement (or of a realization) with its integer Smith form.

    ``boundary`` has one row per label and one column per context; entry (a, C) is the
    signed number of occurrences of a in C.
    """
    labels: Tuple[str, ...]
    contexts: Tuple[str, ...]
    boundary: List[List[int]] = field(hash=False)
    d: int
    smith: SmithForm = field(hash=False)

    def system_matrix(self):
        """
        The coboundary as a |M| x |L| matrix, so that ``system_matrix() * c == dc``.
        """
        return transpose(self.boundary, len(self.contexts))

    def system_smith(self):
        return self.smith.transposed()


@dataclass(frozen=True)
class ClassicalSolution:
    values: Dict[str, int] = field(hash=False)
    checked: Optional[int] = None
    status = FEASIBLE

    @property
    def feasible(self):
        return True

    def as_dict(self):
        data = {'status': self.status, 'solution': dict(self.values)}
        if self.checked is not None:
            data['candidates_checked'] = self.checked
        return data


@dataclass(frozen=True)
class Infeasible:
    """
    No classical realization exists.

    ``witness`` is a vector y over the contexts with y . dc == 0 for every c and y . tau != 0 (mod d).
    The exhaustive oracle sets ``checked`` instead.
    """
    witness: Optional[List[int]] = field(default=None, hash=False)
    checked: Optional[int] = None
    status = INFEASIBLE

    @property
    def feasible(self):
        return False

    def as_dict(self):
        data = {'status': self.status}
        if self.witness is not None:
            data['witness'] = list(self.witness)
        if self.checked is not None:
            data['candidates_checked'] = self.checked
        return data


@dataclass(frozen=True)
class TooLarge:
    space: int
    cap: int
    status = TOO_LARGE

    feasible = None

    def as_dict(self):
        return {'status': self.status, 'search_space': self.space, 'cap': self.cap}


def build_chain(arr):
    boundary = [[0] * len(arr.contexts) for _ in arr.labels]
    row_of = {label: row for row, label in enumerate(arr.labels)}
    for column, context in enumerate(arr.contexts):
        for occurrence in context.elements:
            boundary[row_of[occurrence.label]][column] += occurrence.sign
    smith = smith_normal_form(boundary, columns=len(arr.contexts))
    return ChainData(
        labels=tuple(arr.labels),
        contexts=arr.context_ids(),
        boundary=boundary,
        d=arr.d,
        smith=smith,
    )


def complex_chain(complex2, d):
    """
    The same two-term complex read off the face boundaries of a realization.
    """
    boundary = boundary_matrix(complex2)
    return ChainData(
        labels=complex2.edge_ids(),
        contexts=complex2.face_ids(),
        boundary=boundary,
        d=d,
        smith=smith_normal_form(boundary, columns=len(complex2.faces)),
    )


def coboundary(arr, values):
    """
    Evaluate dc on every context.

    Arguments:
        values (dict): label -> residue.
    Returns:
        list of residues mod d, in context order.
    """
    return [
        sum(occurrence.sign * values[occurrence.label] for occurrence in context.elements) % arr.d
        for context in arr.contexts
    ]


def is_classical_solution(arr, values):
    return coboundary(arr, values) == [tau % arr.d for tau in arr.tau_vector()]


def _restricted_smith(system, columns):
    return smith_normal_form([row[:columns] for row in system], columns=columns)


def solve_classical(arr, chain=None):
    """
    Decide dc = tau over Z_d.

    The returned solution is the first one the exhaustive oracle would meet, i.e. the least
    assignment when the last label is the most significant digit.

    Returns:
        ClassicalSolution or Infeasible (with witness).
    """
    chain = chain or build_chain(arr)
    d = arr.d
    tau = arr.tau_vector()
    outcome = solve_mod(chain.system_smith(), tau, d)
    if not outcome.feasible:
        logger.info('Classical system mod %d is infeasible', d)
        return Infeasible(witness=outcome.witness)

    system = chain.system_matrix()
    fixed = {}
    for column in reversed(range(len(arr.labels))):
        smith = _restricted_smith(system, column)
        for value in range(d):
            rhs = [
                tau[row] - value * system[row][column]
                - sum(system[row][other] * fixed[other] for other in fixed)
                for row in range(len(system))
            ]
            if solve_mod(smith, rhs, d).feasible:
                fixed[column] = value
                break
        else:  # pragma: no cover
            raise AssertionError('feasible system lost a solution while fixing {}'.format(arr.labels[column]))

    values = {label: fixed[column] for column, label in enumerate(arr.labels)}
    logger.info('Classical system mod %d is feasible', d)
    return ClassicalSolution(values=values)


def brute_force_classical(arr, cap=None):
    """
    Enumerate every assignment c: L -> Z_d, first label as the least significant digit.

    Returns:
        ClassicalSolution, Infeasible (no witness) or TooLarge when d ** |L| exceeds ``cap``.
    """
    cap = settings.ORACLE_CAP if cap is None else cap
    space = arr.d ** len(arr.labels)
    if space > cap:
        logger.info('Oracle search space %d exceeds the cap %d', space, cap)
        return TooLarge(space=space, cap=cap)

    tau = [value % arr.d for value in arr.tau_vector()]
    checked = 0
    for candidate in itertools.product(range(arr.d), repeat=len(arr.labels)):
        checked += 1
        values = dict(zip(arr.labels, reversed(candidate)))
        if coboundary(arr, values) == tau:
            return ClassicalSolution(values=values, checked=checked)
    return Infeasible(checked=checked)


def cohomology_rank(chain, d):
    """
    Cyclic factors of H^2 = coker(delta: D^1 -> D^2) over Z_d.

    Returns:
        list of orders, each > 1; empty when H^2 vanishes.
    """
    diagonal = chain.smith.diagonal
    factors = [gcd(entry, d) for entry in diagonal]
    factors.extend([d] * (len(chain.contexts) - len(diagonal)))
    return [factor for factor in factors if factor > 1]


def cellular_homology(complex2):
    """
    H_1(X; Z) from the Smith forms of the cellular boundaries d_1 and d_2.

    Returns:
        torsion factors followed by a 0 per free summand, the same shape as ``pi1.abelianization``.
    """
    edges, faces = len(complex2.edges), len(complex2.faces)
    d1 = vertex_boundary_matrix(complex2)
    d2 = boundary_matrix(complex2)
    smith1 = smith_normal_form(d1, columns=edges)
    rank1 = smith1.rank
    # d_2 written in the basis V1; the rows past rank1 span ker d_1
    d2_in_kernel = [
        [sum(smith1.v_inverse[row][k] * d2[k][column] for k in range(edges)) for column in range(faces)]
        for row in range(rank1, edges)
    ]
    smith2 = smith_normal_form(d2_in_kernel, columns=faces)
    factors = cokernel_invariants(smith2.diagonal, edges - rank1)
    logger.debug('Cellular H1 of a complex with %d edges: %s', edges, factors)
    return factors
