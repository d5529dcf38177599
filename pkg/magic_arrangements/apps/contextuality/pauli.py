"""
Exact generalized Pauli (Weyl-Heisenberg) operators and the realization checks built on them.

An operator is ``e^{i pi phase / d} * (X^a1 Z^b1 (x) ... (x) X^an Z^bn)``. Phases are kept mod 2d so
that square roots of omega = e^{2 pi i / d} such as Y = i XZ stay exact; site exponents are mod d.
On every site Z X = omega X Z, hence X^a Z^b . X^a' Z^b' = omega^(a' b) X^(a+a') Z^(b+b').
"""
import json
import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Tuple

from magic_arrangements.apps.contextuality.arrangement import load_json_document
from magic_arrangements.apps.contextuality.complex2 import (
    require_realization,
    reverse_orientation,
    walk,
)
from magic_arrangements.apps.contextuality.constants import COMMUTATIVE
from magic_arrangements.apps.contextuality.pi1 import (
    generator_loop,
    presentation,
)
from magic_arrangements.apps.contextuality.serializers import (
    OperatorAssignmentSerializer,
    validated_document,
)
from magic_arrangements.apps.contextuality.utils import CheckResult


logger = logging.getLogger(__name__)


class DimensionMismatch(ValueError):
    """
    Operators on different numbers of qudits, or of different local dimension, were combined.
    """


class RealizationRejected(ValueError):
    """
    The operator assignment is not a quantum realization of the arrangement.
    """


@dataclass(frozen=True)
class PauliOp:
    d: int
    phase: int
    sites: Tuple[Tuple[int, int], ...]

    @property
    def n(self):
        return len(self.sites)

    def is_scalar(self):
        return all(a == 0 and b == 0 for a, b in self.sites)

    def omega_exponent(self):
        """
        k such that this operator equals omega^k times the identity, or None.
        """
        if not self.is_scalar() or self.phase % 2:
            return None
        return self.phase // 2

    def __str__(self):
        body = ' '.join('X^{}Z^{}'.format(a, b) for a, b in self.sites)
        return 'e^(i pi {}/{}) {}'.format(self.phase, self.d, body)


def make_op(d, phase, sites):
    return PauliOp(d=d, phase=phase % (2 * d), sites=tuple((a % d, b % d) for a, b in sites))


def identity(n, d):
    return PauliOp(d=d, phase=0, sites=((0, 0),) * n)


def scalar(n, d, k):
    """
    omega^k times the identity.
    """
    return PauliOp(d=d, phase=(2 * k) % (2 * d), sites=((0, 0),) * n)


def _check_compatible(p, q):
    if p.d != q.d or p.n != q.n:
        raise DimensionMismatch(
            'Cannot combine an operator on {} qudits of dimension {} with one on {} of dimension {}'.format(
                p.n, p.d, q.n, q.d,
            )
        )


def multiply(p, q):
    _check_compatible(p, q)
    d = p.d
    # moving Z^b of p past X^a' of q costs omega^(a' b), i.e. 2 a' b in half-phase units
    phase = p.phase + q.phase + 2 * sum(b * a_next for (_, b), (a_next, _) in zip(p.sites, q.sites))
    sites = tuple(((a + a_next) % d, (b + b_next) % d) for (a, b), (a_next, b_next) in zip(p.sites, q.sites))
    return PauliOp(d=d, phase=phase % (2 * d), sites=sites)


def inverse(p):
    d = p.d
    phase = -p.phase + 2 * sum(a * b for a, b in p.sites)
    return PauliOp(d=d, phase=phase % (2 * d), sites=tuple(((-a) % d, (-b) % d) for a, b in p.sites))


def power(p, m):
    if m < 0:
        return power(inverse(p), -m)
    result, base = identity(p.n, p.d), p
    while m:
        if m & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        m >>= 1
    return result


def commutator(p, q):
    return multiply(multiply(p, q), multiply(inverse(p), inverse(q)))


def symplectic_form(p, q):
    _check_compatible(p, q)
    return sum(a * b_other - b * a_other for (a, b), (a_other, b_other) in zip(p.sites, q.sites)) % p.d


def commutes(p, q):
    return symplectic_form(p, q) == 0


def order_divides_d(p):
    return power(p, p.d) == identity(p.n, p.d)


def product(ops, n, d):
    result = identity(n, d)
    for op in ops:
        result = multiply(result, op)
    return result


@dataclass(frozen=True)
class OperatorAssignment:
    n: int
    d: int
    ops: Dict[str, PauliOp] = field(hash=False)

    def __getitem__(self, label):
        return self.ops[label]

    def identity(self):
        return identity(self.n, self.d)

    def scalar(self, k):
        return scalar(self.n, self.d, k)


def operators_from_data(data):
    validated = validated_document(OperatorAssignmentSerializer, data)
    d = validated['d']
    ops = {
        label: PauliOp(d=d, phase=op['phase'], sites=tuple((a, b) for a, b in op['sites']))
        for label, op in validated['ops'].items()
    }
    return OperatorAssignment(n=validated['n'], d=d, ops=ops)


def parse_operators(document):
    """
    Parse and validate an operator assignment document.

    Raises:
        ArrangementSyntaxError, rest_framework.serializers.ValidationError
    """
    assignment = operators_from_data(load_json_document(document))
    logger.debug('Parsed %d operators on %d qudits of dimension %d', len(assignment.ops), assignment.n, assignment.d)
    return assignment


def operators_to_data(assignment):
    return {
        'n': assignment.n,
        'd': assignment.d,
        'ops': {
            label: {'phase': op.phase, 'sites': [[a, b] for a, b in op.sites]}
            for label, op in assignment.ops.items()
        },
    }


def serialize_operators(assignment):
    return json.dumps(operators_to_data(assignment), indent=2, ensure_ascii=False) + '\n'


def context_product(context, assignment):
    return product(
        (power(assignment[item.label], item.sign) for item in context.elements),
        assignment.n,
        assignment.d,
    )


def verify_operator_realization(arr, assignment):
    """
    Orders divide d and each context's ordered signed product is omega^tau(C).

    Returns:
        CheckResult
    """
    result = CheckResult()
    if assignment.d != arr.d:
        result.add('assignment', 'd', 'operators are for d={} but the arrangement has d={}'.format(assignment.d, arr.d))
        return result

    missing = [label for label in arr.labels if label not in assignment.ops]
    for label in missing:
        result.add('label', label, 'no operator assigned')
    for label in arr.labels:
        if label not in missing and not order_divides_d(assignment[label]):
            result.add('label', label, 'T^d is not the identity')

    for context in arr.contexts:
        if any(label in missing for label in context.labels):
            continue
        found = context_product(context, assignment)
        if found != assignment.scalar(context.tau):
            result.add('context', context.id, 'product is {}, expected omega^{}'.format(found, context.tau))
    return result


def verify_quantum_realization(arr, assignment):
    """
    ``verify_operator_realization`` plus pairwise commutation inside every context.
    """
    result = verify_operator_realization(arr, assignment)
    if assignment.d != arr.d:
        return result
    for context in arr.contexts:
        for first, second in combinations(context.labels, 2):
            if first not in assignment.ops or second not in assignment.ops:
                continue
            if not commutes(assignment[first], assignment[second]):
                result.add('context', context.id, '{} and {} do not commute'.format(first, second))
    logger.info('Quantum realization check: %d violations', len(result.violations))
    return result


def path_operator(assignment, complex2, path, start=None):
    """
    Ordered product of T_e^(+1/-1) along an incidence-checked path; the empty path gives the identity.

    Raises:
        PathError
    """
    walk(complex2, path, start=start)
    return product(
        (power(assignment[edge_id], exponent) for edge_id, exponent in path),
        assignment.n,
        assignment.d,
    )


def check_face_identity(assignment, complex2, arr):
    """
    Every face boundary operator equals omega^tau of its context.

    Raises:
        InvalidRealization: ``complex2`` does not carry the contexts of ``arr``.
    """
    require_realization(arr, complex2, mode=COMMUTATIVE)
    result = CheckResult()
    for face in complex2.faces:
        tau = arr.context(face.context).tau
        found = path_operator(assignment, complex2, face.word)
        if found != assignment.scalar(tau):
            result.add('face', face.context, 'boundary operator is {}, expected omega^{}'.format(found, tau))
    return result


def power_realization(assignment, arr, m):
    """
    Raise every operator to the m-th power; the arrangement's constraints become m * tau.

    Raises:
        RealizationRejected: ``assignment`` is not a quantum realization of ``arr``.
    """
    check = verify_quantum_realization(arr, assignment)
    if not check.ok:
        raise RealizationRejected('Only quantum realizations can be raised to a power: {}'.format(
            '; '.join('{} {}: {}'.format(*violation) for violation in check.violations),
        ))
    powered = OperatorAssignment(
        n=assignment.n,
        d=assignment.d,
        ops={label: power(op, m) for label, op in assignment.ops.items()},
    )
    return powered, arr.with_tau([m * tau for tau in arr.tau_vector()])


def commutator_product(assignment, complex2, pairs, basepoint):
    """
    Product over ``pairs`` of the commutators of their loop operators at ``basepoint``.

    Raises:
        ValueError: a pair names a tree edge or an unknown edge.
    """
    pres = presentation(complex2, basepoint)
    unknown = sorted({name for pair in pairs for name in pair} - set(pres.generators))
    if unknown:
        raise ValueError('{} are not generators at {}; tree edges are {}'.format(unknown, basepoint, list(pres.tree)))
    total = assignment.identity()
    for first, second in pairs:
        total = multiply(total, commutator(
            path_operator(assignment, complex2, generator_loop(complex2, pres, first)),
            path_operator(assignment, complex2, generator_loop(complex2, pres, second)),
        ))
    return total


def commutator_identity(assignment, complex2, arr, pairs, basepoint):
    """
    The product of the commutators of loop operators over a symplectic basis equals omega^(sum tau).

    Arguments:
        pairs (list): (generator, generator) pairs of the fundamental group presentation at ``basepoint``.
    Returns:
        CheckResult with the computed product.
    Raises:
        ValueError: a pair names a tree edge or an unknown edge.
    """
    total = commutator_product(assignment, complex2, pairs, basepoint)
    tau_sum = sum(arr.tau_vector()) % arr.d
    result = CheckResult(product=str(total), omega_exponent=total.omega_exponent(), tau_sum=tau_sum)
    if total != assignment.scalar(tau_sum):
        result.add('surface', 'commutators', 'product is {}, expected omega^{}'.format(total, tau_sum))
    return result


def orientation_reversal_law(assignment, complex2, arr, pairs=None, basepoint=None):
    """
    Evaluate the realization on the orientation-reversed complex.

    Every reversed face must give the same scalar omega^tau(C) as before. With a symplectic basis
    ``pairs``, the commutator product over it on X and the product over the swapped pairs on the
    reversed complex must agree: the second is the inverse of the first, so agreement means
    omega^(2 tau(X)) = 1. Without ``pairs`` only the faces are checked.

    Returns:
        CheckResult; with ``pairs`` its details hold both products and their ratio.
    Raises:
        ValueError: a pair names a tree edge or an unknown edge.
        InvalidRealization: ``complex2`` does not carry the contexts of ``arr``.
    """
    require_realization(arr, complex2, mode=COMMUTATIVE)
    reversed_complex = reverse_orientation(complex2)
    tau_sum = sum(arr.tau_vector()) % arr.d
    result = CheckResult(tau_sum=tau_sum)
    for face in reversed_complex.faces:
        tau = arr.context(face.context).tau
        found = path_operator(assignment, reversed_complex, face.word)
        if found != assignment.scalar(tau):
            result.add('face', face.context, 'reversed boundary operator is {}, expected omega^{}'.format(found, tau))
    if not pairs:
        return result

    basepoint = basepoint or complex2.vertices[0]
    forward = commutator_product(assignment, complex2, pairs, basepoint)
    backward = commutator_product(assignment, reversed_complex, [(second, first) for first, second in pairs], basepoint)
    ratio = multiply(forward, inverse(backward))
    result.details.update(
        product=str(forward),
        reversed_product=str(backward),
        ratio=str(ratio),
        ratio_omega_exponent=ratio.omega_exponent(),
    )
    if forward != backward:
        result.add(
            'surface', 'commutators',
            'product is {} on X but {} on the reversed complex, so omega^(2 tau(X)) is not 1'.format(forward, backward),
        )
    return result
