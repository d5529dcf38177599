"""
Prime-power decomposition of the modulus and CRT gluing of classical solutions.
"""
import logging
from dataclasses import dataclass
from typing import Tuple

from magic_arrangements.apps.contextuality.utils import modinv


logger = logging.getLogger(__name__)


class GlueError(ValueError):
    """
    Component solutions do not match the prime plan they are glued along.
    """


@dataclass(frozen=True)
class PrimeComponent:
    """
    One prime power q = p^alpha of d, with cofactor d / q and weight w, w * cofactor = 1 (mod q).
    """
    p: int
    alpha: int
    q: int
    cofactor: int
    weight: int

    def as_dict(self):
        return {'p': self.p, 'alpha': self.alpha, 'q': self.q, 'cofactor': self.cofactor, 'weight': self.weight}


@dataclass(frozen=True)
class PrimePlan:
    d: int
    components: Tuple[PrimeComponent, ...]

    def identity_holds(self):
        """
        The idempotents cofactor * weight sum to 1 mod d.
        """
        return sum(component.cofactor * component.weight for component in self.components) % self.d == 1 % self.d

    def as_dict(self):
        return {
            'd': self.d,
            'components': [component.as_dict() for component in self.components],
            'identity_holds': self.identity_holds(),
        }


def factorize(d):
    """
    Trial division.

    Returns:
        list of (prime, exponent) pairs in increasing prime order.
    """
    if d < 1:
        raise ValueError('Cannot factorize {}'.format(d))
    factors = []
    candidate = 2
    while candidate * candidate <= d:
        exponent = 0
        while d % candidate == 0:
            d //= candidate
            exponent += 1
        if exponent:
            factors.append((candidate, exponent))
        candidate += 1
    if d > 1:
        factors.append((d, 1))
    return factors


def prime_plan(d):
    components = []
    for p, alpha in factorize(d):
        q = p ** alpha
        cofactor = d // q
        weight = modinv(cofactor, q) if q > 1 else 0
        components.append(PrimeComponent(p=p, alpha=alpha, q=q, cofactor=cofactor, weight=weight))
    return PrimePlan(d=d, components=tuple(components))


def decompose(arr, plan=None):
    """
    One arrangement per prime power q of d, with constraints cofactor * tau mod q.

    Returns:
        list of (PrimeComponent, Arrangement) pairs.
    """
    plan = plan or prime_plan(arr.d)
    reductions = []
    for component in plan.components:
        reduced = arr.with_modulus(component.q, [component.cofactor * tau for tau in arr.tau_vector()])
        reductions.append((component, reduced))
    logger.info('Decomposed d=%d into %s', arr.d, [component.q for component in plan.components])
    return reductions


def glue(solutions, plan):
    """
    CRT-glue one classical solution per component into a solution mod d.

    Component j contributes weight_j * c_j mod q_j, lifted through the idempotent cofactor_j * weight_j.

    Arguments:
        solutions (list of dict): label -> residue mod q_j, in the plan's component order.
    Raises:
        GlueError
    """
    if len(solutions) != len(plan.components):
        raise GlueError('Expected {} component solutions, got {}'.format(len(plan.components), len(solutions)))
    if not solutions:
        return {}
    labels = set(solutions[0])
    for index, solution in enumerate(solutions[1:], start=1):
        if set(solution) != labels:
            raise GlueError('Component {} solves for labels {} instead of {}'.format(
                index, sorted(solution), sorted(labels),
            ))
    glued = {}
    for label in solutions[0]:
        glued[label] = sum(
            component.cofactor * component.weight * (component.weight * solution[label] % component.q)
            for component, solution in zip(plan.components, solutions)
        ) % plan.d
    return glued
