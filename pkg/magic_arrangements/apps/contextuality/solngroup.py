"""
Solution groups, a bounded Knuth-Bendix word problem engine, and the lift test.
"""
import heapq
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from magic_arrangements.apps.contextuality.complex2 import (
    InvalidRealization,
    require_realization,
)
from magic_arrangements.apps.contextuality.constants import (
    COMMUTATIVE,
    IRREDUCIBLE_DISTINCT,
    LIFT_EXISTS,
    LIFT_FAILS,
    REDUCES_TO_IDENTITY,
    REDUCES_TO_J_POWER,
    RESERVED_GENERATOR,
    UNKNOWN,
)
from magic_arrangements.apps.contextuality.homology import solve_classical
from magic_arrangements.apps.contextuality.pi1 import (
    generator_loop,
    presentation_to_text,
)
from magic_arrangements.apps.contextuality.primes import factorize
from magic_arrangements.apps.contextuality.smith import solve_mod_system
from magic_arrangements.apps.contextuality.utils import (
    invert_word,
    word_to_text,
)


logger = logging.getLogger(__name__)


class NotApplicable(ValueError):
    """
    The arrangement does not satisfy the preconditions of the requested criterion.
    """


class LimitExceeded(RuntimeError):
    """
    Knuth-Bendix completion or reduction ran past its rule or step budget.
    """


@dataclass(frozen=True)
class SolutionGroupPresentation:
    """
    Generators J, g_a (a in L) with relators, in order: J^d, g_a^d, [J, g_a], the context
    commutators [g_a, g_b] (quantum only) and the context products prod g_a^sign . J^-tau.
    """
    generators: Tuple[str, ...]
    relators: Tuple[Tuple[Tuple[str, int], ...], ...]
    d: int
    quantum: bool

    def as_dict(self):
        return {
            'd': self.d,
            'quantum': self.quantum,
            'generators': list(self.generators),
            'relators': [word_to_text(relator) for relator in self.relators],
        }


@dataclass(frozen=True)
class RewriteVerdict:
    status: str
    normal_form: Optional[str]
    j_exponent: Optional[int]
    completed: bool
    stats: Dict[str, int] = field(hash=False)

    def as_dict(self):
        return {
            'status': self.status,
            'normal_form': self.normal_form,
            'j_exponent': self.j_exponent,
            'completed': self.completed,
            'stats': dict(self.stats),
        }


@dataclass(frozen=True)
class LiftVerdict:
    status: str
    alpha: Optional[Dict[str, int]] = field(default=None, hash=False)
    witness: Optional[dict] = field(default=None, hash=False)
    note: str = ''

    def as_dict(self):
        return {'status': self.status, 'alpha': self.alpha, 'witness': self.witness, 'note': self.note}


def build_solution_group(arr, quantum=True):
    j = RESERVED_GENERATOR
    d = arr.d
    relators = [((j, 1),) * d]
    relators.extend(((label, 1),) * d for label in arr.labels)
    relators.extend(((j, 1), (label, 1), (j, -1), (label, -1)) for label in arr.labels)
    if quantum:
        for context in arr.contexts:
            for first, second in itertools.combinations(context.labels, 2):
                relators.append(((first, 1), (second, 1), (first, -1), (second, -1)))
    for context in arr.contexts:
        relators.append(context.word() + ((j, -1),) * context.tau)
    return SolutionGroupPresentation(
        generators=(j,) + tuple(arr.labels),
        relators=tuple(relators),
        d=d,
        quantum=quantum,
    )


def solution_group_to_text(group):
    return presentation_to_text(group)


def restricted_product_check(arr):
    """
    Exponent of J in the product of all context relators: sum of tau mod 2.

    Raises:
        NotApplicable: unless every label lies in exactly two contexts and d == 2.
    """
    if arr.d != 2 or not arr.restricted_flag:
        raise NotApplicable('The restricted product criterion needs a restricted arrangement with d = 2')
    return sum(arr.tau_vector()) % 2


def abelian_obstruction(arr):
    """
    J-exponent of a combination of context relators whose label part vanishes in the abelianization.
    """
    outcome = solve_classical(arr)
    if outcome.feasible:
        return {'obstructed': False, 'witness': None, 'j_exponent': 0}
    tau = arr.tau_vector()
    j_exponent = sum(y * value for y, value in zip(outcome.witness, tau)) % arr.d
    return {
        'obstructed': True,
        'witness': dict(zip(arr.context_ids(), outcome.witness)),
        'j_exponent': j_exponent,
    }


def _shortlex_greater(first, second):
    if len(first) != len(second):
        return len(first) > len(second)
    return first > second


class RewritingSystem:
    """
    String rewriting system over integer symbols, oriented by shortlex.

    ``completed`` is True only when completion finished: the rules are then confluent and the
    normal form of a word decides equality in the presented monoid.
    """

    def __init__(self, alphabet, max_rules, max_steps):
        self.alphabet = alphabet
        self.max_rules = max_rules
        self.max_steps = max_steps
        self.rules = {}
        self.completed = False
        self.pairs_processed = 0
        self.steps = 0
        self._lengths = []

    def _refresh_lengths(self):
        self._lengths = sorted({len(lhs) for lhs in self.rules})

    def reduce(self, word):
        """
        Normal form of ``word`` under the current rules.

        Raises:
            LimitExceeded: more than ``max_steps`` rewrites for this word.
        """
        steps = 0
        out = []
        pending = list(reversed(word))
        while pending:
            out.append(pending.pop())
            for length in self._lengths:
                if length > len(out):
                    break
                rhs = self.rules.get(tuple(out[-length:]))
                if rhs is None:
                    continue
                del out[-length:]
                pending.extend(reversed(rhs))
                steps += 1
                if steps > self.max_steps:
                    raise LimitExceeded('reduction took more than {} steps'.format(self.max_steps))
                break
        self.steps += steps
        return tuple(out)

    def _critical_pairs(self, lhs, rhs):
        pairs = []
        for other_lhs, other_rhs in list(self.rules.items()):
            # suffix of lhs overlapping a prefix of other_lhs
            for size in range(1, min(len(lhs), len(other_lhs))):
                if lhs[-size:] == other_lhs[:size]:
                    pairs.append((rhs + other_lhs[size:], lhs[:-size] + other_rhs))
            if other_lhs == lhs:
                continue
            for size in range(1, min(len(lhs), len(other_lhs))):
                if other_lhs[-size:] == lhs[:size]:
                    pairs.append((other_rhs + lhs[size:], other_lhs[:-size] + rhs))
        return pairs

    def _contains(self, word, part):
        size = len(part)
        return any(word[start:start + size] == part for start in range(len(word) - size + 1))

    def _add_rule(self, lhs, rhs, push):
        collapsed = [old for old in self.rules if self._contains(old, lhs)]
        for old in collapsed:
            push(old, self.rules.pop(old))
        self.rules[lhs] = rhs
        self._refresh_lengths()
        for old_lhs, old_rhs in list(self.rules.items()):
            if old_lhs != lhs and self._contains(old_rhs, lhs):
                self.rules[old_lhs] = self.reduce(old_rhs)
        for pair in self._critical_pairs(lhs, rhs):
            push(*pair)
        if len(self.rules) > self.max_rules:
            raise LimitExceeded('more than {} rules'.format(self.max_rules))

    def complete(self, equations):
        """
        Run Knuth-Bendix completion from ``equations``; shortest pairs are processed first.

        On LimitExceeded the rules gathered so far are kept: each is still a valid identity.
        """
        heap = []
        counter = itertools.count()

        def push(left, right):
            heapq.heappush(heap, (max(len(left), len(right)), next(counter), left, right))

        for left, right in equations:
            push(tuple(left), tuple(right))
        try:
            while heap:
                _, _, left, right = heapq.heappop(heap)
                self.pairs_processed += 1
                left, right = self.reduce(left), self.reduce(right)
                if left == right:
                    continue
                if not _shortlex_greater(left, right):
                    left, right = right, left
                self._add_rule(left, right, push)
        except LimitExceeded as exc:
            logger.warning('Knuth-Bendix completion stopped with %d rules: %s', len(self.rules), exc)
            return self
        self.completed = True
        logger.debug(
            'Knuth-Bendix completed with %d rules after %d pairs and %d rewrites',
            len(self.rules), self.pairs_processed, self.steps,
        )
        return self

    def stats(self):
        return {'rules': len(self.rules), 'pairs': self.pairs_processed, 'rewrites': self.steps}


class _Alphabet:
    """
    Maps group words over named generators to monoid words; inverses become (d - 1)-th powers.

    Labels are ranked in order and J last, so shortlex moves J to the right end of words.
    """

    def __init__(self, group):
        labels = [name for name in group.generators if name != RESERVED_GENERATOR]
        self.names = tuple(labels) + (RESERVED_GENERATOR,)
        self.rank = {name: index for index, name in enumerate(self.names)}
        self.j = self.rank[RESERVED_GENERATOR]
        self.d = group.d

    def encode(self, word):
        letters = []
        for name, exponent in word:
            letters.extend([self.rank[name]] * (1 if exponent > 0 else self.d - 1))
        return tuple(letters)

    def decode(self, letters):
        return tuple((self.names[letter], 1) for letter in letters)

    def equation(self, relator):
        if len(relator) == 4:
            (first, e1), (second, e2), (third, e3), (fourth, e4) = relator
            if first == third and second == fourth and (e1, e2, e3, e4) == (1, 1, -1, -1):
                return self.encode(relator[:2]), self.encode(((second, 1), (first, 1)))
        return self.encode(relator), ()


def rewriting_system(group, limits):
    """
    Knuth-Bendix completion of a solution group; returns the (possibly partial) system.
    """
    alphabet = _Alphabet(group)
    system = RewritingSystem(alphabet, max_rules=limits.kb_rules, max_steps=limits.kb_steps)
    system.complete([alphabet.equation(relator) for relator in group.relators])
    logger.info('Rewriting system: completed=%s rules=%d', system.completed, len(system.rules))
    return system


def knuth_bendix(group, word, limits, system=None):
    """
    Reduce a group word over the generators of ``group``.

    Identity and J-power reductions are derivations and hold even for a partial system;
    irreducible-distinct is only claimed when completion finished.
    """
    system = system or rewriting_system(group, limits)
    alphabet = system.alphabet
    try:
        normal = system.reduce(alphabet.encode(word))
    except LimitExceeded as exc:
        logger.warning('Word reduction stopped: %s', exc)
        return RewriteVerdict(UNKNOWN, None, None, system.completed, system.stats())

    text = word_to_text(alphabet.decode(normal))
    if not normal:
        return RewriteVerdict(REDUCES_TO_IDENTITY, text, 0, system.completed, system.stats())
    if all(letter == alphabet.j for letter in normal):
        return RewriteVerdict(REDUCES_TO_J_POWER, text, len(normal), system.completed, system.stats())
    status = IRREDUCIBLE_DISTINCT if system.completed else UNKNOWN
    return RewriteVerdict(status, text, None, system.completed, system.stats())


def _face_orientation(arr, complex2, face_id):
    """
    +1 when the face carries its context's signed labels, -1 when it carries their negation.

    Raises:
        InvalidRealization: the face carries neither.
    """
    context_word = Counter(arr.context(face_id).word())
    face_word = Counter(complex2.face(face_id).word)
    if face_word == context_word:
        return 1
    if face_word == Counter({(label, -sign): count for (label, sign), count in context_word.items()}):
        return -1
    raise InvalidRealization('Face {} does not carry the signed labels of its context'.format(face_id))


def _relator_image(relator, loops):
    """
    Word over the labels obtained by replacing every generator with its loop at the basepoint.
    """
    image = ()
    for generator, exponent in relator:
        loop = loops[generator]
        image += loop if exponent == 1 else invert_word(loop)
    return image


def theta_lift_check(arr, complex2, pres, limits):
    """
    Decide whether the projective representation of pi_1(X) in G / <J> lifts to G.

    Every relator w_i maps to J^k_i with k_i = +/- tau of its face. A lift is a re-phasing
    alpha over the generators with N alpha = -k (mod d), N the relator exponent matrix. Without
    one, failure is only reported once a completed rewriting system confirms the images and the
    order of J.

    Raises:
        InvalidRealization: ``complex2`` does not carry the contexts of ``arr``, even up to order and sign.
    """
    require_realization(arr, complex2, mode=COMMUTATIVE)
    d = arr.d
    k = [
        _face_orientation(arr, complex2, origin.face) * arr.context(origin.face).tau % d
        for origin in pres.relator_origin
    ]
    outcome = solve_mod_system(pres.exponent_matrix(), [-value for value in k], d, columns=len(pres.generators))
    if outcome.feasible:
        alpha = dict(zip(pres.generators, outcome.solution))
        logger.info('Lift exists: re-phasing solves all %d relators', len(k))
        return LiftVerdict(status=LIFT_EXISTS, alpha=alpha, note='re-phasing over J-powers found')

    group = build_solution_group(arr, quantum=True)
    system = rewriting_system(group, limits)
    if not system.completed:
        return LiftVerdict(status=UNKNOWN, note='Knuth-Bendix completion hit a limit: {}'.format(system.stats()))

    for prime, _ in factorize(d):
        collapse = knuth_bendix(group, ((RESERVED_GENERATOR, 1),) * (d // prime), limits, system=system)
        if collapse.status == REDUCES_TO_IDENTITY:
            return LiftVerdict(
                status=LIFT_FAILS,
                witness={'j_collapse': d // prime},
                note='J^{} is trivial in the solution group'.format(d // prime),
            )

    loops = {generator: generator_loop(complex2, pres, generator) for generator in pres.generators}
    images = []
    for index, (relator, origin) in enumerate(zip(pres.relators, pres.relator_origin)):
        image = _relator_image(relator, loops)
        verdict = knuth_bendix(group, image, limits, system=system)
        reduced_to_j = verdict.status in (REDUCES_TO_IDENTITY, REDUCES_TO_J_POWER)
        if not reduced_to_j or verdict.j_exponent % d != k[index]:
            return LiftVerdict(
                status=UNKNOWN,
                note='image of the relator of face {} reduced to {}, expected J^{}'.format(
                    origin.face, verdict.normal_form, k[index],
                ),
            )
        images.append(image)

    combination = outcome.witness
    witness_word = ()
    for image, count in zip(images, combination):
        witness_word += image * count
    reduction = knuth_bendix(group, witness_word, limits, system=system)
    j_exponent = sum(count * value for count, value in zip(combination, k)) % d
    logger.info('Lift fails: relator combination maps to J^%d', j_exponent)
    return LiftVerdict(
        status=LIFT_FAILS,
        witness={
            'relators': {origin.face: count for origin, count in zip(pres.relator_origin, combination) if count},
            'j_exponent': j_exponent,
            'normal_form': reduction.normal_form,
        },
        note='no re-phasing kills every relator and J has order {}'.format(d),
    )
