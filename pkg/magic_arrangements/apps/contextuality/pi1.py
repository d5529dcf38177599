"""
Fundamental group presentations of 2-complexes and bounded decisions about them.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from math import gcd
from typing import Dict, List, Optional, Tuple

from sympy.combinatorics.fp_groups import (
    FpGroup,
    coset_enumeration_r,
    simplify_presentation,
)
from sympy.combinatorics.free_groups import free_group

from magic_arrangements.apps.contextuality.complex2 import walk
from magic_arrangements.apps.contextuality.constants import (
    INCONCLUSIVE,
    NON_MAGIC_CERTIFIED,
    NONTRIVIAL,
    TRIVIAL,
    UNKNOWN,
)
from magic_arrangements.apps.contextuality.smith import invariant_factors
from magic_arrangements.apps.contextuality.utils import (
    exponent_sums,
    free_reduce,
    invert_word,
    word_from_text,
    word_to_text,
)


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RelatorOrigin:
    face: str
    gamma: Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class GroupPresentation:
    """
    Generators and relator words, with the cells they came from when built from a complex.
    """
    generators: Tuple[str, ...]
    relators: Tuple[Tuple[Tuple[str, int], ...], ...]
    generator_origin: Dict[str, str] = field(default_factory=dict, hash=False)
    relator_origin: Tuple[RelatorOrigin, ...] = ()
    basepoint: Optional[str] = None
    tree: Tuple[str, ...] = ()
    tree_paths: Dict[str, Tuple[Tuple[str, int], ...]] = field(default_factory=dict, hash=False)

    def exponent_matrix(self):
        return [exponent_sums(relator, self.generators) for relator in self.relators]

    def as_dict(self):
        return {
            'basepoint': self.basepoint,
            'tree': list(self.tree),
            'generators': list(self.generators),
            'relators': [word_to_text(relator) for relator in self.relators],
            'relator_faces': [origin.face for origin in self.relator_origin],
        }


@dataclass(frozen=True)
class FiniteOrder:
    order: Optional[int]
    certificate: str


@dataclass(frozen=True)
class TrivialityVerdict:
    status: str
    abelianization: List[int] = field(hash=False)
    order: Optional[int] = None
    note: str = ''

    def as_dict(self):
        return {
            'status': self.status,
            'abelianization': list(self.abelianization),
            'order': self.order,
            'note': self.note,
        }


@dataclass(frozen=True)
class CoprimeVerdict:
    status: str
    order: Optional[int]
    d: int
    note: str

    def as_dict(self):
        return {'status': self.status, 'order': self.order, 'd': self.d, 'note': self.note}


def spanning_tree(complex2, basepoint):
    """
    BFS spanning tree from ``basepoint``, scanning incident edges in id order.

    Returns:
        (tree edge ids in discovery order, {vertex: tree path from the basepoint}).
    """
    incident = {vertex: [] for vertex in complex2.vertices}
    for edge in complex2.edges:
        if edge.is_loop:
            continue
        incident[edge.source].append(edge)
        incident[edge.target].append(edge)

    paths = {basepoint: ()}
    tree = []
    queue = deque([basepoint])
    while queue:
        vertex = queue.popleft()
        for edge in sorted(incident[vertex], key=lambda item: item.id):
            if edge.source == vertex:
                other, exponent = edge.target, 1
            else:
                other, exponent = edge.source, -1
            if other in paths:
                continue
            paths[other] = paths[vertex] + ((edge.id, exponent),)
            tree.append(edge.id)
            queue.append(other)
    return tree, paths


def presentation(complex2, basepoint):
    """
    Presentation of pi_1(X, basepoint): one generator per non-tree edge, one relator per face.

    Each relator is the face boundary conjugated back to the basepoint along the tree, with
    the tree edges erased and the result freely reduced.
    """
    if basepoint not in complex2.vertices:
        raise ValueError('Unknown basepoint {!r}'.format(basepoint))
    tree, paths = spanning_tree(complex2, basepoint)
    tree_edges = set(tree)
    generators = tuple(sorted(edge.id for edge in complex2.edges if edge.id not in tree_edges))

    relators, origins = [], []
    for face in complex2.faces:
        start, _ = walk(complex2, face.word)
        gamma = paths[start]
        conjugated = gamma + face.word + invert_word(gamma)
        relators.append(free_reduce(step for step in conjugated if step[0] not in tree_edges))
        origins.append(RelatorOrigin(face=face.context, gamma=gamma))

    logger.info(
        'Presentation at %s: %d generators, %d relators (tree of %d edges)',
        basepoint, len(generators), len(relators), len(tree),
    )
    return GroupPresentation(
        generators=generators,
        relators=tuple(relators),
        generator_origin={generator: generator for generator in generators},
        relator_origin=tuple(origins),
        basepoint=basepoint,
        tree=tuple(tree),
        tree_paths=paths,
    )


def generator_loop(complex2, pres, generator):
    """
    Closed edge path at the basepoint that the generator stands for: tree path, edge, tree path back.

    The tree paths are the ones ``pres`` was built with.
    """
    if not pres.tree_paths:
        raise ValueError('Presentation carries no spanning tree; build it with presentation()')
    edge = complex2.edge(pres.generator_origin[generator])
    return pres.tree_paths[edge.source] + ((edge.id, 1),) + invert_word(pres.tree_paths[edge.target])


def abelianization(pres):
    """
    Invariant factors of the abelianized group: torsion orders, then a 0 per free factor.
    """
    return invariant_factors(pres.exponent_matrix(), columns=len(pres.generators))


def _sympy_group(pres):
    names = ['x{}'.format(index) for index in range(len(pres.generators))]
    free, *symbols = free_group(', '.join(names))
    by_name = dict(zip(pres.generators, symbols))
    relators = []
    for relator in pres.relators:
        element = free.identity
        for generator, exponent in relator:
            element = element * by_name[generator] ** exponent
        if element != free.identity:
            relators.append(element)
    return FpGroup(free, relators)


def coset_index(pres, limits):
    """
    Order of the group by Todd-Coxeter enumeration over the trivial subgroup.

    Returns:
        the index, or None when the enumeration needs more than ``limits.coset_rows`` cosets.
    """
    if not pres.generators:
        return 1
    group = simplify_presentation(_sympy_group(pres), change_gens=True)
    if not group.generators:
        return 1
    try:
        table = coset_enumeration_r(group, [], max_cosets=limits.coset_rows)
    except ValueError as exc:
        logger.warning('Coset enumeration stopped at the %d row limit: %s', limits.coset_rows, exc)
        return None
    table.compress()
    table.standardize()
    logger.debug('Coset enumeration completed with %d cosets', len(table.table))
    return len(table.table)


def finite_order(pres, limits):
    factors = abelianization(pres)
    free_rank = factors.count(0)
    if free_rank:
        return FiniteOrder(order=None, certificate='H1 has free rank {}'.format(free_rank))
    if not pres.generators:
        return FiniteOrder(order=1, certificate='no generators')
    index = coset_index(pres, limits)
    if index is None:
        return FiniteOrder(order=None, certificate='coset enumeration exceeded {} rows'.format(limits.coset_rows))
    return FiniteOrder(order=index, certificate='coset enumeration completed with index {}'.format(index))


def triviality(pres, limits):
    """
    Tri-state decision of whether the presented group is trivial.

    Nontrivial is claimed from a nonzero abelianization or a completed enumeration of index > 1;
    trivial only from a completed enumeration of index 1.
    """
    factors = abelianization(pres)
    if factors:
        order = None
        if 0 not in factors:
            order = finite_order(pres, limits).order
        return TrivialityVerdict(
            status=NONTRIVIAL,
            abelianization=factors,
            order=order,
            note='abelianization is nonzero',
        )
    index = coset_index(pres, limits)
    if index is None:
        return TrivialityVerdict(
            status=UNKNOWN,
            abelianization=factors,
            note='perfect group; coset enumeration exceeded {} rows'.format(limits.coset_rows),
        )
    if index == 1:
        return TrivialityVerdict(status=TRIVIAL, abelianization=factors, order=1, note='coset table has one row')
    return TrivialityVerdict(
        status=NONTRIVIAL,
        abelianization=factors,
        order=index,
        note='perfect group of order {}'.format(index),
    )


def coprime_criterion(arr, pres, limits):
    """
    A finite fundamental group of order coprime to d certifies that the arrangement is not magic.
    """
    result = finite_order(pres, limits)
    if result.order is not None and gcd(result.order, arr.d) == 1:
        return CoprimeVerdict(
            status=NON_MAGIC_CERTIFIED,
            order=result.order,
            d=arr.d,
            note='gcd({}, {}) = 1'.format(result.order, arr.d),
        )
    if result.order is None:
        note = result.certificate
    else:
        note = 'gcd({}, {}) = {}'.format(result.order, arr.d, gcd(result.order, arr.d))
    return CoprimeVerdict(status=INCONCLUSIVE, order=result.order, d=arr.d, note=note)


def presentation_to_text(pres):
    lines = ['gens: {}'.format(' '.join(pres.generators)).rstrip()]
    lines.extend(word_to_text(relator) for relator in pres.relators)
    return '\n'.join(lines) + '\n'


def parse_presentation_text(text):
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[0].startswith('gens:'):
        raise ValueError('Presentation text must start with a "gens:" line')
    generators = tuple(lines[0][len('gens:'):].split())
    relators = tuple(word_from_text(line) for line in lines[1:])
    known = set(generators)
    for relator in relators:
        unknown = {generator for generator, _ in relator} - known
        if unknown:
            raise ValueError('Relator {!r} uses unknown generators {}'.format(word_to_text(relator), sorted(unknown)))
    return GroupPresentation(generators=generators, relators=relators)
