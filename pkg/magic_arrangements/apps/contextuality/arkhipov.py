"""
Intersection graphs of restricted arrangements and the planarity criterion.

In a restricted arrangement every label lies in exactly two contexts, so the arrangement is a
multigraph: contexts are vertices and each label is an edge between its two contexts. For d = 2
the arrangement is magic exactly when that graph is not planar.
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

import networkx as nx

from magic_arrangements.apps.contextuality.complex2 import (
    CellComplex2,
    Edge,
    Face,
)
from magic_arrangements.apps.contextuality.constants import (
    K5,
    K33,
    MAGIC,
    NON_MAGIC,
    NOT_APPLICABLE,
)


logger = logging.getLogger(__name__)

KURATOWSKI_GRAPHS = {
    K5: nx.complete_graph(5),
    K33: nx.complete_bipartite_graph(3, 3),
}


class NotRestricted(ValueError):
    """
    The arrangement has a label that does not lie in exactly two contexts.
    """


class IntersectionGraph:
    """
    Contexts as vertices, one edge per label keyed by the label.

    ``ends[label]`` is the pair of contexts holding the label, in context order; a dart
    ``(label, 0)`` sits at the first of them and ``(label, 1)`` at the second.
    """
    def __init__(self, contexts, labels, ends):
        self.contexts = tuple(contexts)
        self.labels = tuple(labels)
        self.ends = dict(ends)
        self.graph = nx.MultiGraph()
        self.graph.add_nodes_from(self.contexts)
        for label in self.labels:
            first, second = self.ends[label]
            self.graph.add_edge(first, second, key=label)

    def darts_at(self, context):
        return [
            (label, end)
            for label in self.labels
            for end, holder in enumerate(self.ends[label])
            if holder == context
        ]

    def bundle(self, first, second):
        """
        Labels joining two distinct contexts, in label order.
        """
        return [label for label in self.labels if set(self.ends[label]) == {first, second}]

    def simple(self):
        simple = nx.Graph()
        simple.add_nodes_from(self.contexts)
        simple.add_edges_from((first, second) for first, second in self.ends.values() if first != second)
        return simple

    def __repr__(self):
        return '<IntersectionGraph contexts={} labels={}>'.format(len(self.contexts), len(self.labels))


@dataclass(frozen=True)
class PlanarityResult:
    planar: bool
    verified: bool
    rotation: Optional[Dict[str, List[Tuple[str, int]]]] = field(default=None, hash=False)
    face_count: Optional[int] = None
    witness_kind: Optional[str] = None
    witness_edges: Tuple[Tuple[str, str], ...] = ()
    witness_labels: Tuple[str, ...] = ()

    def as_dict(self):
        data = {'planar': self.planar, 'verified': self.verified}
        if self.planar:
            data['rotation'] = {
                context: [[label, end] for label, end in darts]
                for context, darts in (self.rotation or {}).items()
            }
            data['face_count'] = self.face_count
        else:
            data['witness'] = {
                'kind': self.witness_kind,
                'edges': [list(edge) for edge in self.witness_edges],
                'labels': list(self.witness_labels),
            }
        return data


@dataclass(frozen=True)
class TheoremAVerdict:
    status: str
    planarity: Optional[PlanarityResult] = None
    note: str = ''

    def as_dict(self):
        return {
            'status': self.status,
            'planarity': self.planarity.as_dict() if self.planarity else None,
            'note': self.note,
        }


def intersection_graph(arr):
    """
    Raises:
        NotRestricted
    """
    holders = {label: [] for label in arr.labels}
    for context in arr.contexts:
        for label in context.labels:
            holders[label].append(context.id)
    wrong = sorted(label for label, found in holders.items() if len(found) != 2)
    if wrong:
        raise NotRestricted('Labels {} do not lie in exactly two contexts'.format(wrong))
    return IntersectionGraph(arr.context_ids(), arr.labels, {label: tuple(found) for label, found in holders.items()})


def _rotation_system(graph, embedding):
    """
    Expand the embedding of the simple graph into a cyclic order of darts at every context.

    A bundle of parallel labels is listed in label order at one end and reversed at the other,
    so the bundle nests without crossings.
    """
    rotation = {}
    for context in graph.contexts:
        darts = []
        for neighbour in embedding.neighbors_cw_order(context):
            bundle = graph.bundle(context, neighbour)
            if graph.contexts.index(context) > graph.contexts.index(neighbour):
                bundle = bundle[::-1]
            for label in bundle:
                darts.append((label, graph.ends[label].index(context)))
        rotation[context] = darts
    return rotation


def face_orbits(graph, rotation):
    """
    Faces of a rotation system: orbits of "cross the edge, then turn to the next dart".

    Returns:
        {dart: face index}, faces numbered in order of the first dart met in label order.
    """
    successor = {}
    for darts in rotation.values():
        for position, dart in enumerate(darts):
            successor[dart] = darts[(position + 1) % len(darts)]

    face_of = {}
    count = 0
    for label in graph.labels:
        for end in (0, 1):
            dart = (label, end)
            if dart in face_of:
                continue
            while dart not in face_of:
                face_of[dart] = count
                label_here, end_here = dart
                dart = successor[(label_here, 1 - end_here)]
            count += 1
    return face_of


def _euler_check(graph, rotation):
    face_of = face_orbits(graph, rotation)
    face_count = len(set(face_of.values()))
    # contexts without any label are spheres of their own
    face_count += sum(1 for darts in rotation.values() if not darts)
    components = nx.number_connected_components(graph.graph)
    vertex_count, edge_count = len(graph.contexts), len(graph.labels)
    holds = vertex_count - edge_count + face_count == 2 * components
    logger.debug(
        'Euler check: V=%d E=%d F=%d components=%d -> %s', vertex_count, edge_count, face_count, components, holds,
    )
    return holds, face_count


def _smooth(subgraph):
    smoothed = nx.Graph(subgraph)
    changed = True
    while changed:
        changed = False
        for node in list(smoothed.nodes):
            if smoothed.degree(node) != 2:
                continue
            first, second = list(smoothed.neighbors(node))
            if smoothed.has_edge(first, second):
                continue
            smoothed.remove_node(node)
            smoothed.add_edge(first, second)
            changed = True
    return smoothed


def verify_kuratowski(simple, witness):
    """
    The witness is a subgraph of ``simple`` that smooths to K5 or K3,3.

    Returns:
        the witness kind, or None when it does not verify.
    """
    if not all(simple.has_edge(first, second) for first, second in witness.edges):
        return None
    smoothed = _smooth(witness)
    for kind, model in KURATOWSKI_GRAPHS.items():
        if nx.is_isomorphic(smoothed, model):
            return kind
    return None


def planarity(graph):
    """
    Planarity test on the simple graph underlying ``graph`` with an independently verified certificate.

    Returns:
        PlanarityResult: a rotation system of darts whose face count satisfies Euler's formula, or a
        Kuratowski subdivision that smooths to K5 or K3,3.
    """
    simple = graph.simple()
    is_planar, certificate = nx.check_planarity(simple, counterexample=True)
    if is_planar:
        rotation = _rotation_system(graph, certificate)
        holds, face_count = _euler_check(graph, rotation)
        logger.info('Intersection graph is planar with %d faces', face_count)
        return PlanarityResult(planar=True, verified=holds, rotation=rotation, face_count=face_count)

    kind = verify_kuratowski(simple, certificate)
    edges = tuple(sorted(tuple(sorted(edge)) for edge in certificate.edges))
    labels = tuple(graph.bundle(first, second)[0] for first, second in edges)
    if kind is None:
        logger.warning('Kuratowski subgraph with %d edges failed verification', len(edges))
    else:
        logger.info('Intersection graph is not planar: %s subdivision on %d edges', kind, len(edges))
    return PlanarityResult(
        planar=False,
        verified=kind is not None,
        witness_kind=kind,
        witness_edges=edges,
        witness_labels=labels,
    )


def theorem_a_verdict(arr):
    """
    For restricted arrangements over Z_2: magic iff the intersection graph is not planar.
    """
    if arr.d != 2:
        return TheoremAVerdict(status=NOT_APPLICABLE, note='d={} is not 2'.format(arr.d))
    if not arr.restricted_flag:
        return TheoremAVerdict(status=NOT_APPLICABLE, note='arrangement is not restricted')
    result = planarity(intersection_graph(arr))
    if result.planar:
        return TheoremAVerdict(status=NON_MAGIC, planarity=result, note='intersection graph is planar')
    return TheoremAVerdict(
        status=MAGIC,
        planarity=result,
        note='intersection graph contains a {} subdivision'.format(result.witness_kind),
    )


def dual_complex(graph, rotation):
    """
    The 2-complex dual to a planar embedding: a vertex per face, the label edges, a 2-cell per context.

    Label ``l`` runs from the face of dart ``(l, 0)`` to the face of ``(l, 1)``. The 2-cell of a
    context reads its darts in rotation order, with exponent +1 on ``(l, 0)`` and -1 on ``(l, 1)``.
    """
    face_of = face_orbits(graph, rotation)
    vertices = tuple('F{}'.format(index) for index in sorted(set(face_of.values())))
    edges = tuple(
        Edge(id=label, source='F{}'.format(face_of[(label, 0)]), target='F{}'.format(face_of[(label, 1)]))
        for label in graph.labels
    )
    faces = tuple(
        Face(context=context, word=tuple((label, 1 if end == 0 else -1) for label, end in rotation[context]))
        for context in graph.contexts
    )
    return CellComplex2(vertices=vertices, edges=edges, faces=faces)


def edge_list_text(graph):
    return ''.join(
        '{} {} {}\n'.format(graph.ends[label][0], graph.ends[label][1], label)
        for label in graph.labels
    )
