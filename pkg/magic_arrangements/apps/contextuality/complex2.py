"""
Combinatorial 2-complexes: the single-vertex model, user realizations, surface diagnostics
and orientation reversal.
"""
import json
import logging
from collections import Counter, deque
from dataclasses import dataclass
from typing import Optional, Tuple

import networkx as nx
from rest_framework import serializers

from magic_arrangements.apps.contextuality.arrangement import load_json_document
from magic_arrangements.apps.contextuality.constants import (
    COMMUTATIVE,
    TOPOLOGICAL,
)
from magic_arrangements.apps.contextuality.serializers import (
    RealizationSerializer,
    validated_document,
)
from magic_arrangements.apps.contextuality.utils import CheckResult


logger = logging.getLogger(__name__)

SINGLE_VERTEX = 'v'


class PathError(ValueError):
    """
    An edge path is not incidence-consistent in its complex.
    """


class InvalidRealization(ValueError):
    """
    A 2-complex does not realize the arrangement it was paired with.
    """


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str

    @property
    def is_loop(self):
        return self.source == self.target

    def ends(self, exponent):
        """
        (tail, head) of the edge when traversed with ``exponent``.
        """
        if exponent == 1:
            return self.source, self.target
        return self.target, self.source


@dataclass(frozen=True)
class Face:
    context: str
    word: Tuple[Tuple[str, int], ...]


@dataclass(frozen=True)
class CellComplex2:
    """
    Vertices, oriented edges and 2-cells given by closed boundary words.

    ``orientation_reversed`` marks a complex whose cells all carry the opposite orientation
    of the complex it was built from; words are always written in the complex's own edges.
    """
    vertices: Tuple[str, ...]
    edges: Tuple[Edge, ...]
    faces: Tuple[Face, ...]
    orientation_reversed: bool = False

    def edge(self, edge_id):
        for edge in self.edges:
            if edge.id == edge_id:
                return edge
        raise KeyError(edge_id)

    def face(self, context_id):
        for face in self.faces:
            if face.context == context_id:
                return face
        raise KeyError(context_id)

    def edge_ids(self):
        return tuple(edge.id for edge in self.edges)

    def face_ids(self):
        return tuple(face.context for face in self.faces)

    def edge_map(self):
        return {edge.id: edge for edge in self.edges}


@dataclass(frozen=True)
class SurfaceReport:
    vertex_count: int
    edge_count: int
    face_count: int
    euler_characteristic: int
    is_closed_surface: bool
    orientable: Optional[bool]
    genus: Optional[int]

    def as_dict(self):
        return {
            'vertices': self.vertex_count,
            'edges': self.edge_count,
            'faces': self.face_count,
            'euler_characteristic': self.euler_characteristic,
            'is_closed_surface': self.is_closed_surface,
            'orientable': self.orientable,
            'genus': self.genus,
        }


def walk(complex2, path, start=None):
    """
    Follow an edge path and check that consecutive steps meet.

    Arguments:
        path (sequence): (edge id, +1 or -1) steps.
        start (str): vertex the path must leave from; required to place an empty path.
    Returns:
        (first vertex, last vertex) of the path.
    Raises:
        PathError
    """
    edges = complex2.edge_map()
    first, current = None, start
    for position, (edge_id, exponent) in enumerate(path):
        if edge_id not in edges:
            raise PathError('step {}: unknown edge {!r}'.format(position, edge_id))
        if exponent not in (1, -1):
            raise PathError('step {}: exponent must be 1 or -1, got {!r}'.format(position, exponent))
        tail, head = edges[edge_id].ends(exponent)
        if current is not None and tail != current:
            raise PathError('step {}: edge {!r} leaves {} but the path is at {}'.format(
                position, edge_id, tail, current,
            ))
        if first is None:
            first = tail
        current = head
    return (start if first is None else first), current


def is_closed_word(complex2, word):
    try:
        first, last = walk(complex2, word)
    except PathError:
        return False
    return first == last


def is_connected(complex2):
    graph = nx.MultiGraph()
    graph.add_nodes_from(complex2.vertices)
    graph.add_edges_from((edge.source, edge.target, edge.id) for edge in complex2.edges)
    return nx.is_connected(graph)


def complex_from_data(data):
    """
    Build a CellComplex2 from a decoded realization document.

    Raises:
        rest_framework.serializers.ValidationError: bad structure, an open face word, or a
        disconnected complex.
    """
    validated = validated_document(RealizationSerializer, data)
    complex2 = CellComplex2(
        vertices=tuple(validated['vertices']),
        edges=tuple(Edge(edge['id'], edge['source'], edge['target']) for edge in validated['edges']),
        faces=tuple(Face(face['context'], tuple(face['word'])) for face in validated['faces']),
        orientation_reversed=validated['orientation_reversed'],
    )
    errors = []
    for index, face in enumerate(complex2.faces):
        try:
            first, last = walk(complex2, face.word)
        except PathError as exc:
            errors.append('faces[{}]: {}'.format(index, exc))
            continue
        if first != last:
            errors.append('faces[{}]: word starts at {} but ends at {}'.format(index, first, last))
    if errors:
        raise serializers.ValidationError({'faces': errors})
    if not is_connected(complex2):
        raise serializers.ValidationError({'vertices': ['the complex is not connected']})
    return complex2


def parse_realization(document):
    """
    Parse and validate a realization document.

    Raises:
        ArrangementSyntaxError, rest_framework.serializers.ValidationError
    """
    complex2 = complex_from_data(load_json_document(document))
    logger.debug(
        'Parsed realization with %d vertices, %d edges, %d faces',
        len(complex2.vertices), len(complex2.edges), len(complex2.faces),
    )
    return complex2


def realization_to_data(complex2):
    data = {
        'vertices': list(complex2.vertices),
        'edges': [{'id': edge.id, 'source': edge.source, 'target': edge.target} for edge in complex2.edges],
        'faces': [
            {'context': face.context, 'word': [[edge_id, exponent] for edge_id, exponent in face.word]}
            for face in complex2.faces
        ],
    }
    if complex2.orientation_reversed:
        data['orientation_reversed'] = True
    return data


def serialize_realization(complex2):
    return json.dumps(realization_to_data(complex2), indent=2, ensure_ascii=False) + '\n'


def build_single_vertex(arr):
    """
    One vertex, a loop per label and a face per context spelling the context's signed word.
    """
    return CellComplex2(
        vertices=(SINGLE_VERTEX,),
        edges=tuple(Edge(label, SINGLE_VERTEX, SINGLE_VERTEX) for label in arr.labels),
        faces=tuple(Face(context.id, context.word()) for context in arr.contexts),
    )


def word_relative_to(complex2, face_id, reference):
    """
    The boundary word of ``face_id`` read in the edge orientation of ``reference``.
    """
    word = complex2.face(face_id).word
    if complex2.orientation_reversed == reference.orientation_reversed:
        return word
    return tuple((edge_id, -exponent) for edge_id, exponent in word)


def boundary_matrix(complex2, relative_to=None):
    """
    d_2 as an |E| x |F| integer matrix: entry (e, f) is the exponent sum of e in the word of f.
    """
    row_of = {edge.id: row for row, edge in enumerate(complex2.edges)}
    matrix = [[0] * len(complex2.faces) for _ in complex2.edges]
    for column, face in enumerate(complex2.faces):
        word = face.word if relative_to is None else word_relative_to(complex2, face.context, relative_to)
        for edge_id, exponent in word:
            matrix[row_of[edge_id]][column] += exponent
    return matrix


def vertex_boundary_matrix(complex2):
    """
    d_1 as a |V| x |E| integer matrix (target minus source).
    """
    row_of = {vertex: row for row, vertex in enumerate(complex2.vertices)}
    matrix = [[0] * len(complex2.edges) for _ in complex2.vertices]
    for column, edge in enumerate(complex2.edges):
        matrix[row_of[edge.target]][column] += 1
        matrix[row_of[edge.source]][column] -= 1
    return matrix


def euler_characteristic(complex2):
    return len(complex2.vertices) - len(complex2.edges) + len(complex2.faces)


def _rotations(word):
    return {word[start:] + word[:start] for start in range(len(word))}


def validate_realization(arr, complex2, mode=TOPOLOGICAL):
    """
    Check that ``complex2`` realizes ``arr``.

    In topological mode each face word must be the context's signed word up to rotation.
    In commutative mode it only needs the same signed multiset, or its negation.

    Returns:
        CheckResult listing the offending edges and faces.
    """
    if mode not in (TOPOLOGICAL, COMMUTATIVE):
        raise ValueError('Unknown realization mode {!r}'.format(mode))
    result = CheckResult(mode=mode)

    edge_ids, labels = set(complex2.edge_ids()), set(arr.labels)
    for label in sorted(labels - edge_ids):
        result.add('edge', label, 'label has no edge')
    for edge_id in sorted(edge_ids - labels):
        result.add('edge', edge_id, 'edge is not a label of the arrangement')

    face_ids, context_ids = set(complex2.face_ids()), set(arr.context_ids())
    for context_id in sorted(context_ids - face_ids):
        result.add('face', context_id, 'context has no face')
    for face_id in sorted(face_ids - context_ids):
        result.add('face', face_id, 'face is not a context of the arrangement')

    for face in complex2.faces:
        if face.context not in context_ids:
            continue
        if not is_closed_word(complex2, face.word):
            result.add('face', face.context, 'boundary word is not a closed edge path')
            continue
        expected = arr.context(face.context).word()
        if mode == TOPOLOGICAL:
            if len(face.word) != len(expected) or face.word not in _rotations(expected):
                result.add('face', face.context, 'boundary word is not a rotation of the context word')
        else:
            found = Counter(face.word)
            negated = Counter((label, -sign) for label, sign in expected)
            if found != Counter(expected) and found != negated:
                result.add('face', face.context, 'boundary word does not carry the context\'s signed labels')
    return result


def require_realization(arr, complex2, mode=TOPOLOGICAL):
    """
    ``validate_realization`` for stages that only make sense on a verified realization.

    Raises:
        InvalidRealization: listing every violation found.
    """
    result = validate_realization(arr, complex2, mode=mode)
    if not result.ok:
        raise InvalidRealization('Not a {} realization of the arrangement: {}'.format(
            mode,
            '; '.join('{} {}: {}'.format(*violation) for violation in result.violations),
        ))
    return result


def reverse_orientation(complex2):
    """
    Reverse every edge and traverse every face backwards.

    The result's words are written in its own (reversed) edges; read against the original
    orientation with ``word_relative_to`` a face a.b.c becomes c^-1.b^-1.a^-1.
    """
    return CellComplex2(
        vertices=complex2.vertices,
        edges=tuple(Edge(edge.id, edge.target, edge.source) for edge in complex2.edges),
        faces=tuple(Face(face.context, tuple(reversed(face.word))) for face in complex2.faces),
        orientation_reversed=not complex2.orientation_reversed,
    )


def _edge_end(edge, exponent, arriving):
    """
    The end of ``edge`` touched when the path arrives at (or leaves from) a corner.
    """
    if arriving:
        return (edge.id, 'target' if exponent == 1 else 'source')
    return (edge.id, 'source' if exponent == 1 else 'target')


def vertex_links(complex2):
    """
    Link graph of every vertex: edge ends as nodes, one link edge per face corner.
    """
    edges = complex2.edge_map()
    links = {vertex: nx.MultiGraph() for vertex in complex2.vertices}
    for edge in complex2.edges:
        links[edge.source].add_node((edge.id, 'source'))
        links[edge.target].add_node((edge.id, 'target'))
    for face in complex2.faces:
        size = len(face.word)
        for position, (edge_id, exponent) in enumerate(face.word):
            next_id, next_exponent = face.word[(position + 1) % size]
            edge, following = edges[edge_id], edges[next_id]
            corner = edge.ends(exponent)[1]
            links[corner].add_edge(
                _edge_end(edge, exponent, arriving=True),
                _edge_end(following, next_exponent, arriving=False),
                key=(face.context, position),
            )
    return links


def _is_single_cycle(link):
    if link.number_of_nodes() == 0:
        return False
    return all(degree == 2 for _, degree in link.degree()) and nx.is_connected(link)


def _coherent_orientation(complex2):
    """
    Try to orient every face so each edge is crossed once in each direction.

    Only meaningful when every edge is used exactly twice.
    """
    uses = {}
    for face in complex2.faces:
        for edge_id, exponent in face.word:
            uses.setdefault(edge_id, []).append((face.context, exponent))

    neighbours = {face.context: [] for face in complex2.faces}
    for (first, first_exponent), (second, second_exponent) in uses.values():
        # faces oriented o1, o2 are coherent along the edge when o1*e1 == -o2*e2
        relation = -first_exponent * second_exponent
        neighbours[first].append((second, relation))
        if second != first:
            neighbours[second].append((first, relation))

    orientation = {}
    for face in complex2.faces:
        if face.context in orientation:
            continue
        orientation[face.context] = 1
        queue = deque([face.context])
        while queue:
            current = queue.popleft()
            for other, relation in neighbours[current]:
                wanted = orientation[current] * relation
                if other not in orientation:
                    orientation[other] = wanted
                    queue.append(other)
                elif orientation[other] != wanted:
                    return False
    return True


def surface_report(complex2):
    euler = euler_characteristic(complex2)
    uses = Counter(edge_id for face in complex2.faces for edge_id, _ in face.word)
    closed = all(uses[edge.id] == 2 for edge in complex2.edges)
    if closed:
        links = vertex_links(complex2)
        bad = sorted(vertex for vertex, link in links.items() if not _is_single_cycle(link))
        if bad:
            logger.debug('Vertex links that are not single cycles: %s', bad)
            closed = False

    orientable = genus = None
    if closed:
        orientable = _coherent_orientation(complex2)
        genus = (2 - euler) // 2 if orientable else 2 - euler
    report = SurfaceReport(
        vertex_count=len(complex2.vertices),
        edge_count=len(complex2.edges),
        face_count=len(complex2.faces),
        euler_characteristic=euler,
        is_closed_surface=closed,
        orientable=orientable,
        genus=genus,
    )
    logger.info('Surface report: chi=%d closed=%s orientable=%s', euler, closed, orientable)
    return report
