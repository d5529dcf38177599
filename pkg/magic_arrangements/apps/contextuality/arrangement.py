"""
Arrangements of observables: labels, ordered signed contexts, modulus and constraint cochain.
"""
import json
import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from magic_arrangements.apps.contextuality.serializers import (
    ArrangementSerializer,
    validated_document,
)


logger = logging.getLogger(__name__)


class ArrangementSyntaxError(ValueError):
    """
    An arrangement, realization or operator document is not well-formed JSON.
    """
    def __init__(self, message, line=None, column=None):
        super().__init__(message)
        self.line = line
        self.column = column

    def __str__(self):
        if self.line is None:
            return super().__str__()
        return '{} (line {}, column {})'.format(super().__str__(), self.line, self.column)


@dataclass(frozen=True)
class Occurrence:
    label: str
    sign: int


@dataclass(frozen=True)
class Context:
    """
    An ordered, signed context with its constraint residue ``tau``.
    """
    id: str
    elements: Tuple[Occurrence, ...]
    tau: int

    @property
    def labels(self):
        return tuple(occurrence.label for occurrence in self.elements)

    def sign_of(self, label):
        for occurrence in self.elements:
            if occurrence.label == label:
                return occurrence.sign
        raise KeyError(label)

    def word(self):
        return tuple((occurrence.label, occurrence.sign) for occurrence in self.elements)


@dataclass(frozen=True)
class Arrangement:
    """
    A validated signed arrangement over Z_d.

    ``signs`` is the optional global sign map; when present every occurrence agrees with it.
    """
    d: int
    labels: Tuple[str, ...]
    contexts: Tuple[Context, ...]
    signs: Optional[Dict[str, int]] = field(default=None, hash=False)

    @property
    def restricted_flag(self):
        return is_restricted(self)

    def context(self, context_id):
        for context in self.contexts:
            if context.id == context_id:
                return context
        raise KeyError(context_id)

    def context_ids(self):
        return tuple(context.id for context in self.contexts)

    def tau_vector(self):
        return [context.tau for context in self.contexts]

    def occurrence_counts(self):
        counts = Counter({label: 0 for label in self.labels})
        for context in self.contexts:
            counts.update(context.labels)
        return counts

    def with_modulus(self, d, tau):
        """
        Same labels and contexts read modulo ``d`` with the new constraint values.

        Arguments:
            d (int): new modulus.
            tau (list of int): one value per context, in context order; reduced mod ``d``.
        """
        contexts = tuple(
            Context(id=context.id, elements=context.elements, tau=value % d)
            for context, value in zip(self.contexts, tau)
        )
        return Arrangement(d=d, labels=self.labels, contexts=contexts, signs=self.signs)

    def with_tau(self, tau):
        return self.with_modulus(self.d, tau)


def is_restricted(arr):
    """
    True when every label lies in exactly two contexts.
    """
    return all(count == 2 for count in arr.occurrence_counts().values())


def arrangement_from_data(data):
    """
    Validate a decoded document and build the Arrangement.

    Raises:
        rest_framework.serializers.ValidationError
    """
    validated = validated_document(ArrangementSerializer, data)
    contexts = tuple(
        Context(
            id=context['id'],
            elements=tuple(Occurrence(element['label'], element['sign']) for element in context['elements']),
            tau=context['tau'],
        )
        for context in validated['contexts']
    )
    signs = validated.get('signs')
    return Arrangement(
        d=validated['d'],
        labels=tuple(validated['labels']),
        contexts=contexts,
        signs=dict(signs) if signs is not None else None,
    )


def load_json_document(document):
    """
    Decode UTF-8 JSON text, reporting the line and column of a syntax error.
    """
    if isinstance(document, bytes):
        try:
            document = document.decode('utf-8')
        except UnicodeDecodeError as exc:
            raise ArrangementSyntaxError('Document is not valid UTF-8: {}'.format(exc)) from exc
    try:
        return json.loads(document)
    except json.JSONDecodeError as exc:
        raise ArrangementSyntaxError(exc.msg, line=exc.lineno, column=exc.colno) from exc


def parse_arrangement(document):
    """
    Parse and validate an arrangement document.

    Arguments:
        document (str or bytes): UTF-8 JSON text.
    Returns:
        Arrangement
    Raises:
        ArrangementSyntaxError: malformed JSON.
        rest_framework.serializers.ValidationError: an arrangement invariant is violated.
    """
    arr = arrangement_from_data(load_json_document(document))
    logger.debug('Parsed arrangement with %d labels and %d contexts mod %d', len(arr.labels), len(arr.contexts), arr.d)
    return arr


def arrangement_to_data(arr):
    data = {
        'd': arr.d,
        'labels': list(arr.labels),
        'contexts': [
            {
                'id': context.id,
                'elements': [{'label': item.label, 'sign': item.sign} for item in context.elements],
                'tau': context.tau,
            }
            for context in arr.contexts
        ],
    }
    if arr.signs is not None:
        data['signs'] = dict(arr.signs)
    return data


def serialize_arrangement(arr):
    return json.dumps(arrangement_to_data(arr), indent=2, ensure_ascii=False) + '\n'
