"""
Validation of the JSON input documents: arrangements, realizations and operator assignments.
"""
import logging
from collections.abc import Mapping

from rest_framework import serializers

from magic_arrangements.apps.contextuality.constants import RESERVED_GENERATOR


logger = logging.getLogger(__name__)

LABEL_REGEX = r'^[^\s^]+$'


class StrictSerializer(serializers.Serializer):  # pylint: disable=abstract-method
    """
    Serializer that rejects keys it does not declare instead of silently dropping them.
    """

    def to_internal_value(self, data):
        if isinstance(data, Mapping):
            unknown = sorted(set(data) - set(self.fields))
            if unknown:
                raise serializers.ValidationError({key: ['Unknown key.'] for key in unknown})
        return super().to_internal_value(data)


class SignField(serializers.IntegerField):
    def to_internal_value(self, data):
        if isinstance(data, bool):
            self.fail('invalid')
        value = super().to_internal_value(data)
        if value not in (1, -1):
            raise serializers.ValidationError('Sign must be 1 or -1, got {}.'.format(value))
        return value


class WordStepField(serializers.Field):
    """
    One step of a boundary word, written ``["e1", -1]``.
    """
    default_error_messages = {
        'invalid': 'Expected a [edge id, 1 or -1] pair.',
    }

    def to_internal_value(self, data):
        if not isinstance(data, (list, tuple)) or len(data) != 2:
            self.fail('invalid')
        edge, exponent = data
        if not isinstance(edge, str) or not edge or isinstance(exponent, bool) or exponent not in (1, -1):
            self.fail('invalid')
        return (edge, exponent)

    def to_representation(self, value):
        return [value[0], value[1]]


class ElementSerializer(StrictSerializer):  # pylint: disable=abstract-method
    label = serializers.RegexField(LABEL_REGEX, trim_whitespace=False)
    sign = SignField()


class ContextSerializer(StrictSerializer):  # pylint: disable=abstract-method
    id = serializers.CharField(trim_whitespace=False)
    elements = ElementSerializer(many=True, allow_empty=False)
    tau = serializers.IntegerField(min_value=0)

    def validate_elements(self, elements):
        seen = set()
        for position, element in enumerate(elements):
            if element['label'] in seen:
                raise serializers.ValidationError(
                    'elements[{}]: label {!r} appears twice in this context.'.format(position, element['label'])
                )
            seen.add(element['label'])
        return elements


class ArrangementSerializer(StrictSerializer):  # pylint: disable=abstract-method
    """
    Validates an arrangement document against every arrangement invariant.

    Errors are keyed by field and carry the offending position, e.g.
    ``{'contexts': ['contexts[2].elements[0]: unknown label 'Q'.']}``.
    """
    d = serializers.IntegerField(min_value=2)
    labels = serializers.ListField(child=serializers.RegexField(LABEL_REGEX, trim_whitespace=False))
    contexts = ContextSerializer(many=True)
    signs = serializers.DictField(child=SignField(), required=False)

    def validate_labels(self, labels):
        seen = set()
        for position, label in enumerate(labels):
            if label == RESERVED_GENERATOR:
                raise serializers.ValidationError(
                    'labels[{}]: {!r} is reserved for the central generator.'.format(position, label)
                )
            if label in seen:
                raise serializers.ValidationError('labels[{}]: duplicate label {!r}.'.format(position, label))
            seen.add(label)
        return labels

    def validate(self, attrs):
        d = attrs['d']
        labels = set(attrs['labels'])
        errors = []
        used = set()
        context_ids = set()
        for index, context in enumerate(attrs['contexts']):
            if context['id'] in context_ids:
                errors.append('contexts[{}]: duplicate context id {!r}.'.format(index, context['id']))
            context_ids.add(context['id'])
            if context['tau'] >= d:
                errors.append('contexts[{}].tau: {} is not a residue mod {}.'.format(index, context['tau'], d))
            for position, element in enumerate(context['elements']):
                if element['label'] not in labels:
                    errors.append('contexts[{}].elements[{}]: unknown label {!r}.'.format(
                        index, position, element['label'],
                    ))
                used.add(element['label'])
        if errors:
            raise serializers.ValidationError({'contexts': errors})

        unused = [label for label in attrs['labels'] if label not in used]
        if unused:
            raise serializers.ValidationError({
                'labels': ['labels[{}]: {!r} occurs in no context.'.format(attrs['labels'].index(label), label)
                           for label in unused],
            })

        signs = attrs.get('signs')
        if signs is not None:
            sign_errors = ['signs: unknown label {!r}.'.format(label) for label in sorted(set(signs) - labels)]
            sign_errors.extend(['signs: no sign given for {!r}.'.format(label)
                                for label in attrs['labels'] if label not in signs])
            for index, context in enumerate(attrs['contexts']):
                for position, element in enumerate(context['elements']):
                    expected = signs.get(element['label'])
                    if expected is not None and element['sign'] != expected:
                        sign_errors.append(
                            'contexts[{}].elements[{}]: sign {} disagrees with the global sign {} of {!r}.'.format(
                                index, position, element['sign'], expected, element['label'],
                            )
                        )
            if sign_errors:
                raise serializers.ValidationError({'signs': sign_errors})
        return attrs


class EdgeSerializer(StrictSerializer):  # pylint: disable=abstract-method
    id = serializers.RegexField(LABEL_REGEX, trim_whitespace=False)
    source = serializers.CharField(trim_whitespace=False)
    target = serializers.CharField(trim_whitespace=False)


class FaceSerializer(StrictSerializer):  # pylint: disable=abstract-method
    context = serializers.CharField(trim_whitespace=False)
    word = serializers.ListField(child=WordStepField(), allow_empty=False)


class RealizationSerializer(StrictSerializer):  # pylint: disable=abstract-method
    """
    Structural checks only; closed words and connectivity are checked on the built complex.
    """
    vertices = serializers.ListField(child=serializers.CharField(trim_whitespace=False), allow_empty=False)
    edges = EdgeSerializer(many=True)
    faces = FaceSerializer(many=True)
    # set on complexes produced by reversing the orientation of every cell
    orientation_reversed = serializers.BooleanField(required=False, default=False)

    def validate(self, attrs):
        errors = []
        vertices = set()
        for position, vertex in enumerate(attrs['vertices']):
            if vertex in vertices:
                errors.append('vertices[{}]: duplicate vertex {!r}.'.format(position, vertex))
            vertices.add(vertex)
        edges = set()
        for position, edge in enumerate(attrs['edges']):
            if edge['id'] in edges:
                errors.append('edges[{}]: duplicate edge {!r}.'.format(position, edge['id']))
            edges.add(edge['id'])
            for end in ('source', 'target'):
                if edge[end] not in vertices:
                    errors.append('edges[{}].{}: unknown vertex {!r}.'.format(position, end, edge[end]))
        faces = set()
        for index, face in enumerate(attrs['faces']):
            if face['context'] in faces:
                errors.append('faces[{}]: duplicate face {!r}.'.format(index, face['context']))
            faces.add(face['context'])
            for position, (edge, _) in enumerate(face['word']):
                if edge not in edges:
                    errors.append('faces[{}].word[{}]: unknown edge {!r}.'.format(index, position, edge))
        if errors:
            raise serializers.ValidationError(errors)
        return attrs


class PauliOpSerializer(StrictSerializer):  # pylint: disable=abstract-method
    phase = serializers.IntegerField(min_value=0)
    sites = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField(min_value=0), min_length=2, max_length=2),
        allow_empty=False,
    )


class OperatorAssignmentSerializer(StrictSerializer):  # pylint: disable=abstract-method
    n = serializers.IntegerField(min_value=1)
    d = serializers.IntegerField(min_value=2)
    ops = serializers.DictField(child=PauliOpSerializer())

    def validate(self, attrs):
        n, d = attrs['n'], attrs['d']
        errors = []
        for label in sorted(attrs['ops']):
            op = attrs['ops'][label]
            if op['phase'] >= 2 * d:
                errors.append('ops.{}.phase: {} is not a residue mod {}.'.format(label, op['phase'], 2 * d))
            if len(op['sites']) != n:
                errors.append('ops.{}.sites: expected {} sites, got {}.'.format(label, n, len(op['sites'])))
            for position, site in enumerate(op['sites']):
                if any(exponent >= d for exponent in site):
                    errors.append('ops.{}.sites[{}]: exponents must be residues mod {}.'.format(label, position, d))
        if errors:
            raise serializers.ValidationError({'ops': errors})
        return attrs


def validated_document(serializer_class, data):
    """
    Run ``serializer_class`` on ``data`` and return its validated data.

    Raises:
        serializers.ValidationError with the serializer's error detail.
    """
    serializer = serializer_class(data=data)
    if not serializer.is_valid():
        logger.info('Rejected %s: %s', serializer_class.__name__, serializer.errors)
        raise serializers.ValidationError(serializer.errors)
    return serializer.validated_data
