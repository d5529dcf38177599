""" Shared plumbing for the contextuality management commands """
import logging

from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

from magic_arrangements.apps.contextuality.arrangement import (
    ArrangementSyntaxError,
    parse_arrangement,
)
from magic_arrangements.apps.contextuality.complex2 import (
    build_single_vertex,
    parse_realization,
    require_realization,
)
from magic_arrangements.apps.contextuality.constants import (
    REALIZATION_MODE_CHOICES,
    TOPOLOGICAL,
)
from magic_arrangements.apps.contextuality.pauli import parse_operators
from magic_arrangements.apps.contextuality.reports import (
    new_report,
    render_human,
    undetermined_stages,
)
from magic_arrangements.apps.contextuality.utils import Limits, dump_report


logger = logging.getLogger(__name__)

INPUT_ERROR = 1
UNDETERMINED_EXIT = 2


def read_document(path):
    try:
        with open(path, 'rb') as document:
            return document.read()
    except OSError as exc:
        raise CommandError('Cannot read {}: {}'.format(path, exc.strerror), returncode=INPUT_ERROR) from exc


def load(path, parser):
    """
    Read and parse one input file, turning every input problem into a ``CommandError``.
    """
    try:
        return parser(read_document(path))
    except ArrangementSyntaxError as exc:
        raise CommandError('{}: {}'.format(path, exc), returncode=INPUT_ERROR) from exc
    except serializers.ValidationError as exc:
        raise CommandError('{}: {}'.format(path, exc.detail), returncode=INPUT_ERROR) from exc


def add_mode_argument(parser):
    parser.add_argument(
        '--mode',
        default=TOPOLOGICAL,
        choices=[choice for choice, _ in REALIZATION_MODE_CHOICES],
        help='topological compares face words up to rotation; commutative only as signed multisets.',
    )


class ContextualityCommand(BaseCommand):
    """
    Base for commands that read an arrangement and print a report.

    Subclasses implement ``build_report``; it may return a string to print verbatim instead of a report.
    """
    requires_system_checks = []

    def add_arguments(self, parser):
        parser.add_argument('--arrangement', required=True, help='Arrangement JSON document.')
        parser.add_argument('--realization', help='Realization (2-complex) JSON document.')
        parser.add_argument('--operators', help='Operator assignment JSON document.')
        parser.add_argument('--oracle-cap', type=int, dest='oracle_cap', help='Largest d^|L| the oracle enumerates.')
        parser.add_argument('--kb-rules', type=int, dest='kb_rules', help='Knuth-Bendix rule budget.')
        parser.add_argument('--kb-steps', type=int, dest='kb_steps', help='Rewrites allowed per word reduction.')
        parser.add_argument('--coset-rows', type=int, dest='coset_rows', help='Coset table row budget.')
        parser.add_argument(
            '--strict',
            default=False,
            action='store_true',
            help='Exit with status 2 when any verdict ends unknown or undetermined.',
        )
        parser.add_argument('--human', default=False, action='store_true', help='Print a flat text summary.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def build_report(self, arr, limits, report, **options):
        raise NotImplementedError

    def realization(self, arr, options):
        """
        The ``--realization`` complex, or the single-vertex model when none was given.
        """
        if options.get('realization'):
            return load(options['realization'], parse_realization)
        return build_single_vertex(arr)

    def verified_realization(self, arr, options):
        """
        ``realization`` checked against the arrangement in the ``--mode`` the command was given.

        Raises:
            InvalidRealization: reported as an input error by ``handle``.
        """
        complex2 = self.realization(arr, options)
        require_realization(arr, complex2, mode=options.get('mode') or TOPOLOGICAL)
        return complex2

    def operators(self, options, required=False):
        if options.get('operators'):
            return load(options['operators'], parse_operators)
        if required:
            raise CommandError('--operators is required for {}'.format(self.command_label()), returncode=INPUT_ERROR)
        return None

    def command_label(self):
        return self.__module__.rsplit('.', 1)[-1]

    def handle(self, *args, **options):
        arr = load(options['arrangement'], parse_arrangement)
        limits = Limits.from_settings(
            oracle_cap=options.get('oracle_cap'),
            coset_rows=options.get('coset_rows'),
            kb_rules=options.get('kb_rules'),
            kb_steps=options.get('kb_steps'),
        )
        report = new_report(arr)
        try:
            output = self.build_report(arr, limits, report, **options)
        except serializers.ValidationError as exc:
            raise CommandError(str(exc.detail), returncode=INPUT_ERROR) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=INPUT_ERROR) from exc

        if isinstance(output, str):
            self.stdout.write(output, ending='')
            return
        if options['human']:
            self.stdout.write(render_human(output), ending='')
        else:
            self.stdout.write(dump_report(output), ending='')

        undetermined = undetermined_stages(output)
        if undetermined:
            logger.info('%s left undetermined verdicts: %s', self.command_label(), undetermined)
            if options['strict']:
                raise CommandError(
                    'Undetermined verdicts: {}'.format(', '.join(undetermined)),
                    returncode=UNDETERMINED_EXIT,
                )
