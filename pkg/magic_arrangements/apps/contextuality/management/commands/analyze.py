import logging

from magic_arrangements.apps.contextuality.complex2 import parse_realization
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
    add_mode_argument,
    load,
)
from magic_arrangements.apps.contextuality.reports import analyze


logger = logging.getLogger(__name__)


class Command(ContextualityCommand):
    help = (
        'Runs the full pipeline on an arrangement (plus an optional realization and operator table) '
        'and reports whether it is certifiably magic, certifiably non-magic, or undetermined.'
    )

    def add_command_arguments(self, parser):
        add_mode_argument(parser)
        parser.add_argument('--basepoint', help='Basepoint vertex of the realization.')

    def build_report(self, arr, limits, report, **options):
        realization = None
        if options.get('realization'):
            realization = load(options['realization'], parse_realization)
        return analyze(
            arr,
            limits,
            realization=realization,
            assignment=self.operators(options),
            mode=options['mode'],
            basepoint=options.get('basepoint'),
        )
