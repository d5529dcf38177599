from magic_arrangements.apps.contextuality.complex2 import (
    boundary_matrix,
    reverse_orientation,
    surface_report,
)
from magic_arrangements.apps.contextuality.homology import cellular_homology
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)
from magic_arrangements.apps.contextuality.pauli import orientation_reversal_law


class Command(ContextualityCommand):
    help = (
        'Reports Euler characteristic, closedness, orientability and genus of a realization. '
        'With --operators also checks the orientation-reversal law on commuting operators.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--reverse',
            default=False,
            action='store_true',
            help='Report on the complex with every cell orientation reversed.',
        )
        parser.add_argument(
            '--pair',
            dest='pairs',
            nargs=2,
            action='append',
            metavar=('FIRST', 'SECOND'),
            help='Symplectic basis pair of generators for the commutator part of the orientation-reversal law.',
        )
        parser.add_argument('--basepoint', help='Basepoint vertex for --pair; the first vertex by default.')

    def build_report(self, arr, limits, report, **options):
        original = self.realization(arr, options)
        complex2 = original
        if options['reverse']:
            complex2 = reverse_orientation(original)
            negated = [[-entry for entry in row] for row in boundary_matrix(original)]
            report['reversed_boundary_negated'] = boundary_matrix(complex2, relative_to=original) == negated
        report['surface'] = surface_report(complex2).as_dict()
        report['surface']['orientation_reversed'] = complex2.orientation_reversed
        report['h1'] = cellular_homology(complex2)

        assignment = self.operators(options)
        if assignment is not None:
            report['orientation_reversal'] = orientation_reversal_law(
                assignment,
                original,
                arr,
                pairs=[tuple(pair) for pair in options.get('pairs') or []],
                basepoint=options.get('basepoint'),
            ).as_dict()
        return report
