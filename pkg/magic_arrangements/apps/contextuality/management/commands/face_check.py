from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
    add_mode_argument,
)
from magic_arrangements.apps.contextuality.pauli import (
    check_face_identity,
    commutator_identity,
)


class Command(ContextualityCommand):
    help = (
        'Checks that every face boundary of a realization evaluates to omega^tau under the operators, '
        'and optionally the commutator identity over given generator pairs.'
    )

    def add_command_arguments(self, parser):
        add_mode_argument(parser)
        parser.add_argument(
            '--pair',
            dest='pairs',
            nargs=2,
            action='append',
            metavar=('FIRST', 'SECOND'),
            help='Fundamental group generators whose loop operators enter the commutator product.',
        )
        parser.add_argument('--basepoint', help='Basepoint vertex for --pair; the first vertex by default.')

    def build_report(self, arr, limits, report, **options):
        complex2 = self.verified_realization(arr, options)
        assignment = self.operators(options, required=True)
        report['face_identity'] = check_face_identity(assignment, complex2, arr).as_dict()
        if options.get('pairs'):
            report['commutator_identity'] = commutator_identity(
                assignment,
                complex2,
                arr,
                [tuple(pair) for pair in options['pairs']],
                options.get('basepoint') or complex2.vertices[0],
            ).as_dict()
        return report
