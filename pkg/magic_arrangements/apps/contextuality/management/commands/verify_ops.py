from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)
from magic_arrangements.apps.contextuality.pauli import (
    power_realization,
    verify_operator_realization,
    verify_quantum_realization,
)


class Command(ContextualityCommand):
    help = (
        'Verifies an operator table as a quantum realization: T^d = I, context products equal omega^tau '
        'and operators in a context commute.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument(
            '--operator-only',
            dest='operator_only',
            default=False,
            action='store_true',
            help='Skip the commutation checks.',
        )
        parser.add_argument('--power', type=int, help='Also verify the m-th power against m * tau.')

    def build_report(self, arr, limits, report, **options):
        assignment = self.operators(options, required=True)
        check = verify_operator_realization if options['operator_only'] else verify_quantum_realization
        report['operators'] = check(arr, assignment).as_dict()
        report['operators']['quantum'] = not options['operator_only']

        if options.get('power') is not None:
            powered, powered_arr = power_realization(assignment, arr, options['power'])
            report['power'] = {
                'm': options['power'],
                'tau': powered_arr.tau_vector(),
                'check': verify_quantum_realization(powered_arr, powered).as_dict(),
            }
        return report
