from magic_arrangements.apps.contextuality.complex2 import (
    realization_to_data,
    validate_realization,
)
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
    add_mode_argument,
)


class Command(ContextualityCommand):
    help = (
        'Checks that --realization realizes the arrangement. Without --realization, emits and checks '
        'the single-vertex model.'
    )

    def add_command_arguments(self, parser):
        add_mode_argument(parser)

    def build_report(self, arr, limits, report, **options):
        complex2 = self.realization(arr, options)
        report['realization'] = realization_to_data(complex2)
        report['validation'] = validate_realization(arr, complex2, mode=options['mode']).as_dict()
        return report
