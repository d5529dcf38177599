from magic_arrangements.apps.contextuality.homology import (
    coboundary,
    solve_classical,
)
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)


class Command(ContextualityCommand):
    help = 'Decides whether the arrangement has a classical realization, i.e. whether dc = tau is solvable over Z_d.'

    def build_report(self, arr, limits, report, **options):
        outcome = solve_classical(arr)
        report['classical'] = outcome.as_dict()
        if outcome.feasible:
            report['classical']['coboundary'] = coboundary(arr, outcome.values)
        return report
