from magic_arrangements.apps.contextuality.homology import (
    brute_force_classical,
    solve_classical,
)
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)


class Command(ContextualityCommand):
    help = 'Enumerates every classical assignment up to --oracle-cap and compares with the algebraic solver.'

    def build_report(self, arr, limits, report, **options):
        found = brute_force_classical(arr, cap=limits.oracle_cap)
        solved = solve_classical(arr)
        report['oracle'] = found.as_dict()
        report['solver'] = solved.as_dict()
        agrees = None
        if found.feasible is not None:
            # the oracle's first hit is the solver's canonical solution
            agrees = found.feasible == solved.feasible and getattr(found, 'values', None) == getattr(
                solved, 'values', None,
            )
        report['agrees'] = agrees
        return report
