from magic_arrangements.apps.contextuality.constants import (
    LIFT_EXISTS,
    LIFT_FAILS,
)
from magic_arrangements.apps.contextuality.homology import solve_classical
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
    add_mode_argument,
)
from magic_arrangements.apps.contextuality.pi1 import presentation
from magic_arrangements.apps.contextuality.solngroup import theta_lift_check


class Command(ContextualityCommand):
    help = (
        'Decides whether the operator representation of the fundamental group of a realization lifts '
        'to the solution group, and compares with classical feasibility.'
    )

    def add_command_arguments(self, parser):
        add_mode_argument(parser)
        parser.add_argument('--basepoint', help='Basepoint vertex; the first vertex by default.')

    def build_report(self, arr, limits, report, **options):
        complex2 = self.verified_realization(arr, options)
        pres = presentation(complex2, options.get('basepoint') or complex2.vertices[0])
        verdict = theta_lift_check(arr, complex2, pres, limits)
        feasible = solve_classical(arr).feasible
        report['lift'] = verdict.as_dict()
        report['classically_feasible'] = feasible
        report['agrees'] = None
        if verdict.status in (LIFT_EXISTS, LIFT_FAILS):
            report['agrees'] = (verdict.status == LIFT_EXISTS) == feasible
        return report
