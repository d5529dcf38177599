from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)
from magic_arrangements.apps.contextuality.reports import decomposition_section


class Command(ContextualityCommand):
    help = (
        'Splits the arrangement into one system per prime power of d, solves each, and glues the '
        'component solutions back together.'
    )

    def build_report(self, arr, limits, report, **options):
        report['decomposition'] = decomposition_section(arr)
        return report
