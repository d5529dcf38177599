from magic_arrangements.apps.contextuality.complex2 import parse_realization
from magic_arrangements.apps.contextuality.homology import (
    cellular_homology,
    cohomology_rank,
    complex_chain,
)
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
    load,
)
from magic_arrangements.apps.contextuality.reports import homology_section


class Command(ContextualityCommand):
    help = (
        'Reports the Smith form of the arrangement boundary and H^2 over Z_d; with --realization also the '
        'cellular H_1 and H^2 of the complex.'
    )

    def build_report(self, arr, limits, report, **options):
        report['homology'] = homology_section(arr)
        if options.get('realization'):
            complex2 = load(options['realization'], parse_realization)
            report['complex'] = {
                'h1': cellular_homology(complex2),
                'h2': cohomology_rank(complex_chain(complex2, arr.d), arr.d),
            }
        return report
