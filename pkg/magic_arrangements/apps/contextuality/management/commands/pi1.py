from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)
from magic_arrangements.apps.contextuality.pi1 import (
    abelianization,
    coprime_criterion,
    finite_order,
    presentation,
    presentation_to_text,
    triviality,
)


class Command(ContextualityCommand):
    help = (
        'Extracts a presentation of the fundamental group of a realization (the single-vertex model by '
        'default) and reports its abelianization, order and triviality.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--basepoint', help='Basepoint vertex; the first vertex by default.')
        parser.add_argument(
            '--format',
            default='json',
            choices=['json', 'text'],
            help='text prints the presentation only.',
        )

    def build_report(self, arr, limits, report, **options):
        complex2 = self.realization(arr, options)
        pres = presentation(complex2, options.get('basepoint') or complex2.vertices[0])
        if options['format'] == 'text':
            return presentation_to_text(pres)

        order = finite_order(pres, limits)
        report['pi1'] = pres.as_dict()
        report['abelianization'] = abelianization(pres)
        report['finite_order'] = {'order': order.order, 'certificate': order.certificate}
        report['triviality'] = triviality(pres, limits).as_dict()
        report['coprime'] = coprime_criterion(arr, pres, limits).as_dict()
        return report
