from magic_arrangements.apps.contextuality.arkhipov import (
    dual_complex,
    edge_list_text,
    intersection_graph,
    planarity,
    theorem_a_verdict,
)
from magic_arrangements.apps.contextuality.complex2 import (
    realization_to_data,
    surface_report,
)
from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)
from magic_arrangements.apps.contextuality.pi1 import (
    presentation,
    triviality,
)


class Command(ContextualityCommand):
    help = (
        'Tests the intersection graph of a restricted arrangement for planarity with a verified certificate '
        'and gives the planarity verdict for d = 2. A planar graph also yields its dual sphere complex.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--format', default='json', choices=['json', 'text'], help='text prints the edge list.')

    def build_report(self, arr, limits, report, **options):
        graph = intersection_graph(arr)
        if options['format'] == 'text':
            return edge_list_text(graph)

        result = planarity(graph)
        report['planarity'] = result.as_dict()
        report['theorem_a'] = theorem_a_verdict(arr).as_dict()
        if result.planar:
            dual = dual_complex(graph, result.rotation)
            report['dual'] = {
                'realization': realization_to_data(dual),
                'surface': surface_report(dual).as_dict(),
                'triviality': triviality(presentation(dual, dual.vertices[0]), limits).as_dict(),
            }
        return report
