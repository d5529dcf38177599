from magic_arrangements.apps.contextuality.management.utils import (
    ContextualityCommand,
)
from magic_arrangements.apps.contextuality.solngroup import (
    NotApplicable,
    abelian_obstruction,
    build_solution_group,
    knuth_bendix,
    restricted_product_check,
    solution_group_to_text,
)
from magic_arrangements.apps.contextuality.utils import word_from_text


class Command(ContextualityCommand):
    help = (
        'Builds the solution group of the arrangement and, with --word, reduces a word in it by '
        'bounded Knuth-Bendix completion.'
    )

    def add_command_arguments(self, parser):
        parser.add_argument('--word', help='Word such as "J XX ZZ^-1"; "1" is the identity.')
        parser.add_argument(
            '--classical',
            default=False,
            action='store_true',
            help='Drop the context commutation relators.',
        )
        parser.add_argument(
            '--format',
            default='json',
            choices=['json', 'text'],
            help='text prints the presentation only.',
        )

    def build_report(self, arr, limits, report, **options):
        group = build_solution_group(arr, quantum=not options['classical'])
        if options['format'] == 'text':
            return solution_group_to_text(group)

        report['solution_group'] = group.as_dict()
        report['abelian_obstruction'] = abelian_obstruction(arr)
        try:
            report['restricted_product'] = {'j_exponent': restricted_product_check(arr)}
        except NotApplicable as exc:
            report['restricted_product'] = {'j_exponent': None, 'note': str(exc)}

        if options.get('word'):
            word = word_from_text(options['word'])
            unknown = sorted({name for name, _ in word} - set(group.generators))
            if unknown:
                raise ValueError('Word uses unknown generators {}'.format(unknown))
            report['word'] = knuth_bendix(group, word, limits).as_dict()
        return report
