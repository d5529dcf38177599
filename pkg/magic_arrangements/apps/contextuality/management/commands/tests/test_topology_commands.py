from django.core.management.base import CommandError
from django.test import SimpleTestCase

from magic_arrangements.apps.contextuality.constants import (
    CONTEXT_CYCLE,
    INCONCLUSIVE,
    K5,
    K33,
    MAGIC,
    MERMIN_SQUARE,
    MERMIN_SQUARE_RP2,
    MERMIN_STAR,
    NON_MAGIC,
    NONTRIVIAL,
    RP2_REALIZATION,
    SQUARE_OPERATORS,
    STAR_TORUS_REALIZATION,
    TORUS_REALIZATION,
    TRIVIAL,
)
from magic_arrangements.apps.contextuality.management.commands.tests.mixins import (
    CommandTestMixin,
)
from magic_arrangements.apps.contextuality.management.utils import INPUT_ERROR


class RealizeCommandTests(CommandTestMixin, SimpleTestCase):
    command_name = 'realize'

    def test_single_vertex_model(self):
        report = self.call_json(*self.fixture_args(MERMIN_SQUARE))
        assert report['realization']['vertices'] == ['v']
        assert len(report['realization']['edges']) == 9
        assert report['validation']['ok']

    def test_torus(self):
        for mode in ('topological', 'commutative'):
            report = self.call_json(*self.fixture_args(MERMIN_SQUARE, TORUS_REALIZATION), '--mode', mode)
            assert report['validation']['ok']

    def test_wrong_realization_is_reported(self):
        report = self.call_json(*self.fixture_args(MERMIN_STAR, TORUS_REALIZATION))
        assert not report['validation']['ok']
        assert report['validation']['violations']

    def test_bad_mode(self):
        with self.assertRaises(CommandError):
            self.call(*self.fixture_args(MERMIN_SQUARE), '--mode', 'sideways')


class SurfaceCommandTests(CommandTestMixin, SimpleTestCase):
    command_name = 'surface'

    def test_torus(self):
        report = self.call_json(*self.fixture_args(MERMIN_SQUARE, TORUS_REALIZATION))
        assert report['surface']['genus'] == 1
        assert report['surface']['orientable']
        assert not report['surface']['orientation_reversed']
        assert report['h1'] == [0, 0]
        assert 'reversed_boundary_negated' not in report

    def test_reverse(self):
        report = self.call_json(*self.fixture_args(MERMIN_SQUARE_RP2, RP2_REALIZATION), '--reverse')
        assert report['reversed_boundary_negated']
        assert report['surface']['orientation_reversed']
        assert report['surface']['euler_characteristic'] == 1
        assert report['surface']['orientable'] is False
        assert report['h1'] == [2]

    def test_orientation_reversal_law(self):
        report = self.call_json(
            *self.fixture_args(MERMIN_SQUARE, TORUS_REALIZATION, SQUARE_OPERATORS), '--reverse',
        )
        assert report['orientation_reversal']['ok']
        assert report['orientation_reversal']['tau_sum'] == 1

    def test_orientation_reversal_law_on_commutators(self):
        report = self.call_json(
            *self.fixture_args(MERMIN_SQUARE, TORUS_REALIZATION, SQUARE_OPERATORS),
            '--pair', 'X1', 'ZZ', '--basepoint', 'v1',
        )
        law = report['orientation_reversal']
        assert law['ok'], law['violations']
        assert law['reversed_product'] == law['product']
        assert law['ratio_omega_exponent'] == 0

    def test_orientation_reversal_law_needs_a_realization(self):
        with self.assertRaises(CommandError) as context:
            self.call(*self.fixture_args(MERMIN_SQUARE, STAR_TORUS_REALIZATION, SQUARE_OPERATORS))
        assert context.exception.returncode == INPUT_ERROR


class Pi1CommandTests(CommandTestMixin, SimpleTestCase):
    command_name = 'pi1'

    def test_projective_plane(self):
        report = self.call_json(*self.fixture_args(MERMIN_SQUARE_RP2, RP2_REALIZATION))
        assert report['abelianization'] == [2]
        assert report['finite_order']['order'] == 2
        assert report['triviality']['status'] == NONTRIVIAL
        assert report['coprime']['status'] == INCONCLUSIVE

    def test_torus_at_another_basepoint(self):
        report = self.call_json(*self.fixture_args(MERMIN_SQUARE, TORUS_REALIZATION), '--basepoint', 'v2')
        assert report['pi1']['basepoint'] == 'v2'
        assert report['abelianization'] == [0, 0]
        assert report['finite_order']['order'] is None

    def test_text_format(self):
        text = self.call(*self.fixture_args(MERMIN_SQUARE), '--format', 'text')
        lines = text.splitlines()
        assert lines[0] == 'gens: X1 X2 XX XZ YY Z1 Z2 ZX ZZ'
        assert len(lines) == 7
        assert lines[1] == 'X1 X2 XX^-1'

    def test_unknown_basepoint(self):
        with self.assertRaises(CommandError) as context:
            self.call(*self.fixture_args(MERMIN_SQUARE, TORUS_REALIZATION), '--basepoint', 'v9')
        assert context.exception.returncode == INPUT_ERROR


class PlanarityCommandTests(CommandTestMixin, SimpleTestCase):
    command_name = 'planarity'

    def test_mermin_square(self):
        report = self.call_json(*self.fixture_args(MERMIN_SQUARE))
        assert not report['planarity']['planar']
        assert report['planarity']['witness']['kind'] == K33
        assert report['theorem_a']['status'] == MAGIC
        assert 'dual' not in report

    def test_mermin_star(self):
        report = self.call_json(*self.fixture_args(MERMIN_STAR))
        assert report['planarity']['witness']['kind'] == K5

    def test_cycle_has_a_sphere_dual(self):
        report = self.call_json(*self.fixture_args(CONTEXT_CYCLE))
        assert report['planarity']['planar']
        assert report['planarity']['verified']
        assert report['theorem_a']['status'] == NON_MAGIC
        assert report['dual']['surface']['genus'] == 0
        assert report['dual']['triviality']['status'] == TRIVIAL

    def test_edge_list(self):
        text = self.call(*self.fixture_args(CONTEXT_CYCLE), '--format', 'text')
        assert text == 'C1 C4 e\nC1 C2 a\nC2 C3 b\nC3 C4 c\n'

    def test_not_restricted(self):
        path = self.write_document('open.json', {
            'd': 2,
            'labels': ['a'],
            'contexts': [{'id': 'C1', 'elements': [{'label': 'a', 'sign': 1}], 'tau': 0}],
        })
        with self.assertRaises(CommandError) as context:
            self.call('--arrangement', path)
        assert context.exception.returncode == INPUT_ERROR
