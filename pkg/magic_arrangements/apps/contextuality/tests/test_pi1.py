"""
Tests for fundamental group presentations and the decisions built on them.
"""
from collections import Counter

import ddt
from django.test import SimpleTestCase
from factory.random import reseed_random

from magic_arrangements.apps.contextuality.arrangement import parse_arrangement
from magic_arrangements.apps.contextuality.complex2 import (
    build_single_vertex,
    parse_realization,
    walk,
)
from magic_arrangements.apps.contextuality.constants import (
    INCONCLUSIVE,
    MERMIN_SQUARE,
    MERMIN_SQUARE_RP2,
    NON_MAGIC_CERTIFIED,
    NONTRIVIAL,
    RP2_REALIZATION,
    STAR_TORUS_REALIZATION,
    TORUS_REALIZATION,
    TRIVIAL,
)
from magic_arrangements.apps.contextuality.homology import cellular_homology
from magic_arrangements.apps.contextuality.pi1 import (
    abelianization,
    coprime_criterion,
    coset_index,
    finite_order,
    generator_loop,
    parse_presentation_text,
    presentation,
    presentation_to_text,
    triviality,
)
from magic_arrangements.apps.contextuality.tests.factories import (
    random_connected_complex,
)
from magic_arrangements.apps.contextuality.utils import (
    Limits,
    exponent_sums,
    read_fixture,
)


LIMITS = Limits(oracle_cap=4096, coset_rows=10000, kb_rules=2000, kb_steps=100000)


def realization(name):
    return parse_realization(read_fixture(name))


@ddt.ddt
class PresentationTests(SimpleTestCase):

    def test_torus(self):
        pres = presentation(realization(TORUS_REALIZATION), 'v1')
        assert len(pres.generators) == 7
        assert len(pres.relators) == 6
        assert pres.tree == ('X2', 'XZ')
        assert abelianization(pres) == [0, 0]
        assert triviality(pres, LIMITS).status == NONTRIVIAL
        assert finite_order(pres, LIMITS).order is None

    def test_projective_plane(self):
        pres = presentation(realization(RP2_REALIZATION), 'v1')
        assert len(pres.generators) == 6
        assert abelianization(pres) == [2]
        result = finite_order(pres, LIMITS)
        assert result.order == 2
        assert 'coset enumeration' in result.certificate

    @ddt.data(('v1', 'v2'), ('v1', 'v3'))
    @ddt.unpack
    def test_basepoint_does_not_change_abelianization(self, first, second):
        torus = realization(TORUS_REALIZATION)
        assert abelianization(presentation(torus, first)) == abelianization(presentation(torus, second))

    def test_unknown_basepoint(self):
        with self.assertRaises(ValueError):
            presentation(realization(TORUS_REALIZATION), 'nowhere')

    def test_relators_record_their_faces(self):
        pres = presentation(realization(STAR_TORUS_REALIZATION), 'f0')
        assert [origin.face for origin in pres.relator_origin] == ['C0', 'C1', 'C2', 'C3', 'C4']
        assert pres.as_dict()['relator_faces'] == ['C0', 'C1', 'C2', 'C3', 'C4']

    def test_generator_loops_are_closed_at_the_basepoint(self):
        torus = realization(TORUS_REALIZATION)
        pres = presentation(torus, 'v2')
        for generator in pres.generators:
            assert walk(torus, generator_loop(torus, pres, generator)) == ('v2', 'v2')

    def test_single_vertex_presentation(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        pres = presentation(build_single_vertex(arr), 'v')
        assert pres.generators == tuple(sorted(arr.labels))
        assert pres.relators == tuple(context.word() for context in arr.contexts)

    def test_rank_on_random_connected_complexes(self):
        reseed_random(31337)
        for _ in range(50):
            complex2 = random_connected_complex()
            pres = presentation(complex2, complex2.vertices[0])
            assert len(pres.generators) == len(complex2.edges) - len(complex2.vertices) + 1
            assert len(pres.relators) == len(complex2.faces)
            assert abelianization(pres) == cellular_homology(complex2)

    def test_relators_carry_their_face_boundaries(self):
        reseed_random(31337)
        for _ in range(50):
            complex2 = random_connected_complex()
            pres = presentation(complex2, complex2.vertices[0])
            tree = set(pres.tree)
            for relator, origin in zip(pres.relators, pres.relator_origin):
                boundary = Counter()
                for edge_id, exponent in complex2.face(origin.face).word:
                    if edge_id not in tree:
                        boundary[edge_id] += exponent
                assert exponent_sums(relator, pres.generators) == [boundary[name] for name in pres.generators]

    def test_tree_paths_reach_every_vertex(self):
        torus = realization(TORUS_REALIZATION)
        pres = presentation(torus, 'v1')
        assert pres.tree_paths['v1'] == ()
        for vertex, path in pres.tree_paths.items():
            assert walk(torus, path, start='v1') == ('v1', vertex)
            assert {edge_id for edge_id, _ in path} <= set(pres.tree)

    def test_generator_loop_needs_the_tree(self):
        torus = realization(TORUS_REALIZATION)
        parsed = parse_presentation_text(presentation_to_text(presentation(torus, 'v1')))
        with self.assertRaises(ValueError):
            generator_loop(torus, parsed, 'X1')

    def test_text_round_trip(self):
        pres = presentation(realization(TORUS_REALIZATION), 'v1')
        parsed = parse_presentation_text(presentation_to_text(pres))
        assert parsed.generators == pres.generators
        assert parsed.relators == pres.relators

    @ddt.data('a b\na', 'gens: a\nb^2')
    def test_bad_text(self, text):
        with self.assertRaises(ValueError):
            parse_presentation_text(text)


class GroupDecisionTests(SimpleTestCase):

    def test_trivial_group(self):
        pres = parse_presentation_text('gens: a b\na b\nb')
        verdict = triviality(pres, LIMITS)
        assert verdict.status == TRIVIAL
        assert verdict.order == 1

    def test_no_generators(self):
        pres = parse_presentation_text('gens:\n')
        assert triviality(pres, LIMITS).status == TRIVIAL
        assert finite_order(pres, LIMITS).order == 1

    def test_coset_limit(self):
        pres = parse_presentation_text('gens: a\na^50')
        small = Limits(oracle_cap=1, coset_rows=10, kb_rules=1, kb_steps=1)
        with self.assertLogs('magic_arrangements.apps.contextuality.pi1', level='WARNING'):
            assert coset_index(pres, small) is None
        assert finite_order(pres, small).order is None
        assert coset_index(pres, LIMITS) == 50

    def test_coprime_criterion_on_the_projective_plane(self):
        rp2 = realization(RP2_REALIZATION)
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE_RP2))
        pres = presentation(rp2, 'v1')
        odd = coprime_criterion(arr.with_modulus(3, arr.tau_vector()), pres, LIMITS)
        assert odd.status == NON_MAGIC_CERTIFIED
        assert odd.order == 2
        even = coprime_criterion(arr, pres, LIMITS)
        assert even.status == INCONCLUSIVE
        assert even.order == 2

    def test_coprime_criterion_needs_a_finite_group(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        verdict = coprime_criterion(arr.with_modulus(3, arr.tau_vector()), presentation(
            realization(TORUS_REALIZATION), 'v1',
        ), LIMITS)
        assert verdict.status == INCONCLUSIVE
        assert verdict.order is None
