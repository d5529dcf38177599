"""
Tests for solution groups, Knuth-Bendix reduction and the lift test.
"""
import ddt
from django.test import SimpleTestCase
from factory.random import reseed_random

from magic_arrangements.apps.contextuality.arrangement import parse_arrangement
from magic_arrangements.apps.contextuality.complex2 import (
    CellComplex2,
    Face,
    InvalidRealization,
    build_single_vertex,
    parse_realization,
)
from magic_arrangements.apps.contextuality.constants import (
    CONTEXT_CYCLE,
    IRREDUCIBLE_DISTINCT,
    LIFT_EXISTS,
    LIFT_FAILS,
    MERMIN_SQUARE,
    MERMIN_SQUARE_RP2,
    MERMIN_STAR,
    REDUCES_TO_IDENTITY,
    REDUCES_TO_J_POWER,
    RP2_REALIZATION,
    STAR_TORUS_REALIZATION,
    TORUS_REALIZATION,
    UNKNOWN,
)
from magic_arrangements.apps.contextuality.homology import solve_classical
from magic_arrangements.apps.contextuality.pi1 import (
    generator_loop,
    presentation,
)
from magic_arrangements.apps.contextuality.solngroup import (
    NotApplicable,
    RewritingSystem,
    abelian_obstruction,
    build_solution_group,
    knuth_bendix,
    restricted_product_check,
    rewriting_system,
    solution_group_to_text,
    theta_lift_check,
)
from magic_arrangements.apps.contextuality.tests.factories import (
    random_arrangement,
)
from magic_arrangements.apps.contextuality.utils import (
    Limits,
    invert_word,
    read_fixture,
    word_from_text,
)


LIMITS = Limits(oracle_cap=4096, coset_rows=10000, kb_rules=2000, kb_steps=100000)
DEFAULT_LIMITS = Limits.from_settings()


def context_cycle(twisted=False):
    arr = parse_arrangement(read_fixture(CONTEXT_CYCLE))
    if twisted:
        arr = arr.with_tau([1, 0, 0, 0])
    return arr


@ddt.ddt
class SolutionGroupTests(SimpleTestCase):

    def test_presentation(self):
        group = build_solution_group(context_cycle())
        assert group.generators == ('J', 'e', 'a', 'b', 'c')
        assert len(group.relators) == 1 + 4 + 4 + 4 + 4
        assert group.relators[0] == (('J', 1), ('J', 1))
        assert group.relators[-1] == (('c', 1), ('e', 1))
        assert len(build_solution_group(context_cycle(), quantum=False).relators) == 13

    def test_constraints_add_inverse_j_powers(self):
        group = build_solution_group(context_cycle(twisted=True))
        assert group.relators[-4] == (('e', 1), ('a', 1), ('J', -1))

    def test_text(self):
        text = solution_group_to_text(build_solution_group(context_cycle()))
        assert text.splitlines()[0] == 'gens: J e a b c'
        assert 'J^-1' not in text.splitlines()[-1]

    def test_as_dict(self):
        data = build_solution_group(context_cycle()).as_dict()
        assert data['quantum']
        assert data['d'] == 2
        assert data['relators'][0] == 'J J'

    @ddt.data(
        ('J', REDUCES_TO_J_POWER, 'J', 1),
        ('e a', REDUCES_TO_IDENTITY, '1', 0),
        ('J a J e', REDUCES_TO_IDENTITY, '1', 0),
        ('a', IRREDUCIBLE_DISTINCT, 'e', None),
        ('b c^-1 J', REDUCES_TO_J_POWER, 'J', 1),
    )
    @ddt.unpack
    def test_cycle_word_problem(self, text, status, normal_form, j_exponent):
        verdict = knuth_bendix(build_solution_group(context_cycle()), word_from_text(text), LIMITS)
        assert verdict.completed
        assert verdict.status == status
        assert verdict.normal_form == normal_form
        assert verdict.j_exponent == j_exponent

    def test_twisted_cycle_collapses_j(self):
        verdict = knuth_bendix(build_solution_group(context_cycle(twisted=True)), word_from_text('J'), LIMITS)
        assert verdict.status == REDUCES_TO_IDENTITY

    def test_partial_system_never_claims_distinct(self):
        group = build_solution_group(parse_arrangement(read_fixture(MERMIN_SQUARE)))
        tiny = Limits(oracle_cap=1, coset_rows=1, kb_rules=5, kb_steps=50)
        with self.assertLogs('magic_arrangements.apps.contextuality.solngroup', level='WARNING'):
            system = rewriting_system(group, tiny)
        assert not system.completed
        verdict = knuth_bendix(group, word_from_text('X1 Z1'), tiny, system=system)
        assert verdict.status != IRREDUCIBLE_DISTINCT

    def test_rewriting_system_orients_by_shortlex(self):
        system = RewritingSystem(alphabet=None, max_rules=10, max_steps=100)
        system.complete([((1, 0), (0, 1)), ((0, 0), ())])
        assert system.completed
        assert system.reduce((1, 0, 0)) == (1,)
        assert system.reduce((1, 0)) == (0, 1)


class CriterionTests(SimpleTestCase):

    def test_restricted_product(self):
        assert restricted_product_check(parse_arrangement(read_fixture(MERMIN_SQUARE))) == 1
        assert restricted_product_check(context_cycle()) == 0
        assert restricted_product_check(context_cycle(twisted=True)) == 1

    def test_restricted_product_needs_d_2(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        with self.assertRaises(NotApplicable):
            restricted_product_check(arr.with_modulus(3, arr.tau_vector()))

    def test_abelian_obstruction(self):
        assert abelian_obstruction(context_cycle()) == {'obstructed': False, 'witness': None, 'j_exponent': 0}
        obstruction = abelian_obstruction(context_cycle(twisted=True))
        assert obstruction['obstructed']
        assert obstruction['j_exponent'] != 0
        assert set(obstruction['witness']) == {'C1', 'C2', 'C3', 'C4'}


@ddt.ddt
class LiftTests(SimpleTestCase):

    def lift(self, arr, complex2=None, limits=LIMITS):
        complex2 = complex2 or build_single_vertex(arr)
        return theta_lift_check(arr, complex2, presentation(complex2, complex2.vertices[0]), limits)

    def test_untwisted_cycle_lifts(self):
        verdict = self.lift(context_cycle())
        assert verdict.status == LIFT_EXISTS
        assert set(verdict.alpha) == {'a', 'b', 'c', 'e'}

    def test_twisted_cycle_fails_by_collapse(self):
        verdict = self.lift(context_cycle(twisted=True))
        assert verdict.status == LIFT_FAILS
        assert verdict.witness == {'j_collapse': 1}

    @ddt.data(
        (MERMIN_SQUARE, None),
        (MERMIN_SQUARE, TORUS_REALIZATION),
        (MERMIN_STAR, None),
        (MERMIN_STAR, STAR_TORUS_REALIZATION),
    )
    @ddt.unpack
    def test_magic_fixtures_fail_to_lift(self, arrangement_name, realization_name):
        arr = parse_arrangement(read_fixture(arrangement_name))
        complex2 = parse_realization(read_fixture(realization_name)) if realization_name else None
        verdict = self.lift(arr, complex2=complex2, limits=DEFAULT_LIMITS)
        assert verdict.status == LIFT_FAILS
        assert verdict.witness['j_exponent'] == 1
        assert verdict.witness['normal_form'] == 'J'

    def test_torus_relator_images_reduce_to_j(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        torus = parse_realization(read_fixture(TORUS_REALIZATION))
        pres = presentation(torus, 'v1')
        loops = {generator: generator_loop(torus, pres, generator) for generator in pres.generators}
        image = ()
        for relator in pres.relators:
            for generator, exponent in relator:
                image += loops[generator] if exponent == 1 else invert_word(loops[generator])
        verdict = knuth_bendix(build_solution_group(arr), image, DEFAULT_LIMITS)
        assert verdict.completed
        assert verdict.status == REDUCES_TO_J_POWER
        assert verdict.j_exponent == 1

    def test_projective_plane_lifts_for_odd_d(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE_RP2))
        arr = arr.with_modulus(3, arr.tau_vector())
        verdict = self.lift(arr, complex2=parse_realization(read_fixture(RP2_REALIZATION)), limits=DEFAULT_LIMITS)
        assert verdict.status == LIFT_EXISTS

    def test_tight_limits_leave_the_square_unknown(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        verdict = self.lift(arr, limits=Limits(oracle_cap=1, coset_rows=1, kb_rules=5, kb_steps=50))
        assert verdict.status == UNKNOWN
        assert verdict.as_dict()['status'] == UNKNOWN

    def test_torus_lifts_a_classical_square(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        arr = arr.with_tau([0] * len(arr.contexts))
        verdict = self.lift(arr, complex2=parse_realization(read_fixture(TORUS_REALIZATION)))
        assert verdict.status == LIFT_EXISTS

    def test_face_missing_a_label_is_rejected(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        complex2 = build_single_vertex(arr)
        broken = CellComplex2(
            vertices=complex2.vertices,
            edges=complex2.edges,
            faces=tuple(
                Face(face.context, face.word[:-1]) if face.context == 'C4' else face for face in complex2.faces
            ),
        )
        with self.assertRaises(InvalidRealization):
            self.lift(arr, complex2=broken)

    def test_realization_of_another_arrangement_is_rejected(self):
        arr = parse_arrangement(read_fixture(MERMIN_SQUARE))
        with self.assertRaises(InvalidRealization):
            self.lift(arr, complex2=parse_realization(read_fixture(STAR_TORUS_REALIZATION)))

    def test_negated_face_in_a_commutative_realization(self):
        arr = context_cycle(twisted=True)
        complex2 = build_single_vertex(arr)
        first = complex2.faces[0]
        negated = CellComplex2(
            vertices=complex2.vertices,
            edges=complex2.edges,
            faces=(Face(first.context, tuple((label, -sign) for label, sign in first.word)),) + complex2.faces[1:],
        )
        verdict = self.lift(arr, complex2=negated)
        assert verdict.status == LIFT_FAILS
        assert verdict.witness == {'j_collapse': 1}

    def test_lift_agrees_with_classical_feasibility(self):
        reseed_random(2718)
        decided = 0
        for _ in range(200):
            arr = random_arrangement()
            verdict = self.lift(arr, limits=DEFAULT_LIMITS)
            if verdict.status == UNKNOWN:
                continue
            decided += 1
            assert (verdict.status == LIFT_EXISTS) == solve_classical(arr).feasible, arr
        assert decided > 0
