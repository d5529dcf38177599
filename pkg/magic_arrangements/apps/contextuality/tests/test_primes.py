"""
Tests for the prime-power decomposition and CRT gluing.
"""
import ddt
from django.test import SimpleTestCase
from factory.random import randgen, reseed_random

from magic_arrangements.apps.contextuality.homology import (
    is_classical_solution,
    solve_classical,
)
from magic_arrangements.apps.contextuality.primes import (
    GlueError,
    decompose,
    factorize,
    glue,
    prime_plan,
)
from magic_arrangements.apps.contextuality.reports import decomposition_section
from magic_arrangements.apps.contextuality.tests.factories import (
    random_arrangement,
)


@ddt.ddt
class PrimePlanTests(SimpleTestCase):

    @ddt.data(
        (1, []),
        (2, [(2, 1)]),
        (12, [(2, 2), (3, 1)]),
        (97, [(97, 1)]),
        (360, [(2, 3), (3, 2), (5, 1)]),
    )
    @ddt.unpack
    def test_factorize(self, d, factors):
        assert factorize(d) == factors

    def test_factorize_rejects_non_positive(self):
        with self.assertRaises(ValueError):
            factorize(0)

    def test_idempotents_sum_to_one(self):
        for d in range(1, 201):
            plan = prime_plan(d)
            assert plan.identity_holds(), d
            for component in plan.components:
                assert component.cofactor * component.q == d
                assert component.cofactor * component.weight % component.q == 1 % component.q

    def test_plan_for_six(self):
        assert prime_plan(6).as_dict() == {
            'd': 6,
            'components': [
                {'p': 2, 'alpha': 1, 'q': 2, 'cofactor': 3, 'weight': 1},
                {'p': 3, 'alpha': 1, 'q': 3, 'cofactor': 2, 'weight': 2},
            ],
            'identity_holds': True,
        }


class DecompositionTests(SimpleTestCase):

    def test_reductions_scale_the_constraints(self):
        arr = random_arrangement(d=12, label_count=3, context_count=3)
        reductions = decompose(arr)
        assert [reduced.d for _, reduced in reductions] == [4, 3]
        for component, reduced in reductions:
            assert reduced.tau_vector() == [component.cofactor * tau % component.q for tau in arr.tau_vector()]
            assert reduced.labels == arr.labels

    def test_joint_feasibility_and_gluing(self):
        reseed_random(606)
        for _ in range(100):
            arr = random_arrangement(d=6, label_count=randgen.randint(1, 4))
            plan = prime_plan(arr.d)
            outcomes = [solve_classical(reduced) for _, reduced in decompose(arr, plan)]
            jointly_feasible = all(outcome.feasible for outcome in outcomes)
            assert jointly_feasible == solve_classical(arr).feasible, arr
            if jointly_feasible:
                glued = glue([outcome.values for outcome in outcomes], plan)
                assert is_classical_solution(arr, glued), arr

            section = decomposition_section(arr)
            assert section['consistent']
            assert section['glued_verified'] in (None, True)

    def test_glue_checks_its_inputs(self):
        plan = prime_plan(6)
        with self.assertRaises(GlueError):
            glue([{'a': 1}], plan)
        with self.assertRaises(GlueError):
            glue([{'a': 1}, {'b': 2}], plan)
        assert glue([], prime_plan(1)) == {}

    def test_glue_weights_component_values(self):
        # component j contributes weight_j * value mod q_j
        assert glue([{'a': 1}, {'a': 2}], prime_plan(6)) == {'a': 1}
        assert glue([{'a': 0}, {'a': 1}], prime_plan(6)) == {'a': 2}
