"""
Report sections shared by the management commands, the full analysis pipeline and its classification.
"""
import logging

from django.conf import settings

from magic_arrangements.apps.contextuality.arkhipov import theorem_a_verdict
from magic_arrangements.apps.contextuality.complex2 import (
    build_single_vertex,
    surface_report,
    validate_realization,
)
from magic_arrangements.apps.contextuality.constants import (
    FEASIBLE,
    INFEASIBLE,
    MAGIC_CERTIFIED,
    NON_MAGIC_CERTIFIED,
    NON_MAGIC_CERTIFIED_CLASSIFICATION,
    NOT_APPLICABLE,
    RULE_CLASSICAL_SOLUTION,
    RULE_COPRIME_ORDER,
    RULE_QUANTUM_AND_INFEASIBLE,
    RULE_SIMPLY_CONNECTED,
    TOPOLOGICAL,
    TRIVIAL,
    UNDETERMINED,
    UNKNOWN,
)
from magic_arrangements.apps.contextuality.homology import (
    brute_force_classical,
    build_chain,
    cohomology_rank,
    is_classical_solution,
    solve_classical,
)
from magic_arrangements.apps.contextuality.pauli import (
    check_face_identity,
    verify_quantum_realization,
)
from magic_arrangements.apps.contextuality.pi1 import (
    coprime_criterion,
    presentation,
    triviality,
)
from magic_arrangements.apps.contextuality.primes import (
    decompose,
    glue,
    prime_plan,
)
from magic_arrangements.apps.contextuality.solngroup import theta_lift_check


logger = logging.getLogger(__name__)

SINGLE_VERTEX_REALIZATION = 'single-vertex'
USER_REALIZATION = 'realization'
UNDETERMINED_VALUES = (UNKNOWN, UNDETERMINED)


def new_report(arr):
    return {
        'schema_version': settings.REPORT_SCHEMA_VERSION,
        'arrangement': arrangement_summary(arr),
    }


def arrangement_summary(arr):
    return {
        'd': arr.d,
        'labels': len(arr.labels),
        'contexts': len(arr.contexts),
        'restricted': arr.restricted_flag,
        'tau': arr.tau_vector(),
    }


def classical_section(arr, limits, chain=None):
    chain = chain or build_chain(arr)
    return {
        'solver': solve_classical(arr, chain=chain).as_dict(),
        'oracle': brute_force_classical(arr, cap=limits.oracle_cap).as_dict(),
    }


def homology_section(arr, chain=None):
    chain = chain or build_chain(arr)
    return {
        'smith_diagonal': list(chain.smith.diagonal),
        'h2': cohomology_rank(chain, arr.d),
    }


def decomposition_section(arr):
    """
    Solve every prime-power reduction and glue the component solutions back together.
    """
    plan = prime_plan(arr.d)
    components, solutions = [], []
    for component, reduced in decompose(arr, plan):
        outcome = solve_classical(reduced)
        components.append({
            'q': component.q,
            'tau': reduced.tau_vector(),
            'classical': outcome.as_dict(),
        })
        if outcome.feasible:
            solutions.append(outcome.values)

    jointly_feasible = len(solutions) == len(plan.components)
    section = {
        'plan': plan.as_dict(),
        'components': components,
        'jointly_feasible': jointly_feasible,
        'consistent': jointly_feasible == solve_classical(arr).feasible,
        'glued': None,
        'glued_verified': None,
    }
    if jointly_feasible:
        glued = glue(solutions, plan)
        section['glued'] = glued
        section['glued_verified'] = is_classical_solution(arr, glued)
    return section


def realization_section(arr, complex2, limits, mode=TOPOLOGICAL, basepoint=None, assignment=None):
    """
    Validation, surface report, fundamental group verdicts and lift test of one realization.

    Stages after a failed validation are skipped and say so.
    """
    validation = validate_realization(arr, complex2, mode=mode)
    section = {
        'validation': validation.as_dict(),
        'surface': surface_report(complex2).as_dict(),
    }
    if not validation.ok:
        section['skipped'] = 'realization does not realize the arrangement'
        return section

    basepoint = basepoint or complex2.vertices[0]
    pres = presentation(complex2, basepoint)
    section['pi1'] = pres.as_dict()
    section['triviality'] = triviality(pres, limits).as_dict()
    section['coprime'] = coprime_criterion(arr, pres, limits).as_dict()
    if assignment is not None and assignment.d == arr.d:
        section['face_identity'] = check_face_identity(assignment, complex2, arr).as_dict()
    section['lift'] = theta_lift_check(arr, complex2, pres, limits).as_dict()
    return section


def classify(report):
    """
    Overall verdict with every rule that certifies it.

    magic(certified) needs a verified quantum realization and an infeasible classical system;
    anything else short of a non-magic rule stays undetermined.
    """
    feasible = report['classical']['solver']['status']
    operators = report.get('operators')
    if operators and operators['quantum']['ok'] and feasible == INFEASIBLE:
        return {'result': MAGIC_CERTIFIED, 'rules': [{'rule': RULE_QUANTUM_AND_INFEASIBLE, 'source': 'operators'}]}

    rules = []
    if feasible == FEASIBLE:
        rules.append({'rule': RULE_CLASSICAL_SOLUTION, 'source': 'classical'})
    for name, section in sorted(report['realizations'].items()):
        if 'skipped' in section:
            continue
        if section['coprime']['status'] == NON_MAGIC_CERTIFIED:
            rules.append({'rule': RULE_COPRIME_ORDER, 'source': name})
        if section['triviality']['status'] == TRIVIAL:
            rules.append({'rule': RULE_SIMPLY_CONNECTED, 'source': name})
    if rules:
        return {'result': NON_MAGIC_CERTIFIED_CLASSIFICATION, 'rules': rules}
    return {'result': UNDETERMINED, 'rules': []}


def analyze(arr, limits, realization=None, assignment=None, mode=TOPOLOGICAL, basepoint=None):
    """
    Run the whole pipeline and assemble the analysis report.

    Arguments:
        realization (CellComplex2): optional user realization, analysed next to the single-vertex model.
        assignment (OperatorAssignment): optional operators to verify as a quantum realization.
    """
    report = new_report(arr)
    notes = []
    chain = build_chain(arr)
    report['classical'] = classical_section(arr, limits, chain=chain)
    report['homology'] = homology_section(arr, chain=chain)

    report['realizations'] = {
        SINGLE_VERTEX_REALIZATION: realization_section(arr, build_single_vertex(arr), limits, assignment=assignment),
    }
    if realization is not None:
        report['realizations'][USER_REALIZATION] = realization_section(
            arr, realization, limits, mode=mode, basepoint=basepoint, assignment=assignment,
        )
    else:
        notes.append('no realization given; only the single-vertex model was analysed')

    if assignment is not None:
        report['operators'] = {'quantum': verify_quantum_realization(arr, assignment).as_dict()}
    else:
        notes.append('no operators given; magic cannot be certified')

    verdict = theorem_a_verdict(arr)
    report['theorem_a'] = verdict.as_dict()
    if verdict.status == NOT_APPLICABLE:
        notes.append('planarity criterion skipped: {}'.format(verdict.note))

    if len(prime_plan(arr.d).components) > 1:
        report['decomposition'] = decomposition_section(arr)

    report['classification'] = classify(report)
    report['notes'] = notes
    logger.info('Analysis finished: %s', report['classification']['result'])
    return report


def undetermined_stages(report, path=''):
    """
    Paths of every status or result in the report that ended unknown or undetermined.
    """
    found = []
    if isinstance(report, dict):
        for key, value in sorted(report.items()):
            where = '{}.{}'.format(path, key) if path else key
            if key in ('status', 'result') and value in UNDETERMINED_VALUES:
                found.append(where)
            else:
                found.extend(undetermined_stages(value, where))
    elif isinstance(report, list):
        for index, value in enumerate(report):
            found.extend(undetermined_stages(value, '{}[{}]'.format(path, index)))
    return found


def _flatten(value, path, lines):
    if isinstance(value, dict) and value:
        for key, item in sorted(value.items()):
            _flatten(item, '{}.{}'.format(path, key) if path else str(key), lines)
    elif isinstance(value, list) and value and any(isinstance(item, (dict, list)) for item in value):
        for index, item in enumerate(value):
            _flatten(item, '{}[{}]'.format(path, index), lines)
    elif isinstance(value, list):
        lines.append('{}: {}'.format(path, ' '.join(str(item) for item in value)))
    else:
        lines.append('{}: {}'.format(path, value))


def render_human(report):
    """
    One ``path: value`` line per leaf of the report, in sorted order.
    """
    lines = []
    _flatten(report, '', lines)
    return '\n'.join(lines) + '\n'
