"""Regression corpus: worked examples of the theory with their known answers.

Each case runs a summary function on builtin groups and compares the
JSON-compatible result with the recorded one.
"""
import logging
import time
from collections import namedtuple

from .builtin_groups import make_builtin
from .closure import can_adjoin_roots, is_absolutely_closed, is_strong_amalg_base, reduction_suite
from .dominion import dominion, dominion_gap
from .nil2core import center_mod_commutator, group_exponent, subgroup_generated
from .presentation import parse_builtin_reference, parse_word_list
from .util.data_test import DataTestCase
from .witness import verify_nonclosure_certificate

logger = logging.getLogger(__name__)


def resolve_group(group_name):
    ref = parse_builtin_reference(group_name)
    return make_builtin(ref.name, *ref.args)


def structure_summary(group):
    G = resolve_group(group)
    A = G.abelianization
    return {
        'order': G.order,
        'exponent': group_exponent(G),
        'abelianization': list(A.invariant_factors),
        'center_mod_commutator_cyclic': center_mod_commutator(G).is_cyclic(),
    }


def dominion_summary(group, subgroup, element):
    G = resolve_group(group)
    H = subgroup_generated(G, parse_word_list(subgroup))
    w = G.element(element)
    return {
        'in_dominion': dominion(G, H).contains(w),
        'in_subgroup': H.contains(w),
        'gap': dominion_gap(G, H).describe(),
    }


def closure_summary(group):
    G = resolve_group(group)
    verdict = is_absolutely_closed(G)
    result = {'verdict': verdict.label}
    if verdict.certificate is not None:
        result['certificate_rechecks'] = verdict.certificate.recheck()
    return result


def amalgamation_summary(group):
    return {'verdict': is_strong_amalg_base(resolve_group(group)).label}


def witness_summary(group):
    G = resolve_group(group)
    cert = is_absolutely_closed(G).certificate
    report = verify_nonclosure_certificate(G, cert.x, cert.y, cert.n)
    return {
        'embeds': report.embeds,
        'in_dominion': report.commutator_power_in_dominion,
        'in_G': report.commutator_power_in_G,
    }


def roots_summary(group, elements, orders):
    G = resolve_group(group)
    gs = [G.element(w) for w in parse_word_list(elements)]
    return {'possible': can_adjoin_roots(G, gs, orders).possible}


def reduction_summary(group):
    report = reduction_suite(resolve_group(group))
    return {
        'verdict': report.verdict.label,
        'p_parts': [[part.prime, v.label] for part, v in report.parts],
        'sufficient': report.sufficient,
        'necessary': report.necessary,
    }


class CorpusCase(DataTestCase):
    def __init__(self, name, test_function, input_args, expected_result):
        DataTestCase.__init__(self, test_function, input_args, expected_result, meta={'name': name})


def _not_closed():
    return {'verdict': 'NotClosed', 'certificate_rechecks': True}


def corpus_cases():
    cases = [
        CorpusCase('structure/dihedral8', structure_summary, {'group': 'dihedral8'},
                   {'order': 8, 'exponent': 4, 'abelianization': [2, 2], 'center_mod_commutator_cyclic': True}),
        CorpusCase('structure/quaternion8', structure_summary, {'group': 'quaternion8'},
                   {'order': 8, 'exponent': 4, 'abelianization': [2, 2], 'center_mod_commutator_cyclic': True}),
        CorpusCase('structure/heisenberg(3)', structure_summary, {'group': 'heisenberg(3)'},
                   {'order': 27, 'exponent': 3, 'abelianization': [3, 3], 'center_mod_commutator_cyclic': True}),
        CorpusCase('structure/counterextofour', structure_summary, {'group': 'paper.counterextofour'},
                   {'order': 64, 'exponent': 4, 'abelianization': [2, 2, 4], 'center_mod_commutator_cyclic': True}),
        CorpusCase('dominion/zsquared', dominion_summary,
                   {'group': 'paper.zsquared', 'subgroup': 'x^2; y^2', 'element': '[x,y]^2'},
                   {'in_dominion': True, 'in_subgroup': False, 'gap': 'Z/2'}),
        CorpusCase('dominion/finitetwocyc(2,1,1)', dominion_summary,
                   {'group': 'paper.finitetwocyc(2,1,1)', 'subgroup': 'x^2; y^2', 'element': '[x,y]^2'},
                   {'in_dominion': True, 'in_subgroup': False, 'gap': 'Z/2'}),
        CorpusCase('dominion/zpluscyclic(2,1)', dominion_summary,
                   {'group': 'paper.zpluscyclic(2,1)', 'subgroup': 'x^2; y^2', 'element': '[x,y]^2'},
                   {'in_dominion': True, 'in_subgroup': False, 'gap': 'Z/2'}),
        CorpusCase('dominion/counterextofour_overgroup', dominion_summary,
                   {'group': 'paper.counterextofour_overgroup', 'subgroup': 'a; b^2; c^2', 'element': '[b,c]^2'},
                   {'in_dominion': True, 'in_subgroup': False, 'gap': 'Z/2'}),
    ]
    closed = ['cyclic(%d)' % n for n in range(1, 13)] + [
        'free_abelian(1)', 'paper.counterexfinal', 'dihedral8', 'quaternion8', 'heisenberg(3)']
    not_closed = ['free_abelian(2)', 'abelian(2,4)', 'abelian(0,2)', 'paper.counterextofour',
                  'paper.generalized(3,2)']
    for g in closed:
        cases.append(CorpusCase('closed/%s' % g, closure_summary, {'group': g}, {'verdict': 'Closed'}))
    for g in not_closed:
        cases.append(CorpusCase('closed/%s' % g, closure_summary, {'group': g}, _not_closed()))
    for g in ['dihedral8', 'quaternion8', 'heisenberg(3)', 'heisenberg(5)']:
        cases.append(CorpusCase('amalbase/%s' % g, amalgamation_summary, {'group': g}, {'verdict': 'Base'}))
    for g in ['cyclic(2)', 'cyclic(6)', 'free_abelian(1)', 'free_abelian(2)', 'abelian(2,4)', 'abelian(0,2)']:
        cases.append(CorpusCase('amalbase/%s' % g, amalgamation_summary, {'group': g}, {'verdict': 'NotBase'}))
    for g in not_closed:
        cases.append(CorpusCase('witness/%s' % g, witness_summary, {'group': g},
                                {'embeds': True, 'in_dominion': True, 'in_G': False}))
    cases += [
        CorpusCase('roots/quaternion8-x', roots_summary,
                   {'group': 'quaternion8', 'elements': 'x', 'orders': [2]}, {'possible': False}),
        CorpusCase('roots/quaternion8-commutator', roots_summary,
                   {'group': 'quaternion8', 'elements': '[x,y]', 'orders': [2]}, {'possible': True}),
        CorpusCase('roots/abelian(2,4)', roots_summary,
                   {'group': 'abelian(2,4)', 'elements': 'x; y', 'orders': [2, 4]}, {'possible': True}),
        CorpusCase('reduction/cyclic(6)', reduction_summary, {'group': 'cyclic(6)'},
                   {'verdict': 'Closed', 'p_parts': [[2, 'Closed'], [3, 'Closed']],
                    'sufficient': True, 'necessary': True}),
        CorpusCase('reduction/counterexfinal', reduction_summary, {'group': 'paper.counterexfinal'},
                   {'verdict': 'Closed', 'p_parts': [[3, 'Closed']], 'sufficient': False, 'necessary': True}),
        CorpusCase('reduction/counterextofour', reduction_summary, {'group': 'paper.counterextofour'},
                   {'verdict': 'NotClosed', 'p_parts': [[2, 'NotClosed']], 'sufficient': False,
                    'necessary': True}),
    ]
    return sorted(cases, key=lambda c: c.name)


CaseOutcome = namedtuple('CaseOutcome', ['name', 'passed', 'message', 'seconds'])


def run_corpus(cases=None):
    """Run every case; outcomes are ordered by case name."""
    outcomes = []
    for case in cases or corpus_cases():
        start = time.perf_counter()
        passed, message = case.try_test()
        seconds = time.perf_counter() - start
        logger.info("%s: %s (%.2fs)", case.name, 'pass' if passed else 'FAIL', seconds)
        outcomes.append(CaseOutcome(case.name, passed, message, seconds))
    return sorted(outcomes, key=lambda o: o.name)
