import itertools

import numpy as np
import pytest

from nil2.builtin_groups import make_builtin
from nil2.closure import (CONDTHREE, CONDTWO, FiniteClosureEngine, PairProblem, PreconditionError, Witness,
                          bounded_search, can_adjoin_roots, check_pair, is_ac_abelian, is_ac_exponent_p,
                          is_absolutely_closed, is_strong_amalg_base, necessary_center_cyclic, parse_budget,
                          reduction_suite, search_budget, sufficient_cyclic_quotient)
from nil2.exactlin import hnf_basis, quotient_structure
from nil2.nil2core import InfiniteGroupError, Nil2Group, center_mod_commutator, direct_sum
from nil2.presentation import GroupFile
from nil2.util import brute_force


def group(group_name):
    return GroupFile().group(group_name)


@pytest.fixture(autouse=True)
def default_budget_env(monkeypatch):
    monkeypatch.delenv('NIL2_BUDGET', raising=False)


def test_check_pair_integers():
    Z = make_builtin('free_abelian', 1)
    t = Z.generators()[0]
    result = check_pair(Z, t, t, 2)
    assert result.satisfied
    assert result.condtwo_witness is None
    w = result.condthree_witness
    assert w.kind == CONDTHREE
    assert (w.a, w.b, w.c) == (0, 0, -1)
    assert w.g1.is_identity() and w.g2.is_identity()
    assert result.verify()
    # other solutions verify too
    assert Witness(CONDTHREE, 1, -1, 0, Z.identity(), Z.identity()).verify(t, t, 2)
    assert not Witness(CONDTHREE, 0, 0, 0, Z.identity(), Z.identity()).verify(t, t, 2)


def test_check_pair_free_abelian():
    Z2 = make_builtin('free_abelian', 2)
    x, y = Z2.generators()
    result = check_pair(Z2, x, y, 2)
    assert not result.satisfied
    assert result.as_dict() == {'x': 'x', 'y': 'y', 'n': 2, 'condtwo': None, 'condthree': None}
    # every element is its own first root
    assert check_pair(Z2, x, y, 1).satisfied
    with pytest.raises(PreconditionError):
        check_pair(Z2, x, y, 0)


def test_check_pair_dihedral():
    D8 = make_builtin('dihedral8')
    x, y = D8.generators()
    result = check_pair(D8, x, y, 2)
    w = result.condtwo_witness
    assert w.kind == CONDTWO
    assert (w.a, w.b, w.c) == (0, 0, 0)
    assert w.g1 == y
    assert w.g2.is_identity()
    assert not w.g1.commutator(x).is_identity()
    assert result.verify()
    assert result.as_dict()['condtwo'] == {'kind': 'condtwo', 'a': 0, 'b': 0, 'c': 0, 'g1': 'y', 'g2': '1'}


@pytest.mark.parametrize('group_name', ['dihedral8', 'quaternion8', 'heisenberg(3)', 'cyclic(4)'])
def test_witnesses_verify(group_name):
    G = group(group_name)
    reps = brute_force.abelian_representatives(G)
    for x, y in itertools.product(reps, repeat=2):
        for n in (1, 2, 3, 4):
            result = check_pair(G, x, y, n)
            assert result.satisfied
            assert result.verify()


@pytest.mark.parametrize('group_name', [
    'dihedral8', 'quaternion8', 'abelian(2,4)', 'abelian(3,3)', 'cyclic(6)', 'heisenberg(3)',
    pytest.param('paper.counterextofour', marks=pytest.mark.slow),
])
def test_pair_conditions_against_enumeration(group_name):
    G = group(group_name)
    e = G.abelianization.exponent
    reps = brute_force.abelian_representatives(G)
    for x, y in itertools.combinations_with_replacement(reps, 2):
        for n in range(1, e + 1):
            result = check_pair(G, x, y, n)
            expected = brute_force.pair_conditions(G, x, y, n)
            assert (result.condtwo_witness is not None, result.condthree_witness is not None) == expected
            assert result.verify()


def test_divisibility_shortcut():
    C4 = make_builtin('cyclic', 4)
    x = C4.generators()[0]
    w = PairProblem(C4, x, x ** 2, 2).divisibility_witness()
    assert (w.kind, w.a, w.b, w.c) == (CONDTHREE, 0, -1, 0)
    assert w.verify(x, x ** 2, 2)

    D8 = make_builtin('dihedral8')
    x, y = D8.generators()
    w = PairProblem(D8, x, y, 3).divisibility_witness()
    assert (w.a, w.b, w.c) == (0, 0, 0)
    assert w.verify(x, y, 3)

    Z2 = make_builtin('free_abelian', 2)
    x, y = Z2.generators()
    assert PairProblem(Z2, x, y, 2).divisibility_witness() is None


@pytest.mark.parametrize('group_name', [
    'dihedral8', 'quaternion8', 'abelian(2,4)', 'heisenberg(3)',
    pytest.param('paper.counterextofour', marks=pytest.mark.slow),
    pytest.param('paper.generalized(3,1)', marks=pytest.mark.slow),
])
def test_finite_engine_matches_check_pair(group_name):
    G = group(group_name)
    engine = FiniteClosureEngine(G)
    table = engine.table
    for i, j in itertools.combinations_with_replacement(range(len(table)), 2):
        u, v = table.elements[i], table.elements[j]
        x, y = table.lift(u), table.lift(v)
        for n in range(1, 2 * engine.exponent + 1):
            assert engine.holds(u, v, n) == check_pair(G, x, y, n).satisfied


def test_multipliers():
    engine = FiniteClosureEngine(make_builtin('paper.counterextofour'))
    assert list(engine.multipliers()) == [(2, 2), (4, 0)]
    engine = FiniteClosureEngine(make_builtin('cyclic', 12))
    assert list(engine.multipliers()) == [(2, 2), (4, 4), (8, 8), (3, 3), (9, 9)]


@pytest.mark.parametrize('group_name, label', [
    ('cyclic(1)', 'Closed'),
    ('cyclic(12)', 'Closed'),
    ('free_abelian(1)', 'Closed'),
    ('free_abelian(2)', 'NotClosed'),
    ('abelian(2,4)', 'NotClosed'),
    ('abelian(0,2)', 'NotClosed'),
    ('abelian(2,3)', 'Closed'),
    ('dihedral8', 'Closed'),
    ('quaternion8', 'Closed'),
    ('heisenberg(3)', 'Closed'),
    ('paper.counterexfinal', 'Closed'),
    ('paper.counterextofour', 'NotClosed'),
    ('paper.zsquared', 'NotClosed'),
])
def test_closure_verdicts(group_name, label):
    G = group(group_name)
    verdict = is_absolutely_closed(G)
    assert verdict.label == label
    if verdict.holds is False:
        assert verdict.certificate.recheck()
        assert verdict.as_dict()['certificate']['n'] == verdict.certificate.n


@pytest.mark.parametrize('group_name', [
    'cyclic(4)', 'abelian(2,2)', 'abelian(2,4)', 'dihedral8', 'quaternion8', 'heisenberg(3)',
    pytest.param('paper.counterextofour', marks=pytest.mark.slow),
    pytest.param('paper.counterexfinal', marks=pytest.mark.slow),
])
def test_closure_against_enumeration(group_name):
    G = group(group_name)
    assert is_absolutely_closed(G, method='enumerate').holds == brute_force.is_absolutely_closed(G)


def test_abelian_classification():
    v = is_ac_abelian(make_builtin('free_abelian', 2))
    assert v.holds is False
    assert v.method == 'abelian-classification'
    assert v.certificate.as_dict() == {'x': 'x', 'y': 'y', 'n': 2}

    v = is_ac_abelian(make_builtin('abelian', 2, 4))
    assert v.holds is False
    assert v.certificate.n == 2
    assert v.certificate.recheck()

    v = is_ac_abelian(make_builtin('abelian', 0, 2))
    assert v.holds is False
    assert v.certificate.n == 2
    assert v.certificate.recheck()

    v = is_ac_abelian(make_builtin('abelian', 9, 3))
    assert v.holds is False
    assert v.certificate.n == 3

    assert is_ac_abelian(make_builtin('cyclic', 6)).method == 'cyclic'
    assert is_ac_abelian(quotient_structure(1, hnf_basis(1, [(6,)]))).holds is True
    assert is_ac_abelian(quotient_structure(2, hnf_basis(2, [(2, 0)]))).holds is False

    with pytest.raises(PreconditionError):
        is_ac_abelian(make_builtin('dihedral8'))


def test_closure_methods():
    D8 = make_builtin('dihedral8')
    assert is_absolutely_closed(D8).method == 'finite-enumeration'
    assert is_absolutely_closed(D8, method='enumerate').checks > 0
    with pytest.raises(InfiniteGroupError):
        is_absolutely_closed(make_builtin('free_abelian', 2), method='enumerate')
    with pytest.raises(ValueError):
        is_absolutely_closed(D8, method='guess')

    v = is_absolutely_closed(make_builtin('free_abelian', 2), method='search')
    assert v.holds is False
    assert v.method == 'bounded-search'
    assert v.certificate.recheck()

    v = is_absolutely_closed(make_builtin('paper.zsquared'))
    assert v.method == 'bounded-search'
    assert v.certificate.as_dict() == {'x': 'x', 'y': 'y', 'n': 2}

    v = bounded_search(make_builtin('paper.zsquared'), {'max_checks': 0})
    assert v.holds is None
    assert v.label == 'Unknown'
    assert v.reason == 'search budget exhausted'
    assert v.as_dict()['budget']['max_checks'] == 0


def test_search_budget(monkeypatch):
    assert search_budget() == {'radius': 3, 'primes': (2, 3, 5, 7), 'max_power': 2, 'max_checks': 2000}
    assert search_budget(radius=1, max_checks=None)['radius'] == 1
    monkeypatch.setenv('NIL2_BUDGET', 'radius=1, max_checks=5, primes=2:3')
    budget = search_budget()
    assert budget['radius'] == 1
    assert budget['max_checks'] == 5
    assert budget['primes'] == (2, 3)
    assert search_budget(radius=2)['radius'] == 2
    monkeypatch.setenv('NIL2_BUDGET', 'max_checks=0')
    assert is_absolutely_closed(make_builtin('paper.zsquared')).holds is None

    assert parse_budget('4') == {'radius': 4}
    for bad in ['radius', 'colour=3', 'radius=x']:
        with pytest.raises(ValueError):
            parse_budget(bad)


@pytest.mark.parametrize('group_name, label', [
    ('dihedral8', 'Base'),
    ('quaternion8', 'Base'),
    ('heisenberg(3)', 'Base'),
    ('heisenberg(5)', 'Base'),
    ('cyclic(2)', 'NotBase'),
    ('cyclic(6)', 'NotBase'),
    ('free_abelian(1)', 'NotBase'),
    ('abelian(2,4)', 'NotBase'),
])
def test_amalgamation_verdicts(group_name, label):
    assert is_strong_amalg_base(group(group_name)).label == label


def test_amalgamation_certificates():
    v = is_strong_amalg_base(make_builtin('cyclic', 2))
    assert v.method == 'center'
    assert v.certificate.reason == "center is larger than G'"
    assert v.certificate.g.word() == 'x'

    # the free class-2 group on two generators has Z(G) = G' but is infinite
    F = Nil2Group(('x', 'y'), name='F2')
    v = is_strong_amalg_base(F)
    assert v.holds is None
    assert v.label == 'Unknown'


@pytest.mark.parametrize('group_name', [
    'dihedral8', 'quaternion8', 'heisenberg(3)', 'cyclic(2)', 'abelian(2,4)',
    pytest.param('paper.counterextofour', marks=pytest.mark.slow),
])
def test_amalgamation_against_enumeration(group_name):
    G = group(group_name)
    assert is_strong_amalg_base(G).holds == brute_force.is_strong_amalg_base(G)


def test_roots():
    Q8 = make_builtin('quaternion8')
    x, y = Q8.generators()
    result = can_adjoin_roots(Q8, [x], [2])
    assert not result.possible
    root = result.roots[0]
    c = result.c[0][0]
    assert not any((root ** 2 * (x ** c).inverse()).coords.e)
    assert result.product == root.commutator(x)
    assert not result.product.is_identity()
    assert set(result.as_dict()) == {'possible', 'c', 'y', 'product'}

    assert can_adjoin_roots(Q8, [x.commutator(y)], [2]).possible
    assert can_adjoin_roots(Q8, [x], [1]).possible
    A = make_builtin('abelian', 2, 4)
    assert can_adjoin_roots(A, A.generators(), [2, 4]).possible
    assert can_adjoin_roots(A, A.generators(), [2, 4]).as_dict() == {'possible': True}

    with pytest.raises(PreconditionError):
        can_adjoin_roots(Q8, [], [])
    with pytest.raises(PreconditionError):
        can_adjoin_roots(Q8, [x], [2, 2])
    with pytest.raises(PreconditionError):
        can_adjoin_roots(Q8, [x], [0])


@pytest.mark.parametrize('group_name', ['dihedral8', 'quaternion8', 'abelian(2,4)', 'heisenberg(3)'])
def test_roots_against_enumeration(group_name):
    G = group(group_name)
    reps = brute_force.abelian_representatives(G)
    e = G.abelianization.exponent
    for g in reps:
        for n in range(1, e + 1):
            assert can_adjoin_roots(G, [g], [n]).possible == brute_force.can_adjoin_roots(G, [g], [n])
    x, y = G.generators()
    for ns in [(2, 2), (2, e), (e, 1)]:
        assert can_adjoin_roots(G, [x, y], ns).possible == brute_force.can_adjoin_roots(G, [x, y], ns)


def test_exponent_p():
    for group_name in ['heisenberg(3)', 'heisenberg(5)', 'paper.counterexfinal', 'cyclic(6)', 'abelian(3,3)',
                 'abelian(5,5)', 'abelian(2,3)']:
        G = group(group_name)
        v = is_ac_exponent_p(G)
        assert v.method == 'center-quotient'
        assert v.holds == is_absolutely_closed(G).holds
    v = is_ac_exponent_p(make_builtin('abelian', 3, 3))
    assert v.holds is False
    assert v.certificate.n == 3
    assert v.certificate.recheck()

    with pytest.raises(PreconditionError):
        is_ac_exponent_p(make_builtin('dihedral8'))
    with pytest.raises(PreconditionError):
        is_ac_exponent_p(make_builtin('free_abelian', 1))


def test_structural_conditions():
    assert sufficient_cyclic_quotient(make_builtin('cyclic', 6))
    assert not sufficient_cyclic_quotient(make_builtin('paper.counterexfinal'))
    assert necessary_center_cyclic(make_builtin('paper.counterexfinal'))
    assert necessary_center_cyclic(make_builtin('paper.counterextofour'))
    assert not necessary_center_cyclic(make_builtin('abelian', 2, 2))


def test_reduction_suite():
    report = reduction_suite(make_builtin('cyclic', 6))
    assert report.verdict.holds
    assert [(part.prime, part.group.order, v.label) for part, v in report.parts] == [(2, 2, 'Closed'), (3, 3, 'Closed')]
    assert report.sufficient and report.necessary

    report = reduction_suite(make_builtin('paper.counterextofour'))
    assert report.verdict.label == 'NotClosed'
    assert [v.label for _, v in report.parts] == ['NotClosed']
    d = report.as_dict()
    assert d['p_parts'][0]['order'] == 64
    assert d['necessary_center_cyclic'] is True
    assert d['sufficient_cyclic_quotient'] is False

    with pytest.raises(InfiniteGroupError):
        reduction_suite(make_builtin('free_abelian', 1))


corpus_groups = ['cyclic(%d)' % n for n in range(1, 13)] + [
    'free_abelian(1)', 'free_abelian(2)', 'abelian(2,3)', 'abelian(2,4)', 'abelian(0,2)', 'dihedral8',
    'quaternion8', 'heisenberg(3)', 'heisenberg(5)', 'paper.counterexfinal', 'paper.counterextofour',
    'paper.zsquared']


@pytest.mark.parametrize('group_name', ['cyclic(4)', 'abelian(2,2)', 'abelian(2,4)', 'dihedral8', 'quaternion8',
                                        'paper.finitetwocyc(2,0,1)'])
def test_condtwo_means_no_common_roots(group_name):
    G = group(group_name)
    assert G.order <= 16
    reps = brute_force.abelian_representatives(G)
    for x, y in itertools.combinations_with_replacement(reps, 2):
        for n in range(1, G.abelianization.exponent + 1):
            roots = can_adjoin_roots(G, [x, y], [n, n])
            assert PairProblem(G, x, y, n).has_condtwo() == (not roots.possible), (x.word(), y.word(), n)


@pytest.mark.parametrize('group_name', corpus_groups)
def test_bases_are_closed(group_name):
    G = group(group_name)
    if is_strong_amalg_base(G).holds:
        assert is_absolutely_closed(G).holds


@pytest.mark.parametrize('group_name', [g for g in corpus_groups if group(g).is_finite()])
def test_closed_groups_have_cyclic_center_quotient(group_name):
    G = group(group_name)
    if is_absolutely_closed(G).holds:
        assert center_mod_commutator(G).is_cyclic()
        assert necessary_center_cyclic(G)


def test_coprime_direct_sums():
    pools = {
        2: ['cyclic(2)', 'cyclic(4)', 'abelian(2,2)', 'dihedral8', 'quaternion8'],
        3: ['cyclic(3)', 'abelian(3,3)', 'heisenberg(3)'],
        5: ['cyclic(5)'],
    }
    rng = np.random.RandomState(0)
    for _ in range(20):
        p, q = rng.choice(sorted(pools), 2, replace=False)
        G, H = group(rng.choice(pools[p])), group(rng.choice(pools[q]))
        S = direct_sum(G, H)
        verdict = is_absolutely_closed(S)
        assert verdict.holds == (is_absolutely_closed(G).holds and is_absolutely_closed(H).holds), S
        if not verdict.holds:
            assert verdict.certificate.recheck()
        report = reduction_suite(S)
        assert sorted(part.prime for part, _ in report.parts) == sorted([p, q])
