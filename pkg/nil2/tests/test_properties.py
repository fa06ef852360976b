import itertools
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from nil2.builtin_groups import make_builtin
from nil2.closure import is_ac_exponent_p, is_absolutely_closed
from nil2.exactlin import hnf_basis, quotient_structure, smith_decomposition
from nil2.nil2core import (FreeCoords, Nil2Group, center_mod_commutator, coproduct, cross_commutator_subgroup,
                           group_exponent)

settings.register_profile('nil2', derandomize=True, max_examples=60, deadline=None)
settings.load_profile('nil2')

small = st.integers(-6, 6)


def free_coords(rank):
    n = rank * (rank - 1) // 2
    return st.builds(lambda e, f: FreeCoords(rank, tuple(e), tuple(f)),
                     st.lists(small, min_size=rank, max_size=rank), st.lists(small, min_size=n, max_size=n))


@settings(max_examples=500)
@given(st.data())
def test_free_group_laws(data):
    rank = data.draw(st.integers(2, 4), label='rank')
    a, b, c = [data.draw(free_coords(rank)) for _ in range(3)]
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == FreeCoords.identity(rank)
    assert a.inverse() * a == FreeCoords.identity(rank)
    assert a * b == (b * a) * a.commutator(b)
    assert a.commutator(b) == b.commutator(a).inverse()
    assert (a * b).commutator(c) == a.commutator(c) * b.commutator(c)


@given(free_coords(3), st.integers(-5, 5), st.integers(-5, 5))
def test_free_powers(a, s, t):
    assert a ** s * a ** t == a ** (s + t)
    assert a ** 0 == FreeCoords.identity(3)
    assert a ** -1 == a.inverse()


vectors = st.lists(st.lists(small, min_size=3, max_size=3), max_size=4)


@given(vectors, st.randoms())
def test_hnf_canonical(gens, rnd):
    L = hnf_basis(3, gens)
    for g in gens:
        assert L.contains(g) is not None
    shuffled = list(gens)
    rnd.shuffle(shuffled)
    if len(gens) >= 2:
        shuffled.append([a - 2 * b for a, b in zip(gens[0], gens[1])])
    assert hnf_basis(3, shuffled) == L
    for row in L.rows:
        assert L.residue(row) == (0, 0, 0)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_smith_transform(rows):
    snf = smith_decomposition(rows)
    m = np.array(rows, dtype=object)
    product = np.array(snf.left, dtype=object).dot(m).dot(np.array(snf.right, dtype=object))
    diag = np.zeros(m.shape, dtype=object)
    for i, d in enumerate(snf.diagonal):
        diag[i, i] = d
    assert (product == diag).all()
    factors = snf.invariant_factors
    assert all(b % a == 0 for a, b in zip(factors, factors[1:]))


@pytest.mark.parametrize('builtin_args', [('dihedral8',), ('heisenberg', 3), ('paper.counterextofour',)])
def test_random_products(builtin_args):
    G = make_builtin(*builtin_args)
    rng = np.random.RandomState(0)
    exponent = group_exponent(G)
    for _ in range(30):
        a = FreeCoords(G.rank, tuple(rng.randint(-5, 6, G.rank)), tuple(rng.randint(-5, 6, G.n_pairs)))
        b = FreeCoords(G.rank, tuple(rng.randint(-5, 6, G.rank)), tuple(rng.randint(-5, 6, G.n_pairs)))
        assert G.element(a) * G.element(b) == G.element(a * b)
        assert (G.element(a) ** exponent).is_identity()
        assert G.element(a).inverse() == G.element(a.inverse())


def exponent_three_groups(max_order=81):
    """x1..xs of order 3 and a central z; each [xi,xj] is z^c or of order 3."""
    for s in (2, 3):
        names = tuple('x%d' % (i + 1) for i in range(s)) + ('z',)
        pairs = list(itertools.combinations(names[:s], 2))
        for choice in itertools.product((None, 0, 1, 2), repeat=len(pairs)):
            rels = ['%s^3' % g for g in names] + ['[%s,z]' % g for g in names[:s]]
            for (a, b), c in zip(pairs, choice):
                rels.append('[%s,%s]^3' % (a, b) if c is None else '[%s,%s]*z^-%d' % (a, b, c) if c else
                            '[%s,%s]' % (a, b))
            G = Nil2Group(names, rels, name='exp3%s' % (choice,))
            if G.order <= max_order:
                yield G


@pytest.mark.slow
def test_exponent_three_sweep():
    count = 0
    for G in exponent_three_groups():
        assert group_exponent(G) == 3, G
        cyclic = center_mod_commutator(G).is_cyclic()
        assert is_absolutely_closed(G).holds == cyclic, G
        assert is_ac_exponent_p(G).holds == cyclic, G
        count += 1
    assert count > 10


def divisor_chains(limit, smallest=2):
    """Invariant factor lists d1 | d2 | ... with product at most *limit*."""
    yield ()
    for d in range(smallest, limit + 1):
        for rest in divisor_chains(limit // d, d):
            if not rest or rest[0] % d == 0:
                yield (d,) + rest


@pytest.mark.slow
def test_abelian_sweep():
    for factors in divisor_chains(64):
        if not factors:
            continue
        G = make_builtin('abelian', *factors)
        verdict = is_absolutely_closed(G, method='enumerate')
        assert verdict.holds == (len(factors) == 1), factors
        if not verdict.holds:
            assert verdict.certificate.recheck()


def abelian_factors(G):
    A = G.abelianization
    return A.invariant_factors + (0,) * A.free_rank


def tensor_structure(left, right):
    """Invariant factors of the tensor product of two abelian groups (0 means Z)."""
    n = len(left) * len(right)
    rows = [[gcd(a, b) if k == i * len(right) + j else 0 for k in range(n)]
            for i, a in enumerate(left) for j, b in enumerate(right) if gcd(a, b)]
    return quotient_structure(n, hnf_basis(n, rows))


def test_coproduct_commutator_is_tensor():
    shapes = [(2,), (3,), (4,), (2, 2), (6,), (0,), (2, 0), (3, 0), (4, 0), (6, 0)]
    count = 0
    for a, b in itertools.combinations_with_replacement(shapes, 2):
        A, B = make_builtin('abelian', *a), make_builtin('abelian', *b)
        P = coproduct(A, B)
        AB = cross_commutator_subgroup(P, A.rank).derived_part()
        T = tensor_structure(abelian_factors(A), abelian_factors(B))
        assert (AB.invariant_factors, AB.free_rank) == (T.invariant_factors, T.free_rank), (a, b)
        count += 1
    assert count >= 25
