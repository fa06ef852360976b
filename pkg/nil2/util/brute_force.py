"""Enumeration oracles for small finite groups.

These follow the definitions literally (all elements, all residues) and
share nothing with the lattice engines beyond canonical elements, so
tests and the corpus can compare the two.
"""
import itertools
from math import gcd

from sympy import primefactors

from ..nil2core import FreeCoords, SubgroupData, group_exponent


def elements(G):
    """All elements of the finite group G, each once."""
    k = G.rank
    for e in G.e_lattice.representatives():
        for f in G.c_lattice.representatives():
            yield G.element(FreeCoords(k, e, f))


def abelian_representatives(G):
    """One element of G for every class of G/G'."""
    return [G.element(FreeCoords(G.rank, e)) for e in G.e_lattice.representatives()]


def in_derived(g):
    return not any(g.coords.e)


def subgroup_closure(G, generators):
    """Set of all products of the generators (finite G)."""
    found = {G.identity()}
    frontier = [G.identity()]
    while frontier:
        new = []
        for g in frontier:
            for h in generators:
                p = g * h
                if p not in found:
                    found.add(p)
                    new.append(p)
        frontier = new
    return found


def power_subgroup(G, t):
    return subgroup_closure(G, [g ** t for g in elements(G)])


def dominion(G, H):
    """H together with [x,y]^q for q = 1..exp(G) and x^q, y^q in H G'.

    Both conditions only see classes mod G', so x and y run over G/G'.
    """
    reps = abelian_representatives(G)
    gens = list(H.generators)
    for q in range(1, group_exponent(G) + 1):
        S = [x for x in reps if (x ** q).coords.e in H.e_lattice]
        for x, y in itertools.combinations(S, 2):
            w = x.commutator(y) ** q
            if not w.is_identity():
                gens.append(w)
    return SubgroupData(G, gens)


def _key(g):
    return g.coords.e


def pair_conditions(G, x, y, n):
    """(condtwo, condthree) by enumerating a, b, c mod exp(G^ab) and g1, g2 in G/G'."""
    e = G.abelianization.exponent
    reps = abelian_representatives(G)
    powers = {}
    for g in reps:
        powers.setdefault(_key(g ** n), []).append(g)
    xs = [x ** a for a in range(e)]
    ys = [y ** b for b in range(e)]
    condtwo = condthree = False
    for a, b, c in itertools.product(range(e), repeat=3):
        first = powers.get(_key(xs[a] * ys[b]), [])
        if not first:
            continue
        if not condthree and powers.get(_key(xs[(b + 1) % e] * ys[c])):
            condthree = True
        if not condtwo:
            second = powers.get(_key(xs[b] * ys[c]), [])
            for g1, g2 in itertools.product(first, second):
                if not (g1.commutator(x) * g2.commutator(y)).is_identity():
                    condtwo = True
                    break
        if condtwo and condthree:
            break
    return condtwo, condthree


def pair_witnesses(G, x, y, n):
    """Every (kind, a, b, c, g1, g2) solving a pair condition, with a, b, c
    running mod exp(G^ab) and g1, g2 over G/G'."""
    e = G.abelianization.exponent
    reps = abelian_representatives(G)
    for a, b, c in itertools.product(range(e), repeat=3):
        for g1 in reps:
            if not in_derived(g1 ** n * (x ** a * y ** b).inverse()):
                continue
            for g2 in reps:
                if in_derived(g2 ** n * (x ** (b + 1) * y ** c).inverse()):
                    yield 'condthree', a, b, c, g1, g2
                if (in_derived(g2 ** n * (x ** b * y ** c).inverse())
                        and not (g1.commutator(x) * g2.commutator(y)).is_identity()):
                    yield 'condtwo', a, b, c, g1, g2


def prime_power_multipliers(G):
    e = G.abelianization.exponent
    out = []
    for p in primefactors(e):
        seen = set()
        a = 1
        while pow(p, a, e) not in seen:
            seen.add(pow(p, a, e))
            out.append(int(p) ** a)
            a += 1
    return out


def is_absolutely_closed(G):
    reps = abelian_representatives(G)
    for n in prime_power_multipliers(G):
        for x, y in itertools.combinations_with_replacement(reps, 2):
            if not any(pair_conditions(G, x, y, n)):
                return False
    return True


def can_adjoin_roots(G, gs, ns):
    """Enumerate arrays c (through their parametrization mod exp) and roots y_j."""
    e = G.abelianization.exponent
    m = len(gs)
    reps = abelian_representatives(G)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    for diag in itertools.product(range(e), repeat=m):
        for svals in itertools.product(range(e), repeat=len(pairs)):
            c = [[0] * m for _ in range(m)]
            for i in range(m):
                c[i][i] = diag[i]
            for (i, j), s in zip(pairs, svals):
                d = gcd(ns[i], ns[j])
                c[i][j] = ns[j] // d * s
                c[j][i] = ns[i] // d * s
            choices = []
            for j in range(m):
                target = G.identity()
                for i in range(m):
                    target = target * gs[i] ** c[i][j]
                choices.append([y for y in reps if in_derived(y ** ns[j] * target.inverse())])
            for ys in itertools.product(*choices):
                value = G.identity()
                for y, g in zip(ys, gs):
                    value = value * y.commutator(g)
                if not value.is_identity():
                    return False
    return True


def center_elements(G):
    gens = G.generators()
    return {g for g in elements(G) if all(g.commutator(h).is_identity() for h in gens)}


def is_strong_amalg_base(G):
    derived = {g for g in elements(G) if in_derived(g)}
    if center_elements(G) != derived:
        return False
    e = G.abelianization.exponent
    reps = abelian_representatives(G)
    for g in reps:
        for n in range(1, e + 1):
            if any(in_derived(y ** n * g.inverse()) for y in reps):
                continue
            if not any(in_derived(y ** n * (g ** k).inverse()) and not y.commutator(g).is_identity()
                       for y in reps for k in range(e)):
                return False
    return True
