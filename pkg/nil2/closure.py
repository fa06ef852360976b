"""Absolute closure, amalgamation bases and root adjunction.

A group G of class at most two is absolutely closed when no overgroup
enlarges it through a dominion. For every x, y in G and n > 0 one of two
conditions must hold, with a, b, c integers and g1, g2 in G:

  condtwo:    g1^n = x^a y^b,      g2^n = x^b y^c      (mod G'),  [g1,x][g2,y] != e
  condthree:  g1^n = x^a y^b,      g2^n = x^(b+1) y^c  (mod G')

and it suffices to test prime powers n = p^a. Both conditions only see
x, y, g1, g2 through G^ab, so each is a congruence system modulo the
relation lattice E of G^ab; the set of (a, b, c, g1, g2) solving the
homogeneous system is a lattice on which [g1,x][g2,y] is linear.

Finite groups are decided by enumerating pairs of G^ab and the finitely
many residues of p^a modulo exp(G^ab); every failure is confirmed with
:func:`check_pair`. Abelian groups are classified directly. Infinite
non-abelian groups get a bounded search whose budget is configured by
:data:`default_budget` and the ``NIL2_BUDGET`` environment variable.
"""
import itertools
import logging
import os
from functools import lru_cache
from math import gcd, inf

import numpy as np
from sympy import primefactors

from .builtin_groups import abelian_group
from .exactlin import AbelianQuotient, CongruenceSystem, vec_add
from .nil2core import (ConsistencyError, FreeCoords, InfiniteGroupError, bracket_form, center_lattice,
                       center_mod_commutator, group_exponent, p_part)

logger = logging.getLogger(__name__)

__all__ = ['ConsistencyError', 'PreconditionError', 'default_budget', 'search_budget', 'check_pair',
           'is_absolutely_closed', 'is_ac_abelian', 'is_strong_amalg_base', 'can_adjoin_roots',
           'is_ac_exponent_p', 'reduction_suite', 'Verdict', 'PairResult', 'Witness']


class PreconditionError(ValueError):
    pass


default_budget = {
    'radius': 3,
    'primes': (2, 3, 5, 7),
    'max_power': 2,
    'max_checks': 2000,
}


def parse_budget(text):
    """Parse ``NIL2_BUDGET``: a bare radius or ``key=value`` items, primes joined by ':'."""
    text = text.strip()
    if text.isdigit():
        return {'radius': int(text)}
    budget = {}
    for item in text.split(','):
        if not item.strip():
            continue
        key, sep, value = item.partition('=')
        key = key.strip()
        if not sep or key not in default_budget:
            raise ValueError("invalid search budget item %r" % item)
        try:
            if key == 'primes':
                budget[key] = tuple(int(p) for p in value.split(':') if p.strip())
            else:
                budget[key] = int(value)
        except ValueError:
            raise ValueError("invalid search budget item %r" % item)
    return budget


def search_budget(**overrides):
    budget = dict(default_budget)
    env = os.environ.get('NIL2_BUDGET')
    if env:
        budget.update(parse_budget(env))
    budget.update((k, v) for k, v in overrides.items() if v is not None)
    return budget


ABSOLUTELY_CLOSED = 'absolutely closed'
AMALGAMATION_BASE = 'strong amalgamation base'

_labels = {
    ABSOLUTELY_CLOSED: ('Closed', 'NotClosed'),
    AMALGAMATION_BASE: ('Base', 'NotBase'),
}

CONDTWO = 'condtwo'
CONDTHREE = 'condthree'


class Witness(object):
    """Solution (a, b, c, g1, g2) of one of the two pair conditions."""
    def __init__(self, kind, a, b, c, g1, g2):
        self.kind = kind
        self.a = int(a)
        self.b = int(b)
        self.c = int(c)
        self.g1 = g1
        self.g2 = g2

    def verify(self, x, y, n):
        """Re-check the witness by evaluating in the group."""
        first = self.g1 ** n * (x ** self.a * y ** self.b).inverse()
        if self.kind == CONDTWO:
            target = x ** self.b * y ** self.c
        else:
            target = x ** (self.b + 1) * y ** self.c
        second = self.g2 ** n * target.inverse()
        if any(first.coords.e) or any(second.coords.e):
            return False
        if self.kind == CONDTWO:
            return not (self.g1.commutator(x) * self.g2.commutator(y)).is_identity()
        return True

    def as_dict(self):
        return {'kind': self.kind, 'a': self.a, 'b': self.b, 'c': self.c,
                'g1': self.g1.word(), 'g2': self.g2.word()}

    def __repr__(self):
        return "<Witness %s a=%d b=%d c=%d g1=%s g2=%s>" % (self.kind, self.a, self.b, self.c,
                                                          self.g1.word(), self.g2.word())


class PairResult(object):
    def __init__(self, x, y, n, condtwo_witness=None, condthree_witness=None):
        self.x = x
        self.y = y
        self.n = n
        self.condtwo_witness = condtwo_witness
        self.condthree_witness = condthree_witness

    @property
    def satisfied(self):
        return self.condtwo_witness is not None or self.condthree_witness is not None

    def verify(self):
        return all(w.verify(self.x, self.y, self.n) for w in (self.condtwo_witness, self.condthree_witness)
                   if w is not None)

    def as_dict(self):
        return {
            'x': self.x.word(), 'y': self.y.word(), 'n': self.n,
            'condtwo': None if self.condtwo_witness is None else self.condtwo_witness.as_dict(),
            'condthree': None if self.condthree_witness is None else self.condthree_witness.as_dict(),
        }


class PairCertificate(object):
    """Triple (x, y, n) for which neither condition has a witness."""
    def __init__(self, x, y, n, pair_result=None):
        self.x = x
        self.y = y
        self.n = n
        self.pair_result = pair_result

    def recheck(self):
        return not check_pair(self.x.group, self.x, self.y, self.n).satisfied

    def as_dict(self):
        return {'x': self.x.word(), 'y': self.y.word(), 'n': self.n}


class AmalgamationCertificate(object):
    """Element g (and multiplier n) at which the base criterion fails."""
    def __init__(self, g, n, reason):
        self.g = g
        self.n = n
        self.reason = reason

    def as_dict(self):
        return {'g': self.g.word(), 'n': self.n, 'reason': self.reason}


class Verdict(object):
    """Three-valued answer: ``holds`` is True, False or None (unknown)."""
    def __init__(self, holds, prop=ABSOLUTELY_CLOSED, method=None, certificate=None, reason=None,
                 budget=None, checks=None):
        self.holds = holds
        self.prop = prop
        self.method = method
        self.certificate = certificate
        self.reason = reason
        self.budget = budget
        self.checks = checks

    @property
    def label(self):
        if self.holds is None:
            return 'Unknown'
        return _labels[self.prop][0 if self.holds else 1]

    def as_dict(self):
        d = {'verdict': self.label, 'property': self.prop}
        if self.method is not None:
            d['method'] = self.method
        if self.certificate is not None:
            d['certificate'] = self.certificate.as_dict()
        if self.reason is not None:
            d['reason'] = self.reason
        if self.budget is not None:
            d['budget'] = dict((k, list(v) if isinstance(v, tuple) else v) for k, v in self.budget.items())
        if self.checks is not None:
            d['checks'] = self.checks
        return d

    def __repr__(self):
        extra = self.method or self.reason or ''
        return "<Verdict %s %s>" % (self.label, extra)


def _positive(n):
    n = int(n)
    if n < 1:
        raise PreconditionError("multiplier must be positive, got %d" % n)
    return n


def _combine(a, u, b, v):
    return tuple(a * p + b * q for p, q in zip(u, v))


@lru_cache(maxsize=None)
def _abc_candidates(radius):
    box = itertools.product(range(-radius, radius + 1), repeat=3)
    return tuple(sorted(box, key=lambda t: (sum(abs(x) for x in t), t)))


class RootSystem(object):
    """Solutions of n*g = v in G^ab, lifted to the e-coordinates."""
    def __init__(self, G, n):
        k = G.rank
        self.group = G
        self.n = n
        matrix = [[n if i == j else 0 for j in range(k)] for i in range(k)]
        self.system = CongruenceSystem(matrix, G.e_lattice, n_unknowns=k)
        self.torsion = self.system.homogeneous.rows

    def root(self, v):
        sol = self.system.solve(v)
        if sol.is_empty:
            return None
        return self.group.e_lattice.residue(sol.particular)


class PairProblem(object):
    """Both congruence systems for one triple (x, y, n)."""
    def __init__(self, G, x, y, n):
        self.group = G
        self.k = k = G.rank
        self.ux = x.coords.e
        self.uy = y.coords.e
        A = G.abelianization
        if A.is_finite():
            n = n % A.exponent or A.exponent
        self.n_eff = n
        self.roots = RootSystem(G, n)
        rows = []
        for r in range(k):
            rows.append([-self.ux[r], -self.uy[r], 0] + [n if i == r else 0 for i in range(k)] + [0] * k)
        for r in range(k):
            rows.append([0, -self.ux[r], -self.uy[r]] + [0] * k + [n if i == r else 0 for i in range(k)])
        self.system = CongruenceSystem(rows, G.e_lattice.direct_sum(G.e_lattice), n_unknowns=3 + 2 * k)

    def _element(self, v):
        return self.group.element(FreeCoords(self.k, v))

    def phi(self, g1, g2):
        return vec_add(bracket_form(g1, self.ux), bracket_form(g2, self.uy))

    def _nontrivial(self, g1, g2):
        return self.phi(g1, g2) not in self.group.c_lattice

    def _split(self, u):
        k = self.k
        E = self.group.e_lattice
        return E.residue(u[3:3 + k]), E.residue(u[3 + k:])

    def condthree_solutions(self):
        return self.system.solve((0,) * self.k + self.ux)

    def condtwo_generators(self):
        """Basis vectors of the homogeneous lattice with [g1,x][g2,y] != e."""
        return [u for u in self.system.homogeneous.rows if self._nontrivial(*self._split(u))]

    def has_condthree(self):
        return not self.condthree_solutions().is_empty

    def has_condtwo(self):
        return bool(self.condtwo_generators())

    def divisibility_witness(self):
        """condthree witness when x or y has an n-th root modulo G'."""
        identity = self.group.identity()
        rx = self.roots.root(self.ux)
        if rx is not None:
            return Witness(CONDTHREE, 0, 0, 0, identity, self._element(rx))
        ry = self.roots.root(self.uy)
        if ry is not None:
            return Witness(CONDTHREE, 0, -1, 0, self._element(ry).inverse(), identity)
        return None

    def condthree_witness(self, radius):
        w = self.divisibility_witness()
        if w is not None:
            return w
        sol = self.condthree_solutions()
        if sol.is_empty:
            return None
        for a, b, c in _abc_candidates(radius):
            g1 = self.roots.root(_combine(a, self.ux, b, self.uy))
            if g1 is None:
                continue
            g2 = self.roots.root(_combine(b + 1, self.ux, c, self.uy))
            if g2 is None:
                continue
            return Witness(CONDTHREE, a, b, c, self._element(g1), self._element(g2))
        u = sol.particular
        g1, g2 = self._split(u)
        return Witness(CONDTHREE, u[0], u[1], u[2], self._element(g1), self._element(g2))

    def condtwo_witness(self, radius):
        generators = self.condtwo_generators()
        if not generators:
            return None
        torsion = self.roots.torsion
        for a, b, c in _abc_candidates(radius):
            g1 = self.roots.root(_combine(a, self.ux, b, self.uy))
            if g1 is None:
                continue
            g2 = self.roots.root(_combine(b, self.ux, c, self.uy))
            if g2 is None:
                continue
            options = itertools.chain([(g1, g2)],
                                      ((vec_add(g1, t), g2) for t in torsion),
                                      ((g1, vec_add(g2, t)) for t in torsion))
            for h1, h2 in options:
                if self._nontrivial(h1, h2):
                    return Witness(CONDTWO, a, b, c, self._element(h1), self._element(h2))
        u = generators[0]
        g1, g2 = self._split(u)
        return Witness(CONDTWO, u[0], u[1], u[2], self._element(g1), self._element(g2))


def check_pair(G, x, y, n, radius=2):
    """Decide both conditions for the triple (x, y, n) exactly.

    Existence is decided on the full solution lattice; the returned
    witnesses are the first found in a box of (a, b, c) ordered by
    (|a|+|b|+|c|, (a, b, c)), falling back to a lattice solution when the
    box holds none.

    Parameters
    ----------
    G : Nil2Group
    x, y : GroupElement
        Elements of G.
    n : int
        Positive multiplier.
    radius : int
        Box radius for witness selection.

    Returns
    -------
    result : PairResult
    """
    G.check_owner(x, y)
    n = _positive(n)
    problem = PairProblem(G, x, y, n)
    return PairResult(x, y, n,
                      condtwo_witness=problem.condtwo_witness(radius),
                      condthree_witness=problem.condthree_witness(radius))


def _certified(G, x, y, n, method, prop=ABSOLUTELY_CLOSED):
    result = check_pair(G, x, y, n)
    if result.satisfied:
        raise ConsistencyError("triple (%s, %s, %d) reported as failing admits a witness"
                               % (x.word(), y.word(), n))
    return Verdict(False, prop, method=method, certificate=PairCertificate(x, y, n, result))


def is_ac_abelian(G):
    """Closed iff G is cyclic, i.e. G/pG is cyclic for every prime p.

    *G* may be an abelian Nil2Group or an AbelianQuotient.
    """
    if isinstance(G, AbelianQuotient):
        G = abelian_group(*(G.invariant_factors + (0,) * G.free_rank))
    if not G.is_abelian():
        raise PreconditionError("%s is not abelian" % G)
    A = G.abelianization
    r, factors = A.free_rank, A.invariant_factors
    s = len(factors)
    if r + s <= 1:
        return Verdict(True, method='cyclic')
    gens = A.generators
    if r >= 2:
        i, j, p = s, s + 1, 2
    elif r == 1:
        i, j, p = s, 0, min(primefactors(factors[0]))
    else:
        i, j, p = 0, 1, min(primefactors(factors[0]))
    x = G.element(FreeCoords(G.rank, gens[i]))
    y = G.element(FreeCoords(G.rank, gens[j]))
    return _certified(G, x, y, p, method='abelian-classification')


class QuotientContext(object):
    """A/nA for the commutator table of a finite group, n given mod exp(A)."""
    def __init__(self, table, residue):
        self.table = table
        self.orders = table.orders
        self.quotient_orders = np.gcd(residue, self.orders)
        self.exponent = int(np.lcm.reduce(self.quotient_orders)) if len(self.orders) else 1
        self.roots = {}
        for image, a in zip((residue * table.elements) % self.orders, table.elements):
            self.roots.setdefault(table.key(image), a)
        self.torsion = []
        for i, (d, g) in enumerate(zip(self.orders, self.quotient_orders)):
            if g > 1:
                t = np.zeros(len(self.orders), dtype=np.int64)
                t[i] = d // g
                self.torsion.append(t)

    def project(self, w):
        return w % self.quotient_orders

    def root(self, w):
        return self.roots[self.table.key(w % self.orders)]

    def order(self, v):
        """Order of v in A/nA (v already projected)."""
        order = 1
        for c, g in zip(v, self.quotient_orders):
            t = int(g) // gcd(int(c), int(g))
            order = order * t // gcd(order, t)
        return order

    def multiples(self, v):
        """{key(t v): least t} over one period."""
        mult = {}
        for t in range(self.exponent):
            mult.setdefault(self.table.key((t * v) % self.quotient_orders), t)
        return mult


class FiniteClosureEngine(object):
    """Exact closure decision for a finite group via its commutator table."""
    def __init__(self, G):
        self.group = G
        self.table = G.commutator_table()
        self.exponent = self.table.exponent
        self.primes = [int(p) for p in primefactors(self.exponent)]

    def multipliers(self):
        """Yield (p^a, p^a mod exp) until the residues of p^a repeat."""
        for p in self.primes:
            seen = set()
            a = 1
            while True:
                r = pow(p, a, self.exponent)
                if r in seen:
                    break
                seen.add(r)
                yield p ** a, r
                a += 1

    def condthree(self, ctx, xv, yv, mult_x, mult_y):
        key = self.table.key
        g = ctx.quotient_orders
        for b in range(ctx.exponent):
            if key((b * yv) % g) in mult_x and key(((b + 1) * xv) % g) in mult_y:
                return True
        return False

    def condtwo(self, ctx, x, y, xv, yv, mult_x, mult_y):
        table, key, g = self.table, self.table.key, ctx.quotient_orders
        for t in ctx.torsion:
            if table.bracket(t, x).any() or table.bracket(t, y).any():
                return True
        if table.bracket(ctx.root(ctx.order(xv) * x), x).any():
            return True
        if table.bracket(ctx.root(ctx.order(yv) * y), y).any():
            return True
        for b in range(1, ctx.exponent + 1):
            kx, ky = key((b * yv) % g), key((b * xv) % g)
            if kx in mult_x and ky in mult_y:
                a, c = -mult_x[kx], -mult_y[ky]
                g1 = ctx.root(a * x + b * y)
                g2 = ctx.root(b * x + c * y)
                return bool(((table.bracket(g1, x) + table.bracket(g2, y)) % table.derived_orders).any())
        return False

    def pair_holds(self, ctx, x, y):
        xv, yv = ctx.project(x), ctx.project(y)
        if not xv.any() or not yv.any():
            return True
        mult_x, mult_y = ctx.multiples(xv), ctx.multiples(yv)
        if self.condthree(ctx, xv, yv, mult_x, mult_y):
            return True
        return self.condtwo(ctx, x, y, xv, yv, mult_x, mult_y)

    def holds(self, x, y, n):
        """Pair decision on G^ab coordinates (table rows), for testing against check_pair."""
        ctx = QuotientContext(self.table, n % self.exponent)
        return self.pair_holds(ctx, self.table.normalize(x), self.table.normalize(y))

    def run(self):
        elements = self.table.elements
        checks = 0
        for n, r in self.multipliers():
            ctx = QuotientContext(self.table, r)
            logger.debug("%s: multiplier %d (residue %d)", self.group, n, r)
            for i in range(len(elements)):
                for j in range(i, len(elements)):
                    checks += 1
                    if not self.pair_holds(ctx, elements[i], elements[j]):
                        x, y = self.table.lift(elements[i]), self.table.lift(elements[j])
                        verdict = _certified(self.group, x, y, n, method='finite-enumeration')
                        verdict.checks = checks
                        return verdict
        return Verdict(True, method='finite-enumeration', checks=checks)


def _search_candidates(G, radius):
    A = G.abelianization
    ranges = [range(d) if d else range(-radius, radius + 1) for d in A.moduli]
    box = sorted(itertools.product(*ranges), key=lambda v: (sum(abs(c) for c in v), v))
    seen = set()
    out = []
    for g in G.generators():
        if g.coords not in seen:
            seen.add(g.coords)
            out.append(g)
    for v in box:
        if not any(v):
            continue
        g = G.element(FreeCoords(G.rank, A.lift(v)))
        if g.coords not in seen:
            seen.add(g.coords)
            out.append(g)
    return out


def bounded_search(G, budget=None):
    """Look for a failing triple among small elements and prime powers."""
    budget = search_budget(**(budget or {}))
    A = G.abelianization
    primes = sorted(set(budget['primes']) | set(int(p) for p in primefactors(A.torsion_exponent)))
    multipliers = [p ** a for p in primes for a in range(1, budget['max_power'] + 1)]
    candidates = _search_candidates(G, budget['radius'])
    checks = 0
    for i, x in enumerate(candidates):
        for y in candidates[i:]:
            for n in multipliers:
                if checks >= budget['max_checks']:
                    logger.info("%s: search budget exhausted after %d checks", G, checks)
                    return Verdict(None, reason='search budget exhausted', budget=budget, checks=checks)
                checks += 1
                problem = PairProblem(G, x, y, n)
                if problem.has_condthree() or problem.has_condtwo():
                    continue
                verdict = _certified(G, x, y, n, method='bounded-search')
                verdict.checks = checks
                return verdict
    return Verdict(None, reason='no failing triple within the search budget', budget=budget, checks=checks)


def sufficient_cyclic_quotient(G):
    """G/(pG)G' cyclic for every prime p, i.e. G^ab is cyclic."""
    return G.abelianization.is_cyclic()


def necessary_center_cyclic(G):
    return center_mod_commutator(G).is_cyclic()


def is_absolutely_closed(G, method='auto', budget=None):
    """Decide absolute closure of G in the class-2 variety.

    Parameters
    ----------
    method : {'auto', 'enumerate', 'search'}
        'auto' classifies abelian groups directly, enumerates finite
        groups and searches infinite ones; 'enumerate' forces the finite
        engine and 'search' the bounded search.
    budget : dict, optional
        Overrides for :func:`search_budget`.
    """
    if method == 'enumerate':
        if not G.is_finite():
            raise InfiniteGroupError("%s is infinite; enumeration needs a finite group" % G)
        return FiniteClosureEngine(G).run()
    if method == 'search':
        return bounded_search(G, budget)
    if method != 'auto':
        raise ValueError("unknown method %r" % method)
    if G.is_abelian():
        return is_ac_abelian(G)
    if G.is_finite():
        return FiniteClosureEngine(G).run()
    if sufficient_cyclic_quotient(G):
        return Verdict(True, method='sufficient-cyclic-quotient')
    return bounded_search(G, budget)


def is_strong_amalg_base(G):
    """Base iff Z(G) = G' and every g either has an n-th root mod G' or
    some y with y^n = g^k (mod G') fails to commute with g."""
    k = G.rank
    z = center_lattice(G)
    if z != G.e_lattice:
        extra = next(row for row in z.rows if row not in G.e_lattice)
        cert = AmalgamationCertificate(G.element(FreeCoords(k, extra)), None, "center is larger than G'")
        return Verdict(False, AMALGAMATION_BASE, method='center', certificate=cert)
    if not G.is_finite():
        return Verdict(None, AMALGAMATION_BASE, reason='root condition is only decided for finite groups')
    table = G.commutator_table()
    for n in range(1, table.exponent + 1):
        ctx = QuotientContext(table, n % table.exponent)
        for w in table.elements:
            v = ctx.project(w)
            if not v.any():
                continue
            if any(table.bracket(t, w).any() for t in ctx.torsion):
                continue
            if table.bracket(ctx.root(ctx.order(v) * w), w).any():
                continue
            cert = AmalgamationCertificate(table.lift(w), n, "no y with y^n = g^k (mod G') and [y,g] != e")
            return Verdict(False, AMALGAMATION_BASE, method='finite-enumeration', certificate=cert)
    return Verdict(True, AMALGAMATION_BASE, method='finite-enumeration')


class RootsResult(object):
    """Outcome of :func:`can_adjoin_roots`; on failure carries the refuting data."""
    def __init__(self, possible, c=None, roots=None, product=None):
        self.possible = possible
        self.c = c
        self.roots = roots
        self.product = product

    def as_dict(self):
        d = {'possible': self.possible}
        if not self.possible:
            d['c'] = [list(row) for row in self.c]
            d['y'] = [y.word() for y in self.roots]
            d['product'] = self.product.word()
        return d


def can_adjoin_roots(G, elements, orders):
    """Whether some overgroup of G holds an orders[i]-th root of elements[i] for all i.

    The arrays c with n_i c_ij = n_j c_ji are c_ij = (n_j/d) s, c_ji =
    (n_i/d) s for i < j (d = gcd(n_i, n_j)) with free diagonal; together
    with y_1..y_m they form the solution lattice of the congruences
    n_j y_j = sum_i c_ij g_i (mod G'), and prod [y_j, g_j] is linear on it.
    """
    elements, orders = list(elements), [_positive(n) for n in orders]
    if not elements:
        raise PreconditionError("at least one element is required")
    if len(elements) != len(orders):
        raise PreconditionError("%d elements but %d orders" % (len(elements), len(orders)))
    G.check_owner(*elements)
    m, k = len(elements), G.rank
    gs = [g.coords.e for g in elements]
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m)]
    n_params = m + len(pairs)

    def c_coefficients(i, j):
        """c_ij as a vector over the parameters."""
        coeff = [0] * n_params
        if i == j:
            coeff[i] = 1
        else:
            a, b = min(i, j), max(i, j)
            coeff[m + pairs.index((a, b))] = orders[j] // gcd(orders[i], orders[j])
        return coeff

    rows = []
    for j in range(m):
        for r in range(k):
            row = [0] * (n_params + m * k)
            for i in range(m):
                for p, c in enumerate(c_coefficients(i, j)):
                    row[p] -= c * gs[i][r]
            row[n_params + j * k + r] = orders[j]
            rows.append(row)
    modulus = G.e_lattice
    for _ in range(m - 1):
        modulus = modulus.direct_sum(G.e_lattice)
    if m * k == 0:
        return RootsResult(True)
    system = CongruenceSystem(rows, modulus, n_unknowns=n_params + m * k)

    def unpack(u):
        ys = [G.e_lattice.residue(u[n_params + j * k:n_params + (j + 1) * k]) for j in range(m)]
        c = [[sum(a * b for a, b in zip(c_coefficients(i, j), u[:n_params])) for j in range(m)] for i in range(m)]
        return c, ys

    def product(ys):
        total = (0,) * G.n_pairs
        for y, g in zip(ys, gs):
            total = vec_add(total, bracket_form(y, g))
        return total

    for u in system.homogeneous.rows:
        c, ys = unpack(u)
        if product(ys) not in G.c_lattice:
            roots = [G.element(FreeCoords(k, y)) for y in ys]
            value = G.identity()
            for y, g in zip(roots, elements):
                value = value * y.commutator(g)
            return RootsResult(False, c, roots, value)
    return RootsResult(True)


def is_ac_exponent_p(G):
    """Closure for finite groups of squarefree exponent: Z(G)/G' cyclic."""
    if not G.is_finite():
        raise PreconditionError("%s is infinite" % G)
    exponent = group_exponent(G)
    primes = primefactors(exponent)
    if any(exponent % (p * p) == 0 for p in primes):
        raise PreconditionError("exponent %d is not squarefree; use is_absolutely_closed" % exponent)
    Q = center_mod_commutator(G)
    for p in primes:
        if Q.p_rank(p) >= 2:
            picks = [i for i, d in enumerate(Q.moduli) if d % p == 0][:2]
            k = G.rank
            x, y = [G.element(FreeCoords(k, Q.frame_lift(tuple((Q.moduli[i] // p) if j == i else 0
                                                                  for j in range(len(Q.moduli))))))
                    for i in picks]
            return _certified(G, x, y, p, method='center-quotient')
    return Verdict(True, method='center-quotient')


class ReductionReport(object):
    def __init__(self, group, verdict, parts, sufficient, necessary):
        self.group = group
        self.verdict = verdict
        self.parts = parts
        self.sufficient = sufficient
        self.necessary = necessary

    def as_dict(self):
        return {
            'verdict': self.verdict.as_dict(),
            'p_parts': [{'p': p.prime, 'order': p.group.order, 'verdict': v.as_dict()} for p, v in self.parts],
            'sufficient_cyclic_quotient': self.sufficient,
            'necessary_center_cyclic': self.necessary,
        }


def reduction_suite(G):
    """Cross-check the whole-group verdict against p-parts and the known
    sufficient and necessary conditions. Disagreement raises ConsistencyError."""
    if not G.is_finite():
        raise InfiniteGroupError("%s is infinite" % G)
    verdict = is_absolutely_closed(G)
    parts = []
    for p in primefactors(G.order):
        part = p_part(G, int(p))
        parts.append((part, is_absolutely_closed(part.group)))
    sufficient = sufficient_cyclic_quotient(G)
    necessary = necessary_center_cyclic(G)
    if verdict.holds != all(v.holds for _, v in parts):
        raise ConsistencyError("%s: verdict %s but p-part verdicts %s"
                               % (G, verdict.label, [v.label for _, v in parts]))
    if sufficient and not verdict.holds:
        raise ConsistencyError("%s: cyclic quotient but not closed" % G)
    if verdict.holds and not necessary:
        raise ConsistencyError("%s: closed but Z(G)/G' is not cyclic" % G)
    return ReductionReport(G, verdict, parts, sufficient, necessary)
