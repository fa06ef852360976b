"""Named constructors for the groups used throughout the package.

Builtins are looked up by name with integer arguments, e.g.
``make_builtin('cyclic', 6)`` or, from text, ``cyclic(6)``. The
``paper.*`` family reproduces the worked examples of the closure theory.
"""
from collections import OrderedDict
from itertools import combinations

from .nil2core import Nil2Group, default_gen_names

BUILTINS = OrderedDict()


class UnknownBuiltinError(ValueError):
    pass


def builtin(name, arity):
    """Register a constructor; *arity* is the number of arguments or None for any."""
    def register(fn):
        BUILTINS[name] = (fn, arity)
        return fn
    return register


def make_builtin(name, *args):
    if name not in BUILTINS:
        raise UnknownBuiltinError("unknown builtin group %r (known: %s)" % (name, ", ".join(BUILTINS)))
    fn, arity = BUILTINS[name]
    if arity is not None and len(args) != arity:
        raise ValueError("%s takes %d argument(s), got %d" % (name, arity, len(args)))
    for a in args:
        if a < 0:
            raise ValueError("arguments of %s must be non-negative, got %s" % (name, args))
    return fn(*args)


def _label(name, args):
    if not args:
        return name
    return "%s(%s)" % (name, ",".join(str(a) for a in args))


def _commutators(names):
    return ["[%s,%s]" % pair for pair in combinations(names, 2)]


def _power(word, t):
    return "%s^%d" % (word, t)


def _require_prime(p):
    from sympy import isprime
    if not isprime(p):
        raise ValueError("%d is not a prime" % p)


@builtin('cyclic', 1)
def cyclic_group(n):
    if n < 1:
        raise ValueError("cyclic(n) needs n >= 1; use free_abelian(1) for Z")
    return Nil2Group(('x',), [_power('x', n)], name=_label('cyclic', (n,)))


@builtin('free_abelian', 1)
def free_abelian_group(r):
    names = default_gen_names(r)
    return Nil2Group(names, _commutators(names), name=_label('free_abelian', (r,)))


@builtin('abelian', None)
def abelian_group(*factors):
    """Z/d_1 + ... + Z/d_k; a factor 0 gives a free summand."""
    names = default_gen_names(len(factors))
    rels = [_power(x, d) for x, d in zip(names, factors) if d != 0]
    return Nil2Group(names, rels + _commutators(names), name=_label('abelian', factors))


@builtin('dihedral8', 0)
def dihedral8():
    return Nil2Group(('x', 'y'), ['x^4', 'y^2', '[x,y]*x^-2'], name='dihedral8')


@builtin('quaternion8', 0)
def quaternion8():
    return Nil2Group(('x', 'y'), ['x^4', 'x^2*y^-2', '[x,y]*x^-2'], name='quaternion8')


@builtin('heisenberg', 1)
def heisenberg(p):
    """Non-abelian group of order p^3 generated by x, y with x^p = y^p = [x,y]^p = e."""
    _require_prime(p)
    return Nil2Group(('x', 'y'), [_power('x', p), _power('y', p), _power('[x,y]', p)],
                     name=_label('heisenberg', (p,)))


@builtin('paper.zsquared', 0)
def zsquared():
    return Nil2Group(('x', 'y'), ['[x,y]^4'], name='paper.zsquared')


@builtin('paper.finitetwocyc', 3)
def finite_two_cyclic(p, a1, a2):
    """Overgroup of Z/p^a1 + Z/p^a2 in which the [x,y]^p dominion element lives."""
    _require_prime(p)
    rels = [_power('x', p ** (a1 + 1)), _power('y', p ** (a2 + 1)), _power('[x,y]', p ** 2)]
    return Nil2Group(('x', 'y'), rels, name=_label('paper.finitetwocyc', (p, a1, a2)))


@builtin('paper.zpluscyclic', 2)
def z_plus_cyclic(p, a):
    _require_prime(p)
    rels = [_power('y', p ** (a + 1)), _power('[x,y]', p ** 2)]
    return Nil2Group(('x', 'y'), rels, name=_label('paper.zpluscyclic', (p, a)))


@builtin('paper.counterextofour', 0)
def exponent_four_counterexample():
    """Exponent four, Z(G)/G' cyclic, yet not absolutely closed."""
    rels = ['x^4', 'y^2', 'z^2', '[x,y]^2', '[x,z]^2', '[y,z]']
    return Nil2Group(('x', 'y', 'z'), rels, name='paper.counterextofour')


@builtin('paper.counterextofour_overgroup', 0)
def exponent_four_overgroup():
    """Contains the exponent four counterexample as <a, b^2, c^2>."""
    G = generalized_overgroup(2, 2)
    G.name = 'paper.counterextofour_overgroup'
    return G


@builtin('paper.counterexfinal', 0)
def exponent_three_example():
    """Absolutely closed although G/(3G)G' is not cyclic."""
    rels = ['x^3', 'y^3', 'z^3', '[x,y]^3', '[x,z]', '[y,z]']
    return Nil2Group(('x', 'y', 'z'), rels, name='paper.counterexfinal')


@builtin('paper.generalized', 2)
def generalized_counterexample(p, n):
    _require_prime(p)
    rels = [_power('x', p ** n), _power('y', p), _power('z', p), '[y,z]',
            _power('[x,y]', p), _power('[x,z]', p)]
    return Nil2Group(('x', 'y', 'z'), rels, name=_label('paper.generalized', (p, n)))


@builtin('paper.generalized_overgroup', 2)
def generalized_overgroup(p, n):
    """Contains paper.generalized(p, n) as the subgroup <a, b^p, c^p>."""
    _require_prime(p)
    q = p ** 2
    rels = [_power('a', p ** n), _power('b', q), _power('c', q),
            _power('[a,b]', q), _power('[a,c]', q), _power('[b,c]', q)]
    return Nil2Group(('a', 'b', 'c'), rels, name=_label('paper.generalized_overgroup', (p, n)))


def builtin_names():
    return list(BUILTINS)
