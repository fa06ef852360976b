"""Groups of nilpotency class at most two given by finite presentations.

Elements of the free nil-2 group F_k are written in the normal form

    x_1^e_1 * ... * x_k^e_k * prod_{i<j} [x_i, x_j]^f_ij

and stored as ``FreeCoords(rank, e, f)``; the f-coordinates are indexed by
the pairs (i, j), i < j, in lexicographic order. Multiplication is

    (e1, f1) * (e2, f2) = (e1 + e2, f1 + f2 + beta(e1, e2)),
    beta(u, v)_ij = -u_j * v_i,

and the commutator [g, h] = g^-1 h^-1 g h has f-part
B(u, v)_ij = u_i v_j - u_j v_i.

A subgroup of F_k that contains a central lattice is stored in two levels
(:class:`FreeSubgroup`): the lattice of its e-parts, one element of the
subgroup above every Hermite row of that lattice, and the lattice of its
purely commutator elements. Presented groups, their subgroups and
homomorphisms between them are all expressed through that structure.
"""
import itertools
import logging
from collections import OrderedDict
from functools import lru_cache, reduce
from math import inf

import numpy as np
from sympy import divisors, isprime, multiplicity
from sympy.ntheory.modular import crt

from .exactlin import (DimensionError, LatticeBasis, affine_solution_set, hnf_basis,
                       hnf_with_transform, quotient_structure, relative_quotient, unit_vector,
                       vec_scale)

logger = logging.getLogger(__name__)


class OwnerMismatchError(ValueError):
    """An element or subgroup was used with a group it does not belong to."""


class InfiniteGroupError(ValueError):
    """A finite-only computation was requested for an infinite group."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@lru_cache(maxsize=None)
def pair_list(rank):
    return tuple((i, j) for i in range(rank) for j in range(i + 1, rank))


@lru_cache(maxsize=None)
def pair_index(rank):
    return dict((p, n) for n, p in enumerate(pair_list(rank)))


def n_pairs(rank):
    return rank * (rank - 1) // 2


def default_gen_names(rank):
    if rank <= 4:
        return ('x', 'y', 'z', 'w')[:rank]
    return tuple('x%d' % (i + 1) for i in range(rank))


def collection_cocycle(u, v):
    return tuple(-u[j] * v[i] for i, j in pair_list(len(u)))


def bracket_form(u, v):
    return tuple(u[i] * v[j] - u[j] * v[i] for i, j in pair_list(len(u)))


class FreeCoords(object):
    """An element of the free nil-2 group of the given rank."""
    __slots__ = ('rank', 'e', 'f')

    def __init__(self, rank, e=None, f=None):
        self.rank = rank
        self.e = (0,) * rank if e is None else tuple(int(x) for x in e)
        self.f = (0,) * n_pairs(rank) if f is None else tuple(int(x) for x in f)
        if len(self.e) != rank or len(self.f) != n_pairs(rank):
            raise DimensionError("coordinates of lengths (%d, %d) do not fit rank %d" % (len(self.e), len(self.f), rank))

    @classmethod
    def identity(cls, rank):
        return cls(rank)

    @classmethod
    def generator(cls, rank, i):
        return cls(rank, unit_vector(rank, i))

    @classmethod
    def from_vector(cls, rank, v):
        return cls(rank, v[:rank], v[rank:])

    @property
    def vector(self):
        return self.e + self.f

    def _check_rank(self, other):
        if not isinstance(other, FreeCoords):
            raise TypeError("expected FreeCoords, got %s" % type(other).__name__)
        if other.rank != self.rank:
            raise DimensionError("rank mismatch: %d vs %d" % (self.rank, other.rank))

    def __mul__(self, other):
        self._check_rank(other)
        beta = collection_cocycle(self.e, other.e)
        return FreeCoords(self.rank,
                          tuple(a + b for a, b in zip(self.e, other.e)),
                          tuple(a + b + c for a, b, c in zip(self.f, other.f, beta)))

    def inverse(self):
        beta = collection_cocycle(self.e, self.e)
        return FreeCoords(self.rank, tuple(-a for a in self.e), tuple(b - a for a, b in zip(self.f, beta)))

    def __pow__(self, t):
        t = int(t)
        c = t * (t - 1) // 2
        beta = collection_cocycle(self.e, self.e)
        return FreeCoords(self.rank, tuple(t * a for a in self.e), tuple(t * a + c * b for a, b in zip(self.f, beta)))

    def commutator(self, other):
        self._check_rank(other)
        return FreeCoords(self.rank, None, bracket_form(self.e, other.e))

    def is_identity(self):
        return not any(self.e) and not any(self.f)

    def __eq__(self, other):
        if not isinstance(other, FreeCoords):
            return NotImplemented
        return self.rank == other.rank and self.e == other.e and self.f == other.f

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.rank, self.e, self.f))

    def __repr__(self):
        return "FreeCoords(%d, e=%s, f=%s)" % (self.rank, self.e, self.f)


def free_commutator(u, v):
    return u.commutator(v)


def ordered_power_product(rank, elements, exponents):
    """prod(elements[i] ** exponents[i]) in the given order."""
    g = FreeCoords.identity(rank)
    for w, t in zip(elements, exponents):
        if t:
            g = g * (w ** t)
    return g


def evaluate_free(coords, images, rank):
    """Image of *coords* under the homomorphism sending generator i to images[i].

    *images* are FreeCoords of rank *rank*; any assignment extends to a
    homomorphism because the source is free in the variety.
    """
    g = FreeCoords.identity(rank)
    for t, y in zip(coords.e, images):
        if t:
            g = g * (y ** t)
    for (i, j), t in zip(pair_list(coords.rank), coords.f):
        if t:
            g = g * (images[i].commutator(images[j]) ** t)
    return g


def word_to_coords(rank, word, gen_names=None):
    """Coordinates in F_rank of a word, given as text or as a parsed word."""
    from .presentation import Word, parse_word
    if gen_names is None:
        gen_names = default_gen_names(rank)
    if not isinstance(word, Word):
        word = parse_word(word)
    return word.evaluate(dict((n, i) for i, n in enumerate(gen_names)), rank)


class FreeSubgroup(object):
    """The subgroup of F_rank generated by *elements* and a central lattice.

    Attributes
    ----------
    e_lattice : LatticeBasis
        e-parts of all members.
    lifts : tuple of FreeCoords
        ``lifts[i]`` is a member whose e-part is ``e_lattice.rows[i]``.
    c_lattice : LatticeBasis
        f-parts of the members with zero e-part.
    """
    def __init__(self, rank, elements=(), central=()):
        self.rank = rank
        elements = tuple(OrderedDict.fromkeys(elements))
        rows = [tuple(r) for r in central]
        # members with zero e-part only contribute their f-part
        rows.extend(w.f for w in elements if not any(w.e))
        elements = tuple(w for w in elements if any(w.e))
        hnf = hnf_with_transform(rank, [w.e for w in elements])
        self.e_lattice = hnf.basis
        self.lifts = tuple(ordered_power_product(rank, elements, t) for t in hnf.transforms)
        # B is bilinear and alternating: brackets of a basis span all member brackets
        for u, v in itertools.combinations(self.e_lattice.rows, 2):
            rows.append(bracket_form(u, v))
        for kappa in hnf.kernel:
            rows.append(ordered_power_product(rank, elements, kappa).f)
        self.c_lattice = hnf_basis(n_pairs(rank), rows)

    def split(self, g):
        """Return h = g * m^-1 with m a member and h.e the Hermite residue of g.e."""
        res, coeffs = self.e_lattice.reduce(g.e)
        if not any(coeffs):
            return g
        return g * ordered_power_product(self.rank, self.lifts, coeffs).inverse()

    def reduce(self, g):
        """Canonical representative of the coset g * S."""
        h = self.split(g)
        return FreeCoords(self.rank, h.e, self.c_lattice.residue(h.f))

    def contains(self, g):
        h = self.split(g)
        return not any(h.e) and h.f in self.c_lattice

    def issubset(self, other):
        if all(other.contains(l) for l in self.lifts):
            return all(other.c_lattice.contains(r) is not None for r in self.c_lattice.rows)
        return False

    def commutator_closed(self):
        rows = self.e_lattice.rows
        return all(bracket_form(u, v) in self.c_lattice for u, v in itertools.combinations(rows, 2))

    def normality_closed(self):
        return all(bracket_form(u, unit_vector(self.rank, j)) in self.c_lattice
                   for u in self.e_lattice.rows for j in range(self.rank))

    def __eq__(self, other):
        if not isinstance(other, FreeSubgroup):
            return NotImplemented
        return self.rank == other.rank and self.issubset(other) and other.issubset(self)

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.rank, self.e_lattice, self.c_lattice))


class Nil2Group(object):
    """A group in the variety of class-2 nilpotent groups, given by a presentation.

    Parameters
    ----------
    gen_names : sequence of str
        Generator names; internally generators are identified by position.
    relators : sequence
        Relators as words (text or parsed) or FreeCoords of matching rank.
    name : str, optional
        Used in reports.
    """
    def __init__(self, gen_names, relators=(), name=None):
        from .presentation import format_coords, parse_word
        self.gen_names = tuple(gen_names)
        if len(set(self.gen_names)) != len(self.gen_names):
            raise ValueError("duplicate generator names in %s" % (self.gen_names,))
        self.rank = len(self.gen_names)
        self.name = name
        relators = tuple(relators)
        self.relators = tuple(self._free_coords(r) for r in relators)
        self.relator_words = tuple(format_coords(c, self.gen_names) if isinstance(r, (FreeCoords, GroupElement))
                                   else str(parse_word(r) if isinstance(r, str) else r)
                                   for r, c in zip(relators, self.relators))

        k = self.rank
        central = [bracket_form(r.e, unit_vector(k, j)) for r in self.relators for j in range(k)]
        self.relation_subgroup = FreeSubgroup(k, self.relators, central)
        self.abelianization = quotient_structure(k, self.e_lattice)
        self.derived_quotient = quotient_structure(n_pairs(k), self.c_lattice)
        if self.abelianization.is_finite():
            self.order = self.abelianization.order * self.derived_quotient.order
        else:
            self.order = inf
        logger.debug("built %s: G^ab = %s, G' = %s", self, self.abelianization.describe(),
                     self.derived_quotient.describe())

    @property
    def e_lattice(self):
        return self.relation_subgroup.e_lattice

    @property
    def c_lattice(self):
        return self.relation_subgroup.c_lattice

    @property
    def n_pairs(self):
        return n_pairs(self.rank)

    def _free_coords(self, value):
        from .presentation import Word, parse_word
        if isinstance(value, GroupElement):
            if value.group is not self:
                raise OwnerMismatchError("element of %s used in %s" % (value.group, self))
            return value.coords
        if isinstance(value, FreeCoords):
            if value.rank != self.rank:
                raise DimensionError("coordinates of rank %d used in a group of rank %d" % (value.rank, self.rank))
            return value
        if isinstance(value, str):
            value = parse_word(value)
        if isinstance(value, Word):
            return value.evaluate(dict((n, i) for i, n in enumerate(self.gen_names)), self.rank)
        raise TypeError("cannot interpret %r as an element of %s" % (value, self))

    def element(self, value):
        """Canonical element for a word, FreeCoords or element of this group."""
        return GroupElement(self, self.relation_subgroup.reduce(self._free_coords(value)))

    def identity(self):
        return GroupElement(self, FreeCoords.identity(self.rank))

    def generators(self):
        return tuple(self.element(FreeCoords.generator(self.rank, i)) for i in range(self.rank))

    def is_finite(self):
        return self.order != inf

    def is_abelian(self):
        return self.derived_quotient.is_trivial()

    def normality_closed(self):
        return self.relation_subgroup.normality_closed()

    def check_owner(self, *items):
        for item in items:
            if getattr(item, 'group', None) is not self:
                raise OwnerMismatchError("%r does not belong to %s" % (item, self))

    def commutator_table(self):
        return CommutatorTable(self)

    def presentation_text(self):
        """The presentation in group-file syntax."""
        from .presentation import format_group
        return format_group(self.name or 'G', self.gen_names, self.relator_words)

    def __repr__(self):
        if self.name:
            return "<Nil2Group %s>" % self.name
        return "<Nil2Group <%s | %d relators>>" % (", ".join(self.gen_names), len(self.relators))


def build_group(gen_names, relators=(), name=None):
    return Nil2Group(gen_names, relators, name=name)


def canonical_element(G, value):
    return G.element(value)


class GroupElement(object):
    """Canonical element of a specific Nil2Group."""
    __slots__ = ('group', 'coords')

    def __init__(self, group, coords):
        self.group = group
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, GroupElement) or other.group is not self.group:
            raise OwnerMismatchError("cannot combine elements of different groups")

    def __mul__(self, other):
        self._check(other)
        return self.group.element(self.coords * other.coords)

    def inverse(self):
        return self.group.element(self.coords.inverse())

    def __pow__(self, t):
        return self.group.element(self.coords ** t)

    def commutator(self, other):
        self._check(other)
        return self.group.element(self.coords.commutator(other.coords))

    def is_identity(self):
        return self.coords.is_identity()

    def order(self):
        return element_order(self.group, self)

    def word(self):
        from .presentation import format_coords
        return format_coords(self.coords, self.group.gen_names)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.group is other.group and self.coords == other.coords

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((id(self.group), self.coords))

    def __repr__(self):
        return "<GroupElement %s>" % self.word()


def element_order(G, g):
    """Order of *g*: t0 * (order of g^t0 in G'), t0 the order of g in G^ab."""
    G.check_owner(g)
    t0 = G.abelianization.element_order(g.coords.e)
    if t0 == inf:
        return inf
    h = g ** t0
    return t0 * G.derived_quotient.element_order(h.coords.f)


class SubgroupData(object):
    """Subgroup of *group* generated by *generators*.

    The full preimage in the free group is kept as a FreeSubgroup, so
    membership, inclusion and orders are lattice computations.
    """
    def __init__(self, group, generators):
        group.check_owner(*generators)
        self.group = group
        self.generators = tuple(generators)
        M = group.relation_subgroup
        self.preimage = FreeSubgroup(group.rank,
                                     [g.coords for g in self.generators] + list(M.lifts),
                                     M.c_lattice.rows)

    @property
    def e_lattice(self):
        return self.preimage.e_lattice

    @property
    def c_lattice(self):
        return self.preimage.c_lattice

    def contains(self, g):
        self.group.check_owner(g)
        return self.preimage.contains(g.coords)

    def __contains__(self, g):
        return self.contains(g)

    def _check_same_group(self, other):
        if other.group is not self.group:
            raise OwnerMismatchError("subgroups of different groups")

    def issubset(self, other):
        self._check_same_group(other)
        return self.preimage.issubset(other.preimage)

    def __eq__(self, other):
        if not isinstance(other, SubgroupData):
            return NotImplemented
        return other.group is self.group and self.preimage == other.preimage

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((id(self.group), self.preimage))

    def is_trivial(self):
        return self.e_lattice == self.group.e_lattice and self.c_lattice == self.group.c_lattice

    def is_whole_group(self):
        return self.e_lattice.is_full() and self.c_lattice.is_full()

    def commutator_closed(self):
        return self.preimage.commutator_closed()

    def abelian_image(self):
        """Image of the subgroup in G^ab, i.e. H G'/G'."""
        return relative_quotient(self.e_lattice, self.group.e_lattice)

    def derived_part(self):
        """The intersection with G', as an abelian group."""
        return relative_quotient(self.c_lattice, self.group.c_lattice)

    @property
    def order(self):
        top = self.abelian_image().order
        if top == inf:
            return inf
        return top * self.derived_part().order

    def as_group(self, name=None, gen_names=None):
        """Presentation of the subgroup on its generators.

        Returns
        -------
        group : Nil2Group
        inclusion : Homomorphism
            Sends the i-th generator of *group* to ``self.generators[i]``.
        """
        if gen_names is None:
            gen_names = default_gen_names(len(self.generators))
        relators = kernel_relators(self.group, self.generators)
        H = Nil2Group(gen_names, relators, name=name)
        return H, Homomorphism(H, self.group, self.generators)

    def __repr__(self):
        return "<SubgroupData of %s generated by %s>" % (self.group, [g.word() for g in self.generators])


def subgroup_generated(G, elements):
    return SubgroupData(G, [G.element(g) if not isinstance(g, GroupElement) else g for g in elements])


def kernel_relators(target, images):
    """Normal generators of the kernel of F_s -> target, x_i -> images[i].

    The kernel is described by one relator above every Hermite row of its
    e-part lattice, plus a basis of its purely commutator part.
    """
    s = len(images)
    k, m = target.rank, target.n_pairs
    E, C = target.e_lattice, target.c_lattice
    eps = [y.coords.e for y in images]
    pairs_s = pair_list(s)
    comm_cols = [bracket_form(eps[i], eps[j]) for i, j in pairs_s]
    comm_matrix = [[col[r] for col in comm_cols] for r in range(m)]

    def central_value(t):
        g = target.identity()
        for y, a in zip(images, t):
            if a:
                g = g * (y ** a)
        return g.coords.f

    # exponent vectors whose product lands in G'
    to_ab = [[eps[a][r] for a in range(s)] for r in range(k)]
    e_part = affine_solution_set(to_ab, (0,) * k, E, n_unknowns=s).homogeneous
    values = [central_value(kappa) for kappa in e_part.rows]
    reachable = C.join(hnf_basis(m, comm_cols))
    value_matrix = [[v[r] for v in values] for r in range(m)]
    liftable = affine_solution_set(value_matrix, (0,) * m, reachable, n_unknowns=len(values)).homogeneous

    relators = []
    for lam in liftable.rows:
        e_rel = e_part.combination(lam)
        c = central_value(e_rel)
        sol = affine_solution_set(comm_matrix, vec_scale(-1, c), C, n_unknowns=len(pairs_s))
        if sol.is_empty:
            raise ConsistencyError("kernel element %s has no commutator correction" % (e_rel,))
        relators.append(FreeCoords(s, e_rel, sol.particular))
    pure = affine_solution_set(comm_matrix, (0,) * m, C, n_unknowns=len(pairs_s)).homogeneous
    relators.extend(FreeCoords(s, None, f) for f in pure.rows)
    return relators


class Homomorphism(object):
    """Homomorphism given by the images of the source generators.

    ``well_defined`` records whether every source relator maps to the
    identity; evaluation is only meaningful when it does.
    """
    def __init__(self, source, target, images):
        if len(images) != source.rank:
            raise ValueError("expected %d generator images, got %d" % (source.rank, len(images)))
        target.check_owner(*images)
        self.source = source
        self.target = target
        self.images = tuple(images)
        self.well_defined = all(self._evaluate(r).is_identity() for r in source.relators)

    def _evaluate(self, coords):
        return self.target.element(evaluate_free(coords, [y.coords for y in self.images], self.target.rank))

    def __call__(self, g):
        self.source.check_owner(g)
        return self._evaluate(g.coords)

    def kernel_is_trivial(self):
        """Exact injectivity test: the kernel on F_s lies in the source relations."""
        kernel = kernel_relators(self.target, self.images)
        return all(self.source.relation_subgroup.contains(r) for r in kernel)

    def __repr__(self):
        return "<Homomorphism %s -> %s>" % (self.source, self.target)


class InducedHom(Homomorphism):
    """Homomorphism together with its image and injectivity status."""
    def __init__(self, source, target, images):
        Homomorphism.__init__(self, source, target, images)
        if not self.well_defined:
            self.image = None
            self.injective = None
            return
        self.image = SubgroupData(target, self.images)
        self.injective = self.kernel_is_trivial()
        if source.is_finite():
            by_order = self.image.order == source.order
            if by_order != self.injective:
                raise ConsistencyError("kernel test (%s) and order comparison (%s) disagree for %r"
                                       % (self.injective, by_order, self))


def induced_hom(source, target, gen_images):
    images = [g if isinstance(g, GroupElement) else target.element(g) for g in gen_images]
    return InducedHom(source, target, images)


class GroupInvariants(object):
    def __init__(self, **kwds):
        self.__dict__.update(kwds)


def center_lattice(G):
    """e-parts of central elements: { e : B(e, delta_j) in C for all j }."""
    k, pairs = G.rank, pair_list(G.rank)
    coeff = []
    for j in range(k):
        for a, b in pairs:
            row = [0] * k
            if b == j:
                row[a] += 1
            if a == j:
                row[b] -= 1
            coeff.append(row)
    modulus = reduce(lambda acc, L: acc.direct_sum(L), [G.c_lattice] * k, LatticeBasis.zero(0))
    return affine_solution_set(coeff, (0,) * len(coeff), modulus, n_unknowns=k).homogeneous


def commutator_subgroup(G):
    gens = G.generators()
    return SubgroupData(G, [a.commutator(b) for a, b in itertools.combinations(gens, 2)])


def center(G):
    z = center_lattice(G)
    gens = G.generators()
    elements = [G.element(FreeCoords(G.rank, row)) for row in z.rows]
    elements += [a.commutator(b) for a, b in itertools.combinations(gens, 2)]
    return SubgroupData(G, elements)


def center_mod_commutator(G):
    return relative_quotient(center_lattice(G), G.e_lattice)


def power_subgroup(G, t):
    """Subgroup generated by all t-th powers: <x_i^t> (G')^m, m = t or t/2."""
    t = int(t)
    if t < 1:
        raise ValueError("power must be positive, got %d" % t)
    m = t if t % 2 else t // 2
    gens = G.generators()
    elements = [x ** t for x in gens] + [a.commutator(b) ** m for a, b in itertools.combinations(gens, 2)]
    return SubgroupData(G, elements)


def group_exponent(G):
    if not G.is_finite():
        return inf
    bound = G.abelianization.exponent * G.derived_quotient.exponent
    for t in divisors(bound):
        if power_subgroup(G, t).is_trivial():
            return int(t)
    raise ConsistencyError("no divisor of %d annihilates %s" % (bound, G))


def group_invariants(G):
    return GroupInvariants(order=G.order,
                           exponent=group_exponent(G),
                           abelianization=G.abelianization,
                           commutator_subgroup=commutator_subgroup(G),
                           derived_quotient=G.derived_quotient,
                           center=center(G),
                           center_mod_commutator=center_mod_commutator(G),
                           is_abelian=G.is_abelian(),
                           is_finite=G.is_finite())


class PPart(object):
    def __init__(self, prime, group, inclusion, subgroup):
        self.prime = prime
        self.group = group
        self.inclusion = inclusion
        self.subgroup = subgroup


def p_part(G, p):
    """The p-primary component of a finite G, as a group with its inclusion."""
    if not G.is_finite():
        raise InfiniteGroupError("p-parts are only defined here for finite groups")
    if not isprime(p):
        raise ValueError("%s is not a prime" % p)
    exponent = group_exponent(G)
    pv = p ** multiplicity(p, exponent)
    rest = exponent // pv
    if pv == 1:
        alpha = 0
    elif rest == 1:
        alpha = 1
    else:
        alpha = int(crt([pv, rest], [1, 0])[0])
    sub = SubgroupData(G, [x ** alpha for x in G.generators()])
    name = "%s_%d" % (G.name or 'G', p)
    P, inclusion = sub.as_group(name=name, gen_names=G.gen_names)
    return PPart(p, P, inclusion, sub)


def _merged_names(G, H):
    names = list(G.gen_names)
    for n in H.gen_names:
        new, i = n, 2
        while new in names:
            new = "%s%d" % (n, i)
            i += 1
        names.append(new)
    return names


def _shifted(coords, offset, rank):
    images = [FreeCoords.generator(rank, offset + i) for i in range(coords.rank)]
    return evaluate_free(coords, images, rank)


def coproduct(G, H, name=None):
    """Free product of G and H in the variety (no relators between the factors)."""
    rank = G.rank + H.rank
    relators = [_shifted(r, 0, rank) for r in G.relators] + [_shifted(r, G.rank, rank) for r in H.relators]
    return Nil2Group(_merged_names(G, H), relators, name=name)


def direct_sum(G, H, name=None):
    rank = G.rank + H.rank
    relators = [_shifted(r, 0, rank) for r in G.relators] + [_shifted(r, G.rank, rank) for r in H.relators]
    for i in range(G.rank):
        for j in range(H.rank):
            relators.append(FreeCoords.generator(rank, i).commutator(FreeCoords.generator(rank, G.rank + j)))
    return Nil2Group(_merged_names(G, H), relators, name=name)


def cross_commutator_subgroup(P, split):
    """[A, B] inside a coproduct whose first *split* generators come from A."""
    gens = P.generators()
    return SubgroupData(P, [a.commutator(b) for a in gens[:split] for b in gens[split:]])


class CommutatorTable(object):
    """G^ab in Smith coordinates together with the commutator pairing into G'.

    Elements of G^ab are integer arrays w with 0 <= w_i < orders[i]; the
    pairing ``bracket(u, v)`` returns the Smith coordinates of [u, v] in G'.
    Only finite groups have a table.
    """
    def __init__(self, group):
        if not group.is_finite():
            raise InfiniteGroupError("%s is infinite" % group)
        A, D = group.abelianization, group.derived_quotient
        self.group = group
        self.orders = np.array(A.moduli, dtype=np.int64)
        self.derived_orders = np.array(D.moduli, dtype=np.int64)
        self.exponent = A.exponent
        self.generators = A.generators
        s, t = len(self.orders), len(self.derived_orders)
        pairing = np.zeros((s, s, t), dtype=np.int64)
        for i, j in itertools.product(range(s), repeat=2):
            pairing[i, j] = D.coordinates(bracket_form(self.generators[i], self.generators[j]))
        self.pairing = pairing
        count = int(np.prod(self.orders)) if s else 1
        self.elements = np.array(list(itertools.product(*[range(d) for d in A.moduli])),
                                 dtype=np.int64).reshape(count, s)

    def __len__(self):
        return len(self.elements)

    def normalize(self, w):
        return np.asarray(w, dtype=np.int64) % self.orders

    def bracket(self, u, v):
        return np.einsum('i,ijl,j->l', u, self.pairing, v) % self.derived_orders

    def brackets_with(self, v):
        """Pairing of every element of G^ab with *v* (one row per element)."""
        return np.einsum('ni,ijl,j->nl', self.elements, self.pairing, v) % self.derived_orders

    def project(self, g):
        return np.array(self.group.abelianization.coordinates(g.coords.e), dtype=np.int64)

    def lift(self, w):
        e = self.group.abelianization.lift([int(x) for x in w])
        return self.group.element(FreeCoords(self.group.rank, e))

    def key(self, w):
        return tuple(int(x) for x in w)
