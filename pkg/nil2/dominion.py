"""Dominions of subgroups in the variety of class-2 nilpotent groups.

The dominion of H in G consists of H together with all [x,y]^q where
q >= 0 and x^q, y^q lie in H G'. Only the image of x and y in
A = G^ab matters, and with T = A / (image of H) the condition reads
q x, q y in the image of H, i.e. x, y lie in the preimage S_q of the
q-torsion of T. S_q only depends on d = gcd(q, e_t), e_t the torsion
exponent of T, and for fixed d the integers q with gcd(q, e_t) = d
generate dZ, so

    dom_G(H) = < H, [u, v]^d : d | e_t, u, v in S_d >

and the added generators are central.
"""
import logging
from itertools import combinations

from sympy import divisors

from .exactlin import affine_solution_set, quotient_structure, relative_quotient, vec_scale
from .nil2core import FreeCoords, OwnerMismatchError, SubgroupData, bracket_form

logger = logging.getLogger(__name__)


class DominionContribution(object):
    """Generators added to H for one divisor d of the torsion exponent."""
    def __init__(self, d, torsion_lattice, generators):
        self.d = d
        self.torsion_lattice = torsion_lattice
        self.generators = generators

    def __repr__(self):
        return "<DominionContribution d=%d: %s>" % (self.d, [g.word() for g in self.generators])


def _check_subgroup(G, H):
    if not isinstance(H, SubgroupData) or H.group is not G:
        raise OwnerMismatchError("%r is not a subgroup of %s" % (H, G))


def dominion_contributions(G, H):
    _check_subgroup(G, H)
    k = G.rank
    e_h = H.e_lattice
    e_t = quotient_structure(k, e_h).torsion_exponent
    contributions = []
    for d in divisors(e_t):
        d = int(d)
        scaled = [[d if i == j else 0 for j in range(k)] for i in range(k)]
        torsion = affine_solution_set(scaled, (0,) * k, e_h, n_unknowns=k).homogeneous
        gens = []
        for u, v in combinations(torsion.rows, 2):
            gens.append(G.element(FreeCoords(k, None, vec_scale(d, bracket_form(u, v)))))
        contributions.append(DominionContribution(d, torsion, gens))
    return contributions


def dominion(G, H):
    """dom_G(H) as a subgroup of G."""
    extra = [g for c in dominion_contributions(G, H) for g in c.generators if not g.is_identity()]
    D = SubgroupData(G, list(H.generators) + extra)
    logger.debug("dominion of %r in %s adds %d central generators", H, G, len(extra))
    return D


def dominion_gap(G, H):
    """D / H as an abelian group; trivial exactly when H is closed in G."""
    D = dominion(G, H)
    return relative_quotient(D.c_lattice, H.c_lattice)


def is_closed_in(G, H):
    return dominion_gap(G, H).is_trivial()
