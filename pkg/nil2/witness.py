"""Overgroups realizing a failure of absolute closure.

For a triple (x, y, n) of G the group K is presented on the generators of
G plus two new generators r, s, with the relators of G and r^n x^-1,
s^n y^-1. When G embeds in K and (x, y, n) fails both pair conditions,
[r, s]^n lies in the dominion of G in K but not in G.
"""
import logging

from .dominion import dominion
from .nil2core import ConsistencyError, FreeCoords, Nil2Group, evaluate_free, induced_hom

logger = logging.getLogger(__name__)


class ExtensionReport(object):
    def __init__(self, group, K, inclusion, r, s, x, y, n):
        self.group = group
        self.K = K
        self.inclusion = inclusion
        self.r = r
        self.s = s
        self.x = x
        self.y = y
        self.n = n
        self.embeds = inclusion.injective
        self.commutator_power = r.commutator(s) ** n
        self.commutator_power_in_dominion = None
        self.commutator_power_in_G = None

    @property
    def certifies_nonclosure(self):
        return bool(self.embeds and self.commutator_power_in_dominion and not self.commutator_power_in_G)

    def as_dict(self):
        return {
            'extension': self.K.presentation_text(),
            'order': self.K.order if self.K.is_finite() else 'infinite',
            'embeds': self.embeds,
            'commutator_power': self.commutator_power.word(),
            'in_dominion': self.commutator_power_in_dominion,
            'in_G': self.commutator_power_in_G,
        }


def _fresh_names(taken, preferred=('r', 's')):
    names = []
    for base in preferred:
        name, i = base, 1
        while name in taken or name in names:
            name = "%s%d" % (base, i)
            i += 1
        names.append(name)
    return names


def build_root_extension(G, x, y, n):
    """Adjoin an n-th root r of x and s of y to G; report whether G embeds."""
    G.check_owner(x, y)
    n = int(n)
    if n < 1:
        raise ValueError("multiplier must be positive, got %d" % n)
    k = G.rank
    rank = k + 2
    r_name, s_name = _fresh_names(G.gen_names)
    old = [FreeCoords.generator(rank, i) for i in range(k)]
    relators = [evaluate_free(rel, old, rank) for rel in G.relators]
    r, s = FreeCoords.generator(rank, k), FreeCoords.generator(rank, k + 1)
    relators.append((r ** n) * evaluate_free(x.coords, old, rank).inverse())
    relators.append((s ** n) * evaluate_free(y.coords, old, rank).inverse())
    K = Nil2Group(G.gen_names + (r_name, s_name), relators,
                  name="%s[%s^%d=%s,%s^%d=%s]" % (G.name or 'G', r_name, n, x.word(), s_name, n, y.word()))
    if G.is_finite() and not K.is_finite():
        raise ConsistencyError("root extension of the finite group %s is infinite" % G)
    gens = K.generators()
    inclusion = induced_hom(G, K, gens[:k])
    logger.debug("%s: order %s, embeds=%s", K, K.order, inclusion.injective)
    return ExtensionReport(G, K, inclusion, gens[k], gens[k + 1], x, y, n)


def verify_nonclosure_certificate(G, x, y, n):
    """Build the extension and locate [r,s]^n relative to G and its dominion."""
    report = build_root_extension(G, x, y, n)
    H = report.inclusion.image
    D = dominion(report.K, H)
    report.commutator_power_in_dominion = D.contains(report.commutator_power)
    report.commutator_power_in_G = H.contains(report.commutator_power)
    return report
