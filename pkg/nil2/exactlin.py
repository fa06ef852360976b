"""Exact integer linear algebra over Z.

Lattices are stored by their row-style Hermite normal form: rows in echelon
order, positive pivots, and entries above each pivot reduced into
[0, pivot). Two generating sets span the same lattice exactly when their
bases compare equal.

Hermite and Smith forms are computed by sympy's ``DomainMatrix`` routines
over ``ZZ``; everything else works on tuples of python ints so that no
intermediate value is ever truncated.
"""
import itertools
import logging
from math import gcd, inf, prod

from sympy import Matrix
from sympy.polys.domains import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

logger = logging.getLogger(__name__)


class DimensionError(ValueError):
    """Raised when vectors or matrices do not have the expected shape."""


def _as_vector(ambient_dim, v):
    v = tuple(int(x) for x in v)
    if len(v) != ambient_dim:
        raise DimensionError("expected a vector of length %d, got length %d" % (ambient_dim, len(v)))
    return v


def _as_vectors(ambient_dim, vectors):
    return [_as_vector(ambient_dim, v) for v in vectors]


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(t, u):
    return tuple(t * a for a in u)


def unit_vector(dim, i):
    return tuple(1 if j == i else 0 for j in range(dim))


def _int_rows(dm):
    """Convert a sympy DomainMatrix (or Matrix) to a list of lists of ints."""
    if isinstance(dm, DomainMatrix):
        dm = dm.to_Matrix()
    return [[int(x) for x in row] for row in dm.tolist()]


def _mat_vec(u, m):
    """Row vector times matrix (list of rows)."""
    if not m:
        return ()
    ncols = len(m[0])
    return tuple(sum(u[i] * m[i][j] for i in range(len(u))) for j in range(ncols))


def _row_hnf(ambient_dim, rows):
    """Rows of the row-style HNF of the lattice spanned by *rows*.

    sympy returns the column-style form with pivots at the bottom of each
    column. Feeding the generators as columns with their coordinates
    reversed and reading the result back the same way gives row echelon
    form with the reduction applied above each pivot.
    """
    rows = [r for r in rows if any(r)]
    if not rows or ambient_dim == 0:
        return []
    cols = [[ZZ(r[ambient_dim - 1 - i]) for r in rows] for i in range(ambient_dim)]
    dm = DomainMatrix(cols, (ambient_dim, len(rows)), ZZ)
    W = hermite_normal_form(dm).to_Matrix()
    rank = W.shape[1]
    basis = []
    for t in reversed(range(rank)):
        basis.append(tuple(int(W[ambient_dim - 1 - c, t]) for c in range(ambient_dim)))
    return basis


class LatticeBasis(object):
    """Canonical basis of a sublattice of Z^ambient_dim.

    Instances should be created with :func:`hnf_basis`; the constructor
    trusts that *rows* is already in Hermite normal form.
    """
    def __init__(self, ambient_dim, rows=()):
        self.ambient_dim = ambient_dim
        self.rows = tuple(tuple(r) for r in rows)
        self.pivots = tuple(next(i for i, x in enumerate(r) if x != 0) for r in self.rows)

    @classmethod
    def zero(cls, ambient_dim):
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim):
        return cls(ambient_dim, [unit_vector(ambient_dim, i) for i in range(ambient_dim)])

    @property
    def rank(self):
        return len(self.rows)

    def is_zero(self):
        return self.rank == 0

    def is_full(self):
        return self.rank == self.ambient_dim and all(r[p] == 1 for r, p in zip(self.rows, self.pivots))

    def reduce(self, v):
        """Return (residue, coefficients) with v = residue + sum(c_i * row_i).

        The residue has every pivot coordinate in [0, pivot), which makes it
        the unique such representative of the coset v + L.
        """
        v = list(_as_vector(self.ambient_dim, v))
        coeffs = []
        for row, p in zip(self.rows, self.pivots):
            q = v[p] // row[p]
            if q:
                for i in range(p, self.ambient_dim):
                    v[i] -= q * row[i]
            coeffs.append(q)
        return tuple(v), tuple(coeffs)

    def residue(self, v):
        return self.reduce(v)[0]

    def contains(self, v):
        """Coefficients of *v* over the rows, or None if v is not in the lattice."""
        res, coeffs = self.reduce(v)
        if any(res):
            return None
        return coeffs

    def __contains__(self, v):
        return self.contains(v) is not None

    def combination(self, coeffs):
        v = [0] * self.ambient_dim
        for c, row in zip(coeffs, self.rows):
            if c:
                for i, x in enumerate(row):
                    v[i] += c * x
        return tuple(v)

    def join(self, other):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionError("cannot join lattices in dimensions %d and %d" % (self.ambient_dim, other.ambient_dim))
        return hnf_basis(self.ambient_dim, self.rows + other.rows)

    def issubset(self, other):
        return all(other.contains(r) is not None for r in self.rows)

    def scaled(self, t):
        return hnf_basis(self.ambient_dim, [vec_scale(t, r) for r in self.rows])

    def direct_sum(self, other):
        n, m = self.ambient_dim, other.ambient_dim
        rows = [r + (0,) * m for r in self.rows] + [(0,) * n + r for r in other.rows]
        return hnf_basis(n + m, rows)

    def representatives(self):
        """Iterate over the canonical residues of Z^n / L (full-rank lattices only)."""
        if self.rank != self.ambient_dim:
            raise ValueError("lattice of rank %d in dimension %d has infinitely many cosets" % (self.rank, self.ambient_dim))
        for values in itertools.product(*[range(r[p]) for r, p in zip(self.rows, self.pivots)]):
            yield tuple(values)

    def __eq__(self, other):
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __ne__(self, other):
        eq = self.__eq__(other)
        return eq if eq is NotImplemented else not eq

    def __hash__(self):
        return hash((self.ambient_dim, self.rows))

    def __repr__(self):
        return "<LatticeBasis dim=%d rows=%s>" % (self.ambient_dim, list(self.rows))


def hnf_basis(ambient_dim, generators):
    """Canonical (Hermite normal form) basis of the lattice spanned by *generators*.

    Parameters
    ----------
    ambient_dim : int
        Length of every generating vector.
    generators : sequence of integer vectors
        May be empty, in which case the zero lattice is returned.

    Returns
    -------
    basis : LatticeBasis
    """
    rows = _as_vectors(ambient_dim, generators)
    return LatticeBasis(ambient_dim, _row_hnf(ambient_dim, rows))


class HnfTransform(object):
    """HNF of a generating set together with the relations among the generators.

    ``basis.rows[i] == sum(transforms[i][j] * generators[j])`` and the
    ``kernel`` vectors form a basis of { t : sum(t_j * generators[j]) = 0 }.
    """
    def __init__(self, basis, transforms, kernel):
        self.basis = basis
        self.transforms = transforms
        self.kernel = kernel


def hnf_with_transform(ambient_dim, generators):
    gens = _as_vectors(ambient_dim, generators)
    p = len(gens)
    augmented = [g + unit_vector(p, i) for i, g in enumerate(gens)]
    basis, transforms, kernel = [], [], []
    for row in _row_hnf(ambient_dim + p, augmented):
        if any(row[:ambient_dim]):
            basis.append(row[:ambient_dim])
            transforms.append(row[ambient_dim:])
        else:
            kernel.append(row[ambient_dim:])
    return HnfTransform(LatticeBasis(ambient_dim, basis), tuple(transforms), tuple(kernel))


def lattice_contains(L, v):
    """Return (is_member, coefficients); coefficients is None for non-members."""
    coeffs = L.contains(v)
    return coeffs is not None, coeffs


def lattice_join(L1, L2):
    return L1.join(L2)


class SmithDecomposition(object):
    """Smith form ``left * matrix * right == diag(diagonal)``.

    ``invariant_factors`` lists the nonzero diagonal entries in order,
    unit entries included; ``free_rank`` is the number of columns beyond
    the rank, i.e. the free rank of Z^ncols modulo the row space.
    """
    def __init__(self, diagonal, left, right, shape):
        self.diagonal = tuple(diagonal)
        self.left = left
        self.right = right
        self.shape = shape
        self.invariant_factors = tuple(d for d in self.diagonal if d != 0)
        self.rank = len(self.invariant_factors)
        self.free_rank = shape[1] - self.rank

    def __repr__(self):
        return "<SmithDecomposition factors=%s free_rank=%d>" % (self.invariant_factors, self.free_rank)


def _identity(n):
    return [list(unit_vector(n, i)) for i in range(n)]


def smith_decomposition(matrix, ncols=None):
    """Smith normal form of an integer matrix with unimodular transforms.

    Parameters
    ----------
    matrix : sequence of integer rows
    ncols : int, optional
        Number of columns; required only when *matrix* has no rows.
    """
    rows = [tuple(int(x) for x in r) for r in matrix]
    if ncols is None:
        if not rows:
            raise DimensionError("ncols is required for a matrix without rows")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise DimensionError("ragged matrix: expected rows of length %d, got %d" % (ncols, len(r)))
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return SmithDecomposition((), _identity(nrows), _identity(ncols), (nrows, ncols))
    if not any(any(r) for r in rows):
        return SmithDecomposition((0,) * min(nrows, ncols), _identity(nrows), _identity(ncols), (nrows, ncols))

    dm = DomainMatrix([[ZZ(x) for x in r] for r in rows], (nrows, ncols), ZZ)
    smf, s, t = smith_normal_decomp(dm)
    D = _int_rows(smf)
    left = _int_rows(s)
    right = _int_rows(t)
    diagonal = [D[i][i] for i in range(min(nrows, ncols))]
    for i, d in enumerate(diagonal):
        if d < 0:
            left[i] = [-x for x in left[i]]
            diagonal[i] = -d
    return SmithDecomposition(diagonal, left, right, (nrows, ncols))


def _unimodular_inverse(m):
    if not m:
        return []
    return _int_rows(Matrix(m).inv())


class AbelianQuotient(object):
    """The finitely generated abelian group Z^ambient_dim / lattice.

    Smith coordinates list the torsion summands Z/d_1, ..., Z/d_s (unit
    factors dropped) followed by the free summands. ``coordinates`` maps an
    ambient vector to Smith coordinates and ``lift`` maps back; canonical
    coset representatives come from the Hermite basis (``residue``).

    When *frame* is given the group is a relative quotient sup / sub and the
    ambient coordinates are coefficients over the rows of *frame* (see
    :func:`relative_quotient`).
    """
    def __init__(self, lattice, frame=None):
        self.lattice = lattice
        self.frame = frame
        self.ambient_dim = lattice.ambient_dim
        smith = smith_decomposition(lattice.rows, ncols=self.ambient_dim)
        self._right = smith.right
        self._right_inv = _unimodular_inverse(smith.right)
        moduli = smith.invariant_factors + (0,) * smith.free_rank
        self._active = tuple(i for i, d in enumerate(moduli) if d != 1)
        self.moduli = tuple(moduli[i] for i in self._active)
        self.invariant_factors = tuple(d for d in smith.invariant_factors if d != 1)
        self.free_rank = smith.free_rank

    @property
    def order(self):
        if self.free_rank:
            return inf
        return prod(self.invariant_factors)

    @property
    def exponent(self):
        if self.free_rank:
            return inf
        return self.torsion_exponent

    @property
    def torsion_exponent(self):
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def is_finite(self):
        return self.free_rank == 0

    def is_trivial(self):
        return not self.moduli

    def is_cyclic(self):
        return self.free_rank + len(self.invariant_factors) <= 1

    def p_rank(self, p):
        """Dimension of G/pG over Z/p."""
        return self.free_rank + sum(1 for d in self.invariant_factors if d % p == 0)

    def residue(self, u):
        return self.lattice.residue(u)

    def is_zero(self, u):
        return not any(self.lattice.residue(u))

    def coordinates(self, u):
        w = _mat_vec(_as_vector(self.ambient_dim, u), self._right)
        return tuple(w[i] % d if d else w[i] for i, d in zip(self._active, self.moduli))

    def lift(self, coords):
        if len(coords) != len(self._active):
            raise DimensionError("expected %d Smith coordinates, got %d" % (len(self._active), len(coords)))
        w = [0] * self.ambient_dim
        for i, c in zip(self._active, coords):
            w[i] = int(c)
        return _mat_vec(w, self._right_inv)

    @property
    def generators(self):
        """Ambient vectors projecting to the generators of the cyclic summands."""
        n = len(self._active)
        return tuple(self.lift(unit_vector(n, i)) for i in range(n))

    def element_order(self, u):
        order = 1
        for c, d in zip(self.coordinates(u), self.moduli):
            if d == 0:
                if c != 0:
                    return inf
            else:
                k = d // gcd(c, d)
                order = order * k // gcd(order, k)
        return order

    def frame_coordinates(self, v):
        """Smith coordinates of a vector of the frame lattice."""
        coeffs = self.frame.contains(v)
        if coeffs is None:
            raise ValueError("vector %s is not in the frame lattice" % (v,))
        return self.coordinates(coeffs)

    def frame_lift(self, coords):
        return self.frame.combination(self.lift(coords))

    def describe(self):
        """Human readable form, e.g. 'Z^1 + Z/2 + Z/4'."""
        parts = []
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else "Z^%d" % self.free_rank)
        parts.extend("Z/%d" % d for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return "<AbelianQuotient %s>" % self.describe()


def quotient_structure(ambient_dim, L):
    if L.ambient_dim != ambient_dim:
        raise DimensionError("lattice lives in dimension %d, not %d" % (L.ambient_dim, ambient_dim))
    return AbelianQuotient(L)


def relative_quotient(sup, sub):
    """Structure of sup / sub for lattices sub <= sup."""
    coeffs = []
    for r in sub.rows:
        c = sup.contains(r)
        if c is None:
            raise ValueError("lattice is not contained in the given superlattice")
        coeffs.append(c)
    return AbelianQuotient(hnf_basis(sup.rank, coeffs), frame=sup)


def lattice_index(sup, sub):
    return relative_quotient(sup, sub).order


class SolutionSet(object):
    """Integer solutions u of ``A u = b (mod M)``: ``particular + homogeneous``.

    An empty set has ``particular`` and ``homogeneous`` both None.
    """
    def __init__(self, n_unknowns, particular=None, homogeneous=None):
        self.n_unknowns = n_unknowns
        self.particular = particular
        self.homogeneous = homogeneous

    @property
    def is_empty(self):
        return self.particular is None

    def contains(self, u):
        if self.is_empty:
            return False
        return vec_sub(_as_vector(self.n_unknowns, u), self.particular) in self.homogeneous

    def __repr__(self):
        if self.is_empty:
            return "<SolutionSet empty>"
        return "<SolutionSet %s + %s>" % (self.particular, list(self.homogeneous.rows))


class CongruenceSystem(object):
    """The system ``coeff_matrix * u = rhs (mod modulus)`` for varying rhs.

    Parameters
    ----------
    coeff_matrix : sequence of integer rows
        d rows of length n; u is a column vector of n unknowns.
    modulus : LatticeBasis
        Lattice in Z^d; ``LatticeBasis.zero(d)`` gives plain equations.
    n_unknowns : int, optional
        Needed only when the system has no rows.

    The Hermite form is computed once; ``solve`` only reduces the rhs.
    """
    def __init__(self, coeff_matrix, modulus, n_unknowns=None):
        d = modulus.ambient_dim
        rows = [tuple(int(x) for x in r) for r in coeff_matrix]
        if len(rows) != d:
            raise DimensionError("coefficient matrix has %d rows but the modulus lives in dimension %d" % (len(rows), d))
        if n_unknowns is None:
            if not rows:
                raise DimensionError("n_unknowns is required for a system without equations")
            n_unknowns = len(rows[0])
        for r in rows:
            if len(r) != n_unknowns:
                raise DimensionError("coefficient rows must have length %d" % n_unknowns)
        self.dim = d
        self.n_unknowns = n_unknowns
        self.modulus = modulus
        columns = [tuple(r[j] for r in rows) for j in range(n_unknowns)]
        self._hnf = hnf_with_transform(d, columns + list(modulus.rows))
        self.homogeneous = hnf_basis(n_unknowns, [k[:n_unknowns] for k in self._hnf.kernel])

    def solve(self, rhs):
        """Solutions for *rhs*; the particular solution is the canonical residue."""
        rhs = _as_vector(self.dim, rhs)
        coeffs = self._hnf.basis.contains(rhs)
        if coeffs is None:
            return SolutionSet(self.n_unknowns)
        combination = [0] * self.n_unknowns
        for c, t in zip(coeffs, self._hnf.transforms):
            if c:
                for j in range(self.n_unknowns):
                    combination[j] += c * t[j]
        return SolutionSet(self.n_unknowns, self.homogeneous.residue(combination), self.homogeneous)


def affine_solution_set(coeff_matrix, rhs, modulus, n_unknowns=None):
    """Solve the congruence system ``coeff_matrix * u = rhs (mod modulus)``.

    Returns
    -------
    solutions : SolutionSet
        The particular solution is the canonical residue modulo the
        homogeneous lattice.

    See :class:`CongruenceSystem` for the parameters.
    """
    return CongruenceSystem(coeff_matrix, modulus, n_unknowns).solve(rhs)
