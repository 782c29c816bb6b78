"""Parity sequences, gl(m|n) with a chosen parity sequence, and concrete
modules given by exact matrices for every generator e_ij.

Generator grids are keyed by 1-based pairs (i, j); plain matrix indices stay
0-based.  All derived sign data (|i|, rho, the super trace constants) is read
off the parity sequence.
"""

from fractions import Fraction

from tyang import _kernel
from tyang.exactalg import Poly, Rat, rat, rational_roots
from tyang.superlinalg import (
    SuperSpace,
    charpoly,
    kron_ops,
    mat_identity,
    mat_mul,
    mat_nullspace,
    mat_scale,
    mat_sub,
    mat_vec,
)


class ParameterError(ValueError):
    pass


class IrrationalSpectrum(ArithmeticError):
    """The commuting diagonal family is not split over the rationals."""


class ParitySeq:
    """A sign sequence with m entries +1 and n entries -1."""

    __slots__ = ("s", "kappa", "m", "n")

    def __init__(self, s):
        self.s = tuple(int(x) for x in s)
        if any(x not in (1, -1) for x in self.s):
            raise ParameterError("parity sequence entries must be +-1")
        self.kappa = len(self.s)
        self.m = sum(1 for x in self.s if x == 1)
        self.n = self.kappa - self.m

    def sign(self, i: int) -> int:
        """s_i, 1-based."""
        return self.s[i - 1]

    def parity(self, i: int) -> int:
        """|i| in {0,1}, with s_i = (-1)^|i|."""
        return 0 if self.s[i - 1] == 1 else 1

    @property
    def parities(self):
        return tuple(0 if x == 1 else 1 for x in self.s)

    def rho(self, k: int) -> Fraction:
        """rho_k = s_k + s_{k+1} + ... + s_kappa, with rho_{kappa+1} = 0."""
        if not 1 <= k <= self.kappa + 1:
            raise ParameterError(f"rho index {k} out of range")
        return Fraction(sum(self.s[k - 1 :]))

    @property
    def jay(self) -> Fraction:
        """Half the super dimension, (m - n)/2."""
        return Fraction(self.m - self.n, 2)

    def is_standard(self) -> bool:
        return self.s == (1,) * self.m + (-1,) * self.n

    def space(self) -> SuperSpace:
        return SuperSpace(self.parities)

    def reversed(self) -> "ParitySeq":
        return ParitySeq(self.s[::-1])

    def __eq__(self, other):
        return isinstance(other, ParitySeq) and self.s == other.s

    def __repr__(self):
        return f"ParitySeq({list(self.s)})"


class GlModule:
    """A module given by one exact matrix per generator e_ij."""

    __slots__ = ("ps", "space", "action")

    def __init__(self, ps: ParitySeq, space: SuperSpace, action):
        self.ps = ps
        self.space = space
        self.action = dict(action)

    @property
    def dim(self) -> int:
        return self.space.dim

    def e(self, i: int, j: int):
        return self.action[(i, j)]

    def weight_of(self, v):
        """The weight tuple of an e_ii-eigenvector v, or None."""
        out = []
        for i in range(1, self.ps.kappa + 1):
            w = mat_vec(self.e(i, i), v)
            p = next((k for k, x in enumerate(v) if x), None)
            if p is None:
                return None
            lam = w[p] / v[p]
            if w != [lam * x for x in v]:
                return None
            out.append(lam)
        return tuple(out)


def make_vector_rep(ps: ParitySeq) -> GlModule:
    """The defining kappa-dimensional module, e_ij acting as E_ij."""
    k = ps.kappa
    action = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            m = [[Fraction(0)] * k for _ in range(k)]
            m[i - 1][j - 1] = Fraction(1)
            action[(i, j)] = m
    return GlModule(ps, ps.space(), action)


def make_Lab(s1: int, a, b) -> GlModule:
    """The two-dimensional gl(1|1) module with singular vector of weight (a, b).

    Defined for s = (s1, -s1); the basis is (v+, v-) with v- = e_21 v+, and
    the weight normalization is the one forced by the evaluation action table
    on these modules.
    """
    a, b = rat(a), rat(b)
    if a + b == 0:
        raise ParameterError("need a + b nonzero")
    if s1 not in (1, -1):
        raise ParameterError("s1 must be +-1")
    ps = ParitySeq([s1, -s1])
    space = SuperSpace([0, 1])
    z = Fraction(0)
    action = {
        (1, 1): [[a, z], [z, a - 1]],
        (2, 2): [[b, z], [z, b + 1]],
        (2, 1): [[z, z], [Fraction(1), z]],
        (1, 2): [[z, a + b], [z, z]],
    }
    return GlModule(ps, space, action)


def _add_scaled(A, B, c):
    return [[a + c * b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def verify_gl_module(M: GlModule):
    """Check every supercommutator relation; None on pass, else (i,j,k,l)."""
    ps = M.ps
    d = M.dim
    kk = ps.kappa
    for i in range(1, kk + 1):
        for j in range(1, kk + 1):
            pij = (ps.parity(i) + ps.parity(j)) % 2
            eij = M.e(i, j)
            for k in range(1, kk + 1):
                for l in range(1, kk + 1):
                    pkl = (ps.parity(k) + ps.parity(l)) % 2
                    ekl = M.e(k, l)
                    sign = -1 if (pij and pkl) else 1
                    lhs = mat_sub(mat_mul(eij, ekl), mat_scale(mat_mul(ekl, eij), sign))
                    rhs = [[Fraction(0)] * d for _ in range(d)]
                    if j == k:
                        rhs = _add_scaled(rhs, M.e(i, l), 1)
                    if i == l:
                        rhs = _add_scaled(rhs, M.e(k, j), -sign)
                    if lhs != rhs:
                        return (i, j, k, l)
    return None


def gl_tensor(M: GlModule, N: GlModule) -> GlModule:
    """Tensor product along x -> 1 x x + x x 1, with Koszul signs."""
    if M.ps != N.ps:
        raise ParameterError("tensor factors over different parity sequences")
    spaces = [M.space, N.space]
    action = {}
    for (i, j) in M.action:
        pi = (M.ps.parity(i) + M.ps.parity(j)) % 2
        left = kron_ops([(M.e(i, j), pi), (None, 0)], spaces)
        right = kron_ops([(None, 0), (N.e(i, j), pi)], spaces)
        action[(i, j)] = _add_scaled(left, right, 1)
    return GlModule(M.ps, M.space.tensor(N.space), action)


def _coords_in_span(basis, vectors):
    """Coordinates of each vector in the span of basis; None if outside."""
    if not basis:
        return None if any(any(x for x in v) for v in vectors) else [[] for _ in vectors]
    dim = len(basis[0])
    cols = len(basis)
    # Augmented system [B | targets] with basis vectors as the B columns.
    rows = [[basis[k][r] for k in range(cols)] + [v[r] for v in vectors] for r in range(dim)]
    rref, pivots = _kernel.mat_rref(rows)
    if any(p >= cols for p in pivots):
        return None
    out = []
    for t in range(len(vectors)):
        coord = [Fraction(0)] * cols
        for r, p in enumerate(pivots):
            coord[p] = rref[r][cols + t]
        out.append(coord)
    return out


def weight_decompose(M: GlModule):
    """Simultaneous eigenspace decomposition of the commuting e_ii family.

    Returns a dict mapping weight tuples to lists of basis vectors.  Raises
    IrrationalSpectrum when some e_ii has a non-rational eigenvalue or fails
    to be diagonalizable on M.
    """
    d = M.dim
    blocks = [((), [row[:] for row in mat_identity(d)])]
    for i in range(1, M.ps.kappa + 1):
        A = M.e(i, i)
        new_blocks = []
        for prefix, basis in blocks:
            coords = _coords_in_span(basis, [mat_vec(A, v) for v in basis])
            if coords is None:
                raise IrrationalSpectrum(f"e_{i}{i} does not preserve a weight block")
            sub = [[coords[c][r] for c in range(len(basis))] for r in range(len(basis))]
            chi = charpoly(sub)
            roots, cof = rational_roots(chi)
            if cof.degree > 0:
                raise IrrationalSpectrum(f"e_{i}{i} has irrational eigenvalues")
            found = 0
            for lam, _mult in roots:
                shifted = [row[:] for row in sub]
                for r in range(len(shifted)):
                    shifted[r][r] -= lam
                null = mat_nullspace(shifted)
                if null:
                    lifted = []
                    for nv in null:
                        vec = [Fraction(0)] * d
                        for c, coeff in enumerate(nv):
                            if coeff:
                                for r in range(d):
                                    vec[r] += coeff * basis[c][r]
                        lifted.append(vec)
                    new_blocks.append((prefix + (lam,), lifted))
                    found += len(null)
            if found != len(basis):
                raise IrrationalSpectrum(f"e_{i}{i} is not diagonalizable on the module")
        blocks = new_blocks
    return {prefix: basis for prefix, basis in blocks}


# ---------------------------------------------------------------------------
# JSON serialization; Rat values travel as "p/q" strings.

def _rat_str(x: Fraction) -> str:
    return str(x)


def gl_to_json(M: GlModule) -> dict:
    return {
        "ps": list(M.ps.s),
        "dim": M.dim,
        "parities": list(M.space.parities),
        "e": {
            f"{i},{j}": [[_rat_str(x) for x in row] for row in M.e(i, j)]
            for (i, j) in sorted(M.action)
        },
    }


def gl_from_json(data: dict) -> GlModule:
    ps = ParitySeq(data["ps"])
    space = SuperSpace(data["parities"])
    if space.dim != data["dim"]:
        raise ParameterError("parity list does not match dim")
    action = {}
    for key, grid in data["e"].items():
        i, j = (int(t) for t in key.split(","))
        action[(i, j)] = [[rat(x) for x in row] for row in grid]
    return GlModule(ps, space, action)
