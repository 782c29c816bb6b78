"""Generating-series actions T(u) on modules: evaluation, shift, tensor,
inverse series, highest-weight extraction, and duals.

A TAction stores one rational-function matrix per generator pair (i, j),
1-based.  The operator on module x V is assembled with the sign
(-1)^(|i||j|+|j|) in front of the (i, j) block, which is exactly the
convention making block products behave like ordinary matrix products; all
Koszul signs are produced by kron_ops.
"""

from fractions import Fraction

from tyang.exactalg import Poly, RatFun, rat, rational_roots, rf_equal
from tyang.glmn import GlModule, ParitySeq
from tyang.superlinalg import (
    DimensionMismatch,
    Grid2Witness,
    RFMatrix,
    SuperSpace,
    check_identity_2var,
    kron_ops,
    mat_identity,
    mat_mul,
    mat_sub,
    rfmat_inverse,
    tensor_space,
)


class NotHighest(ValueError):
    """The supplied vector is not a highest-weight vector."""


def _block_sign(ps: ParitySeq, i: int, j: int) -> int:
    """(-1)^(|i||j| + |j|), the matrix-product-friendly block sign."""
    pi, pj = ps.parity(i), ps.parity(j)
    return -1 if (pi * pj + pj) % 2 else 1


def realize_mixed(grids, ps: ParitySeq, spaces, op_slot: int, e_slot: int):
    """Assemble sum_ij sign * x_ij x E_ij over an arbitrary factor list.

    grids maps (i, j) to a matrix (RFMatrix or plain grid) living on
    spaces[op_slot]; E_ij is placed at spaces[e_slot] (a copy of V); every
    other factor carries the identity.  Returns an RFMatrix when any input
    is one, otherwise a Fraction grid.
    """
    k = ps.kappa
    dim = 1
    for sp in spaces:
        dim *= sp.dim
    rf_mode = any(isinstance(g, RFMatrix) for g in grids.values())
    zero = RatFun.zero() if rf_mode else Fraction(0)
    total = [[zero] * dim for _ in range(dim)]
    for (i, j), x in grids.items():
        grid = x.entries if isinstance(x, RFMatrix) else x
        par = (ps.parity(i) + ps.parity(j)) % 2
        e = [[Fraction(0)] * k for _ in range(k)]
        e[i - 1][j - 1] = Fraction(_block_sign(ps, i, j))
        ops = [(None, 0)] * len(spaces)
        ops[op_slot] = (grid, par)
        ops[e_slot] = (e, par)
        term = kron_ops(ops, spaces)
        for r in range(dim):
            tr = term[r]
            for c in range(dim):
                if tr[c]:
                    total[r][c] = total[r][c] + tr[c]
    if rf_mode:
        sp = tensor_space(spaces)
        return RFMatrix.from_const(total, sp, sp)
    return total


def realize_full(grids, ps: ParitySeq, carrier: SuperSpace, slot=1, nslots=1):
    """Assemble the operator on carrier x V^nslots with E_ij in one V slot."""
    vsp = ps.space()
    return realize_mixed(grids, ps, [carrier] + [vsp] * nslots, 0, slot)


def extract_grid(F: RFMatrix, ps: ParitySeq, carrier: SuperSpace):
    """Invert realize_full for a single auxiliary V in the last slot."""
    k = ps.kappa
    d = carrier.dim
    out = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            bs = _block_sign(ps, i, j)
            pij = (ps.parity(i) + ps.parity(j)) % 2
            ent = []
            for q in range(d):
                row = []
                for p in range(d):
                    v = F[q * k + (i - 1), p * k + (j - 1)]
                    sign = bs * (-1 if (pij and carrier.parities[p]) else 1)
                    row.append(v if sign == 1 else -v)
                ent.append(row)
            out[(i, j)] = RFMatrix(ent, carrier, carrier)
    return out


def flip_matrix(ps: ParitySeq):
    """The graded flip P = sum s_b E_ab x E_ba on V x V as a Fraction grid."""
    k = ps.kappa
    vsp = ps.space()
    total = [[Fraction(0)] * k * k for _ in range(k * k)]
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            par = (ps.parity(a) + ps.parity(b)) % 2
            eab = [[Fraction(0)] * k for _ in range(k)]
            eab[a - 1][b - 1] = Fraction(ps.sign(b))
            eba = [[Fraction(0)] * k for _ in range(k)]
            eba[b - 1][a - 1] = Fraction(1)
            term = kron_ops([(eab, par), (eba, par)], [vsp, vsp])
            for r in range(k * k):
                for c in range(k * k):
                    if term[r][c]:
                        total[r][c] += term[r][c]
    return total


def r_matrix_at(P, x: Fraction):
    """R(x) = 1 - P/x evaluated at a nonzero rational point."""
    n = len(P)
    out = [[-p / x for p in row] for row in P]
    for i in range(n):
        out[i][i] += 1
    return out


class TAction:
    """A family { t_ij(u) } of rational-function matrices on one module."""

    def __init__(self, ps: ParitySeq, space: SuperSpace, t, provenance=("direct",)):
        self.ps = ps
        self.space = space
        self.t = dict(t)
        self.provenance = provenance
        self._tprime = None

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def kappa(self) -> int:
        return self.ps.kappa

    def full(self, slot=1, nslots=1) -> RFMatrix:
        return realize_full(self.t, self.ps, self.space, slot, nslots)

    def full_at(self, x, slot=1, nslots=1, negate=False):
        """Numeric full operator at u = x (or at -x when negate is set)."""
        x = rat(x)
        grids = {
            key: m.eval_mat(-x if negate else x) for key, m in self.t.items()
        }
        return realize_full(grids, self.ps, self.space, slot, nslots)

    def common_den(self) -> Poly:
        d = Poly.one()
        for m in self.t.values():
            for row in m.entries:
                for e in row:
                    if e:
                        g = d.gcd(e.den)
                        d = d * (e.den // g)
        return d

    def cleared_degree(self) -> int:
        d = self.common_den()
        best = d.degree
        for m in self.t.values():
            for row in m.entries:
                for e in row:
                    if e:
                        best = max(best, e.num.degree + d.degree - e.den.degree)
        return best

    def coefficient_matrix(self, i, j, r):
        """The matrix of the u^-r coefficient of t_ij(u)."""
        out = []
        for row in self.t[(i, j)].entries:
            out.append([e.series(r)[r] if e else Fraction(0) for e in row])
        return out


class TPrimeAction:
    """The inverse-series family { t'_ij(u) }; same layout as TAction."""

    def __init__(self, ps, space, t):
        self.ps = ps
        self.space = space
        self.t = dict(t)

    def full(self, slot=1, nslots=1) -> RFMatrix:
        return realize_full(self.t, self.ps, self.space, slot, nslots)

    def full_at(self, x, slot=1, nslots=1, negate=False):
        x = rat(x)
        grids = {
            key: m.eval_mat(-x if negate else x) for key, m in self.t.items()
        }
        return realize_full(grids, self.ps, self.space, slot, nslots)

    def common_den(self) -> Poly:
        d = Poly.one()
        for m in self.t.values():
            for row in m.entries:
                for e in row:
                    if e:
                        g = d.gcd(e.den)
                        d = d * (e.den // g)
        return d

    def cleared_degree(self) -> int:
        d = self.common_den()
        best = d.degree
        for m in self.t.values():
            for row in m.entries:
                for e in row:
                    if e:
                        best = max(best, e.num.degree + d.degree - e.den.degree)
        return best


def trivial_action(ps: ParitySeq) -> TAction:
    """The one-dimensional module with t_ij(u) = delta_ij."""
    k = ps.kappa
    space = SuperSpace([0])
    t = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            t[(i, j)] = RFMatrix([[RatFun.one() if i == j else RatFun.zero()]], space, space)
    return TAction(ps, space, t, ("trivial",))


def evaluation_action(M: GlModule, z=0) -> TAction:
    """t_ij(u) = delta_ij + s_i e_ij / (u - z) on a gl module."""
    z = rat(z)
    den = Poly([-z, 1])
    k = M.ps.kappa
    t = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            ent = []
            si = M.ps.sign(i)
            e = M.e(i, j)
            for p in range(M.dim):
                row = []
                for q in range(M.dim):
                    f = RatFun(Poly.const(si * e[p][q]), den) if e[p][q] else RatFun.zero()
                    if i == j and p == q:
                        f = f + RatFun.one()
                    row.append(f)
                ent.append(row)
            t[(i, j)] = RFMatrix(ent, M.space, M.space)
    return TAction(M.ps, M.space, t, ("evaluation", M, z))


def shift_action(T: TAction, z) -> TAction:
    """Pull back through u -> u - z in every entry."""
    z = rat(z)
    t = {key: m.subs_linear(1, -z) for key, m in T.t.items()}
    prov = ("shift", T, z)
    if T.provenance[0] == "evaluation":
        prov = ("evaluation", T.provenance[1], T.provenance[2] + z)
    return TAction(T.ps, T.space, t, prov)


def tensor_action(L: TAction, R: TAction) -> TAction:
    """Coproduct action t_ij = sum_k t_ik x t_kj on L x R."""
    if L.ps != R.ps:
        raise DimensionMismatch("tensor factors over different parity sequences")
    ps = L.ps
    kk = ps.kappa
    spaces = [L.space, R.space]
    space = L.space.tensor(R.space)
    t = {}
    for i in range(1, kk + 1):
        for j in range(1, kk + 1):
            acc = None
            for k in range(1, kk + 1):
                li = L.t[(i, k)]
                rj = R.t[(k, j)]
                if li.is_zero() or rj.is_zero():
                    continue
                term = kron_ops(
                    [
                        (li.entries, (ps.parity(i) + ps.parity(k)) % 2),
                        (rj.entries, (ps.parity(k) + ps.parity(j)) % 2),
                    ],
                    spaces,
                )
                if acc is None:
                    acc = term
                else:
                    for r in range(len(acc)):
                        tr = term[r]
                        for c in range(len(acc)):
                            if tr[c]:
                                acc[r][c] = acc[r][c] + tr[c]
            if acc is None:
                t[(i, j)] = RFMatrix.zero(space.dim, space.dim, space, space)
            else:
                t[(i, j)] = RFMatrix.from_const(acc, space, space)
    return TAction(ps, space, t, ("tensor", L, R))


def inverse_series_action(T: TAction) -> TPrimeAction:
    """The family t'_ij(u) with T(u) T'(u) = T'(u) T(u) = 1, exactly.

    Tensor provenance is inverted factorwise through the inverse-series
    coproduct; anything else inverts the assembled operator directly.
    """
    if T._tprime is not None:
        return T._tprime
    ps = T.ps
    kk = ps.kappa
    if T.provenance[0] == "tensor":
        L, R = T.provenance[1], T.provenance[2]
        Lp = inverse_series_action(L)
        Rp = inverse_series_action(R)
        spaces = [L.space, R.space]
        space = T.space
        t = {}
        for i in range(1, kk + 1):
            for j in range(1, kk + 1):
                acc = None
                for a in range(1, kk + 1):
                    la = Lp.t[(a, j)]
                    ra = Rp.t[(i, a)]
                    if la.is_zero() or ra.is_zero():
                        continue
                    sgn = (
                        -1
                        if ((ps.parity(a) + ps.parity(j)) * (ps.parity(i) + ps.parity(a))) % 2
                        else 1
                    )
                    term = kron_ops(
                        [
                            (la.entries, (ps.parity(a) + ps.parity(j)) % 2),
                            (ra.entries, (ps.parity(i) + ps.parity(a)) % 2),
                        ],
                        spaces,
                    )
                    if acc is None:
                        acc = [[sgn * x for x in row] for row in term]
                    else:
                        for r in range(len(acc)):
                            tr = term[r]
                            for c in range(len(acc)):
                                if tr[c]:
                                    acc[r][c] = acc[r][c] + sgn * tr[c]
                if acc is None:
                    t[(i, j)] = RFMatrix.zero(space.dim, space.dim, space, space)
                else:
                    t[(i, j)] = RFMatrix.from_const(acc, space, space)
        T._tprime = TPrimeAction(ps, space, t)
        return T._tprime
    inv = rfmat_inverse(T.full())
    T._tprime = TPrimeAction(ps, T.space, extract_grid(inv, ps, T.space))
    return T._tprime


def dual_action(T: TAction) -> TAction:
    """Action on the dual space through the inverse-transpose twist.

    t*_ij(u) is the sign-adjusted supertranspose of t'_ji(-u); highest
    vectors dualize to highest vectors with the predictable weight.
    """
    ps = T.ps
    kk = ps.kappa
    Tp = inverse_series_action(T)
    d = T.dim
    pars = T.space.parities
    t = {}
    for i in range(1, kk + 1):
        for j in range(1, kk + 1):
            pij = (ps.parity(i) + ps.parity(j)) % 2
            bs = _block_sign(ps, i, j)
            src = Tp.t[(j, i)].subs_neg()
            ent = []
            for q in range(d):
                row = []
                for p in range(d):
                    sign = bs * (-1 if (pij and pars[p]) else 1)
                    v = src[p, q]
                    row.append(v if sign == 1 else -v)
                ent.append(row)
            t[(i, j)] = RFMatrix(ent, T.space, T.space)
    return TAction(ps, SuperSpace(pars), t, ("dual", T))


# ---------------------------------------------------------------------------
# Highest weights.

def highest_lweight(T: TAction, xi):
    """Extract the eigen-series tuple of a highest vector.

    Verifies t_ij(u) xi = 0 for i < j and exact proportionality on the
    diagonal; raises NotHighest otherwise.
    """
    xi = [rat(x) for x in xi]
    if not any(xi):
        raise NotHighest("zero vector")
    kk = T.kappa
    for i in range(1, kk + 1):
        for j in range(i + 1, kk + 1):
            w = T.t[(i, j)].mat_vec(xi)
            if any(w):
                raise NotHighest(f"t_{i}{j}(u) does not annihilate the vector")
    p = next(k for k, x in enumerate(xi) if x)
    lams = []
    for i in range(1, kk + 1):
        w = T.t[(i, i)].mat_vec(xi)
        lam = w[p] / RatFun.const(xi[p])
        if any(w[q] - lam * xi[q] for q in range(len(xi))):
            raise NotHighest(f"t_{i}{i}(u) is not scalar on the vector")
        lams.append(lam)
    return tuple(lams)


def varpi_weight(lams, ps: ParitySeq):
    """The ordinary weight attached to an eigen-series tuple."""
    out = []
    for i, lam in enumerate(lams, start=1):
        c1 = lam.series(1)[1]
        out.append(ps.sign(i) * c1)
    return tuple(out)


def lambda_prime_formula(lams, ps: ParitySeq, i: int) -> RatFun:
    """Closed form for the inverse-series eigenvalue on a highest vector."""
    kk = ps.kappa
    out = lams[i - 1].shift(ps.rho(i + 1)).inverse()
    for k in range(i + 1, kk + 1):
        out = out * lams[k - 1].shift(ps.rho(k)) / lams[k - 1].shift(ps.rho(k + 1))
    return out


def lambda_prime_check(T: TAction, xi, lams=None, npairs=10):
    """Verify the inverse-series behaviour on a highest vector.

    Clause a: t'_ij(u) xi = 0 for i < j.  Clause b: t'_ii(u) xi equals the
    closed-form eigenvalue.  Clause c: the two-series killing products vanish
    at npairs deterministic sample pairs.  Returns None on success, else a
    (clause, detail) pair.
    """
    xi = [rat(x) for x in xi]
    if lams is None:
        lams = highest_lweight(T, xi)
    Tp = inverse_series_action(T)
    kk = T.kappa
    for i in range(1, kk + 1):
        for j in range(i + 1, kk + 1):
            if any(Tp.t[(i, j)].mat_vec(xi)):
                return ("a", (i, j))
    p = next(k for k, x in enumerate(xi) if x)
    for i in range(1, kk + 1):
        w = Tp.t[(i, i)].mat_vec(xi)
        lam_p = lambda_prime_formula(lams, T.ps, i)
        if any(w[q] - lam_p * RatFun.const(xi[q]) for q in range(len(xi))):
            return ("b", i)
    # Clause c at deterministic points off the poles.
    dT = T.common_den()
    dTp = Tp.common_den()
    pairs = []
    u0 = 1
    while len(pairs) < npairs:
        u0 += 1
        v0 = u0 + 1
        if dT(u0) == 0 or dTp(v0) == 0:
            continue
        pairs.append((Fraction(u0), Fraction(v0)))
    for u0, v0 in pairs:
        tp_at = {key: m.eval_mat(v0) for key, m in Tp.t.items()}
        t_at = {key: m.eval_mat(u0) for key, m in T.t.items()}
        for i in range(1, kk + 1):
            for j in range(i + 1, kk + 1):
                for a in range(1, kk + 1):
                    for c in range(1, a + 1):
                        vec = [sum(r[s] * xi[s] for s in range(len(xi))) for r in tp_at[(c, j)]]
                        vec = [sum(r[s] * vec[s] for s in range(len(vec))) for r in t_at[(i, a)]]
                        if any(vec):
                            return ("c", (i, a, c, j, (u0, v0)))
        for i in range(1, kk + 1):
            for a in range(1, kk + 1):
                for c in range(1, a):
                    vec = [sum(r[s] * xi[s] for s in range(len(xi))) for r in tp_at[(c, i)]]
                    vec = [sum(r[s] * vec[s] for s in range(len(vec))) for r in t_at[(i, a)]]
                    if any(vec):
                        return ("c", (i, a, c, i, (u0, v0)))
    return None


# ---------------------------------------------------------------------------
# Relation certification.

def verify_rtt(T: TAction):
    """Certify the exchange relation and its two inverse-series variants.

    Returns None on pass or the first Grid2Witness, labelled with which
    identity failed.
    """
    ps = T.ps
    P = flip_matrix(ps)
    dT = T.common_den()
    Tp = inverse_series_action(T)
    dTp = Tp.common_den()
    bT = T.cleared_degree()
    bTp = Tp.cleared_degree()

    def lhs_rtt(u0, v0):
        T1 = T.full_at(u0, slot=1, nslots=2)
        T2 = T.full_at(v0, slot=2, nslots=2)
        R = _extend_R(r_matrix_at(P, u0 - v0), T.dim)
        return mat_mul(R, mat_mul(T1, T2))

    def rhs_rtt(u0, v0):
        T1 = T.full_at(u0, slot=1, nslots=2)
        T2 = T.full_at(v0, slot=2, nslots=2)
        R = _extend_R(r_matrix_at(P, u0 - v0), T.dim)
        return mat_mul(T2, mat_mul(T1, R))

    w = check_identity_2var(
        lhs_rtt,
        rhs_rtt,
        (bT + 2, bT + 2),
        bad_u=lambda u: dT(u) == 0,
        bad_v=lambda v: dT(v) == 0,
    )
    if w is not None:
        return Grid2Witness(w.point, w.lhs, w.rhs, label="exchange")

    def lhs_mixed1(u0, v0):
        A = Tp.full_at(u0, slot=1, nslots=2, negate=True)
        B = T.full_at(v0, slot=2, nslots=2)
        R = _extend_R(r_matrix_at(P, u0 + v0), T.dim)
        return mat_mul(A, mat_mul(R, B))

    def rhs_mixed1(u0, v0):
        A = Tp.full_at(u0, slot=1, nslots=2, negate=True)
        B = T.full_at(v0, slot=2, nslots=2)
        R = _extend_R(r_matrix_at(P, u0 + v0), T.dim)
        return mat_mul(B, mat_mul(R, A))

    w = check_identity_2var(
        lhs_mixed1,
        rhs_mixed1,
        (bTp + 2, bT + 2),
        bad_u=lambda u: dTp(-u) == 0,
        bad_v=lambda v: dT(v) == 0,
    )
    if w is not None:
        return Grid2Witness(w.point, w.lhs, w.rhs, label="mixed-left")

    def lhs_mixed2(u0, v0):
        A = T.full_at(u0, slot=1, nslots=2)
        B = Tp.full_at(v0, slot=2, nslots=2, negate=True)
        R = _extend_R(r_matrix_at(P, u0 + v0), T.dim)
        return mat_mul(A, mat_mul(R, B))

    def rhs_mixed2(u0, v0):
        A = T.full_at(u0, slot=1, nslots=2)
        B = Tp.full_at(v0, slot=2, nslots=2, negate=True)
        R = _extend_R(r_matrix_at(P, u0 + v0), T.dim)
        return mat_mul(B, mat_mul(R, A))

    w = check_identity_2var(
        lhs_mixed2,
        rhs_mixed2,
        (bT + 2, bTp + 2),
        bad_u=lambda u: dT(u) == 0,
        bad_v=lambda v: dTp(-v) == 0,
    )
    if w is not None:
        return Grid2Witness(w.point, w.lhs, w.rhs, label="mixed-right")
    return None


def _extend_R(R, carrier_dim):
    """1_carrier x R, with R an even matrix on V x V."""
    n = len(R)
    out = [[Fraction(0)] * (carrier_dim * n) for _ in range(carrier_dim * n)]
    for m in range(carrier_dim):
        base = m * n
        for r in range(n):
            Rr = R[r]
            orow = out[base + r]
            for c in range(n):
                if Rr[c]:
                    orow[base + c] = Rr[c]
    return out


def flip_at(ps: ParitySeq, slot_a: int, slot_b: int, nfactors: int):
    """The graded flip acting on factors (slot_a, slot_b) of V^nfactors."""
    k = ps.kappa
    vsp = ps.space()
    spaces = [vsp] * nfactors
    dim = k**nfactors
    total = [[Fraction(0)] * dim for _ in range(dim)]
    for a in range(1, k + 1):
        for b in range(1, k + 1):
            par = (ps.parity(a) + ps.parity(b)) % 2
            eab = [[Fraction(0)] * k for _ in range(k)]
            eab[a - 1][b - 1] = Fraction(ps.sign(b))
            eba = [[Fraction(0)] * k for _ in range(k)]
            eba[b - 1][a - 1] = Fraction(1)
            ops = [(None, 0)] * nfactors
            ops[slot_a - 1] = (eab, par)
            ops[slot_b - 1] = (eba, par)
            term = kron_ops(ops, spaces)
            for r in range(dim):
                tr = term[r]
                for c in range(dim):
                    if tr[c]:
                        total[r][c] += tr[c]
    return total


def verify_yang_baxter(ps: ParitySeq):
    """Certify the braid identity for R(u) = 1 - P/u on V x V x V."""
    P12 = flip_at(ps, 1, 2, 3)
    P13 = flip_at(ps, 1, 3, 3)
    P23 = flip_at(ps, 2, 3, 3)

    def r_at(Pm, x):
        n = len(Pm)
        out = [[-p / x for p in row] for row in Pm]
        for i in range(n):
            out[i][i] += 1
        return out

    lhs = lambda u, v: mat_mul(
        r_at(P12, u - v), mat_mul(r_at(P13, u), r_at(P23, v))
    )
    rhs = lambda u, v: mat_mul(
        r_at(P23, v), mat_mul(r_at(P13, u), r_at(P12, u - v))
    )
    return check_identity_2var(
        lhs, rhs, (4, 4), bad_u=lambda u: u == 0, bad_v=lambda v: v == 0
    )


# ---------------------------------------------------------------------------
# JSON serialization; mirrors the gl-module layout with rational-function
# entries as coefficient arrays.

def t_to_json(T: TAction) -> dict:
    out = {
        "ps": list(T.ps.s),
        "dim": T.dim,
        "parities": list(T.space.parities),
        "t": {},
    }
    for (i, j), m in sorted(T.t.items()):
        out["t"][f"{i},{j}"] = [
            [
                {
                    "num": [str(c) for c in e.num.coeffs],
                    "den": [str(c) for c in e.den.coeffs],
                }
                for e in row
            ]
            for row in m.entries
        ]
    return out


def t_from_json(data: dict) -> TAction:
    ps = ParitySeq(data["ps"])
    space = SuperSpace(data["parities"])
    t = {}
    for key, grid in data["t"].items():
        i, j = (int(x) for x in key.split(","))
        t[(i, j)] = RFMatrix(
            [
                [
                    RatFun(Poly([rat(c) for c in e["num"]]), Poly([rat(c) for c in e["den"]]))
                    for e in row
                ]
                for row in grid
            ],
            space,
            space,
        )
    return TAction(ps, space, t)


# ---------------------------------------------------------------------------
# Finiteness polynomials for the standard parity sequence.

def zhang_polynomials(lams, ps: ParitySeq):
    """Drinfeld-polynomial data certifying finite-dimensionality.

    Only the standard parity sequence carries the closed-form criterion; any
    other ordering raises ValueError.  Returns the list of monic polynomials
    on success, None when no certificate exists over the rationals.
    """
    if not ps.is_standard():
        raise ValueError("criterion only implemented for the standard parity sequence")
    kk = ps.kappa
    m = ps.m
    out = [None] * kk
    for i in range(1, kk):
        ratio = lams[i - 1] / lams[i]
        if i != m:
            P = solve_shift_quotient(ratio, ps.sign(i))
            if P is None:
                return None
            out[i - 1] = P
        else:
            if ratio.num.degree != ratio.den.degree:
                return None
            if ratio.num.leading() != ratio.den.leading():
                return None
            out[m - 1] = ratio.num.monic()
            out[kk - 1] = ratio.den.monic()
    if kk == m:  # purely even, no middle ratio
        return [p for p in out if p is not None]
    if out[kk - 1] is None:
        return None
    return out


def solve_shift_quotient(ratio: RatFun, s):
    """Monic P with P(u + s)/P(u) equal to the given reduced ratio, or None.

    Each root chain beta, beta+s, ..., delta of P leaves exactly the root
    beta - s in the reduced numerator and delta in the reduced denominator,
    so P is rebuilt by matching numerator roots to denominator roots along
    the s-lattice; the result is verified before being returned.
    """
    s = rat(s)
    if ratio == RatFun.one():
        return Poly.one()
    num, den = ratio.num, ratio.den
    if num.degree != den.degree or num.leading() != den.leading():
        return None
    roots_n, cof_n = rational_roots(num.monic())
    roots_d, cof_d = rational_roots(den.monic())
    if cof_n.degree > 0 or cof_d.degree > 0:
        return None
    navail = []
    for r, mult in roots_n:
        navail.extend([r] * mult)
    davail = []
    for r, mult in roots_d:
        davail.extend([r] * mult)
    chain_roots = []
    for nu in navail:
        best = None
        for idx, delta in enumerate(davail):
            if delta is None:
                continue
            t = (delta - nu) / s - 1
            if t.denominator == 1 and t >= 0:
                if best is None or t < best[1]:
                    best = (idx, t)
        if best is None:
            return None
        idx, t = best
        delta = davail[idx]
        davail[idx] = None
        step = 0
        while step <= t:
            chain_roots.append(nu + s * (step + 1))
            step += 1
    poly = Poly.one()
    for r in sorted(chain_roots):
        poly = poly * Poly([-r, 1])
    if rf_equal(RatFun(poly.shift(s), poly), ratio):
        return poly
    return None
