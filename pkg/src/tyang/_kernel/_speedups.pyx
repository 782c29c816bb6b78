# cython: language_level=3
"""Compiled arithmetic kernels.

Same six functions as the pure backend, same canonical outputs: fractions
stay reduced with positive denominators, gcds are monic, and the echelon
form is the unique reduced one.  Internally everything runs on plain
integer pairs with one normalization per result entry, which is where the
speedup over Fraction-arithmetic inner loops comes from.
"""

from fractions import Fraction
from math import gcd

BACKEND = "c"

cdef object _ZERO = Fraction(0)


cdef inline object _norm(object n, object d):
    if n == 0:
        return _ZERO
    return Fraction(n, d)


def poly_mul(a, b):
    """Product of two coefficient lists."""
    cdef Py_ssize_t la = len(a), lb = len(b), i, j
    if la == 0 or lb == 0:
        return []
    an = [f.numerator for f in a]
    ad = [f.denominator for f in a]
    bn = [f.numerator for f in b]
    bd = [f.denominator for f in b]
    outn = [0] * (la + lb - 1)
    outd = [1] * (la + lb - 1)
    for i in range(la):
        ani = an[i]
        if ani == 0:
            continue
        adi = ad[i]
        for j in range(lb):
            bnj = bn[j]
            if bnj == 0:
                continue
            tn = ani * bnj
            td = adi * bd[j]
            cn = outn[i + j]
            cd = outd[i + j]
            outn[i + j] = cn * td + tn * cd
            outd[i + j] = cd * td
    out = [_norm(outn[i], outd[i]) for i in range(la + lb - 1)]
    while out and not out[-1]:
        out.pop()
    return out


def poly_divmod(a, b):
    """Quotient and remainder of coefficient lists; b must be nonzero."""
    cdef Py_ssize_t la = len(a), lb = len(b), k, j
    if lb == 0:
        raise ZeroDivisionError("polynomial division by zero")
    if la < lb:
        return [], list(a)
    remn = [f.numerator for f in a]
    remd = [f.denominator for f in a]
    bn = [f.numerator for f in b]
    bd = [f.denominator for f in b]
    cdef Py_ssize_t db = lb - 1
    lbn = bn[db]
    lbd = bd[db]
    quon = [0] * (la - db)
    quod = [1] * (la - db)
    for k in range(la - 1, db - 1, -1):
        cn = remn[k]
        if cn == 0:
            continue
        cd = remd[k]
        qn = cn * lbd
        qd = cd * lbn
        quon[k - db] = qn
        quod[k - db] = qd
        for j in range(db + 1):
            if bn[j] == 0:
                continue
            tn = qn * bn[j]
            td = qd * bd[j]
            rn = remn[k - db + j]
            rd = remd[k - db + j]
            remn[k - db + j] = rn * td - tn * rd
            remd[k - db + j] = rd * td
    rem = [_norm(remn[j], remd[j]) for j in range(la)]
    while rem and not rem[-1]:
        rem.pop()
    if len(rem) > db:
        rem = rem[:db]
        while rem and not rem[-1]:
            rem.pop()
    quo = [_norm(quon[j], quod[j]) for j in range(la - db)]
    while quo and not quo[-1]:
        quo.pop()
    return quo, rem


cdef list _to_primitive_int(a):
    den = 1
    for c in a:
        cd = c.denominator
        den = den * cd // gcd(den, cd)
    ints = [(c.numerator * den) // c.denominator for c in a]
    g = 0
    for c in ints:
        g = gcd(g, c if c >= 0 else -c)
    if g > 1:
        ints = [c // g for c in ints]
    return ints


cdef list _int_prem(list a, list b):
    cdef Py_ssize_t db = len(b) - 1, j
    rem = list(a)
    lb = b[db]
    while rem and len(rem) - 1 >= db:
        c = rem[len(rem) - 1]
        rem = [lb * x for x in rem]
        for j in range(db + 1):
            rem[len(rem) - 1 - db + j] -= c * b[j]
        rem.pop()
        while rem and rem[len(rem) - 1] == 0:
            rem.pop()
    g = 0
    for c in rem:
        g = gcd(g, c if c >= 0 else -c)
    if g > 1:
        rem = [c // g for c in rem]
    return rem


def poly_gcd(a, b):
    """Monic gcd via a primitive remainder sequence over the integers."""
    if not a and not b:
        return []
    x = _to_primitive_int(a) if a else []
    y = _to_primitive_int(b) if b else []
    if len(x) < len(y):
        x, y = y, x
    while y:
        x, y = y, _int_prem(x, y)
    lead = x[len(x) - 1]
    return [_norm(c, lead) for c in x]


def poly_eval(a, x):
    """Horner evaluation at a Fraction point."""
    xn = x.numerator
    xd = x.denominator
    accn, accd = 0, 1
    for c in reversed(a):
        # acc = acc * x + c
        tn = accn * xn
        td = accd * xd
        cn = c.numerator
        cd = c.denominator
        accn = tn * cd + cn * td
        accd = td * cd
        g = gcd(accn if accn >= 0 else -accn, accd)
        if g > 1:
            accn //= g
            accd //= g
    return _norm(accn, accd)


def mat_mul(A, B):
    """Matrix product with zero skipping."""
    cdef Py_ssize_t n = len(A), m = len(B), p, i, k, j
    p = len(B[0]) if m else 0
    Bn = [[f.numerator for f in row] for row in B]
    Bd = [[f.denominator for f in row] for row in B]
    out = []
    for i in range(n):
        Ai = A[i]
        rown = [0] * p
        rowd = [1] * p
        for k in range(m):
            a = Ai[k]
            an = a.numerator
            if an == 0:
                continue
            ad = a.denominator
            Bnk = Bn[k]
            Bdk = Bd[k]
            for j in range(p):
                bn = Bnk[j]
                if bn == 0:
                    continue
                tn = an * bn
                td = ad * Bdk[j]
                cn = rown[j]
                cd = rowd[j]
                rown[j] = cn * td + tn * cd
                rowd[j] = cd * td
        out.append([_norm(rown[j], rowd[j]) for j in range(p)])
    return out


def mat_rref(A):
    """Reduced row echelon form; returns (rows, pivot column indices)."""
    cdef Py_ssize_t nrows = len(A), ncols, r, c, i, j, pr
    if nrows == 0:
        return [], []
    ncols = len(A[0])
    Rn = [[f.numerator for f in row] for row in A]
    Rd = [[f.denominator for f in row] for row in A]
    pivots = []
    r = 0
    for c in range(ncols):
        pr = -1
        for i in range(r, nrows):
            if Rn[i][c] != 0:
                pr = i
                break
        if pr < 0:
            continue
        Rn[r], Rn[pr] = Rn[pr], Rn[r]
        Rd[r], Rd[pr] = Rd[pr], Rd[r]
        # normalize pivot row
        pn = Rn[r][c]
        pd = Rd[r][c]
        rown = Rn[r]
        rowd = Rd[r]
        for j in range(c, ncols):
            if rown[j] != 0:
                tn = rown[j] * pd
                td = rowd[j] * pn
                if td < 0:
                    tn = -tn
                    td = -td
                g = gcd(tn if tn >= 0 else -tn, td)
                if g > 1:
                    tn //= g
                    td //= g
                rown[j] = tn
                rowd[j] = td
        for i in range(nrows):
            if i == r:
                continue
            fn = Rn[i][c]
            if fn == 0:
                continue
            fd = Rd[i][c]
            rin = Rn[i]
            rid = Rd[i]
            for j in range(c, ncols):
                if rown[j] == 0:
                    continue
                tn = fn * rown[j]
                td = fd * rowd[j]
                cn = rin[j]
                cd = rid[j]
                nn = cn * td - tn * cd
                nd = cd * td
                if nn == 0:
                    rin[j] = 0
                    rid[j] = 1
                else:
                    g = gcd(nn if nn >= 0 else -nn, nd if nd >= 0 else -nd)
                    if nd < 0:
                        nn = -nn
                        nd = -nd
                    if g > 1:
                        nn //= g
                        nd //= g
                    rin[j] = nn
                    rid[j] = nd
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    out = []
    for i in range(nrows):
        if i < r:
            out.append([_norm(Rn[i][j], Rd[i][j]) for j in range(ncols)])
        else:
            out.append([_ZERO] * ncols)
    return out, pivots
