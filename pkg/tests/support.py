"""Shared expected values for the two-dimensional evaluation modules.

The sixteen action rows below are the frozen oracle for L(a, b): they were
derived once by hand from t_ij(u) = delta_ij + s_i e_ij / u on the basis
(v+, v-) and from inverting the resulting 2x2 block matrix, and every test
compares library output against them.
"""

from fractions import Fraction

from tyang.exactalg import Poly, RatFun


def _rf(num_coeffs, den_coeffs=(1,)):
    return RatFun(Poly(num_coeffs), Poly(den_coeffs))


def lab_t_table(s1, a, b):
    """Expected t_ij(u) action rows on v+ = e0 and v- = e1.

    Returns {(i, j): [coeff on v+, coeff on v-]} where the value lists give
    t_ij(u) v+ and t_ij(u) v- as (RatFun multiple, target basis vector)
    pairs; None marks a zero row.
    """
    u = RatFun.x()
    return {
        (1, 1): [((u + s1 * a) / u, 0), ((u - s1 + s1 * a) / u, 1)],
        (1, 2): [None, (RatFun.const(s1 * (a + b)) / u, 0)],
        (2, 1): [(RatFun.const(-s1) / u, 1), None],
        (2, 2): [((u - s1 * b) / u, 0), ((u - s1 - s1 * b) / u, 1)],
    }


def lab_tprime_table(s1, a, b):
    """Expected t'_ij(u) rows in the same encoding as lab_t_table."""
    u = RatFun.x()
    dplus = (u - s1 + s1 * a) * (u - s1 * b)
    return {
        (1, 1): [
            (u * (u - s1 - s1 * b) / dplus, 0),
            (u / (u - s1 + s1 * a), 1),
        ],
        (1, 2): [None, (RatFun.const(-s1 * (a + b)) * u / dplus, 0)],
        (2, 1): [(RatFun.const(s1) * u / dplus, 1), None],
        (2, 2): [
            (u / (u - s1 * b), 0),
            (u * (u + s1 * a) / dplus, 1),
        ],
    }


def action_rows(grids, dim=2):
    """Rows of a {(i,j): RFMatrix} family on the standard basis vectors."""
    rows = {}
    for key, m in grids.items():
        cols = []
        for p in range(dim):
            vec = [Fraction(1 if q == p else 0) for q in range(dim)]
            cols.append(m.mat_vec(vec))
        rows[key] = cols
    return rows


def rows_match_table(grids, table, dim=2):
    """Check every action row of grids against an expected table."""
    for key, expected in table.items():
        m = grids[key]
        for src, entry in enumerate(expected):
            vec = [Fraction(1 if q == src else 0) for q in range(dim)]
            got = m.mat_vec(vec)
            if entry is None:
                if any(got):
                    return False, (key, src, got)
            else:
                coeff, target = entry
                want = [coeff if q == target else RatFun.zero() for q in range(dim)]
                if any(got[q] != want[q] for q in range(dim)):
                    return False, (key, src, got)
    return True, None
