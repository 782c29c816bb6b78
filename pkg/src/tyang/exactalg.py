"""Exact rationals, dense univariate polynomials, and reduced rational functions.

The scalar field is the rationals throughout; every value is normalized at
construction (polynomials carry no trailing zeros, rational functions have a
monic denominator coprime to the numerator), so structural equality is
mathematical equality.
"""

from fractions import Fraction
from math import gcd

from tyang import _kernel

Rat = Fraction


class PoleError(ArithmeticError):
    """Evaluation of a rational function at a zero of its denominator."""


def rat(x) -> Rat:
    """Coerce ints, 'p/q' strings and Fractions to Rat."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class Poly:
    """Dense polynomial over Rat; coeffs[k] is the coefficient of u^k."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [rat(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @staticmethod
    def const(c) -> "Poly":
        return Poly([rat(c)])

    @staticmethod
    def x(shift=0) -> "Poly":
        """The polynomial u + shift."""
        return Poly([rat(shift), 1])

    @staticmethod
    def from_roots(roots) -> "Poly":
        p = Poly.one()
        for r in roots:
            p = p * Poly([-rat(r), 1])
        return p

    @staticmethod
    def one() -> "Poly":
        return Poly([1])

    @staticmethod
    def zero() -> "Poly":
        return Poly()

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (Fraction(1),)

    def leading(self) -> Rat:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        inv = 1 / self.coeffs[-1]
        return Poly([c * inv for c in self.coeffs])

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __neg__(self):
        return Poly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Poly):
            return Poly(_kernel.poly_mul(list(self.coeffs), list(other.coeffs)))
        return Poly([c * rat(other) for c in self.coeffs])

    __rmul__ = __mul__

    def __divmod__(self, other):
        q, r = _kernel.poly_divmod(list(self.coeffs), list(other.coeffs))
        return Poly(q), Poly(r)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, n):
        out = Poly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def gcd(self, other) -> "Poly":
        return Poly(_kernel.poly_gcd(list(self.coeffs), list(other.coeffs)))

    def __call__(self, x) -> Rat:
        return _kernel.poly_eval(list(self.coeffs), rat(x))

    def compose_linear(self, a, b) -> "Poly":
        """The polynomial p(a*u + b)."""
        a, b = rat(a), rat(b)
        lin = Poly([b, a])
        acc = Poly.zero()
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly.const(c)
        return acc

    def shift(self, c) -> "Poly":
        """p(u + c)."""
        return self.compose_linear(1, c)

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*u^{k}" if k else f"{c}")
        return "Poly(" + " + ".join(terms) + ")"


def divides(p: Poly, q: Poly) -> bool:
    """True when p divides q exactly."""
    if p.is_zero():
        return q.is_zero()
    return (q % p).is_zero()


class RatFun:
    """Reduced rational function num/den with den monic and coprime to num."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None, _reduced=False):
        if not isinstance(num, Poly):
            num = Poly.const(num) if not isinstance(num, (list, tuple)) else Poly(num)
        if den is None:
            den = Poly.one()
        elif not isinstance(den, Poly):
            den = Poly.const(den) if not isinstance(den, (list, tuple)) else Poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = Poly.zero()
            self.den = Poly.one()
            return
        if not _reduced:
            g = num.gcd(den)
            if g.degree > 0:
                num = num // g
                den = den // g
        lead = den.leading()
        if lead != 1:
            inv = 1 / lead
            num = num * inv
            den = den * inv
        self.num = num
        self.den = den

    @staticmethod
    def const(c) -> "RatFun":
        return RatFun(Poly.const(c))

    @staticmethod
    def x() -> "RatFun":
        return RatFun(Poly.x())

    @staticmethod
    def zero() -> "RatFun":
        return RatFun(Poly.zero())

    @staticmethod
    def one() -> "RatFun":
        return RatFun(Poly.one())

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.is_one()

    def constant_value(self) -> Rat:
        if not self.is_constant():
            raise ValueError(f"{self!r} is not constant")
        return self.num.coeffs[0] if self.num.coeffs else Fraction(0)

    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun.const(rat(other))
        if self.den == other.den:
            return RatFun(self.num + other.num, self.den)
        return RatFun(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFun(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        if not isinstance(other, RatFun):
            other = RatFun.const(rat(other))
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFun):
            return RatFun(self.num * rat(other), self.den)
        return RatFun(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, RatFun):
            return RatFun(self.num, self.den * rat(other))
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFun.const(rat(other)) / self

    def inverse(self) -> "RatFun":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RatFun(self.den, self.num)

    def __call__(self, x) -> Rat:
        return rf_eval(self, x)

    def subs_linear(self, a, b) -> "RatFun":
        """The function f(a*u + b)."""
        return RatFun(self.num.compose_linear(a, b), self.den.compose_linear(a, b))

    def subs_neg(self) -> "RatFun":
        """f(-u)."""
        return self.subs_linear(-1, 0)

    def shift(self, c) -> "RatFun":
        """f(u + c)."""
        return self.subs_linear(1, c)

    def series(self, order: int):
        """Coefficients of the expansion at infinity, up to u^-order.

        Only defined when deg num <= deg den; returns [c0, c1, ..., c_order]
        with f(u) = sum c_r u^-r + O(u^-order-1).
        """
        dn, dd = self.num.degree, self.den.degree
        if dn > dd:
            raise ValueError("no expansion at infinity: numerator degree too large")
        # Reverse coefficients turn the expansion into a power series division.
        a = [Fraction(0)] * (dd - dn) + list(reversed(self.num.coeffs))
        b = list(reversed(self.den.coeffs))
        out = []
        acc = a + [Fraction(0)] * (order + 1 - len(a))
        for r in range(order + 1):
            c = acc[r] / b[0]
            out.append(c)
            for j in range(len(b)):
                if r + j < len(acc):
                    acc[r + j] -= c * b[j]
        return out

    def __repr__(self):
        if self.den.is_one():
            return f"RatFun({self.num!r})"
        return f"RatFun({self.num!r} / {self.den!r})"


def rf_eval(f: RatFun, x) -> Rat:
    """Evaluate f at x; raises PoleError on a pole."""
    x = rat(x)
    d = f.den(x)
    if d == 0:
        raise PoleError(f"pole at {x}")
    return f.num(x) / d


def rf_equal(f: RatFun, g: RatFun) -> bool:
    """Equality as rational functions, by cross multiplication."""
    return f.num * g.den == g.num * f.den


def _divisors(n: int):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(p: Poly):
    """All rational roots with multiplicities, plus the root-free cofactor.

    Roots are found by scanning divisors of the trailing and leading integer
    coefficients and deflating; the returned cofactor has no rational roots
    and the product of the linear factors times the cofactor equals p up to
    the (preserved) leading coefficient.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    roots = []
    work = p
    # Strip roots at zero first.
    mult0 = 0
    while work.coeffs and work.coeffs[0] == 0:
        work = Poly(work.coeffs[1:])
        mult0 += 1
    if mult0:
        roots.append((Fraction(0), mult0))
    if work.degree >= 1:
        den = 1
        for c in work.coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        ints = [int(c * den) for c in work.coeffs]
        a0, ad = ints[0], ints[-1]
        candidates = set()
        for pnum in _divisors(a0):
            for qden in _divisors(ad):
                candidates.add(Fraction(pnum, qden))
                candidates.add(Fraction(-pnum, qden))
        for c in sorted(candidates):
            if work.degree < 1:
                break
            mult = 0
            while work.degree >= 1 and work(c) == 0:
                work = work // Poly([-c, 1])
                mult += 1
            if mult:
                roots.append((c, mult))
    roots.sort(key=lambda rm: rm[0])
    return roots, work
