"""Univariate polynomials and rational functions in u over Q."""

from functools import reduce

from .rat import ONE, ZERO, rat, rat_str


class PolyU:
    """Coefficients stored lowest power first; trailing zeros stripped."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [rat(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def const(cls, a):
        return cls((a,))

    @classmethod
    def x(cls):
        return cls((0, 1))

    @classmethod
    def linear(cls, root_shift):
        """u + c."""
        return cls((root_shift, 1))

    @classmethod
    def from_roots(cls, mult):
        """prod (u + c)^m for c -> m in mult."""
        p = cls.const(1)
        for c in sorted(mult):
            for _ in range(mult[c]):
                p = p * cls.linear(c)
        return p

    @property
    def deg(self):
        return len(self.c) - 1

    def is_zero(self):
        return not self.c

    def lead(self):
        return self.c[-1] if self.c else ZERO

    def __call__(self, x):
        x = rat(x)
        acc = ZERO
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def __eq__(self, other):
        if not isinstance(other, PolyU):
            other = PolyU.const(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __add__(self, other):
        if not isinstance(other, PolyU):
            other = PolyU.const(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (ZERO,) * (n - len(self.c))
        b = other.c + (ZERO,) * (n - len(other.c))
        return PolyU(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return PolyU(-a for a in self.c)

    def __sub__(self, other):
        return self + (-other if isinstance(other, PolyU) else PolyU.const(-rat(other)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, PolyU):
            k = rat(other)
            return PolyU(a * k for a in self.c)
        if not self.c or not other.c:
            return PolyU()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(other.c):
                    out[i + j] += a * b
        return PolyU(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        return reduce(lambda p, _: p * self, range(e), PolyU.const(1))

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        q = [ZERO] * max(len(r) - len(other.c) + 1, 0)
        lc = other.lead()
        for k in range(len(q) - 1, -1, -1):
            f = r[k + other.deg] / lc
            q[k] = f
            if f:
                for j, b in enumerate(other.c):
                    r[k + j] -= f * b
        return PolyU(q), PolyU(r)

    def monic(self):
        if self.is_zero():
            return self
        return self * (ONE / self.lead())

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def shift(self, a):
        """p(u + a), via Horner in the shifted variable."""
        a = rat(a)
        out = PolyU()
        lin = PolyU((a, 1))
        for coef in reversed(self.c):
            out = out * lin + coef
        return out

    def neg_var(self):
        """p(-u)."""
        return PolyU(a if k % 2 == 0 else -a for k, a in enumerate(self.c))

    def to_json(self):
        return [rat_str(a) for a in self.c]

    def __repr__(self):
        if not self.c:
            return "0"
        terms = []
        for k, a in enumerate(self.c):
            if a:
                terms.append(rat_str(a) + ("" if k == 0 else "*u" if k == 1 else f"*u^{k}"))
        return " + ".join(terms)


class RatFuncU:
    """num/den with gcd 1 and monic den."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if not isinstance(num, PolyU):
            num = PolyU.const(num)
        if den is None:
            den = PolyU.const(1)
        elif not isinstance(den, PolyU):
            den = PolyU.const(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num, self.den = PolyU(), PolyU.const(1)
            return
        g = num.gcd(den)
        if g.deg > 0:
            num = num.divmod(g)[0]
            den = den.divmod(g)[0]
        lc = den.lead()
        self.num = num * (ONE / lc)
        self.den = den * (ONE / lc)

    @classmethod
    def from_factors(cls, factors):
        """prod (1 + c u^-1)^e given (c, e) pairs."""
        num, den = PolyU.const(1), PolyU.const(1)
        for c, e in factors:
            lin = PolyU((rat(c), 1))
            if e > 0:
                num, den = num * lin ** e, den * PolyU.x() ** e
            else:
                num, den = num * PolyU.x() ** (-e), den * lin ** (-e)
        return cls(num, den)

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at {rat_str(x)}")
        return self.num(x) / d

    def __eq__(self, other):
        if not isinstance(other, RatFuncU):
            other = RatFuncU(other)
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def _lift(self, other):
        return other if isinstance(other, RatFuncU) else RatFuncU(other)

    def __add__(self, other):
        o = self._lift(other)
        return RatFuncU(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFuncU(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        return RatFuncU(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFuncU(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e):
        if e < 0:
            return RatFuncU(1) / (self ** -e)
        return reduce(lambda p, _: p * self, range(e), RatFuncU(1))

    def shift(self, a):
        return RatFuncU(self.num.shift(a), self.den.shift(a))

    def neg_var(self):
        return RatFuncU(self.num.neg_var(), self.den.neg_var())

    def is_even(self):
        return self == self.neg_var()

    def value_at_infinity(self):
        if self.num.deg > self.den.deg:
            raise ValueError("pole at infinity")
        if self.num.deg < self.den.deg:
            return ZERO
        return self.num.lead()

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, d):
        return cls(PolyU(rat(a) for a in d["num"]), PolyU(rat(a) for a in d["den"]))

    def __repr__(self):
        if self.den.deg == 0:
            return f"({self.num!r})"
        return f"({self.num!r})/({self.den!r})"


def linear_factors(p):
    """Rational roots of p as {c: m} meaning (u + c)^m, or None if p does not split over Q."""
    import sympy

    if p.deg <= 0:
        return {}
    u = sympy.Symbol("u")
    expr = sum(sympy.Rational(int(a.numerator), int(a.denominator)) * u ** k for k, a in enumerate(p.c))
    _, facs = sympy.factor_list(expr, u)
    out = {}
    for f, m in facs:
        fp = sympy.Poly(f, u)
        if fp.degree() != 1:
            return None
        a, b = fp.all_coeffs()
        c = rat(str(sympy.Rational(b) / sympy.Rational(a)))
        out[c] = out.get(c, 0) + int(m)
    return out
