"""Matrix-valued rational functions of u.

Stored as N(u)/d(u): N is a matrix polynomial (SparseMat coefficients, lowest
power first) and d is monic and split over Q, kept as a root multiset
{r: m} meaning prod (u - r)^m. All constructions in this package only ever
divide by linear factors, so the split form is closed under every operation
used. Common factors are cancelled eagerly, which makes the representation
canonical: equal functions have equal (den, num).
"""

from .poly import PolyU, RatFuncU
from .rat import ONE, ZERO, rat, rat_str
from .sparse import SparseMat


def _poly_from_roots(den):
    p = PolyU.const(1)
    for r in sorted(den):
        p = p * PolyU((-r, 1)) ** den[r]
    return p


class RatFuncMat:
    __slots__ = ("rows", "cols", "den", "num")

    def __init__(self, rows, cols, num, den=None, _normalize=True):
        self.rows, self.cols = rows, cols
        self.num = tuple(num)
        self.den = {rat(r): m for r, m in (den or {}).items() if m}
        if _normalize:
            self._normalize()

    # constructors
    @classmethod
    def constant(cls, m):
        return cls(m.rows, m.cols, [m])

    @classmethod
    def identity(cls, n):
        return cls.constant(SparseMat.identity(n))

    @classmethod
    def zero(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols, [])

    @classmethod
    def scalar(cls, f, n):
        """f(u) * I_n for a RatFuncU f whose denominator splits over Q."""
        from .poly import linear_factors

        roots = linear_factors(f.den) if f.den.deg > 0 else {}
        if roots is None:
            raise ValueError("denominator does not split over Q")
        den = {-c: m for c, m in roots.items()}
        eye = SparseMat.identity(n)
        return cls(n, n, [eye.scale(a) for a in f.num.c], den)

    @classmethod
    def from_poly_coeffs(cls, coeffs, rows, cols, den=None):
        return cls(rows, cols, coeffs, den)

    # normal form
    def _normalize(self):
        num = list(self.num)
        while num and num[-1].is_zero():
            num.pop()
        if not num:
            self.num, self.den = (), {}
            return
        for r in sorted(self.den):
            while self.den.get(r, 0) and _mat_poly_eval(num, r).is_zero():
                num = _divide_linear(num, r)
                self.den[r] -= 1
        self.den = {r: m for r, m in self.den.items() if m}
        while num and num[-1].is_zero():
            num.pop()
        self.num = tuple(num)

    @property
    def den_poly(self):
        return _poly_from_roots(self.den)

    @property
    def den_deg(self):
        return sum(self.den.values())

    @property
    def num_deg(self):
        return len(self.num) - 1

    @property
    def degree_bound(self):
        return max(self.num_deg, self.den_deg, 0)

    def poles(self):
        return set(self.den)

    def is_zero(self):
        return not self.num

    def __eq__(self, other):
        return (
            isinstance(other, RatFuncMat)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.den == other.den
            and self.num == other.num
        )

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self.den.items())), self.num))

    # evaluation and entries
    def __call__(self, x):
        x = rat(x)
        d = ONE
        for r, m in self.den.items():
            if x == r:
                raise ZeroDivisionError(f"pole at u={rat_str(x)}")
            d *= (x - r) ** m
        return _mat_poly_eval(self.num, x).scale(ONE / d) if self.num else SparseMat(self.rows, self.cols)

    def entry(self, i, j):
        coeffs = PolyU(m.get(i, j) for m in self.num)
        return RatFuncU(coeffs, self.den_poly)

    def value_at_infinity(self):
        if self.num_deg > self.den_deg:
            raise ValueError("entries grow at infinity")
        if self.num_deg < self.den_deg:
            return SparseMat(self.rows, self.cols)
        return self.num[-1]

    def series_coeffs(self, bound):
        """Coefficients c_0..c_bound of the expansion sum c_r u^-r at infinity."""
        D = self.den_deg
        if self.num_deg > D:
            raise ValueError("entries grow at infinity")
        dpoly = self.den_poly.c  # ascending, monic, length D+1
        # u^-D d(u) = sum_j d_j u^-j with d_j = dpoly[D-j]
        dj = [dpoly[D - j] for j in range(D + 1)]
        zero = SparseMat(self.rows, self.cols)
        nj = [self.num[D - j] if 0 <= D - j < len(self.num) else zero for j in range(bound + 1)]
        out = []
        for r in range(bound + 1):
            acc = nj[r]
            for j in range(1, min(r, D) + 1):
                if dj[j]:
                    acc = acc - out[r - j].scale(dj[j])
            out.append(acc)
        return out

    # algebra
    def _with_den(self, den):
        """Rewrite numerator over a multiple `den` of self.den."""
        extra = {r: m - self.den.get(r, 0) for r, m in den.items() if m - self.den.get(r, 0)}
        return _mat_poly_mul_scalar(list(self.num), _poly_from_roots(extra))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        den = dict(self.den)
        for r, m in other.den.items():
            den[r] = max(den.get(r, 0), m)
        a, b = self._with_den(den), other._with_den(den)
        n = max(len(a), len(b))
        zero = SparseMat(self.rows, self.cols)
        a += [zero] * (n - len(a))
        b += [zero] * (n - len(b))
        return RatFuncMat(self.rows, self.cols, [x + y for x, y in zip(a, b)], den)

    def __neg__(self):
        return RatFuncMat(self.rows, self.cols, [-m for m in self.num], self.den, _normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        return RatFuncMat(self.rows, other.cols, _mat_poly_mul(self.num, other.num, self.rows, other.cols, lambda x, y: x @ y), _den_mul(self.den, other.den))

    def kron(self, other):
        return RatFuncMat(
            self.rows * other.rows,
            self.cols * other.cols,
            _mat_poly_mul(self.num, other.num, self.rows * other.rows, self.cols * other.cols, lambda x, y: x.kron(y)),
            _den_mul(self.den, other.den),
        )

    def scale(self, k):
        return RatFuncMat(self.rows, self.cols, [m.scale(k) for m in self.num], self.den)

    def mul_ratfunc(self, f):
        """Multiply by a scalar rational function f with split denominator."""
        from .poly import linear_factors

        roots = linear_factors(f.den) if f.den.deg > 0 else {}
        if roots is None:
            raise ValueError("denominator does not split over Q")
        den = _den_mul(self.den, {-c: m for c, m in roots.items()})
        return RatFuncMat(self.rows, self.cols, _mat_poly_mul_scalar(list(self.num), f.num), den)

    def mul_poly(self, p):
        return RatFuncMat(self.rows, self.cols, _mat_poly_mul_scalar(list(self.num), p), self.den)

    def shift(self, a):
        """Entries precomposed with u -> u + a."""
        a = rat(a)
        acc = []  # Horner in the matrix-polynomial ring
        for m in reversed(self.num):
            acc = _mat_poly_mul_scalar(acc, PolyU((a, 1)))
            if acc:
                acc[0] = acc[0] + m
            else:
                acc = [m]
        den = {r - a: m for r, m in self.den.items()}
        return RatFuncMat(self.rows, self.cols, acc, den)

    def neg_var(self):
        """Entries precomposed with u -> -u."""
        sign = -1 if self.den_deg % 2 else 1
        num = [m.scale(sign if k % 2 == 0 else -sign) for k, m in enumerate(self.num)]
        den = {-r: m for r, m in self.den.items()}
        return RatFuncMat(self.rows, self.cols, num, den)

    def map_coeffs(self, f, rows, cols):
        """Apply a linear map to every numerator coefficient (e.g. restriction)."""
        return RatFuncMat(rows, cols, [f(m) for m in self.num], self.den)

    def to_json(self):
        return {
            "rows": self.rows,
            "cols": self.cols,
            "den_roots": [[rat_str(r), self.den[r]] for r in sorted(self.den)],
            "num": [[[r, c, rat_str(v)] for r, c, v in m.entries()] for m in self.num],
        }

    @classmethod
    def from_json(cls, d):
        rows, cols = d["rows"], d["cols"]
        num = [SparseMat.from_entries(rows, cols, {(r, c): rat(v) for r, c, v in m}) for m in d["num"]]
        den = {rat(r): int(m) for r, m in d["den_roots"]}
        return cls(rows, cols, num, den)

    def __repr__(self):
        return f"RatFuncMat({self.rows}x{self.cols}, deg<= {self.degree_bound}, poles={sorted(map(rat_str, self.den))})"


def _den_mul(a, b):
    out = dict(a)
    for r, m in b.items():
        out[r] = out.get(r, 0) + m
    return out


def _mat_poly_eval(num, x):
    acc = None
    for m in reversed(num):
        acc = m if acc is None else acc.scale(x) + m
    return acc


def _divide_linear(num, r):
    """Synthetic division of a matrix polynomial by (u - r); remainder assumed zero."""
    n = len(num)
    q = [None] * (n - 1)
    carry = None
    for k in range(n - 1, 0, -1):
        carry = num[k] if carry is None else num[k] + carry.scale(r)
        q[k - 1] = carry
    return q


def _mat_poly_mul_scalar(num, p):
    if not num or p.is_zero():
        return []
    rows, cols = num[0].rows, num[0].cols
    out = [SparseMat(rows, cols) for _ in range(len(num) + len(p.c) - 1)]
    for i, m in enumerate(num):
        if m.is_zero():
            continue
        for j, a in enumerate(p.c):
            if a:
                out[i + j] = out[i + j] + m.scale(a)
    return out


def _mat_poly_mul(a, b, rows, cols, op):
    if not a or not b:
        return []
    out = [SparseMat(rows, cols) for _ in range(len(a) + len(b) - 1)]
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            if y.is_zero():
                continue
            out[i + j] = out[i + j] + op(x, y)
    return out
