"""Strings, Drinfeld-polynomial solvers and finite-dimensionality predicates.

Series are handled in factored form prod (1 + c u^-1)^e. A ratio of such
series is a ratio of products of linear factors (u + r); we encode it as a
signed multiplicity function f on roots r. P(u+1)/P(u) for P = prod (u + r)^m(r)
has f(x) = m(x-1) - m(x), so m(x) = sum_{j>=1} f(x + j) inside each Z-coset.
"""

from dataclasses import dataclass, field
from math import floor

from .exactlin import HALF, ONE, ZERO, PolyU, RatFuncU, is_nonneg_int, rat, rat_str

# ------------------------------------------------------------------ series


class FactoredSeries:
    """prod (1 + c u^-1)^e, stored as {c: net exponent}; c = 0 factors dropped."""

    __slots__ = ("f",)

    def __init__(self, factors=()):
        f = {}
        items = factors.items() if isinstance(factors, dict) else factors
        for c, e in items:
            c = rat(c)
            if c == 0:
                continue
            f[c] = f.get(c, 0) + int(e)
        self.f = {c: e for c, e in f.items() if e}

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def linear(cls, c, e=1):
        return cls([(c, e)])

    @classmethod
    def from_gammas(cls, gammas, half_den=False):
        """prod (1 - γ u^-1), optionally times (1 + u^-1/2)^-1."""
        fs = [(-rat(g), 1) for g in gammas]
        if half_den:
            fs.append((HALF, -1))
        return cls(fs)

    def __mul__(self, other):
        return FactoredSeries(list(self.f.items()) + list(other.f.items()))

    def __truediv__(self, other):
        return self * other.inv()

    def inv(self):
        return FactoredSeries({c: -e for c, e in self.f.items()})

    def neg_var(self):
        """μ(-u): (1 - c u^-1) factors."""
        return FactoredSeries({-c: e for c, e in self.f.items()})

    def __eq__(self, other):
        return isinstance(other, FactoredSeries) and self.f == other.f

    def __hash__(self):
        return hash(tuple(sorted(self.f.items())))

    def ratfunc(self):
        return RatFuncU.from_factors(sorted(self.f.items()))

    def __call__(self, x):
        return self.ratfunc()(x)

    def is_even(self):
        return self.ratfunc().is_even()

    def root_function(self):
        """Signed multiplicities of (u + r) in prod ((u + c)/u)^e."""
        out = {}
        for c, e in self.f.items():
            out[c] = out.get(c, 0) + e
            out[ZERO] = out.get(ZERO, 0) - e
        return {r: m for r, m in out.items() if m}

    def to_json(self):
        return {"factors": [[rat_str(c), e] for c, e in sorted(self.f.items())]}

    @classmethod
    def from_json(cls, d):
        if isinstance(d, dict):
            d = d.get("factors", [])
        return cls([(rat(c), int(e)) for c, e in d])

    def __repr__(self):
        if not self.f:
            return "1"
        return "*".join(f"(1+{rat_str(c)}u^-1)" + ("" if e == 1 else f"^{e}") for c, e in sorted(self.f.items()))


def similar(mu, nu):
    """mu ~ nu iff they differ by an even series: mu(u)nu(-u) = mu(-u)nu(u)."""
    a, b = mu.ratfunc(), nu.ratfunc()
    return a * b.neg_var() == a.neg_var() * b


def ratio_function(l1, l2):
    f = dict(l1.root_function())
    for r, m in l2.root_function().items():
        f[r] = f.get(r, 0) - m
    return {r: m for r, m in f.items() if m}


# ------------------------------------------------------------------ root multisets


class RootMultiset:
    """Monic P(u) = prod (u + c)^m(c)."""

    __slots__ = ("m",)

    def __init__(self, mult=None):
        self.m = {rat(c): int(k) for c, k in (mult or {}).items() if k}
        if any(k < 0 for k in self.m.values()):
            raise ValueError("negative root multiplicity")

    def poly(self):
        return PolyU.from_roots(self.m)

    @property
    def degree(self):
        return sum(self.m.values())

    def __call__(self, x):
        return self.poly()(x)

    def __eq__(self, other):
        return isinstance(other, RootMultiset) and self.m == other.m

    def __hash__(self):
        return hash(tuple(sorted(self.m.items())))

    def to_json(self):
        return {"roots": {rat_str(c): k for c, k in sorted(self.m.items())}}

    @classmethod
    def from_json(cls, d):
        return cls({rat(c): k for c, k in d["roots"].items()})

    def __repr__(self):
        if not self.m:
            return "1"
        return "*".join(f"(u+{rat_str(c)})" + ("" if k == 1 else f"^{k}") for c, k in sorted(self.m.items()))


def _coset(r):
    return r - floor(r)


def telescope(f):
    """m with f(x) = m(x-1) - m(x), or None if some coset sum is nonzero or m < 0."""
    by_coset = {}
    for r, k in f.items():
        by_coset.setdefault(_coset(r), []).append(r)
    m = {}
    for cs, pts in by_coset.items():
        if sum(f[r] for r in pts) != 0:
            return None
        lo, hi = min(pts), max(pts)
        x, acc = hi - 1, 0
        while x >= lo:
            acc += f.get(x + 1, 0)
            if acc < 0:
                return None
            if acc:
                m[x] = acc
            x -= 1
    return RootMultiset(m)


def shift_ratio(P):
    """P(u+1)/P(u) as a RatFuncU."""
    p = P.poly()
    return RatFuncU(p.shift(1), p)


def arrow(l1, l2):
    """Monic P with l1/l2 = P(u+1)/P(u), or None."""
    P = telescope(ratio_function(l1, l2))
    if P is None:
        return None
    if shift_ratio(P) != l1.ratfunc() / l2.ratfunc():
        raise AssertionError("arrow witness failed its identity check")
    return P


def is_symmetric(P):
    """P(u) = P(-u+1), i.e. m(c) = m(-1-c) and even degree."""
    p = P.poly()
    return p == p.neg_var().shift(-1)


def sym_arrow(mu):
    """P with P(u) = P(-u+1) and mu(-u)/mu(u) = P(u+1)/P(u), or None."""
    P = arrow(mu.neg_var(), mu)
    if P is None or not is_symmetric(P):
        return None
    return P


def _gamma_factor(gamma):
    """(u + γ)(2u + 1) / ((u - γ)(2u - 1)) as a root function."""
    f = {}
    for r, k in ((gamma, 1), (-gamma, -1), (HALF, 1), (-HALF, -1)):
        f[r] = f.get(r, 0) + k
    return {r: k for r, k in f.items() if k}


def gamma_candidates(mu):
    base = ratio_function(mu.neg_var(), mu)
    for r, k in _gamma_factor(ZERO).items():
        base[r] = base.get(r, 0) - k
    supp = {r for r, k in base.items() if k}
    return sorted(supp | {-r for r in supp} | {ZERO, HALF, -HALF})


def gamma_solver_all(mu):
    """Every valid (P, γ) pair; the theory says there is at most one."""
    target = mu.neg_var().ratfunc() / mu.ratfunc()
    base = ratio_function(mu.neg_var(), mu)
    out = []
    for g in gamma_candidates(mu):
        f = dict(base)
        for r, k in _gamma_factor(g).items():
            f[r] = f.get(r, 0) - k
        P = telescope({r: k for r, k in f.items() if k})
        if P is None or P.m.get(g, 0) or not is_symmetric(P):
            continue
        gf = RatFuncU(PolyU((g, 1)) * PolyU((1, 2)), PolyU((-g, 1)) * PolyU((-1, 2)))
        if shift_ratio(P) * gf != target:
            raise AssertionError("gamma_solver witness failed its identity check")
        out.append((P, g))
    return out


def gamma_solver(mu):
    sols = gamma_solver_all(mu)
    if len(sols) > 1:
        raise AssertionError(f"gamma_solver found {len(sols)} solutions; uniqueness violated")
    return sols[0] if sols else None


def sharp_ratio(gamma):
    """μ^♯/μ = (u + γ + 1)/(u - γ) = (1 + (γ+1)u^-1)/(1 - γ u^-1)."""
    return FactoredSeries([(gamma + 1, 1), (-gamma, -1)])


def sharp_weight(gammas):
    """μ^♯: the last factor (1 - γ u^-1) becomes (1 + (γ+1) u^-1)."""
    gs = [rat(g) for g in gammas]
    if len(gs) % 2 != 1:
        raise ValueError("sharp_weight needs an odd number 2k+1 of gammas")
    k = len(gs) // 2
    for i in range(k):
        if not is_nonneg_int(gs[2 * i] + gs[2 * i + 1]):
            raise ValueError("γ_{2i-1} + γ_{2i} must be a nonnegative integer")
    if not satisfies_pair_condition(gs, k):
        raise ValueError("ordering condition on the gammas is violated")
    mu = FactoredSeries.from_gammas(gs, half_den=True)
    return mu * sharp_ratio(gs[-1])


# ------------------------------------------------------------------ strings


@dataclass(frozen=True)
class StringAB:
    alpha: object
    beta: object

    def __post_init__(self):
        a, b = rat(self.alpha), rat(self.beta)
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)
        if not is_nonneg_int(a - b):
            raise ValueError(f"S({rat_str(a)},{rat_str(b)}): alpha - beta must be in Z+")

    def elements(self):
        return frozenset(self.beta + j for j in range(int(self.alpha - self.beta)))

    def __contains__(self, x):
        return rat(x) in self.elements()


def _is_string(s):
    if not s:
        return True
    lo = min(s)
    return s == frozenset(lo + j for j in range(len(s))) and all(_coset(x) == _coset(lo) for x in s)


def general_position(s1, s2):
    a, b = s1.elements(), s2.elements()
    if a <= b or b <= a:
        return True
    return not _is_string(a | b)


def crit_strings(variant, data):
    """String criteria for Y(2) tensors ("2.11"), Y-(2) restrictions ("4.7") and Y+(2) mixed tensors ("5.6").

    2.11: data = list of (alpha, beta).
    4.7:  data = list of gammas (2k of them).
    5.6:  data = (gammas, gamma) for L(γ1,-γ2) ... (x) V(-γ).
    """
    if variant == "2.11":
        strs = [StringAB(a, b) for a, b in data]
        return all(general_position(strs[i], strs[j]) for i in range(len(strs)) for j in range(i + 1, len(strs)))
    if variant == "4.7":
        gs = [rat(g) for g in data]
        if len(gs) % 2:
            raise ValueError("4.7 needs an even number of gammas")
        return _crit_47(gs)
    if variant == "5.6":
        gs, gamma = data
        gs, gamma = [rat(g) for g in gs], rat(gamma)
        if len(gs) % 2:
            raise ValueError("5.6 needs an even number of gammas")
        if not _crit_47(gs):
            return False
        for i in range(len(gs) // 2):
            g1, g2 = gs[2 * i], gs[2 * i + 1]
            if gamma in StringAB(g1, -g2) or gamma in StringAB(g2, -g1):
                return False
        return True
    raise ValueError(f"unknown criterion {variant!r}")


def _crit_47(gs):
    k = len(gs) // 2
    for i in range(k):
        for j in range(i + 1, k):
            if not general_position(StringAB(gs[2 * i + 1], -gs[2 * i]), StringAB(gs[2 * j], -gs[2 * j + 1])):
                return False
    return True


# ------------------------------------------------------------------ reordering


def satisfies_pair_condition(gs, k):
    """For each i, γ_{2i-1}+γ_{2i} is the least Z+ sum among later indices."""
    for i in range(k):
        sums = [gs[p] + gs[q] for p in range(2 * i, len(gs)) for q in range(p + 1, len(gs)) if is_nonneg_int(gs[p] + gs[q])]
        if sums and gs[2 * i] + gs[2 * i + 1] != min(sums):
            return False
    return True


def reorder(cond, first, second=None):
    """Greedy re-enumeration: repeatedly put the least Z+-valued difference (or sum) first."""
    if cond == "2.19":
        al, be = [rat(a) for a in first], [rat(b) for b in second]
        out, ia, ib = [], list(range(len(al))), list(range(len(be)))
        while ia:
            best = None
            for p in ia:
                for q in ib:
                    d = al[p] - be[q]
                    if is_nonneg_int(d) and (best is None or d < best[0]):
                        best = (d, p, q)
            if best is None:
                out.extend((al[p], be[q]) for p, q in zip(ia, ib))
                break
            _, p, q = best
            out.append((al[p], be[q]))
            ia.remove(p)
            ib.remove(q)
        return [a for a, _ in out], [b for _, b in out]
    if cond in ("4.14", "5.3"):
        gs = [rat(g) for g in first]
        rest, out = list(range(len(gs))), []
        npairs = len(gs) // 2
        for _ in range(npairs):
            best = None
            for a in range(len(rest)):
                for b in range(a + 1, len(rest)):
                    s = gs[rest[a]] + gs[rest[b]]
                    if is_nonneg_int(s) and (best is None or s < best[0]):
                        best = (s, a, b)
            if best is None:
                break
            _, a, b = best
            p, q = rest[a], rest[b]
            out += [gs[p], gs[q]]
            rest = [r for r in rest if r not in (p, q)]
        return out + [gs[r] for r in rest]
    raise ValueError(f"unknown condition {cond!r}")


# ------------------------------------------------------------------ predicates


@dataclass
class ClassificationResult:
    finite_dim: bool
    witnesses: list = field(default_factory=list)
    gamma: object = None
    epsilon: object = None
    branch: str = None

    def to_json(self):
        d = {"finite_dim": self.finite_dim, "P": [w.to_json() for w in self.witnesses]}
        if self.gamma is not None:
            d["gamma"] = rat_str(self.gamma)
        if self.epsilon is not None:
            d["epsilon"] = self.epsilon
        if self.branch is not None:
            d["branch"] = self.branch
        return d


def _chain(first, rest):
    ps = []
    prev = first
    for nxt in rest:
        P = arrow(prev, nxt)
        if P is None:
            return None
        ps.append(P)
        prev = nxt
    return ps


def fd_Y(hw):
    """λ_1 → λ_2 → ... → λ_N."""
    hw = list(hw)
    ps = _chain(hw[0], hw[1:])
    return ClassificationResult(ps is not None, ps or [])


def fd_Yminus(hw):
    """μ_1(-u) ⇒ μ_1(u) → μ_2(u) → ... → μ_n(u)."""
    hw = list(hw)
    P1 = sym_arrow(hw[0])
    if P1 is None:
        return ClassificationResult(False)
    ps = _chain(hw[0], hw[1:])
    if ps is None:
        return ClassificationResult(False)
    return ClassificationResult(True, [P1] + ps)


TWO_U_FACTOR = FactoredSeries([(-HALF, 1), (HALF, -1)])  # (2u-1)/(2u+1)


def _sym_arrow_scaled(mu, scale):
    """P with P(u)=P(-u+1) and scale(u) mu(-u) / mu(u) = P(u+1)/P(u)."""
    P = arrow(scale * mu.neg_var(), mu)
    if P is None or not is_symmetric(P):
        return None
    return P


def fd_Yplus_even(hw):
    """The four alternatives for Y+(2n), n >= 2 (n = 1 is accepted too); ε labels the first that holds."""
    hw = list(hw)
    mu1, rest = hw[0], hw[1:]
    sol = gamma_solver(mu1)
    if sol is None:
        return ClassificationResult(False)
    _, gamma = sol
    mu1s = mu1 * sharp_ratio(gamma)
    options = [
        (1, mu1, FactoredSeries.one()),
        (2, mu1, TWO_U_FACTOR),
        (3, mu1s, FactoredSeries.one()),
        (4, mu1s, TWO_U_FACTOR),
    ]
    for eps, m, scale in options:
        P1 = _sym_arrow_scaled(m, scale)
        if P1 is None:
            continue
        ps = _chain(m, rest)
        if ps is None:
            continue
        label = eps
        if eps == 3 and P1(HALF) != 0:
            label = 1  # ε = 1 and ε = 3 are identified when P_1(1/2) != 0
        return ClassificationResult(True, [P1] + ps, gamma=gamma, epsilon=label)
    return ClassificationResult(False, gamma=gamma)


def fd_Yplus_odd(hw):
    """μ_0 → μ_1 → ... → μ_n  or  (2u/(2u+1)) μ_0 → μ_1 → ... ; hw = [μ_0, μ_1, ..., μ_n]."""
    hw = list(hw)
    mu0 = hw[0]
    if not mu0.is_even():
        raise ValueError("μ_0 must be even")
    for eps, first in ((1, mu0), (2, mu0 * FactoredSeries([(HALF, -1)]))):
        ps = _chain(first, hw[1:])
        if ps is not None:
            return ClassificationResult(True, ps, epsilon=eps, branch="mu0" if eps == 1 else "scaled-mu0")
    return ClassificationResult(False)


def plus3_weights(alphas, betas):
    """μ_0 = prod (1 - α_i^2 u^-2), μ_1 = prod (1 - α_i u^-1)(1 + β_i u^-1)."""
    mu0 = FactoredSeries([(-rat(a), 1) for a in alphas] + [(rat(a), 1) for a in alphas])
    mu1 = FactoredSeries([(-rat(a), 1) for a in alphas] + [(rat(b), 1) for b in betas])
    return mu0, mu1


def _perfect_matching(k, ok):
    """Bipartite perfect matching between 0..k-1 and 0..k-1 (Kuhn)."""
    match = [-1] * k

    def try_(i, seen):
        for j in range(k):
            if ok(i, j) and j not in seen:
                seen.add(j)
                if match[j] == -1 or try_(match[j], seen):
                    match[j] = i
                    return True
        return False

    for i in range(k):
        if not try_(i, set()):
            return None
    return {match[j]: j for j in range(k)}


def fd_Yplus3(alphas, betas):
    """Some re-enumeration has all α_i - β_i in Z+, or all but one with α_k in 1/2+Z+, β_k in -Z+."""
    al, be = [rat(a) for a in alphas], [rat(b) for b in betas]
    k = len(al)
    dom = lambda i, j: is_nonneg_int(al[i] - be[j])
    m = _perfect_matching(k, dom)
    if m is not None:
        return ClassificationResult(True, [], epsilon=1, branch="all-integral"), [(al[i], be[m[i]]) for i in range(k)]
    for i in range(k):
        if not is_nonneg_int(al[i] - HALF):
            continue
        for j in range(k):
            if not is_nonneg_int(-be[j]):
                continue
            ra = [a for t, a in enumerate(al) if t != i]
            rb = [b for t, b in enumerate(be) if t != j]
            mm = _perfect_matching(k - 1, lambda p, q: is_nonneg_int(ra[p] - rb[q]))
            if mm is not None:
                pairs = [(ra[p], rb[mm[p]]) for p in range(k - 1)] + [(al[i], be[j])]
                return ClassificationResult(True, [], epsilon=2, branch="half-integral-last"), pairs
    return ClassificationResult(False), None


def drinfeld_fd_Yplus3(alphas, betas):
    """fd_Yplus3 verdict with Drinfeld witnesses from the odd-N formulation."""
    res, pairs = fd_Yplus3(alphas, betas)
    if res.finite_dim:
        mu0, mu1 = plus3_weights(alphas, betas)
        odd = fd_Yplus_odd([mu0, mu1])
        res.witnesses = odd.witnesses
    return res, pairs
