"""Executable checks of operator identities on constructed modules.

Two-variable identities are checked on a tensor grid of sample points. After
multiplying by L(u)L(v) (L = lcm of all entry denominators) and by the
(u - v)(u + v) factors, every checked relation is a polynomial of degree at
most deg L + 2 in each variable, so a grid with more points than that per
variable proves the identity. Grids use small positive integers, skipping poles.
"""

import json
from dataclasses import dataclass, field
from math import lcm

import numpy as np

from .exactlin import ONE, ZERO, RatFuncU, SparseMat, proportionality, rat, rat_str

INT64_SAFE = 2 ** 62


@dataclass
class VerifyReport:
    suite: str
    checks: list = field(default_factory=list)
    samples_used: int = 0

    def add(self, description, ok, counterexample=None):
        self.checks.append({"check": description, "pass": bool(ok), "counterexample": counterexample})
        return ok

    @property
    def passed(self):
        return all(c["pass"] for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c["pass"]]

    def to_json(self):
        return {"suite": self.suite, "pass": self.passed, "samples_used": self.samples_used, "checks": self.checks}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    def merge(self, other, prefix=""):
        for c in other.checks:
            self.checks.append(dict(c, check=prefix + c["check"]))
        self.samples_used += other.samples_used
        return self


def _entries(x):
    return x.s if hasattr(x, "s") else x.t


def common_den_degree(x):
    den = {}
    for row in _entries(x):
        for m in row:
            for r, k in m.den.items():
                den[r] = max(den.get(r, 0), k)
    return sum(den.values())


def sample_points(x, count, avoid=()):
    poles = x.poles() | {rat(a) for a in avoid}
    out, k = [], 1
    while len(out) < count:
        if rat(k) not in poles:
            out.append(rat(k))
        k += 1
    return out


def grid_size(x):
    return max(2 * x.degree_bound + 3, common_den_degree(x) + 3)


def _dense_block(x, u0):
    """N x N x d x d integer array and its common denominator D (values = arr / D)."""
    mats = x(u0)
    N, d = x.N, x.dim
    D = 1
    for row in mats:
        for m in row:
            for _, _, v in m.entries():
                D = lcm(D, int(v.denominator))
    arr = np.zeros((N, N, d, d), dtype=object)
    for a in range(N):
        for b in range(N):
            for r, c, v in mats[a][b].entries():
                arr[a, b, r, c] = int(v.numerator) * (D // int(v.denominator))
    return arr, D


def _maxabs(arr):
    return max((abs(int(v)) for v in arr.flat), default=0)


def _products(A, B, d):
    """P[a,b,c,e] = A[a,b] @ B[c,e], exact, int64 when magnitudes allow."""
    bound = _maxabs(A) * _maxabs(B) * max(d, 1)
    if bound * 64 < INT64_SAFE:
        A64, B64 = A.astype(np.int64), B.astype(np.int64)
        P = np.matmul(A64[:, :, None, None], B64[None, None, :, :])
        return P.astype(object) if bound * 64 * 16 >= INT64_SAFE else P
    return np.matmul(A[:, :, None, None], B[None, None, :, :])


def _first_nonzero(res):
    nz = np.argwhere(res != 0)
    return tuple(int(i) for i in nz[0]) if len(nz) else None


def check_ternary(x, report=None):
    """(u - v)[t_ij(u), t_kl(v)] = t_kj(u) t_il(v) - t_kj(v) t_il(u) on the sample grid."""
    report = report or VerifyReport("defining")
    m = grid_size(x)
    pts = sample_points(x, 2 * m)
    us, vs = pts[:m], pts[m:]
    N, d = x.N, x.dim
    I, J, K, L = np.indices((N, N, N, N))
    blocks = {p: _dense_block(x, p) for p in pts}
    failures = []
    for u in us:
        A, Du = blocks[u]
        for v in vs:
            B, Dv = blocks[v]
            P = _products(A, B, d)  # t(u) t(v)
            Q = _products(B, A, d)  # t(v) t(u)
            c = int(u - v)
            lhs = c * (P[I, J, K, L] - Q[K, L, I, J])
            rhs = P[K, J, I, L] - Q[K, J, I, L]
            bad = _first_nonzero(lhs - rhs)
            if bad is not None:
                failures.append({"u": rat_str(u), "v": rat_str(v), "ijkl": list(bad[:4]), "entry": list(bad[4:])})
    report.samples_used += len(us) * len(vs)
    report.add(f"ternary relation on {len(us)}x{len(vs)} grid, all {N**4} index quadruples", not failures, failures[:1] or None)
    return report


def check_quaternary(x, report=None):
    """The quaternary relation of the twisted Yangian, multiplied by (u^2 - v^2)."""
    report = report or VerifyReport("defining")
    m = grid_size(x) + 1
    pts = sample_points(x, 2 * m)
    us, vs = pts[:m], pts[m:]
    N, d = x.N, x.dim
    sch = x.scheme
    I, J, K, L = np.indices((N, N, N, N))
    nI, nJ, nK, nL = (N - 1 - I), (N - 1 - J), (N - 1 - K), (N - 1 - L)
    th = np.array([[x.theta(p, q) for q in range(N)] for p in range(N)], dtype=object)
    th_k_nj = th[K, nJ][..., None, None]
    th_i_nl = th[I, nL][..., None, None]
    th_i_nj = th[I, nJ][..., None, None]
    del sch
    blocks = {p: _dense_block(x, p) for p in pts}
    failures = []
    for u in us:
        A, _ = blocks[u]
        for v in vs:
            B, _ = blocks[v]
            P = _products(A, B, d).astype(object)  # s(u) s(v)
            Q = _products(B, A, d).astype(object)  # s(v) s(u)
            uu, vv = int(u), int(v)
            lhs = (uu * uu - vv * vv) * (P[I, J, K, L] - Q[K, L, I, J])
            rhs = (
                (uu + vv) * (P[K, J, I, L] - Q[K, J, I, L])
                - (uu - vv) * (th_k_nj * P[I, nK, nJ, L] - th_i_nl * Q[K, nI, nL, J])
                + th_i_nj * (P[K, nI, nJ, L] - Q[K, nI, nJ, L])
            )
            bad = _first_nonzero(lhs - rhs)
            if bad is not None:
                failures.append({"u": rat_str(u), "v": rat_str(v), "ijkl": list(bad[:4]), "entry": list(bad[4:])})
    report.samples_used += len(us) * len(vs)
    report.add(f"quaternary relation on {len(us)}x{len(vs)} grid, all {N**4} index quadruples", not failures, failures[:1] or None)
    return report


def verify_defining(x):
    from .twistact import SAction, symmetry_defects
    from .yangact import eigenvalue_at_infinity_ok

    rep = VerifyReport("defining")
    rep.add("value at infinity is the identity matrix", eigenvalue_at_infinity_ok(x))
    if isinstance(x, SAction):
        bad = symmetry_defects(x)
        rep.add("symmetry relation as exact rational-function identity", not bad, {"pq": list(bad[0])} if bad else None)
        check_quaternary(x, rep)
    else:
        check_ternary(x, rep)
    return rep


# ------------------------------------------------------------------ catalog

from .classify import FactoredSeries, crit_strings  # noqa: E402
from .exactlin import HALF, PolyU, interpolate_ratfunc, is_nonneg_int  # noqa: E402
from .liealg import build_g_rank1, build_gl2, build_glN, build_spin  # noqa: E402
from .repanalysis import (  # noqa: E402
    cyclic_span,
    extract_hw,
    hw_vector,
    irreducible_quotient,
    is_irreducible,
    restrict_to,
    singular_space,
    singular_vectors,
    _rebuild,
)
from .twistact import (  # noqa: E402
    MINUS,
    PLUS,
    SAction,
    gamma_N,
    onedim_plus,
    restrict_S,
    scomatrix3,
    scomatrix_full,
    sdet_matrix,
    sharp_conjugate,
    tensor_mixed,
    twisted_eval,
)
from .yangact import YAction, eval_module, qdet, tensor_action, trivial  # noqa: E402


def gl_eval(lam, symmetric=True):
    lam = [rat(a) for a in lam]
    m = build_gl2(*lam) if len(lam) == 2 else build_glN(lam)
    return eval_module(m, symmetric=symmetric)


def _lin(c):
    return FactoredSeries([(c, 1)])


def expected_Y(weights):
    """λ_p(u) = prod over factors of (1 + λ_p u^-1)."""
    N = len(weights[0])
    return [FactoredSeries([(rat(w[p]), 1) for w in weights]) for p in range(N)]


def expected_restriction(weights, odd=False):
    """μ_i(u) = λ_i(u) λ_{-i}(-u) for labels i >= 0 (i = 0 only for L(α,α,β)-type factors)."""
    lam = expected_Y(weights)
    N = len(lam)
    n = N // 2
    out = []
    for lab in ([0] if odd else []) + list(range(1, n + 1)):
        p, q = n + lab, n - lab  # positions of lab and -lab in the symmetric scheme
        if N % 2 == 0:
            p, q = n + lab - 1, n - lab
        out.append(lam[p] * lam[q].neg_var())
    return out


def expected_twisted_eval(family, mus, odd=False):
    """(1 + (μ ± 1/2) u^-1) / (1 ± 1/2 u^-1) per label, μ_0 = 1."""
    sgn = HALF if family == PLUS else -HALF
    comps = [FactoredSeries([(rat(m) + sgn, 1), (sgn, -1)]) for m in mus]
    return ([FactoredSeries()] if odd else []) + comps


def expected_V(gamma):
    return [FactoredSeries([(rat(gamma), 1), (HALF, -1)])]


def _times(a, b):
    return [x * y for x, y in zip(a, b)]


@dataclass
class CatalogEntry:
    name: str
    build: object
    expected: list

    def module(self):
        return self.build()


def catalog():
    """At least a dozen modules across all families with independently known highest weights."""
    E = gl_eval
    ent = []

    def y(name, ws):
        ent.append(CatalogEntry(name, lambda ws=ws: tensor_action([E(w, symmetric=False) for w in ws]), expected_Y(ws)))

    y("Y2 L(1,0)xL(1,0)", [(1, 0), (1, 0)])
    y("Y2 L(2,0)xL(1,-1)xL(1/2,-1/2)", [(2, 0), (1, -1), ("1/2", "-1/2")])
    y("Y2 L(3/2,-1/2)xL(1,0)xL(0,-1)", [("3/2", "-1/2"), (1, 0), (0, -1)])
    y("Y3 L(1,0,0)xL(1,1,0)", [(1, 0, 0), (1, 1, 0)])
    y("Y3 L(1,0,0)xL(1,0,0)xL(1,1,0)", [(1, 0, 0), (1, 0, 0), (1, 1, 0)])
    y("Y3 L(2,1,0)", [(2, 1, 0)])

    def r(name, fam, ws, odd=False):
        ent.append(CatalogEntry(name, lambda ws=ws: restrict_S(tensor_action([E(w) for w in ws]), fam), expected_restriction(ws, odd)))

    r("Y-2 L(3/2,-1/2)", MINUS, [("3/2", "-1/2")])
    r("Y-2 L(1,0)xL(2,-1)", MINUS, [(1, 0), (2, -1)])
    r("Y+2 L(3/2,-1/2)", PLUS, [("3/2", "-1/2")])
    r("Y+3 L(1,1,0)", PLUS, [(1, 1, 0)], odd=True)
    r("Y+3 L(2,2,0)xL(1,1,0)", PLUS, [(2, 2, 0), (1, 1, 0)], odd=True)

    def mixed(name, ws, gamma):
        ent.append(
            CatalogEntry(
                name,
                lambda: tensor_mixed(tensor_action([E(w) for w in ws]), onedim_plus(gamma)),
                _times(expected_restriction(ws), expected_V(gamma)),
            )
        )

    mixed("Y+2 L(3/2,-1/2)xL(1,0)xV(-1)", [("3/2", "-1/2"), (1, 0)], -1)
    mixed("Y+2 L(1,-1)xV(3/2)", [(1, -1)], "3/2")
    ent.append(CatalogEntry("Y-2 sp(2) mu=-1", lambda: twisted_eval(build_g_rank1("sp2", -1), MINUS), expected_twisted_eval(MINUS, [-1])))
    ent.append(CatalogEntry("Y+3 o(3) spin", lambda: twisted_eval(build_spin(3), PLUS), expected_twisted_eval(PLUS, ["-1/2"], odd=True)))
    ent.append(CatalogEntry("Y+3 o(3) mu=-1", lambda: twisted_eval(build_g_rank1("o3", -1), PLUS), expected_twisted_eval(PLUS, [-1], odd=True)))
    ent.append(CatalogEntry("Y+4 o(4) spin", lambda: twisted_eval(build_spin(4), PLUS), expected_twisted_eval(PLUS, ["-1/2", "-1/2"])))
    ent.append(
        CatalogEntry(
            "Y+3 L(1/2,1/2,1/2)xspin",
            lambda: tensor_mixed(E(("1/2", "1/2", "1/2")), twisted_eval(build_spin(3), PLUS)),
            _times(expected_restriction([("1/2", "1/2", "1/2")], odd=True), expected_twisted_eval(PLUS, ["-1/2"], odd=True)),
        )
    )
    return ent


def corrupt(x):
    """Negative control: flip the sign of one off-diagonal numerator coefficient entry."""
    ent = [list(row) for row in _entries(x)]
    for p in range(x.N):
        for q in range(x.N):
            m = ent[p][q]
            if p == q or m.is_zero():
                continue
            for k, c in enumerate(m.num):
                for r, cc, v in c.entries():
                    new = list(m.num)
                    data = {rr: dict(row) for rr, row in c.data.items()}
                    data[r][cc] = -v
                    new[k] = SparseMat(c.rows, c.cols, data)
                    ent[p][q] = type(m)(m.rows, m.cols, new, m.den)
                    return _rebuild(x, ent, {"corrupted": x.provenance}, x.hw_index)
    raise ValueError("nothing to corrupt")


def verify_catalog_defining():
    rep = VerifyReport("defining")
    for e in catalog():
        rep.merge(verify_defining(e.module()), prefix=f"[{e.name}] ")
    return rep


def verify_hw_products():
    rep = VerifyReport("hw_products")
    for e in catalog():
        x = e.module()
        hw = extract_hw(x, hw_vector(x))
        exp = [f.ratfunc() for f in e.expected]
        ok = hw.components == exp
        rep.add(f"[{e.name}] extracted hw equals product formula", ok, None if ok else {"got": [repr(c) for c in hw.components], "expected": [repr(c) for c in exp]})
    return rep


# ------------------------------------------------------------------ qdet / sdet


def _ok_points(x, count, start=3, forbid=()):
    bad = set(x.poles()) | {rat(a) for a in forbid}
    out, k = [], start
    while len(out) < count:
        u0 = rat(k)
        if u0 not in bad:
            out.append(u0)
        k += 1
    return out


def _central(x, m, pts):
    """m commutes with every s/t entry at the given points."""
    for v0 in pts:
        for row in x(v0):
            for a in row:
                if not (a @ m - m @ a).is_zero():
                    return False
    return True


def verify_qdet_sdet(x, points=5):
    """qdet (Y) or sdet via the underlying qdet (twisted): scalar, central; comatrix identity for N = 3."""
    rep = VerifyReport("qdet_sdet")
    irr = is_irreducible(x)
    twisted = isinstance(x, SAction)
    N = x.N
    forbid = set()
    for p in x.poles():
        for k in range(N):
            forbid |= {p + k, -p + N - 1 - k}
    pts = _ok_points(x, points, forbid=forbid)
    vpts = _ok_points(x, 3, start=11, forbid=forbid)
    for u0 in pts:
        m = sdet_matrix(x, u0) if twisted else qdet(x, u0)
        name = "sdet" if twisted else "qdet"
        rep.samples_used += 1
        if irr:
            rep.add(f"{name}({rat_str(u0)}) is scalar", m.scalar_value() is not None)
        rep.add(f"{name}({rat_str(u0)}) commutes with sampled generators", _central(x, m, vpts))
    if twisted:
        for u0 in pts:
            g = gamma_N(x.family, N, u0) * gamma_N(x.family, N, -u0 + rat(N, 2) - 1)
            rep.add(f"gamma_N involution at {rat_str(u0)}", g == 1)
    if twisted and N == 3 and x.family == PLUS:
        P = x.scheme.pos
        for u0 in _invertible_points(x, points, forbid):
            full = scomatrix_full(x, u0)
            for w, (i, j) in (("00", (0, 0)), ("-1,0", (-1, 0)), ("11", (1, 1))):
                ok = full[P(i)][P(j)] == scomatrix3(x, w, u0)
                rep.add(f"comatrix entry {w} from the explicit formula equals sdet*S(u-2)^-1 at {rat_str(u0)}", ok)
            xi = hw_vector(x)
            lhs = scomatrix3(x, "11", u0).apply(x.s[P(1)][P(1)](u0 - 2).apply(xi))
            rhs = sdet_matrix(x, u0).apply(xi)
            rep.add(f"s^_11(u) s_11(u-2) xi = sdet(u) xi at {rat_str(u0)}", lhs == rhs)
    return rep


def _invertible_points(x, count, forbid=(), start=3):
    """Sample points where S(u - N + 1) is invertible (needed for the comatrix)."""
    out, k = [], start
    while len(out) < count:
        u0 = rat(k)
        k += 1
        if u0 in forbid or u0 in x.poles():
            continue
        try:
            scomatrix_full(x, u0)
        except ZeroDivisionError:
            continue
        out.append(u0)
    return out


def verify_catalog_qdet_sdet():
    rep = VerifyReport("qdet_sdet")
    for e in catalog():
        x = e.module()
        if isinstance(x, SAction) and x.underlying is None:
            continue
        rep.merge(verify_qdet_sdet(x), prefix=f"[{e.name}] ")
    return rep


# ------------------------------------------------------------------ Y+(3) star action and eta_p identities


def _polyvec(mat, v):
    """Coefficient vectors of the polynomial operator mat applied to v."""
    if mat.den:
        raise ValueError("operator is not polynomial")
    return [c.apply(v) for c in mat.num]


def _pv_mul(p, pv, dim):
    out = [[ZERO] * dim for _ in range(max(len(p.c) + len(pv) - 1, 0))]
    for i, a in enumerate(p.c):
        if a:
            for j, v in enumerate(pv):
                row = out[i + j]
                for t, x in enumerate(v):
                    if x:
                        row[t] += a * x
    return out


def _pv_eq(a, b, dim):
    n = max(len(a), len(b))
    z = [ZERO] * dim
    return all(list(a[i] if i < len(a) else z) == list(b[i] if i < len(b) else z) for i in range(n))


def _pv_divide(pv, p, dim):
    """Exact division of a vector polynomial by a scalar polynomial; None if not exact."""
    cols = [PolyU([pv[k][t] for k in range(len(pv))]) for t in range(dim)]
    qs = []
    for c in cols:
        q, r = c.divmod(p)
        if not r.is_zero():
            return None
        qs.append(q)
    return qs


class StarContext:
    """Highest weight and star-action data for the Y+(3) restriction of L(α1,α1,β1) x ... x L(αk,αk,βk)."""

    def __init__(self, alphas, betas):
        self.alphas = [rat(a) for a in alphas]
        self.betas = [rat(b) for b in betas]
        self.k = k = len(self.alphas)
        for a, b in zip(self.alphas, self.betas):
            if not is_nonneg_int(a - b):
                raise ValueError("α_i - β_i must be a nonnegative integer")
        self.x = restrict_S(tensor_action([gl_eval((a, a, b)) for a, b in zip(self.alphas, self.betas)]), PLUS)
        self.alpha_star = [HALF - b for b in self.betas]
        self.beta_star = [HALF - a for a in self.alphas]
        u = PolyU((0, 1))
        self.a0 = _prod([u * u - PolyU.const(a * a) for a in self.alphas])
        self.a1 = _prod([u - PolyU.const(a) for a in self.alphas] + [u + PolyU.const(b) for b in self.betas])
        self.a0s = _prod([u * u - PolyU.const(a * a) for a in self.alpha_star])
        self.a1s = _prod([u - PolyU.const(a) for a in self.alpha_star] + [u + PolyU.const(b) for b in self.beta_star])
        self.mu0 = FactoredSeries([(-a, 1) for a in self.alphas] + [(a, 1) for a in self.alphas])
        self.mu1 = FactoredSeries([(-a, 1) for a in self.alphas] + [(b, 1) for b in self.betas])
        self.mu0s = FactoredSeries([(-a, 1) for a in self.alpha_star] + [(a, 1) for a in self.alpha_star])
        self.mu1s = FactoredSeries([(-a, 1) for a in self.alpha_star] + [(b, 1) for b in self.beta_star])
        m1 = self.mu1.ratfunc()
        self.psi0 = self.mu0s.ratfunc() / (m1.shift(-HALF) * m1.neg_var().shift(HALF))
        self.P = self.x.scheme.pos
        u2k = PolyU((0,) * (2 * k) + (1,))
        self.poly = [[m.mul_poly(u2k) for m in row] for row in self.x.s]
        self.xi = tuple(ONE if i == self.x.hw_index else ZERO for i in range(self.x.dim))
        self._hat = {}

    @property
    def dim(self):
        return self.x.dim

    def Sop(self, i, j):
        """𝒮_ij(u) = u^{2k} s_ij(u) as a polynomial RatFuncMat."""
        return self.poly[self.P(i)][self.P(j)]

    def S(self, i, j, u0):
        return self.Sop(i, j)(u0)

    def hat(self, v):
        v = rat(v)
        if v not in self._hat:
            self._hat[v] = scomatrix_full(self.x, v)
        return self._hat[v]

    def Sstar(self, i, j, u0):
        """𝒮*_ij(u0) = u0^{2k} ψ0(u0) ŝ_ij(-u0 + 1/2)."""
        u0 = rat(u0)
        c = u0 ** (2 * self.k) * self.psi0(u0)
        return self.hat(-u0 + HALF)[self.P(i)][self.P(j)].scale(c)

    def star_points(self, count, avoid=()):
        out, n = [], 2
        bad = {rat(a) for a in avoid}
        while len(out) < count:
            u0 = rat(n)
            n += 1
            if u0 in bad:
                continue
            try:
                self.psi0(u0)
                self.hat(-u0 + HALF)
            except ZeroDivisionError:
                continue
            out.append(u0)
        return out

    def eta(self, ps, order=None):
        """Blocks 𝒮_10(-α_i+p_i-1)...𝒮_10(-α_i), block i=1 leftmost."""
        v = self.xi
        idx = list(range(self.k)) if order is None else list(order)
        for i in reversed(idx):
            a = self.alphas[i]
            for q in range(ps[i]):
                v = self.S(1, 0, -a + q).apply(v)
        return v


def _prod(polys):
    out = PolyU.const(ONE)
    for p in polys:
        out = out * p
    return out


def verify_star_hw(alphas, betas, points=8):
    ctx = StarContext(alphas, betas)
    rep = VerifyReport("star_hw")
    xi, P = ctx.xi, ctx.P
    need = max(points, 4 * ctx.k + 3)
    pts = ctx.star_points(need)
    rep.samples_used = len(pts)
    vals = {0: [], 1: []}
    for u0 in pts:
        for lab, mu in ((0, ctx.mu0s), (1, ctx.mu1s)):
            w = ctx.hat(-u0 + HALF)[P(lab)][P(lab)].scale(ctx.psi0(u0)).apply(xi)
            lam = proportionality(xi, w)
            ok = lam is not None and lam == mu(u0)
            rep.add(f"s*_{lab}{lab}({rat_str(u0)}) xi = mu*_{lab}({rat_str(u0)}) xi", ok, None if ok else {"u": rat_str(u0)})
            if lam is not None:
                vals[lab].append((u0, lam))
        for i, j in ((-1, 0), (-1, 1), (0, 1)):
            ok = not any(ctx.hat(-u0 + HALF)[P(i)][P(j)].apply(xi))
            rep.add(f"s*_{i},{j}({rat_str(u0)}) xi = 0", ok)
    for lab, mu in ((0, ctx.mu0s), (1, ctx.mu1s)):
        if len(vals[lab]) == len(pts):
            f = interpolate_ratfunc(vals[lab], 2 * ctx.k, 2 * ctx.k)
            rep.add(f"interpolated s*_{lab}{lab} eigenvalue equals mu*_{lab} exactly", f == mu.ratfunc())
    return rep


def verify_prop62(alpha, beta, p_max=3, points=8):
    ctx = StarContext([alpha], [beta])
    rep = VerifyReport("prop62")
    a = ctx.alphas[0]
    bstar = ctx.beta_star[0]
    d = ctx.dim
    u = PolyU((0, 1))
    den = u * u - PolyU.const(a * a)
    etas = [ctx.eta([p]) for p in range(p_max + 1)]
    pts = ctx.star_points(points, avoid=[-bstar])
    rep.samples_used = len(pts)
    for p in range(p_max + 1):
        ep = etas[p]
        tag = f"p={p}" + ("" if any(ep) else " (eta_p = 0)")
        lhs = _pv_mul(den, _polyvec(ctx.Sop(0, 0), ep), d)
        rhs = _pv_mul(ctx.a0 * (u * u - PolyU.const((a - p) ** 2)), [ep], d)
        rep.add(f"{tag}: S_00(u) eta_p, exact polynomial identity", _pv_eq(lhs, rhs, d))
        lhs = _pv_mul(den, _polyvec(ctx.Sop(-1, 0), ep), d)
        if p == 0:
            rhs = []
        else:
            c = p * ctx.a1(-a + p - 1)
            rhs = _pv_mul((ctx.a0 * (u + PolyU.const(a - p))) * PolyU.const(c), [etas[p - 1]], d)
        rep.add(f"{tag}: S_-1,0(u) eta_p, exact polynomial identity", _pv_eq(lhs, rhs, d))
        ok15 = all(not any(ctx.Sstar(-1, 1, u0).apply(ep)) for u0 in pts)
        rep.add(f"{tag}: S*_-1,1(u) eta_p = 0 at {len(pts)} points", ok15)
        ok16 = True
        for u0 in pts:
            lam = ctx.a1s(u0) * (u0 + bstar + p) / (u0 + bstar)
            if ctx.Sstar(1, 1, u0).apply(ep) != tuple(lam * x for x in ep):
                ok16 = False
        rep.add(f"{tag}: S*_11(u) eta_p eigenvalue at {len(pts)} points", ok16)
    return rep


def verify_prop63_64(alphas, betas, ps_list=None, points=8):
    ctx = StarContext(alphas, betas)
    if len(set(ctx.alphas)) != len(ctx.alphas):
        raise ValueError("the α_i must be distinct")
    rep = VerifyReport("prop63_64")
    k, d = ctx.k, ctx.dim
    u = PolyU((0, 1))
    if ps_list is None:
        ps_list = [(p1, p2) for p1 in range(3) for p2 in range(2)] if k == 2 else [(p,) for p in range(3)]
    pts = ctx.star_points(points)
    rep.samples_used = len(pts)
    for ps in ps_list:
        ps = list(ps)
        eta = ctx.eta(ps)
        tag = f"p={tuple(ps)}" + ("" if any(eta) else " (eta = 0)")
        gam = [ctx.alphas[i] - ps[i] for i in range(k)]
        ev = _prod([u * u - PolyU.const(g * g) for g in gam])
        rep.add(f"{tag}: S_00(u) eigenvalue, exact", _pv_eq(_polyvec(ctx.Sop(0, 0), eta), _pv_mul(ev, [eta], d), d))
        D = _prod([u + PolyU.const(g) for g in gam])
        qs = _pv_divide(_polyvec(ctx.Sop(-1, 0), eta), D, d)
        rep.add(f"{tag}: S^nat_-1,0(u) eta is a polynomial", qs is not None)
        if qs is not None:
            for i in range(k):
                u0 = gam[i]
                lhs = tuple(q(u0) for q in qs)
                c = -ctx.a1(-ctx.alphas[i] + ps[i] - 1)
                for j in range(k):
                    c *= ctx.alphas[i] - ctx.alphas[j] - ps[i]
                if ps[i] == 0:
                    ok = not any(lhs)
                else:
                    lower = list(ps)
                    lower[i] -= 1
                    ok = lhs == tuple(c * x for x in ctx.eta(lower))
                rep.add(f"{tag}: value at u = alpha_{i + 1} - p_{i + 1}", ok)
        ok30 = all(not any(ctx.Sstar(-1, 1, u0).apply(eta)) for u0 in pts)
        rep.add(f"{tag}: S*_-1,1(u) eta = 0 at {len(pts)} points", ok30)
        lam = _prod([u - PolyU.const(a) for a in ctx.alpha_star] + [u + PolyU.const(b + p) for b, p in zip(ctx.beta_star, ps)])
        ok31 = all(ctx.Sstar(1, 1, u0).apply(eta) == tuple(lam(u0) * x for x in eta) for u0 in pts)
        rep.add(f"{tag}: S*_11(u) eigenvalue at {len(pts)} points", ok31)
        if k >= 2:
            rep.add(f"{tag}: eta independent of block order", ctx.eta(ps, order=list(reversed(range(k)))) == eta)
            g1, g2 = -gam[0], -gam[1]
            lhs = ctx.S(1, 0, g1).apply(ctx.S(1, 0, g2).apply(eta))
            rhs = ctx.S(1, 0, g2).apply(ctx.S(1, 0, g1).apply(eta))
            rep.add(f"{tag}: S_10 values commute on eta", lhs == rhs)
    return rep


# ------------------------------------------------------------------ reducible Y+(2) restriction

from .exactlin import Subspace  # noqa: E402
from .repanalysis import all_operators, quotient_by  # noqa: E402


def _unit_span(dim, idx):
    return Subspace(dim, [tuple(ONE if i == j else ZERO for i in range(dim)) for j in idx])


def _hw_of(x, v=None):
    v = hw_vector(x) if v is None else v
    return extract_hw(x, v).components


def verify_example57(gamma1, gamma2):
    """Restriction of L(γ1,-γ2) to Y+(2) in the reducible case γ1 >= γ2, γ1,γ2 in 1/2 + Z+."""
    g1, g2 = rat(gamma1), rat(gamma2)
    if not (is_nonneg_int(g1 - HALF) and is_nonneg_int(g2 - HALF) and g1 >= g2):
        raise ValueError("example57 needs γ1 >= γ2 with γ1, γ2 in 1/2 + Z+")
    rep = VerifyReport("example57")
    x = restrict_S(gl_eval((g1, -g2)), PLUS)
    d = x.dim
    n1 = int(g2 - HALF) + 1
    lo2 = int(g1 + HALF)
    L1 = _unit_span(d, range(n1))
    L2 = _unit_span(d, range(lo2, d))
    ops = all_operators(x)
    rep.add(f"dim L(γ1,-γ2) = {d}", d == int(g1 + g2) + 1)
    for name, sub in (("L1", L1), ("L2", L2)):
        rep.add(f"{name} = span of {sub.dim} basis vectors is invariant", all(sub.is_invariant(op) for op in ops))
    M1 = tensor_mixed(gl_eval((g2, HALF)), onedim_plus(-g1))
    M2 = tensor_mixed(gl_eval((g2, HALF)), onedim_plus(g1 + 1))
    for name, sub, M in (("L1", L1, M1), ("L2", L2, M2)):
        a = _rebuild(x, restrict_to(x, sub), {"sub": name}, 0)
        rep.add(f"{name} is irreducible", is_irreducible(a))
        rep.add(f"{name} and its model have equal dimension {sub.dim}", M.dim == sub.dim and is_irreducible(M))
        rep.add(f"{name} highest weight equals that of its model", _hw_of(a) == _hw_of(M))
    both = Subspace(d, L1.basis + L2.basis)
    qdim = d - both.dim
    rep.add(f"quotient dimension {qdim} = γ1 - γ2", qdim == int(g1 - g2))
    if qdim:
        ent, idx = quotient_by(x, both, n1)
        q = _rebuild(x, ent, {"quotient": x.provenance}, idx)
        model = restrict_S(gl_eval((g1, g2 + 1)), PLUS)
        rep.add("quotient is irreducible", is_irreducible(q))
        rep.add("quotient has the dimension of the restriction of L(γ1,γ2+1)", model.dim == qdim)
        rep.add("quotient highest weight equals that of L(γ1,γ2+1)", _hw_of(q) == _hw_of(model))
    return rep


# ------------------------------------------------------------------ sharp consistency


def sharp_module_weight(gammas):
    """μ^♯ from the singular vector of the ♯-conjugated irreducible mixed tensor."""
    gs = [rat(g) for g in gammas]
    k = len(gs) // 2
    left = tensor_action([gl_eval((gs[2 * i], -gs[2 * i + 1])) for i in range(k)]) if k else trivial(2, True)
    x = tensor_mixed(left, onedim_plus(-gs[-1]))
    v, _ = irreducible_quotient(x, hw_vector(x))
    y = sharp_conjugate(v)
    sv = singular_vectors(y)
    if singular_space(y).dim != 1 or len(sv) != 1:
        raise AssertionError("conjugated irreducible module has more than one singular line")
    return extract_hw(y, sv[0][1]).components[0]


def sharp_cases(limit=None):
    from .classify import satisfies_pair_condition

    vals = [rat(n, 2) for n in range(-3, 6)]
    out = []
    for g1 in vals:
        for g2 in vals:
            if not is_nonneg_int(g1 + g2) or g1 + g2 > 2:
                continue
            for g3 in (rat(-3, 2), rat(-1), rat(0), HALF, rat(1), rat(2)):
                gs = [g1, g2, g3]
                if satisfies_pair_condition(gs, 1):
                    out.append(gs)
    out.append([rat(2), rat(-1), rat(3, 2), rat(-1, 2), rat(-1)])
    return out[:limit] if limit else out


def verify_sharp(cases=None):
    from .classify import sharp_weight

    rep = VerifyReport("sharp")
    for gs in cases or sharp_cases():
        got = sharp_module_weight(gs)
        exp = sharp_weight(gs).ratfunc()
        tag = ",".join(rat_str(g) for g in gs)
        rep.add(f"gammas=({tag}): module-level mu^sharp equals formula", got == exp, None if got == exp else {"got": repr(got), "expected": repr(exp)})
    return rep


# ------------------------------------------------------------------ oracle sweeps


def _half_grid(lo, hi):
    lo, hi = rat(lo), rat(hi)
    out, v = [], lo
    while v <= hi:
        out.append(v)
        v += HALF
    return out


def sweep_instances(kind):
    if kind == "2.11":
        vals = [rat(v) for v in ("-1", "-1/2", "0", "1/2", "1", "2")]
        pairs = [(a, b) for a in vals for b in vals if a - b in (0, 1, 2)]
        return [(p, q) for p in pairs for q in pairs]
    gvals = _half_grid("-3/2", 2)
    gpairs = [(a, b) for a in gvals for b in gvals if a + b in (0, 1, 2)]
    if kind == "4.7":
        out = []
        for p in gpairs:
            for q in gpairs:
                if crit_strings("2.11", [(p[0], -p[1]), (q[0], -q[1])]):
                    out.append(p + q)
        return out
    if kind == "5.6":
        return [(p, g) for p in gpairs for g in _half_grid("-3/2", "3/2")]
    raise ValueError(f"unknown sweep {kind!r}")


def sweep_point_criterion(kind, inst):
    if kind == "2.11":
        return crit_strings("2.11", list(inst))
    if kind == "4.7":
        return crit_strings("4.7", list(inst))
    (g1, g2), g = inst
    return crit_strings("5.6", ([g1, g2], -g))


def sweep_module(kind, inst):
    if kind == "2.11":
        return tensor_action([gl_eval(p, symmetric=False) for p in inst])
    if kind == "4.7":
        return restrict_S(tensor_action([gl_eval((inst[0], -inst[1])), gl_eval((inst[2], -inst[3]))]), MINUS)
    (g1, g2), g = inst
    return tensor_mixed(gl_eval((g1, -g2)), onedim_plus(g))


def sweep_point(kind, inst):
    """(criterion verdict, brute-force irreducibility) for one grid instance."""
    return sweep_point_criterion(kind, inst), is_irreducible(sweep_module(kind, inst))


def _inst_str(kind, inst):
    if kind == "2.11":
        return " x ".join(f"L({rat_str(a)},{rat_str(b)})" for a, b in inst)
    if kind == "4.7":
        return "gammas=(" + ",".join(rat_str(g) for g in inst) + ")"
    (g1, g2), g = inst
    return f"L({rat_str(g1)},{rat_str(-g2)}) x V({rat_str(g)})"


def _threads():
    import os

    try:
        return max(1, int(os.environ.get("YANGREP_THREADS", "1")))
    except ValueError:
        return 1


def _sweep_job(args):
    return sweep_point(*args)


def run_sweep(kind, instances=None):
    insts = sweep_instances(kind) if instances is None else instances
    jobs = [(kind, i) for i in insts]
    n = _threads()
    if n > 1 and len(jobs) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=n) as ex:
            res = list(ex.map(_sweep_job, jobs, chunksize=8))
    else:
        res = [_sweep_job(j) for j in jobs]
    return list(zip(insts, res))


def oracle_sweep(kind):
    rep = VerifyReport(f"oracle_sweep[{kind}]")
    for inst, (crit, orc) in run_sweep(kind):
        rep.add(f"{_inst_str(kind, inst)}: criterion={crit} oracle={orc}", crit == orc)
    rep.samples_used = len(rep.checks)
    return rep


# ------------------------------------------------------------------ constructive witnesses

from .classify import fd_Y, fd_Yminus, fd_Yplus3, fd_Yplus_odd, similar, plus3_weights  # noqa: E402
from .twistact import trivial_S, twist_even  # noqa: E402
from .yangact import twist_series  # noqa: E402


def _unit(x):
    return tuple(ONE if i == x.hw_index else ZERO for i in range(x.dim))


def witness_Y(hw):
    """Finite module with highest weight hw built from the Drinfeld polynomials: one evaluation factor per root."""
    N = len(hw)
    res = fd_Y(hw)
    if not res.finite_dim:
        return None
    weights = []
    for a, P in enumerate(res.witnesses, start=1):
        for c, m in sorted(P.m.items()):
            weights += [tuple([c + 1] * a + [c] * (N - a))] * m
    lam_last = FactoredSeries([(w[-1], 1) for w in weights])
    if weights:
        x = tensor_action([gl_eval(w, symmetric=False) for w in weights])
        x, _ = irreducible_quotient(x, _unit(x))
    else:
        x = trivial(N)
    return twist_series(hw[-1] / lam_last, x)


def witness_Yminus2(mu):
    """Y-(2): restrict a tensor of L(δ+1, δ) over the paired roots δ, -1-δ, then twist by an even series."""
    res = fd_Yminus([mu])
    if not res.finite_dim:
        return None
    roots = []
    for c, m in sorted(res.witnesses[0].m.items()):
        roots += [c] * m
    deltas = []
    while roots:
        c = roots.pop()
        roots.remove(-1 - c)
        deltas.append(c)
    prime = FactoredSeries([(d, 1) for d in deltas] + [(-(d + 1), 1) for d in deltas])
    if deltas:
        x = restrict_S(tensor_action([gl_eval((d + 1, d)) for d in deltas]), MINUS)
        x, _ = irreducible_quotient(x, _unit(x))
    else:
        x = trivial_S(MINUS, 2)
    if not similar(mu, prime):
        raise AssertionError("highest weight and construction differ by a non-even series")
    return twist_even(mu / prime, x)


def witness_Yplus3(alpha, beta):
    """Restriction of L(α,α,β) when α - β in Z+, else L(α,α,1/2) x o(3)-module with μ = β - 1/2."""
    a, b = rat(alpha), rat(beta)
    res, pairs = fd_Yplus3([a], [b])
    if not res.finite_dim:
        return None
    if res.branch == "all-integral":
        x = restrict_S(gl_eval((a, a, b)), PLUS)
    else:
        x = tensor_mixed(gl_eval((a, a, HALF)), twisted_eval(build_g_rank1("o3", b - HALF), PLUS))
    x, _ = irreducible_quotient(x, hw_vector(x))
    return x


def fd_cases_Y():
    vals = _half_grid(-1, 1)
    return [[FactoredSeries([(a1, 1), (a2, 1)]), FactoredSeries([(b1, 1), (b2, 1)])] for a1 in vals for a2 in vals if a1 <= a2 for b1 in vals for b2 in vals if b1 <= b2]


def fd_cases_Yminus():
    vals = _half_grid("-3/2", 2)
    return [FactoredSeries([(-g1, 1), (-g2, 1)]) for g1 in vals for g2 in vals if g1 <= g2]


def verify_predicates():
    rep = VerifyReport("predicates")
    grid = _half_grid(-1, "3/2")
    for a in grid:
        for b in grid:
            r3, _ = fd_Yplus3([a], [b])
            r7 = fd_Yplus_odd(list(plus3_weights([a], [b])))
            tag = f"(alpha,beta)=({rat_str(a)},{rat_str(b)})"
            rep.add(f"{tag}: fd_Yplus3 verdict {r3.finite_dim} equals fd_Yplus_odd verdict {r7.finite_dim}", r3.finite_dim == r7.finite_dim)
            if r3.finite_dim:
                x = witness_Yplus3(a, b)
                exp = [m.ratfunc() for m in plus3_weights([a], [b])]
                ok = _hw_of(x, _unit(x)) == exp
                rep.add(f"{tag}: constructed Y+(3) module (dim {x.dim}) has the input highest weight", ok)
    for hw in fd_cases_Y():
        tag = f"Y(2) hw={hw}"
        x = witness_Y(hw)
        if x is not None:
            ok = is_irreducible(x) and _hw_of(x, _unit(x)) == [f.ratfunc() for f in hw]
            rep.add(f"{tag}: constructed module (dim {x.dim}) is irreducible with the input highest weight", ok)
    for mu in fd_cases_Yminus():
        x = witness_Yminus2(mu)
        if x is not None:
            ok = is_irreducible(x) and _hw_of(x, _unit(x)) == [mu.ratfunc()]
            rep.add(f"Y-(2) hw={mu}: constructed module (dim {x.dim}) is irreducible with the input highest weight", ok)
    rep.samples_used = len(rep.checks)
    return rep
