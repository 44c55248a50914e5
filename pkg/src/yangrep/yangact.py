"""Y(N) actions on finite-dimensional modules."""

from itertools import permutations

from .exactlin import RatFuncMat, RatFuncU, SparseMat, rat, rat_str
from .liealg import GL, IndexScheme, LieModule, _perm_sign


class YAction:
    """t[p][q] is the RatFuncMat of t_pq(u) (positions)."""

    family = "Y"

    def __init__(self, N, scheme, t, provenance=None, hw_index=0):
        self.N = N
        self.scheme = scheme
        self.t = [list(row) for row in t]
        self.dim = self.t[0][0].rows
        self.provenance = provenance or {}
        self.hw_index = hw_index

    @property
    def entries(self):
        return self.t

    def entry(self, p, q):
        return self.t[p][q]

    @property
    def degree_bound(self):
        return max(m.degree_bound for row in self.t for m in row)

    def __call__(self, u0):
        """All N x N matrices at u = u0."""
        return [[m(u0) for m in row] for row in self.t]

    def poles(self):
        out = set()
        for row in self.t:
            for m in row:
                out |= m.poles()
        return out

    def weights(self):
        """Per-basis-vector E_pp eigenvalues (u^-1 coefficients of t_pp)."""
        diag = []
        for p in range(self.N):
            c1 = self.t[p][p].series_coeffs(1)[1]
            if not c1.is_diagonal():
                raise ValueError("diagonal generators are not diagonal in this basis")
            diag.append(c1.diagonal())
        return [tuple(d[i] for d in diag) for i in range(self.dim)]

    def __eq__(self, other):
        return isinstance(other, YAction) and self.N == other.N and self.t == other.t

    def __repr__(self):
        return f"YAction(N={self.N}, dim={self.dim}, deg<={self.degree_bound})"


def _check_gl(m):
    if not isinstance(m, LieModule) or m.algebra != GL:
        raise ValueError("evaluation module needs a gl(N) module")


def eval_module(m, symmetric=False, provenance=None):
    """t_ij(u) = δ_ij + E_ij u^-1."""
    _check_gl(m)
    N, d = m.N, m.dim
    eye = SparseMat.identity(d)
    zero = SparseMat.zero(d)
    t = [[RatFuncMat(d, d, [m.gen(p, q), eye if p == q else zero], {rat(0): 1}) for q in range(N)] for p in range(N)]
    prov = provenance or {"eval": {"hw": [rat_str(x) for x in m.hw]}}
    return YAction(N, IndexScheme(N, symmetric), t, prov, m.hw_index)


def trivial(N, symmetric=False):
    t = [[RatFuncMat.identity(1) if p == q else RatFuncMat.zero(1) for q in range(N)] for p in range(N)]
    return YAction(N, IndexScheme(N, symmetric), t, {"trivial": {}})


def tensor_action(factors):
    """Coproduct action: t_ij = sum_a t_ia (x) t_aj, first factor on the left."""
    factors = list(factors)
    if not factors:
        raise ValueError("empty tensor product")
    out = factors[0]
    for f in factors[1:]:
        if f.N != out.N or f.scheme != out.scheme:
            raise ValueError("tensor factors have different N or index scheme")
        N = out.N
        t = []
        for p in range(N):
            row = []
            for q in range(N):
                acc = None
                for a in range(N):
                    term = out.t[p][a].kron(f.t[a][q])
                    acc = term if acc is None else acc + term
                row.append(acc)
            t.append(row)
        out = YAction(N, out.scheme, t, {"tensor": [out.provenance, f.provenance]}, out.hw_index * f.dim + f.hw_index)
    if len(factors) > 2:
        out.provenance = {"tensor": [f.provenance for f in factors]}
    return out


def shift(a, x):
    a = rat(a)
    t = [[m.shift(a) for m in row] for row in x.t]
    return _like(x, t, {"shift": {"a": rat_str(a), "of": x.provenance}})


def twist_series(phi, x):
    """Multiply every t_ij(u) by the scalar series phi (a FactoredSeries or RatFuncU)."""
    f = phi if isinstance(phi, RatFuncU) else phi.ratfunc()
    t = [[m.mul_ratfunc(f) for m in row] for row in x.t]
    prov = {"twist": {"phi": phi.to_json() if hasattr(phi, "to_json") else repr(phi), "of": x.provenance}}
    return _like(x, t, prov)


def _like(x, t, prov):
    y = object.__new__(type(x))
    y.__dict__.update(x.__dict__)
    if hasattr(x, "s"):
        y.s = t
    else:
        y.t = t
    y.provenance = prov
    return y


def _check_points(x, pts):
    poles = x.poles()
    for p in pts:
        if rat(p) in poles:
            raise ZeroDivisionError(f"pole hit at u={rat_str(p)}")


def qdet(x, u0):
    """sum_p sgn(p) t_{p(1),1}(u0) t_{p(2),2}(u0-1) ... t_{p(N),N}(u0-N+1)."""
    N = x.N
    if N > 4:
        raise ValueError("qdet implemented for N <= 4")
    u0 = rat(u0)
    pts = [u0 - k for k in range(N)]
    _check_points(x, pts)
    cols = [[x.t[p][k](pts[k]) for p in range(N)] for k in range(N)]
    return _perm_sum(cols, list(range(N)), list(range(N)), x.dim)


def _perm_sum(cols, row_ids, col_ids, dim):
    """sum over bijections rows->cols of sgn * prod_k M_{row(k), col_k}; cols[k][r] matrices."""
    acc = SparseMat.zero(dim)
    for perm in permutations(range(len(row_ids))):
        prodm = None
        for k, j in enumerate(col_ids):
            m = cols[j][row_ids[perm[k]]]
            prodm = m if prodm is None else prodm @ m
        acc = acc + prodm.scale(_perm_sign(perm))
    return acc


def qcomatrix_entry(x, i, j, u0):
    """(-1)^{i+j} times the qdet of T(u0) with column i and row j removed."""
    N = x.N
    if N > 3:
        raise ValueError("comatrix implemented for N <= 3")
    u0 = rat(u0)
    rows = [r for r in range(N) if r != j]
    cols = [c for c in range(N) if c != i]
    pts = [u0 - k for k in range(N - 1)]
    _check_points(x, pts)
    mats = {c: [x.t[r][c](pts[k]) for r in range(N)] for k, c in enumerate(cols)}
    acc = SparseMat.zero(x.dim)
    for perm in permutations(range(N - 1)):
        prodm = None
        for k, c in enumerate(cols):
            m = mats[c][rows[perm[k]]]
            prodm = m if prodm is None else prodm @ m
        acc = acc + prodm.scale(_perm_sign(perm))
    return acc.scale((-1) ** (i + j))


def coeff_matrices(x, bound):
    """{(p, q, r): coefficient of u^-r in t_pq(u)} for r = 1..bound."""
    out = {}
    ent = x.s if hasattr(x, "s") else x.t
    for p in range(x.N):
        for q in range(x.N):
            cs = ent[p][q].series_coeffs(bound)
            for r in range(1, bound + 1):
                out[(p, q, r)] = cs[r]
    return out


def eigenvalue_at_infinity_ok(x):
    ent = x.s if hasattr(x, "s") else x.t
    eye = SparseMat.identity(x.dim)
    for p in range(x.N):
        for q in range(x.N):
            if ent[p][q].value_at_infinity() != (eye if p == q else SparseMat.zero(x.dim)):
                return False
    return True


__all__ = [
    "YAction", "eval_module", "trivial", "tensor_action", "shift", "twist_series", "qdet", "qcomatrix_entry",
    "coeff_matrices", "eigenvalue_at_infinity_ok",
]
