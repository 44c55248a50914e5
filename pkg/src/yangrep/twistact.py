"""Y+(N) / Y-(N) actions: restrictions, twisted evaluation modules, mixed tensors."""

from .exactlin import HALF, ONE, PolyU, RatFuncMat, RatFuncU, SparseMat, inverse, rat, rat_str
from .liealg import O, SP, IndexScheme, LieModule, build_g_rank1, theta
from .yangact import YAction, _check_points, qdet

PLUS, MINUS = "plus", "minus"


def family_of(name):
    name = {"Y+": PLUS, "Y-": MINUS, "Y−": MINUS, "+": PLUS, "-": MINUS}.get(name, name)
    if name not in (PLUS, MINUS):
        raise ValueError(f"unknown twisted family {name!r}")
    return name


class SAction:
    """s[p][q] is the RatFuncMat of s_pq(u) (positions in the symmetric scheme)."""

    def __init__(self, family, N, s, provenance=None, underlying=None, hw_index=0):
        self.family = family_of(family)
        self.N = N
        self.scheme = IndexScheme(N, True)
        self.s = [list(row) for row in s]
        self.dim = self.s[0][0].rows
        self.provenance = provenance or {}
        self.underlying = underlying
        self.hw_index = hw_index

    @property
    def entries(self):
        return self.s

    def entry(self, p, q):
        return self.s[p][q]

    @property
    def degree_bound(self):
        return max(m.degree_bound for row in self.s for m in row)

    def __call__(self, u0):
        return [[m(u0) for m in row] for row in self.s]

    def poles(self):
        out = set()
        for row in self.s:
            for m in row:
                out |= m.poles()
        return out

    def theta(self, p, q):
        return theta(self.family, self.scheme, p, q)

    def weights(self):
        """Per-basis-vector F_pp eigenvalues (u^-1 coefficients of s_pp)."""
        diag = []
        for p in range(self.N):
            c1 = self.s[p][p].series_coeffs(1)[1]
            if not c1.is_diagonal():
                raise ValueError("diagonal generators are not diagonal in this basis")
            diag.append(c1.diagonal())
        return [tuple(d[i] for d in diag) for i in range(self.dim)]

    def positive_positions(self):
        return [p for p in range(self.N) if self.scheme.label(p) > 0]

    def __eq__(self, other):
        return isinstance(other, SAction) and (self.family, self.N) == (other.family, other.N) and self.s == other.s

    def __repr__(self):
        return f"SAction({self.family}, N={self.N}, dim={self.dim}, deg<={self.degree_bound})"


def restrict_S(x, family):
    """s_ij(u) = sum_a θ_aj t_ia(u) t_{-j,-a}(-u)."""
    if not x.scheme.symmetric:
        raise ValueError("restriction needs the symmetric index scheme")
    fam = family_of(family)
    N, sch = x.N, x.scheme
    tneg = [[m.neg_var() for m in row] for row in x.t]
    s = []
    for p in range(N):
        row = []
        for q in range(N):
            acc = None
            for a in range(N):
                term = x.t[p][a] @ tneg[sch.neg(q)][sch.neg(a)]
                if theta(fam, sch, a, q) < 0:
                    term = -term
                acc = term if acc is None else acc + term
            row.append(acc)
        s.append(row)
    return SAction(fam, N, s, {"restrict": x.provenance}, underlying=x, hw_index=x.hw_index)


def twisted_eval(m, family):
    """s_ij(u) = δ_ij + F_ij (u ± 1/2)^-1, upper sign orthogonal."""
    fam = family_of(family)
    if not isinstance(m, LieModule) or m.algebra != (O if fam == PLUS else SP):
        raise ValueError("twisted evaluation: algebra does not match the family")
    c = HALF if fam == PLUS else -HALF
    d = m.dim
    eye = SparseMat.identity(d)
    s = []
    for p in range(m.N):
        row = []
        for q in range(m.N):
            if p == q:
                num = [m.gen(p, q) + eye.scale(c), eye]
            else:
                num = [m.gen(p, q)]
            row.append(RatFuncMat(d, d, num, {-c: 1}))
        s.append(row)
    hw = [rat_str(m.hw[p]) for p in range(m.N) if m.scheme.label(p) > 0]
    prov = {"twisted_eval": {"algebra": m.algebra, "N": m.N, "hw": hw}}
    return SAction(fam, m.N, s, prov, hw_index=m.hw_index)


def onedim_plus(gamma):
    """V(γ): the one-dimensional Y+(2)-module with F_11 = γ - 1/2."""
    gamma = rat(gamma)
    x = twisted_eval(build_g_rank1("o2", gamma - HALF), PLUS)
    x.provenance = {"onedim": {"gamma": rat_str(gamma)}}
    return x


def trivial_S(family, N):
    s = [[RatFuncMat.identity(1) if p == q else RatFuncMat.zero(1) for q in range(N)] for p in range(N)]
    return SAction(family, N, s, {"trivial": {}})


def _is_trivial(x):
    return x.dim == 1 and all(
        x.s[p][q] == (RatFuncMat.identity(1) if p == q else RatFuncMat.zero(1)) for p in range(x.N) for q in range(x.N)
    )


def tensor_mixed(left, right):
    """s_ij(u) = sum_{a,b} θ_bj t_ia(u) t_{-j,-b}(-u) (x) s_ab(u)."""
    if not isinstance(left, YAction) or not isinstance(right, SAction):
        raise ValueError("tensor_mixed needs a YAction on the left and an SAction on the right")
    if left.N != right.N or not left.scheme.symmetric:
        raise ValueError("tensor_mixed: N or index scheme mismatch")
    N, sch, fam = left.N, left.scheme, right.family
    tneg = [[m.neg_var() for m in row] for row in left.t]
    s = []
    for p in range(N):
        row = []
        for q in range(N):
            acc = None
            for a in range(N):
                for b in range(N):
                    sab = right.s[a][b]
                    if sab.is_zero():
                        continue
                    lt = left.t[p][a] @ tneg[sch.neg(q)][sch.neg(b)]
                    if theta(fam, sch, b, q) < 0:
                        lt = -lt
                    term = lt.kron(sab)
                    acc = term if acc is None else acc + term
            row.append(acc if acc is not None else RatFuncMat.zero(left.dim * right.dim))
        s.append(row)
    under = left if _is_trivial(right) else None
    prov = {"tensor_mixed": {"left": left.provenance, "right": right.provenance}}
    return SAction(fam, N, s, prov, underlying=under, hw_index=left.hw_index * right.dim + right.hw_index)


def twist_even(psi, x):
    """S(u) -> ψ(u) S(u) for an even scalar series ψ."""
    f = psi if isinstance(psi, RatFuncU) else psi.ratfunc()
    if not f.is_even():
        raise ValueError("twisting series must be even")
    s = [[m.mul_ratfunc(f) for m in row] for row in x.s]
    prov = {"twist": {"phi": psi.to_json() if hasattr(psi, "to_json") else repr(psi), "of": x.provenance}}
    return SAction(x.family, x.N, s, prov, None, x.hw_index)


def gamma_N(family, N, u):
    u = rat(u)
    if family_of(family) == PLUS:
        return ONE
    return (2 * u + 1) / (2 * u - N + 1)


def sdet_matrix(x, u0):
    """γ_N(u0) qdet T(u0) qdet T(-u0+N-1) on the underlying Y(N)-module."""
    if x.underlying is None:
        raise ValueError("no underlying Y(N) action to compute sdet from")
    u0 = rat(u0)
    g = gamma_N(x.family, x.N, u0)
    return (qdet(x.underlying, u0) @ qdet(x.underlying, -u0 + x.N - 1)).scale(g)


def sdet_scalar(x, u0, hw=None):
    m = sdet_matrix(x, u0)
    c = m.scalar_value()
    if c is not None:
        return c
    if hw is None:
        raise ValueError("sdet is not scalar on this module; pass a highest weight vector")
    from .exactlin import proportionality

    val = proportionality(hw, m.apply(hw))
    if val is None:
        raise ValueError("hw vector is not an sdet eigenvector")
    return val


def sharp_conjugate(x):
    """Swap the indices 1 and -1 (automorphism of Y+(2n))."""
    if x.family != PLUS or x.N % 2:
        raise ValueError("the sharp automorphism is defined for Y+(2n)")
    sch = x.scheme
    a, b = sch.pos(-1), sch.pos(1)
    sw = {a: b, b: a}
    s = [[x.s[sw.get(p, p)][sw.get(q, q)] for q in range(x.N)] for p in range(x.N)]
    return SAction(PLUS, x.N, s, {"sharp": x.provenance}, None, x.hw_index)


def scomatrix3(x, which, u0):
    """The Sklyanin comatrix entries ŝ_00, ŝ_{-1,0}, ŝ_11 of Y+(3)."""
    if x.family != PLUS or x.N != 3:
        raise ValueError("scomatrix3 needs a Y+(3) action")
    u0 = rat(u0)
    _check_points(x, [u0, -u0, u0 - 1])
    P = {lab: x.scheme.pos(lab) for lab in (-1, 0, 1)}

    def s(i, j, v):
        return x.s[P[i]][P[j]](v)

    a, b = -u0, u0 - 1
    if which == "00":
        return s(1, 1, a) @ s(1, 1, b) - s(1, -1, a) @ s(-1, 1, b)
    if which == "-1,0":
        return s(0, -1, a) @ s(-1, 1, b) - s(0, 1, a) @ s(1, 1, b)
    if which == "11":
        return s(1, 1, a) @ s(0, 0, b) - s(1, 0, a) @ s(-1, 0, b)
    raise ValueError(f"unknown comatrix entry {which!r}")


def block_matrix(x, u0):
    """The N*dim square matrix with blocks s_ij(u0)."""
    d = x.dim
    ents = {}
    for p, row in enumerate(x(u0)):
        for q, m in enumerate(row):
            for r, c, v in m.entries():
                ents[(p * d + r, q * d + c)] = v
    return SparseMat.from_entries(x.N * d, x.N * d, ents)


def scomatrix_full(x, u0):
    """All entries of the Sklyanin comatrix at u0 from sdet S(u) = S^(u) S(u-N+1)."""
    u0 = rat(u0)
    inv = inverse(block_matrix(x, u0 - x.N + 1))
    if inv is None:
        raise ZeroDivisionError(f"S(u) is not invertible at u={rat_str(u0 - x.N + 1)}")
    sd = sdet_matrix(x, u0)
    d = x.dim
    rng = list(range(d))
    return [[sd @ inv.submatrix([p * d + r for r in rng], [q * d + c for c in rng]) for q in range(x.N)] for p in range(x.N)]


def symmetry_defects(x):
    """Pairs (p, q) where θ s_{-j,-i}(-u) != s_ij(u) ± (s_ij(u) - s_ij(-u))/(2u)."""
    two_u = PolyU((0, 2))
    sign = 1 if x.family == PLUS else -1
    sch = x.scheme
    bad = []
    for p in range(x.N):
        for q in range(x.N):
            sij = x.s[p][q]
            lhs = x.s[sch.neg(q)][sch.neg(p)].neg_var().mul_poly(two_u)
            if x.theta(p, q) < 0:
                lhs = -lhs
            diff = sij - sij.neg_var()
            rhs = sij.mul_poly(two_u) + (diff if sign > 0 else -diff)
            if lhs != rhs:
                bad.append((p, q))
    return bad
