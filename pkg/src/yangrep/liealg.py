"""Index conventions and finite-dimensional gl(N), o(N), sp(N) modules.

Internally indices are positions 0..N-1. A symmetric scheme labels them
-n..n (skipping 0 when N = 2n) in increasing order, so negation of a label
is the position map p -> N-1-p.
"""

from dataclasses import dataclass
from itertools import product
from math import prod

from .exactlin import (
    HALF,
    ONE,
    ZERO,
    SparseMat,
    is_nonneg_int,
    rat,
    rat_str,
    solve,
    subspace_closure,
)

GL, O, SP = "gl", "o", "sp"


@dataclass(frozen=True)
class IndexScheme:
    N: int
    symmetric: bool = True

    def labels(self):
        if not self.symmetric:
            return list(range(1, self.N + 1))
        n = self.N // 2
        if self.N % 2:
            return list(range(-n, n + 1))
        return list(range(-n, 0)) + list(range(1, n + 1))

    def pos(self, label):
        return self.labels().index(label)

    def label(self, p):
        return self.labels()[p]

    def neg(self, p):
        if not self.symmetric:
            raise ValueError("negation needs the symmetric scheme")
        return self.N - 1 - p

    def sgn(self, p):
        lab = self.label(p)
        return (lab > 0) - (lab < 0)


def theta(family, scheme, p, q):
    """theta_ij: 1 for the orthogonal family, sgn(i)sgn(j) for the symplectic one."""
    if family in ("plus", O):
        return 1
    return scheme.sgn(p) * scheme.sgn(q)


class LieModule:
    """gens[(p, q)] is E_pq (algebra gl) or F_pq (algebra o / sp), by positions."""

    def __init__(self, algebra, N, gens, weights, hw_index=0, hw=None):
        self.algebra = algebra
        self.N = N
        self.gens = dict(gens)
        self.weights = [tuple(w) for w in weights]
        self.dim = len(self.weights)
        self.hw_index = hw_index
        self.hw = tuple(hw) if hw is not None else self.weights[hw_index]
        self.scheme = IndexScheme(N, symmetric=(algebra != GL))

    def gen(self, p, q):
        return self.gens[(p, q)]

    def to_json(self):
        return {
            "algebra": self.algebra,
            "N": self.N,
            "hw": [rat_str(x) for x in self.hw],
            "dim": self.dim,
            "matrices": {f"{p},{q}": [[r, c, rat_str(v)] for r, c, v in m.entries()] for (p, q), m in sorted(self.gens.items())},
        }


# ---------------------------------------------------------------- gl(N)


def build_gl2(alpha, beta):
    alpha, beta = rat(alpha), rat(beta)
    m = alpha - beta
    if not is_nonneg_int(m):
        raise ValueError(f"alpha - beta = {rat_str(m)} is not a nonnegative integer")
    d = int(m) + 1
    e = {
        (0, 0): SparseMat.from_entries(d, d, {(r, r): alpha - r for r in range(d)}),
        (1, 1): SparseMat.from_entries(d, d, {(r, r): beta + r for r in range(d)}),
        (0, 1): SparseMat.from_entries(d, d, {(r - 1, r): r * (m - r + 1) for r in range(1, d)}),
        (1, 0): SparseMat.from_entries(d, d, {(r + 1, r): 1 for r in range(d - 1)}),
    }
    weights = [(alpha - r, beta + r) for r in range(d)]
    return LieModule(GL, 2, e, weights)


def weyl_dim(lam):
    lam = [rat(x) for x in lam]
    n = len(lam)
    num = prod((lam[i] - lam[j] + j - i) for i in range(n) for j in range(i + 1, n))
    den = prod((j - i) for i in range(n) for j in range(i + 1, n))
    return int(num / den)


def is_dominant(lam):
    return all(is_nonneg_int(rat(a) - rat(b)) for a, b in zip(lam, lam[1:]))


def vector_rep(N):
    e = {(p, q): SparseMat.from_entries(N, N, {(p, q): 1}) for p in range(N) for q in range(N)}
    return LieModule(GL, N, e, [tuple(ONE if i == p else ZERO for i in range(N)) for p in range(N)])


def tensor_lie(a, b):
    if (a.algebra, a.N) != (b.algebra, b.N):
        raise ValueError("tensor of modules over different algebras")
    ia, ib = SparseMat.identity(a.dim), SparseMat.identity(b.dim)
    gens = {k: a.gens[k].kron(ib) + ia.kron(b.gens[k]) for k in a.gens}
    weights = [tuple(x + y for x, y in zip(wa, wb)) for wa in a.weights for wb in b.weights]
    return LieModule(a.algebra, a.N, gens, weights, hw_index=a.hw_index * b.dim + b.hw_index)


def tensor_power(m, d, N=None, algebra=GL):
    if d == 0:
        n = N if N is not None else m.N
        gens = {k: SparseMat.zero(1) for k in m.gens}
        return LieModule(algebra, n, gens, [tuple(ZERO for _ in m.weights[0])])
    out = m
    for _ in range(d - 1):
        out = tensor_lie(out, m)
    return out


def cyclic_submodule(m, v):
    """Submodule generated by v, basis of weight vectors sorted with v's weight first."""
    sub = subspace_closure([v], list(m.gens.values()), m.dim)
    wts = [m.weights[next(i for i, x in enumerate(b) if x)] for b in sub.basis]
    v_w = m.weights[next(i for i, x in enumerate(v) if x)]
    order = sorted(range(sub.dim), key=lambda k: (wts[k] != v_w, tuple(-x for x in wts[k]), k))
    basis = [sub.basis[k] for k in order]
    pivots = [sub.pivots[k] for k in order]
    gens = {}
    for key, g in m.gens.items():
        data = {}
        for c, b in enumerate(basis):
            img = g.apply(b)
            for r, piv in enumerate(pivots):
                if img[piv]:
                    data.setdefault(r, {})[c] = img[piv]
        gens[key] = SparseMat(sub.dim, sub.dim, data)
    return LieModule(m.algebra, m.N, gens, [wts[k] for k in order])


def build_glN(lam):
    lam = [rat(x) for x in lam]
    N = len(lam)
    if not is_dominant(lam):
        raise ValueError(f"weight {[rat_str(x) for x in lam]} is not dominant")
    c = lam[-1]
    part = [int(x - c) for x in lam]
    d = sum(part)
    if d == 0:
        gens = {(p, q): SparseMat.identity(1, c if p == q else 0) for p in range(N) for q in range(N)}
        return LieModule(GL, N, gens, [tuple(lam)])
    big = tensor_power(vector_rep(N), d)
    # columns of the Young diagram; slots are filled column by column
    heights = [sum(1 for r in part if r > col) for col in range(part[0])]
    v = _column_wedge_vector(N, heights)
    mod = cyclic_submodule(big, v)
    if mod.dim != weyl_dim(part):
        raise AssertionError("Young construction produced a module of the wrong dimension")
    gens = {k: (g + SparseMat.identity(mod.dim, c) if k[0] == k[1] else g) for k, g in mod.gens.items()}
    weights = [tuple(x + c for x in w) for w in mod.weights]
    return LieModule(GL, N, gens, weights)


def _column_wedge_vector(N, heights):
    """Tensor product over columns of e_0 ^ e_1 ^ ... ^ e_{h-1} (unnormalized)."""
    from itertools import permutations

    coeffs = {(): ONE}
    for h in heights:
        new = {}
        for perm in permutations(range(h)):
            sgn = _perm_sign(perm)
            for key, a in coeffs.items():
                k2 = key + perm
                new[k2] = new.get(k2, ZERO) + sgn * a
        coeffs = new
    d = sum(heights)
    v = [ZERO] * (N ** d)
    for key, a in coeffs.items():
        idx = 0
        for x in key:
            idx = idx * N + x
        v[idx] += a
    return tuple(v)


def _perm_sign(perm):
    s, seen = 1, set()
    for i in range(len(perm)):
        if i in seen:
            continue
        j, cyc = i, 0
        while j not in seen:
            seen.add(j)
            j = perm[j]
            cyc += 1
        if cyc % 2 == 0:
            s = -s
    return s


# ---------------------------------------------------------------- g(N)


def f_from_e(e_gens, family, scheme):
    """F_ij = E_ij - theta_ij E_{-j,-i} for every position pair."""
    N = scheme.N
    out = {}
    for p in range(N):
        for q in range(N):
            t = theta(family, scheme, p, q)
            out[(p, q)] = e_gens[(p, q)] - e_gens[(scheme.neg(q), scheme.neg(p))].scale(t)
    return out


def g_restriction(m, family):
    """A gl(N) module (symmetric positions) viewed as an o(N)/sp(N) module."""
    scheme = IndexScheme(m.N, True)
    alg = O if family in ("plus", O) else SP
    gens = f_from_e(m.gens, alg, scheme)
    weights = [tuple(w[p] - w[scheme.neg(p)] for p in range(m.N)) for w in m.weights]
    return LieModule(alg, m.N, gens, weights, m.hw_index)


def defining_g(algebra, N):
    if algebra == SP and N % 2:
        raise ValueError("sp(N) needs N even")
    return g_restriction(vector_rep(N), algebra)


def _fock_ops(n):
    """Jordan-Wigner annihilators a_1..a_n on bitstrings (bit k-1 = mode k occupied)."""
    dim = 2 ** n
    ann = []
    for k in range(n):
        ent = {}
        for s in range(dim):
            if s >> k & 1:
                sign = -1 if bin(s & ((1 << k) - 1)).count("1") % 2 else 1
                ent[(s ^ (1 << k), s)] = sign
        ann.append(SparseMat.from_entries(dim, dim, ent))
    parity = SparseMat.from_entries(dim, dim, {(s, s): (-1) ** bin(s).count("1") for s in range(dim)})
    return ann, parity


def spin_fock(N):
    """o(N) acting on the 2^n-dim Fock space, rationally normalized."""
    n = N // 2
    scheme = IndexScheme(N, True)
    ann, parity = _fock_ops(n)
    cre = [a.transpose() for a in ann]
    dim = 2 ** n
    psi = {}
    for p in range(N):
        lab = scheme.label(p)
        if lab > 0:
            psi[p] = cre[lab - 1]
        elif lab < 0:
            psi[p] = ann[-lab - 1]
    # ψ_0 = P/√2 absorbed by the torus rescaling t = (1/√2, .., 1, .., √2)
    scale2 = {p: scheme.sgn(p) for p in range(N)}  # log_√2 of t_p
    gens = {}
    for p in range(N):
        for q in range(N):
            nq = scheme.neg(q)
            e = scale2[p] - scale2[q]  # t_p / t_q = √2^e
            if scheme.label(p) != 0 and scheme.label(q) != 0:
                x = psi[p] @ psi[nq]
                if p == q:
                    x = x - SparseMat.identity(dim, HALF)
                k = rat(2) ** (e // 2)
            elif scheme.label(p) == 0 and scheme.label(q) == 0:
                x, k = SparseMat.zero(dim), ONE
            elif scheme.label(q) == 0:
                x = psi[p] @ parity  # √2 X_{p0}
                k = rat(2) ** ((e - 1) // 2)
            else:
                x = parity @ psi[nq]  # √2 X_{0q}
                k = rat(2) ** ((e - 1) // 2)
            gens[(p, q)] = x.scale(k)
    weights = []
    for s in range(dim):
        w = []
        for p in range(N):
            lab = scheme.label(p)
            occ = (s >> (abs(lab) - 1) & 1) if lab else 0
            w.append(ZERO if lab == 0 else (occ - HALF) * (1 if lab > 0 else -1))
        weights.append(tuple(w))
    return LieModule(O, N, gens, weights)


def build_spin(N):
    if N < 2:
        raise ValueError("spin module needs N >= 2")
    fock = spin_fock(N)
    vac = tuple(ONE if i == 0 else ZERO for i in range(fock.dim))
    return cyclic_submodule(fock, vac)


def build_g_rank1(algebra, mu1):
    mu1 = rat(mu1)
    if algebra == O + "2":
        gens = {(0, 0): SparseMat.identity(1, -mu1), (1, 1): SparseMat.identity(1, mu1), (0, 1): SparseMat.zero(1), (1, 0): SparseMat.zero(1)}
        return LieModule(O, 2, gens, [(-mu1, mu1)])
    if algebra == SP + "2":
        if not is_nonneg_int(-mu1):
            raise ValueError("sp(2): -mu1 must be a nonnegative integer")
        return g_restriction(build_gl2(-mu1, 0), SP)
    if algebra == O + "3":
        if not is_nonneg_int(-2 * mu1):
            raise ValueError("o(3): -2 mu1 must be a nonnegative integer")
        m = int(-2 * mu1)
        if m == 0:
            gens = {(p, q): SparseMat.zero(1) for p in range(3) for q in range(3)}
            return LieModule(O, 3, gens, [(ZERO, ZERO, ZERO)])
        big = tensor_power(build_spin(3), m, algebra=O)
        top = tuple(ONE if i == 0 else ZERO for i in range(big.dim))
        return cyclic_submodule(big, top)
    raise ValueError(f"unknown rank-one algebra {algebra!r}")


# ---------------------------------------------------------------- oracles


def gl_commutator_defects(m):
    """Pairs where [E_ij, E_kl] != δ_kj E_il - δ_il E_kj."""
    bad = []
    N, idx = m.N, range(m.N)
    for i, j, k, l in product(idx, idx, idx, idx):
        lhs = m.gens[(i, j)].commutator(m.gens[(k, l)])
        rhs = SparseMat.zero(m.dim)
        if k == j:
            rhs = rhs + m.gens[(i, l)]
        if i == l:
            rhs = rhs - m.gens[(k, j)]
        if lhs != rhs:
            bad.append((i, j, k, l))
    return bad


def g_structure_constants(algebra, N):
    """[F_a, F_b] = sum_c k_c F_c from the defining representation."""
    d = defining_g(algebra, N)
    keys = sorted(d.gens)
    cols = [tuple(v for row in d.gens[k].to_dense() for v in row) for k in keys]
    A = SparseMat.from_columns(cols, N * N)
    consts = {}
    for a in keys:
        for b in keys:
            c = d.gens[a].commutator(d.gens[b])
            x = solve(A, tuple(v for row in c.to_dense() for v in row))
            consts[(a, b)] = {k: v for k, v in zip(keys, x) if v}
    return consts


def g_commutator_defects(m):
    consts = g_structure_constants(m.algebra, m.N)
    bad = []
    for (a, b), comb in consts.items():
        rhs = SparseMat.zero(m.dim)
        for k, v in comb.items():
            rhs = rhs + m.gens[k].scale(v)
        if m.gens[a].commutator(m.gens[b]) != rhs:
            bad.append((a, b))
    return bad


def g_antisymmetry_defects(m):
    scheme = IndexScheme(m.N, True)
    bad = []
    for (p, q), f in m.gens.items():
        t = theta(m.algebra, scheme, p, q)
        if not (f + m.gens[(scheme.neg(q), scheme.neg(p))].scale(t)).is_zero():
            bad.append((p, q))
    return bad
