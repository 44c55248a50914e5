"""Singular vectors, highest weights, cyclic spans and irreducible quotients.

All operator spans use the numerator coefficient matrices of each entry
N(u)/d(u). Since d is a fixed nonzero polynomial per entry, N(u)v = 0 for all u
iff the entry kills v, and the span of the numerator coefficients equals the
span of the u^-r series coefficients together with the identity.
"""

from dataclasses import dataclass, field

import sympy

from .classify import FactoredSeries
from .exactlin import (
    ONE,
    ZERO,
    InterpolationError,
    PolyU,
    RatFuncU,
    SparseMat,
    Subspace,
    interpolate_ratfunc,
    intersect_kernels,
    linear_factors,
    proportionality,
    rat,
    rat_str,
    subspace_closure,
)
from .exactlin.sparse import vec_is_zero


def _entries(x):
    return x.s if hasattr(x, "s") else x.t


def _is_twisted(x):
    return hasattr(x, "s")


def upper_positions(x):
    return [(p, q) for p in range(x.N) for q in range(p + 1, x.N)]


def hw_positions(x):
    """Diagonal positions carrying the highest weight: all (Y) or labels >= 0 (twisted)."""
    if _is_twisted(x):
        return [p for p in range(x.N) if x.scheme.label(p) >= 0]
    return list(range(x.N))


def _nonzero(mats):
    seen, out = set(), []
    for m in mats:
        if m.is_zero():
            continue
        key = hash(m)
        if key in seen and any(m == o for o in out):
            continue
        seen.add(key)
        out.append(m)
    return out


def all_operators(x):
    return _nonzero(c for row in _entries(x) for m in row for c in m.num)


def coeff_bound(x):
    return 2 * x.degree_bound


# ------------------------------------------------------------------ weights


def weight_key(w):
    return tuple(rat_str(a) for a in w)


def weight_spaces(x):
    """Multiplicity of each weight; twisted modules report the labels > 0 components."""
    ws = x.weights()
    keep = [p for p in range(x.N) if x.scheme.label(p) > 0] if _is_twisted(x) else list(range(x.N))
    out = {}
    for w in ws:
        k = tuple(w[p] for p in keep)
        out[k] = out.get(k, 0) + 1
    return out


def _weight_blocks(x):
    blocks = {}
    for i, w in enumerate(x.weights()):
        blocks.setdefault(tuple(w), []).append(i)
    return blocks


def _sort_key(w):
    return tuple(-a for a in w)


# ------------------------------------------------------------------ singular vectors


def singular_space(x):
    ops = _nonzero(c for p, q in upper_positions(x) for c in _entries(x)[p][q].num)
    return intersect_kernels(ops, ncols=x.dim)


def _block_singular(x, idx, ops):
    """Singular space inside the weight space spanned by basis vectors idx."""
    sub = [m.submatrix(list(range(x.dim)), idx) for m in ops]
    k = intersect_kernels(sub, ncols=len(idx)) if sub else Subspace(len(idx), [tuple(ONE if i == j else ZERO for i in range(len(idx))) for j in range(len(idx))])
    out = []
    for b in k.basis:
        v = [ZERO] * x.dim
        for j, c in zip(idx, b):
            v[j] = c
        out.append(tuple(v))
    return out


def _restricted(op, basis, pivots):
    """Matrix of op on an invariant subspace, columns = coordinates of op(b_i)."""
    cols = []
    for b in basis:
        w = op.apply(b)
        cols.append([w[p] for p in pivots])
    return sympy.Matrix(len(basis), len(basis), lambda r, c: sympy.Rational(int(cols[c][r].numerator), int(cols[c][r].denominator)))


def _split_common(vectors, ops):
    """Common eigenvectors of commuting ops on span(vectors); rational eigenvalues only."""
    groups = [list(vectors)]
    for op in ops:
        new = []
        for g in groups:
            if len(g) == 1:
                new.append(g)
                continue
            sub = Subspace(len(g[0]), g)
            M = _restricted(op, sub.basis, sub.pivots)
            if M.is_diagonal() and len(set(M.diagonal())) == 1:
                new.append(list(sub.basis))
                continue
            for val, _, vecs in M.eigenvects():
                if not val.is_rational:
                    raise ValueError("irrational eigenvalue on the singular space")
                part = []
                for ev in vecs:
                    coeffs = [rat(int(sympy.fraction(c)[0]), int(sympy.fraction(c)[1])) for c in ev]
                    v = [ZERO] * len(g[0])
                    for c, b in zip(coeffs, sub.basis):
                        if c:
                            v = [a + c * bb for a, bb in zip(v, b)]
                    part.append(tuple(v))
                new.append(part)
        groups = new
    out = []
    for g in groups:
        out.extend(Subspace(len(g[0]), g).basis)
    return out


def singular_vectors(x):
    """Simultaneous eigenvectors spanning (the diagonalizable part of) the singular space.

    Returned as (weight, vector) pairs with the highest weight first.
    """
    ups = _nonzero(c for p, q in upper_positions(x) for c in _entries(x)[p][q].num)
    diag = _nonzero(c for p in hw_positions(x) for c in _entries(x)[p][p].num)
    out = []
    for w, idx in sorted(_weight_blocks(x).items(), key=lambda kv: _sort_key(kv[0])):
        vs = _block_singular(x, idx, ups)
        if not vs:
            continue
        if len(vs) > 1:
            vs = _split_common(vs, diag)
        out.extend((w, v) for v in vs)
    return out


def is_singular(x, v):
    return all(vec_is_zero(c.apply(v)) for p, q in upper_positions(x) for c in _entries(x)[p][q].num)


# ------------------------------------------------------------------ highest weight


@dataclass
class HighestWeight:
    family: str
    labels: list
    components: list

    def factored(self):
        out = []
        for f in self.components:
            fs = ratfunc_to_series(f)
            out.append(fs)
        return out

    def series(self):
        fs = self.factored()
        if any(f is None for f in fs):
            raise ValueError("highest weight does not split over Q")
        return fs

    def __eq__(self, other):
        return isinstance(other, HighestWeight) and self.labels == other.labels and self.components == other.components

    def to_json(self):
        comps = []
        for lab, f, fs in zip(self.labels, self.components, self.factored()):
            d = {"label": lab, "ratfunc": f.to_json()}
            if fs is not None:
                d["factored"] = fs.to_json()
            comps.append(d)
        return {"family": self.family, "components": comps}

    def __repr__(self):
        return f"HighestWeight({self.family}, {dict(zip(self.labels, self.components))})"


def ratfunc_to_series(f):
    """prod (1 + c u^-1)^e form of a rational function equal to 1 at infinity, or None."""
    if f.value_at_infinity() != 1:
        return None
    out = []
    for poly, sign in ((f.num, 1), (f.den, -1)):
        if poly.deg <= 0:
            continue
        roots = linear_factors(poly)
        if roots is None:
            return None
        out += [(c, sign * m) for c, m in roots.items()]
    return FactoredSeries(out)


def _eigen_exact(mat, v):
    """Eigenvalue rational function of the RatFuncMat mat on v, or None."""
    coeffs = []
    for c in mat.num:
        lam = proportionality(v, c.apply(v))
        if lam is None:
            return None
        coeffs.append(lam)
    return RatFuncU(PolyU(coeffs), mat.den_poly)


def extract_hw(x, v):
    """Eigenvalues of the diagonal entries on the singular vector v."""
    v = tuple(rat(a) for a in v)
    if vec_is_zero(v):
        raise ValueError("zero vector")
    if not is_singular(x, v):
        raise ValueError("vector is not singular")
    labels, comps = [], []
    for p in hw_positions(x):
        m = _entries(x)[p][p]
        exact = _eigen_exact(m, v)
        if exact is None:
            raise ValueError(f"vector is not an eigenvector of the diagonal entry at position {p}")
        comps.append(_interpolated(x, m, v, exact))
        labels.append(x.scheme.label(p) if x.scheme.symmetric else p + 1)
    fam = x.family if _is_twisted(x) else "Y"
    return HighestWeight(fam, labels, comps)


def _interpolated(x, m, v, exact):
    """Recover the eigenvalue by sampling and interpolation; must agree with exact."""
    nd, dd = max(m.num_deg, 0), m.den_deg
    need = nd + dd + 3
    poles = m.poles()
    samples, k = [], 1
    while len(samples) < need:
        u0 = rat(k)
        if u0 not in poles:
            lam = proportionality(v, m(u0).apply(v))
            if lam is None:
                raise ValueError("vector is not an eigenvector at a sample point")
            samples.append((u0, lam))
        k += 1
    try:
        f = interpolate_ratfunc(samples, nd, dd)
    except InterpolationError as e:
        raise ValueError(f"eigenvalue interpolation failed: {e}") from e
    if f != exact:
        raise AssertionError("interpolated eigenvalue disagrees with the coefficient computation")
    return f


# ------------------------------------------------------------------ spans and quotients


def cyclic_span(x, v):
    v = tuple(rat(a) for a in v)
    if vec_is_zero(v):
        raise ValueError("zero vector")
    return subspace_closure([v], all_operators(x), x.dim)


def is_irreducible(x):
    sing = singular_space(x)
    if sing.dim != 1:
        return False
    return cyclic_span(x, sing.basis[0]).dim == x.dim


def _rebuild(x, entries, prov, hw_index):
    from .twistact import SAction
    from .yangact import YAction

    if _is_twisted(x):
        return SAction(x.family, x.N, entries, prov, None, hw_index)
    return YAction(x.N, x.scheme, entries, prov, hw_index)


def restrict_to(x, sub):
    """Action on an invariant subspace in the RREF basis of sub."""
    basis, piv = sub.basis, sub.pivots
    n = sub.dim

    def f(op):
        cols = [op.apply(b) for b in basis]
        return SparseMat.from_entries(n, n, {(r, c): cols[c][p] for c in range(n) for r, p in enumerate(piv) if cols[c][p]})

    ent = [[m.map_coeffs(f, n, n) for m in row] for row in _entries(x)]
    return ent


def quotient_by(x, sub, hw_index):
    """Action on x / sub in the complement basis of unit vectors at non-pivot positions."""
    keep = [i for i in range(x.dim) if i not in set(sub.pivots)]
    pos = {j: k for k, j in enumerate(keep)}
    n = len(keep)

    def f(op):
        ents = {}
        for c, j in enumerate(keep):
            col = [ZERO] * x.dim
            col[j] = ONE
            w = sub.reduce(op.apply(tuple(col)))
            for i in keep:
                if w[i]:
                    ents[(pos[i], c)] = w[i]
        return SparseMat.from_entries(n, n, ents)

    ent = [[m.map_coeffs(f, n, n) for m in row] for row in _entries(x)]
    return ent, pos.get(hw_index)


def _coords_index(sub, v):
    """Index of the unique basis vector carrying v (v weight-homogeneous, 1-dim weight space)."""
    cs = sub.coordinates(v)
    nz = [i for i, c in enumerate(cs) if c]
    if len(nz) != 1:
        raise ValueError("highest weight vector is not a single basis vector of the span")
    return nz[0]


def irreducible_quotient(x, xi):
    """Irreducible quotient of the cyclic span of the singular eigenvector xi; returns (action, dim)."""
    xi = tuple(rat(a) for a in xi)
    hw = extract_hw(x, xi)  # raises unless xi is a singular eigenvector
    W = cyclic_span(x, xi)
    cur = _rebuild(x, restrict_to(x, W), {"cyclic_span": x.provenance}, _coords_index(W, xi))
    while True:
        v0 = tuple(ONE if i == cur.hw_index else ZERO for i in range(cur.dim))
        if is_irreducible(cur):
            break
        top = tuple(cur.weights()[cur.hw_index])
        lower = [v for w, v in _singular_by_weight(cur) if w != top]
        if not lower:
            raise AssertionError("reducible cyclic module without lower singular vectors")
        K = subspace_closure(lower, all_operators(cur), cur.dim)
        if K.contains(v0):
            raise AssertionError("submodule generated by lower singular vectors contains the generator")
        ent, idx = quotient_by(cur, K, cur.hw_index)
        cur = _rebuild(cur, ent, {"quotient": x.provenance}, idx)
    if extract_hw(cur, tuple(ONE if i == cur.hw_index else ZERO for i in range(cur.dim))) != hw:
        raise AssertionError("quotient changed the highest weight")
    return cur, cur.dim


def _singular_by_weight(x):
    ups = _nonzero(c for p, q in upper_positions(x) for c in _entries(x)[p][q].num)
    out = []
    for w, idx in _weight_blocks(x).items():
        out.extend((w, v) for v in _block_singular(x, idx, ups))
    return out


def hw_vector(x):
    """The singular eigenvector of top weight (the tracked hw basis vector when valid)."""
    e = tuple(ONE if i == x.hw_index else ZERO for i in range(x.dim))
    if is_singular(x, e):
        try:
            extract_hw(x, e)
            return e
        except ValueError:
            pass
    sv = singular_vectors(x)
    if not sv:
        raise AssertionError("no singular vector found")
    return sv[0][1]


# ------------------------------------------------------------------ report


@dataclass
class AnalysisReport:
    singular_dim: int
    hw: HighestWeight
    irreducible: bool
    quotient_dim: int
    weight_multiplicities: dict = field(default_factory=dict)
    dim: int = 0
    coeff_bound: int = 0

    def to_json(self):
        return {
            "dim": self.dim,
            "singular_dim": self.singular_dim,
            "irreducible": self.irreducible,
            "quotient_dim": self.quotient_dim,
            "hw": self.hw.to_json(),
            "coeff_bound": self.coeff_bound,
            "weight_multiplicities": [
                {"weight": list(weight_key(w)), "count": c} for w, c in sorted(self.weight_multiplicities.items(), key=lambda kv: _sort_key(kv[0]))
            ],
        }


def analyze(x):
    sing = singular_space(x)
    v = hw_vector(x)
    hw = extract_hw(x, v)
    irr = sing.dim == 1 and cyclic_span(x, v).dim == x.dim
    qdim = x.dim if irr else irreducible_quotient(x, v)[1]
    rep = AnalysisReport(sing.dim, hw, irr, qdim, weight_spaces(x), x.dim, coeff_bound(x))
    if rep.irreducible and not (rep.singular_dim == 1 and rep.quotient_dim == rep.dim):
        raise AssertionError("analysis report invariant violated")
    return rep
