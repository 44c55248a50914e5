"""Kernels, ranks, reduced subspaces, operator closures and rational interpolation."""

from math import lcm

from .poly import PolyU, RatFuncU
from .rat import ONE, ZERO, rat, rat_str
from .sparse import SparseMat


def _integer_rows(m):
    """Dense integer rows, each row scaled by the lcm of its denominators."""
    rows = []
    for r in range(m.rows):
        row = m.data.get(r)
        if not row:
            continue
        den = lcm(*(int(v.denominator) for v in row.values()))
        dense = [0] * m.cols
        for c, v in row.items():
            dense[c] = int(v.numerator) * (den // int(v.denominator))
        rows.append(dense)
    return rows


def bareiss_echelon(m):
    """Fraction-free row echelon form of an integer copy of m.

    Pivot row choice: smallest bit-size pivot, then lowest row index.
    Returns (echelon rows, pivot columns).
    """
    a = _integer_rows(m)
    n_rows, n_cols = len(a), m.cols
    pivots = []
    prev = 1
    r = 0
    for c in range(n_cols):
        if r >= n_rows:
            break
        cand = [i for i in range(r, n_rows) if a[i][c]]
        if not cand:
            continue
        best = min(cand, key=lambda i: (abs(a[i][c]).bit_length(), i))
        a[r], a[best] = a[best], a[r]
        p = a[r][c]
        for i in range(r + 1, n_rows):
            ai = a[i]
            f = ai[c]
            ar = a[r]
            for j in range(c, n_cols):
                ai[j] = (p * ai[j] - f * ar[j]) // prev
        prev = p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank(m):
    return len(bareiss_echelon(m)[1])


def kernel(m):
    """Basis of {v : m v = 0}, one vector per free column, ordered by free column."""
    ech, pivots = bareiss_echelon(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for i in range(len(pivots) - 1, -1, -1):
            row = ech[i]
            pc = pivots[i]
            s = ZERO
            for j in range(pc + 1, m.cols):
                if row[j] and v[j]:
                    s += row[j] * v[j]
            v[pc] = -s / row[pc]
        basis.append(tuple(v))
    return basis


def stack(mats):
    if not mats:
        raise ValueError("nothing to stack")
    cols = mats[0].cols
    data = {}
    off = 0
    for m in mats:
        if m.cols != cols:
            raise ValueError("column count mismatch")
        for r, row in m.data.items():
            data[off + r] = dict(row)
        off += m.rows
    return SparseMat(off, cols, data)


class Subspace:
    """Row space in reduced row echelon form (canonical)."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        ech = _Echelon(ambient_dim)
        for v in vectors:
            ech.insert(v)
        self.basis, self.pivots = ech.reduced()

    @property
    def dim(self):
        return len(self.basis)

    def reduce(self, v):
        v = list(v)
        for b, p in zip(self.basis, self.pivots):
            if v[p]:
                f = v[p]
                for j, x in enumerate(b):
                    if x:
                        v[j] -= f * x
        return tuple(v)

    def contains(self, v):
        return not any(self.reduce(v))

    def coordinates(self, v):
        """Coefficients of v in the basis; v must lie in the subspace."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return tuple(v[p] for p in self.pivots)

    def is_invariant(self, op):
        return all(self.contains(op.apply(b)) for b in self.basis)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def to_json(self):
        return {"ambient_dim": self.ambient_dim, "basis": [[rat_str(x) for x in b] for b in self.basis]}

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.ambient_dim})"


class _Echelon:
    """Incremental echelon basis keyed by pivot, leading entry 1."""

    def __init__(self, n):
        self.n = n
        self.rows = {}

    def reduce(self, v):
        v = list(v)
        for p in sorted(self.rows):
            if v[p]:
                f = v[p]
                for j, x in self.rows[p].items():
                    v[j] -= f * x
        return v

    def insert(self, v):
        """Add v; return its reduced form if new, else None."""
        if len(v) != self.n:
            raise ValueError(f"vector length {len(v)} != {self.n}")
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return None
        inv = ONE / w[p]
        self.rows[p] = {j: x * inv for j, x in enumerate(w) if x}
        return tuple(w)

    def reduced(self):
        piv = sorted(self.rows)
        rows = {p: dict(self.rows[p]) for p in piv}
        for i in range(len(piv) - 1, -1, -1):
            p = piv[i]
            for q in piv[:i]:
                f = rows[q].get(p)
                if f:
                    for j, x in rows[p].items():
                        rows[q][j] = rows[q].get(j, ZERO) - f * x
        basis = []
        for p in piv:
            v = [ZERO] * self.n
            for j, x in rows[p].items():
                v[j] = x
            basis.append(tuple(v))
        return tuple(basis), tuple(piv)


def subspace_closure(seeds, operators, ambient_dim=None):
    """Smallest subspace containing seeds and invariant under every operator."""
    ops = list(operators)
    if ambient_dim is None:
        if seeds:
            ambient_dim = len(seeds[0])
        elif ops:
            ambient_dim = ops[0].cols
        else:
            ambient_dim = 0
    for op in ops:
        if op.rows != ambient_dim or op.cols != ambient_dim:
            raise ValueError("operator dimension mismatch")
    ech = _Echelon(ambient_dim)
    queue = []
    for s in seeds:
        w = ech.insert(s)
        if w is not None:
            queue.append(w)
    while queue:
        v = queue.pop(0)
        for op in ops:
            w = ech.insert(op.apply(v))
            if w is not None:
                queue.append(w)
    sub = Subspace.__new__(Subspace)
    sub.ambient_dim = ambient_dim
    sub.basis, sub.pivots = ech.reduced()
    return sub


def intersect_kernels(mats, ncols=None):
    mats = [m for m in mats]
    if not mats:
        n = ncols or 0
        return Subspace(n, [tuple(ONE if i == j else ZERO for i in range(n)) for j in range(n)])
    return Subspace(mats[0].cols, kernel(stack(mats)))


def solve(a, b):
    """One solution x of a x = b (a SparseMat, b tuple), or None if inconsistent."""
    aug = SparseMat(a.rows, a.cols + 1, {r: dict(a.data.get(r, {})) for r in range(a.rows)})
    for r, v in enumerate(b):
        if v:
            aug.data.setdefault(r, {})[a.cols] = rat(v)
    ech, pivots = bareiss_echelon(aug)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [ZERO] * a.cols
    for i in range(len(pivots) - 1, -1, -1):
        row, pc = ech[i], pivots[i]
        s = rat(row[a.cols])
        for j in range(pc + 1, a.cols):
            if row[j] and x[j]:
                s -= row[j] * x[j]
        x[pc] = s / row[pc]
    return tuple(x)


class InterpolationError(ValueError):
    pass


def interpolate_ratfunc(samples, num_deg, den_deg):
    """Reduced num/den through all (x, v) samples with deg num <= num_deg, deg den <= den_deg."""
    samples = [(rat(x), rat(v)) for x, v in samples]
    if len(samples) < num_deg + den_deg + 2:
        raise InterpolationError("not enough samples for the degree bounds")
    if len({x for x, _ in samples}) != len(samples):
        raise InterpolationError("sample points must be distinct")
    pole_hit = False
    for e in range(den_deg + 1):
        # unknowns: num_0..num_{num_deg}, den_0..den_{e-1}; den_e = 1
        nvar = num_deg + 1 + e
        entries, rhs = {}, []
        for r, (x, v) in enumerate(samples):
            p = ONE
            for k in range(num_deg + 1):
                entries[(r, k)] = p
                p *= x
            p = ONE
            for k in range(e):
                entries[(r, num_deg + 1 + k)] = -v * p
                p *= x
            rhs.append(v * x ** e)
        sol = solve(SparseMat.from_entries(len(samples), nvar, entries), rhs)
        if sol is None:
            continue
        num = PolyU(sol[: num_deg + 1])
        den = PolyU(tuple(sol[num_deg + 1 :]) + (ONE,))
        if any(den(x) == 0 for x, _ in samples):
            pole_hit = True
            continue
        f = RatFuncU(num, den)
        if all(f(x) == v for x, v in samples):
            return f
    if pole_hit:
        raise InterpolationError("a sample point is a pole of every candidate")
    raise InterpolationError("no rational function of the given degrees fits the samples")


def inverse(m):
    """Exact inverse of a square SparseMat, or None if singular (Gauss-Jordan)."""
    n = m.rows
    if m.cols != n:
        raise ValueError("inverse of a non-square matrix")
    a = [[m.get(r, c) for c in range(n)] + [ONE if r == c else ZERO for c in range(n)] for r in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = ONE / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            f = a[r][col]
            if r != col and f:
                ar, ac = a[r], a[col]
                for j in range(col, 2 * n):
                    if ac[j]:
                        ar[j] -= f * ac[j]
    return SparseMat.from_entries(n, n, {(r, c): a[r][n + c] for r in range(n) for c in range(n) if a[r][n + c]})
