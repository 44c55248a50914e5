"""Row-sparse exact matrices. Vectors are plain tuples of mpq."""

from .rat import ZERO, rat, rat_str


class SparseMat:
    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows, cols, data=None):
        self.rows = rows
        self.cols = cols
        clean = {}
        if data:
            for r, row in data.items():
                kept = {c: v for c, v in row.items() if v != 0}
                if kept:
                    clean[r] = kept
        self.data = clean

    # constructors
    @classmethod
    def zero(cls, rows, cols=None):
        return cls(rows, rows if cols is None else cols)

    @classmethod
    def identity(cls, n, scale=1):
        s = rat(scale)
        return cls(n, n, {i: {i: s} for i in range(n)} if s else None)

    @classmethod
    def from_entries(cls, rows, cols, entries):
        data = {}
        for (r, c), v in entries.items():
            v = rat(v)
            if v:
                data.setdefault(r, {})[c] = data.get(r, {}).get(c, ZERO) + v
        return cls(rows, cols, data)

    @classmethod
    def from_dense(cls, m):
        rows = len(m)
        cols = len(m[0]) if rows else 0
        return cls(rows, cols, {r: {c: rat(v) for c, v in enumerate(row) if v} for r, row in enumerate(m)})

    @classmethod
    def from_columns(cls, vectors, rows):
        data = {}
        for c, v in enumerate(vectors):
            for r, a in enumerate(v):
                if a:
                    data.setdefault(r, {})[c] = a
        return cls(rows, len(vectors), data)

    # access
    def get(self, r, c):
        return self.data.get(r, {}).get(c, ZERO)

    def entries(self):
        for r in sorted(self.data):
            row = self.data[r]
            for c in sorted(row):
                yield r, c, row[c]

    def nnz(self):
        return sum(len(row) for row in self.data.values())

    def is_zero(self):
        return not self.data

    def to_dense(self):
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for r, c, v in self.entries():
            out[r][c] = v
        return out

    def is_diagonal(self):
        return all(set(row) == {r} for r, row in self.data.items())

    def diagonal(self):
        return tuple(self.get(i, i) for i in range(min(self.rows, self.cols)))

    def scalar_value(self):
        """c if self == c*I, else None."""
        if self.rows != self.cols:
            return None
        if not self.data:
            return ZERO
        if len(self.data) != self.rows or not self.is_diagonal():
            return None
        vals = {row[r] for r, row in self.data.items()}
        return vals.pop() if len(vals) == 1 else None

    # arithmetic
    def __eq__(self, other):
        return isinstance(other, SparseMat) and (self.rows, self.cols) == (other.rows, other.cols) and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries())))

    def _check_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other):
        self._check_shape(other)
        data = {r: dict(row) for r, row in self.data.items()}
        for r, row in other.data.items():
            tgt = data.setdefault(r, {})
            for c, v in row.items():
                tgt[c] = tgt.get(c, ZERO) + v
        return SparseMat(self.rows, self.cols, data)

    def __neg__(self):
        return SparseMat(self.rows, self.cols, {r: {c: -v for c, v in row.items()} for r, row in self.data.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = rat(k)
        if not k:
            return SparseMat(self.rows, self.cols)
        return SparseMat(self.rows, self.cols, {r: {c: k * v for c, v in row.items()} for r, row in self.data.items()})

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        odata = other.data
        data = {}
        for r, row in self.data.items():
            acc = {}
            for k, a in row.items():
                orow = odata.get(k)
                if orow:
                    for c, b in orow.items():
                        acc[c] = acc.get(c, ZERO) + a * b
            data[r] = acc
        return SparseMat(self.rows, other.cols, data)

    def apply(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch in apply")
        out = [ZERO] * self.rows
        for r, row in self.data.items():
            s = ZERO
            for c, a in row.items():
                x = v[c]
                if x:
                    s += a * x
            out[r] = s
        return tuple(out)

    def transpose(self):
        data = {}
        for r, c, v in self.entries():
            data.setdefault(c, {})[r] = v
        return SparseMat(self.cols, self.rows, data)

    def kron(self, other):
        data = {}
        for r1, row1 in self.data.items():
            for c1, a in row1.items():
                for r2, row2 in other.data.items():
                    tgt = data.setdefault(r1 * other.rows + r2, {})
                    for c2, b in row2.items():
                        tgt[c1 * other.cols + c2] = a * b
        return SparseMat(self.rows * other.rows, self.cols * other.cols, data)

    def commutator(self, other):
        return self @ other - other @ self

    def submatrix(self, rows, cols):
        cpos = {c: j for j, c in enumerate(cols)}
        data = {}
        for i, r in enumerate(rows):
            row = self.data.get(r)
            if row:
                sel = {cpos[c]: v for c, v in row.items() if c in cpos}
                if sel:
                    data[i] = sel
        return SparseMat(len(rows), len(cols), data)

    def to_json(self):
        return {"rows": self.rows, "cols": self.cols, "entries": [[r, c, rat_str(v)] for r, c, v in self.entries()]}

    @classmethod
    def from_json(cls, d):
        return cls.from_entries(d["rows"], d["cols"], {(r, c): rat(v) for r, c, v in d["entries"]})

    def __repr__(self):
        return f"SparseMat({self.rows}x{self.cols}, nnz={self.nnz()})"


def vec_zero(n):
    return (ZERO,) * n


def unit(n, i):
    v = [ZERO] * n
    v[i] = rat(1)
    return tuple(v)


def vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(k, a):
    k = rat(k)
    return tuple(k * x for x in a)


def vec_is_zero(a):
    return not any(a)


def proportionality(v, w):
    """c with w == c*v (v nonzero), else None."""
    idx = next(i for i, x in enumerate(v) if x)
    c = w[idx] / v[idx]
    if all(c * x == y for x, y in zip(v, w)):
        return c
    return None
