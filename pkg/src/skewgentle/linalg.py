"""Exact dense and sparse Gaussian elimination over an arbitrary Field.

Vectors are lists of field elements, matrices are lists of row vectors.
The row convention is used throughout the package: a linear map is a
matrix M acting on row vectors as v |-> v * M, so composition of maps is
matrix multiplication in reading order.
"""

from __future__ import annotations

from .fields import Field


def zeros(field: Field, rows: int, cols: int):
    z = field.zero
    return [[z] * cols for _ in range(rows)]


def identity(field: Field, n: int):
    m = zeros(field, n, n)
    for i in range(n):
        m[i][i] = field.one
    return m


def vec_add(field: Field, u, v):
    return [field.add(a, b) for a, b in zip(u, v)]


def vec_scale(field: Field, c, v):
    return [field.mul(c, a) for a in v]

def vec_is_zero(field: Field, v) -> bool:
    z = field.zero
    return all(a == z for a in v)


def vec_mat(field: Field, v, m):
    """Row vector times matrix."""
    if not m:
        return []
    cols = len(m[0])
    out = [field.zero] * cols
    for i, c in enumerate(v):
        if c == field.zero:
            continue
        row = m[i]
        for j in range(cols):
            a = row[j]
            if a != field.zero:
                out[j] = field.add(out[j], field.mul(c, a))
    return out


def mat_mul(field: Field, a, b):
    return [vec_mat(field, row, b) for row in a]


def mat_add(field: Field, a, b):
    return [vec_add(field, u, v) for u, v in zip(a, b)]


def mat_is_zero(field: Field, a) -> bool:
    return all(vec_is_zero(field, row) for row in a)


class Subspace:
    """Row space accumulated in reduced echelon form.

    Supports membership tests, residual reduction and (optionally)
    coordinates of reduced vectors with respect to the added generators.
    """

    def __init__(self, field: Field, ncols: int, track_coords: bool = False):
        self.field = field
        self.ncols = ncols
        self.rows: list[list] = []
        self.pivots: list[int] = []
        self.track = track_coords
        self.coords: list[list] = []  # row i of rref = coords[i] . generators
        self._ngens = 0

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec):
        """Return the residual of vec modulo the span (a fresh list)."""
        f = self.field
        v = list(vec)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c != f.zero:
                for j in range(self.ncols):
                    a = row[j]
                    if a != f.zero:
                        v[j] = f.sub(v[j], f.mul(c, a))
        return v

    def reduce_with_coords(self, vec):
        """Residual plus generator coordinates of the reduced part."""
        f = self.field
        v = list(vec)
        comb = [f.zero] * self._ngens
        for i, (row, p) in enumerate(zip(self.rows, self.pivots)):
            c = v[p]
            if c != f.zero:
                for j in range(self.ncols):
                    a = row[j]
                    if a != f.zero:
                        v[j] = f.sub(v[j], f.mul(c, a))
                crow = self.coords[i]
                for j in range(len(crow)):
                    a = crow[j]
                    if a != f.zero:
                        comb[j] = f.add(comb[j], f.mul(c, a))
        return v, comb

    def contains(self, vec) -> bool:
        return vec_is_zero(self.field, self.reduce(vec))

    def add(self, vec) -> bool:
        """Add a vector to the span; True when the dimension grew."""
        f = self.field
        if self.track:
            v, comb = self.reduce_with_coords(vec)
            gen_coord = [f.zero] * self._ngens + [f.one]
            comb = comb + [f.zero]
            self._ngens += 1
            for row in self.coords:
                row.append(f.zero)
        else:
            v = self.reduce(vec)
        p = next((j for j in range(self.ncols) if v[j] != f.zero), None)
        if p is None:
            return False
        c = f.inv(v[p])
        v = [f.mul(c, a) for a in v]
        if self.track:
            # new rref row = (gen - comb) scaled; keep its generator combo
            newc = [f.mul(c, f.sub(g, h)) for g, h in zip(gen_coord, comb)]
        # back-eliminate to keep reduced form
        for i, row in enumerate(self.rows):
            c2 = row[p]
            if c2 != f.zero:
                for j in range(self.ncols):
                    a = v[j]
                    if a != f.zero:
                        row[j] = f.sub(row[j], f.mul(c2, a))
                if self.track:
                    for j in range(len(newc)):
                        a = newc[j]
                        if a != f.zero:
                            self.coords[i][j] = f.sub(self.coords[i][j], f.mul(c2, a))
        self.rows.append(v)
        self.pivots.append(p)
        if self.track:
            self.coords.append(newc)
        return True

    def add_all(self, vecs) -> int:
        return sum(1 for v in vecs if self.add(v))


def rank(field: Field, rows) -> int:
    if not rows:
        return 0
    sp = Subspace(field, len(rows[0]))
    sp.add_all(rows)
    return sp.dim


def left_nullspace(field: Field, m):
    """Basis of {v : v * m = 0} for an r x c matrix m, as rows of length r."""
    f = field
    r = len(m)
    if r == 0:
        return []
    c = len(m[0])
    aug = [list(m[i]) + [f.one if j == i else f.zero for j in range(r)] for i in range(r)]
    pivots = {}
    prow = 0
    for col in range(c):
        sel = next((i for i in range(prow, r) if aug[i][col] != f.zero), None)
        if sel is None:
            continue
        aug[prow], aug[sel] = aug[sel], aug[prow]
        inv = f.inv(aug[prow][col])
        aug[prow] = [f.mul(inv, a) for a in aug[prow]]
        for i in range(r):
            if i != prow and aug[i][col] != f.zero:
                coef = aug[i][col]
                aug[i] = [f.sub(a, f.mul(coef, b)) for a, b in zip(aug[i], aug[prow])]
        pivots[col] = prow
        prow += 1
        if prow == r:
            break
    out = []
    z = f.zero
    for i in range(prow, r):
        if all(a == z for a in aug[i][:c]):
            out.append(aug[i][c:])
    # rows below prow all have zero matrix part by construction
    return out


class SparseSubspace:
    """Row space of sparse vectors (dict col -> coeff), echelon by min pivot."""

    def __init__(self, field: Field):
        self.field = field
        self.rows: dict[int, dict] = {}  # pivot col -> normalized sparse row

    @property
    def dim(self) -> int:
        return len(self.rows)

    def add(self, vec: dict) -> bool:
        f = self.field
        v = {k: c for k, c in vec.items() if c != f.zero}
        while v:
            p = min(v)
            row = self.rows.get(p)
            if row is None:
                c = f.inv(v[p])
                self.rows[p] = {k: f.mul(c, a) for k, a in v.items()}
                return True
            c = v[p]
            for k, a in row.items():
                nv = f.sub(v.get(k, f.zero), f.mul(c, a))
                if nv == f.zero:
                    v.pop(k, None)
                else:
                    v[k] = nv
        return False
