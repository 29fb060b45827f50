"""Integer lattices, skew forms, and piecewise-linear mutation maps.

Vectors are tuples of ints and matrices are tuples of row tuples.  All
arithmetic is exact: ints where possible, Fractions for inverses.
"""

from __future__ import annotations

import math
from fractions import Fraction

__all__ = [
    "pair",
    "vec_add",
    "vec_sub",
    "vec_neg",
    "vec_scale",
    "is_zero_vec",
    "gcd_vec",
    "is_primitive",
    "primitive_part",
    "sign_normalize",
    "mat_identity",
    "mat_transpose",
    "mat_vec",
    "mat_mul",
    "mat_det",
    "mat_inv",
    "mat_inv_int",
    "complete_to_basis",
    "SkewForm",
    "LatticeMap",
    "sl2_change_of_basis",
    "reflect",
    "pl_mutate",
    "pl_mutate_inv",
]


def pair(m, v):
    """Dual pairing <m, v> = sum_i m_i v_i."""
    if len(m) != len(v):
        raise ValueError(f"rank mismatch: {len(m)} vs {len(v)}")
    return sum(a * b for a, b in zip(m, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_neg(v):
    return tuple(-a for a in v)


def vec_scale(c, v):
    return tuple(c * a for a in v)


def is_zero_vec(v):
    return all(a == 0 for a in v)


def gcd_vec(v):
    g = 0
    for a in v:
        g = math.gcd(g, a)
    return g


def is_primitive(v):
    """True when the coordinates of v have gcd 1."""
    return gcd_vec(v) == 1


def primitive_part(v):
    """Split v = g * v0 with g > 0 and v0 primitive.  v must be nonzero."""
    g = gcd_vec(v)
    if g == 0:
        raise ValueError("the zero vector has no primitive part")
    return g, tuple(a // g for a in v)


def sign_normalize(v):
    """Flip the sign of v, if needed, so its first nonzero coordinate is > 0."""
    for a in v:
        if a > 0:
            return tuple(v)
        if a < 0:
            return vec_neg(v)
    return tuple(v)


def _egcd(p, q):
    """Extended gcd: returns (g, s, t) with s*p + t*q = g > 0.

    The coefficient s is reduced to its smallest nonnegative representative
    modulo |q/g| so the output is deterministic.  (p, q) != (0, 0).
    """
    if p == 0 and q == 0:
        raise ValueError("gcd(0, 0) is undefined")
    old_r, r = p, q
    old_s, s = 1, 0
    while r != 0:
        quot = old_r // r
        old_r, r = r, old_r - quot * r
        old_s, s = s, old_s - quot * s
    g, s = old_r, old_s
    if g < 0:
        g, s = -g, -s
    if q != 0:
        s %= abs(q // g)
        t = (g - s * p) // q
    else:
        t = 0
    return g, s, t


# -- matrices ---------------------------------------------------------------


def mat_identity(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_transpose(m):
    return tuple(zip(*m))


def mat_vec(m, v):
    if m and len(m[0]) != len(v):
        raise ValueError("matrix/vector shape mismatch")
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a, b):
    bt = mat_transpose(b)
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a
    )


def mat_det(m):
    """Exact determinant via fraction Gaussian elimination."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant requires a square matrix")
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return int(det) if det.denominator == 1 else det


def mat_inv(m):
    """Exact inverse as a matrix of Fractions."""
    n = len(m)
    a = [
        [Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
        for i, row in enumerate(m)
    ]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        a[col], a[piv] = a[piv], a[col]
        inv = 1 / a[col][col]
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


def mat_inv_int(m):
    """Inverse of a unimodular integer matrix, returned with int entries."""
    out = []
    for row in mat_inv(m):
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(x) for x in row))
    return tuple(out)


def complete_to_basis(v):
    """Rows of a unimodular integer matrix M with M @ v = e1.

    v must be primitive.  Built from iterated 2x2 row operations, so the
    result is deterministic.
    """
    n = len(v)
    if gcd_vec(v) != 1:
        raise ValueError(f"not a primitive vector: {v}")
    rows = [list(r) for r in mat_identity(n)]
    w = list(v)
    for i in range(1, n):
        if w[i] == 0:
            continue
        g, s, t = _egcd(w[0], w[i])
        p, q = w[0] // g, w[i] // g
        r0 = [s * a + t * b for a, b in zip(rows[0], rows[i])]
        ri = [-q * a + p * b for a, b in zip(rows[0], rows[i])]
        rows[0], rows[i] = r0, ri
        w[0], w[i] = g, 0
    if w[0] == -1:
        rows[0] = [-a for a in rows[0]]
        w[0] = 1
    if w[0] != 1:
        raise AssertionError("basis completion failed")
    return tuple(tuple(r) for r in rows)


# -- skew forms -------------------------------------------------------------


class SkewForm:
    """Integer skew-symmetric form on Z^r: omega(u, v) = u^T . matrix . v."""

    __slots__ = ("_matrix",)

    def __init__(self, matrix):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("form matrix must be square")
        for i in range(n):
            for j in range(n):
                if rows[i][j] != -rows[j][i]:
                    raise ValueError("form matrix must be skew-symmetric")
        self._matrix = rows

    @classmethod
    def rank2(cls, k):
        """The rank-2 form with omega(e1, e2) = k."""
        return cls(((0, k), (-k, 0)))

    @property
    def rank(self):
        return len(self._matrix)

    @property
    def matrix(self):
        return self._matrix

    @property
    def k(self):
        """omega(e1, e2), defined for rank-2 forms only."""
        if self.rank != 2:
            raise ValueError("k is only defined for rank-2 forms")
        return self._matrix[0][1]

    def omega(self, u, v):
        return pair(self.i_omega(u), v)

    def i_omega(self, u):
        """The covector m = u^T . matrix, so that <m, v> = omega(u, v)."""
        n = self.rank
        if len(u) != n:
            raise ValueError("rank mismatch")
        return tuple(
            sum(u[i] * self._matrix[i][j] for i in range(n)) for j in range(n)
        )

    def scaled(self, a):
        return SkewForm(tuple(tuple(a * x for x in row) for row in self._matrix))

    def __neg__(self):
        return self.scaled(-1)

    def is_degenerate(self):
        return mat_det(self._matrix) == 0

    def __eq__(self, other):
        return isinstance(other, SkewForm) and self._matrix == other._matrix

    def __hash__(self):
        return hash(self._matrix)

    def __repr__(self):
        if self.rank == 2:
            return f"SkewForm.rank2({self.k})"
        return f"SkewForm({self._matrix!r})"


class LatticeMap:
    """A linear map f with omega(u, v) = omega'(f u, f v) on basis vectors."""

    __slots__ = ("_matrix", "_source", "_target")

    def __init__(self, matrix, source_form, target_form):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(rows) != target_form.rank or any(
            len(r) != source_form.rank for r in rows
        ):
            raise ValueError("matrix shape does not match the forms")
        n = source_form.rank
        basis = mat_identity(n)
        images = [mat_vec(rows, e) for e in basis]
        for i in range(n):
            for j in range(i + 1, n):
                if source_form.omega(basis[i], basis[j]) != target_form.omega(
                    images[i], images[j]
                ):
                    raise ValueError("map does not intertwine the two forms")
        self._matrix = rows
        self._source = source_form
        self._target = target_form

    @property
    def matrix(self):
        return self._matrix

    @property
    def source_form(self):
        return self._source

    @property
    def target_form(self):
        return self._target

    def push_forward(self, v):
        return mat_vec(self._matrix, v)

    def __repr__(self):
        return f"LatticeMap({self._matrix!r})"


def sl2_change_of_basis(v1, v2, form):
    """The SL2 map sending v1 to e1 and v2 to e2.

    Requires det(v1 v2) = 1; determinant-one maps preserve every rank-2
    skew form, so the result is a LatticeMap from form to itself.
    """
    if len(v1) != 2 or len(v2) != 2:
        raise ValueError("sl2_change_of_basis is a rank-2 operation")
    a, b = v1
    c, d = v2
    if a * d - b * c != 1:
        raise ValueError("(v1, v2) must be a positively oriented basis")
    return LatticeMap(((d, -c), (-b, a)), form, form)


# -- piecewise-linear maps --------------------------------------------------


def reflect(form, u, v):
    """v  ->  v + omega(u, v) u."""
    return vec_add(v, vec_scale(form.omega(u, v), u))


def pl_mutate(form, u, v):
    """v  ->  v + max(0, omega(u, v)) u."""
    return vec_add(v, vec_scale(max(0, form.omega(u, v)), u))


def pl_mutate_inv(form, u, v):
    """Inverse of pl_mutate at the same u: v  ->  v - max(0, omega(u, v)) u."""
    return vec_sub(v, vec_scale(max(0, form.omega(u, v)), u))
