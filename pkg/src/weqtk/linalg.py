"""Exact linear algebra over prime fields and the rationals.

Matrices are tuples of row tuples; entries are ints in 0..p-1 for GF(p)
and ``fractions.Fraction`` for the rationals.  Everything here is exact:
no floating point is ever used, so rank decisions are always correct.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import SearchBudgetExceeded


@dataclass(frozen=True)
class FieldSpec:
    """Either GF(p) for a prime p, or exact rationals (p is None)."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if self.p < 2 or any(self.p % d == 0 for d in range(2, int(self.p ** 0.5) + 1)):
                raise ValueError(f"modulus {self.p} is not prime")

    @property
    def is_prime(self):
        return self.p is not None

    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def add(self, a, b):
        return (a + b) % self.p if self.is_prime else a + b

    def sub(self, a, b):
        return (a - b) % self.p if self.is_prime else a - b

    def mul(self, a, b):
        return (a * b) % self.p if self.is_prime else a * b

    def neg(self, a):
        return (-a) % self.p if self.is_prime else -a

    def inv(self, a):
        if self.is_prime:
            return pow(a, self.p - 2, self.p)
        return Fraction(1) / a

    def coerce(self, a):
        return a % self.p if self.is_prime else Fraction(a)

    def elements(self):
        """All field elements in canonical order.  Prime fields only."""
        if not self.is_prime:
            raise SearchBudgetExceeded("cannot enumerate the rationals")
        return range(self.p)


GF2 = FieldSpec(2)
GF3 = FieldSpec(3)
QQ = FieldSpec(None)


def zeros(field, rows, cols):
    z = field.zero()
    return tuple(tuple(z for _ in range(cols)) for _ in range(rows))


def eye(field, n):
    z, o = field.zero(), field.one()
    return tuple(tuple(o if i == j else z for j in range(n)) for i in range(n))


def shape(m):
    return (len(m), len(m[0]) if m else 0)


def mat(field, rows):
    return tuple(tuple(field.coerce(x) for x in row) for row in rows)


def mat_mul(field, a, b):
    ra, ca = shape(a)
    rb, cb = shape(b)
    if ra == 0:
        return ()
    if ca != rb:
        raise ValueError(f"shape mismatch {shape(a)} * {shape(b)}")
    out = []
    for i in range(ra):
        row = []
        for j in range(cb):
            acc = field.zero()
            for k in range(ca):
                acc = field.add(acc, field.mul(a[i][k], b[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_mul_shaped(field, a, b, rows, cols):
    """Product with an explicit result shape; degenerate factors (whose
    tuple representation loses a dimension) yield the zero matrix."""
    if len(a) == 0 or len(b) == 0 or len(b[0]) == 0 or len(a[0]) == 0:
        return zeros(field, rows, cols)
    return mat_mul(field, a, b)


def mat_add(field, a, b):
    return tuple(tuple(field.add(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(field, a, b):
    return tuple(tuple(field.sub(x, y) for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_neg(field, a):
    return tuple(tuple(field.neg(x) for x in row) for row in a)


def mat_vec(field, a, v):
    out = []
    for row in a:
        acc = field.zero()
        for x, y in zip(row, v):
            acc = field.add(acc, field.mul(x, y))
        out.append(acc)
    return tuple(out)


def vec_add(field, u, v):
    return tuple(field.add(x, y) for x, y in zip(u, v))


def vec_sub(field, u, v):
    return tuple(field.sub(x, y) for x, y in zip(u, v))


def is_zero(m):
    return all(x == 0 for row in m for x in row)


def rref(field, m):
    """Reduced row-echelon form.

    Returns (R, pivot_cols).  Deterministic: pivots are chosen top-down,
    first nonzero entry in column order.
    """
    rows = [list(r) for r in m]
    nr, nc = len(rows), len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        sel = None
        for i in range(r, nr):
            if rows[i][c] != 0:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        inv = field.inv(rows[r][c])
        rows[r] = [field.mul(inv, x) for x in rows[r]]
        for i in range(nr):
            if i != r and rows[i][c] != 0:
                factor = rows[i][c]
                rows[i] = [field.sub(x, field.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), tuple(pivots)


def rank(field, m):
    if not m or not m[0]:
        return 0
    return len(rref(field, m)[1])


def kernel_basis(field, m):
    """Basis of the null space of ``m`` (as row vectors), in the canonical
    order induced by ascending free columns of the RREF."""
    nr, nc = shape(m)
    if nc == 0:
        return []
    if nr == 0:
        return [tuple(eye(field, nc)[i]) for i in range(nc)]
    red, pivots = rref(field, m)
    pivot_set = set(pivots)
    free = [c for c in range(nc) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [field.zero()] * nc
        v[fc] = field.one()
        for r, pc in enumerate(pivots):
            v[pc] = field.neg(red[r][fc])
        basis.append(tuple(v))
    return basis


def solve(field, m, b):
    """One solution of m x = b, or None.  Deterministic: free variables are
    set to zero."""
    nr, nc = shape(m)
    if nc == 0:
        return () if all(x == 0 for x in b) else None
    aug = tuple(row + (bv,) for row, bv in zip(m, b))
    red, pivots = rref(field, aug)
    for r in range(nr):
        if all(red[r][c] == 0 for c in range(nc)) and red[r][nc] != 0:
            return None
    x = [field.zero()] * nc
    for r, pc in enumerate(pivots):
        if pc == nc:
            return None
        x[pc] = red[r][nc]
    return tuple(x)


def solvable(field, m, b):
    return solve(field, m, b) is not None


def enumerate_span(field, basis, offset=None, budget=None):
    """All vectors offset + span(basis) in lexicographic coefficient order.

    Prime fields only; raises SearchBudgetExceeded if the subspace has more
    than ``budget`` points.
    """
    dim = len(basis)
    if basis:
        n = len(basis[0])
    elif offset is not None:
        n = len(offset)
    else:
        n = 0
    if offset is None:
        offset = tuple(field.zero() for _ in range(n))
    if not field.is_prime:
        if dim == 0:
            yield offset
            return
        raise SearchBudgetExceeded("cannot enumerate an infinite subspace")
    total = field.p ** dim
    if budget is not None and total > budget:
        raise SearchBudgetExceeded(f"subspace has {total} points, budget {budget}")
    for coeffs in itertools.product(field.elements(), repeat=dim):
        v = list(offset)
        for c, bv in zip(coeffs, basis):
            if c:
                for i in range(n):
                    v[i] = field.add(v[i], field.mul(c, bv[i]))
        yield tuple(v)


def affine_solutions(field, m, b, budget=None):
    """All solutions of m x = b in canonical order (empty if none)."""
    part = solve(field, m, b)
    if part is None:
        return
    yield from enumerate_span(field, kernel_basis(field, m), part, budget)
