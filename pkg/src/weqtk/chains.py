"""Bounded chain complexes over exact fields and quasi-isomorphism
detection, four ways.

Routes: the homology oracle (rank computations on representative bases),
the elementwise enumerative criterion over prime fields (a literal sweep
of the existential quantifiers, budgeted, never sampled), a rank-based
linear reformulation valid over any exact field, and arrow-category
injectivity against the sphere/disk/interval squares.

The interval complex here has ranks (1, 2, 1) in degrees (n-1, n, n+1)
with differentials x -> (x, -x) and (u, v) -> u + v: the two copies of
the disk include as the hemispheres and agree on the bottom sphere.  With
the bottom degree truncated away the square would force maps out of the
interval to take cycle values and would refute the identity of a disk, so
the bottom degree is load-bearing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import SearchBudgetExceeded, UnsupportedBackend
from .kernel import ComputableCategory, SquareMorphism
from .linalg import (affine_solutions, enumerate_span, eye, kernel_basis,
                     mat_mul_shaped, mat_vec, rank, rref, solve, vec_sub,
                     zeros)


def _kernel(field, m, ncols):
    """Kernel basis that survives 0-row matrices (whole space)."""
    if len(m) == 0:
        return [tuple(row) for row in eye(field, ncols)]
    return kernel_basis(field, m)


def _solutions(field, m, b, ncols, budget=None):
    """All x with m x = b, correct when m has no rows (whole space)."""
    if len(m) == 0:
        yield from enumerate_span(field, _kernel(field, m, ncols),
                                  tuple(field.zero() for _ in range(ncols)),
                                  budget)
        return
    yield from affine_solutions(field, m, b, budget)


@dataclass(frozen=True)
class BoundedComplex:
    """Finite-rank chain complex supported on degrees lo..lo+len(ranks)-1.

    ``diffs[i]`` is the differential into degree lo+i, i.e. a matrix of
    shape ranks[i] x ranks[i+1]; d lowers degree.  Ranks are trimmed so
    the first and last are nonzero (the zero complex stores no degrees).
    """

    field: FieldSpec
    lo: int
    ranks: tuple
    diffs: tuple

    @property
    def hi(self):
        return self.lo + len(self.ranks) - 1

    def rank(self, n):
        if self.lo <= n <= self.hi:
            return self.ranks[n - self.lo]
        return 0

    def d(self, n):
        """Differential X_n -> X_{n-1} (zero matrix outside the window)."""
        if self.lo < n <= self.hi:
            return self.diffs[n - self.lo - 1]
        return zeros(self.field, self.rank(n - 1), self.rank(n))

    def degrees(self, pad=0):
        return range(self.lo - pad, self.hi + 1 + pad)

    def validate(self):
        for i, m in enumerate(self.diffs):
            if len(m) != self.ranks[i]:
                raise ValueError("differential shape mismatch")
            if m and len(m[0]) != self.ranks[i + 1]:
                raise ValueError("differential shape mismatch")
        for n in self.degrees():
            prod = mat_mul_shaped(self.field, self.d(n), self.d(n + 1),
                                  self.rank(n - 1), self.rank(n + 1))
            if any(x != 0 for row in prod for x in row):
                raise ValueError(f"d.d != 0 at degree {n + 1}")
        return self


def make_complex(field, lo, ranks, diffs):
    """Build a complex, trimming zero ranks at both ends."""
    ranks = list(ranks)
    diffs = [tuple(tuple(field.coerce(x) for x in row) for row in m) for m in diffs]
    while ranks and ranks[0] == 0:
        ranks.pop(0)
        diffs.pop(0) if diffs else None
        lo += 1
    while ranks and ranks[-1] == 0:
        ranks.pop()
        diffs.pop() if diffs else None
    if not ranks:
        return BoundedComplex(field, 0, (), ())
    return BoundedComplex(field, lo, tuple(ranks), tuple(diffs)).validate()


def zero_complex(field):
    return BoundedComplex(field, 0, (), ())


@dataclass(frozen=True)
class ChainMap:
    """Degreewise matrices f_n stored over the source window; the chain
    condition d . f = f . d is validated on construction via
    ``make_chain_map``."""

    source: BoundedComplex
    target: BoundedComplex
    comps: tuple  # comps[i]: matrix target.rank(lo+i) x source.rank(lo+i)

    def comp(self, n):
        if self.source.lo <= n <= self.source.hi:
            return self.comps[n - self.source.lo]
        return zeros(self.source.field, self.target.rank(n), self.source.rank(n))

    def validate(self):
        x, y, field = self.source, self.target, self.source.field
        if not x.ranks or not y.ranks:
            return self
        for n in range(min(x.lo, y.lo), max(x.hi, y.hi) + 2):
            lhs = mat_mul_shaped(field, y.d(n), self.comp(n),
                                 y.rank(n - 1), x.rank(n))
            rhs = mat_mul_shaped(field, self.comp(n - 1), x.d(n),
                                 y.rank(n - 1), x.rank(n))
            if lhs != rhs:
                raise ValueError(f"chain condition fails at degree {n}")
        return self


def make_chain_map(x, y, comps_by_degree):
    field = x.field
    comps = []
    for n in x.degrees():
        m = comps_by_degree.get(n, None)
        if m is None:
            m = zeros(field, y.rank(n), x.rank(n))
        else:
            m = tuple(tuple(field.coerce(v) for v in row) for row in m)
        comps.append(m)
    return ChainMap(x, y, tuple(comps)).validate()


def identity_chain_map(x):
    return ChainMap(x, x, tuple(eye(x.field, r) for r in x.ranks))


def zero_chain_map(x, y):
    return ChainMap(x, y, tuple(zeros(x.field, y.rank(n), x.rank(n))
                                for n in x.degrees()))


def compose_chain_maps(g, f):
    if f.target != g.source:
        raise ValueError("chain maps not composable")
    field = f.source.field
    comps = tuple(mat_mul_shaped(field, g.comp(n), f.comp(n),
                                 g.target.rank(n), f.source.rank(n))
                  for n in f.source.degrees())
    return ChainMap(f.source, g.target, comps)


# Homology.

@dataclass(frozen=True)
class Homology:
    dim: int
    representatives: tuple  # cycle vectors spanning H_n over the boundaries


def _extend_independent(field, rows, candidates):
    """Greedy: candidates that strictly increase the rank of ``rows``."""
    picked = []
    current = list(rows)
    r = rank(field, tuple(current)) if current else 0
    for v in candidates:
        trial = current + [v]
        tr = rank(field, tuple(trial))
        if tr > r:
            picked.append(v)
            current = trial
            r = tr
    return picked


def homology(x, n):
    field = x.field
    cycles = _kernel(field, x.d(n), x.rank(n)) if x.rank(n) else []
    dnext = x.d(n + 1)
    boundary_cols = [tuple(dnext[i][j] for i in range(len(dnext)))
                     for j in range(x.rank(n + 1))]
    boundary_basis = _extend_independent(field, [], boundary_cols)
    reps = _extend_independent(field, boundary_basis, cycles)
    assert len(reps) == len(cycles) - len(boundary_basis)
    return Homology(len(reps), tuple(reps))


def induced_homology_matrix(f, n):
    """Matrix of H_n f in the representative bases (columns indexed by the
    source representatives)."""
    field = f.source.field
    hx = homology(f.source, n)
    hy = homology(f.target, n)
    dnext = f.target.d(n + 1)
    ybnd = _extend_independent(
        field, [],
        [tuple(dnext[i][j] for i in range(len(dnext)))
         for j in range(f.target.rank(n + 1))])
    columns_basis = list(hy.representatives) + ybnd
    if columns_basis:
        a = tuple(tuple(col[i] for col in columns_basis)
                  for i in range(len(columns_basis[0])))
    else:
        a = zeros(field, f.target.rank(n), 0)
    cols = []
    for repv in hx.representatives:
        img = mat_vec(field, f.comp(n), repv)
        sol = solve(field, a, img)
        if sol is None:
            raise AssertionError("image of a cycle is not a cycle")
        cols.append(sol[:hy.dim])
    matrix = tuple(tuple(cols[j][i] for j in range(hx.dim)) for i in range(hy.dim))
    return matrix, hx.dim, hy.dim


def is_quasi_iso_homology(f):
    """Oracle: H_n f bijective in every degree of the padded joint window."""
    field = f.source.field
    degrees = _joint_window(f)
    for n in degrees:
        m, dx, dy = induced_homology_matrix(f, n)
        if dx != dy or rank(field, m) != dx:
            return False
    return True


def _joint_window(f, pad=2):
    los = [c.lo for c in (f.source, f.target) if c.ranks]
    his = [c.hi for c in (f.source, f.target) if c.ranks]
    if not los:
        return range(0, 0)
    return range(min(los) - pad, max(his) + 1 + pad)


# The enumerative criterion (Lemma-style sweep over elements).

def quasi_iso_condition_enumerative(f, budget=200000):
    """Elementwise check over a prime field: for each degree n, each cycle
    a and each b with db = fa, sweep for c with dc = a and e with
    de = fc - b.  Returns (True, None) or (False, (n, a, b)).  The sweep
    is literal; the budget caps enumerated vectors and overruns raise
    rather than sample."""
    field = f.source.field
    if not field.is_prime:
        raise UnsupportedBackend("enumerative criterion needs a prime field")
    x, y = f.source, f.target
    count = 0

    def spend(k=1):
        nonlocal count
        count += k
        if count > budget:
            raise SearchBudgetExceeded(f"enumerative sweep exceeded {budget} vectors")

    for n in _joint_window(f):
        cycles = (_kernel(field, x.d(n), x.rank(n)) if x.rank(n) else [])
        zero_n = tuple(field.zero() for _ in range(x.rank(n)))
        for a in enumerate_span(field, cycles, zero_n, budget=budget):
            spend()
            fa = mat_vec(field, f.comp(n), a) if y.rank(n) else ()
            for b in _solutions(field, y.d(n + 1), fa, y.rank(n + 1), budget):
                spend()
                found = False
                for c in _solutions(field, x.d(n + 1), a, x.rank(n + 1), budget):
                    spend()
                    fc = mat_vec(field, f.comp(n + 1), c) if y.rank(n + 1) else ()
                    want = vec_sub(field, fc, b)
                    dn2 = y.d(n + 2)
                    for e in itertools.product(field.elements(),
                                               repeat=y.rank(n + 2)):
                        spend()
                        img = mat_vec(field, dn2, e) if y.rank(n + 1) else ()
                        if img == want:
                            found = True
                            break
                    if found:
                        break
                if not found:
                    return False, (n, a, b)
    return True, None


# The linear reformulation (rank comparisons, any exact field).

def _block(field, blocks):
    """Assemble a 2x2 block matrix given shapes implied by the blocks."""
    (a, b), (c, d) = blocks
    top_rows = len(a) if a else len(b)
    bot_rows = len(c) if c else len(d)
    out = []
    for i in range(top_rows):
        ra = a[i] if a else ()
        rb = b[i] if b else ()
        out.append(tuple(ra) + tuple(rb))
    for i in range(bot_rows):
        rc = c[i] if c else ()
        rd = d[i] if d else ()
        out.append(tuple(rc) + tuple(rd))
    return tuple(out)


def quasi_iso_condition_linear(f):
    """Per degree, the pairs (a, b) with da = 0, db = fa form the kernel of
    a block map, and the pairs (dc, fc - de) form the image of another;
    the criterion holds exactly when rank(image map) = dim(kernel).
    Containment of the image in the kernel is automatic."""
    field = f.source.field
    x, y = f.source, f.target
    for n in _joint_window(f):
        ra, rb = x.rank(n), y.rank(n + 1)
        constraint = _block(field, (
            (x.d(n), zeros(field, x.rank(n - 1), rb)),
            (tuple(tuple(field.neg(v) for v in row) for row in f.comp(n)),
             y.d(n + 1))))
        dim_s = (ra + rb) - (rank(field, constraint) if constraint else 0)
        psi = _block(field, (
            (x.d(n + 1), zeros(field, ra, y.rank(n + 2))),
            (f.comp(n + 1),
             tuple(tuple(field.neg(v) for v in row) for row in y.d(n + 2)))))
        rank_psi = rank(field, psi) if psi else 0
        if rank_psi != dim_s:
            return False
    return True


# Sphere, disk and interval complexes and the injectivity square.

def sphere_complex(field, n):
    return make_complex(field, n, (1,), ())


def disk_complex(field, n):
    """Ranks (1, 1) in degrees (n-1, n), identity differential; acyclic."""
    return make_complex(field, n - 1, (1, 1), ((( field.one(),),),))


def interval_complex(field, n):
    one = field.one()
    return make_complex(field, n - 1, (1, 2, 1),
                        (((one, one),), ((one,), (field.neg(one),))))


@dataclass(frozen=True)
class SDISquare:
    sphere: BoundedComplex
    disk: BoundedComplex
    interval: BoundedComplex
    inclusion: ChainMap   # sphere -> disk
    first: ChainMap       # disk -> interval, hemisphere (x, 0)
    second: ChainMap      # disk -> interval, hemisphere (0, x)
    square: SquareMorphism


def build_sdi(field, n):
    s = sphere_complex(field, n)
    d = disk_complex(field, n + 1)
    iv = interval_complex(field, n + 1)
    one = field.one()
    incl = make_chain_map(s, d, {n: ((one,),)})
    first = make_chain_map(d, iv, {n + 1: ((one,), (field.zero(),)), n: ((one,),)})
    second = make_chain_map(d, iv, {n + 1: ((field.zero(),), (one,)), n: ((one,),)})
    square = SquareMorphism(incl, first, incl, second)
    return SDISquare(s, d, iv, incl, first, second, square)


# The computable category of bounded complexes over a prime field.

class Ch(ComputableCategory):
    """Chain complexes over one exact field.  Hom enumeration solves the
    chain-map conditions (plus any pre/post constraints, all linear) and
    walks the solution space in lexicographic coefficient order over the
    reduced-echelon kernel basis; the canonical first filler is the
    particular solution with all free coefficients zero."""

    def __init__(self, field, budget=2000000):
        self.field = field
        self.budget = budget

    def source(self, f):
        return f.source

    def target(self, f):
        return f.target

    def identity(self, a):
        return identity_chain_map(a)

    def compose(self, g, f):
        return compose_chain_maps(g, f)

    def fillers(self, b, x, pre=(), post=()):
        field = self.field
        offsets = {}
        nvars = 0
        for n in b.degrees():
            offsets[n] = nvars
            nvars += x.rank(n) * b.rank(n)

        def var(n, i, j):
            return offsets[n] + i * b.rank(n) + j

        rows, rhs = [], []

        def fresh():
            return [field.zero()] * nvars

        # Chain condition: d_x . l_n - l_{n-1} . d_b = 0.
        for n in range(b.lo, b.hi + 2):
            dxn, dbn = x.d(n), b.d(n)
            for i in range(x.rank(n - 1)):
                for k in range(b.rank(n)):
                    row = fresh()
                    if b.lo <= n <= b.hi:
                        for j in range(x.rank(n)):
                            row[var(n, j, k)] = field.add(
                                row[var(n, j, k)], dxn[i][j])
                    if b.lo <= n - 1 <= b.hi:
                        for m in range(b.rank(n - 1)):
                            row[var(n - 1, i, m)] = field.sub(
                                row[var(n - 1, i, m)], dbn[m][k])
                    rows.append(tuple(row))
                    rhs.append(field.zero())
        # Precomposition: l . j = r.
        for j, r in pre:
            a = j.source
            for n in a.degrees():
                jn, rn = j.comp(n), r.comp(n)
                for i in range(x.rank(n)):
                    for k in range(a.rank(n)):
                        row = fresh()
                        if b.lo <= n <= b.hi:
                            for m in range(b.rank(n)):
                                row[var(n, i, m)] = field.add(
                                    row[var(n, i, m)], jn[m][k])
                        rows.append(tuple(row))
                        rhs.append(rn[i][k])
        # Postcomposition: g . l = s.
        for g, s in post:
            yc = g.target
            for n in b.degrees():
                gn, sn = g.comp(n), s.comp(n)
                for i in range(yc.rank(n)):
                    for k in range(b.rank(n)):
                        row = fresh()
                        for m in range(x.rank(n)):
                            row[var(n, i, m)] = field.add(
                                row[var(n, i, m)], gn[i][m])
                        rows.append(tuple(row))
                        rhs.append(sn[i][k])

        def to_map(vec):
            comps = []
            for n in b.degrees():
                comps.append(tuple(
                    tuple(vec[var(n, i, jj)] for jj in range(b.rank(n)))
                    for i in range(x.rank(n))))
            return ChainMap(b, x, tuple(comps))

        if nvars == 0:
            if all(v == 0 for v in rhs):
                yield to_map(())
            return
        matrix = tuple(rows) if rows else zeros(field, 0, nvars)
        part = solve(field, matrix, tuple(rhs)) if rows else tuple(
            field.zero() for _ in range(nvars))
        if part is None:
            return
        basis = kernel_basis(field, matrix) if rows else list(eye(field, nvars))
        for vec in enumerate_span(field, basis, part, budget=self.budget):
            yield to_map(vec)


def chain_map_basis(x, y):
    """Basis of the space of chain maps x -> y (used to sample random
    chain maps: any coefficient vector gives a valid map)."""
    field = x.field
    offsets = {}
    nvars = 0
    for n in x.degrees():
        offsets[n] = nvars
        nvars += y.rank(n) * x.rank(n)
    rows = []
    for n in range(x.lo, x.hi + 2):
        dyn, dxn = y.d(n), x.d(n)
        for i in range(y.rank(n - 1)):
            for k in range(x.rank(n)):
                row = [field.zero()] * nvars
                if x.lo <= n <= x.hi:
                    for j in range(y.rank(n)):
                        row[offsets[n] + j * x.rank(n) + k] = field.add(
                            row[offsets[n] + j * x.rank(n) + k], dyn[i][j])
                if x.lo <= n - 1 <= x.hi:
                    for m in range(x.rank(n - 1)):
                        row[offsets[n - 1] + i * x.rank(n - 1) + m] = field.sub(
                            row[offsets[n - 1] + i * x.rank(n - 1) + m], dxn[m][k])
                rows.append(tuple(row))
    if nvars == 0:
        return [], lambda vec: zero_chain_map(x, y)
    basis = kernel_basis(field, tuple(rows)) if rows else list(eye(field, nvars))

    def build(vec):
        comps = []
        for n in x.degrees():
            base = offsets[n]
            comps.append(tuple(
                tuple(vec[base + i * x.rank(n) + j] for j in range(x.rank(n)))
                for i in range(y.rank(n))))
        return ChainMap(x, y, tuple(comps)).validate()

    return basis, build


def is_quasi_iso_via_injectivity(f, window=None, budget=2000000):
    """Arrow-category injectivity against the sphere/disk/interval square
    for each degree in the window (default: padded joint window)."""
    from .kernel import arrow_category
    from .lifting import InjectivityVerdict, Status, is_injective
    field = f.source.field
    if not field.is_prime:
        raise UnsupportedBackend("injectivity route enumerates over a prime field")
    cat = Ch(field, budget)
    arr = arrow_category(cat)
    degrees = window if window is not None else _joint_window(f)
    fillers = {}
    for n in degrees:
        sdi = build_sdi(field, n)
        verdict = is_injective(arr, sdi.square, f)
        if not verdict.verified:
            return InjectivityVerdict(Status.REFUTED_EXHAUSTIVE,
                                      counterexample=(n, verdict.counterexample))
        fillers[n] = verdict.witness
    return InjectivityVerdict(Status.VERIFIED, witness=fillers)


# Seeded corpus generation: direct sums of spheres and disks conjugated by
# random invertible matrices, so differentials look generic while d.d = 0
# holds by construction.

def _random_invertible(field, n, rng):
    if n == 0:
        return ()
    while True:
        m = tuple(tuple(field.coerce(rng.randrange(field.p))
                        for _ in range(n)) for _ in range(n))
        if rank(field, m) == n:
            return m


def _inverse_matrix(field, m):
    n = len(m)
    aug = tuple(row + tuple(eye(field, n)[i]) for i, row in enumerate(m))
    red, _ = rref(field, aug)
    return tuple(tuple(red[i][n:]) for i in range(n))


def random_complex(field, rng, lo=0, length=4, max_rank=3):
    """Random bounded complex: a sum of sphere/disk cells in a window,
    then a change of basis in every degree."""
    ranks = [0] * length
    cells = []  # (degree index, kind)
    for i in range(length):
        for _ in range(rng.randrange(max_rank + 1)):
            if i + 1 < length and rng.randrange(2):
                cells.append((i, "disk"))
                ranks[i] += 1
                ranks[i + 1] += 1
            else:
                cells.append((i, "sphere"))
                ranks[i] += 1
    diffs = [zeros(field, ranks[i], ranks[i + 1]) for i in range(length - 1)]
    filled = [0] * length
    for deg, kind in cells:
        r = filled[deg]
        filled[deg] += 1
        if kind == "disk":
            c = filled[deg + 1]
            filled[deg + 1] += 1
            m = [list(row) for row in diffs[deg]]
            m[r][c] = field.one()
            diffs[deg] = tuple(tuple(row) for row in m)
    base = [_random_invertible(field, ranks[i], rng) for i in range(length)]
    conj = []
    for i in range(length - 1):
        inner = mat_mul_shaped(field, diffs[i], base[i + 1], ranks[i], ranks[i + 1])
        m = mat_mul_shaped(field, _inverse_matrix(field, base[i]), inner,
                           ranks[i], ranks[i + 1])
        conj.append(m)
    return make_complex(field, lo, ranks, conj)


def random_chain_map(rng, x, y):
    basis, build = chain_map_basis(x, y)
    nvars = sum(y.rank(n) * x.rank(n) for n in x.degrees())
    coeffs = tuple(x.field.coerce(rng.randrange(x.field.p)) for _ in basis)
    vec = [x.field.zero()] * nvars
    for c, b in zip(coeffs, basis):
        for i in range(nvars):
            vec[i] = x.field.add(vec[i], x.field.mul(c, b[i]))
    return build(tuple(vec))
