"""Finite-dimensional representations of line quivers and product shapes.

A Rep assigns a dimension to every element of a finite poset shape and a
matrix to every covering relation, with all parallel composites equal.  Over
line quivers we get interval decomposition (persistence-style rank
inclusion-exclusion), hom and Ext^1 spaces, and the standard projective /
injective / simple families.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import numpy as np

from .linalg import (FieldSpec, Matrix, column_space_basis, inverse, is_invertible,
                     kernel_basis, rank, rref, solve)
from .shapes import Element, LineQuiver, Poset

Cover = Tuple[Element, Element]


class Rep:
    """A functor from a finite poset shape into f.d. vector spaces."""

    def __init__(self, shape: Poset, field: FieldSpec, dims: Dict[Element, int],
                 mats: Dict[Cover, Matrix], validate: bool = True):
        self.shape = shape
        self.field = field
        self.dims = {e: int(dims.get(e, 0)) for e in shape.elements}
        self.mats = {}
        for cov in shape.covers:
            a, b = cov
            m = mats.get(cov)
            if m is None:
                m = Matrix.zeros(field, self.dims[b], self.dims[a])
            if (m.nrows, m.ncols) != (self.dims[b], self.dims[a]):
                raise ValueError(f"map on {cov} has shape {m.nrows}x{m.ncols}, "
                                 f"expected {self.dims[b]}x{self.dims[a]}")
            self.mats[cov] = m
        if validate:
            self.validate()

    # -- structure -------------------------------------------------------

    def dim(self, e: Element) -> int:
        return self.dims[e]

    def total_dim(self) -> int:
        return sum(self.dims.values())

    def map_on(self, cov: Cover) -> Matrix:
        return self.mats[cov]

    def path_map(self, a: Element, b: Element) -> Matrix:
        """The composite along any monotone path a -> b (well-defined)."""
        if not self.shape.leq(a, b):
            raise ValueError(f"no morphism {a} -> {b}")
        if a == b:
            return Matrix.identity(self.field, self.dims[a])
        succ = {}
        for (u, v) in self.shape.covers:
            succ.setdefault(u, []).append(v)
        # BFS from a staying below b
        best: Dict[Element, Matrix] = {a: Matrix.identity(self.field, self.dims[a])}
        order = [e for e in self.shape.linear_extension() if self.shape.leq(a, e) and self.shape.leq(e, b)]
        for e in order:
            if e not in best:
                continue
            for v in succ.get(e, []):
                if self.shape.leq(v, b) and v not in best:
                    best[v] = self.mats[(e, v)] @ best[e]
        return best[b]

    def validate(self):
        """Check commutativity: composites are path-independent."""
        succ: Dict[Element, List[Element]] = {}
        for (u, v) in self.shape.covers:
            succ.setdefault(u, []).append(v)
        order = self.shape.linear_extension()
        for a in self.shape.elements:
            if self.dims[a] == 0:
                continue
            reached: Dict[Element, Matrix] = {a: Matrix.identity(self.field, self.dims[a])}
            for e in order:
                if e not in reached:
                    continue
                for v in succ.get(e, []):
                    m = self.mats[(e, v)] @ reached[e]
                    if v in reached:
                        if reached[v] != m:
                            raise ValueError(f"commutativity fails between {a} and {v}")
                    else:
                        reached[v] = m

    def is_zero(self) -> bool:
        return all(d == 0 for d in self.dims.values())

    def __eq__(self, other):
        return (isinstance(other, Rep) and self.shape.elements == other.shape.elements
                and self.dims == other.dims and self.mats == other.mats)

    def __repr__(self):
        return f"Rep({self.shape.name}, dims={[self.dims[e] for e in self.shape.elements]})"

    # -- constructions -----------------------------------------------------

    @staticmethod
    def zero(shape: Poset, field: FieldSpec) -> "Rep":
        return Rep(shape, field, {}, {}, validate=False)

    def direct_sum(self, other: "Rep") -> "Rep":
        if self.shape is not other.shape and self.shape.elements != other.shape.elements:
            raise ValueError("shape mismatch")
        dims = {e: self.dims[e] + other.dims[e] for e in self.shape.elements}
        mats = {}
        for cov in self.shape.covers:
            a, b = cov
            mats[cov] = Matrix.block(
                self.field,
                [[self.mats[cov], None], [None, other.mats[cov]]],
                [self.dims[b], other.dims[b]], [self.dims[a], other.dims[a]])
        return Rep(self.shape, self.field, dims, mats, validate=False)

    def dual(self, target_shape: Optional[Poset] = None) -> "Rep":
        """Linear dual over the opposite shape (maps transposed)."""
        opp = target_shape if target_shape is not None else self.shape.opposite()
        mats = {}
        for (a, b), m in self.mats.items():
            mats[(b, a)] = m.transpose()
        return Rep(opp, self.field, dict(self.dims), mats, validate=False)


def direct_sum(reps: Sequence[Rep], shape: Poset, field: FieldSpec) -> Rep:
    out = Rep.zero(shape, field)
    for r in reps:
        out = out.direct_sum(r)
    return out


# ---------------------------------------------------------------------------
# interval modules and friends over line quivers


@dataclass(frozen=True, order=True)
class Interval:
    i: int
    j: int

    def __post_init__(self):
        if not 1 <= self.i <= self.j:
            raise ValueError(f"bad interval [{self.i},{self.j}]")

    def __str__(self):
        return f"M[{self.i},{self.j}]"


def interval_module(q: LineQuiver, i: int, j: int, field: FieldSpec) -> Rep:
    """Indecomposable with support [i, j], identity maps inside."""
    if not (1 <= i <= j <= q.n):
        raise ValueError(f"bad interval [{i},{j}] for n={q.n}")
    shape = q.poset()
    dims = {v: 1 if i <= v <= j else 0 for v in q.vertices}
    mats = {}
    for (u, v) in q.arrows():
        if dims[u] and dims[v]:
            mats[(u, v)] = Matrix.identity(field, 1)
    return Rep(shape, field, dims, mats, validate=False)


def all_intervals(n: int) -> List[Interval]:
    return [Interval(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def simple(q: LineQuiver, v: int, field: FieldSpec) -> Rep:
    return interval_module(q, v, v, field)


def projective(q: LineQuiver, v: int, field: FieldSpec) -> Rep:
    """P_v: supported on the vertices reachable from v."""
    p = q.poset()
    up = sorted(w for w in q.vertices if p.leq(v, w))
    return interval_module(q, min(up), max(up), field)


def injective(q: LineQuiver, v: int, field: FieldSpec) -> Rep:
    """I_v: supported on the vertices from which v is reachable."""
    p = q.poset()
    down = sorted(w for w in q.vertices if p.leq(w, v))
    return interval_module(q, min(down), max(down), field)


def projective_interval(q: LineQuiver, v: int) -> Interval:
    p = q.poset()
    up = sorted(w for w in q.vertices if p.leq(v, w))
    return Interval(min(up), max(up))


def injective_interval(q: LineQuiver, v: int) -> Interval:
    p = q.poset()
    down = sorted(w for w in q.vertices if p.leq(w, v))
    return Interval(min(down), max(down))


# ---------------------------------------------------------------------------
# hom spaces


def hom_space(x: Rep, y: Rep) -> List[Dict[Element, Matrix]]:
    """Basis of the space of intertwiners x -> y.

    Solves the linear system phi_b . x(a->b) = y(a->b) . phi_a over all covers.
    """
    if x.shape.elements != y.shape.elements:
        raise ValueError("shape mismatch")
    if x.field != y.field:
        raise ValueError("field mismatch")
    field = x.field
    elems = x.shape.elements
    offs: Dict[Element, int] = {}
    total = 0
    for e in elems:
        offs[e] = total
        total += y.dims[e] * x.dims[e]
    if total == 0:
        return []
    rows: List[Matrix] = []
    for (a, b) in x.shape.covers:
        na, nb = x.dims[a], x.dims[b]
        ma, mb = y.dims[a], y.dims[b]
        # constraint: Y_ab phi_a - phi_b X_ab = 0, unknowns phi_e flattened row-major
        neq = mb * na
        if neq == 0:
            continue
        block = Matrix.zeros(field, neq, total)
        blk = block.rows()
        yab = y.mats[(a, b)].rows()
        xab = x.mats[(a, b)].rows()
        for r in range(mb):
            for c in range(na):
                eq = r * na + c
                # (Y phi_a)[r, c] = sum_k Y[r, k] phi_a[k, c]
                for k in range(ma):
                    blk[eq][offs[a] + k * na + c] += yab[r][k]
                # (phi_b X)[r, c] = sum_k phi_b[r, k] X[k, c]
                for k in range(nb):
                    blk[eq][offs[b] + r * nb + k] -= xab[k][c]
        rows.append(Matrix.from_rows(field, blk))
    if rows:
        sys = Matrix.vstack(field, rows, ncols=total)
        basis = kernel_basis(sys)
    else:
        basis = Matrix.identity(field, total)
    out = []
    for col in range(basis.ncols):
        phi = {}
        for e in elems:
            ne, me = x.dims[e], y.dims[e]
            entries = [[basis[offs[e] + r * ne + c, col] for c in range(ne)] for r in range(me)]
            phi[e] = Matrix.from_rows(field, entries) if me and ne else Matrix.zeros(field, me, ne)
        out.append(phi)
    return out


def hom_dim(x: Rep, y: Rep) -> int:
    return len(hom_space(x, y))


def apply_hom(phi: Dict[Element, Matrix], e: Element) -> Matrix:
    return phi[e]


def euler_form(q: LineQuiver, dx: Dict[int, int], dy: Dict[int, int]) -> int:
    """<dim x, dim y> = sum_v x_v y_v - sum_{arrows u->v} x_u y_v."""
    total = sum(dx[v] * dy[v] for v in q.vertices)
    for (u, v) in q.arrows():
        total -= dx[u] * dy[v]
    return total


def ext1_dim(q: LineQuiver, x: Rep, y: Rep) -> int:
    """dim Ext^1 from the length-1 projective resolution of x:
    0 -> Hom(x,y) -> Hom(P0,y) -> Hom(P1,y) -> Ext^1(x,y) -> 0."""
    return hom_dim(x, y) - euler_form(q, x.dims, y.dims)


# ---------------------------------------------------------------------------
# interval decomposition over line quivers


def _limit(rep: Rep, elements: Sequence[Element]) -> Tuple[Matrix, Dict[Element, int]]:
    """Inclusion of lim(rep | elements) into the product of the values."""
    field = rep.field
    sub = list(elements)
    offs: Dict[Element, int] = {}
    total = 0
    for e in sub:
        offs[e] = total
        total += rep.dims[e]
    rows = []
    subset = set(sub)
    for (a, b) in rep.shape.covers:
        if a in subset and b in subset:
            nb = rep.dims[b]
            if nb == 0:
                continue
            block = Matrix.zeros(field, nb, total).rows()
            mab = rep.mats[(a, b)].rows()
            for r in range(nb):
                for c in range(rep.dims[a]):
                    block[r][offs[a] + c] += mab[r][c]
                block[r][offs[b] + r] -= 1
            rows.append(Matrix.from_rows(field, block))
    if not rows:
        return Matrix.identity(field, total), offs
    sys = Matrix.vstack(field, rows, ncols=total)
    return kernel_basis(sys), offs


def _colimit(rep: Rep, elements: Sequence[Element]) -> Tuple[Matrix, Dict[Element, int]]:
    """Projection from the coproduct of values onto colim(rep | elements),
    returned as a matrix picking a basis of the quotient (rows = quotient
    coordinates)."""
    field = rep.field
    sub = list(elements)
    offs: Dict[Element, int] = {}
    total = 0
    for e in sub:
        offs[e] = total
        total += rep.dims[e]
    cols = []
    subset = set(sub)
    for (a, b) in rep.shape.covers:
        if a in subset and b in subset:
            na = rep.dims[a]
            mab = rep.mats[(a, b)].rows()
            for c in range(na):
                vec = [0] * total
                vec[offs[a] + c] = 1
                for r in range(rep.dims[b]):
                    vec[offs[b] + r] -= mab[r][c]
                cols.append(vec)
    if not cols:
        rel = Matrix.zeros(field, total, 0)
    else:
        rel = Matrix.from_rows(field, [list(r) for r in zip(*cols)]) if total else Matrix.zeros(field, 0, len(cols))
    # quotient total / im(rel): complete a basis of im(rel) to the full space
    img = column_space_basis(rel)
    aug = Matrix.hstack(field, [img, Matrix.identity(field, total)], nrows=total)
    _, pivots = rref(aug)
    rest = [p - img.ncols for p in pivots if p >= img.ncols]
    # rows of the projection: solve [img | chosen] coordinates; easier: the
    # projection onto the chosen complement along im(rel)
    basis_cols = Matrix.hstack(field, [img, Matrix.identity(field, total).submatrix(range(total), rest)],
                               nrows=total)
    inv = solve(basis_cols, Matrix.identity(field, total))
    proj = inv.submatrix(range(img.ncols, img.ncols + len(rest)), range(total)) if inv is not None else None
    if proj is None:
        raise RuntimeError("colimit basis completion failed")
    return proj, offs


def generalized_rank(rep: Rep, a: int, b: int) -> int:
    """Rank of the canonical map lim -> colim over the window [a, b].

    The canonical map evaluates a section at any single window element and
    takes its class in the colimit (all choices agree there).
    """
    window = [v for v in rep.shape.elements if a <= v <= b]
    incl, offs = _limit(rep, window)
    proj, _ = _colimit(rep, window)
    v0 = window[0]
    total = incl.nrows
    field = rep.field
    rows = [[0] * incl.ncols for _ in range(total)]
    comp = incl.rows()
    for i in range(rep.dims[v0]):
        rows[offs[v0] + i] = comp[offs[v0] + i]
    ev = Matrix.from_rows(field, rows) if total else Matrix.zeros(field, 0, incl.ncols)
    return rank(proj @ ev)


def decompose(q: LineQuiver, x: Rep) -> Dict[Interval, int]:
    """Interval multiplicities by rank inclusion-exclusion.

    m[i,j] = r(i,j) - r(i-1,j) - r(i,j+1) + r(i-1,j+1) with r the generalized
    rank (lim -> colim) over vertex windows; valid in any orientation.
    """
    n = q.n
    r: Dict[Tuple[int, int], int] = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            r[(i, j)] = generalized_rank(x, i, j)

    def rr(i, j):
        return r.get((i, j), 0) if 1 <= i <= j <= n else 0

    out: Dict[Interval, int] = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            m = rr(i, j) - rr(i - 1, j) - rr(i, j + 1) + rr(i - 1, j + 1)
            if m < 0:
                raise RuntimeError(f"negative multiplicity at [{i},{j}]")
            if m:
                out[Interval(i, j)] = m
    return out


def assemble(q: LineQuiver, multiset: Dict[Interval, int], field: FieldSpec) -> Rep:
    reps = []
    for itv, m in sorted(multiset.items()):
        reps.extend(interval_module(q, itv.i, itv.j, field) for _ in range(m))
    return direct_sum(reps, q.poset(), field)


# ---------------------------------------------------------------------------
# isomorphism testing


def find_isomorphism(x: Rep, y: Rep, seed: int = 0, tries: int = 40) -> Optional[Dict[Element, Matrix]]:
    """An invertible intertwiner x -> y, or None.

    Searches seeded random linear combinations of a hom basis, with a
    deterministic small-coefficient fallback; sound for yes-instances with
    overwhelming probability over big fields.
    """
    if x.dims != y.dims:
        return None
    if all(d == 0 for d in x.dims.values()):
        return {e: Matrix.zeros(x.field, 0, 0) for e in x.shape.elements}
    basis = hom_space(x, y)
    if not basis:
        return None
    field = x.field
    rng = np.random.default_rng(seed)
    elems = [e for e in x.shape.elements if x.dims[e] > 0]

    def combine(coeffs) -> Dict[Element, Matrix]:
        phi = {}
        for e in x.shape.elements:
            acc = Matrix.zeros(field, y.dims[e], x.dims[e])
            for c, base in zip(coeffs, basis):
                if c:
                    acc = acc + base[e].scale(c)
            phi[e] = acc
        return phi

    def invertible(phi) -> bool:
        return all(is_invertible(phi[e]) for e in elems)

    for _ in range(tries):
        coeffs = [int(c) for c in rng.integers(0, field.p if not field.is_rational else 101,
                                               size=len(basis))]
        phi = combine(coeffs)
        if invertible(phi):
            return phi
    if len(basis) <= 6:
        for coeffs in itertools.product(range(-2, 3), repeat=len(basis)):
            phi = combine(coeffs)
            if invertible(phi):
                return phi
    return None


def are_isomorphic(x: Rep, y: Rep, seed: int = 0) -> bool:
    if x.dims != y.dims:
        return False
    if hom_dim(x, y) != hom_dim(y, x):
        return False
    return find_isomorphism(x, y, seed=seed) is not None


# ---------------------------------------------------------------------------
# random representations (for the test suites)


def random_rep(q: LineQuiver, field: FieldSpec, rng: np.random.Generator,
               max_dim: int = 3) -> Rep:
    dims = {v: int(rng.integers(0, max_dim + 1)) for v in q.vertices}
    mats = {}
    for (u, v) in q.arrows():
        mats[(u, v)] = Matrix.random(field, dims[v], dims[u], rng)
    return Rep(q.poset(), field, dims, mats, validate=False)


def random_interval_sum(q: LineQuiver, field: FieldSpec, rng: np.random.Generator,
                        max_total: int = 6) -> Tuple[Rep, Dict[Interval, int]]:
    """A random direct sum of intervals, conjugated by random base change."""
    multiset: Dict[Interval, int] = {}
    count = int(rng.integers(1, max_total + 1))
    for _ in range(count):
        i = int(rng.integers(1, q.n + 1))
        j = int(rng.integers(i, q.n + 1))
        itv = Interval(i, j)
        multiset[itv] = multiset.get(itv, 0) + 1
    plain = assemble(q, multiset, field)
    # conjugate by random invertible base changes at each vertex
    changes = {}
    for v in q.vertices:
        d = plain.dims[v]
        while True:
            g = Matrix.random(field, d, d, rng)
            if d == 0 or is_invertible(g):
                break
        changes[v] = g
    mats = {}
    for (u, v) in q.arrows():
        gu, gv = changes[u], changes[v]
        mats[(u, v)] = gv @ plain.mats[(u, v)] @ inverse(gu) if plain.dims[u] and plain.dims[v] \
            else Matrix.zeros(field, plain.dims[v], plain.dims[u])
    twisted = Rep(q.poset(), field, dict(plain.dims), mats, validate=False)
    return twisted, multiset
