"""Bounded complexes of representations: cones, shifts, homology, canonical
forms in the bounded derived category of a line quiver.

Conventions: homological grading, differential d_k : C_k -> C_{k-1};
(shift(C, m))_k = C_{k-m} with differential scaled by (-1)^m; the cone of
phi: X -> Y has differential [[-d_X, 0], [phi, d_Y]].
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .linalg import FieldSpec, Matrix, column_space_basis, is_invertible, kernel_basis, rank, rref, solve
from .rep import (Interval, Rep, decompose, ext1_dim, hom_dim, hom_space,
                  interval_module, direct_sum)
from .shapes import Element, LineQuiver, Poset

RepMap = Dict[Element, Matrix]


class Complex:
    """A bounded chain complex of Reps over a fixed shape."""

    def __init__(self, shape: Poset, field: FieldSpec, terms: Dict[int, Rep],
                 diffs: Dict[int, RepMap], validate: bool = True):
        self.shape = shape
        self.field = field
        self.terms = {d: t for d, t in terms.items() if not t.is_zero()}
        self.diffs: Dict[int, RepMap] = {}
        for d, phi in diffs.items():
            if d in self.terms and d - 1 in self.terms:
                self.diffs[d] = phi
        if validate:
            self.validate()

    # -- access ----------------------------------------------------------

    def degrees(self) -> List[int]:
        return sorted(self.terms.keys())

    def term(self, d: int) -> Rep:
        t = self.terms.get(d)
        return t if t is not None else Rep.zero(self.shape, self.field)

    def diff(self, d: int) -> RepMap:
        """d_d : C_d -> C_{d-1} (zero map by default)."""
        got = self.diffs.get(d)
        if got is not None:
            return got
        src, tgt = self.term(d), self.term(d - 1)
        return {e: Matrix.zeros(self.field, tgt.dims[e], src.dims[e]) for e in self.shape.elements}

    def value_dims(self, e: Element) -> Dict[int, int]:
        return {d: self.term(d).dims[e] for d in self.degrees() if self.term(d).dims[e]}

    def is_zero_object(self) -> bool:
        return all(t.is_zero() for t in self.terms.values())

    def total_dim(self) -> int:
        return sum(t.total_dim() for t in self.terms.values())

    def validate(self):
        for d in list(self.diffs):
            phi, src, tgt = self.diff(d), self.term(d), self.term(d - 1)
            for e in self.shape.elements:
                m = phi[e]
                if (m.nrows, m.ncols) != (tgt.dims[e], src.dims[e]):
                    raise ValueError(f"differential {d} at {e} has wrong shape")
            # chain map property of d wrt the shape structure
            for (a, b) in self.shape.covers:
                if (phi[b] @ src.mats[(a, b)]) != (tgt.mats[(a, b)] @ phi[a]):
                    raise ValueError(f"differential {d} is not a map of reps at cover {a}->{b}")
        for d in self.degrees():
            if d in self.diffs and d + 1 in self.diffs:
                lo, hi = self.diff(d), self.diff(d + 1)
                for e in self.shape.elements:
                    if not (lo[e] @ hi[e]).is_zero():
                        raise ValueError(f"d.d != 0 at {e} (degrees {d + 1}->{d - 1})")

    def __repr__(self):
        degs = self.degrees()
        return f"Complex({self.shape.name}, degrees {degs})"

    # -- constructions -----------------------------------------------------

    @staticmethod
    def zero(shape: Poset, field: FieldSpec) -> "Complex":
        return Complex(shape, field, {}, {}, validate=False)

    @staticmethod
    def from_rep(x: Rep, degree: int = 0) -> "Complex":
        return Complex(x.shape, x.field, {degree: x}, {}, validate=False)

    def shift(self, m: int) -> "Complex":
        """Sigma^m: degrees move up by m, differentials pick up (-1)^m."""
        terms = {d + m: t for d, t in self.terms.items()}
        sign = -1 if m % 2 else 1
        diffs = {}
        for d, phi in self.diffs.items():
            diffs[d + m] = {e: (mat if sign == 1 else -mat) for e, mat in phi.items()}
        return Complex(self.shape, self.field, terms, diffs, validate=False)

    def direct_sum(self, other: "Complex") -> "Complex":
        terms = {}
        diffs = {}
        degs = sorted(set(self.degrees()) | set(other.degrees()))
        for d in degs:
            terms[d] = self.term(d).direct_sum(other.term(d))
        for d in degs:
            if d in self.diffs or d in other.diffs:
                a, b = self.diff(d), other.diff(d)
                sa, sb = self.term(d), other.term(d)
                ta, tb = self.term(d - 1), other.term(d - 1)
                diffs[d] = {e: Matrix.block(self.field, [[a[e], None], [None, b[e]]],
                                            [ta.dims[e], tb.dims[e]], [sa.dims[e], sb.dims[e]])
                            for e in self.shape.elements}
        return Complex(self.shape, self.field, terms, diffs, validate=False)

    def scale_map(self, c) -> "ChainMap":
        return ChainMap(self, self, {d: {e: Matrix.identity(self.field, self.term(d).dims[e]).scale(c)
                                         for e in self.shape.elements} for d in self.degrees()})


@dataclass
class ChainMap:
    """A degreewise map of complexes commuting with differentials and shape maps."""

    src: Complex
    tgt: Complex
    comps: Dict[int, RepMap]  # comps[d]: src.term(d) -> tgt.term(d)

    def comp(self, d: int) -> RepMap:
        got = self.comps.get(d)
        if got is not None:
            return got
        s, t = self.src.term(d), self.tgt.term(d)
        return {e: Matrix.zeros(self.src.field, t.dims[e], s.dims[e]) for e in self.src.shape.elements}

    def validate(self):
        degs = sorted(set(self.src.degrees()) | set(self.tgt.degrees()))
        for d in degs:
            f_d, f_dm1 = self.comp(d), self.comp(d - 1)
            ds, dt = self.src.diff(d), self.tgt.diff(d)
            for e in self.src.shape.elements:
                if (f_dm1[e] @ ds[e]) != (dt[e] @ f_d[e]):
                    raise ValueError(f"not a chain map at {e}, degree {d}")
            s, t = self.src.term(d), self.tgt.term(d)
            for (a, b) in self.src.shape.covers:
                if (f_d[b] @ s.mats[(a, b)]) != (t.mats[(a, b)] @ f_d[a]):
                    raise ValueError(f"component {d} not a rep map at {a}->{b}")

    @staticmethod
    def zero(src: Complex, tgt: Complex) -> "ChainMap":
        return ChainMap(src, tgt, {})

    @staticmethod
    def identity(c: Complex) -> "ChainMap":
        return ChainMap(c, c, {d: {e: Matrix.identity(c.field, c.term(d).dims[e])
                                   for e in c.shape.elements} for d in c.degrees()})

    def compose(self, earlier: "ChainMap") -> "ChainMap":
        """self o earlier."""
        degs = sorted(set(earlier.src.degrees()) | set(self.src.degrees()))
        comps = {}
        for d in degs:
            f, g = self.comp(d), earlier.comp(d)
            comps[d] = {e: f[e] @ g[e] for e in self.src.shape.elements}
        return ChainMap(earlier.src, self.tgt, comps)


def cone(phi: ChainMap) -> Complex:
    """Mapping cone with differential [[-d_X, 0], [phi, d_Y]]."""
    x, y = phi.src, phi.tgt
    field, shape = x.field, x.shape
    degs = sorted(set(d + 1 for d in x.degrees()) | set(y.degrees()))
    terms = {}
    for d in degs:
        terms[d] = x.term(d - 1).direct_sum(y.term(d))
    diffs = {}
    for d in degs:
        xd, yd = x.diff(d - 1), y.diff(d)
        f = phi.comp(d - 1)
        sx, sy = x.term(d - 1), y.term(d)
        tx, ty = x.term(d - 2), y.term(d - 1)
        diffs[d] = {e: Matrix.block(field,
                                    [[-xd[e], None], [f[e], yd[e]]],
                                    [tx.dims[e], ty.dims[e]], [sx.dims[e], sy.dims[e]])
                    for e in shape.elements}
    return Complex(shape, field, terms, diffs, validate=False)


def cone_inclusion(phi: ChainMap, c: Optional[Complex] = None) -> ChainMap:
    """The canonical chain map Y -> cone(phi)."""
    cn = c if c is not None else cone(phi)
    x, y = phi.src, phi.tgt
    comps = {}
    for d in cn.degrees():
        sy = y.term(d)
        comps[d] = {e: Matrix.block(y.field, [[None], [Matrix.identity(y.field, sy.dims[e])]],
                                    [x.term(d - 1).dims[e], sy.dims[e]], [sy.dims[e]])
                    for e in y.shape.elements}
    return ChainMap(y, cn, comps)


def cone_projection(phi: ChainMap, c: Optional[Complex] = None) -> ChainMap:
    """The canonical chain map cone(phi) -> Sigma X."""
    cn = c if c is not None else cone(phi)
    x, y = phi.src, phi.tgt
    sx = x.shift(1)
    comps = {}
    for d in cn.degrees():
        nx, ny = x.term(d - 1).dims, y.term(d).dims
        comps[d] = {e: Matrix.block(x.field, [[Matrix.identity(x.field, nx[e]), None]],
                                    [nx[e]], [nx[e], ny[e]])
                    for e in x.shape.elements}
    return ChainMap(cn, sx, comps)


def fiber(phi: ChainMap) -> Complex:
    return cone(phi).shift(-1)


def fiber_projection(phi: ChainMap) -> ChainMap:
    """The canonical chain map fib(phi) -> X."""
    fib = fiber(phi)
    x = phi.src
    comps = {}
    for d in fib.degrees():
        nx = x.term(d).dims
        ny = phi.tgt.term(d + 1).dims
        comps[d] = {e: Matrix.block(x.field, [[Matrix.identity(x.field, nx[e]), None]],
                                    [nx[e]], [nx[e], ny[e]])
                    for e in x.shape.elements}
    return ChainMap(fib, x, comps)


# ---------------------------------------------------------------------------
# homology


def homology_rep(c: Complex, d: int) -> Rep:
    """H_d(c) as a Rep, with induced structure maps."""
    field, shape = c.field, c.shape
    zin: Dict[Element, Matrix] = {}
    bnd: Dict[Element, Matrix] = {}
    reps: Dict[Element, Matrix] = {}
    dims: Dict[Element, int] = {}
    lo, hi = c.diff(d), c.diff(d + 1)
    for e in shape.elements:
        z = kernel_basis(lo[e])              # cycles, as columns in C_d
        b = column_space_basis(hi[e])        # boundaries
        # choose homology representatives: pivot columns of z beyond im(b)
        aug = Matrix.hstack(field, [b, z], nrows=c.term(d).dims[e])
        _, pivots = rref(aug)
        rest = [p - b.ncols for p in pivots if p >= b.ncols]
        r = z.submatrix(range(z.nrows), rest)
        zin[e], bnd[e], reps[e] = z, b, r
        dims[e] = r.ncols
    mats = {}
    for (a, b2) in shape.covers:
        img = c.term(d).mats[(a, b2)] @ reps[a]
        # express img columns in the basis [boundaries | representatives] at b2
        basis = Matrix.hstack(field, [bnd[b2], reps[b2]], nrows=img.nrows)
        sol = solve(basis, img)
        if sol is None:
            raise RuntimeError("homology structure map failed (cycle not in span)")
        mats[(a, b2)] = sol.submatrix(range(bnd[b2].ncols, bnd[b2].ncols + dims[b2]), range(img.ncols))
    return Rep(shape, field, dims, mats, validate=False)


def homology_dims(c: Complex, e: Element) -> Dict[int, int]:
    """Graded homology dimensions of the value complex at one element."""
    out = {}
    degs = c.degrees()
    if not degs:
        return out
    for d in range(min(degs), max(degs) + 1):
        lo, hi = c.diff(d)[e], c.diff(d + 1)[e]
        h = c.term(d).dims[e] - rank(lo) - rank(hi)
        if h:
            out[d] = h
    return out


def is_acyclic(c: Complex) -> bool:
    degs = c.degrees()
    if not degs:
        return True
    for d in range(min(degs), max(degs) + 1):
        if not homology_rep(c, d).is_zero():
            return False
    return True


def minimize(c: Complex) -> Complex:
    """Replace by the homology complex with zero differentials.

    Legitimate up to quasi-isomorphism only over hereditary shapes (line
    quivers); callers over product shapes must not use this.
    """
    degs = c.degrees()
    terms = {}
    for d in range(min(degs), max(degs) + 1) if degs else []:
        h = homology_rep(c, d)
        if not h.is_zero():
            terms[d] = h
    return Complex(c.shape, c.field, terms, {}, validate=False)


# ---------------------------------------------------------------------------
# canonical forms in D^b of a line quiver


@dataclass(frozen=True)
class DerivedObject:
    """Multiset of (shift, interval) pairs: the Krull-Schmidt normal form."""

    summands: Tuple[Tuple[int, Interval, int], ...]  # (shift, interval, multiplicity)

    @staticmethod
    def from_dict(d: Dict[Tuple[int, Interval], int]) -> "DerivedObject":
        items = tuple(sorted((s, itv, m) for (s, itv), m in d.items() if m))
        return DerivedObject(items)

    def as_dict(self) -> Dict[Tuple[int, Interval], int]:
        return {(s, itv): m for (s, itv, m) in self.summands}

    def shift(self, m: int) -> "DerivedObject":
        return DerivedObject(tuple(sorted((s + m, itv, mult) for (s, itv, mult) in self.summands)))

    def is_zero(self) -> bool:
        return not self.summands

    def total_dim(self) -> int:
        return sum(m * (itv.j - itv.i + 1) for (_, itv, m) in self.summands)

    def indecomposable(self) -> bool:
        return len(self.summands) == 1 and self.summands[0][2] == 1

    def __str__(self):
        if not self.summands:
            return "0"
        parts = []
        for (s, itv, m) in self.summands:
            base = str(itv) if s == 0 else f"S^{s}{itv}"
            parts.append(base if m == 1 else f"{m}·{base}")
        return " + ".join(parts)


def normalize(q: LineQuiver, c: Complex) -> DerivedObject:
    """Canonical form: over a hereditary shape a complex splits as the sum of
    its shifted homologies."""
    out: Dict[Tuple[int, Interval], int] = {}
    degs = c.degrees()
    for d in range(min(degs), max(degs) + 1) if degs else []:
        h = homology_rep(c, d)
        if h.is_zero():
            continue
        for itv, m in decompose(q, h).items():
            out[(d, itv)] = out.get((d, itv), 0) + m
    return DerivedObject.from_dict(out)


def object_complex(q: LineQuiver, obj: DerivedObject, field: FieldSpec) -> Complex:
    """A zero-differential chain model of a canonical form."""
    terms: Dict[int, Rep] = {}
    for (s, itv, m) in obj.summands:
        add = direct_sum([interval_module(q, itv.i, itv.j, field)] * m, q.poset(), field)
        terms[s] = terms[s].direct_sum(add) if s in terms else add
    return Complex(q.poset(), field, terms, {}, validate=False)


# ---------------------------------------------------------------------------
# derived hom dimensions between canonical forms


def _interval_hom_tables(q: LineQuiver, field: FieldSpec) -> Tuple[Dict, Dict]:
    homs: Dict[Tuple[Interval, Interval], int] = {}
    exts: Dict[Tuple[Interval, Interval], int] = {}
    from .rep import all_intervals
    mods = {itv: interval_module(q, itv.i, itv.j, field) for itv in all_intervals(q.n)}
    for a, x in mods.items():
        for b, y in mods.items():
            h = hom_dim(x, y)
            homs[(a, b)] = h
            exts[(a, b)] = h - sum(x.dims[v] * y.dims[v] for v in q.vertices) \
                + sum(x.dims[u] * y.dims[v] for (u, v) in q.arrows())
    return homs, exts


_HOM_CACHE: Dict[Tuple[int, str], Tuple[Dict, Dict]] = {}


def interval_hom_tables(q: LineQuiver) -> Tuple[Dict, Dict]:
    key = (q.n, q.orientation)
    if key not in _HOM_CACHE:
        from .linalg import GF
        _HOM_CACHE[key] = _interval_hom_tables(q, GF())
    return _HOM_CACHE[key]


def derived_hom_dim(q: LineQuiver, x: DerivedObject, y: DerivedObject, degree: int = 0) -> int:
    """dim Hom_{D^b}(x, Sigma^degree y): hom for matching shifts, Ext^1 for a
    shift gap of one, zero otherwise (hereditary)."""
    homs, exts = interval_hom_tables(q)
    total = 0
    for (a, itv1, m1) in x.summands:
        for (b, itv2, m2) in y.summands:
            gap = b + degree - a
            if gap == 0:
                total += m1 * m2 * homs[(itv1, itv2)]
            elif gap == 1:
                total += m1 * m2 * exts[(itv1, itv2)]
    return total


def derived_hom_graded(q: LineQuiver, x: DerivedObject, y: DerivedObject) -> Dict[int, int]:
    """All nonzero dim Hom(x, Sigma^d y) by degree d."""
    out = {}
    if x.is_zero() or y.is_zero():
        return out
    shifts_x = [s for (s, _, _) in x.summands]
    shifts_y = [s for (s, _, _) in y.summands]
    for d in range(min(shifts_x) - max(shifts_y) - 1, max(shifts_x) - min(shifts_y) + 2):
        v = derived_hom_dim(q, x, y, d)
        if v:
            out[d] = v
    return out


# ---------------------------------------------------------------------------
# bicartesian certification


@dataclass
class Square:
    """A (homotopy-)commuting square of complexes

        x --f--> y
        |g       |h
        z --k--> w

    with an optional homotopy H: h f => k g (degree +1 maps H_d: x_d -> w_{d+1});
    strict commutation is the default H = 0.
    """

    x: Complex
    y: Complex
    z: Complex
    w: Complex
    f: ChainMap
    g: ChainMap
    h: ChainMap
    k: ChainMap
    homotopy: Optional[Dict[int, RepMap]] = None

    def _hot(self, d: int) -> RepMap:
        if self.homotopy and d in self.homotopy:
            return self.homotopy[d]
        return {e: Matrix.zeros(self.x.field, self.w.term(d + 1).dims[e], self.x.term(d).dims[e])
                for e in self.x.shape.elements}

    def check_commutes(self):
        """h f - k g = d H + H d must hold exactly."""
        degs = sorted(set(self.x.degrees()) | set(self.w.degrees()))
        for d in degs:
            for e in self.x.shape.elements:
                lhs = self.h.comp(d)[e] @ self.f.comp(d)[e] - self.k.comp(d)[e] @ self.g.comp(d)[e]
                ht = self._hot(d)[e]
                ht_lower = self._hot(d - 1)[e]
                rhs = self.w.diff(d + 1)[e] @ ht + ht_lower @ self.x.diff(d)[e]
                if lhs != rhs:
                    raise ValueError(f"square does not commute (up to the given homotopy) at {e}, degree {d}")


def is_bicartesian(sq: Square) -> bool:
    """True iff the total complex of x -> y (+) z -> w is acyclic."""
    sq.check_commutes()
    x, y, z, w = sq.x, sq.y, sq.z, sq.w
    field, shape = x.field, x.shape
    # cone(f) -> cone(k) given by (g, h) twisted by the homotopy
    cf, ck = cone(sq.f), cone(sq.k)
    comps = {}
    degs = sorted(set(cf.degrees()) | set(ck.degrees()))
    for d in degs:
        comps[d] = {}
        for e in shape.elements:
            gx = sq.g.comp(d - 1)[e]
            hy = sq.h.comp(d)[e]
            ht = sq._hot(d - 1)[e]
            comps[d][e] = Matrix.block(
                field,
                [[gx, None], [ht, hy]],
                [z.term(d - 1).dims[e], w.term(d).dims[e]],
                [x.term(d - 1).dims[e], y.term(d).dims[e]])
    mu = ChainMap(cf, ck, comps)
    total = cone(mu)
    return is_acyclic(total)


# ---------------------------------------------------------------------------
# cylinders: turning maps into strict (co)fibrations


def mapping_cylinder(phi: ChainMap) -> Tuple[Complex, ChainMap, ChainMap]:
    """(Cyl, j: X -> Cyl split mono, pr: Cyl -> Y quasi-iso) with pr . j = phi.

    Cyl_d = X_d + X_{d-1} + Y_d, d(a, h, y) = (da - h, -dh, dy + phi h).
    """
    x, y = phi.src, phi.tgt
    field, shape = x.field, x.shape
    degs = sorted(set(x.degrees()) | set(d + 1 for d in x.degrees()) | set(y.degrees()))
    terms = {d: x.term(d).direct_sum(x.term(d - 1)).direct_sum(y.term(d)) for d in degs}
    diffs = {}
    for d in degs:
        rows = {}
        for e in shape.elements:
            xd, xdm1 = x.term(d).dims[e], x.term(d - 1).dims[e]
            yd = y.term(d).dims[e]
            txd, txdm1, tyd = x.term(d - 1).dims[e], x.term(d - 2).dims[e], y.term(d - 1).dims[e]
            dX, dXm1 = x.diff(d)[e], x.diff(d - 1)[e]
            dY = y.diff(d)[e]
            f = phi.comp(d - 1)[e]
            rows[e] = Matrix.block(field, [
                [dX, -Matrix.identity(field, txd), None],
                [None, -dXm1, None],
                [None, f, dY],
            ], [txd, txdm1, tyd], [xd, xdm1, yd])
        diffs[d] = rows
    cyl = Complex(shape, field, terms, diffs, validate=False)
    j = ChainMap(x, cyl, {d: {e: Matrix.block(field, [[Matrix.identity(field, x.term(d).dims[e])], [None], [None]],
                                              [x.term(d).dims[e], x.term(d - 1).dims[e], y.term(d).dims[e]],
                                              [x.term(d).dims[e]]) for e in shape.elements}
                          for d in degs})
    pr = ChainMap(cyl, y, {d: {e: Matrix.block(field, [[phi.comp(d)[e], None, Matrix.identity(field, y.term(d).dims[e])]],
                                               [y.term(d).dims[e]],
                                               [x.term(d).dims[e], x.term(d - 1).dims[e], y.term(d).dims[e]])
                               for e in shape.elements} for d in degs})
    return cyl, j, pr


def mapping_path(phi: ChainMap) -> Tuple[Complex, ChainMap, ChainMap]:
    """(P, inc: X -> P quasi-iso, ev: P -> Y split epi) with ev . inc = phi.

    P = X + cone(id_Y)[-1]; ev(a, y, h) = phi a + y.
    """
    x, y = phi.src, phi.tgt
    field, shape = x.field, x.shape
    contr = cone(ChainMap.identity(y)).shift(-1)  # degrees d: Y_d + Y_{d+1}
    p = x.direct_sum(contr)
    degs = p.degrees()
    inc = ChainMap(x, p, {d: {e: Matrix.block(field, [[Matrix.identity(field, x.term(d).dims[e])], [None]],
                                              [x.term(d).dims[e], contr.term(d).dims[e]],
                                              [x.term(d).dims[e]]) for e in shape.elements}
                          for d in degs})
    ev_comps = {}
    for d in degs:
        ev_comps[d] = {}
        for e in shape.elements:
            yd, ydp1 = y.term(d).dims[e], y.term(d + 1).dims[e]
            ev_comps[d][e] = Matrix.block(field,
                                          [[phi.comp(d)[e], Matrix.identity(field, yd), None]],
                                          [yd], [x.term(d).dims[e], yd, ydp1])
    ev = ChainMap(p, y, ev_comps)
    return p, inc, ev


def contractible_cone_over(v: Complex) -> Tuple[Complex, ChainMap]:
    """(C, j: V -> C) with C = cone(id_V) contractible and j split mono."""
    c = cone(ChainMap.identity(v))
    field, shape = v.field, v.shape
    comps = {}
    for d in c.degrees():
        vd, vdm1 = v.term(d).dims, v.term(d - 1).dims
        comps[d] = {e: Matrix.block(field, [[None], [Matrix.identity(field, vd[e])]],
                                    [vdm1[e], vd[e]], [vd[e]]) for e in shape.elements}
    return c, ChainMap(v, c, comps)


def contractible_path_onto(v: Complex) -> Tuple[Complex, ChainMap]:
    """(P, q: P -> V) with P = cone(id_V)[-1] contractible and q split epi."""
    p = cone(ChainMap.identity(v)).shift(-1)  # P_d = V_d + V_{d+1}
    field, shape = v.field, v.shape
    comps = {}
    for d in p.degrees():
        vd, vdp1 = v.term(d).dims, v.term(d + 1).dims
        comps[d] = {e: Matrix.block(field, [[Matrix.identity(field, vd[e]), None]],
                                    [vd[e]], [vd[e], vdp1[e]]) for e in shape.elements}
    return p, ChainMap(p, v, comps)


def linear_dual_complex(c: Complex, target_shape: Optional[Poset] = None) -> Complex:
    """The k-linear dual over the opposite shape: degrees negate, maps transpose."""
    shape = target_shape if target_shape is not None else c.shape.opposite()
    terms = {-d: t.dual(shape) for d, t in c.terms.items()}
    diffs = {}
    for d in c.degrees():
        # d_d : C_d -> C_{d-1} dualizes to (C_{d-1})* -> (C_d)*, i.e. degree (-d+1) -> (-d)
        phi = c.diff(d)
        if any(not m.is_zero() for m in phi.values()):
            diffs[-d + 1] = {e: phi[e].transpose() for e in c.shape.elements}
    return Complex(shape, c.field, terms, diffs, validate=False)
