"""Chain-level hom spaces: projective models, chain maps modulo homotopy.

Needed wherever an actual morphism (not just a dimension) in the derived
category has to be realized: mesh triangles, triangle fillers, suspension
identifications.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Tuple

from .derived import ChainMap, Complex, DerivedObject, object_complex
from .linalg import FieldSpec, Matrix, kernel_basis, rank, rref, solve
from .rep import Rep, interval_module
from .shapes import LineQuiver, Poset


def projective_resolution(q: LineQuiver, x: Rep) -> Tuple[Rep, Rep, Dict, Dict]:
    """The standard hereditary resolution 0 -> P1 -> P0 -> X -> 0.

    P0 = sum_w P_w (x) X_w, P1 = sum_{arrows u->v} P_v (x) X_u; the
    differential sends the (u->v) block to the v-block via X(alpha) and to
    the u-block via the support inclusion P_v c P_u, with a minus sign.
    Returns (P1, P0, d: P1 -> P0, aug: P0 -> X) as reps and rep maps.
    """
    field = x.field
    shape = q.poset()
    verts = list(q.vertices)
    arrows = q.arrows()
    supp = {v: {w: shape.leq(v, w) for w in verts} for v in verts}  # P_v support

    # dims of P0 and P1 at each vertex y
    p0_dims = {y: sum(x.dims[w] for w in verts if supp[w][y]) for y in verts}
    p1_dims = {y: sum(x.dims[u] for (u, v) in arrows if supp[v][y]) for y in verts}

    def p0_off(y):
        offs, t = {}, 0
        for w in verts:
            if supp[w][y]:
                offs[w] = t
                t += x.dims[w]
        return offs, t

    def p1_off(y):
        offs, t = {}, 0
        for (u, v) in arrows:
            if supp[v][y]:
                offs[(u, v)] = t
                t += x.dims[u]
        return offs, t

    def ident_block(rows, cols, roff, coff, size, out):
        for i in range(size):
            out[roff + i][coff + i] = 1

    # structure maps of P0, P1 along covers y -> y2 (support inclusions)
    p0_mats, p1_mats = {}, {}
    for (y, y2) in q.arrows():
        o1, t1 = p0_off(y)
        o2, t2 = p0_off(y2)
        rowsm = [[0] * t1 for _ in range(t2)]
        for w in verts:
            if supp[w][y] and supp[w][y2]:
                ident_block(t2, t1, o2[w], o1[w], x.dims[w], rowsm)
        p0_mats[(y, y2)] = Matrix.from_rows(field, rowsm) if t2 and t1 else Matrix.zeros(field, t2, t1)
        o1, t1 = p1_off(y)
        o2, t2 = p1_off(y2)
        rowsm = [[0] * t1 for _ in range(t2)]
        for (u, v) in arrows:
            if supp[v][y] and supp[v][y2]:
                ident_block(t2, t1, o2[(u, v)], o1[(u, v)], x.dims[u], rowsm)
        p1_mats[(y, y2)] = Matrix.from_rows(field, rowsm) if t2 and t1 else Matrix.zeros(field, t2, t1)

    p0 = Rep(shape, field, p0_dims, p0_mats, validate=False)
    p1 = Rep(shape, field, p1_dims, p1_mats, validate=False)

    # differential P1 -> P0 and augmentation P0 -> X
    diff = {}
    aug = {}
    for y in verts:
        o1, t1 = p1_off(y)
        o0, t0 = p0_off(y)
        rowsm = [[0] * t1 for _ in range(t0)]
        for (u, v) in arrows:
            if not supp[v][y]:
                continue
            # to the v block via X(alpha): X_u -> X_v
            xa = x.mats[(u, v)].rows()
            for i in range(x.dims[v]):
                for jj in range(x.dims[u]):
                    rowsm[o0[v] + i][o1[(u, v)] + jj] += xa[i][jj]
            # to the u block via the inclusion P_v -> P_u (identity on X_u)
            if supp[u][y]:
                for i in range(x.dims[u]):
                    rowsm[o0[u] + i][o1[(u, v)] + i] -= 1
        diff[y] = Matrix.from_rows(field, rowsm) if t0 and t1 else Matrix.zeros(field, t0, t1)
        arows = [[0] * t0 for _ in range(x.dims[y])]
        for w in verts:
            if supp[w][y]:
                pm = x.path_map(w, y).rows()
                for i in range(x.dims[y]):
                    for jj in range(x.dims[w]):
                        arows[i][o0[w] + jj] += pm[i][jj]
        aug[y] = Matrix.from_rows(field, arows) if x.dims[y] and t0 else Matrix.zeros(field, x.dims[y], t0)
    return p1, p0, diff, aug


def projective_model(q: LineQuiver, obj: DerivedObject, field: FieldSpec) -> Tuple[Complex, ChainMap]:
    """(P, aug: P -> model(obj)) with P a complex of projectives quasi-iso to obj."""
    shape = q.poset()
    model = object_complex(q, obj, field)
    total = Complex.zero(shape, field)
    aug_comps: Dict[int, Dict] = {}
    for (s, itv, mult) in obj.summands:
        for _ in range(mult):
            x = interval_module(q, itv.i, itv.j, field)
            p1, p0, diff, aug = projective_resolution(q, x)
            piece = Complex(shape, field, {s: p0, s + 1: p1}, {s + 1: diff}, validate=False)
            # augmentation lands in degree s of the model
            total, aug_comps = _sum_with_aug(total, aug_comps, piece, {s: aug}, field)
    # assemble augmentation chain map into the zero-differential model
    comps: Dict[int, Dict] = {}
    for d in total.degrees():
        comps[d] = {}
        for e in shape.elements:
            tgt = model.term(d).dims[e]
            src = total.term(d).dims[e]
            comps[d][e] = aug_comps.get(d, {}).get(e, Matrix.zeros(field, tgt, src)) \
                if tgt else Matrix.zeros(field, 0, src)
    return total, ChainMap(total, model, comps)


def _sum_with_aug(total, aug_comps, piece, piece_aug, field):
    """Direct-sum a resolution piece onto the accumulator, tracking the
    augmentation blocks into the canonical model (summands appended in the
    same order object_complex lays them out)."""
    new = total.direct_sum(piece)
    out: Dict[int, Dict] = {}
    for d in set(list(aug_comps.keys()) + list(piece_aug.keys())):
        out[d] = {}
        olda = aug_comps.get(d, {})
        newa = piece_aug.get(d, {})
        for e in piece.shape.elements:
            left = olda.get(e)
            right = newa.get(e)
            lc = total.term(d).dims[e]
            rc = piece.term(d).dims[e]
            lr = left.nrows if left is not None else 0
            rr = right.nrows if right is not None else 0
            out[d][e] = Matrix.block(field, [[left, None], [None, right]],
                                     [lr, rr], [lc, rc]) if (left is not None or right is not None) \
                else Matrix.zeros(field, 0, lc + rc)
    return new, out


def chain_map_space(cx: Complex, cy: Complex) -> List[ChainMap]:
    """Basis of chain maps cx -> cy (degreewise rep maps commuting with d)."""
    field, shape = cx.field, cx.shape
    degs = sorted(set(cx.degrees()) | set(cy.degrees()))
    slots = []
    offs = {}
    total = 0
    for d in degs:
        for e in shape.elements:
            r, c = cy.term(d).dims[e], cx.term(d).dims[e]
            offs[(d, e)] = total
            total += r * c
            slots.append((d, e, r, c))
    if total == 0:
        return []
    rows: List[List] = []

    def add_rows(n_eq):
        base = [[0] * total for _ in range(n_eq)]
        rows.extend(base)
        return base

    # rep-map constraints per degree
    for d in degs:
        for (a, b) in shape.covers:
            ra, ca = cy.term(d).dims[a], cx.term(d).dims[a]
            rb, cb = cy.term(d).dims[b], cx.term(d).dims[b]
            ymat = cy.term(d).mats[(a, b)].rows()
            xmat = cx.term(d).mats[(a, b)].rows()
            neq = rb * ca
            if neq == 0:
                continue
            block = add_rows(neq)
            for r in range(rb):
                for c in range(ca):
                    eq = r * ca + c
                    for k in range(ra):
                        block[eq][offs[(d, a)] + k * ca + c] += ymat[r][k]
                    for k in range(cb):
                        block[eq][offs[(d, b)] + r * cb + k] -= xmat[k][c]
    # differential constraints: f_{d-1} dX = dY f_d
    for d in degs:
        for e in shape.elements:
            rb = cy.term(d - 1).dims[e]
            ca = cx.term(d).dims[e]
            neq = rb * ca
            if neq == 0:
                continue
            dx = cx.diff(d)[e].rows()
            dy = cy.diff(d)[e].rows()
            cb = cx.term(d - 1).dims[e]
            ra = cy.term(d).dims[e]
            block = add_rows(neq)
            for r in range(rb):
                for c in range(ca):
                    eq = r * ca + c
                    for k in range(cb):
                        block[eq][offs[(d - 1, e)] + r * cb + k] += dx[k][c]
                    for k in range(ra):
                        block[eq][offs[(d, e)] + k * ca + c] -= dy[r][k]
    sys = Matrix.from_rows(field, rows) if rows else Matrix.zeros(field, 0, total)
    basis = kernel_basis(sys) if rows else Matrix.identity(field, total)
    out = []
    for col in range(basis.ncols):
        comps: Dict[int, Dict] = {}
        for (d, e, r, c) in slots:
            comps.setdefault(d, {})[e] = Matrix.from_rows(
                field, [[basis[offs[(d, e)] + i * c + j, col] for j in range(c)] for i in range(r)]) \
                if r and c else Matrix.zeros(field, r, c)
        for d in degs:
            comps.setdefault(d, {})
            for e in shape.elements:
                comps[d].setdefault(e, Matrix.zeros(field, cy.term(d).dims[e], cx.term(d).dims[e]))
        out.append(ChainMap(cx, cy, comps))
    return out


def _flatten(cm: ChainMap, degs, shape) -> List:
    vec = []
    for d in degs:
        for e in shape.elements:
            m = cm.comp(d)[e]
            vec.extend(m.rows()[i][j] for i in range(m.nrows) for j in range(m.ncols))
    return vec


def nullhomotopic_space(cx: Complex, cy: Complex) -> List[ChainMap]:
    """Spanning set of null-homotopic chain maps d h + h d."""
    field, shape = cx.field, cx.shape
    degs = sorted(set(cx.degrees()) | set(cy.degrees()))
    out = []
    # homotopies are rep maps cx_d -> cy_{d+1} with no differential constraint
    from .rep import hom_space
    h_basis = []
    for d in degs:
        for phi in hom_space(cx.term(d), cy.term(d + 1)):
            h_basis.append((d, phi))
    for (d, phi) in h_basis:
        comps: Dict[int, Dict] = {}
        for dd in degs:
            comps[dd] = {}
            for e in shape.elements:
                m = Matrix.zeros(field, cy.term(dd).dims[e], cx.term(dd).dims[e])
                if dd == d:
                    m = m + cy.diff(d + 1)[e] @ phi[e]
                if dd == d + 1:
                    m = m + phi[e] @ cx.diff(d + 1)[e]
                comps[dd][e] = m
        out.append(ChainMap(cx, cy, comps))
    return out


def hom_class_data(cx: Complex, cy: Complex):
    """(dimension of Hom_K(cx, cy), list of representatives spanning it)."""
    field, shape = cx.field, cx.shape
    degs = sorted(set(cx.degrees()) | set(cy.degrees()))
    maps = chain_map_space(cx, cy)
    if not maps:
        return 0, []
    nulls = nullhomotopic_space(cx, cy)
    null_vecs = [_flatten(n, degs, shape) for n in nulls]
    nmat = Matrix.from_rows(field, null_vecs) if null_vecs else None
    base_rank = rank(nmat) if nmat is not None else 0
    reps = []
    cur_rows = list(null_vecs)
    cur_rank = base_rank
    for cm in maps:
        vec = _flatten(cm, degs, shape)
        trial = Matrix.from_rows(field, cur_rows + [vec])
        r = rank(trial)
        if r > cur_rank:
            reps.append(cm)
            cur_rows.append(vec)
            cur_rank = r
    return len(reps), reps


def hom_class_representative(cx: Complex, cy: Complex) -> Optional[ChainMap]:
    dim, reps = hom_class_data(cx, cy)
    return reps[0] if reps else None


def tuple_into_sum(maps: List[ChainMap]) -> ChainMap:
    """Combine chain maps with a common source into a map to the direct sum."""
    if not maps:
        raise ValueError("need at least one map")
    src = maps[0].src
    field, shape = src.field, src.shape
    tgt = maps[0].tgt
    for m in maps[1:]:
        tgt = tgt.direct_sum(m.tgt)
    comps: Dict[int, Dict] = {}
    degs = sorted(set(src.degrees()) | set(tgt.degrees()))
    for d in degs:
        comps[d] = {}
        for e in shape.elements:
            blocks = [[m.comp(d)[e]] for m in maps]
            rdims = [m.tgt.term(d).dims[e] for m in maps]
            comps[d][e] = Matrix.block(field, blocks, rdims, [src.term(d).dims[e]])
    return ChainMap(src, tgt, comps)
