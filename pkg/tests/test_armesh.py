import numpy as np
import pytest

from meshrep.armesh import (ARDiagram, build_ar, check_flip_sigma,
                            check_mesh_relations, mesh_hom_table, mesh_object,
                            suspension_orbits)
from meshrep.derived import Complex, DerivedObject, normalize
from meshrep.linalg import GF, Matrix
from meshrep.rep import Interval, Rep, all_intervals, interval_module, random_interval_sum
from meshrep.functors import serre, transport, transport_embedding
from meshrep.shapes import (LineQuiver, MeshWindow, all_orientations, default_window,
                            embed_iQ, mesh_map_s)

F = GF(32003)


def generic_chain_a3():
    """X = (x -> y -> z) with x = k, y = k^2, z = k, generic maps."""
    q = LineQuiver.linear(3)
    mats = {
        (1, 2): Matrix.from_rows(F, [[1], [0]]),
        (2, 3): Matrix.from_rows(F, [[0, 1]]),
    }
    return q, Complex.from_rep(Rep(q.poset(), F, {1: 1, 2: 2, 3: 1}, mats))


def test_build_ar_zero():
    q = LineQuiver.linear(2)
    d = build_ar(q, Complex.zero(q.poset(), F))
    for v in d.window.vertices():
        assert d.is_zero_at(v)
    rep = d.verify()
    assert all(rep.values())


def test_build_ar_p1_a3():
    q = LineQuiver.linear(3)
    x = Complex.from_rep(interval_module(q, 1, 3, F))  # P_1, (k -> k -> k)
    d = build_ar(q, x)
    # s(1) = (0, 3) holds z = k
    assert d.canonical((0, 3)) == {0: 1}
    assert d.canonical((1, 1)) == {}  # u = cone(id)
    assert d.canonical((1, 2)) == {}  # v
    assert d.canonical((2, 1)) == {}  # w
    rep = d.verify()
    assert all(rep.values()), rep


def test_build_ar_a3_diagram_shape():
    q, x = generic_chain_a3()
    d = build_ar(q, x)
    rep = d.verify()
    assert all(rep.values()), rep
    # the embedded column carries the input
    assert d.canonical((0, 1)) == {0: 1}
    assert d.canonical((0, 2)) == {0: 2}
    assert d.canonical((0, 3)) == {0: 1}
    # round trip: restriction along the embedding is the input
    back = d.restrict(q, embed_iQ(q))
    assert normalize(q, back) == normalize(q, x)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_build_ar_roundtrip_and_certificates(n):
    rng = np.random.default_rng(100 + n)
    for q in all_orientations(n)[:4]:
        x, _ = random_interval_sum(q, F, rng, max_total=3)
        c = Complex.from_rep(x)
        d = build_ar(q, c)
        rep = d.verify()
        assert all(rep.values()), (q, rep)
        back = d.restrict(q, embed_iQ(q))
        assert normalize(q, back) == normalize(q, c)


def test_flip_sigma():
    q, x = generic_chain_a3()
    d = build_ar(q, x)
    res = check_flip_sigma(d)
    assert res and all(res.values())
    # negative control: corrupting one vertex flips its verdict
    v = next(iter(res))
    res2 = check_flip_sigma(d, corrupt=v)
    assert not res2[v]


def test_flip_sigma_shifted_input():
    q = LineQuiver(2, "B")
    rng = np.random.default_rng(17)
    x, _ = random_interval_sum(q, F, rng, max_total=2)
    d = build_ar(q, Complex.from_rep(x).shift(-1))
    assert all(check_flip_sigma(d).values())
    assert all(d.verify().values())


def test_suspension_orbits():
    assert suspension_orbits(1) == 1
    assert suspension_orbits(3) == 6
    assert suspension_orbits(5) == 15


def test_serre_shift():
    # value at s_Q(l) of the AR diagram equals vertex l of serre(Q, X)
    for q in [LineQuiver.linear(3), LineQuiver(3, "BF")]:
        rng = np.random.default_rng(7)
        x, _ = random_interval_sum(q, F, rng, max_total=3)
        c = Complex.from_rep(x)
        d = build_ar(q, c)
        s = serre(q, c)
        emb = embed_iQ(q)
        for l in q.vertices:
            sv = mesh_map_s(q.n, emb[l])
            from meshrep.derived import homology_dims
            expect = homology_dims(s, l) if False else {
                deg: s.term(deg).dims[l] for deg in s.degrees() if s.term(deg).dims[l]}
            assert d.canonical(sv) == expect


def test_tau_is_translation():
    from meshrep.functors import coxeter_plus
    q = LineQuiver.linear(2)
    rng = np.random.default_rng(3)
    x, _ = random_interval_sum(q, F, rng, max_total=2)
    c = Complex.from_rep(x)
    d = build_ar(q, c)
    dtau = build_ar(q, coxeter_plus(q, c))
    # tau = t^*: the diagram of Phi^+ X at v is the diagram of X at t(v)
    for v in d.window.interior():
        tv = (v[0] - 1, v[1])
        if tv in d.window:
            assert dtau.canonical(v) == d.canonical(tv)


def test_orientation_independence_via_tracked_embedding():
    src = LineQuiver.linear(3)
    rng = np.random.default_rng(23)
    x, _ = random_interval_sum(src, F, rng, max_total=2)
    c = Complex.from_rep(x)
    d = build_ar(src, c)
    for dst in all_orientations(3):
        emb = transport_embedding(src, dst)
        moved = transport(src, dst, c)
        d2 = build_ar(dst, moved, embedding=emb)
        for v in d.window.vertices():
            if v in d2.window:
                assert d.canonical(v) == d2.canonical(v)


def test_mesh_objects_a2():
    q = LineQuiver.linear(2)
    assert mesh_object(q, (0, 1)) == DerivedObject.from_dict({(0, Interval(2, 2)): 1})
    assert mesh_object(q, (0, 2)) == DerivedObject.from_dict({(0, Interval(1, 2)): 1})
    assert mesh_object(q, (1, 1)) == DerivedObject.from_dict({(0, Interval(1, 1)): 1})
    assert mesh_object(q, (1, 2)) == DerivedObject.from_dict({(1, Interval(2, 2)): 1})


def test_mesh_hom_table_examples():
    q = LineQuiver.linear(2)
    w = MeshWindow(2, 0, 2)
    table = mesh_hom_table(q, w)
    assert table[((0, 1), (1, 1))] == 0
    assert table[((0, 1), (0, 2))] == 1
    for u in w.interior():
        assert table[(u, u)] == 1


@pytest.mark.parametrize("orient", ["FF", "BF", "FB", "BB"])
def test_mesh_relations_n3(orient):
    q = LineQuiver(3, orient)
    w = MeshWindow(3, -1, 4)
    rep = check_mesh_relations(q, w)
    assert all(rep.values()), rep


def test_exports():
    q, x = generic_chain_a3()
    d = build_ar(q, x)
    dot = d.to_dot()
    assert dot.startswith("digraph") and "->" in dot
    tikz = d.to_tikz()
    assert "tikzpicture" in tikz
