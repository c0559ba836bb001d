"""The acceptance battery: one test per criterion, exact tolerances.

Each test prints its pass/fail line (run pytest with -s to stream them; the
same suites back `meshrep check`).
"""

import pytest

from meshrep.suites import ALL_SUITES, DEFAULT_SEED, run_seed


def _run(name, **kwargs):
    rep = ALL_SUITES[name](seed=run_seed(DEFAULT_SEED), **kwargs)
    print(rep.line())
    assert rep.passed, rep.line()


def test_criterion_01_census():
    """n(n+1)/2 indecomposables; decompose recovers random sums over Q and F5."""
    _run("census")


def test_criterion_02_ar_construction():
    """Boundary vanishing, bicartesian squares, round trip, Sigma = f^*."""
    _run("ar")


def test_criterion_03_reflections():
    """Inverse laws, commuting sinks, admissible-sequence independence."""
    _run("reflections")


def test_criterion_04_fractional_calabi_yau():
    """S^(n+1) = Sigma^(n-1) for n = 2..6; S^2 != Sigma at n = 3."""
    _run("frac-cy")


def test_criterion_05_serre_duality():
    """hom(x, y) = hom(y, Sx) over shifted intervals in a 3-domain window."""
    _run("serre-duality")


def test_criterion_06_nakayama_is_serre():
    """D_Q (x) x = S(x) and Sigma(C_Q+) = D_Q, all orientations, n <= 4."""
    _run("nakayama")


def test_criterion_07_bimodule_calculus():
    """Unit law, T+- inverses, functor/kernel agreement, bar oracle."""
    _run("kernels")


def test_criterion_08_golden_diagrams():
    """I(A3), D(A3), D(1<-2->3), square<->D4 patterns entry-for-entry."""
    _run("golden")


def test_criterion_09_tilting_characterization():
    """Perfect / rigid / generator / invertible for every T_{Q',Q}, n <= 4."""
    _run("tilting")


def test_criterion_10_picard_relations():
    """Commutation, (Sigma I)^(n-1) = D^(n+1) for n = 2..4, minimality grid."""
    _run("picard")


def test_criterion_11_mesh_happel():
    """Hom table in {0,1}, support = mesh reachability, mesh triangles."""
    _run("mesh")


def test_criterion_12_yoneda_window():
    """Restriction = I_Q, boundary zero, Serre-twist self-duality."""
    _run("yoneda")


def test_criterion_13_higher_triangulation():
    """STC0-STC3 on 100 random bases per n in {2,3,4} plus the sign control."""
    _run("stc")


def test_extra_d4_square_invertibility():
    _run("d4-square")
