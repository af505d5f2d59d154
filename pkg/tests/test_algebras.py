"""Constructors: the 51-dim algebra, its extensions, the planar variant."""

from fractions import Fraction

import pytest

from newstein import labels as lb
from newstein.algebras import (CentralCocycle, beta_cocycle, build_extended,
                               build_newstein, build_newstein2)
from newstein.extensions import ExtensionClass, InvalidExtensionParameter

F = Fraction


@pytest.fixture(scope="module")
def G():
    return build_newstein()


def test_dimension_and_label_order(G):
    assert G.dim == 51
    kinds = [lab.kind for lab in G.labels]
    blocks = [("L", 6), ("T", 4), ("Tp", 4), ("C", 10), ("A", 12), ("Q", 12), ("J", 3)]
    pos = 0
    for kind, size in blocks:
        assert kinds[pos:pos + size] == [kind] * size
        pos += size


def test_jacobi_zero_violations(G):
    assert G.jacobi_check() == []


def test_ideal_is_an_ideal(G):
    ideal = set(G.ideal_indices)
    for i in range(G.dim):
        for j in ideal:
            for k in G.bracket_basis(i, j):
                assert k in ideal


def test_nilpotent_part_is_class_two(G):
    nil = [i for i, lab in enumerate(G.labels) if lab.kind in ("A", "Q", "C")]
    for i in nil:
        for j in nil:
            inner = G.bracket_basis(i, j)
            for m in inner:
                assert G.labels[m].kind == "C"
                for k in nil:
                    assert not G.bracket_basis(m, k)


def test_levi_part_closes_and_factors_commute(G):
    levi = set(G.levi_indices)
    for i in levi:
        for j in levi:
            for k in G.bracket_basis(i, j):
                assert k in levi
    for i in levi:
        for j in levi:
            if G.labels[i].kind == "L" and G.labels[j].kind == "J":
                assert not G.bracket_basis(i, j)


def test_aq_bracket_is_delta_c(G):
    for i in range(1, 4):
        for j in range(1, 4):
            for m in range(1, 5):
                for n in range(1, 5):
                    out = G.bracket(G.basis_element(lb.A(i, m)), G.basis_element(lb.Q(j, n)))
                    if i == j:
                        assert out == G.basis_element(lb.C(m, n))
                    else:
                        assert out.is_zero()


def test_hand_evaluated_examples(G):
    e = G.basis_element
    assert G.bracket(e(lb.J(1, 2)), e(lb.A(1, 3))) == -1 * e(lb.A(2, 3))
    assert G.bracket(e(lb.L(1, 4)), e(lb.C(4, 4))) == -2 * e(lb.C(1, 4))


# -- extensions ----------------------------------------------------------


def _sample_class(case):
    kwargs = {}
    if case in (3, 4, 5):
        kwargs["zeta2"] = F(2)
    if case in (8, 9):
        kwargs["cos_sin"] = (F(3, 5), F(4, 5))
    return ExtensionClass(case, **kwargs)


@pytest.mark.parametrize("case", range(1, 10))
def test_extended_passes_jacobi(case):
    ext = build_extended(_sample_class(case))
    assert ext.dim == 52
    assert ext.jacobi_check() == []


def test_extended_case1_k_is_central():
    ext = build_extended(1)
    k = ext.k_index
    for j in range(ext.dim):
        assert not ext.bracket_basis(k, j)


def test_extended_case7_brackets():
    ext = build_extended(7)
    e = ext.basis_element
    for i in range(1, 4):
        for m in range(1, 5):
            assert ext.bracket(e(lb.K), e(lb.A(i, m))) == -1 * e(lb.Q(i, m))
            assert ext.bracket(e(lb.K), e(lb.Q(i, m))) == e(lb.A(i, m))
    for m in range(1, 5):
        for n in range(m, 5):
            assert ext.bracket(e(lb.K), e(lb.C(m, n))).is_zero()


def test_k_commutes_with_external_and_internal(G):
    for case in range(1, 10):
        ext = build_extended(_sample_class(case))
        k = ext.k_index
        for j, lab in enumerate(ext.labels):
            if getattr(lab, "kind", None) in ("L", "J", "T", "Tp"):
                assert not ext.bracket_basis(k, j)


def test_ad_k_is_same_two_by_two_on_every_plane():
    ext = build_extended(_sample_class(9))
    e = ext.basis_element
    ref = None
    for i in range(1, 4):
        for m in range(1, 5):
            ka = ext.bracket(e(lb.K), e(lb.A(i, m)))
            kq = ext.bracket(e(lb.K), e(lb.Q(i, m)))
            block = (ka.coefficient(lb.A(i, m)), ka.coefficient(lb.Q(i, m)),
                     kq.coefficient(lb.A(i, m)), kq.coefficient(lb.Q(i, m)))
            assert sum(1 for v in ka.coeffs.values() if v) <= 2
            ref = ref or block
            assert block == ref


def test_c_coefficient_is_trace_of_plane_matrix():
    for case in range(1, 10):
        ext = build_extended(_sample_class(case))
        e = ext.basis_element
        ka = ext.bracket(e(lb.K), e(lb.A(1, 1)))
        kq = ext.bracket(e(lb.K), e(lb.Q(1, 1)))
        trace = ka.coefficient(lb.A(1, 1)) + kq.coefficient(lb.Q(1, 1))
        kc = ext.bracket(e(lb.K), e(lb.C(1, 2)))
        assert kc == trace * e(lb.C(1, 2))


def test_case8_as_printed_fails_jacobi_unless_cos_is_one():
    ext = build_extended(_sample_class(8), as_printed=True)
    violations = ext.jacobi_check()
    assert violations != []
    k = ext.k_index
    assert all(k in triple for triple in violations)
    # cos phi = 1 degenerates to the identity action, and the printed
    # [K, C] = 2C becomes the trace rule again
    ok = build_extended(ExtensionClass(8, cos_sin=(F(1), F(0))), as_printed=True)
    assert ok.jacobi_check() == []


def test_invalid_parameters_rejected():
    with pytest.raises(InvalidExtensionParameter):
        ExtensionClass(3, zeta2=F(1))
    with pytest.raises(InvalidExtensionParameter):
        ExtensionClass(4, zeta2=F(0))
    with pytest.raises(InvalidExtensionParameter):
        ExtensionClass(9, cos_sin=(F(0), F(1)))
    with pytest.raises(InvalidExtensionParameter):
        ExtensionClass(9, cos_sin=(F(1, 2), F(1, 2)))


# -- planar variant ------------------------------------------------------


def test_newstein2_dimension_and_jacobi():
    G2 = build_newstein2()
    assert G2.dim == 41  # 6 + 4 + 4 + 10 + 8 + 8 + 1
    assert G2.jacobi_check() == []


def test_newstein2_planar_rotation_action():
    G2 = build_newstein2()
    e = G2.basis_element
    J = e(lb.J(1, 2))
    for m in range(1, 5):
        assert G2.bracket(J, e(lb.A(1, m))) == -1 * e(lb.A(2, m))
        assert G2.bracket(J, e(lb.A(2, m))) == e(lb.A(1, m))
    assert G2.bracket(e(lb.A(1, 1)), e(lb.Q(2, 2))).is_zero()


# -- central cocycle ------------------------------------------------------


def test_beta_cocycle_values(G):
    w = beta_cocycle(G)
    t, tp = G.index[lb.T(1)], G.index[lb.Tp(1)]
    assert w.value(t, tp) == 1
    assert w.value(tp, t) == -1
    assert w.value(G.index[lb.T(4)], G.index[lb.Tp(4)]) == -1
    assert w.value(G.index[lb.T(1)], G.index[lb.T(2)]) == 0
    assert w.value(G.index[lb.T(1)], G.index[lb.Tp(2)]) == 0


def test_beta_cocycle_identity_holds(G):
    assert beta_cocycle(G).cocycle_violations() == []


def test_beta_cocycle_matches_group_exponent_derivative(G):
    """Finite-difference oracle on the exponent <t_1, Lambda_1 t_2'>.

    The infinitesimal cocycle is the antisymmetrized mixed derivative of the
    exponent along pairs of one-parameter subgroups; it must reproduce the
    stored w(T_mu, T'_nu) = g_{mu nu} and vanish on the other sampled pairs.
    """
    import numpy as np

    from newstein import grouplaw as gl

    def exponent(g1, g2):
        lv = gl.vector_rep(g1.Lam)
        t2p = lv @ g2.tp
        return (g1.t[0] * t2p[0] + g1.t[1] * t2p[1]
                + g1.t[2] * t2p[2] - g1.t[3] * t2p[3])

    w = beta_cocycle(G)
    eps = 1e-4
    samples = [lb.T(1), lb.T(4), lb.Tp(1), lb.Tp(4), lb.Tp(2), lb.L(1, 2),
               lb.L(1, 4), lb.A(1, 1), lb.Q(2, 3), lb.C(1, 2), lb.J(1, 2)]
    for x in samples:
        for y in samples:
            acc = 0.0
            for ss, st in ((eps, eps), (eps, -eps), (-eps, eps), (-eps, -eps)):
                gs, ht = gl.one_parameter(x, ss), gl.one_parameter(y, st)
                sign = 1.0 if ss * st > 0 else -1.0
                acc += sign * (exponent(gs, ht) - exponent(ht, gs))
            got = acc / (4 * eps * eps)
            want = float(w.value(G.index[x], G.index[y]))
            assert abs(got - want) < 1e-6, (x, y, got, want)


def test_beta_cocycle_rotation_invariance(G):
    w = beta_cocycle(G)
    for j in [i for i in G.levi_indices if G.labels[i].kind == "J"]:
        for x in range(G.dim):
            for y in range(x + 1, G.dim):
                total = F(0)
                for m, c in G.bracket_basis(j, x).items():
                    total += c * w.value(m, y)
                for m, c in G.bracket_basis(j, y).items():
                    total += c * w.value(x, m)
                assert total == 0


def test_cocycle_violation_detection(G):
    bad = CentralCocycle(G, {(G.index[lb.A(1, 1)], G.index[lb.Q(1, 2)]): F(1),
                             (G.index[lb.L(1, 2)], G.index[lb.T(1)]): F(1)})
    assert bad.cocycle_violations() != []
