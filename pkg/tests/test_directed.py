import numpy as np
import pytest

from lsqcentrality import (
    EmptyNetworkError,
    fit_degree_directed,
    fit_eigenvector,
    fit_hits,
    fit_multicomponent_directed,
    from_matrix,
    uc_directed,
    unique_contribution,
)

from conftest import directed_cycle3, random_directed_suite, rel_err, same_order, single_directed_edge

FITTERS = {
    "degree": fit_degree_directed,
    "hits": fit_hits,
    "mc1": lambda n: fit_multicomponent_directed(n, 1),
    "mc2": lambda n: fit_multicomponent_directed(n, min(2, n.n)),
    "mc3": lambda n: fit_multicomponent_directed(n, min(3, n.n)),
    "mcN": lambda n: fit_multicomponent_directed(n, n.n),
}


def test_degree_single_edge():
    net = single_directed_edge()
    fit = fit_degree_directed(net)
    np.testing.assert_array_equal(fit.x_out, [1.0, 0.0])
    np.testing.assert_array_equal(fit.x_in, [0.0, 1.0])
    rep = uc_directed(fit, net)
    assert rep.uc_out[0] == pytest.approx(2 / 3)
    assert rep.uc_in[0] == 0.0
    assert fit.quality.s_eff == 2


def test_degree_symmetric_cases():
    pair = from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]), directed=True)
    fit = fit_degree_directed(pair)
    np.testing.assert_allclose(fit.x_out, [0.5, 0.5])
    np.testing.assert_allclose(fit.x_in, [0.5, 0.5])
    cyc = fit_degree_directed(directed_cycle3())
    np.testing.assert_allclose(cyc.x_out, [1 / 3] * 3)
    np.testing.assert_allclose(cyc.x_in, [1 / 3] * 3)


def test_hits_single_edge_is_exact():
    net = single_directed_edge()
    fit = fit_hits(net)
    assert fit.params["gamma"] == pytest.approx(1.0)
    np.testing.assert_allclose(fit.estimate(), net.matrix, atol=1e-15)
    assert fit.quality.r2 == pytest.approx(1.0)
    rep = uc_directed(fit, net)
    assert rep.uc_tot[0] == pytest.approx(4 / 3)


def test_hits_on_cycle():
    fit = fit_hits(directed_cycle3())
    assert fit.params["gamma"] == pytest.approx(1.0)
    assert fit.quality.s_eff == 2


def test_symmetric_network_as_directed_matches_eigenvector(florentine):
    d = from_matrix(florentine.matrix, florentine.node_labels, directed=True)
    rep = uc_directed(fit_hits(d), d)
    ev = unique_contribution(fit_eigenvector(florentine), florentine)
    assert rep.ranks_out == ev.ranks
    assert rep.ranks_in == ev.ranks


def test_mc_full_rank_and_s1():
    for net in random_directed_suite(10):
        full = fit_multicomponent_directed(net, net.n)
        np.testing.assert_allclose(full.estimate(), net.matrix, atol=1e-8)
        assert full.quality.s_eff == 2 * net.n
        np.testing.assert_allclose(fit_multicomponent_directed(net, 1).estimate(),
                                   fit_hits(net).estimate(), atol=1e-10)


def test_rank_two_matrix_fits_exactly():
    A = np.zeros((4, 4))
    A[0, 1] = A[0, 2] = A[3, 1] = A[3, 2] = 1.0  # rank 1 block
    A[1, 3] = A[2, 0] = 1.0
    net = from_matrix(A, directed=True)
    r = np.linalg.matrix_rank(A)
    fit = fit_multicomponent_directed(net, r)
    assert fit.quality.r2 == pytest.approx(1.0)


@pytest.mark.parametrize("name", list(FITTERS))
def test_closed_form_matches_oracle(name):
    for net in random_directed_suite():
        fit = FITTERS[name](net)
        cf = uc_directed(fit, net)
        oracle = uc_directed(fit, net, "oracle")
        for scope in ("out", "in", "tot"):
            a, b = getattr(cf, f"uc_{scope}"), getattr(oracle, f"uc_{scope}")
            assert rel_err(a, b) <= 1e-8, (name, scope, net.n)


def test_hits_total_identity():
    for net in random_directed_suite(10):
        fit = fit_hits(net)
        rep = uc_directed(fit, net)
        g = fit.params["gamma"]
        tss = fit.quality.tss
        np.testing.assert_allclose(tss * rep.uc_tot,
                                   tss * (rep.uc_out + rep.uc_in) + (g * fit.x_out * fit.x_in) ** 2,
                                   rtol=1e-12, atol=1e-15)


def test_degree_uc_ranks_follow_raw_degrees():
    for net in random_directed_suite():
        rep = uc_directed(fit_degree_directed(net), net)
        assert same_order(rep.uc_out, net.out_degree())
        assert same_order(rep.uc_in, net.in_degree())


def test_isolated_node_zero_total():
    A = np.zeros((3, 3))
    A[0, 1] = 1.0
    net = from_matrix(A, directed=True)
    assert uc_directed(fit_degree_directed(net), net).uc_tot[2] == 0.0


def test_stationarity():
    for net in [single_directed_edge(), directed_cycle3(), *random_directed_suite(10)]:
        for fitter in FITTERS.values():
            fit = fitter(net)
            grad = fit.model.ss_gradient(net.matrix)
            assert np.abs(grad).max() <= 1e-8 * fit.quality.tss


def test_errors():
    empty = from_matrix(np.zeros((3, 3)), directed=True)
    with pytest.raises(EmptyNetworkError):
        fit_degree_directed(empty)
    with pytest.raises(EmptyNetworkError):
        fit_hits(empty)
    with pytest.raises(ValueError):
        fit_multicomponent_directed(directed_cycle3(), 4)
    with pytest.raises(ValueError):
        uc_directed(fit_hits(directed_cycle3()), directed_cycle3(), "guess")


def test_scope_report(florentine):
    net = directed_cycle3()
    rep = uc_directed(fit_degree_directed(net), net)
    assert rep.scope("out").ranks == rep.ranks_out
    assert rep.scope("tot").ranks == rep.ranks_tot
