import numpy as np
import pytest

from lsqcentrality import (
    EmptyNetworkError,
    KatzParameterError,
    fit_degree,
    fit_eigenvector,
    fit_katz,
    from_matrix,
    rank,
    stats,
    unique_contribution,
)
from lsqcentrality.model import BilinearModel, UcReport, oracle_delta_ss
from lsqcentrality.undirected import closed_form_uc

from conftest import k3, random_undirected_suite, rel_err, star4

FITTERS = {"degree": fit_degree, "eigenvector": fit_eigenvector, "katz": fit_katz}


def test_degree_on_k3():
    fit = fit_degree(k3())
    np.testing.assert_allclose(fit.x, [1 / 3] * 3)
    assert fit.params["a"] == 2.0
    np.testing.assert_allclose(fit.estimate(), np.full((3, 3), 2 / 3))
    assert fit.quality.ss == pytest.approx(2.0)
    assert fit.quality.r2 == pytest.approx(0.0, abs=1e-15)
    uc = unique_contribution(fit, k3()).uc
    np.testing.assert_allclose(uc, [16 / 9] * 3)
    np.testing.assert_allclose(unique_contribution(fit, k3(), "oracle").uc, uc)


def test_degree_on_star():
    fit = fit_degree(star4())
    np.testing.assert_allclose(fit.x, [3 / 6, 1 / 6, 1 / 6, 1 / 6])
    assert fit.x.sum() == pytest.approx(1.0)


def test_degree_on_florentine(florentine):
    fit = fit_degree(florentine)
    assert fit.x[florentine.index("Medici")] == pytest.approx(0.15)
    assert int(np.argmax(fit.x)) == florentine.index("Medici")


def test_eigenvector_on_k3():
    fit = fit_eigenvector(k3())
    assert fit.params["gamma"] == pytest.approx(2.0)
    np.testing.assert_allclose(fit.x, [1 / np.sqrt(3)] * 3)
    assert fit.quality.ss == pytest.approx(2.0)
    np.testing.assert_allclose(unique_contribution(fit, k3()).uc, [14 / 9] * 3)
    np.testing.assert_allclose(unique_contribution(fit, k3(), "oracle").uc, [14 / 9] * 3)


def test_eigenvector_on_single_edge():
    net = from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    fit = fit_eigenvector(net)
    assert fit.params["gamma"] == pytest.approx(1.0)
    np.testing.assert_allclose(fit.estimate(), np.full((2, 2), 0.5))
    assert fit.quality.ss == pytest.approx(1.0)


def test_eigenvector_flags_disconnected_support():
    A = np.zeros((5, 5))
    A[0, 1] = A[1, 0] = A[1, 2] = A[2, 1] = A[0, 2] = A[2, 0] = 1.0
    A[3, 4] = A[4, 3] = 1.0
    fit = fit_eigenvector(from_matrix(A))
    assert "ambiguous_support" in fit.flags
    assert "ambiguous_support" not in fit_eigenvector(k3()).flags


def test_katz_on_k3():
    fit = fit_katz(k3(), alpha=0.25)
    np.testing.assert_allclose(fit.x, [2.0, 2.0, 2.0])
    assert fit.params["gamma"] == pytest.approx(1 / 3)
    assert fit.params["B"] == pytest.approx(1 / (0.25 * 6))


def test_katz_default_alpha_is_half_inverse_radius(florentine):
    fit = fit_katz(florentine)
    assert fit.params["alpha"] * fit.params["lambda1"] == pytest.approx(0.5)
    assert fit.params["beta"] == 1.0


def test_katz_errors():
    with pytest.raises(KatzParameterError):
        fit_katz(k3(), alpha=2.0)
    with pytest.raises(ValueError):
        fit_katz(k3(), alpha=0.0)


def test_katz_ranking_invariant_under_beta(florentine):
    base = unique_contribution(fit_katz(florentine), florentine).ranks
    for c in (0.1, 3.0, 40.0):
        assert unique_contribution(fit_katz(florentine, beta=c), florentine).ranks == base


@pytest.mark.parametrize("fitter", [fit_degree, fit_eigenvector, fit_katz])
def test_empty_network_is_an_error(fitter):
    with pytest.raises(EmptyNetworkError):
        fitter(from_matrix(np.zeros((3, 3))))


def test_directed_network_rejected():
    with pytest.raises(ValueError):
        fit_degree(from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]])))


def test_isolated_node_has_zero_degree_uc():
    A = np.zeros((4, 4))
    A[0, 1] = A[1, 0] = A[1, 2] = A[2, 1] = 1.0
    net = from_matrix(A)
    assert unique_contribution(fit_degree(net), net).uc[3] == 0.0


@pytest.mark.parametrize("name", list(FITTERS))
def test_closed_form_matches_oracle_on_random_suite(name):
    for net in random_undirected_suite():
        fit = FITTERS[name](net)
        cf = unique_contribution(fit, net).uc
        oracle = unique_contribution(fit, net, "oracle").uc
        assert rel_err(cf, oracle) <= 1e-8, (name, net.n)


@pytest.mark.parametrize("name", list(FITTERS))
def test_stationarity(name, florentine):
    for net in [florentine, k3(), star4(), *random_undirected_suite(8)]:
        fit = FITTERS[name](net)
        grad = fit.model.ss_gradient(net.matrix)
        assert np.abs(grad).max() <= 1e-8 * fit.quality.tss


def test_uc_is_sign_invariant(florentine):
    fit = fit_eigenvector(florentine)
    flipped = BilinearModel.lowrank(fit.params["gamma"], -fit.x, -fit.x, tied=True)
    a = oracle_delta_ss(fit.model, florentine.matrix)
    b = oracle_delta_ss(flipped, florentine.matrix)
    np.testing.assert_allclose(a, b, rtol=1e-12, atol=1e-12)
    x_neg = fit.__class__(fit.kind, -fit.x, fit.params, fit.quality, flipped, fit.labels)
    np.testing.assert_allclose(closed_form_uc(x_neg, florentine), closed_form_uc(fit, florentine))


def test_rank_ties_break_by_label():
    rep = UcReport.build(np.ones(3), ["c", "a", "b"], "closed_form")
    assert rank(rep) == ["a", "b", "c"]


def test_florentine_eigenvector_ranks(florentine):
    ranks = unique_contribution(fit_eigenvector(florentine), florentine).ranks
    assert ranks[0] == "Medici"
    assert ranks.index("Ridolfi") + 1 == 3


def test_r2_adj_definition(florentine):
    q = fit_degree(florentine).quality
    n = florentine.n
    assert q.r2_adj == pytest.approx(1 - (1 - q.r2) * n / (n - 1))
    assert q.r2_adj <= q.r2
    assert q.tss == pytest.approx(stats(florentine).tss)
