import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra import numpy as hnp

from oracles import dense_S, dense_S_hat, dense_Sp, dominant_eigvec, random_edges
from paperrank.citegraph import build_graph
from paperrank.ranking import (
    DampingParam,
    RankError,
    RankVector,
    default_max_iter,
    dummy_paperrank,
    normalized_citations,
    paperrank,
    perturbation_estimate,
    stochastic_matvec,
    strip_dummy,
    to_unit_interval,
)


@st.composite
def graphs(draw, max_n=20):
    n = draw(st.integers(1, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    edges = draw(st.lists(pair, max_size=3 * n))
    return n, edges


# stochastic matvec / normalized citations

def test_matvec_identity_when_edgeless():
    g = build_graph(3, [])
    np.testing.assert_array_equal(stochastic_matvec(g, [1.0, 2.0, 3.0]), [1, 2, 3])


def test_matvec_chain(chain):
    np.testing.assert_allclose(stochastic_matvec(chain, np.ones(3)), [11 / 6, 5 / 6, 1 / 3], rtol=1e-15)


def test_matvec_rejects_bad_input(chain):
    with pytest.raises(RankError):
        stochastic_matvec(chain, [1.0, 2.0])
    with pytest.raises(RankError):
        stochastic_matvec(chain, [1.0, np.nan, 0.0])


@given(graphs(), st.data())
def test_matvec_matches_dense_and_preserves_mass(gr, data):
    n, edges = gr
    g = build_graph(n, edges)
    x = data.draw(hnp.arrays(np.float64, n, elements=st.floats(-1e3, 1e3)))
    y = stochastic_matvec(g, x)
    np.testing.assert_allclose(y, dense_S(n, edges) @ x, rtol=1e-12, atol=1e-9)
    scale = max(np.abs(x).sum(), 1.0)
    assert abs(y.sum() - x.sum()) <= 1e-12 * scale


def test_normalized_citations_examples(chain):
    assert normalized_citations(build_graph(3, [])).scores.tolist() == [1, 1, 1]
    np.testing.assert_allclose(normalized_citations(chain).scores, [11 / 6, 5 / 6, 1 / 3], rtol=1e-15)


@given(graphs())
def test_normalized_citations_mass_is_n(gr):
    g = build_graph(*gr)
    assert normalized_citations(g).total == pytest.approx(g.n_papers, rel=1e-12)


@given(graphs(), st.data())
def test_new_paper_adds_exactly_one(gr, data):
    n, edges = gr
    refs = data.draw(st.lists(st.integers(0, n - 1), unique=True))
    before = normalized_citations(build_graph(n, edges)).total
    after = normalized_citations(build_graph(n + 1, edges + [(n, r) for r in refs])).total
    assert after - before == pytest.approx(1.0, abs=1e-12)


# damped model

@pytest.mark.parametrize("p", [0.0, 1.0, -0.1, 1.5])
def test_damping_param_rejects_endpoints(p):
    with pytest.raises(RankError):
        DampingParam(p)


def test_default_budget():
    assert default_max_iter(1e-10, 0.99) == 10 * math.ceil(math.log(1e-10) / math.log(0.99))


def test_paperrank_edgeless_uniform():
    for p in (0.3, 0.99):
        v, rep = paperrank(build_graph(4, []), p)
        np.testing.assert_allclose(v.scores, 0.25, rtol=1e-15)
        assert rep.converged


def test_paperrank_chain(chain):
    # closed form for the 3x3 upper-triangular S(p)
    p = 0.99
    v3 = (1 - p) / (3 - p)
    v2 = (p * v3 / 3 + (1 - p) / 3) / (1 - p / 2)
    expected = np.array([1 - v2 - v3, v2, v3])
    np.testing.assert_allclose(expected, [0.985173, 0.009852, 0.004975], atol=5e-7)
    v, rep = paperrank(chain, p, tol=1e-13)
    assert rep.converged
    np.testing.assert_allclose(v.scores, expected, atol=1e-11)


def test_paperrank_symmetric_blocks():
    # two disconnected 2-cliques
    g = build_graph(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    v, _ = paperrank(g, 0.99, tol=1e-14)
    np.testing.assert_allclose(v.scores, 0.25, atol=1e-14)


def test_paperrank_invalid_budget(chain):
    with pytest.raises(RankError):
        paperrank(chain, 0.99, tol=0.0)
    with pytest.raises(RankError):
        paperrank(chain, 0.99, tol=1e-8, max_iter=0)


def test_paperrank_nonconvergence_is_reported(chain):
    v, rep = paperrank(chain, 0.99, tol=1e-14, max_iter=3)
    assert not rep.converged
    assert rep.iterations == 3
    assert v.total == pytest.approx(1.0, abs=1e-12)
    # reported residual belongs to the returned vector
    r = np.abs(dense_Sp(3, [(1, 0), (2, 0), (2, 1)], 0.99) @ v.scores - v.scores).sum()
    assert rep.final_residual == pytest.approx(r, rel=1e-9)


@settings(max_examples=60, deadline=None)
@given(graphs(max_n=30), st.floats(0.5, 0.99))
def test_paperrank_matches_dense(gr, p):
    n, edges = gr
    v, rep = paperrank(build_graph(n, edges), p, tol=1e-12)
    assert rep.converged and rep.final_residual <= 1e-12
    assert v.scores.min() > 0
    assert abs(v.scores.sum() - 1) <= 1e-12
    ref = dominant_eigvec(dense_Sp(n, edges, p))
    assert np.abs(v.scores - ref).sum() <= 1e-10


def test_geometric_convergence():
    rng = np.random.default_rng(5)
    n = 200
    g = build_graph(n, random_edges(rng, n, 0.02))
    p = 0.9
    _, rep = paperrank(g, p, tol=1e-15, max_iter=2000)
    r = rep.residuals
    warm = 5
    for k in range(warm, len(r) - 10):
        if r[k + 10] < 1e-13:  # rounding floor
            break
        assert r[k + 10] <= r[k] * (p + 0.05) ** 10


# dummy-paper model

def test_dummy_requires_edges():
    with pytest.raises(RankError, match="L != 0"):
        dummy_paperrank(build_graph(3, []))


def test_dummy_star_graph():
    n = 6
    edges = [(j, 1) for j in range(n) if j != 1]
    ref = dominant_eigvec(dense_S_hat(n, edges))
    assert ref[0] > ref[1:].max()
    v, rep = dummy_paperrank(build_graph(n, edges), tol=1e-13)
    assert rep.converged
    assert v.scores[0] > v.scores[1:].max()
    np.testing.assert_allclose(v.scores, ref, atol=1e-11)


@settings(max_examples=40, deadline=None)
@given(graphs(max_n=20))
def test_dummy_primitivity_and_dense_match(gr):
    n, edges = gr
    g = build_graph(n, edges)
    if g.n_edges == 0:
        return
    Sh = dense_S_hat(n, edges)
    assert (np.linalg.matrix_power(Sh, 4) > 0).all()
    v, rep = dummy_paperrank(g, tol=1e-12)
    assert rep.converged and len(v) == n + 1
    assert np.abs(v.scores - dominant_eigvec(Sh)).sum() <= 1e-10


# strip / perturbation / unit interval

@pytest.mark.parametrize("v, expected", [
    ([0.5, 0.25, 0.25], [0.5, 0.5]),
    ([0.25] * 4, [1 / 3] * 3),
    ([0.5, 0.3, 0.2], [0.6, 0.4]),
])
def test_strip_dummy(v, expected):
    out = strip_dummy(RankVector(v, "sum-to-one"))
    np.testing.assert_allclose(out.scores, expected, rtol=1e-15)
    assert out.normalization == "sum-to-one"


def test_strip_dummy_too_short():
    with pytest.raises(RankError):
        strip_dummy([1.0])


def test_perturbation_estimate():
    np.testing.assert_allclose(perturbation_estimate([1.0, 0.0, 0.0], 0.7).scores, [0.8, 0.1, 0.1], rtol=1e-15)
    v = np.array([0.5, 0.3, 0.2])
    np.testing.assert_allclose(perturbation_estimate(v, 1 - 1e-15).scores, v, atol=1e-15)
    np.testing.assert_allclose(perturbation_estimate(np.full(5, 0.2), 0.4).scores, 0.2, rtol=1e-15)


def test_to_unit_interval():
    assert to_unit_interval([2.0, 1.0, 0.0]).scores.tolist() == [1.0, 0.5, 0.0]
    assert to_unit_interval([5.0]).scores.tolist() == [1.0]
    with pytest.raises(RankError):
        to_unit_interval([0.0, 0.0, 0.0])


@given(hnp.arrays(np.float64, st.integers(2, 30), elements=st.floats(1e-6, 1e3)))
def test_orderings_preserved(x):
    u = to_unit_interval(x).scores
    assert u.max() == 1.0
    np.testing.assert_array_equal(np.argsort(u, kind="stable"), np.argsort(x, kind="stable"))
    s = strip_dummy(x / x.sum()).scores
    np.testing.assert_array_equal(np.argsort(s, kind="stable"), np.argsort(x[1:], kind="stable"))


def test_rank_vector_validation():
    with pytest.raises(RankError):
        RankVector([-1.0, 2.0])
    with pytest.raises(RankError):
        RankVector([1.0], "percent")
