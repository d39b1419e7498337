import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dtn_graph.cheeger import (
    KINDS,
    EnumerationTooLarge,
    admissible,
    cheeger_exact,
    cheeger_sweep,
    coarea_check,
    coarea_sides,
    l1_mean,
    quotient,
    sobolev_quotient,
)
from dtn_graph.dtn import assemble_dtn, spectrum
from dtn_graph.families import hub_fan_problem, hub_fan_witness, path_problem, random_problem, star_problem
from dtn_graph.harmonic import harmonic_extension

from conftest import RANDOM_SEEDS, fixture_problems, random_small
from oracles import brute_force_cheeger, weighted_median_grid


def test_l1_mean_tie():
    assert l1_mean([0.0, 1.0], [1.0, 1.0]) == ((0.0, 1.0), 0.0)


def test_l1_mean_constant():
    assert l1_mean([3.0] * 5, np.ones(5)) == ((3.0, 3.0), 3.0)


def test_l1_mean_against_grid():
    interval, center = l1_mean([0.0, 0.0, 5.0], [1.0, 1.0, 1.0])
    assert interval == (0.0, 0.0) and center == 0.0
    lo, hi = weighted_median_grid([0.0, 0.0, 5.0], [1.0, 1.0, 1.0])
    assert lo == pytest.approx(0.0, abs=1e-4) and hi == pytest.approx(0.0, abs=1e-4)


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=8).map(lambda xs: [x / 4 for x in xs]),
    st.data(),
)
def test_l1_mean_properties(f, data):
    m = data.draw(st.lists(st.integers(1, 4), min_size=len(f), max_size=len(f)))
    f, m = np.array(f), np.array(m, dtype=float)
    (lo, hi), center = l1_mean(f, m)
    assert center == lo <= hi
    half = m.sum() / 2
    cost = lambda k: float(np.sum(m * np.abs(f - k)))  # noqa: E731
    for k in np.linspace(lo, hi, 5):
        assert m[f >= k].sum() >= half and m[f <= k].sum() >= half
        assert cost(k) == pytest.approx(cost(lo), abs=1e-12)
    for eps in (1e-3, 0.1, 1.0):
        assert cost(lo - eps) > cost(lo) + 1e-12
        assert cost(hi + eps) > cost(hi) + 1e-12


def test_p6_constants(p6):
    e, j, c = (cheeger_exact(p6, k) for k in KINDS)
    assert e.value == 1 and j.value == 1 and c.value == 0.2
    assert e.witness.members == {"v1"} and j.witness.members == {"v1"}
    assert c.witness.members == {"v1", "v2", "v3"}
    assert e.exact and c.exact


@pytest.mark.parametrize("n", [6, 8, 10, 12])
def test_path_classic_constant(n):
    res = cheeger_exact(path_problem(n), "classic")
    assert res.value == pytest.approx(1 / (n - 1), rel=1e-15)
    assert res.witness.members == {f"v{i}" for i in range(1, n // 2 + 1)}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hub_fan_escobar(n):
    res = cheeger_exact(hub_fan_problem(n, validate=False), "escobar")
    assert res.value == 1 / (2 * n)
    assert res.witness.members == set(hub_fan_witness(n))


def test_star_constants():
    bp = star_problem(2)
    assert [cheeger_exact(bp, k).value for k in KINDS] == [1, 1, 1]


def test_enumeration_cap():
    bp = hub_fan_problem(6, validate=False)  # 26 closure vertices
    with pytest.raises(EnumerationTooLarge, match="cheeger_sweep"):
        cheeger_exact(bp, "escobar")


def test_unknown_kind(p6):
    with pytest.raises(ValueError):
        cheeger_exact(p6, "nope")


@pytest.mark.parametrize("seed", RANDOM_SEEDS[:15])
def test_exact_matches_brute_force(seed):
    bp = random_problem(3 + seed % 4, 2 + seed % 5, edge_prob=0.5, seed=1000 + seed)
    for kind in KINDS:
        assert cheeger_exact(bp, kind).value == pytest.approx(brute_force_cheeger(bp, kind), rel=1e-12)


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_constant_invariants(seed):
    bp = random_small(seed)
    res = {k: cheeger_exact(bp, k) for k in KINDS}
    h, hJ, hE = res["classic"].value, res["jammes"].value, res["escobar"].value
    assert h <= hJ <= hE
    assert hJ <= 1 + 1e-12
    for kind, r in res.items():
        assert admissible(bp, r.witness, kind)
        assert quotient(bp, r.witness, kind) == pytest.approx(r.value, abs=1e-12)
        if kind != "classic":
            assert r.witness.boundary_measure > 0
        assert len(r.witness) > 0


def test_parallel_enumeration_agrees():
    bp = random_problem(12, 10, edge_prob=0.4, seed=5)
    for kind in KINDS:
        a, b = cheeger_exact(bp, kind), cheeger_exact(bp, kind, workers=4)
        assert a == b


@pytest.mark.parametrize("seed", RANDOM_SEEDS[:10])
def test_scaling_invariance(seed):
    bp = random_small(seed)
    for kind in KINDS:
        assert cheeger_exact(bp.scaled(2.5), kind).value == pytest.approx(cheeger_exact(bp, kind).value, rel=1e-12)


def test_sobolev_quotient_examples(p6):
    assert sobolev_quotient(p6, p6.indicator(["v1"])) == 1
    wit = cheeger_exact(p6, "escobar").witness
    assert sobolev_quotient(p6, p6.indicator(wit)) == 1
    with pytest.raises(ValueError, match="degenerate"):
        sobolev_quotient(p6, p6.indicator(["v2", "v3"]))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 2**32 - 1))
def test_sobolev_quotient_never_below_h_E(seed, fseed):
    bp = random_small(seed % 60)
    h_E = cheeger_exact(bp, "escobar").value
    f = np.random.default_rng(fseed).uniform(-1, 1, len(bp.closure))
    assert sobolev_quotient(bp, f) >= h_E - 1e-10


@pytest.mark.parametrize("seed", RANDOM_SEEDS[:5])
def test_indicator_minimum_is_h_E(seed):
    bp = random_small(seed)
    N = len(bp.closure)
    best = np.inf
    for mask in range(1, 2 ** N):
        x = np.array([(mask >> i) & 1 for i in range(N)], dtype=float)
        xb = x[bp.n_interior:]
        if xb.min() == xb.max():
            continue
        best = min(best, sobolev_quotient(bp, x))
    assert best == pytest.approx(cheeger_exact(bp, "escobar").value, abs=1e-12)


def test_sweep_on_p6(p6):
    rep = spectrum(assemble_dtn(p6))
    f = harmonic_extension(p6, rep.fiedler)
    res = cheeger_sweep(p6, f, "escobar")
    assert res.value == 1 and not res.exact


@pytest.mark.parametrize("name, bp", fixture_problems().items())
def test_sweep_of_indicator_recovers_witness(name, bp):
    for kind in KINDS:
        ex = cheeger_exact(bp, kind)
        sw = cheeger_sweep(bp, bp.indicator(ex.witness), kind)
        assert sw.value == ex.value


@pytest.mark.parametrize("seed", RANDOM_SEEDS)
def test_sweep_upper_bounds_exact(seed):
    bp = random_small(seed)
    f = np.random.default_rng(seed).standard_normal(len(bp.closure))
    for kind in KINDS:
        try:
            sw = cheeger_sweep(bp, f, kind)
        except ValueError:
            continue
        assert sw.value >= cheeger_exact(bp, kind).value


def test_sweep_rejects_constant(p6):
    with pytest.raises(ValueError):
        cheeger_sweep(p6, np.ones(6), "escobar")


def test_coarea_examples(p6):
    f = p6.as_closure_array({f"v{i}": i - 1 for i in range(1, 7)})
    assert coarea_sides(p6, f) == (5.0, 5.0)
    assert coarea_sides(p6, np.full(6, 2.0)) == (0.0, 0.0)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 10_000), st.integers(0, 2**32 - 1))
def test_coarea_random(seed, fseed):
    bp = random_small(seed % 60)
    rng = np.random.default_rng(fseed)
    f = rng.uniform(-10, 10, len(bp.closure))
    if fseed % 3 == 0:
        f = np.round(f)  # repeated values
    scale = 1 + np.abs(f).max() * bp.m.sum()
    assert coarea_check(bp, f) <= 1e-10 * scale
