import math

import pytest

import hbnum


def quick():
    return hbnum.SamplerConfig(chains=3, iterations=3000, burnin=1000, thin=2, seed=7)


def test_fit_recovers_simulated_slope():
    sim = hbnum.simulate(n_subjects=20, noise_sd=20.0, seed=3)
    post = hbnum.fit(sim["subjects"], sim["x"], sim["y"], hbnum.snarc_spec(), quick())
    assert post.n_chains == 3
    assert post.draws_per_chain == 1000
    b = post.pooled("b")
    assert len(b) == 3000
    assert abs(sum(b) / len(b) + 10.0) < 2.0
    lo, hi = hbnum.hpdi(b, 0.95)
    assert lo < hbnum.posterior_mode(b) < hi
    assert set(post.rhat()) == set(post.parameter_names)
    names = [row["parameter"] for row in post.summary()]
    assert names == post.parameter_names


def test_fit_is_deterministic():
    sim = hbnum.simulate(n_subjects=5, seed=4)
    a = hbnum.fit(sim["subjects"], sim["x"], sim["y"], config=quick())
    b = hbnum.fit(sim["subjects"], sim["x"], sim["y"], config=quick())
    assert a.to_csv() == b.to_csv()


def test_specs():
    s = hbnum.snarc_spec()
    assert (s.intercept_bounds.lo, s.intercept_bounds.hi) == (-200.0, 200.0)
    n = hbnum.nde_spec()
    assert (n.slope_mean_bounds.lo, n.slope_mean_bounds.hi) == (-100.0, 100.0)
    assert len(n.predictor_values) == 4


def test_summaries_and_classical_statistics():
    assert hbnum.hpdi([0, 1, 2, 3, 10], 0.6) == (0.0, 2.0)
    t, df, p = hbnum.one_sample_t([1, 2, 3])
    assert df == 2
    assert t == pytest.approx(3.4641016, rel=1e-7)
    assert p == pytest.approx(0.0742, abs=1e-4)
    lo, hi = hbnum.mean_ci([1, 2, 3], 0.95)
    assert lo == pytest.approx(-0.484, abs=1e-3)
    assert hi == pytest.approx(4.484, abs=1e-3)
    intercept, slope = hbnum.ols_fit([1, 2, 8, 9], [1, 1, -1, -1])
    assert (intercept, slope) == (pytest.approx(1.4), pytest.approx(-0.28))
    same = [0.0, 1.0, 2.0, 3.0]
    assert hbnum.rhat([same, same]) == pytest.approx(math.sqrt(3 / 4))
    assert hbnum.tail_prob([-1, 1], 0.0) == 0.5


def test_savage_dickey_orientation():
    import random

    rng = random.Random(1)
    draws = [rng.gauss(0.0, 1.0) for _ in range(50000)]
    r = hbnum.savage_dickey_bf(draws, 0.025)
    assert r["method"] == "normal"
    assert r["bf10"] == pytest.approx(0.0627, rel=0.1)


def test_load_trials_filters_and_aggregates():
    rows = ["subject,stimulus,hand,rt_ms,error"]
    for j in (1, 2, 8, 9):
        rows += [f"s1,{j},L,400,0", f"s1,{j},R,{490 - 10 * j},0", f"s1,{j},R,9000,0", f"s1,{j},L,300,1"]
    out = hbnum.load_trials("\n".join(rows) + "\n", "snarc")
    assert out["filter"]["retained"] == 8
    assert out["filter"]["removed_errors"] == 4
    assert out["filter"]["removed_slow"] == 4
    assert out["x"] == [1.0, 2.0, 8.0, 9.0]
    assert out["y"] == [80.0, 70.0, 10.0, 0.0]


def test_errors_surface_as_python_exceptions():
    with pytest.raises(ValueError):
        hbnum.load_trials("subject,stimulus,hand,rt_ms,error\ns1,1,Q,400,0\n", "snarc")
    with pytest.raises(ValueError):
        hbnum.posterior_mode([2.0, 2.0, 2.0])
    with pytest.raises(ValueError):
        hbnum.ols_fit([4, 4, 4], [1, 2, 3])


def test_cli_entry(tmp_path):
    status, out, err = hbnum.run_cli(
        ["compare", "--seed", "2", "--iters", "2000", "--burnin", "500", "--thin", "5", "--out", str(tmp_path)]
    )
    assert status == 0, err
    assert (tmp_path / "comparison.json").exists()
    assert "classical" in out
