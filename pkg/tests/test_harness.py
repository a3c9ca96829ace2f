import json
from fractions import Fraction

import pytest

from randpart.errors import GridMismatch, ValidationError
from randpart.harness import (
    ExperimentConfig,
    compare,
    empirical_cdf,
    ks_distance,
    reference_values,
    run_monte_carlo,
    sample_histogram,
)


def test_ks_distance():
    a = {(1, 1): 0.2, (1, 2): 0.5}
    assert ks_distance(a, dict(a)) == 0
    assert ks_distance(a, {c: v + 0.1 for c, v in a.items()}) == pytest.approx(0.1)
    with pytest.raises(GridMismatch):
        ks_distance(a, {(1, 1): 0.2})


def test_config_validation():
    with pytest.raises(ValidationError):
        ExperimentConfig(5, 4, 10, 0)
    with pytest.raises(ValidationError):
        ExperimentConfig(5, 1, 0, 0)
    with pytest.raises(ValidationError):
        ExperimentConfig(5, 1, 10, 0, method="boltzmann")
    with pytest.raises(ValidationError):
        run_monte_carlo(ExperimentConfig(60, 2, 10, 0))


@pytest.mark.parametrize("proc", [1, 2, 3])
def test_single_draw_report(proc):
    rep = run_monte_carlo(ExperimentConfig(7, proc, 1, seed=3))
    assert rep.mass == 1
    assert all(e in (0.0, 1.0) for _, _, _, e, _, _ in rep.cells)
    assert rep.ks_statistic >= 0
    json.loads(rep.to_json())


def test_reproducible_bytes():
    cfg = ExperimentConfig(9, 2, 2000, seed=42, replicas=3)
    assert run_monte_carlo(cfg).to_json() == run_monte_carlo(cfg).to_json()
    assert run_monte_carlo(cfg).to_csv() == run_monte_carlo(cfg).to_csv()


def test_concurrency_does_not_change_output():
    serial = ExperimentConfig(8, 3, 600, seed=7, replicas=2, workers=1)
    pooled = ExperimentConfig(8, 3, 600, seed=7, replicas=2, workers=2)
    assert sample_histogram(serial) == sample_histogram(pooled)


def test_replica_streams_follow_seed_xor():
    from randpart.counting import build_count_table
    from randpart.sampler import ExactSampler, draw_part, make_rng

    cfg = ExperimentConfig(6, 2, 50, seed=1000, replicas=2)
    t = build_count_table(6)
    hist = {}
    for r, k in enumerate((25, 25)):
        rng = make_rng(1000 ^ r)
        s = ExactSampler(t)
        for _ in range(k):
            d = draw_part(s.sample(6, rng), 2, rng)
            hist[(d.mu, d.sigma)] = hist.get((d.mu, d.sigma), 0) + 1
    assert sample_histogram(cfg) == hist


def test_empirical_cdf_procedure_conventions():
    hist = {(1, 1): 2, (2, 1): 1, (1, 3): 1, (9, 2): 1}
    cfg1 = ExperimentConfig(3, 1, 5, 0, ks=(1, 2))
    cdf = empirical_cdf(hist, cfg1)
    assert cdf[(1, 1)] == 2 and cdf[(2, 1)] == 3 and cdf[(2, 3)] == 4
    cfg2 = ExperimentConfig(3, 2, 5, 0, ks=(1, 2))
    cdf = empirical_cdf(hist, cfg2)
    assert cdf[(1, 3)] == 3 and cdf[(2, 3)] == 1


def test_oracle_agreement_moderate_sample():
    rep = run_monte_carlo(ExperimentConfig(10, 2, 100_000, seed=5))
    assert rep.mass == 1
    # 4.5 sigma of a binomial at p = 1/2
    assert rep.ks_statistic <= 4.5 * 0.5 / 100_000**0.5


def test_fristedt_method_agrees_with_oracle():
    rep = run_monte_carlo(ExperimentConfig(8, 3, 50_000, seed=9, method="fristedt"))
    assert rep.ks_statistic <= 4.5 * 0.5 / 50_000**0.5


def test_limit_reference_grid():
    cfg = ExperimentConfig(100, 2, 10, 0, reference="limit", ks=(1,))
    ref = reference_values(cfg)
    from randpart.limitlaws import L2
    from randpart.sampler import C

    assert ref[(1, 10)] == pytest.approx(L2(1, C * 10 / 10))
    cfg1 = ExperimentConfig(100, 1, 10, 0, reference="limit", ks=(10,))
    # d = s = 10 = sqrt(n): u = v = 1
    assert reference_values(cfg1)[(10, 10)] == pytest.approx(1.0)


def test_ks_shrinks_with_sample_size():
    def mean_ks(N):
        return sum(run_monte_carlo(ExperimentConfig(10, 2, N, seed=s)).ks_statistic for s in range(10)) / 10

    small, large = mean_ks(2000), mean_ks(8000)
    assert 0.3 < large / small < 0.8


def test_compare_from_histogram():
    cfg = ExperimentConfig(4, 2, 4, 0, ks=(1,))
    hist = {(1, 4): 1, (2, 1): 1, (1, 3): 1, (1, 1): 1}
    rep = compare(cfg, hist)
    assert rep.empirical()[(1, 4)] == 0.75
    assert rep.reference()[(1, 4)] == 0.5
    assert rep.ks_statistic == pytest.approx(max(abs(0.75 - 0.5), abs(0.25 - 0.2), abs(0.25 - Fraction(3, 10))))
