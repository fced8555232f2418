"""Acceptance gate: ten executable release criteria, one test each.

Each test states a shippable claim about the library as a whole — algebraic
identities, enumeration-oracle agreement, closed-form anchors, Monte Carlo
reproduction bands, asymptotic normality, interval coverage, determinism and
the CLI fixtures.  Tolerances and seeds are pinned on purpose: a failure
here is a release blocker, not a flaky test to rerun.
"""

import itertools
import math
import time

import numpy as np
from scipy import stats
from scipy.special import ndtr

from gimtools import (
    Exponential,
    Lognormal,
    Pareto,
    SeededStream,
    SimCell,
    confidence_interval,
    default_grid,
    draw_sample,
    edf_numerator_variance,
    gim_ustat,
    gim_ustat_naive,
    gini_ustat,
    gmd,
    jackknife_variance,
    make_sample,
    max_moment_u,
    min_moment_u,
    projection_variance,
    run_cell,
    run_grid,
    theoretical_gim,
)
from gimtools.cli import main
from gimtools.distributions import _MIN_UNIFORM
from gimtools.measures import subset_weights


def _mixed_sample(rng, n):
    """One sample from a randomly chosen family, for identity sweeps."""
    kind = int(rng.integers(0, 3))
    if kind == 0:
        x = rng.exponential(2.0, n)
    elif kind == 1:
        x = rng.pareto(3.0, n) + 1.0
    else:
        x = rng.lognormal(0.0, 0.5, n)
    return make_sample(x)


def test_criterion_01_gini_identity():
    """gim_ustat(s, 2) equals gmd(s) / (2 * mean) to 1e-12 on 1,000 samples."""
    rng = np.random.Generator(np.random.Philox(key=[1001, 0]))
    t0 = time.perf_counter()
    worst = 0.0
    for _ in range(1000):
        s = _mixed_sample(rng, int(rng.integers(2, 201)))
        lhs = gim_ustat(s, 2).value
        rhs = gmd(s) / (2.0 * float(np.mean(s.values)))
        worst = max(worst, abs(lhs - rhs))
        worst = max(worst, abs(lhs - gini_ustat(s)))
    elapsed = time.perf_counter() - t0
    assert worst <= 1e-12, f"worst identity gap {worst:.3e}"
    assert elapsed < 5.0, f"identity sweep took {elapsed:.2f}s"


def test_criterion_02_enumeration_oracle():
    """Weighted estimator matches subset enumeration (values and moments)."""
    rng = np.random.Generator(np.random.Philox(key=[1002, 0]))
    t0 = time.perf_counter()
    for _ in range(200):
        n = int(rng.integers(2, 13))
        s = _mixed_sample(rng, n)
        for v in range(1, n + 1):
            fast = gim_ustat(s, v)
            slow = gim_ustat_naive(s, v)
            assert abs(fast.value - slow.value) <= 1e-10
            idx = np.array(list(itertools.combinations(range(n), v)))
            sub = s.values[idx]
            assert abs(max_moment_u(s, v) - sub.max(axis=1).mean()) <= 1e-10
            assert abs(min_moment_u(s, v) - sub.min(axis=1).mean()) <= 1e-10
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0, f"oracle sweep took {elapsed:.2f}s"


def test_criterion_03_theoretical_anchors():
    """Closed forms and quadrature both hit the hand-derived anchors."""
    anchors = [
        (Exponential(1.0), 2, 0.5),
        (Exponential(1.0), 3, 9.0 / 13.0),
        (Pareto(3.0, 1.0), 2, 0.2),
        (Lognormal(0.0, 1.0), 2, 2.0 * float(ndtr(1.0 / math.sqrt(2.0))) - 1.0),
    ]
    for dist, v, anchor in anchors:
        closed = theoretical_gim(dist, v)
        quad = theoretical_gim(dist, v, force_quadrature=True)
        assert abs(closed - anchor) <= 1e-7, (dist.name, v)
        assert abs(quad - anchor) <= 1e-7, (dist.name, v)


def test_criterion_04_exponential_bias_mse_bands():
    """Exponential v=2 study lands in the published bias/MSE bands."""
    t0 = time.perf_counter()
    small = run_cell(
        SimCell(Exponential(1.0), n=20, v=2, replications=10_000, base_seed=101)
    )
    large = run_cell(
        SimCell(Exponential(1.0), n=200, v=2, replications=10_000, base_seed=101)
    )
    elapsed = time.perf_counter() - t0
    assert abs(small.bias_u) <= 0.005, small.bias_u
    assert 0.003 <= small.mse_u <= 0.005, small.mse_u
    assert 0.020 <= small.bias_edf <= 0.030, small.bias_edf
    assert abs(large.bias_u) <= 0.003, large.bias_u
    assert abs(large.bias_edf) <= 0.003, large.bias_edf
    assert large.mse_u <= 0.001, large.mse_u
    assert large.mse_edf <= 0.001, large.mse_edf
    assert elapsed < 120.0, f"study took {elapsed:.2f}s"


def test_criterion_05_grid_pattern():
    """Bias and MSE fall with n (within 2 MC SEs) on every (family, v) slice;
    the Pareto pairwise-estimator bias is negative at n <= 100."""
    dists = [Exponential(1.0), Pareto(3.0, 1.0), Lognormal(0.0, 0.5)]
    reps = 4000
    results = run_grid(default_grid(dists, replications=reps, base_seed=1))

    slices = {}
    for res in results:
        key = (res.cell.dist.name, res.cell.dist.params_label(), res.cell.v)
        slices.setdefault(key, []).append(res)
    assert len(slices) == 6

    # MC standard error of an MSE estimate, near-normal approximation
    mse_se = lambda mse: mse * math.sqrt(2.0 / reps)

    for key, rows in slices.items():
        rows.sort(key=lambda r: r.cell.n)
        for prev, nxt in zip(rows, rows[1:]):
            for bias, se in (("bias_u", "mc_se_u"), ("bias_edf", "mc_se_edf")):
                slack = 2.0 * math.hypot(getattr(prev, se), getattr(nxt, se))
                assert abs(getattr(nxt, bias)) <= abs(getattr(prev, bias)) + slack, (
                    key, nxt.cell.n, bias,
                )
            for mse in ("mse_u", "mse_edf"):
                slack = 2.0 * math.hypot(
                    mse_se(getattr(prev, mse)), mse_se(getattr(nxt, mse))
                )
                assert getattr(nxt, mse) <= getattr(prev, mse) + slack, (
                    key, nxt.cell.n, mse,
                )

    for res in results:
        if res.cell.dist.name == "pareto" and res.cell.n <= 100:
            assert res.bias_u < 0.0, (res.cell.v, res.cell.n, res.bias_u)


def test_criterion_06_asymptotic_normality():
    """Jackknife-standardized estimates pass a KS test against N(0, 1).

    The statistic is sqrt(n) (GIM-hat - 1/2) / (v sigma-hat) with the
    jackknife plugged in for v sigma-hat / sqrt(n), i.e. the estimate's own
    standard error — so the ratio below is that statistic verbatim.
    """
    reps, n, v = 5000, 500, 2
    dist = Exponential(1.0)
    z = np.empty(reps)
    for r in range(reps):
        s = draw_sample(dist, n, SeededStream(7001, r))
        est = gim_ustat(s, v).value
        z[r] = (est - 0.5) / jackknife_variance(s, v).std_error
    p = float(stats.kstest(z, "norm").pvalue)
    assert p >= 0.01, f"KS p-value {p:.4f}"


def _numerator_draws(dist, n, v, reps, seed, chunk=250):
    """Monte Carlo draws of the estimated E(max - min), one per stream."""
    w_max, w_min = subset_weights(n, v)
    w_num = w_max - w_min
    out = np.empty(reps)
    for lo in range(0, reps, chunk):
        hi = min(lo + chunk, reps)
        u = np.empty((hi - lo, n))
        for j, r in enumerate(range(lo, hi)):
            u[j] = SeededStream(seed, r).generator().random(n)
        np.maximum(u, _MIN_UNIFORM, out=u)
        x = dist._q(u, 1.0 - u)
        x.sort(axis=1)
        out[lo:hi] = np.sum(w_num * x, axis=1)
    return out


def test_criterion_07_variance_oracles():
    """Plug-in projection variance and numerator variance match analytics."""
    s = draw_sample(Exponential(1.0), 100_000, SeededStream(97, 0))
    assert abs(projection_variance(s, 2) - 1.0 / 3.0) <= 0.03 / 3.0

    draws = _numerator_draws(Exponential(1.0), 10_000, 2, reps=10_000, seed=4242)
    mc = 10_000 * float(np.var(draws, ddof=1))
    target = edf_numerator_variance(Exponential(1.0), 2)
    assert abs(mc - target) <= 0.05 * target, (mc, target)


def test_criterion_08_interval_coverage():
    """95% jackknife intervals cover GIM(2) = 1/2 between 93% and 97%."""
    reps, n, v = 2000, 500, 2
    dist = Exponential(1.0)
    hits = 0
    for r in range(reps):
        s = draw_sample(dist, n, SeededStream(9001, r))
        est = gim_ustat(s, v).value
        ve = confidence_interval(est, jackknife_variance(s, v), level=0.95)
        hits += ve.ci_low <= 0.5 <= ve.ci_high
    coverage = hits / reps
    assert 0.93 <= coverage <= 0.97, f"coverage {coverage:.4f}"


def test_criterion_09_simulate_determinism(tmp_path):
    """Fixed-seed simulate output is byte-identical across runs and workers."""
    paths = [tmp_path / name for name in ("a.csv", "b.csv", "c.csv")]
    base = ["simulate", "--reps", "200", "--seed", "5"]
    assert main(base + ["--out", str(paths[0])]) == 0
    assert main(base + ["--out", str(paths[1])]) == 0
    assert main(base + ["--out", str(paths[2]), "--workers", "8"]) == 0
    blobs = [p.read_bytes() for p in paths]
    assert blobs[0] == blobs[1] == blobs[2]
    assert blobs[0].startswith(b"family,params,v,n,estimator,bias,mse,mc_se,truth")


def test_criterion_10_describe_fixture(tmp_path, capsys):
    """describe on 0..4 prints mean 2.00, SD 1.58, range 4.00, skewness 0.00."""
    path = tmp_path / "fixture.csv"
    path.write_text("income\n0\n1\n2\n3\n4\n")
    assert main(["describe", "--input", str(path)]) == 0
    out = capsys.readouterr().out
    rows = {line.split()[0]: line.split()[1] for line in out.strip().splitlines()}
    assert rows["mean"] == "2.00"
    assert rows["sd"] == "1.58"
    assert rows["range"] == "4.00"
    assert rows["skewness"] == "0.00"
