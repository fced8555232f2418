"""Variance estimation and confidence intervals for the GIM estimators.

Large-sample theory says sqrt(n) * (estimate - GIM(v)) is asymptotically
normal for both estimators.  This module provides:

* ``projection_variance`` — the plug-in estimate of the variance driver of
  the U-statistic numerator (the variance of its one-argument projection);
* ``ustat_variance`` — the plug-in large-sample variance of the U-statistic
  ratio built from it (method tag ``"plugin"``);
* ``jackknife_variance`` — exact delete-1 jackknife for either estimator
  (method tag ``"jackknife"``), computed in O(n) with prefix/suffix sums;
* ``confidence_interval`` — normal-approximation intervals clamped to [0, 1];
* ``edf_numerator_variance`` — the asymptotic variance of the sqrt(n)-scaled
  plug-in numerator, evaluated by graded quadrature of its covariance
  double integral.

The plug-in ratio variance carries no covariance correction between the
numerator and denominator statistics, and measurably overstates the
variance (by about 4x for the exponential family at v = 2); the jackknife
tracks the true sampling variance closely and is the recommended default.
Both are reported so the two can be compared side by side.
"""

from dataclasses import dataclass, replace

import numpy as np
from scipy.special import ndtri

from . import quadrature
from .errors import InvalidLevel, SampleTooSmall, ZeroMean
from .measures import edf_weights, gim_ustat, subset_weights
from .samples import as_sample

METHODS = ("plugin", "jackknife")
KINDS = ("ustat", "edf")


@dataclass(frozen=True)
class VarianceEstimate:
    """Variance of a point estimate, with optional confidence interval.

    ``variance`` refers to the estimate itself (not a sqrt(n)-scaled
    quantity).  ``method`` is ``"plugin"`` or ``"jackknife"``.  The interval
    fields are None until :func:`confidence_interval` fills them.
    """

    variance: float
    method: str
    std_error: float
    level: float = None
    ci_low: float = None
    ci_high: float = None


def projection_variance(s, v, printed_exponent=False):
    """Plug-in variance of the one-argument projection of the range kernel.

    The U-statistic numerator averages the kernel max - min over size-v
    subsets; its asymptotic variance is v^2 times the variance of the
    projection g(X) = E(kernel | one argument fixed at X).  Estimating the
    population distribution by the empirical one (F(X_{i:n}) = i/n) gives

        g_hat(x_i) = x_i * (F_i^(v-1) - Fbar_i^(v-1))
                     + (v-1)/n * sum_{j>i} x_j * F_j^(v-2)
                     - (v-1)/n * sum_{j<i} x_j * Fbar_j^(v-2)

    with F_i = i/n, Fbar_i = (n-i)/n, and the function returns the sample
    variance of g_hat over the data, computed in O(n) with prefix/suffix
    sums.

    Parameters
    ----------
    s : IncomeSample or array_like
    v : int
        Subset order.  v = 1 returns exactly 0 (the kernel is constant).
    printed_exponent : bool
        If True, use v-1 as the interior exponent, the form that appears in
        some printed statements of this variance.  The default v-2 is what
        the projection derivation gives, and is the variant that matches
        both the analytic exponential benchmark (variance 1/3 at v = 2,
        where g(x) = x + 2 exp(-x) - 1) and Monte Carlo.

    Returns
    -------
    float
        Sample variance (denominator n-1) of the estimated projection.
    """
    s = as_sample(s)
    n = s.n
    if n < 2:
        raise SampleTooSmall("projection variance needs at least 2 observations")
    v = int(v)
    if v < 1:
        raise ValueError("order v must be >= 1")
    if v == 1:
        return 0.0
    if s.values[0] == s.values[-1]:
        # degenerate sample: the projection is constant.  The rank-based
        # plug-in below would read the tied ranks i/n as spread instead.
        return 0.0
    x = s.values
    grid = np.arange(1, n + 1, dtype=float)
    forward = grid / n          # empirical cdf at each order statistic
    backward = (n - grid) / n   # empirical survival
    exponent = (v - 1) if printed_exponent else (v - 2)
    lead = x * (forward ** (v - 1) - backward ** (v - 1))
    up = x * forward**exponent
    down = x * backward**exponent
    # sum over j > i of up[j]; sum over j < i of down[j]
    tail = np.concatenate((np.cumsum(up[::-1])[::-1][1:], [0.0]))
    head = np.concatenate(([0.0], np.cumsum(down)[:-1]))
    g_hat = lead + (v - 1) / n * (tail - head)
    return float(np.var(g_hat, ddof=1))


def ustat_variance(s, v):
    """Plug-in large-sample variance of the U-statistic GIM estimate.

    variance = v^2 * projection_variance / (denominator^2 * n), the
    normal-limit variance of the ratio with the denominator treated as
    fixed.  No numerator/denominator covariance enters (see the module
    docstring for what that omission costs); method tag ``"plugin"``.
    """
    s = as_sample(s)
    estimate = gim_ustat(s, v)
    spread = projection_variance(s, v)
    variance = v * v * spread / (estimate.denominator**2 * s.n)
    return VarianceEstimate(
        variance=variance, method="plugin", std_error=float(np.sqrt(variance))
    )


def leave_one_out(s, v, kind="ustat"):
    """All n delete-1 estimates of GIM(v), in O(n) total.

    Deleting the observation at sorted position k leaves a sorted sample of
    size n-1 in which positions below k keep their weight index and
    positions above k shift down by one.  Prefix/suffix sums over the
    size-(n-1) weight arrays therefore give every leave-one-out numerator
    and denominator in one pass; this is the exact delete-1 recomputation,
    not an approximation.

    Returns
    -------
    ndarray
        ``out[k]`` is the estimate with sorted observation k removed.
    """
    s = as_sample(s)
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}, got {kind!r}")
    n = s.n
    m = n - 1
    if m < v or m < 1:
        raise SampleTooSmall(
            f"leave-one-out of order v={v} needs at least {v + 1} observations"
        )
    if kind == "ustat":
        w_max, w_min = subset_weights(m, v)
        w_num, w_den = w_max - w_min, w_max + w_min
    else:
        w_num, w_den = edf_weights(m, v)
    x = s.values

    def loo_sums(w):
        kept = w * x[:m]       # weight j applied to position j   (j < k)
        shifted = w * x[1:]    # weight j applied to position j+1 (j+1 > k)
        prefix = np.concatenate(([0.0], np.cumsum(kept)))
        suffix = np.concatenate((np.cumsum(shifted[::-1])[::-1], [0.0]))
        return prefix + suffix

    numerators = loo_sums(w_num)
    denominators = loo_sums(w_den)
    if np.any(denominators == 0.0):
        raise ZeroMean("a leave-one-out subsample has all-zero incomes")
    return numerators / denominators


def jackknife_variance(s, v, kind="ustat"):
    """Delete-1 jackknife variance of a GIM estimate.

    variance = (n-1)/n * sum_k (theta_k - theta_bar)^2 over the n
    leave-one-out estimates theta_k of the chosen estimator kind
    (``"ustat"`` or ``"edf"``); method tag ``"jackknife"``.

    Requires n >= max(v+1, 3): the subsamples must support order v, and a
    spread of fewer than 3 leave-one-out values says nothing.
    """
    s = as_sample(s)
    if s.n < max(int(v) + 1, 3):
        raise SampleTooSmall(
            f"jackknife of order v={v} needs at least {max(int(v) + 1, 3)} observations"
        )
    theta = leave_one_out(s, v, kind)
    centered = theta - np.mean(theta)
    variance = (s.n - 1) / s.n * float(np.sum(centered * centered))
    return VarianceEstimate(
        variance=variance, method="jackknife", std_error=float(np.sqrt(variance))
    )


def confidence_interval(point, ve, level=0.95):
    """Normal-approximation confidence interval around a GIM estimate.

    Returns a copy of ``ve`` with ``level``, ``ci_low`` and ``ci_high``
    filled: point -/+ z * std_error with z the (1+level)/2 standard normal
    quantile, clamped to [0, 1] since the measure lives there.
    """
    if not 0.0 < level < 1.0:
        raise InvalidLevel(f"confidence level must be inside (0, 1), got {level!r}")
    z = float(ndtri((1.0 + level) / 2.0))
    low = min(max(point - z * ve.std_error, 0.0), 1.0)
    high = min(max(point + z * ve.std_error, 0.0), 1.0)
    return replace(ve, level=level, ci_low=low, ci_high=high)


def _edf_numerator_variance_at(dist, v, levels):
    """Fixed-depth evaluation of the numerator covariance double integral.

    The sqrt(n)-scaled plug-in numerator has limiting variance

        v^2 * int int [min(F(x), F(z)) - F(x) F(z)] J(x) J(z) dx dz,

    J(x) = F(x)^(v-1) - (1-F(x))^(v-1).  Substituting u = F(x), w = F(z)
    and using symmetry reduces it to

        2 v^2 * int_0^1 (1-w) Phi(w) [ int_0^w u Phi(u) du ] dw,

    with Phi(u) = (u^(v-1) - (1-u)^(v-1)) * Q'(u).  Off-diagonal panel
    pairs separate into products (one prefix accumulator), and only the
    within-panel diagonal needs a nested rule.
    """
    xi, wi = quadrature.unit_rule()
    off_diagonal = 0.0
    diagonal = 0.0
    prefix = 0.0  # running int_0^a u Phi(u) du over completed panels

    def phi(u, cu):
        return (u ** (v - 1) - cu ** (v - 1)) * dist._qd(u, cu)

    for panel in quadrature.graded_panels(levels):
        a, ca, h, anchored_right = panel
        u, cu, w = quadrature.panel_nodes(panel)
        f = phi(u, cu)
        panel_a = float(np.sum(w * u * f))
        off_diagonal += 2.0 * float(np.sum(w * cu * f)) * prefix
        # within-panel part: inner integral restarts at the panel edge
        inner = np.empty(xi.size)
        for k in range(xi.size):
            hk = h * xi[k]
            if anchored_right:
                uu = u[k] - hk * (1.0 - xi)
                cuu = cu[k] + hk * (1.0 - xi)
            else:
                uu = a + hk * xi
                cuu = ca - hk * xi
            inner[k] = hk * float(np.sum(wi * uu * phi(uu, cuu)))
        diagonal += 2.0 * float(np.sum(w * cu * f * inner))
        prefix += panel_a
    return v * v * (off_diagonal + diagonal)


def edf_numerator_variance(dist, v, rtol=1e-6):
    """Asymptotic variance of the sqrt(n)-scaled plug-in numerator.

    Evaluated on endpoint-graded Gauss-Legendre panels, doubling the
    grading depth until two successive values agree to ``rtol`` relative
    (at most 12 doublings, else QuadratureNoConvergence).  Exact
    benchmarks: 4/3 for the unit exponential at v = 2, three times that at
    v = 3, and 363/175 for Pareto(shape 3, scale 1) at v = 2.

    Heavy tails slow the ladder down (the integrand's endpoint singularity
    sharpens as the Pareto shape approaches 2); shapes much below 2.5 may
    exhaust the ladder and raise rather than return a bad number.
    """
    v = int(v)
    if v < 1:
        raise ValueError("order v must be >= 1")
    if v == 1:
        return 0.0
    return quadrature.converge(
        lambda levels: _edf_numerator_variance_at(dist, v, levels), rtol=rtol
    )
