"""Monte Carlo bias/MSE study harness for the GIM estimators.

A *cell* is one (distribution, n, v) experiment: ``replications`` samples
are drawn, both estimators are computed on each, and bias / MSE / Monte
Carlo standard errors against the theoretical GIM(v) come out.  A *grid*
is a list of cells, typically n in {20, 40, 60, 80, 100, 200} crossed with
v in {2, 3} for each distribution family.

Determinism contract: replication r of a cell always draws from the
counter-based stream (cell.base_seed, r), and accumulation happens in a
fixed order after all replications are stored by index.  The result is
byte-identical output for any number of worker threads and across runs —
worker parallelism only decides who fills which slice of the estimate
arrays.
"""

import configparser
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .distributions import _MIN_UNIFORM, FAMILIES, SeededStream, theoretical_gim
from .errors import EmptyGrid, OrderExceedsSample, ParseError
from .measures import edf_weights, subset_weights

_CHUNK = 512  # replications per work unit; also the sampling batch size
DEFAULT_SIZES = (20, 40, 60, 80, 100, 200)
DEFAULT_ORDERS = (2, 3)


@dataclass(frozen=True)
class SimCell:
    """One Monte Carlo experiment: a family, sample size, order and seed."""

    dist: object
    n: int
    v: int
    replications: int = 10_000
    base_seed: int = 0

    def __post_init__(self):
        if self.replications < 1:
            raise ValueError("replications must be >= 1")
        if self.v > self.n:
            raise OrderExceedsSample(f"cell has v={self.v} > n={self.n}")


@dataclass(frozen=True)
class SimResult:
    """Bias/MSE of both estimators in one cell, with MC standard errors."""

    cell: SimCell
    truth: float
    bias_u: float
    mse_u: float
    mc_se_u: float
    bias_edf: float
    mse_edf: float
    mc_se_edf: float


def _fill_chunk(cell, lo, hi, weights, est_u, est_edf):
    """Compute estimates for replications [lo, hi) into the output slices."""
    w_num_u, w_den_u, w_num_e, w_den_e = weights
    n = cell.n
    uniforms = np.empty((hi - lo, n))
    for j, r in enumerate(range(lo, hi)):
        uniforms[j] = SeededStream(cell.base_seed, r).generator().random(n)
    np.maximum(uniforms, _MIN_UNIFORM, out=uniforms)
    x = cell.dist._q(uniforms, 1.0 - uniforms)
    x.sort(axis=1)
    est_u[lo:hi] = np.sum(w_num_u * x, axis=1) / np.sum(w_den_u * x, axis=1)
    est_edf[lo:hi] = np.sum(w_num_e * x, axis=1) / np.sum(w_den_e * x, axis=1)


def run_cell(cell, workers=1):
    """Run one Monte Carlo cell and summarize both estimators.

    Parameters
    ----------
    cell : SimCell
    workers : int
        Worker threads filling replication chunks.  Output is independent
        of this value (see the module docstring).

    Returns
    -------
    SimResult
    """
    truth = theoretical_gim(cell.dist, cell.v)
    w_max, w_min = subset_weights(cell.n, cell.v)
    w_num_e, w_den_e = edf_weights(cell.n, cell.v)
    weights = (w_max - w_min, w_max + w_min, w_num_e, w_den_e)

    reps = cell.replications
    est_u = np.empty(reps)
    est_edf = np.empty(reps)
    spans = [(lo, min(lo + _CHUNK, reps)) for lo in range(0, reps, _CHUNK)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_fill_chunk, cell, lo, hi, weights, est_u, est_edf)
                for lo, hi in spans
            ]
            for item in futures:
                item.result()  # re-raise any worker error
    else:
        for lo, hi in spans:
            _fill_chunk(cell, lo, hi, weights, est_u, est_edf)

    def summarize(est):
        bias = float(np.mean(est)) - truth
        mse = float(np.mean((est - truth) ** 2))
        mc_se = float(np.std(est, ddof=1)) / np.sqrt(reps) if reps > 1 else 0.0
        return bias, mse, mc_se

    bias_u, mse_u, mc_se_u = summarize(est_u)
    bias_edf, mse_edf, mc_se_edf = summarize(est_edf)
    return SimResult(
        cell=cell,
        truth=float(truth),
        bias_u=bias_u,
        mse_u=mse_u,
        mc_se_u=mc_se_u,
        bias_edf=bias_edf,
        mse_edf=mse_edf,
        mc_se_edf=mc_se_edf,
    )


def run_grid(cells, workers=1):
    """Run a list of cells; results come back in input order."""
    cells = list(cells)
    if not cells:
        raise EmptyGrid("simulation grid has no cells")
    return [run_cell(cell, workers=workers) for cell in cells]


def default_grid(distributions, replications=10_000, base_seed=1,
                 sizes=DEFAULT_SIZES, orders=DEFAULT_ORDERS):
    """Standard study grid: every (family, v, n) combination.

    Cells receive consecutive base seeds (grid seed + cell index) so no two
    cells share replication streams.
    """
    cells = []
    for dist in distributions:
        for v in orders:
            for n in sizes:
                cells.append(
                    SimCell(
                        dist=dist,
                        n=int(n),
                        v=int(v),
                        replications=replications,
                        base_seed=base_seed + len(cells),
                    )
                )
    return cells


def _parse_numbers(text, cast):
    return [cast(tok) for tok in text.replace(",", " ").split()]


def load_grid_config(path):
    """Load a simulation grid from an INI-style config file.

    One section per distribution family plus an optional ``[run]`` section:

        [run]
        replications = 10000
        seed = 1

        [exponential]
        rate = 1.0
        n = 20 40 60 80 100 200
        v = 2 3

        [pareto]
        shape = 3
        scale = 1

        [lognormal]
        meanlog = 0
        sdlog = 0.5

    Family sections may omit ``n``/``v`` (the defaults above apply) and any
    distribution parameter (family defaults apply).  A second section for
    the same family can be written as e.g. ``[pareto heavy]`` — the first
    word names the family.

    Returns
    -------
    list of SimCell
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ParseError(f"cannot read grid config {path!r}")

    replications = 10_000
    base_seed = 1
    if parser.has_section("run"):
        run = parser["run"]
        try:
            replications = run.getint("replications", replications)
            base_seed = run.getint("seed", base_seed)
        except ValueError as exc:
            raise ParseError(f"bad [run] value in {path!r}: {exc}") from exc

    cells = []
    for section in parser.sections():
        if section == "run":
            continue
        family = section.split()[0].lower()
        if family not in FAMILIES:
            raise ParseError(
                f"unknown family section [{section}] in {path!r}; "
                f"expected one of {sorted(FAMILIES)}"
            )
        options = dict(parser[section])
        sizes_text = options.pop("n", None)
        orders_text = options.pop("v", None)
        try:
            params = {key: float(val) for key, val in options.items()}
            dist = FAMILIES[family](**params)
            sizes = _parse_numbers(sizes_text, int) if sizes_text else DEFAULT_SIZES
            orders = _parse_numbers(orders_text, int) if orders_text else DEFAULT_ORDERS
        except (TypeError, ValueError) as exc:
            raise ParseError(f"bad section [{section}] in {path!r}: {exc}") from exc
        for v in orders:
            for n in sizes:
                cells.append(
                    SimCell(
                        dist=dist,
                        n=n,
                        v=v,
                        replications=replications,
                        base_seed=base_seed + len(cells),
                    )
                )
    if not cells:
        raise ParseError(f"no family sections found in {path!r}")
    return cells


def emit_table(results, format="csv"):
    """Render simulation results as CSV (long) or markdown (wide).

    CSV has one row per (cell, estimator) with full-precision numbers::

        family,params,v,n,estimator,bias,mse,mc_se,truth

    Markdown has one row per cell with both estimators side by side,
    bias/MSE at the conventional 3-decimal display precision.
    """
    results = list(results)
    if not results:
        raise EmptyGrid("no results to render")
    if format == "csv":
        lines = ["family,params,v,n,estimator,bias,mse,mc_se,truth"]
        for res in results:
            cell = res.cell
            prefix = f"{cell.dist.name},{cell.dist.params_label()},{cell.v},{cell.n}"
            lines.append(
                f"{prefix},ustat,{res.bias_u:.6g},{res.mse_u:.6g},"
                f"{res.mc_se_u:.6g},{res.truth:.6g}"
            )
            lines.append(
                f"{prefix},edf,{res.bias_edf:.6g},{res.mse_edf:.6g},"
                f"{res.mc_se_edf:.6g},{res.truth:.6g}"
            )
        return "\n".join(lines) + "\n"
    if format == "md":
        header = (
            "| family | params | v | n | bias (ustat) | mse (ustat) "
            "| bias (edf) | mse (edf) | truth |"
        )
        rule = "|---|---|---|---|---|---|---|---|---|"
        lines = [header, rule]
        for res in results:
            cell = res.cell
            lines.append(
                f"| {cell.dist.name} | {cell.dist.params_label()} "
                f"| {cell.v} | {cell.n} "
                f"| {res.bias_u:.3f} | {res.mse_u:.3f} "
                f"| {res.bias_edf:.3f} | {res.mse_edf:.3f} "
                f"| {res.truth:.3f} |"
            )
        return "\n".join(lines) + "\n"
    raise ValueError(f"format must be 'csv' or 'md', got {format!r}")
