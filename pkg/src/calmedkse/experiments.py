"""Reference-vs-calmed comparison runs and convergence-rate studies.

A comparison advances the uncalmed (identity) reference and one or more
calmed systems in lockstep from identical initial data with identical dt,
accumulating three norms of the difference w(t) = u_calmed(t) - u_ref(t)
at every time step:

* err_linf_l2:   max_t ||w(t)||_L2
* err_linf_linf: max_t ||w(t)||_Linf   (pointwise Euclidean magnitude)
* err_l2_h2:     sqrt of the trapezoidal time integral of ||w(t)||_H2^2

Sweeping the calming parameter and fitting log10(err) against log10(eps)
yields the empirical convergence order of each norm.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .calming import IDENTITY, CalmingKind
from .config import RunConfig
from .dynamics import linear_symbol, nonlinear_coeffs_h
from .spectral import Field, Grid, build_grid, full_to_half, fwd, get_spectral, rinv
from .stepping import BlowUpError, exp_factors, ifrk4_update, _step_schedule
from .storage import load_snapshot


def make_initial(preset: str, grid: Grid, shape: str) -> Field:
    """Evaluate an initial-data preset analytically on the collocation grid.

    Vector presets:
      grad-sines  (cos(x+y) + cos x, cos(x+y) + cos y), the gradient of the
                  scalar preset below
      high-osc    4 (cos(x+y) + sin 3x, cos(x+y) + cos 4y)

    The scalar form of grad-sines is the generating potential
    sin(x+y) + sin x + sin y itself.  'custom' is handled by the caller via
    load_snapshot (it needs a file path, not a grid).
    """
    X, Y = grid.x, grid.y
    if preset == "grad-sines":
        if shape == "vector":
            phys = np.stack([np.cos(X + Y) + np.cos(X), np.cos(X + Y) + np.cos(Y)])
        else:
            phys = np.sin(X + Y) + np.sin(X) + np.sin(Y)
    elif preset == "high-osc":
        if shape != "vector":
            raise ValueError("preset 'high-osc' is defined for the vector form only")
        phys = 4.0 * np.stack([np.cos(X + Y) + np.sin(3 * X), np.cos(X + Y) + np.cos(4 * Y)])
    else:
        raise ValueError(f"unknown initial preset {preset!r}")
    return Field(components=2 if shape == "vector" else 1, physical=phys, spectral=fwd(phys, grid))


def initial_field(config: RunConfig, grid: Grid) -> Field:
    """Resolve a RunConfig's initial data, loading snapshot files for 'custom'."""
    if config.initial == "custom":
        f, meta = load_snapshot(config.initial_file)
        if f.physical.shape[-1] != grid.n:
            raise ValueError(f"snapshot n={f.physical.shape[-1]} does not match config n={grid.n}")
        expected = 2 if config.form.shape == "vector" else 1
        if f.components != expected:
            raise ValueError(f"snapshot has {f.components} component(s), {config.form.shape} form needs {expected}")
        return Field(f.components, physical=f.physical, spectral=fwd(f.physical, grid))
    return make_initial(config.initial, grid, config.form.shape)


@dataclass(frozen=True)
class ErrorSeries:
    """Error norms of one calmed run against the shared reference."""

    epsilon: float
    err_linf_l2: float
    err_linf_linf: float
    err_l2_h2: float


@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    residual: float


@dataclass(frozen=True)
class ConvergenceReport:
    """ErrorSeries over an epsilon sweep plus fitted log-log slopes per norm."""

    kind: str
    series: list[ErrorSeries]
    slopes: dict[str, SlopeFit]
    failures: list[tuple[float, str]]


def _lockstep_errors(config: RunConfig, kinds: list[CalmingKind]) -> list[ErrorSeries]:
    """March the identity reference once and every calmed state alongside it."""
    grid = build_grid(config.n)
    u0 = full_to_half(get_spectral(initial_field(config, grid), grid), grid)
    L = linear_symbol(grid, config.form.lam)[:, : grid.half_cols]
    schedule = _step_schedule(config.T, config.dt)
    exp_half, exp_full = exp_factors(L, config.dt)
    pw = grid.parseval_h
    h2_weight = pw * (1.0 + np.sqrt(grid.k2h)) ** 4
    area = (2.0 * np.pi) ** 2

    ref_form = replace(config.form, calming=IDENTITY)
    forms = [replace(config.form, calming=k) for k in kinds]
    ref = u0.copy()
    states = [u0.copy() for _ in kinds]

    m = len(schedule) + 1
    times = np.zeros(m)
    l2_w = np.zeros((len(kinds), m))
    linf_w = np.zeros((len(kinds), m))
    h2sq_w = np.zeros((len(kinds), m))

    def accumulate(j: int, t: float) -> None:
        times[j] = t
        for i, st in enumerate(states):
            w = st - ref
            power = np.abs(w) ** 2
            l2_w[i, j] = np.sqrt(area * np.sum(pw * power))
            h2sq_w[i, j] = area * np.sum(h2_weight * power)
            w_phys = rinv(w, grid)
            if config.form.shape == "vector":
                linf_w[i, j] = np.sqrt(np.max(w_phys[0] ** 2 + w_phys[1] ** 2))
            else:
                linf_w[i, j] = np.max(np.abs(w_phys))

    accumulate(0, 0.0)
    for j, h in enumerate(schedule, start=1):
        if h != config.dt:
            e2, e1 = exp_factors(L, h)
        else:
            e2, e1 = exp_half, exp_full
        t = config.T if j == len(schedule) else j * config.dt
        ref = ifrk4_update(ref, lambda v: nonlinear_coeffs_h(v, ref_form, grid), h, e2, e1)
        if not np.isfinite(ref).all():
            raise BlowUpError(t, float(np.sqrt(area * np.sum(pw * np.abs(ref) ** 2))), label="reference")
        for i, form in enumerate(forms):
            states[i] = ifrk4_update(states[i], lambda v: nonlinear_coeffs_h(v, form, grid), h, e2, e1)
            if not np.isfinite(states[i]).all():
                l2 = float(np.sqrt(area * np.sum(pw * np.abs(states[i]) ** 2)))
                raise BlowUpError(t, l2, label=f"calmed eps={kinds[i].epsilon:g}")
        accumulate(j, t)

    out = []
    for i, kind in enumerate(kinds):
        out.append(
            ErrorSeries(
                epsilon=kind.epsilon,
                err_linf_l2=float(np.max(l2_w[i])),
                err_linf_linf=float(np.max(linf_w[i])),
                err_l2_h2=float(np.sqrt(np.trapezoid(h2sq_w[i], times))),
            )
        )
    return out


def run_pair(config: RunConfig, kind: CalmingKind) -> ErrorSeries:
    """Evolve the reference and one calmed system together; return its errors."""
    if kind.is_identity:
        raise ValueError("run_pair compares a calmed run against the identity reference")
    return _lockstep_errors(config, [kind])[0]


def default_eps_sweep(num: int = 7, hi: float = 1e-1, lo: float = 1e-3) -> list[float]:
    """Log-spaced calming parameters, descending from hi to lo."""
    return list(np.logspace(np.log10(hi), np.log10(lo), num))


def _run_pair_task(config: RunConfig, kind: CalmingKind, eps: float) -> ErrorSeries:
    return run_pair(config, kind.with_epsilon(eps))


def convergence_study(
    config: RunConfig,
    kind: CalmingKind,
    eps_list: list[float],
    jobs: int = 1,
) -> ConvergenceReport:
    """One reference-vs-calmed comparison per epsilon plus log-log slope fits.

    With jobs == 1 the reference is stepped once and shared by every calmed
    state in a single lockstep pass.  With jobs > 1 the sweep is farmed out
    per epsilon to worker processes; each worker re-runs the deterministic
    reference, which is bitwise identical to the shared one, so the results
    do not depend on jobs.  Failed runs are reported alongside the rows that
    completed.
    """
    if kind.is_identity:
        raise ValueError("convergence_study needs a calmed kind, not the identity")
    eps_list = [float(e) for e in eps_list]
    if len(eps_list) < 3:
        raise ValueError(f"need at least 3 epsilon values, got {len(eps_list)}")
    if any(e <= 0 for e in eps_list):
        raise ValueError("epsilon values must be > 0")

    series: list[ErrorSeries] = []
    failures: list[tuple[float, str]] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {e: pool.submit(_run_pair_task, config, kind, e) for e in eps_list}
            for e in eps_list:
                try:
                    series.append(futures[e].result())
                except BlowUpError as err:
                    failures.append((e, str(err)))
    else:
        try:
            series = _lockstep_errors(config, [kind.with_epsilon(e) for e in eps_list])
        except BlowUpError:
            # fall back to per-epsilon runs so completed rows survive
            for e in eps_list:
                try:
                    series.append(run_pair(config, kind.with_epsilon(e)))
                except BlowUpError as err:
                    failures.append((e, str(err)))

    slopes: dict[str, SlopeFit] = {}
    for name in ("err_linf_l2", "err_linf_linf", "err_l2_h2"):
        points = [(s.epsilon, getattr(s, name)) for s in series if getattr(s, name) > 0]
        if len(points) >= 2 and len({p[0] for p in points}) >= 2:
            slope, intercept, residual = fit_loglog_slope(points)
            slopes[name] = SlopeFit(slope, intercept, residual)
    return ConvergenceReport(kind=kind.variant, series=series, slopes=slopes, failures=failures)


def fit_loglog_slope(points: list[tuple[float, float]]) -> tuple[float, float, float]:
    """Ordinary least squares on (log10 x, log10 y).

    Returns (slope, intercept, residual) with residual the RMS misfit in
    log10 units.  Rejects degenerate inputs: fewer than two points,
    non-positive coordinates, or zero spread in x.
    """
    if len(points) < 2:
        raise ValueError(f"need at least 2 points to fit a slope, got {len(points)}")
    xs = np.asarray([p[0] for p in points], dtype=np.float64)
    ys = np.asarray([p[1] for p in points], dtype=np.float64)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise ValueError("log-log fit needs strictly positive coordinates")
    lx, ly = np.log10(xs), np.log10(ys)
    if np.ptp(lx) == 0.0:
        raise ValueError("all x values coincide; slope is undefined")
    slope, intercept = np.polyfit(lx, ly, 1)
    residual = float(np.sqrt(np.mean((ly - (slope * lx + intercept)) ** 2)))
    return float(slope), float(intercept), residual
