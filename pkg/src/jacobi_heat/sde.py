"""Euler-Maruyama simulation of the Wright-Fisher-type simplex diffusion.

The generator sum_i (1-Nu_i) d_i + sum_i (u_i-u_i^2) d_ii - sum_{i!=j}
u_iu_j d_ij carries no 1/2, so the simulated SDE has drift b_i = 1 - N u_i
and diffusion matrix sigma sigma^T = 2 a with a_ij = u_i (delta_ij - u_j).
The ensemble is the independent stochastic oracle for the spectral densities
and the only tool covering three or more projected coordinates.
"""

import csv
import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.special import ndtri

from .operators import generalized_jacobi_op

__all__ = [
    "SdeConfig",
    "PathEnsemble",
    "simulate",
    "export_csv",
    "density_ks_check",
    "generator_moment_check",
    "GeneratorCheck",
]


@dataclass(frozen=True)
class SdeConfig:
    """Simulation request; dt must resolve t_final (dt <= t_final / 10)."""

    N: int
    k: int
    t_final: float
    dt: float
    paths: int
    seed: int

    def __post_init__(self):
        if self.N < 2 or not (1 <= self.k <= self.N - 1):
            raise ValueError(f"need N >= 2 and 1 <= k <= N-1, got N={self.N}, k={self.k}")
        if self.t_final <= 0.0 or self.dt <= 0.0:
            raise ValueError("t_final and dt must be positive")
        if self.dt > self.t_final / 10.0:
            raise ValueError(f"dt = {self.dt} too coarse for t_final = {self.t_final}")
        if self.paths < 1:
            raise ValueError("paths must be positive")
        if not (0 <= self.seed < 2**64):
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass(frozen=True)
class PathEnsemble:
    """Terminal points (and optional intermediate snapshots) of a simulation."""

    terminal_points: np.ndarray  # shape (paths, k)
    config: SdeConfig
    snapshots: dict = field(default_factory=dict)  # time -> (paths, k) array


def _normals(rng, shape):
    """Standard normals by inverse CDF of counter-based uniforms."""
    u = rng.random(shape)
    np.maximum(u, 2.0**-54, out=u)  # random() can return exactly 0
    return ndtri(u)


def _diffusion_increment(u, z, sqrt2dt):
    """Apply the closed-form lower-triangular factor of u(diag - u u^T) to z.

    Rows index coordinates, columns index paths.  With q_j = 1 - u_1 - ...
    - u_j (q_0 = 1), the factor is L_ii = sqrt(u_i q_i / q_{i-1}) and
    L_ij = -u_i sqrt(u_j / (q_j q_{j-1})) for j < i.  The column factor
    depends on j only, so the off-diagonal part of row i is -u_i times a
    running prefix sum; degenerate pivots near the boundary are clamped
    at 1e-14.
    """
    k = u.shape[0]
    out = np.empty_like(u)
    q_prev = np.ones(u.shape[1])
    prefix = np.zeros(u.shape[1])
    for i in range(k):
        q_i = np.clip(q_prev - u[i], 1e-14, None)
        out[i] = np.sqrt(u[i] * q_i / q_prev) * z[i]
        if i:
            out[i] -= u[i] * prefix
        if i + 1 < k:
            prefix += np.sqrt(u[i] / (q_i * q_prev)) * z[i]
        q_prev = q_i
    out *= sqrt2dt
    return out


def simulate(cfg, start, snapshot_times=(), drift_only=False):
    """Run the Euler-Maruyama scheme from a common start point.

    start: point of the closed simplex (length k)
    snapshot_times: times at which copies of the ensemble are recorded
    drift_only: disable the noise (test hook; the paths then follow the
        deterministic flow u' = 1 - N u)

    Coordinates are clamped at 0 after every step and the state is rescaled
    onto the simplex whenever the coordinates sum above 1.  The whole
    ensemble is driven in lockstep from a counter-based generator keyed by
    the seed, so results are bit-identical for identical configurations.
    """
    start = np.asarray(start, dtype=float)
    if start.shape != (cfg.k,):
        raise ValueError(f"start must have shape ({cfg.k},), got {start.shape}")
    if np.any(start < 0.0) or start.sum() > 1.0 + 1e-12:
        raise ValueError(f"start {start} outside the closed simplex")

    rng = np.random.Generator(np.random.Philox(key=cfg.seed))
    n_steps = int(round(cfg.t_final / cfg.dt))
    snap_steps = {}
    for ts in snapshot_times:
        step = int(round(ts / cfg.dt))
        if not (0 <= step <= n_steps):
            raise ValueError(f"snapshot time {ts} outside [0, t_final]")
        snap_steps.setdefault(step, []).append(ts)

    # coordinates as rows: every per-step reduction then runs over contiguous memory
    u = np.tile(start[:, None], (1, cfg.paths))
    sqrt2dt = math.sqrt(2.0 * cfg.dt)
    drift_scale = 1.0 - cfg.N * cfg.dt
    snapshots = {}
    for ts in snap_steps.get(0, []):
        snapshots[ts] = u.T.copy()
    for step in range(1, n_steps + 1):
        if not drift_only:
            noise = _diffusion_increment(u, _normals(rng, u.shape), sqrt2dt)
        u *= drift_scale
        u += cfg.dt
        if not drift_only:
            u += noise
        np.clip(u, 0.0, None, out=u)
        total = u.sum(axis=0)
        over = total > 1.0
        if np.any(over):
            u[:, over] /= total[over]
        # NaNs persist once present, so a sparse check still localizes the blowup
        if (step % 64 == 0 or step == n_steps or step in snap_steps) and not np.all(
            np.isfinite(u)
        ):
            raise RuntimeError(f"simulation diverged (NaN/inf) by step {step}")
        for ts in snap_steps.get(step, []):
            snapshots[ts] = u.T.copy()
    return PathEnsemble(terminal_points=u.T.copy(), config=cfg, snapshots=snapshots)


def export_csv(ens, path):
    """Dump terminal coordinates, one row per path, with a '#' parameter header."""
    from . import __version__

    cfg = ens.config
    with open(path, "w", newline="") as fh:
        fh.write(f"# jacobi-heat {__version__}\n")
        fh.write(
            f"# simplex diffusion ensemble: N={cfg.N} k={cfg.k} t_final={cfg.t_final!r}"
            f" dt={cfg.dt!r} paths={cfg.paths} seed={cfg.seed}\n"
        )
        writer = csv.writer(fh)
        writer.writerow([f"u{i + 1}" for i in range(cfg.k)])
        for row in ens.terminal_points:
            writer.writerow([format(v, ".17g") for v in row])


def _cdf_from_density(density, xs, panels=200, order=16):
    """CDF of a density on [0, 1] at points xs, by panelwise Gauss-Legendre."""
    from .quadrature import gauss_jacobi_rule

    rule = gauss_jacobi_rule(order, 0.0, 0.0)
    edges = np.linspace(0.0, 1.0, panels + 1)
    width = edges[1] - edges[0]
    nodes = (edges[:-1, None] + width * rule.nodes[None, :]).ravel()
    vals = np.asarray(density(nodes), dtype=float).reshape(panels, order)
    panel_ints = width * vals @ rule.weights
    cum = np.concatenate([[0.0], np.cumsum(panel_ints)])

    xs = np.asarray(xs, dtype=float)
    idx = np.clip((xs / width).astype(int), 0, panels - 1)
    local = edges[idx][:, None] + (xs - edges[idx])[:, None] * rule.nodes[None, :]
    local_vals = np.asarray(density(local.ravel()), dtype=float).reshape(len(xs), order)
    partial = (xs - edges[idx]) * (local_vals @ rule.weights)
    return cum[idx] + partial


def density_ks_check(ens, density, grid_bins=5):
    """Goodness-of-fit statistic of an ensemble against a closed-form density.

    k = 1: the Kolmogorov-Smirnov statistic between the empirical terminal
    CDF and the quadrature-integrated density CDF.  k = 2: Pearson's
    chi-square over grid_bins^2 cells of the square (u1, u2/(1-u1)), with
    expected counts from per-cell Gauss-Legendre integration of the density;
    cells with expected count below 5 make the check refuse.
    """
    k = ens.config.k
    pts = ens.terminal_points
    n = len(pts)
    if k == 1:
        xs = np.sort(pts[:, 0])
        cdf = _cdf_from_density(density, xs)
        i = np.arange(1, n + 1)
        return float(np.max(np.maximum(np.abs(i / n - cdf), np.abs((i - 1) / n - cdf))))
    if k == 2:
        from .quadrature import gauss_jacobi_rule

        rule = gauss_jacobi_rule(8, 0.0, 0.0)
        edges = np.linspace(0.0, 1.0, grid_bins + 1)
        width = edges[1] - edges[0]
        expected = np.empty((grid_bins, grid_bins))
        for ix in range(grid_bins):
            x = edges[ix] + width * rule.nodes
            for iy in range(grid_bins):
                y = edges[iy] + width * rule.nodes
                xx = np.repeat(x, len(y))
                yy = np.tile(y, len(x))
                f = np.asarray(density(xx, (1.0 - xx) * yy), dtype=float)
                jac = 1.0 - xx
                w = np.repeat(rule.weights, len(y)) * np.tile(rule.weights, len(x))
                expected[ix, iy] = width * width * np.dot(w, f * jac)
        expected *= n
        if np.any(expected < 5.0):
            raise ValueError(
                f"insufficient paths: smallest expected cell count is {expected.min():.2f}"
            )
        x_emp = pts[:, 0]
        rem = np.clip(1.0 - x_emp, 1e-300, None)
        y_emp = np.clip(pts[:, 1] / rem, 0.0, 1.0 - 1e-15)
        ix = np.clip((x_emp / width).astype(int), 0, grid_bins - 1)
        iy = np.clip((y_emp / width).astype(int), 0, grid_bins - 1)
        observed = np.zeros((grid_bins, grid_bins))
        np.add.at(observed, (ix, iy), 1.0)
        return float(np.sum((observed - expected) ** 2 / expected))
    raise ValueError(f"no closed-form density for k = {k}")


class GeneratorCheck(NamedTuple):
    lhs: float
    rhs: float
    band: float


def generator_moment_check(cfg, start, test_poly):
    """Compare d/dt E[g(U_t)] (finite differences) with E[(generator g)(U_t)].

    The time derivative uses snapshots of the same paths at t_final - 2*delta
    and t_final, centered at t_final - delta where the generator average is
    taken.  Returns (lhs, rhs, band) where band combines three standard
    errors of both sides with an allowance for the Euler and stencil biases.
    """
    if test_poly.total_degree() > 4:
        raise ValueError("test polynomial degree must be <= 4")
    delta = max(0.05 * cfg.t_final, 10.0 * cfg.dt)
    t2 = cfg.t_final
    t1 = cfg.t_final - delta
    t0 = cfg.t_final - 2.0 * delta
    ens = simulate(cfg, start, snapshot_times=(t0, t1, t2))
    g2 = test_poly(ens.snapshots[t2])
    g0 = test_poly(ens.snapshots[t0])
    fd_samples = (g2 - g0) / (2.0 * delta)
    op_g = generalized_jacobi_op(test_poly, cfg.N)
    rhs_samples = op_g(ens.snapshots[t1])
    lhs = float(np.mean(fd_samples))
    rhs = float(np.mean(rhs_samples))
    se = math.hypot(
        float(np.std(fd_samples, ddof=1)) / math.sqrt(cfg.paths),
        float(np.std(rhs_samples, ddof=1)) / math.sqrt(cfg.paths),
    )
    band = 3.0 * se + 10.0 * cfg.dt + delta**2
    return GeneratorCheck(lhs=lhs, rhs=rhs, band=band)
