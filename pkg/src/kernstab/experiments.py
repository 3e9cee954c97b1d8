"""Experiment drivers behind the CLI: eigenvalue scaling, whitened-matrix
heatmaps, and the randomized verifier suites.

Each driver consumes an ExperimentConfig and returns an ExperimentReport whose
CSV serialization is a pure function of config and seed: identical invocations
produce byte-identical files.  Wall-clock time is reported on the side and
never written into an artifact.
"""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import dataclass, field, fields, replace
from typing import Optional

import numpy as np

from . import analysis
from ._version import __version__
from .assembly import conv_gram, gram, shifted_gram
from .geometry import PointSet, equispaced, halton
from .kernels import Family, KernelSpec, has_finite_smoothness, smoothness, spectral_density_1d
from .quadrature import QuadratureConfig
from .rng import SplitMix64
from .spectral import below_precision_floor, sym_eigen, whiten
from .svgplot import Series, heatmap_svg, loglog_plot_svg

COMMANDS = ("eigen-scaling", "heatmap", "equivalence", "identity", "sin2", "thm41", "fit")

_CHECK_COLUMNS = ["trial", "name", "lhs", "rhs", "slack", "satisfied", "reliable"]


@dataclass(frozen=True)
class ExperimentConfig:
    command: str
    kernel: Family = Family.MATERN_BASIC
    dim: int = 1
    n: int = 50
    n_min: int = 10
    n_max: int = 1000
    n_count: int = 30
    layout: str = "equispaced"
    endpoints: bool = True
    shift_factor: float = 0.1
    eps: float = 0.25
    trials: int = 10
    quad_order: int = 20
    panels_per_unit: float = 4.0
    fourier_cutoff: float = 1000.0
    seed: int = 0
    c_min: Optional[float] = None
    c_conv: Optional[float] = None
    out_csv: Optional[str] = None
    out_svg: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not isinstance(self.kernel, Family):
            object.__setattr__(self, "kernel", Family(self.kernel))
        if self.layout not in ("equispaced", "halton"):
            raise ValueError(f"layout must be equispaced or halton, got {self.layout!r}")

    def quad_config(self) -> QuadratureConfig:
        return QuadratureConfig(
            order=self.quad_order,
            panels_per_unit=self.panels_per_unit,
            fourier_cutoff=self.fourier_cutoff,
        )

    def canonical_string(self) -> str:
        skip = {"out_csv", "out_svg"}
        parts = []
        for f in fields(self):
            if f.name in skip:
                continue
            value = getattr(self, f.name)
            if isinstance(value, Family):
                value = value.value
            parts.append(f"{f.name}={value}")
        return ";".join(parts)

    def config_hash(self) -> str:
        return hashlib.sha256(self.canonical_string().encode()).hexdigest()[:12]


@dataclass
class ExperimentReport:
    command: str
    config_hash: str
    columns: list
    rows: list
    checks: list = field(default_factory=list)
    svg: Optional[str] = None
    sidecars: list = field(default_factory=list)  # (path suffix, columns, rows)
    wall_clock: float = 0.0

    @property
    def failed_reliable_checks(self) -> list:
        return [c for c in self.checks if c.reliable and not c.satisfied]

    def write_csv(self, path) -> None:
        _write_rows(path, self.config_hash, self.columns, self.rows)
        for suffix, cols, rows in self.sidecars:
            _write_rows(_with_suffix(path, suffix), self.config_hash, cols, rows)

    def write_svg(self, path) -> None:
        if self.svg is None:
            raise ValueError(f"{self.command} produces no plot")
        with open(path, "w", newline="\n") as fh:
            fh.write(self.svg)


def _with_suffix(path, suffix: str) -> str:
    path = str(path)
    stem, dot, ext = path.rpartition(".")
    return f"{stem}.{suffix}.{ext}" if dot else f"{path}.{suffix}"


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _write_rows(path, config_hash, columns, rows) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(",".join(["config", "version", *columns]) + "\n")
        for row in rows:
            fh.write(",".join([config_hash, __version__, *map(_fmt, row)]) + "\n")


def _check_rows(checks, trials) -> list:
    return [
        [t, c.name, c.lhs, c.rhs, c.slack, c.satisfied, c.reliable]
        for t, c in zip(trials, checks)
    ]


def sample_grid(n_min: int, n_max: int, count: int) -> list[int]:
    """Geometrically spaced integer sample sizes, truncated and deduplicated."""
    if n_min < 2 or n_max < n_min or count < 1:
        raise ValueError("need 2 <= n_min <= n_max and count >= 1")
    if n_min == n_max or count == 1:
        return [n_min]
    expo = np.linspace(math.log10(n_min), math.log10(n_max), count)
    vals = 10.0 ** expo
    vals[0], vals[-1] = n_min, n_max
    return sorted({int(v + 1e-9) for v in vals})


def _make_points(cfg: ExperimentConfig, n: int) -> PointSet:
    if cfg.layout == "halton":
        return halton(n, cfg.dim, skip=0)
    if cfg.dim != 1:
        raise ValueError("equispaced layout is one-dimensional")
    return equispaced(n, 0.0, 1.0, include_endpoints=cfg.endpoints)


def _diagonal_shift(dim: int, magnitude: float) -> np.ndarray:
    return magnitude * np.ones(dim) / math.sqrt(dim)


def _random_interval_set(rng: SplitMix64, n: int, min_separation: float = 1e-3) -> PointSet:
    while True:
        pts = np.sort(rng.uniforms(n))
        if n < 2 or 0.5 * np.min(np.diff(pts)) > min_separation:
            return PointSet(pts[:, None], np.array([[0.0, 1.0]]))


def _require_finite_smoothness(cfg: ExperimentConfig) -> float:
    spec = KernelSpec(cfg.kernel, dim=cfg.dim)
    if not has_finite_smoothness(spec):
        raise ValueError(f"{cfg.kernel.value} is excluded from finite-smoothness runs")
    return smoothness(spec)


def _intercept_fit(samples, exponent: float) -> Optional[float]:
    kept = [(q, v) for q, v in samples if v > 0]
    if not kept:
        return None
    logs = [math.log(v) - exponent * math.log(q) for q, v in kept]
    return math.exp(sum(logs) / len(logs))


def run_eigen_scaling(cfg: ExperimentConfig) -> ExperimentReport:
    """Smallest eigenvalues of the plain and convolved Gram matrices over a
    geometric grid of sample sizes, with the fitted lower-bound curves."""
    start = time.perf_counter()
    tau = _require_finite_smoothness(cfg)
    if cfg.dim != 1:
        raise ValueError("eigenvalue scaling runs are one-dimensional")
    spec = KernelSpec(cfg.kernel, dim=1)
    quad = cfg.quad_config()
    grid = sample_grid(cfg.n_min, cfg.n_max, cfg.n_count)

    samples = []
    for n in grid:
        X = _make_points(cfg, n)
        q = X.separation
        w_sym = np.linalg.eigvalsh(gram(spec, X).data)
        w_conv = np.linalg.eigvalsh(conv_gram(spec, X, quad).data)
        samples.append(
            (
                n,
                q,
                float(w_sym[0]),
                float(w_conv[0]),
                bool(below_precision_floor(w_sym)[0]),
                bool(below_precision_floor(w_conv)[0]),
            )
        )

    c_sym = cfg.c_min if cfg.c_min is not None else analysis.default_symmetric_constant(cfg.kernel, 1)
    c_conv = cfg.c_conv if cfg.c_conv is not None else analysis.default_conv_constant(cfg.kernel, 1)
    if c_sym is None:
        c_sym = _intercept_fit(
            [(q, v) for _, q, v, _, flag, _ in samples if not flag], 2 * tau - 1
        )
    if c_conv is None:
        c_conv = _intercept_fit(
            [(q, v) for _, q, _, v, _, flag in samples if not flag], 4 * tau - 1
        )

    rows = []
    for n, q, lam_sym, lam_conv, flag_sym, flag_conv in samples:
        bound_sym = analysis.symmetric_lower_bound(tau, 1, q, c_sym) if c_sym else math.nan
        bound_conv = analysis.conv_lower_bound(tau, 1, q, c_conv) if c_conv else math.nan
        rows.append(
            [n, q, lam_sym, lam_conv, bound_sym, bound_conv, not flag_sym, not flag_conv]
        )

    svg = loglog_plot_svg(
        [
            Series("lambda_min(k)", [(r[0], r[2]) for r in rows], color="#1f77b4"),
            Series("lambda_min(k*)", [(r[0], r[3]) for r in rows], color="#ff7f0e"),
            Series("bound(k)", [(r[0], r[4]) for r in rows], color="#000000", dashed=True),
            Series("bound(k*)", [(r[0], r[5]) for r in rows], color="#000000", dashed=True),
        ],
        xlabel="#points",
        ylabel="lambda_min",
    )
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=[
            "n", "q", "lambda_min_sym", "lambda_min_conv",
            "bound_sym", "bound_conv", "reliable_sym", "reliable_conv",
        ],
        rows=rows,
        svg=svg,
        wall_clock=time.perf_counter() - start,
    )


def run_heatmap(cfg: ExperimentConfig) -> ExperimentReport:
    """Entrywise magnitudes and spectrum of the whitened shifted matrix."""
    start = time.perf_counter()
    if cfg.dim not in (2, 3):
        raise ValueError("heatmap runs use dim 2 or 3")
    if cfg.layout != "halton":
        raise ValueError("heatmap runs use the halton layout")
    spec = KernelSpec(cfg.kernel, dim=cfg.dim)
    X = halton(cfg.n, cfg.dim)
    b = _diagonal_shift(cfg.dim, cfg.shift_factor * X.separation)
    M = whiten(gram(spec, X), shifted_gram(spec, X, b))
    grid = np.abs(M)
    spectrum = np.linalg.eigvalsh(M)
    rows = [[i, *grid[i]] for i in range(len(X))]
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=["row", *[f"c{j}" for j in range(len(X))]],
        rows=rows,
        svg=heatmap_svg(grid),
        sidecars=[
            ("spectrum", ["index", "eigenvalue"], [[i, v] for i, v in enumerate(spectrum)])
        ],
        wall_clock=time.perf_counter() - start,
    )


def run_equivalence(cfg: ExperimentConfig) -> ExperimentReport:
    start = time.perf_counter()
    spec = KernelSpec(cfg.kernel, dim=cfg.dim)
    X = _make_points(cfg, cfg.n)
    b = _diagonal_shift(cfg.dim, cfg.shift_factor * X.separation)
    result = analysis.verify_equivalence(spec, X, b)
    checks = result.checks
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=_CHECK_COLUMNS,
        rows=_check_rows(checks, [0] * len(checks)),
        checks=checks,
        sidecars=[
            (
                "spectrum",
                ["index", "eigenvalue"],
                [[i, v] for i, v in enumerate(result.spectrum)],
            )
        ],
        wall_clock=time.perf_counter() - start,
    )


def run_identity(cfg: ExperimentConfig) -> ExperimentReport:
    """Randomized matrix-side versus Fourier-side identity checks."""
    start = time.perf_counter()
    if cfg.dim != 1:
        raise ValueError("identity checks are one-dimensional")
    density = spectral_density_1d(KernelSpec(cfg.kernel, dim=1))
    quad = cfg.quad_config()
    rng = SplitMix64(cfg.seed)
    checks, trials = [], []
    for trial in range(cfg.trials):
        X = _random_interval_set(rng, cfg.n)
        alpha = rng.symmetric(cfg.n)
        b = cfg.shift_factor * X.separation
        checks.append(analysis.verify_shift_identity(density, X, alpha, b, quad))
        trials.append(trial)
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=_CHECK_COLUMNS,
        rows=_check_rows(checks, trials),
        checks=checks,
        wall_clock=time.perf_counter() - start,
    )


def run_sin2(cfg: ExperimentConfig) -> ExperimentReport:
    """Damped-form stability sweep over shift fractions and point sets."""
    start = time.perf_counter()
    if cfg.dim != 1:
        raise ValueError("damping checks are one-dimensional")
    density = spectral_density_1d(KernelSpec(cfg.kernel, dim=1))
    quad = cfg.quad_config()
    rng = SplitMix64(cfg.seed)
    sets = [_make_points(replace(cfg, layout="equispaced"), cfg.n)]
    sets += [_random_interval_set(rng, cfg.n) for _ in range(cfg.trials)]
    checks, trials = [], []
    for trial, X in enumerate(sets):
        alpha = rng.symmetric(len(X))
        for kappa in (0.1, 0.5, 1.0):
            b = math.sqrt(cfg.eps) * X.separation * kappa
            for c in analysis.verify_damping_bound(
                density, X, alpha, b, cfg.eps, quad, c_min=cfg.c_min
            ):
                checks.append(c)
                trials.append(trial)
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=_CHECK_COLUMNS,
        rows=_check_rows(checks, trials),
        checks=checks,
        wall_clock=time.perf_counter() - start,
    )


def run_conv_chain(cfg: ExperimentConfig) -> ExperimentReport:
    """Convolved-kernel chain checks for extreme eigenvectors and random
    directions; below-floor quadratic forms are reported but flagged."""
    start = time.perf_counter()
    _require_finite_smoothness(cfg)
    if cfg.dim != 1:
        raise ValueError("convolution chain checks are one-dimensional")
    spec = KernelSpec(cfg.kernel, dim=1)
    quad = cfg.quad_config()
    rng = SplitMix64(cfg.seed)
    X = _make_points(cfg, cfg.n)
    q = X.separation
    b = cfg.shift_factor * q
    dec = sym_eigen(gram(spec, X))
    directions = [dec.eigenvectors[:, 0], dec.eigenvectors[:, -1]]
    directions += [rng.symmetric(len(X)) for _ in range(cfg.trials)]
    checks, trials = [], []
    for trial, alpha in enumerate(directions):
        for c in analysis.verify_conv_chain(spec, X, alpha, b, quad, c=cfg.c_conv):
            checks.append(c)
            trials.append(trial)
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=_CHECK_COLUMNS,
        rows=_check_rows(checks, trials),
        checks=checks,
        wall_clock=time.perf_counter() - start,
    )


def run_fit(cfg: ExperimentConfig) -> ExperimentReport:
    """Power-law fits of the eigenvalue scaling data against the decay targets."""
    start = time.perf_counter()
    tau = _require_finite_smoothness(cfg)
    scaling = run_eigen_scaling(cfg)
    sym_samples = [(r[1], r[2]) for r in scaling.rows if r[6]]
    conv_samples = [(r[1], r[3]) for r in scaling.rows if r[7]]
    targets = [
        ("lambda_min_sym", sym_samples, 2 * tau - 1, 0.15),
        ("lambda_min_conv", conv_samples, 4 * tau - 1, 0.30),
    ]
    rows, checks = [], []
    for name, samples, target, tol in targets:
        law = analysis.fit_power_law(samples)
        check = analysis.BoundCheck(
            name=f"fit-{name}",
            lhs=abs(law.exponent - target),
            rhs=tol,
            satisfied=abs(law.exponent - target) <= tol,
            slack=tol - abs(law.exponent - target),
        )
        checks.append(check)
        rows.append(
            [
                name, law.exponent, law.log_constant, law.r_squared,
                len(law.support), target, tol, check.satisfied,
            ]
        )
    return ExperimentReport(
        command=cfg.command,
        config_hash=cfg.config_hash(),
        columns=[
            "series", "exponent", "log_constant", "r_squared",
            "samples", "target", "tolerance", "satisfied",
        ],
        rows=rows,
        checks=checks,
        wall_clock=time.perf_counter() - start,
    )


_RUNNERS = {
    "eigen-scaling": run_eigen_scaling,
    "heatmap": run_heatmap,
    "equivalence": run_equivalence,
    "identity": run_identity,
    "sin2": run_sin2,
    "thm41": run_conv_chain,
    "fit": run_fit,
}


def run(cfg: ExperimentConfig) -> ExperimentReport:
    return _RUNNERS[cfg.command](cfg)
