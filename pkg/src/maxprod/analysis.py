"""Empirical verification harness: convergence runs, inequality checks and
seeded randomized campaigns.

Sup-norm errors are measured on a dense grid (2048 points plus the lattice
cell midpoints); modular and Luxemburg errors integrate on composite
Gauss-Legendre panels aligned with the lattice cells and the signal's
declared discontinuities.  Everything is deterministic for a fixed seed and
quadrature policy, so reports are bitwise reproducible.
"""

from __future__ import annotations

import csv
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from . import quadrature
from .errors import InadmissibleKernelError, TruncationError
from .kernels import (Kernel, _decay_coefficient, bspline,
                      de_la_vallee_poussin, ensure_l1, fejer,
                      lower_bound_constant, moment, normalize_domain_kind)
from .operators import (OperatorConfig, evaluate_with_table_den,
                        linear_kantorovich_grid, operator_config)
from .orlicz import (PhiFunction, exponential_phi, luxemburg_from_samples,
                     modular_from_samples, power_phi, zygmund_phi)
from .signals import (Domain, Signal, mean_values, random_piecewise_poly)

_SUP_GRID = 2048
_RATE_FLOOR = 1e-12


# ---------------------------------------------------------------------------
# result records

@dataclass
class ConvergenceReport:
    """Per-scale error families for one (signal, kernel, phi) run."""

    scales: list[int]
    sup_errors: list[float]
    modular_errors: list[float]
    luxemburg_errors: list[float]
    fitted_rate: float | None
    lambda_used: float
    valid: list[bool]
    kernel: str = ""
    phi: str = ""
    signal: str = ""

    def to_json(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(asdict(self), fh, indent=2, sort_keys=True)
            fh.write("\n")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n", "sup_error", "modular_error",
                             "luxemburg_error"])
            for row in zip(self.scales, self.sup_errors, self.modular_errors,
                           self.luxemburg_errors):
                writer.writerow([row[0], repr(row[1]), repr(row[2]),
                                 repr(row[3])])


@dataclass(frozen=True)
class InequalityCheck:
    """Uniform record for one numerical inequality verification."""

    lhs: float
    rhs: float
    slack: float
    passed: bool
    context: str

    @classmethod
    def from_sides(cls, lhs: float, rhs: float, tolerance: float,
                   context: str) -> "InequalityCheck":
        if math.isinf(rhs):
            return cls(lhs=lhs, rhs=rhs, slack=math.inf, passed=True,
                       context=context + " [vacuous: rhs infinite]")
        slack = rhs - lhs
        return cls(lhs=lhs, rhs=rhs, slack=slack,
                   passed=slack >= -tolerance, context=context)


@dataclass
class ComparisonTable:
    """Side-by-side sup errors of the linear and max-product operators."""

    scales: list[int]
    maxprod_sup_errors: list[float]
    linear_sup_errors: list[float]
    maxprod_rate: float | None
    linear_rate: float | None


@dataclass
class CampaignResult:
    family: str
    trials: int
    failures: int
    worst_slack: float

    @property
    def passed(self) -> bool:
        return self.failures == 0


# ---------------------------------------------------------------------------
# shared machinery

def fit_rate(scales, errors, floor: float = _RATE_FLOOR) -> float | None:
    """Least-squares slope of log error against log n, ignoring zeros."""
    ns, es = [], []
    for n, e in zip(scales, errors):
        if math.isfinite(e) and e > floor:
            ns.append(math.log(float(n)))
            es.append(math.log(float(e)))
    if len(ns) < 2:
        return None
    slope = np.polyfit(ns, es, 1)[0]
    return float(slope)


def _eval_window(f: Signal, kernel: Kernel, a_chi: float,
                 n: int) -> tuple[float, float]:
    """Window for error measurement: the domain, or the inflated support."""
    if f.domain is not None:
        return f.domain
    if f.support is None:
        raise TruncationError("real-line signal needs compact support")
    s_lo, s_hi = f.support
    if kernel.support is not None:
        margin = (kernel.support + 2.0) / n
    else:
        c = _decay_coefficient(kernel)
        margin = ((c / (a_chi * 1e-9)) ** (1.0 / kernel.decay_order)) / n
    margin = min(16.0, max(2.0, margin))
    return s_lo - margin, s_hi + margin


def _sup_grid(f: Signal, window: tuple[float, float], n: int) -> np.ndarray:
    a, b = window
    grid = np.linspace(a, b, _SUP_GRID)
    k_lo, k_hi = math.floor(n * a), math.ceil(n * b)
    mids = (np.arange(k_lo, k_hi) + 0.5) / n
    mids = mids[(mids >= a) & (mids <= b)]
    return np.unique(np.concatenate([grid, mids]))


def _quad_panels(f: Signal, window: tuple[float, float],
                 n: int) -> np.ndarray:
    """Panel edges: lattice half-cells plus the signal's split points.

    For real-line windows the half-cell resolution is kept near the support
    (where the error lives) and relaxed to unit panels in the decaying far
    field, which the Gauss rule resolves easily.
    """
    a, b = window
    if f.support is not None:
        core_lo, core_hi = f.support[0] - 2.0, f.support[1] + 2.0
    else:
        core_lo, core_hi = a, b
    lo, hi = max(a, core_lo), min(b, core_hi)
    k_lo, k_hi = math.floor(n * lo), math.ceil(n * hi)
    half_cells = np.arange(2 * k_lo, 2 * k_hi + 1) / (2.0 * n)
    far = [np.arange(math.floor(a), math.ceil(lo) + 1, dtype=float),
           np.arange(math.floor(hi), math.ceil(b) + 1, dtype=float)]
    pts = np.concatenate([half_cells, *far,
                          np.asarray(f.split_points()), [a, b]])
    pts = pts[(pts >= a) & (pts <= b)]
    return np.unique(pts)


@dataclass
class _ErrorSamples:
    nodes: np.ndarray
    weights: np.ndarray
    deviations: np.ndarray   # |K_n f - f| at the nodes
    sup_error: float
    den_ok: bool


def _error_samples(f: Signal, kernel: Kernel, n: int, a_chi: float,
                   domain: Domain, truncation_tol: float = 1e-3,
                   need_quadrature: bool = True) -> _ErrorSamples:
    config = OperatorConfig(kernel=kernel, n=n, domain=domain, a_chi=a_chi,
                            truncation_tol=truncation_tol)
    table = mean_values(f, n, config.domain_kind, interval=domain)
    window = _eval_window(f, kernel, a_chi, n)
    grid = _sup_grid(f, window, n)
    k_grid, den_min = evaluate_with_table_den(config, table, grid)
    sup_error = float(np.max(np.abs(k_grid - f.evaluate(grid))))
    if not need_quadrature:
        return _ErrorSamples(nodes=np.empty(0), weights=np.empty(0),
                             deviations=np.empty(0), sup_error=sup_error,
                             den_ok=den_min >= a_chi - 1e-9)
    nodes, weights = quadrature.composite_nodes(_quad_panels(f, window, n))
    k_nodes, den_min_b = evaluate_with_table_den(config, table, nodes)
    deviations = np.abs(k_nodes - f.evaluate(nodes))
    den_ok = min(den_min, den_min_b) >= a_chi - 1e-9
    return _ErrorSamples(nodes=nodes, weights=weights, deviations=deviations,
                         sup_error=sup_error, den_ok=den_ok)


def _threads(requested: int | None) -> int:
    if requested is not None:
        return max(1, int(requested))
    env = os.environ.get("MAXPROD_THREADS", "").strip()
    return max(1, int(env)) if env else 1


# ---------------------------------------------------------------------------
# spec operations

def modulus_of_continuity(f: Signal, delta: float,
                          grid_density: int = 16) -> float:
    """sup |f(x) - f(y)| over pairs at distance <= delta on a dense grid.

    The grid places at least ``grid_density`` points per delta.  For signals
    with jumps the value reflects the jump; continuity is the caller's
    responsibility where a modulus-based bound is being applied.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if f.domain is not None:
        a, b = f.domain
    elif f.support is not None:
        a, b = f.support[0] - delta, f.support[1] + delta
    else:
        raise ValueError("modulus needs a bounded domain or compact support")
    steps = int(math.ceil(grid_density * (b - a) / delta))
    steps = min(steps, 4_000_000)
    xs = np.linspace(a, b, steps + 1)
    vals = np.asarray(f.evaluate(xs), dtype=float)
    h = (b - a) / steps
    width = int(math.floor(delta / h + 1e-9))
    best = 0.0
    for j in range(1, width + 1):
        best = max(best, float(np.max(np.abs(vals[j:] - vals[:-j]))))
    return best


def run_convergence(f: Signal, kernel: Kernel, phi: PhiFunction, lam: float,
                    scales: Sequence[int], domain_kind: str | None = None,
                    eval_grid=None, truncation_tol: float = 1e-3,
                    threads: int | None = None) -> ConvergenceReport:
    """Measure sup, modular and Luxemburg errors of K_n f across scales."""
    scales = [int(n) for n in scales]
    if not scales or any(b <= a for a, b in zip(scales, scales[1:])):
        raise ValueError("scales must be non-empty and strictly increasing")
    kind = normalize_domain_kind(domain_kind) if domain_kind else (
        "line" if f.is_line else "interval")
    if kind == "line" and not f.is_line:
        raise ValueError("line run requested for a bounded-domain signal")
    a_chi = lower_bound_constant(kernel, kind)
    if a_chi <= 0:
        raise InadmissibleKernelError(
            f"kernel {kernel.name!r} is inadmissible on domain kind {kind!r}")
    domain = None if kind == "line" else f.domain

    def cell(n: int):
        samples = _error_samples(f, kernel, n, a_chi, domain, truncation_tol)
        if eval_grid is not None:
            config = OperatorConfig(kernel=kernel, n=n, domain=domain,
                                    a_chi=a_chi,
                                    truncation_tol=truncation_tol)
            table = mean_values(f, n, kind, interval=domain)
            grid = np.asarray(eval_grid, dtype=float)
            kv, _ = evaluate_with_table_den(config, table, grid)
            sup_error = float(np.max(np.abs(kv - f.evaluate(grid))))
        else:
            sup_error = samples.sup_error
        mod = modular_from_samples(phi, lam * samples.deviations,
                                   samples.weights)
        lux = luxemburg_from_samples(phi, samples.deviations, samples.weights)
        return sup_error, mod, lux, samples.den_ok

    workers = _threads(threads)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(cell, scales))
    else:
        rows = [cell(n) for n in scales]
    sup_errors = [r[0] for r in rows]
    return ConvergenceReport(
        scales=scales, sup_errors=sup_errors,
        modular_errors=[r[1] for r in rows],
        luxemburg_errors=[r[2] for r in rows],
        fitted_rate=fit_rate(scales, sup_errors), lambda_used=float(lam),
        valid=[r[3] for r in rows], kernel=kernel.name, phi=phi.name,
        signal=f.name)


def check_modular_inequality(f: Signal, g: Signal, kernel: Kernel,
                             phi: PhiFunction, lam: float, n: int,
                             domain: Domain,
                             tolerance: float = 1e-8) -> InequalityCheck:
    """Modular Lipschitz inequality for the operator pair (K_n f, K_n g).

    lhs integrates phi(lam |K_n f - K_n g|); rhs is l1/m0 times the modular
    of (m0/a) * 2 lam * |f - g|.  An infinite rhs makes the check vacuous
    (flagged in the context string).
    """
    kind = "line" if domain is None else "interval"
    a_chi = lower_bound_constant(kernel, kind)
    config = operator_config(kernel, n, domain)
    m0 = moment(kernel, 0.0, 1e-8)
    l1 = ensure_l1(kernel)
    table_f = mean_values(f, n, kind, interval=domain)
    table_g = mean_values(g, n, kind, interval=domain)
    window = _eval_window(f, kernel, a_chi, n)
    splits = sorted(set(f.split_points()) | set(g.split_points()))
    merged = Signal(name="pair", evaluate=f.evaluate, domain=f.domain,
                    support=f.support,
                    kinks=tuple(t for t in splits
                                if window[0] < t < window[1]))
    edges = _quad_panels(merged, window, n)

    def lhs_fn(x):
        kf, _ = evaluate_with_table_den(config, table_f, x)
        kg, _ = evaluate_with_table_den(config, table_g, x)
        return phi.evaluate(lam * np.abs(kf - kg))

    lhs = quadrature.adaptive(lhs_fn, edges, atol=1e-9, rtol=1e-10)
    factor = 2.0 * lam * m0 / config.a_chi

    def rhs_fn(x):
        return phi.evaluate(factor * np.abs(f.evaluate(x) - g.evaluate(x)))

    rhs_modular = quadrature.adaptive(rhs_fn, edges, atol=1e-9, rtol=1e-10)
    rhs = (l1 / m0) * rhs_modular
    context = (f"modular inequality: kernel={kernel.name} phi={phi.name} "
               f"lambda={lam:g} n={n}")
    return InequalityCheck.from_sides(lhs, rhs, tolerance, context)


def check_lp_lipschitz(f: Signal, g: Signal, kernel: Kernel, p: float, n: int,
                       domain: Domain,
                       tolerance: float = 1e-8) -> InequalityCheck:
    """L^p Lipschitz bound: |K_n f - K_n g|_p <= C(p, kernel) |f - g|_p."""
    if p < 1:
        raise ValueError("p must satisfy p >= 1")
    kind = "line" if domain is None else "interval"
    a_chi = lower_bound_constant(kernel, kind)
    config = operator_config(kernel, n, domain)
    m0 = moment(kernel, 0.0, 1e-8)
    l1 = ensure_l1(kernel)
    table_f = mean_values(f, n, kind, interval=domain)
    table_g = mean_values(g, n, kind, interval=domain)
    window = _eval_window(f, kernel, a_chi, n)
    splits = sorted(set(f.split_points()) | set(g.split_points()))
    merged = Signal(name="pair", evaluate=f.evaluate, domain=f.domain,
                    support=f.support,
                    kinks=tuple(t for t in splits
                                if window[0] < t < window[1]))
    edges = _quad_panels(merged, window, n)

    def lhs_fn(x):
        kf, _ = evaluate_with_table_den(config, table_f, x)
        kg, _ = evaluate_with_table_den(config, table_g, x)
        return np.abs(kf - kg) ** p

    lhs = quadrature.adaptive(lhs_fn, edges, atol=1e-12, rtol=1e-11) ** (1.0 / p)

    def diff_fn(x):
        return np.abs(f.evaluate(x) - g.evaluate(x)) ** p

    fg_norm = quadrature.adaptive(diff_fn, edges, atol=1e-12,
                                  rtol=1e-11) ** (1.0 / p)
    constant = 2.0 * (m0 ** (p - 1.0) * l1) ** (1.0 / p) / config.a_chi
    rhs = constant * fg_norm
    context = (f"Lp Lipschitz: kernel={kernel.name} p={p:g} n={n} "
               f"constant={constant:.6g}")
    return InequalityCheck.from_sides(lhs, rhs, tolerance, context)


def check_zygmund_lipschitz(f: Signal, g: Signal, kernel: Kernel, lam: float,
                            n: int, domain: Domain,
                            tolerance: float = 1e-8) -> InequalityCheck:
    """Zygmund-space (u log u) instance with its sharper constant.

    lhs: integral of |Kf - Kg| log(lam |Kf - Kg| + e);
    rhs: (2 l1 / a) * integral of |f - g| log((m0/a) 2 lam |f - g| + e).
    """
    kind = "line" if domain is None else "interval"
    a_chi = lower_bound_constant(kernel, kind)
    config = operator_config(kernel, n, domain)
    m0 = moment(kernel, 0.0, 1e-8)
    l1 = ensure_l1(kernel)
    table_f = mean_values(f, n, kind, interval=domain)
    table_g = mean_values(g, n, kind, interval=domain)
    window = _eval_window(f, kernel, a_chi, n)
    splits = sorted(set(f.split_points()) | set(g.split_points()))
    merged = Signal(name="pair", evaluate=f.evaluate, domain=f.domain,
                    support=f.support,
                    kinks=tuple(t for t in splits
                                if window[0] < t < window[1]))
    edges = _quad_panels(merged, window, n)

    def lhs_fn(x):
        kf, _ = evaluate_with_table_den(config, table_f, x)
        kg, _ = evaluate_with_table_den(config, table_g, x)
        d = np.abs(kf - kg)
        return d * np.log(lam * d + math.e)

    lhs = quadrature.adaptive(lhs_fn, edges, atol=1e-10, rtol=1e-10)
    factor = 2.0 * lam * m0 / config.a_chi

    def rhs_fn(x):
        d = np.abs(f.evaluate(x) - g.evaluate(x))
        return d * np.log(factor * d + math.e)

    rhs = (2.0 * l1 / config.a_chi) * quadrature.adaptive(
        rhs_fn, edges, atol=1e-10, rtol=1e-10)
    context = (f"Zygmund instance: kernel={kernel.name} lambda={lam:g} n={n}")
    return InequalityCheck.from_sides(lhs, rhs, tolerance, context)


def check_jackson(f: Signal, kernel: Kernel, n: int,
                  tolerance: float = 1e-9) -> InequalityCheck:
    """Jackson-type sup bound: sup |K_n f - f| <= (2 m0 + m1)/a * omega(f, 1/n).

    Requires a finite first moment; meaningful for continuous signals (a
    jump inflates the modulus and the bound loses its meaning).
    """
    kind = "line" if f.is_line else "interval"
    a_chi = lower_bound_constant(kernel, kind)
    if a_chi <= 0:
        raise InadmissibleKernelError(
            f"kernel {kernel.name!r} is inadmissible on {kind!r}")
    m0 = moment(kernel, 0.0, 1e-8)
    m1 = moment(kernel, 1.0, 1e-8)
    if not math.isfinite(m1):
        raise TruncationError(
            f"first moment of {kernel.name!r} diverges; the Jackson bound "
            "does not apply")
    samples = _error_samples(f, kernel, n, a_chi,
                             None if f.is_line else f.domain,
                             need_quadrature=False)
    omega = modulus_of_continuity(f, 1.0 / n)
    rhs = (2.0 * m0 + m1) / a_chi * omega
    context = (f"Jackson: kernel={kernel.name} signal={f.name} n={n} "
               f"omega={omega:.6g}")
    return InequalityCheck.from_sides(samples.sup_error, rhs, tolerance,
                                      context)


def compare_linear_vs_maxprod(f: Signal, kernel: Kernel,
                              scales: Sequence[int]) -> ComparisonTable:
    """Sup errors of the linear series and the max-product operator, per n.

    The table is evidence only: no ordering between the two columns is
    asserted, since the theoretical comparison is between bound forms, not
    realized errors.  On a bounded domain with a compactly supported kernel
    the grid is inset by the kernel reach: outside that strip the truncated
    linear series is structurally incomplete and its error says nothing
    about the approximation rate.
    """
    scales = [int(n) for n in scales]
    kind = "line" if f.is_line else "interval"
    a_chi = lower_bound_constant(kernel, kind)
    if a_chi <= 0:
        raise InadmissibleKernelError(
            f"kernel {kernel.name!r} is inadmissible on {kind!r}")
    max_err, lin_err = [], []
    for n in scales:
        samples = _error_samples(f, kernel, n, a_chi,
                                 None if f.is_line else f.domain,
                                 need_quadrature=False)
        window = _eval_window(f, kernel, a_chi, n)
        if f.domain is not None and kernel.support is not None:
            inset = (kernel.support + 1.0) / n
            a, b = window
            if a + inset < b - inset:
                window = (a + inset, b - inset)
        grid = _sup_grid(f, window, n)
        sv = linear_kantorovich_grid(kernel, float(n), f, grid)
        lin_err.append(float(np.max(np.abs(sv - f.evaluate(grid)))))
        max_err.append(samples.sup_error)
    return ComparisonTable(scales=scales, maxprod_sup_errors=max_err,
                           linear_sup_errors=lin_err,
                           maxprod_rate=fit_rate(scales, max_err),
                           linear_rate=fit_rate(scales, lin_err))


def find_modular_lambda(f: Signal, kernel: Kernel, phi: PhiFunction,
                        scales: Sequence[int],
                        lambda_grid: Sequence[float] = (4.0, 2.0, 1.0, 0.5,
                                                        0.25, 0.125, 0.0625,
                                                        0.03125),
                        threshold: float = 1e-3,
                        domain_kind: str | None = None) -> float | None:
    """Largest grid lambda whose modular error sequence decays acceptably.

    A lambda passes when its modular sequence is non-increasing (10 percent
    wiggle slack), ends below ``threshold`` and below its starting value; an
    identically-zero sequence passes trivially.  Returns None when the grid
    is exhausted.  The threshold is a harness design choice: it makes the
    existence statement "some lambda works" operational.
    """
    scales = [int(n) for n in scales]
    kind = normalize_domain_kind(domain_kind) if domain_kind else (
        "line" if f.is_line else "interval")
    a_chi = lower_bound_constant(kernel, kind)
    if a_chi <= 0:
        raise InadmissibleKernelError(
            f"kernel {kernel.name!r} is inadmissible on {kind!r}")
    domain = None if kind == "line" else f.domain
    per_scale = [_error_samples(f, kernel, n, a_chi, domain) for n in scales]

    def passes(seq: list[float]) -> bool:
        if any(not math.isfinite(v) for v in seq):
            return False
        if max(seq) <= 1e-15:
            return True
        if seq[-1] >= threshold or seq[-1] > seq[0]:
            return False
        return all(seq[i + 1] <= 1.1 * seq[i] + 1e-15
                   for i in range(len(seq) - 1))

    for lam in sorted(lambda_grid, reverse=True):
        seq = [modular_from_samples(phi, lam * s.deviations, s.weights)
               for s in per_scale]
        if passes(seq):
            return float(lam)
    return None


# ---------------------------------------------------------------------------
# randomized campaigns (shared by the test suite and the CLI verifier)

def _default_kernels() -> list[Kernel]:
    return [fejer(), de_la_vallee_poussin(), bspline(4), bspline(5)]


def campaign_operator_algebra(trials: int, seed: int,
                              kernels: Sequence[Kernel] | None = None,
                              interval: tuple[float, float] = (0.0, 1.0),
                              slack: float = 1e-12) -> list[CampaignResult]:
    """Seeded checks of the four operator algebra properties.

    Per trial: monotonicity under f <= g, sub-additivity, the difference
    bound through |f - g|, and positive homogeneity.  Signals are exact
    piecewise polynomials, so the mean tables carry no quadrature slack.
    """
    rng = np.random.default_rng(seed)
    kernels = list(kernels) if kernels is not None else _default_kernels()
    configs = {}
    fails = {"monotonicity": 0, "sub-additivity": 0, "difference-bound": 0,
             "homogeneity": 0}
    worst = {k: math.inf for k in fails}
    for t in range(trials):
        ker = kernels[t % len(kernels)]
        n = int(rng.choice([4, 8, 16, 32]))
        key = (ker.name, n)
        if key not in configs:
            configs[key] = operator_config(ker, n, interval)
        config = configs[key]
        fp = random_piecewise_poly(rng, domain=interval)
        gp = random_piecewise_poly(rng, domain=interval)
        hp = random_piecewise_poly(rng, domain=interval)
        lam = float(rng.choice([0.0, 0.5, 2.0, 10.0]))
        xs = rng.uniform(interval[0], interval[1], size=4)
        sig = {name: poly.to_signal(name=name) for name, poly in (
            ("f", fp), ("g", gp), ("fh", fp + hp), ("fg", fp + gp),
            ("d", (fp - gp).absolute()), ("lf", fp.scaled(lam)))}
        tables = {name: mean_values(s, n, "interval", interval=interval)
                  for name, s in sig.items()}
        vals = {name: evaluate_with_table_den(config, tab, xs)[0]
                for name, tab in tables.items()}
        checks = {
            "monotonicity": float(np.min(vals["fh"] - vals["f"])),
            "sub-additivity": float(np.min(
                vals["f"] + vals["g"] - vals["fg"])),
            "difference-bound": float(np.min(
                vals["d"] - np.abs(vals["f"] - vals["g"]))),
            "homogeneity": float(-np.max(
                np.abs(vals["lf"] - lam * vals["f"])
                / np.maximum(1.0, np.abs(lam * vals["f"])))),
        }
        for name, margin in checks.items():
            worst[name] = min(worst[name], margin)
            if margin < -slack:
                fails[name] += 1
    return [CampaignResult(family=f"operator-algebra/{name}", trials=trials,
                           failures=fails[name], worst_slack=worst[name])
            for name in fails]


def campaign_max_convexity(trials: int, seed: int,
                           phis: Sequence[PhiFunction] | None = None) -> CampaignResult:
    """Randomized finite max-sets against the convexity/max inequality."""
    rng = np.random.default_rng(seed)
    if phis is None:
        phis = [power_phi(2), zygmund_phi(1, 1), exponential_phi(1)]
    from .orlicz import maxphi_inequality_check
    failures = 0
    for t in range(trials):
        size = int(rng.integers(1, 64))
        values = rng.uniform(0.0, 5.0, size=size)
        if rng.uniform() < 0.2:
            values[rng.integers(0, size)] = 0.0
        phi = phis[t % len(phis)]
        le, eq = maxphi_inequality_check(phi, values)
        if not (le and eq):
            failures += 1
    return CampaignResult(family="max-convexity", trials=trials,
                          failures=failures, worst_slack=0.0)


def _draw_lambda(rng, phi: PhiFunction) -> float:
    if not phi.delta2:
        return float(rng.uniform(0.01, 0.05))
    return float(rng.uniform(0.25, 2.0))


def campaign_modular_inequality(trials: int, seed: int,
                                kernels: Sequence[Kernel] | None = None,
                                phis: Sequence[PhiFunction] | None = None,
                                scales: Sequence[int] = (16, 32),
                                interval: tuple[float, float] = (0.0, 1.0),
                                tolerance: float = 1e-8) -> CampaignResult:
    """Randomized modular-inequality trials over kernels x phis x scales."""
    rng = np.random.default_rng(seed)
    kernels = list(kernels) if kernels is not None else [fejer(), bspline(4)]
    if phis is None:
        phis = [power_phi(1), power_phi(2), zygmund_phi(1, 1),
                exponential_phi(1)]
    failures = 0
    worst = math.inf
    for t in range(trials):
        ker = kernels[t % len(kernels)]
        phi = phis[(t // len(kernels)) % len(phis)]
        n = int(scales[t % len(scales)])
        lam = _draw_lambda(rng, phi)
        f = random_piecewise_poly(rng, domain=interval).to_signal(name="f")
        g = random_piecewise_poly(rng, domain=interval).to_signal(name="g")
        check = check_modular_inequality(f, g, ker, phi, lam, n, interval,
                                         tolerance)
        if math.isfinite(check.slack):
            worst = min(worst, check.slack)
        if not check.passed:
            failures += 1
    return CampaignResult(family="modular-inequality", trials=trials,
                          failures=failures, worst_slack=worst)


def campaign_lp_lipschitz(trials: int, seed: int,
                          kernels: Sequence[Kernel] | None = None,
                          ps: Sequence[float] = (1.0, 2.0, 3.0),
                          scales: Sequence[int] = (16, 32),
                          interval: tuple[float, float] = (0.0, 1.0),
                          tolerance: float = 1e-8) -> CampaignResult:
    """Randomized L^p Lipschitz-bound trials."""
    rng = np.random.default_rng(seed)
    kernels = list(kernels) if kernels is not None else [
        fejer(), bspline(4), de_la_vallee_poussin()]
    failures = 0
    worst = math.inf
    for t in range(trials):
        ker = kernels[t % len(kernels)]
        p = float(ps[t % len(ps)])
        n = int(scales[(t // len(ps)) % len(scales)])
        f = random_piecewise_poly(rng, domain=interval).to_signal(name="f")
        g = random_piecewise_poly(rng, domain=interval).to_signal(name="g")
        check = check_lp_lipschitz(f, g, ker, p, n, interval, tolerance)
        worst = min(worst, check.slack)
        if not check.passed:
            failures += 1
    return CampaignResult(family="lp-lipschitz", trials=trials,
                          failures=failures, worst_slack=worst)


def campaign_zygmund_instance(trials: int, seed: int,
                              kernels: Sequence[Kernel] | None = None,
                              scales: Sequence[int] = (16, 32),
                              interval: tuple[float, float] = (0.0, 1.0),
                              tolerance: float = 1e-8) -> CampaignResult:
    """Randomized trials of the u log u instance with its own constant."""
    rng = np.random.default_rng(seed)
    kernels = list(kernels) if kernels is not None else [fejer(), bspline(4)]
    failures = 0
    worst = math.inf
    for t in range(trials):
        ker = kernels[t % len(kernels)]
        n = int(scales[t % len(scales)])
        lam = float(rng.uniform(0.25, 2.0))
        f = random_piecewise_poly(rng, domain=interval).to_signal(name="f")
        g = random_piecewise_poly(rng, domain=interval).to_signal(name="g")
        check = check_zygmund_lipschitz(f, g, ker, lam, n, interval,
                                        tolerance)
        worst = min(worst, check.slack)
        if not check.passed:
            failures += 1
    return CampaignResult(family="zygmund-instance", trials=trials,
                          failures=failures, worst_slack=worst)


def campaign_exponential_instance(trials: int, seed: int,
                                  kernels: Sequence[Kernel] | None = None,
                                  gamma: float = 1.0,
                                  scales: Sequence[int] = (16, 32),
                                  interval: tuple[float, float] = (0.0, 1.0),
                                  tolerance: float = 1e-8) -> CampaignResult:
    """Randomized trials of the exponential-space modular inequality."""
    rng = np.random.default_rng(seed)
    kernels = list(kernels) if kernels is not None else [fejer(), bspline(4)]
    phi = exponential_phi(gamma)
    failures = 0
    worst = math.inf
    for t in range(trials):
        ker = kernels[t % len(kernels)]
        n = int(scales[t % len(scales)])
        lam = float(rng.uniform(0.01, 0.05))
        f = random_piecewise_poly(rng, domain=interval).to_signal(name="f")
        g = random_piecewise_poly(rng, domain=interval).to_signal(name="g")
        check = check_modular_inequality(f, g, ker, phi, lam, n, interval,
                                         tolerance)
        if math.isfinite(check.slack):
            worst = min(worst, check.slack)
        if not check.passed:
            failures += 1
    return CampaignResult(family="exponential-instance", trials=trials,
                          failures=failures, worst_slack=worst)
