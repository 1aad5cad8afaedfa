"""Kernel catalog and admissibility diagnostics for lattice sampling operators.

A kernel is a bounded function on the real line plus the metadata needed to
truncate infinite lattice suprema with a certified error: either a compact
support radius, or a decay order ``alpha`` with coefficient ``C`` such that
``|chi(u)| <= C * |u|**-alpha`` away from the origin.

The catalog ships three families:

* ``fejer``            -- 0.5 * sinc(x/2)**2, non-negative, decay order 2
* ``vallee-poussin``   -- sin(x/2) sin(3x/2) / (9 x^2 / 4), signed lobes
* ``bspline:<k>``      -- central B-spline of order k, support [-k/2, k/2]

Two constants gate admissibility for the sampling operators: the moment of
order beta (finite for beta up to the decay order) and the infimum of the
kernel over a centered interval, [-3/2, 3/2] for bounded domains and
[-1/2, 1/2] for the whole line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import quadrature
from .errors import TruncationError, UnknownNameError

# Moments of higher order than the certified decay are reported as inf.
DIVERGED = math.inf

_GRID = 4096
_REFINE_TOP = 8
_GOLDEN_ITERS = 80
_INF_INTERVALS = {"interval": (-1.5, 1.5), "line": (-0.5, 0.5)}


def normalize_domain_kind(kind: str) -> str:
    k = kind.strip().lower()
    if k in ("interval", "bounded", "bounded_interval"):
        return "interval"
    if k in ("line", "real_line", "r"):
        return "line"
    raise ValueError(f"unknown domain kind: {kind!r}")


@dataclass(eq=False)
class Kernel:
    """Evaluatable kernel with truncation certificates.

    ``decay_coeff`` is a constant C with |chi(u)| <= C |u|**-decay_order for
    every u != 0; the catalog sets it exactly, custom kernels get a sampled
    estimate on first use.  ``l1_norm``/``sup_norm`` hold known closed-form
    values when available (``l1_norm`` is filled lazily by ``ensure_l1``).
    Instances are treated as immutable after construction.
    """

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    support: float | None = None
    decay_order: float | None = None
    decay_coeff: float | None = field(default=None, repr=False)
    sup_norm: float | None = None
    l1_norm: float | None = None


@dataclass(frozen=True)
class KernelDiagnostics:
    """Computed admissibility report for one kernel."""

    kernel: str
    beta: float
    domain_kind: str
    m_beta: dict[float, float]
    a_chi_bounded: float
    a_chi_line: float
    satisfies_chi1: bool
    satisfies_chi2: bool
    satisfies_chi2_prime: bool
    admissible: bool


# ---------------------------------------------------------------------------
# catalog

def fejer() -> Kernel:
    """Fejer kernel 0.5 * sinc(x/2)**2 (sinc(t) = sin(pi t)/(pi t), 1 at 0)."""

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        return 0.5 * np.sinc(0.5 * x) ** 2

    # |chi(u)| = 2 sin^2(pi u / 2) / (pi u)^2 <= 2 / (pi u)^2 for all u != 0.
    return Kernel("fejer", evaluate, support=None, decay_order=2.0,
                  decay_coeff=2.0 / math.pi ** 2, sup_norm=0.5, l1_norm=1.0)


def de_la_vallee_poussin() -> Kernel:
    """de la Vallee-Poussin kernel sin(x/2) sin(3x/2) / (9x^2/4), 1/3 at 0.

    Takes negative values (the sign of sin(x/2) sin(3x/2) alternates), so it
    exercises the signed-lobe branch of the operators.
    """

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        small = np.abs(x) < 1e-4
        safe = np.where(small, 1.0, x)
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = np.sin(0.5 * safe) * np.sin(1.5 * safe) / (2.25 * safe * safe)
        series = (1.0 - 5.0 * x * x / 12.0) / 3.0
        return np.where(small, series, vals)

    # |sin(x/2) sin(3x/2)| <= 1, hence |chi(u)| <= (4/9) |u|**-2 everywhere.
    return Kernel("vallee-poussin", evaluate, support=None, decay_order=2.0,
                  decay_coeff=4.0 / 9.0, sup_norm=1.0 / 3.0, l1_norm=None)


def bspline(order: int) -> Kernel:
    """Central B-spline of the given order; support [-order/2, order/2]."""
    if int(order) != order or order < 1:
        raise ValueError("B-spline order must be a positive integer")
    n = int(order)
    half = 0.5 * n
    if n == 1:
        def evaluate(x):
            x = np.asarray(x, dtype=float)
            return np.where((x >= -0.5) & (x < 0.5), 1.0, 0.0)

        return Kernel("bspline:1", evaluate, support=0.5, sup_norm=1.0,
                      l1_norm=1.0)

    signs = [(-1.0) ** i * math.comb(n, i) for i in range(n + 1)]
    fact = float(math.factorial(n - 1))

    def evaluate(x):
        x = np.asarray(x, dtype=float)
        # clip into the support first: the alternating sum cancels only up
        # to rounding outside it, and huge arguments would overflow
        xc = np.clip(x, -half, half)
        acc = np.zeros_like(xc)
        for i, c in enumerate(signs):
            acc = acc + c * np.clip(half + xc - i, 0.0, None) ** (n - 1)
        return np.where(np.abs(x) >= half, 0.0, acc / fact)

    sup = float(evaluate(np.array(0.0)))
    return Kernel(f"bspline:{n}", evaluate, support=half, sup_norm=sup,
                  l1_norm=1.0)


def kernel_by_name(name: str) -> Kernel:
    """Resolve a catalog kernel from its CLI string."""
    key = name.strip().lower()
    if key == "fejer":
        return fejer()
    if key in ("vallee-poussin", "de-la-vallee-poussin"):
        return de_la_vallee_poussin()
    if key.startswith("bspline:"):
        try:
            order = int(key.split(":", 1)[1])
        except ValueError:
            raise UnknownNameError(f"malformed B-spline name: {name!r}") from None
        if order < 1:
            raise UnknownNameError(f"B-spline order must be >= 1: {name!r}")
        return bspline(order)
    raise UnknownNameError(f"unknown kernel: {name!r}")


# ---------------------------------------------------------------------------
# lattice moment machinery

def _golden_max(fn, lo: float, hi: float, iters: int = _GOLDEN_ITERS) -> float:
    """Golden-section maximum of a scalar function on [lo, hi]."""
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    invphi2 = invphi * invphi
    a, b = lo, hi
    h = b - a
    c = a + invphi2 * h
    d = a + invphi * h
    fc, fd = fn(c), fn(d)
    best = max(fn(a), fn(b), fc, fd)
    for _ in range(iters):
        if fc >= fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + invphi2 * h
            fc = fn(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + invphi * h
            fd = fn(d)
        best = max(best, fc, fd)
        if h <= 1e-13 * max(1.0, abs(a)):
            break
    return best


def _inner_sup(kernel: Kernel, beta: float, xs: np.ndarray,
               j_window: int) -> np.ndarray:
    """sup over lattice shifts k of |chi(x-k)| |x-k|**beta, |x-k| <= window."""
    k0 = math.floor(float(xs.min())) - j_window
    k1 = math.ceil(float(xs.max())) + j_window
    ks = np.arange(k0, k1 + 1, dtype=float)
    u = xs[:, None] - ks[None, :]
    g = np.abs(kernel.evaluate(u)) * np.abs(u) ** beta
    return g.max(axis=1)


def _outer_sup(kernel: Kernel, beta: float, j_window: int,
               interval: tuple[float, float], grid: int = _GRID) -> float:
    """sup over x in ``interval`` of the inner lattice supremum."""
    lo, hi = interval
    xs = np.linspace(lo, hi, grid, endpoint=False)
    g = _inner_sup(kernel, beta, xs, j_window)
    best = float(g.max())
    h = (hi - lo) / grid

    def point(x: float) -> float:
        return float(_inner_sup(kernel, beta, np.array([x]), j_window)[0])

    for i in np.argsort(g)[-_REFINE_TOP:]:
        c = float(xs[i])
        best = max(best, _golden_max(point, max(lo, c - h), min(hi, c + h)))
    return best


def _decay_coefficient(kernel: Kernel) -> float:
    """Coefficient C of the decay certificate, estimating it if unset."""
    if kernel.decay_coeff is not None:
        return kernel.decay_coeff
    if kernel.decay_order is None:
        raise TruncationError(f"kernel {kernel.name!r} has no decay order")
    u = np.arange(4.0, 4096.0, 1.0 / 16.0)
    u = np.concatenate([u, -u])
    c = float(np.max(np.abs(kernel.evaluate(u)) * np.abs(u) ** kernel.decay_order))
    kernel.decay_coeff = 1.1 * c  # safety margin over the sampled peak
    return kernel.decay_coeff


def _tail_limsup(kernel: Kernel, alpha: float) -> float:
    """Estimate of lim sup |chi(u)| |u|**alpha for |u| -> inf."""
    u = np.arange(64.0, 4096.0, 1.0 / 16.0)
    best = 0.0
    for side in (u, -u):
        g = np.abs(kernel.evaluate(side)) * np.abs(side) ** alpha
        top = np.argsort(g)[-_REFINE_TOP:]

        def point(x: float) -> float:
            xx = np.array([x])
            return float(np.abs(kernel.evaluate(xx))[0] * abs(x) ** alpha)

        best = max(best, float(g.max()))
        for i in top:
            c = float(side[i])
            best = max(best, _golden_max(point, c - 0.1, c + 0.1))
    return best


def _tail_terms_grow(kernel: Kernel, beta: float) -> bool:
    """Detect growth of |chi(u)| |u|**beta over dyadic windows."""
    peaks = []
    for k in range(4, 20):
        u = np.linspace(2.0 ** k, 2.0 ** (k + 1), 2048)
        u = np.concatenate([u, -u])
        peaks.append(float(np.max(np.abs(kernel.evaluate(u)) * np.abs(u) ** beta)))
    return peaks[-1] > 10.0 * max(peaks[0], 1e-300)


def moment(kernel: Kernel, beta: float, tolerance: float = 1e-6,
           outer_interval: tuple[float, float] = (0.0, 1.0)) -> float:
    """Generalized absolute moment of order ``beta``.

    This is the sup over x of the lattice supremum of |chi(x-k)| |x-k|**beta.
    Shifting x by an integer permutes the lattice, so the outer sup is taken
    over one period [0, 1) (``outer_interval`` is exposed so the reduction
    itself can be validated against wider windows).

    The inner supremum is truncated with a certified cutoff: terms at lattice
    distance >= U are bounded by C * U**(beta - alpha), and once that bound
    falls below the running supremum (or below tolerance/10) the omitted
    terms cannot matter.  Compactly supported kernels are summed exactly.

    Returns ``math.inf`` when ``beta`` exceeds the decay order and the tail
    terms are observed to grow (divergent moment).
    """
    if beta < 0:
        raise ValueError("moment order beta must be >= 0")
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    if kernel.support is not None:
        j_window = int(math.ceil(kernel.support)) + 2
        return _outer_sup(kernel, beta, j_window, outer_interval)
    alpha = kernel.decay_order
    if alpha is None:
        raise TruncationError(
            f"kernel {kernel.name!r} declares neither support nor decay order; "
            "the lattice supremum cannot be truncated")
    c = _decay_coefficient(kernel)
    if beta > alpha:
        if _tail_terms_grow(kernel, beta):
            return DIVERGED
        raise TruncationError(
            f"moment of order {beta} is not certified finite for "
            f"{kernel.name!r} and no divergence was observed")
    if beta == alpha:
        # tail terms do not decay at the critical order; combine a finite
        # window with the sampled tail lim sup
        near = _outer_sup(kernel, beta, 64, outer_interval)
        return max(near, _tail_limsup(kernel, alpha))
    coarse = _outer_sup(kernel, beta, 8, outer_interval)
    floor_val = max(coarse, tolerance / 10.0)
    cutoff = (c / floor_val) ** (1.0 / (alpha - beta))
    j_window = int(math.ceil(max(8.0, cutoff + 1.0)))
    if j_window > 65536:
        raise TruncationError(
            f"certified moment window for {kernel.name!r} exceeds 65536 cells")
    if j_window == 8:
        return coarse
    return _outer_sup(kernel, beta, j_window, outer_interval)


def lower_bound_constant(kernel: Kernel, domain_kind: str = "interval") -> float:
    """Infimum of the kernel over the admissibility interval.

    [-3/2, 3/2] for bounded domains, [-1/2, 1/2] for the real line.  The
    returned value may be <= 0, which signals that the positivity condition
    fails; the caller decides how to treat it.
    """
    lo, hi = _INF_INTERVALS[normalize_domain_kind(domain_kind)]
    xs = np.linspace(lo, hi, _GRID + 1)
    vals = np.asarray(kernel.evaluate(xs), dtype=float)
    best = float(vals.min())
    h = (hi - lo) / _GRID

    def neg(x: float) -> float:
        return -float(kernel.evaluate(np.array([x]))[0])

    for i in np.argsort(vals)[:_REFINE_TOP]:
        c = float(xs[i])
        best = min(best, -_golden_max(neg, max(lo, c - h), min(hi, c + h)))
    return best


def l1_norm(kernel: Kernel, tolerance: float = 1e-8) -> float:
    """Numerical L1 norm of the kernel by adaptive Simpson quadrature.

    Compactly supported kernels are integrated exactly on their support.
    Decay kernels are integrated on a window [-U, U]; when the window the
    tolerance would demand is impractically wide, the remainder is added as
    an averaged-coefficient tail estimate (the mean of |chi(u)| |u|**alpha
    over a far window), whose error is O(C * U**-alpha).
    """

    def absfn(x):
        return np.abs(kernel.evaluate(x))

    if kernel.support is not None:
        s = kernel.support
        edges = np.linspace(-s, s, max(9, 4 * int(math.ceil(s)) + 1))
        return quadrature.adaptive(absfn, edges, atol=0.5 * tolerance)
    alpha = kernel.decay_order
    if alpha is None or alpha <= 1.0:
        raise TruncationError(
            f"kernel {kernel.name!r} is not certified absolutely integrable")
    c = _decay_coefficient(kernel)
    u_bound = (4.0 * c / ((alpha - 1.0) * tolerance)) ** (1.0 / (alpha - 1.0))
    u = min(u_bound, 4096.0)
    edges = np.linspace(-u, u, 2 * int(math.ceil(u)) + 1)
    main = quadrature.adaptive(absfn, edges, atol=0.25 * tolerance)
    tail = 0.0
    if u < u_bound:
        us = np.arange(u, 3.0 * u, 1.0 / 64.0)
        c_avg = 0.5 * (np.mean(absfn(us) * us ** alpha)
                       + np.mean(absfn(-us) * us ** alpha))
        tail = 2.0 * float(c_avg) * u ** (1.0 - alpha) / (alpha - 1.0)
    return float(main + tail)


def ensure_l1(kernel: Kernel, tolerance: float = 1e-6) -> float:
    """Known L1 norm of the kernel, computing and caching it when absent."""
    if kernel.l1_norm is None:
        kernel.l1_norm = l1_norm(kernel, tolerance)
    return kernel.l1_norm


def check_assumptions(kernel: Kernel, domain_kind: str = "interval",
                      beta: float = 2.0, tolerance: float = 1e-6) -> KernelDiagnostics:
    """Full admissibility diagnostics.

    A kernel is admissible for a domain kind when the moment of order
    ``beta`` is finite and the infimum over the matching centered interval
    is strictly positive.  A divergent moment is reported as a failed
    finiteness flag, not an error.
    """
    if beta <= 0:
        raise ValueError("beta must be positive")
    kind = normalize_domain_kind(domain_kind)
    m_map = {0.0: moment(kernel, 0.0, tolerance)}
    if 1.0 not in (0.0, float(beta)):
        m_map[1.0] = moment(kernel, 1.0, tolerance)
    m_map[float(beta)] = moment(kernel, float(beta), tolerance)
    a_bounded = lower_bound_constant(kernel, "interval")
    a_line = lower_bound_constant(kernel, "line")
    chi1 = math.isfinite(m_map[float(beta)])
    chi2 = a_bounded > 0.0
    chi2p = a_line > 0.0
    admissible = chi1 and (chi2 if kind == "interval" else chi2p)
    return KernelDiagnostics(
        kernel=kernel.name, beta=float(beta), domain_kind=kind, m_beta=m_map,
        a_chi_bounded=a_bounded, a_chi_line=a_line,
        satisfies_chi1=chi1, satisfies_chi2=chi2, satisfies_chi2_prime=chi2p,
        admissible=admissible)
