"""Phi-functions, the modular functional and the Luxemburg norm.

The shipped phi-functions are ``power:p`` (u**p, p >= 1), ``zygmund:a,b``
(u**a * log(u+e)**b) and ``exponential:g`` (exp(u**g) - 1).  The first two
satisfy the doubling condition phi(2u) <= M phi(u); the exponential family
does not, which is exactly what separates modular from norm convergence in
the experiments.

A divergent modular is reported as ``math.inf`` (overflow guard in the
quadrature); quadrature non-convergence raises QuadratureError instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import quadrature
from .errors import MaxprodError, UnknownNameError
from .signals import Signal

_LAMBDA_CAP = 1e12


@dataclass(frozen=True)
class PhiFunction:
    """Convexity-flagged phi-function; ``evaluate`` maps u >= 0 to phi(u)."""

    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    convex: bool
    delta2: bool


def power_phi(p: float) -> PhiFunction:
    """phi(u) = u**p for p >= 1 (the L^p modular)."""
    if p < 1:
        raise ValueError("power exponent must satisfy p >= 1")
    p = float(p)

    def evaluate(u):
        return np.asarray(u, dtype=float) ** p

    return PhiFunction(f"power:{p:g}", evaluate, convex=True, delta2=True)


def zygmund_phi(alpha: float, beta: float) -> PhiFunction:
    """phi(u) = u**alpha * log(u + e)**beta for alpha >= 1, beta > 0."""
    if alpha < 1:
        raise ValueError("alpha must satisfy alpha >= 1")
    if beta <= 0:
        raise ValueError("beta must be positive")
    alpha, beta = float(alpha), float(beta)

    def evaluate(u):
        u = np.asarray(u, dtype=float)
        return u ** alpha * np.log(u + math.e) ** beta

    return PhiFunction(f"zygmund:{alpha:g},{beta:g}", evaluate,
                       convex=True, delta2=True)


def exponential_phi(gamma: float) -> PhiFunction:
    """phi(u) = exp(u**gamma) - 1 for gamma > 0.

    Fails the doubling condition for every gamma.  For gamma < 1 the
    function is not convex near zero; the flag records that and the
    convexity-dependent checks skip such instances.
    """
    if gamma <= 0:
        raise ValueError("gamma must be positive")
    gamma = float(gamma)

    def evaluate(u):
        u = np.asarray(u, dtype=float)
        with np.errstate(over="ignore"):
            return np.expm1(u ** gamma)

    return PhiFunction(f"exponential:{gamma:g}", evaluate,
                       convex=gamma >= 1.0, delta2=False)


def phi_by_name(name: str) -> PhiFunction:
    """Resolve a phi-function from its CLI string."""
    key = name.strip().lower()
    try:
        if key.startswith("power:"):
            return power_phi(float(key.split(":", 1)[1]))
        if key.startswith("zygmund:"):
            a, b = key.split(":", 1)[1].split(",")
            return zygmund_phi(float(a), float(b))
        if key.startswith("exponential:"):
            return exponential_phi(float(key.split(":", 1)[1]))
    except (ValueError, IndexError):
        raise UnknownNameError(f"malformed phi-function name: {name!r}") from None
    raise UnknownNameError(f"unknown phi-function: {name!r}")


# ---------------------------------------------------------------------------
# modular and Luxemburg norm

def _window_edges(f: Signal, window: tuple[float, float]) -> np.ndarray:
    a, b = float(window[0]), float(window[1])
    if not a < b:
        raise ValueError("window must be a nondegenerate interval")
    inner = [t for t in f.split_points() if a < t < b]
    return np.asarray([a, *inner, b])


def modular(phi: PhiFunction, f: Signal, window: tuple[float, float],
            tol: float = 1e-10, scale: float = 1.0) -> float:
    """Modular integral of phi(scale * |f|) over the window.

    Quadrature panels split at the signal's declared breakpoints and kinks.
    Returns ``math.inf`` when the integrand overflows (the signal is not in
    the modular space at this scaling).
    """

    def integrand(x):
        return phi.evaluate(scale * np.abs(f.evaluate(x)))

    return quadrature.adaptive(integrand, _window_edges(f, window), atol=tol)


def modular_from_samples(phi: PhiFunction, values: np.ndarray,
                         weights: np.ndarray) -> float:
    """Modular of a sampled non-negative function: sum(w * phi(values))."""
    vals = phi.evaluate(np.abs(values))
    if not np.all(np.isfinite(vals)):
        return math.inf
    out = float(np.dot(weights, vals))
    return out if abs(out) <= quadrature.OVERFLOW_GUARD else math.inf


def _luxemburg_bisect(modular_at, tol: float) -> float:
    """Shared bracket-and-bisect step: inf{lam > 0 : modular_at(lam) <= 1}.

    ``modular_at(lam)`` must be non-increasing in lam (monotonicity of the
    modular under down-scaling).  Starts from lam = 1, doubles or halves to
    bracket, then bisects until the bracket is narrower than tol * lam.
    """
    lam = 1.0
    if modular_at(lam) <= 1.0:
        hi = lam
        lo = 0.5 * lam
        while modular_at(lo) <= 1.0:
            hi = lo
            lo *= 0.5
            if lo < 1e-14:
                return 0.0  # identically-zero function
    else:
        lo = lam
        hi = 2.0 * lam
        while modular_at(hi) > 1.0:
            lo = hi
            hi *= 2.0
            if hi > _LAMBDA_CAP:
                raise MaxprodError(
                    "Luxemburg bracket exceeded 1e12; the function is not in "
                    "the modular space on this window")
    while hi - lo > tol * hi:
        mid = 0.5 * (lo + hi)
        if modular_at(mid) <= 1.0:
            hi = mid
        else:
            lo = mid
    return hi


def luxemburg_norm(phi: PhiFunction, f: Signal, window: tuple[float, float],
                   tol: float = 1e-9) -> float:
    """Luxemburg norm inf{lam > 0 : modular of f/lam <= 1} on the window."""
    edges = _window_edges(f, window)

    def modular_at(lam: float) -> float:
        def integrand(x):
            return phi.evaluate(np.abs(f.evaluate(x)) / lam)

        return quadrature.adaptive(integrand, edges, atol=1e-11)

    return _luxemburg_bisect(modular_at, tol)


def luxemburg_from_samples(phi: PhiFunction, values: np.ndarray,
                           weights: np.ndarray, tol: float = 1e-9) -> float:
    """Luxemburg norm of a sampled non-negative function."""
    values = np.abs(np.asarray(values, dtype=float))

    def modular_at(lam: float) -> float:
        return modular_from_samples(phi, values / lam, weights)

    return _luxemburg_bisect(modular_at, tol)


def maxphi_inequality_check(phi: PhiFunction, values) -> tuple[bool, bool]:
    """Check the max/convexity inequality on a finite set of values >= 0.

    Returns ``(phi(max A) <= max phi(2A), phi(max A) == max phi(A))``.  The
    equality is exact for finite sets because phi is non-decreasing; a
    1e-12 relative slack absorbs elementwise rounding.
    """
    a = np.asarray(values, dtype=float)
    if a.size == 0:
        raise ValueError("need at least one value")
    if np.any(a < 0):
        raise ValueError("values must be non-negative")
    lhs = float(phi.evaluate(np.array([a.max()]))[0])
    with np.errstate(over="ignore"):
        doubled = float(np.max(phi.evaluate(2.0 * a)))
        plain = float(np.max(phi.evaluate(a)))
    le = lhs <= doubled or math.isclose(lhs, doubled, rel_tol=1e-12)
    eq = lhs == plain or math.isclose(lhs, plain, rel_tol=1e-12)
    return le, eq
