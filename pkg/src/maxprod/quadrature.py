"""Composite Gauss-Legendre panels and a vectorized adaptive Simpson rule.

Integrands must accept numpy arrays.  Divergent integrals (overflowing
values or partial sums) are reported as ``math.inf``; failure to converge
within the subdivision budget raises :class:`QuadratureError` instead, so
the two conditions are never conflated.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import QuadratureError

OVERFLOW_GUARD = 1e100

_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def gauss_legendre(nodes: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the Gauss-Legendre rule on [-1, 1]."""
    if nodes not in _GL_CACHE:
        _GL_CACHE[nodes] = np.polynomial.legendre.leggauss(nodes)
    return _GL_CACHE[nodes]


def composite_nodes(edges, nodes: int = 16) -> tuple[np.ndarray, np.ndarray]:
    """Flattened nodes/weights of a panel-wise Gauss rule.

    ``edges`` are the sorted panel boundaries; each panel gets the same
    ``nodes``-point rule.  The returned weights integrate: sum(w * f(x)).
    """
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise ValueError("need at least two panel edges")
    xi, wi = gauss_legendre(nodes)
    a = edges[:-1]
    b = edges[1:]
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    x = (mid[:, None] + half[:, None] * xi[None, :]).ravel()
    w = (half[:, None] * wi[None, :]).ravel()
    return x, w


def composite_gauss(fn, edges, nodes: int = 16) -> float:
    """Fixed (non-adaptive) composite Gauss-Legendre integral."""
    x, w = composite_nodes(edges, nodes)
    return float(np.dot(w, fn(x)))


def _all_finite(*arrays) -> bool:
    return all(np.all(np.isfinite(a)) for a in arrays)


def adaptive(fn, edges, atol: float = 1e-10, rtol: float = 1e-12,
             max_rounds: int = 48) -> float:
    """Adaptive Simpson integration over the panels defined by ``edges``.

    Panels are subdivided until the local Richardson error estimate drops
    below its share of ``atol`` plus ``rtol`` times the local value.
    Returns ``math.inf`` as soon as a node value or a partial sum leaves
    the representable range (divergence guard).
    """
    edges = np.unique(np.asarray(edges, dtype=float))
    if edges.size < 2:
        return 0.0
    a = edges[:-1]
    b = edges[1:]
    keep = b > a
    a, b = a[keep], b[keep]
    if a.size == 0:
        return 0.0
    total_width = float(edges[-1] - edges[0])
    m = 0.5 * (a + b)
    fa, fm, fb = fn(a), fn(m), fn(b)
    if not _all_finite(fa, fm, fb):
        return math.inf
    s = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    result = 0.0
    for _ in range(max_rounds):
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm, frm = fn(lm), fn(rm)
        if not _all_finite(flm, frm):
            return math.inf
        sl = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        sr = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        s2 = sl + sr
        err = np.abs(s2 - s) / 15.0
        local_tol = atol * (b - a) / total_width + rtol * np.abs(s2)
        done = (err <= local_tol) | ((b - a) <= 1e-14 * max(1.0, total_width))
        if done.any():
            acc = s2[done] + (s2[done] - s[done]) / 15.0
            result += float(np.sum(acc))
            if not math.isfinite(result) or abs(result) > OVERFLOW_GUARD:
                return math.inf
        live = ~done
        if not live.any():
            return result
        a = np.concatenate([a[live], m[live]])
        b = np.concatenate([m[live], b[live]])
        fa = np.concatenate([fa[live], fm[live]])
        fb = np.concatenate([fm[live], fb[live]])
        fm = np.concatenate([flm[live], frm[live]])
        s = np.concatenate([sl[live], sr[live]])
        m = 0.5 * (a + b)
    raise QuadratureError(
        f"adaptive Simpson did not converge within {max_rounds} rounds "
        f"({a.size} panels still active)")
