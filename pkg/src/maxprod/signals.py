"""Test signals, CSV ingestion and Kantorovich cell-mean tables.

A :class:`Signal` is a vectorized evaluator plus the metadata the operators
need: domain (a bounded interval or the whole line), compact support, jump
locations (``breakpoints``) and slope breaks (``kinks``, used only to split
quadrature panels).  :class:`PiecewisePoly` provides exact polynomial
arithmetic (sums, differences, absolute values) so operator identities can
be tested without quadrature slack.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from . import quadrature
from .errors import EmptyIndexSetError, TruncationError, UnknownNameError

Domain = tuple[float, float] | None  # None means the whole real line


@dataclass(frozen=True)
class Signal:
    name: str
    evaluate: Callable[[np.ndarray], np.ndarray]
    domain: Domain
    support: tuple[float, float] | None = None
    breakpoints: tuple[float, ...] = ()
    kinks: tuple[float, ...] = ()
    nonneg: bool = True
    inf_value: float | None = None

    def __post_init__(self):
        for pts in (self.breakpoints, self.kinks):
            if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
                raise ValueError("breakpoints/kinks must be strictly increasing")
        if self.domain is not None:
            a, b = self.domain
            if not a < b:
                raise ValueError("domain must be a nondegenerate interval")
            if any(t <= a or t >= b for t in self.breakpoints):
                raise ValueError("breakpoints must lie inside the domain")

    @property
    def is_line(self) -> bool:
        return self.domain is None

    def split_points(self) -> tuple[float, ...]:
        """All locations where quadrature panels should be split."""
        return tuple(sorted(set(self.breakpoints) | set(self.kinks)))


# ---------------------------------------------------------------------------
# exact piecewise polynomials

def _real_roots(coeffs: np.ndarray, lo: float, hi: float) -> list[float]:
    """Real roots of the polynomial strictly inside (lo, hi)."""
    c = np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        return []
    idx = 0
    while idx < c.size - 1 and abs(c[idx]) <= 1e-14 * scale:
        idx += 1
    c = c[idx:]
    if c.size <= 1:
        return []
    span = hi - lo
    out = []
    for r in np.roots(c):
        if abs(r.imag) > 1e-9 * (1.0 + abs(r.real)):
            continue
        x = float(r.real)
        if lo + 1e-12 * span < x < hi - 1e-12 * span:
            out.append(x)
    out.sort()
    dedup: list[float] = []
    for x in out:
        if not dedup or x - dedup[-1] > 1e-12 * span:
            dedup.append(x)
    return dedup


class PiecewisePoly:
    """Polynomial pieces on [edges[i], edges[i+1]), right-continuous.

    Coefficients follow the ``np.polyval`` convention (highest power first)
    and are expressed in the global coordinate.
    """

    def __init__(self, edges: Sequence[float], coeffs: Sequence[Sequence[float]]):
        self.edges = np.asarray(edges, dtype=float)
        if self.edges.ndim != 1 or self.edges.size < 2:
            raise ValueError("need at least two edges")
        if np.any(np.diff(self.edges) <= 0):
            raise ValueError("edges must be strictly increasing")
        if len(coeffs) != self.edges.size - 1:
            raise ValueError("one coefficient row per piece required")
        self.coeffs = [np.atleast_1d(np.asarray(c, dtype=float)) for c in coeffs]

    @classmethod
    def constant(cls, value: float, domain: tuple[float, float] = (0.0, 1.0)):
        return cls(domain, [[float(value)]])

    @property
    def domain(self) -> tuple[float, float]:
        return float(self.edges[0]), float(self.edges[-1])

    def evaluate(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self.edges, x, side="right") - 1
        idx = np.clip(idx, 0, len(self.coeffs) - 1)
        out = np.empty_like(x, dtype=float)
        for i, c in enumerate(self.coeffs):
            mask = idx == i
            if mask.any():
                out[mask] = np.polyval(c, x[mask])
        return out

    def _aligned(self, other: "PiecewisePoly"):
        if self.domain != other.domain:
            raise ValueError("domain mismatch")
        edges = np.union1d(self.edges, other.edges)
        mids = 0.5 * (edges[:-1] + edges[1:])
        ia = np.clip(np.searchsorted(self.edges, mids, side="right") - 1,
                     0, len(self.coeffs) - 1)
        ib = np.clip(np.searchsorted(other.edges, mids, side="right") - 1,
                     0, len(other.coeffs) - 1)
        return edges, ia, ib

    @staticmethod
    def _pad(a: np.ndarray, n: int) -> np.ndarray:
        return np.concatenate([np.zeros(n - a.size), a]) if a.size < n else a

    def _combine(self, other: "PiecewisePoly", sign: float) -> "PiecewisePoly":
        edges, ia, ib = self._aligned(other)
        coeffs = []
        for i, j in zip(ia, ib):
            ca, cb = self.coeffs[i], other.coeffs[j]
            n = max(ca.size, cb.size)
            coeffs.append(self._pad(ca, n) + sign * self._pad(cb, n))
        return PiecewisePoly(edges, coeffs)

    def __add__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return self._combine(other, 1.0)

    def __sub__(self, other: "PiecewisePoly") -> "PiecewisePoly":
        return self._combine(other, -1.0)

    def scaled(self, factor: float) -> "PiecewisePoly":
        return PiecewisePoly(self.edges, [c * factor for c in self.coeffs])

    def shifted(self, offset: float) -> "PiecewisePoly":
        coeffs = []
        for c in self.coeffs:
            c = c.copy()
            c[-1] += offset
            coeffs.append(c)
        return PiecewisePoly(self.edges, coeffs)

    def absolute(self) -> "PiecewisePoly":
        """|p|, with sign-change locations promoted to exact edges."""
        edges: list[float] = [float(self.edges[0])]
        coeffs: list[np.ndarray] = []
        for i, c in enumerate(self.coeffs):
            lo, hi = float(self.edges[i]), float(self.edges[i + 1])
            cuts = [lo] + _real_roots(c, lo, hi) + [hi]
            for a, b in zip(cuts[:-1], cuts[1:]):
                mid = 0.5 * (a + b)
                piece = -c if np.polyval(c, mid) < 0.0 else c
                edges.append(b)
                coeffs.append(piece)
        return PiecewisePoly(edges, coeffs)

    def _extrema(self, minimum: bool) -> float:
        best = None
        for i, c in enumerate(self.coeffs):
            lo, hi = float(self.edges[i]), float(self.edges[i + 1])
            xs = [lo, hi]
            if c.size > 1:
                xs += _real_roots(np.polyder(c), lo, hi)
            vals = [float(np.polyval(c, x)) for x in xs]
            v = min(vals) if minimum else max(vals)
            best = v if best is None else (min(best, v) if minimum else max(best, v))
        return best

    def minimum(self) -> float:
        return self._extrema(True)

    def maximum(self) -> float:
        return self._extrema(False)

    def integral(self, a: float, b: float) -> float:
        """Exact integral over [a, b] via antiderivatives (oracle use)."""
        a = max(a, float(self.edges[0]))
        b = min(b, float(self.edges[-1]))
        if b <= a:
            return 0.0
        total = 0.0
        for i, c in enumerate(self.coeffs):
            lo = max(a, float(self.edges[i]))
            hi = min(b, float(self.edges[i + 1]))
            if hi <= lo:
                continue
            anti = np.polyint(c)
            total += float(np.polyval(anti, hi) - np.polyval(anti, lo))
        return total

    def to_signal(self, name: str = "piecewise-poly",
                  nonneg: bool | None = None) -> Signal:
        """Wrap as a Signal; interior edges become jumps or kinks."""
        jumps, kinks = [], []
        for i in range(1, self.edges.size - 1):
            t = float(self.edges[i])
            left = float(np.polyval(self.coeffs[i - 1], t))
            right = float(np.polyval(self.coeffs[i], t))
            scale = max(1.0, abs(left), abs(right))
            (jumps if abs(left - right) > 1e-12 * scale else kinks).append(t)
        if nonneg is None:
            nonneg = self.minimum() >= -1e-12
        return Signal(name=name, evaluate=self.evaluate, domain=self.domain,
                      breakpoints=tuple(jumps), kinks=tuple(kinks),
                      nonneg=nonneg, inf_value=self.minimum())


def random_piecewise_poly(rng: np.random.Generator,
                          domain: tuple[float, float] = (0.0, 1.0),
                          max_breakpoints: int = 3, max_degree: int = 3,
                          amplitude: float = 2.0) -> PiecewisePoly:
    """Seeded non-negative piecewise polynomial (property-test fixture)."""
    lo, hi = domain
    span = hi - lo
    nb = int(rng.integers(0, max_breakpoints + 1))
    while True:
        cuts = np.sort(rng.uniform(lo + 0.05 * span, hi - 0.05 * span, size=nb))
        if nb < 2 or np.min(np.diff(cuts)) > 0.03 * span:
            break
    edges = np.concatenate([[lo], cuts, [hi]])
    coeffs = []
    for _ in range(edges.size - 1):
        deg = int(rng.integers(0, max_degree + 1))
        coeffs.append(rng.normal(0.0, 1.0, size=deg + 1))
    poly = PiecewisePoly(edges, coeffs)
    lifted = []
    for i, c in enumerate(poly.coeffs):
        piece = PiecewisePoly(poly.edges[i:i + 2], [c])
        c = c.copy()
        c[-1] += float(rng.uniform(0.0, 0.5)) - piece.minimum()
        lifted.append(c)
    poly = PiecewisePoly(poly.edges, lifted)
    peak = poly.maximum()
    if peak > amplitude:
        poly = poly.scaled(amplitude / peak)
    return poly


# ---------------------------------------------------------------------------
# catalog and CSV ingestion

def catalog(name: str) -> Signal:
    """Named test signals.

    ``constant:<c>``, ``ramp``, ``step``, ``sawtooth`` and ``abs-sine`` live
    on [0, 1]; ``hat`` and ``square-pulse`` are compactly supported signals
    on the real line.
    """
    key = name.strip().lower()
    if key.startswith("constant:"):
        try:
            c = float(key.split(":", 1)[1])
        except ValueError:
            raise UnknownNameError(f"malformed constant signal: {name!r}") from None
        sig = PiecewisePoly.constant(c).to_signal(name=key)
        return sig
    if key == "ramp":
        return PiecewisePoly((0.0, 1.0), [(1.0, 0.0)]).to_signal(name="ramp")
    if key == "step":
        return PiecewisePoly((0.0, 0.5, 1.0), [(0.0,), (1.0,)]).to_signal(name="step")
    if key == "sawtooth":
        poly = PiecewisePoly((0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0),
                             [(3.0, 0.0), (3.0, -1.0), (3.0, -2.0)])
        return poly.to_signal(name="sawtooth")
    if key == "abs-sine":
        def evaluate(x):
            return np.abs(np.sin(2.0 * math.pi * np.asarray(x, dtype=float)))

        return Signal(name="abs-sine", evaluate=evaluate, domain=(0.0, 1.0),
                      kinks=(0.5,), nonneg=True, inf_value=0.0)
    if key == "hat":
        def evaluate(x):
            return np.clip(1.0 - np.abs(np.asarray(x, dtype=float)), 0.0, None)

        return Signal(name="hat", evaluate=evaluate, domain=None,
                      support=(-1.0, 1.0), kinks=(-1.0, 0.0, 1.0),
                      nonneg=True, inf_value=0.0)
    if key == "square-pulse":
        def evaluate(x):
            x = np.asarray(x, dtype=float)
            return np.where(np.abs(x) <= 0.5, 1.0, 0.0)

        return Signal(name="square-pulse", evaluate=evaluate, domain=None,
                      support=(-0.5, 0.5), breakpoints=(-0.5, 0.5),
                      nonneg=True, inf_value=0.0)
    raise UnknownNameError(f"unknown signal: {name!r}")


def from_csv(path, domain: tuple[float, float], nonneg: bool = False) -> Signal:
    """Piecewise-linear signal from a two-column (t, value) CSV file.

    The header row is optional; t must be strictly increasing.  When
    ``nonneg`` is set, negative samples are clamped to zero (a warning
    reports how many).
    """
    path = Path(path)
    ts: list[float] = []
    vs: list[float] = []
    with open(path, newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(not cell.strip() for cell in row):
                continue
            if len(row) < 2:
                raise ValueError(f"{path}:{lineno}: expected two columns")
            try:
                t, v = float(row[0]), float(row[1])
            except ValueError:
                if lineno == 1 and not ts:
                    continue  # header
                raise ValueError(f"{path}:{lineno}: malformed row {row!r}") from None
            ts.append(t)
            vs.append(v)
    if not ts:
        raise ValueError(f"{path}: no data rows")
    t_arr = np.asarray(ts)
    v_arr = np.asarray(vs)
    if np.any(np.diff(t_arr) <= 0):
        raise ValueError(f"{path}: sample times must be strictly increasing")
    if nonneg:
        clipped = int(np.sum(v_arr < 0))
        if clipped:
            warnings.warn(f"{path.name}: clamped {clipped} negative values to 0")
            v_arr = np.clip(v_arr, 0.0, None)

    def evaluate(x):
        return np.interp(np.asarray(x, dtype=float), t_arr, v_arr)

    a, b = float(domain[0]), float(domain[1])
    interior = tuple(float(t) for t in t_arr if a < t < b)
    return Signal(name=path.stem, evaluate=evaluate, domain=(a, b),
                  kinks=interior, nonneg=nonneg or bool(np.all(v_arr >= 0)),
                  inf_value=float(v_arr.min()))


# ---------------------------------------------------------------------------
# cell means

@dataclass(frozen=True)
class MeanValueTable:
    """Per-cell Kantorovich means scale * integral over [k/scale, (k+1)/scale]."""

    n: int
    k_lo: int
    k_hi: int
    values: np.ndarray
    domain_kind: str

    def value(self, k: int) -> float:
        if self.k_lo <= k <= self.k_hi:
            return float(self.values[k - self.k_lo])
        if self.domain_kind == "line":
            return 0.0
        raise IndexError(f"index {k} outside the lattice range")


def _snap_int(x: float) -> float:
    r = round(x)
    return float(r) if abs(x - r) < 1e-9 else x


def iceil(x: float) -> int:
    return int(math.ceil(_snap_int(x)))


def ifloor(x: float) -> int:
    return int(math.floor(_snap_int(x)))


def cell_means(f: Signal, scale: float, k_lo: int, k_hi: int,
               nodes: int = 16) -> np.ndarray:
    """Gauss-Legendre cell means for k in [k_lo, k_hi].

    Cells containing declared breakpoints or kinks are split there, so the
    rule is exact for piecewise polynomials up to degree 2*nodes - 1.
    """
    ks = np.arange(k_lo, k_hi + 1)
    lo = ks / scale
    hi = (ks + 1) / scale
    splits = f.split_points()
    values = np.empty(ks.size, dtype=float)
    plain = []
    for i, k in enumerate(ks):
        inner = [t for t in splits if lo[i] < t < hi[i]]
        if inner:
            x, w = quadrature.composite_nodes([lo[i], *inner, hi[i]], nodes)
            values[i] = scale * float(np.dot(w, f.evaluate(x)))
        else:
            plain.append(i)
    if plain:
        idx = np.asarray(plain)
        xi, wi = quadrature.gauss_legendre(nodes)
        mid = 0.5 * (lo[idx] + hi[idx])
        half = 0.5 * (hi[idx] - lo[idx])
        x = mid[:, None] + half[:, None] * xi[None, :]
        fx = f.evaluate(x.ravel()).reshape(x.shape)
        values[idx] = scale * np.sum(fx * (half[:, None] * wi[None, :]), axis=1)
    return values


def mean_values(f: Signal, n: int, domain_kind: str | None = None,
                nodes: int = 16,
                interval: tuple[float, float] | None = None) -> MeanValueTable:
    """Kantorovich mean table for scale ``n``.

    On a bounded domain [a, b] the lattice index runs over
    ceil(n a) <= k <= floor(n b) - 1 (an empty range is an error: the caller
    must pick a scale that fits the interval).  ``interval`` overrides the
    signal's own domain, for operators evaluated on a sub-interval.  On the
    real line the signal must have compact support; cells away from the
    support have mean zero and are represented implicitly.
    """
    if int(n) != n or n < 1:
        raise ValueError("scale n must be a positive integer")
    n = int(n)
    if domain_kind is None:
        kind = "line" if (f.is_line and interval is None) else "interval"
    else:
        from .kernels import normalize_domain_kind
        kind = normalize_domain_kind(domain_kind)
    if kind == "interval":
        bounds = interval if interval is not None else f.domain
        if bounds is None:
            raise ValueError("bounded-domain table requested for a line signal")
        a, b = bounds
        k_lo = iceil(n * a)
        k_hi = ifloor(n * b) - 1
        if k_lo > k_hi:
            raise EmptyIndexSetError(
                f"no lattice cells for n={n} on [{a}, {b}]")
    else:
        if f.support is None:
            raise TruncationError(
                "real-line mean table requires a compactly supported signal")
        s_lo, s_hi = f.support
        k_lo = ifloor(n * s_lo) - 1
        k_hi = iceil(n * s_hi)
    values = cell_means(f, float(n), k_lo, k_hi, nodes=nodes)
    return MeanValueTable(n=n, k_lo=k_lo, k_hi=k_hi, values=values,
                          domain_kind=kind)
