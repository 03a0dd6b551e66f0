"""Zero counting, localization and the deep-zero pipeline.

Counting is by phase unwrapping along the contour: the phase is sampled on an
adaptively refined node set until no step between neighbouring nodes exceeds
``pi/3``, then the refined total is confirmed once more after a global
midpoint insertion.  No derivative of ``f`` is needed on the contour.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import (
    ContourTooCloseError,
    DomainError,
    HardyFactorError,
    LinearDependenceError,
    NoDeepZeroError,
    ZeroBudgetError,
)
from .poly import EXACT, Polynomial, poly_roots
from .structured import StructuredFunction, structured_combine
from .wronskian import (
    CoefficientVector,
    DEFAULT_TOL_RANK,
    derivative_values,
    independence_check,
    nullspace_coefficients,
    wronskian_exact,
    wronskian_matrix_at,
    wronskian_structured,
)

log = logging.getLogger(__name__)

TOL_DERIV = 1e-7
DEFAULT_DEEP_RADIUS = 0.995
_MAX_STEP = math.pi / 3
_MIN_SEGMENT = 3e-10
_MAX_NODES = 1 << 22
_RADIUS_NUDGES = (-1e-6, 1e-6, -1e-5, 1e-5, -1e-4)


@dataclass(frozen=True)
class ZeroRecord:
    location: complex
    multiplicity: int
    residual: float
    method: str  # exact-root | argument-principle | newton-polish

    def to_json(self) -> dict:
        return {
            "location": [self.location.real, self.location.imag],
            "multiplicity": self.multiplicity,
            "residual": self.residual,
            "method": self.method,
        }


@dataclass(frozen=True)
class DeepZeroCertificate:
    point: complex
    order: int
    witness: CoefficientVector
    wronskian_value: complex
    matrix_gap: float
    multiplicity: int
    derivative_magnitudes: tuple

    def to_json(self) -> dict:
        return {
            "point": [self.point.real, self.point.imag],
            "order": self.order,
            "witness": self.witness.to_json(),
            "wronskian_value": [self.wronskian_value.real, self.wronskian_value.imag],
            "matrix_gap": self.matrix_gap,
            "multiplicity": self.multiplicity,
            "derivative_magnitudes": list(self.derivative_magnitudes),
        }


def sort_key(z: complex):
    a = math.atan2(z.imag, z.real)
    a = a if a >= 0 else a + 2 * math.pi
    return (round(abs(z), 13), 0.0 if a > 2 * math.pi - 1e-12 else a)


# ----------------------------------------------------------------------------
# contours


def _phase_source(f) -> tuple[Callable, Callable | None]:
    """Return ``(values, rate)``: a function winding like ``f`` and a bound on ``|f'/f|`` (or None)."""
    if isinstance(f, Polynomial):
        p = f.to_float()
        dp = p.derivative()

        def prate(z):
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.abs(dp(z)) / np.abs(p(z))

        return p, prate
    if isinstance(f, StructuredFunction):
        df = f.derivative().collect()

        def rate(z):
            with np.errstate(over="ignore", invalid="ignore"):
                return np.exp(df.log_abs(z) - f.log_abs(z))

        return f.winding_residual, rate
    if hasattr(f, "winding_residual"):
        return f.winding_residual, None
    return (lambda z: np.asarray(f(z), dtype=complex)), None


def _winding(source, path: Callable, s0: float, s1: float, n0: int = 256) -> tuple[int, int]:
    """Winding number of ``values(path(s))`` for ``s`` running over ``[s0, s1]``.

    An interval is refined while the observed phase step exceeds ``pi/3`` or,
    when a rate bound is available, while ``|f'/f| * |dz|`` does.  The latter
    prevents steps of a whole turn from aliasing to zero.
    """
    values, rate = source
    s = np.linspace(s0, s1, n0 + 1)
    z = path(s)
    v = values(z)
    q = rate(z) if rate is not None else None
    confirmed = None
    while True:
        if not np.all(np.isfinite(v)) or np.any(v == 0):
            raise ContourTooCloseError("function vanishes (or is not finite) on the contour")
        d = np.angle(v[1:] / v[:-1])
        dz = np.abs(z[1:] - z[:-1])
        bad = np.abs(d) > _MAX_STEP
        if q is not None:
            with np.errstate(invalid="ignore"):
                qq = np.where(np.isfinite(q), q, np.inf)
                bad |= np.maximum(qq[1:], qq[:-1]) * dz > _MAX_STEP
        if bad.any():
            idx = np.nonzero(bad)[0]
            if np.min(dz[idx]) < _MIN_SEGMENT:
                raise ContourTooCloseError("a zero lies within ~1e-9 of the contour")
            if len(s) + len(idx) > _MAX_NODES:
                raise ContourTooCloseError("node budget exhausted while resolving the contour phase")
            confirmed = None
        else:
            k = int(round(float(np.sum(d)) / (2 * np.pi)))
            if confirmed is not None and confirmed == k:
                return k, len(s)
            confirmed = k
            idx = np.arange(len(s) - 1)
            if len(s) + len(idx) > _MAX_NODES:
                return k, len(s)
        mids = 0.5 * (s[idx] + s[idx + 1])
        zm = path(mids)
        s = np.insert(s, idx + 1, mids)
        z = np.insert(z, idx + 1, zm)
        v = np.insert(v, idx + 1, values(zm))
        if q is not None:
            q = np.insert(q, idx + 1, rate(zm))


@dataclass(frozen=True)
class ContourCount:
    count: int
    radius: float
    nodes: int


def contour_count(f, center: complex = 0.0, radius: float = 0.5) -> ContourCount:
    """Argument-principle count on a circle, nudging the radius if a zero is too close."""
    center = complex(center)
    if not abs(center) + radius < 1:
        raise DomainError("counting circle must lie inside the open unit disk")
    source = _phase_source(f)
    last = None
    for nudge in (0.0,) + _RADIUS_NUDGES:
        r = radius * (1 + nudge)
        if not abs(center) + r < 1:
            continue
        path = lambda s, r=r: center + r * np.exp(2j * np.pi * s)
        try:
            k, nodes = _winding(source, path, 0.0, 1.0)
            return ContourCount(k, r, nodes)
        except ContourTooCloseError as exc:
            last = exc
            log.debug("radius %.12g rejected: %s", r, exc)
    raise ContourTooCloseError(f"contour too close to a zero after {len(_RADIUS_NUDGES)} radius adjustments: {last}")


def count_zeros(f, center: complex = 0.0, radius: float = 0.5) -> int:
    return contour_count(f, center, radius).count


# ----------------------------------------------------------------------------
# localization by polar quadrisection


@dataclass(frozen=True)
class _Disk:
    radius: float

    def path(self, s):
        return self.radius * np.exp(2j * np.pi * s)

    span = (0.0, 1.0)

    @property
    def diameter(self):
        return 2 * self.radius

    @property
    def centre(self):
        return 0j

    def contains(self, z, slack=0.0):
        return abs(z) <= self.radius + slack

    def split(self, jitter: float):
        r0 = self.radius * (0.5 + jitter)
        t0 = 0.1 + jitter
        q = np.pi / 2
        return [_Disk(r0)] + [_Sector(r0, self.radius, t0 + k * q, t0 + (k + 1) * q) for k in range(4)]


@dataclass(frozen=True)
class _Sector:
    r1: float
    r2: float
    t1: float
    t2: float

    span = (0.0, 4.0)

    def path(self, s):
        s = np.asarray(s, dtype=float)
        out = np.empty(s.shape, dtype=complex)
        a = s < 1
        b = (s >= 1) & (s < 2)
        c = (s >= 2) & (s < 3)
        d = s >= 3
        # outer arc t1 -> t2, ray inwards at t2, inner arc t2 -> t1, ray outwards at t1
        out[a] = self.r2 * np.exp(1j * (self.t1 + (self.t2 - self.t1) * s[a]))
        out[b] = (self.r2 + (self.r1 - self.r2) * (s[b] - 1)) * np.exp(1j * self.t2)
        out[c] = self.r1 * np.exp(1j * (self.t2 + (self.t1 - self.t2) * (s[c] - 2)))
        out[d] = (self.r1 + (self.r2 - self.r1) * (s[d] - 3)) * np.exp(1j * self.t1)
        return out

    @property
    def diameter(self):
        return max(self.r2 - self.r1, self.r2 * (self.t2 - self.t1))

    @property
    def centre(self):
        return 0.5 * (self.r1 + self.r2) * np.exp(0.5j * (self.t1 + self.t2))

    def contains(self, z, slack=0.0):
        r = abs(z)
        if r < self.r1 - slack or r > self.r2 + slack:
            return False
        t = (math.atan2(z.imag, z.real) - self.t1) % (2 * np.pi)
        return t <= self.t2 - self.t1 + slack / max(r, 1e-300)

    def split(self, jitter: float):
        rm = self.r1 + (self.r2 - self.r1) * (0.5 + jitter)
        tm = self.t1 + (self.t2 - self.t1) * (0.5 + jitter)
        return [
            _Sector(self.r1, rm, self.t1, tm),
            _Sector(self.r1, rm, tm, self.t2),
            _Sector(rm, self.r2, self.t1, tm),
            _Sector(rm, self.r2, tm, self.t2),
        ]


def _region_count(source, region) -> int:
    return _winding(source, region.path, *region.span, n0=64 if isinstance(region, _Sector) else 256)[0]


def _derivative_of(f):
    if hasattr(f, "derivative"):
        df = f.derivative()
        if isinstance(df, StructuredFunction):
            df = df.collect()
        if isinstance(df, Polynomial):
            df = df.to_float()
        return df
    if hasattr(f, "derivative_at"):
        return f.derivative_at
    h = 1e-6
    return lambda z: (f(z + h) - f(z - h)) / (2 * h)


def _ratio(f, df, z: complex) -> complex:
    """``f(z) / f'(z)``, through complex logarithms when either side may underflow."""
    if hasattr(f, "log_value") and hasattr(df, "log_value"):
        lf, ldf = f.log_value(z), df.log_value(z)
        if not np.isfinite(lf.real):
            return 0j
        if not np.isfinite(ldf.real):
            raise ZeroDivisionError
        return complex(np.exp(lf - ldf))
    vf = complex(f(z))
    vd = complex(df(z))
    if vd == 0:
        raise ZeroDivisionError
    return vf / vd


def _newton(f, df, z0: complex, steps: int = 60) -> tuple[complex, bool]:
    z = complex(z0)
    for _ in range(steps):
        try:
            step = _ratio(f, df, z)
        except (ZeroDivisionError, HardyFactorError, FloatingPointError):
            return z, False
        if not np.isfinite(step):
            return z, False
        z_new = z - step
        if abs(z_new) >= 1:
            return z, False
        if abs(step) <= 1e-15 * max(1.0, abs(z)):
            return z_new, True
        z = z_new
    return z, abs(step) <= 1e-10


def _residual(f, z: complex) -> float:
    if isinstance(f, Polynomial):
        return float(abs(f.to_float()(z)))
    return float(abs(complex(f(z))))


def locate_zeros(f, radius: float = DEFAULT_DEEP_RADIUS, max_zeros: int = 64, leaf_size: float = 1e-7) -> list[ZeroRecord]:
    """Zeros in ``|z| < radius`` by polar quadrisection with Newton polish at the leaves.

    The multiplicity-weighted total always equals the argument-principle count
    on the bounding circle; zeros closer together than ``leaf_size`` are
    reported as one record carrying their joint multiplicity.
    """
    source = _phase_source(f)
    top = contour_count(f, 0.0, radius)
    if top.count > max_zeros:
        raise ZeroBudgetError(f"{top.count} zeros inside radius {top.radius}, budget {max_zeros}")
    chain = [f, _derivative_of(f)]
    records: list[ZeroRecord] = []
    stack = [(_Disk(top.radius), top.count)]
    while stack:
        region, k = stack.pop()
        if k <= 0:
            continue
        small = region.diameter < leaf_size
        if k == 1 or small:
            # a k-fold zero is a simple zero of the (k-1)-th derivative
            while len(chain) < k + 1:
                chain.append(_derivative_of(chain[-1]))
            z, ok = _newton(chain[k - 1], chain[k], region.centre)
            if ok and region.contains(z, slack=1e-12):
                records.append(ZeroRecord(z, k, _residual(f, z), "newton-polish"))
                continue
            if small:
                c = complex(region.centre)
                records.append(ZeroRecord(c, k, _residual(f, c), "argument-principle"))
                continue
        for jitter in (0.0, -0.05, 0.05, -0.1, 0.1, 0.03):
            try:
                children = region.split(jitter)
                counts = [_region_count(source, ch) for ch in children]
            except ContourTooCloseError:
                continue
            if sum(counts) == k:
                stack.extend((ch, c) for ch, c in zip(children, counts) if c > 0)
                break
        else:
            c = complex(region.centre)
            log.warning("could not subdivide a region holding %d zeros; reporting its centre", k)
            records.append(ZeroRecord(c, k, _residual(f, c), "argument-principle"))
    records.sort(key=lambda r: sort_key(r.location))
    return records


def zero_inventory(f, radius: float = DEFAULT_DEEP_RADIUS, max_zeros: int = 64) -> list[ZeroRecord]:
    """Zeros in ``|z| < radius``; uses the rational part directly when that is exact."""
    if isinstance(f, Polynomial):
        recs = [ZeroRecord(r.location, r.multiplicity, r.residual, "exact-root") for r in poly_roots(f)] if f.degree else []
        return [r for r in recs if abs(r.location) < radius]
    if isinstance(f, StructuredFunction):
        term = f.single_measure_term()
        if term is not None:
            # singular inner factors are zero-free: zeros come from the rational part
            recs = []
            if term.core.degree:
                for r in poly_roots(term.core):
                    if abs(r.location) < radius:
                        recs.append(ZeroRecord(r.location, r.multiplicity, _residual(f, r.location), "exact-root"))
            for p, e in term.powers:
                if e > 0 and abs(p) < radius:
                    recs.append(ZeroRecord(p, e, _residual(f, p), "exact-root"))
            recs.sort(key=lambda r: sort_key(r.location))
            if sum(r.multiplicity for r in recs) > max_zeros:
                raise ZeroBudgetError(f"more than {max_zeros} zeros inside radius {radius}")
            return recs
    return locate_zeros(f, radius, max_zeros)


def blaschke_sum(records: Sequence[ZeroRecord]) -> float:
    return float(sum(r.multiplicity * (1 - abs(r.location)) for r in records))


# ----------------------------------------------------------------------------
# multiplicities and deep zeros


def derivative_magnitudes(f, z0: complex, max_order: int) -> list[float]:
    return [abs(v) for v in derivative_values(f, z0, max_order)]


def multiplicity_at(f, z0: complex, max_order: int, tol_deriv: float = TOL_DERIV) -> int:
    """Smallest ``k`` with ``|f^{(k)}(z0)| > tol_deriv * max_j |f^{(j)}(z0)|``.

    Returns ``max_order + 1`` when every derivative up to ``max_order`` is
    below the threshold (saturated).
    """
    mags = derivative_magnitudes(f, z0, max_order)
    scale = max(mags)
    if scale == 0:
        return max_order + 1
    for k, m in enumerate(mags):
        if m > tol_deriv * scale:
            return k
    return max_order + 1


def _combine(fs, lam: CoefficientVector):
    if all(isinstance(f, Polynomial) for f in fs):
        g = Polynomial.zero()
        for f, c in zip(fs, lam):
            g = g + f.to_float().scale(c)
        return g
    return structured_combine(fs, lam.lambdas)


def deep_zero_set(
    fs: Sequence,
    radius: float = DEFAULT_DEEP_RADIUS,
    tol_rank: float = DEFAULT_TOL_RANK,
    tol_deriv: float = TOL_DERIV,
    max_zeros: int = 64,
) -> list[DeepZeroCertificate]:
    """Certified points where some nontrivial combination has a zero of order > n.

    The candidates are the zeros of the Wronskian in ``|z| <= radius``; each
    one is certified by a kernel vector of the Wronskian matrix whose
    combination is checked to vanish to order ``n + 1``.
    """
    fs = list(fs)
    n = len(fs) - 1
    verdict = independence_check(fs)
    if not verdict.independent:
        raise LinearDependenceError("inputs are linearly dependent: their Wronskian vanishes identically")
    if all(isinstance(f, Polynomial) for f in fs):
        kinds = {f.kind for f in fs}
        W = wronskian_exact(fs if len(kinds) == 1 else [f.to_float() for f in fs])
        candidates = [r.location for r in poly_roots(W) if abs(r.location) <= radius] if W.degree else []
        w_eval = W.to_float() if W.kind == EXACT else W
    else:
        W = wronskian_structured(fs)
        candidates = [r.location for r in zero_inventory(W, radius, max_zeros)]
        w_eval = W
    max_order = max(2 * (n + 1), n + 2)
    certs = []
    for z in candidates:
        m = wronskian_matrix_at(fs, z, n)
        try:
            lam = nullspace_coefficients(m, tol_rank)
        except NoDeepZeroError as exc:
            log.warning("Wronskian zero %s not certified: %s", z, exc)
            continue
        g = _combine(fs, lam)
        mags = derivative_magnitudes(g, z, max_order)
        mult = multiplicity_at(g, z, max_order, tol_deriv)
        if mult < n + 1:
            log.warning("witness at %s only vanishes to order %d", z, mult)
            continue
        certs.append(
            DeepZeroCertificate(
                point=complex(z),
                order=n,
                witness=lam,
                wronskian_value=complex(w_eval(complex(z))),
                matrix_gap=lam.gap,
                multiplicity=mult,
                derivative_magnitudes=tuple(mags),
            )
        )
    certs.sort(key=lambda c: sort_key(c.point))
    return certs
