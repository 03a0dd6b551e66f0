"""Boundary-limit functionals of the canonical factorization.

Everything here is numerical: circle means of ``log|f|``, the Jensen deficit
(total inner mass seen from the boundary), radial atom masses, an outerness
test, singular-factor comparison, and a heuristic Hardy-Sobolev check.
Limits ``r -> 1`` are taken by Richardson extrapolation in ``h = 1 - r``.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    ContourTooCloseError,
    DomainError,
    HardyFactorError,
    InconsistentZeroInventoryError,
    QuadratureError,
    RadialZeroError,
)
from .poly import Polynomial
from .structured import (
    POINT_TOL,
    AtomicSingularMeasure,
    FrostmanShift,
    StructuredFunction,
    _split_boundary_roots,
    as_structured,
    structured_combine,
)
from .wronskian import derivative_values, independence_check, wronskian_structured
from .zeros import ZeroRecord, contour_count, zero_inventory

log = logging.getLogger(__name__)

DEFAULT_RADII = tuple(1 - 2.0**-k for k in range(4, 15))
TOL_OUTER = 1e-4
TOL_TAYLOR = 1e-10
TOL_TRAPEZOID = 1e-9
MAX_TRAPEZOID_NODES = 1 << 20
INVENTORY_RADIUS = 0.999
_RICHARDSON_WINDOW = 5

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1]
_XK = np.array([
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
])
_WK = np.array([
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
])
_WG = np.array([
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
])
_NODES = np.concatenate([-_XK[:-1], _XK[::-1]])
_KW = np.concatenate([_WK[:-1], _WK[::-1]])
_GW = np.zeros(15)
_GW[[1, 3, 5, 7, 9, 11, 13]] = np.concatenate([_WG[:-1], _WG[::-1]])


def worker_count() -> int:
    """Worker cap from ``HARDYFACTOR_THREADS`` (0 or unset means automatic)."""
    raw = os.environ.get("HARDYFACTOR_THREADS", "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else min(8, os.cpu_count() or 1)


# ----------------------------------------------------------------------------
# evaluation helpers


def _log_abs(f, z):
    zz = np.asarray(z, dtype=complex)
    if hasattr(f, "log_abs"):
        return f.log_abs(zz)
    if isinstance(f, Polynomial):
        f = f.to_float()
    with np.errstate(divide="ignore"):
        return np.log(np.abs(f(zz)))


def boundary_points(f) -> tuple[complex, ...]:
    """Points of the unit circle where ``log|f|`` may be singular."""
    if isinstance(f, StructuredFunction):
        return f.boundary_points()
    if isinstance(f, FrostmanShift):
        return f.base.boundary_points()
    if isinstance(f, Polynomial):
        return tuple(p for p, _ in _split_boundary_roots(f)[1])
    if hasattr(f, "boundary_points"):
        return tuple(f.boundary_points())
    return ()


def _arg2pi(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    return a if a >= 0 else a + 2 * math.pi


# ----------------------------------------------------------------------------
# circle means


def _trapezoid_mean(f, r: float, tol: float, max_nodes: int) -> float:
    n = 256
    prev = None
    offset = 0.5 / n  # half-node offset keeps nodes off arg 0, where atoms usually sit
    while True:
        t = 2 * np.pi * (np.arange(n) + offset) / n
        vals = _log_abs(f, r * np.exp(1j * t))
        if not np.all(np.isfinite(vals)):
            raise ContourTooCloseError(f"f vanishes on the circle of radius {r}")
        cur = float(np.mean(vals))
        if prev is not None and abs(cur - prev) < tol:
            return cur
        if 2 * n > max_nodes:
            raise QuadratureError(f"trapezoid mean at r={r} did not converge with {n} nodes", (prev, cur))
        prev = cur
        n *= 2
        offset = 0.5 / n


@dataclass(frozen=True)
class BoundaryMean:
    value: float
    error: float
    evaluations: int


def _boundary_evaluator(f):
    """``(anchor, offsets) -> log|f|`` on the unit circle."""
    if isinstance(f, StructuredFunction):
        return f.boundary_log_abs
    if isinstance(f, Polynomial):
        return as_structured(f).boundary_log_abs
    if isinstance(f, FrostmanShift):
        num = f.numerator()
        den = f.outer_factor()
        return lambda a, u: num.boundary_log_abs(a, u) - den.boundary_log_abs(a, u)
    return lambda a, u: _log_abs(f, np.exp(1j * (a + np.asarray(u))))


def boundary_mean_log_modulus(
    f, tol: float = 1e-10, min_width: float = 1e-9, max_evaluations: int = 1 << 23
) -> BoundaryMean:
    """``(1/2pi) * integral of log|f(e^{it})|`` by adaptive Gauss-Kronrod.

    Breakpoints sit at every boundary atom, boundary zero and boundary pole.
    Each arc is split at its midpoint and each half is parametrized by the
    offset from its own breakpoint, so the nodes never touch a breakpoint and
    distances to it are exact.  Intervals narrower than ``min_width`` are
    accepted as they stand, with their error estimate kept.
    """
    evaluate = _boundary_evaluator(f)
    cuts = sorted({_arg2pi(p) for p in boundary_points(f)}) or [0.0]
    anchors = np.array(cuts)
    widths = np.diff(np.append(anchors, anchors[0] + 2 * np.pi))
    idx = np.concatenate([np.arange(len(cuts)), (np.arange(len(cuts)) + 1) % len(cuts)])
    a = np.concatenate([np.zeros(len(cuts)), -widths / 2])
    b = np.concatenate([widths / 2, np.zeros(len(cuts))])
    total = 0.0
    err = 0.0
    evals = 0
    length = 2 * np.pi
    while a.size:
        mid = 0.5 * (a + b)
        half = 0.5 * (b - a)
        u = mid[:, None] + half[:, None] * _NODES[None, :]
        vals = np.empty_like(u)
        for k in np.unique(idx):
            sel = idx == k
            vals[sel] = evaluate(float(anchors[k]), u[sel])
        evals += vals.size
        if not np.all(np.isfinite(vals)):
            raise QuadratureError("log|f| is not finite at a boundary quadrature node", (total / length, float("nan")))
        kr = half * (vals @ _KW)
        g = half * (vals @ _GW)
        e = np.abs(kr - g)
        ok = (e <= tol * (b - a) / length) | (b - a < min_width)
        total += float(np.sum(kr[ok]))
        err += float(np.sum(e[ok]))
        a, b, idx = a[~ok], b[~ok], idx[~ok]
        if a.size:
            if evals + 30 * a.size > max_evaluations:
                raise QuadratureError(
                    f"boundary quadrature exceeded {max_evaluations} evaluations",
                    (total / length, (total + float(np.sum(kr[~ok]))) / length),
                )
            m = 0.5 * (a + b)
            a, b, idx = np.concatenate([a, m]), np.concatenate([m, b]), np.concatenate([idx, idx])
    return BoundaryMean(total / length, err / length, evals)


def circle_mean_log_modulus(f, r: float = 1.0, tol: float = TOL_TRAPEZOID) -> float:
    """Mean of ``log|f|`` over the circle of radius ``r``.

    ``r < 1`` uses the trapezoid rule with node doubling until successive
    values agree to ``tol``; ``r = 1`` uses boundary quadrature that excludes
    the atoms and boundary zeros of ``f``.
    """
    if not 0 < r <= 1:
        raise DomainError(f"radius must lie in (0, 1], got {r}")
    if r == 1:
        return boundary_mean_log_modulus(f).value
    for nudge in (0.0, -1e-9, 1e-9, -1e-7, 1e-7):
        rr = r * (1 + nudge)
        if rr >= 1:
            continue
        try:
            return _trapezoid_mean(f, rr, tol, MAX_TRAPEZOID_NODES)
        except ContourTooCloseError:
            continue
    raise ContourTooCloseError(f"f vanishes on every nudged circle near r={r}")


# ----------------------------------------------------------------------------
# extrapolation


@dataclass(frozen=True)
class Extrapolation:
    value: float
    uncertainty: float
    extrapolants: tuple


def richardson(radii: Sequence[float], values: Sequence[float], variable: str = "h") -> Extrapolation:
    """First-order Richardson extrapolation to ``r -> 1``.

    The step variable is ``h = 1 - r`` or, with ``variable="x"``, the Poisson
    ratio ``x = (1 - r)/(1 + r)``.  Uses consecutive pairs among the last few
    radii (ratios need not be exactly 2); the value is the final extrapolant and
    the uncertainty the spread of the last two.
    """
    r = np.asarray(radii, dtype=float)
    h = (1 - r) / (1 + r) if variable == "x" else 1 - r
    v = np.asarray(values, dtype=float)
    if v.size == 1:
        return Extrapolation(float(v[0]), float("inf"), (float(v[0]),))
    lo = max(0, v.size - _RICHARDSON_WINDOW)
    ext = []
    for i in range(lo, v.size - 1):
        h0, h1 = h[i], h[i + 1]
        ext.append(float((h0 * v[i + 1] - h1 * v[i]) / (h0 - h1)))
    unc = abs(ext[-1] - ext[-2]) if len(ext) > 1 else abs(ext[-1] - v[-1])
    return Extrapolation(ext[-1], float(unc), tuple(ext))


# ----------------------------------------------------------------------------
# singular masses


@dataclass(frozen=True)
class AtomMass:
    point: complex
    mass: float
    per_radius: tuple
    uncertainty: float = 0.0

    def to_json(self) -> dict:
        return {
            "point": [self.point.real, self.point.imag],
            "mass": self.mass,
            "uncertainty": self.uncertainty,
            "per_radius": list(self.per_radius),
        }


@dataclass(frozen=True)
class SingularMassEstimate:
    total_mass: float
    atom_masses: tuple = ()
    radii_used: tuple = ()
    extrapolated: bool = True
    uncertainty: float = 0.0
    deficits: tuple = ()

    def atom(self, point: complex, tol: float = 1e-6) -> float:
        for a in self.atom_masses:
            if abs(_angle_gap(a.point, point)) <= tol:
                return a.mass
        return 0.0

    def to_json(self) -> dict:
        return {
            "total_mass": self.total_mass,
            "uncertainty": self.uncertainty,
            "extrapolated": self.extrapolated,
            "radii_used": list(self.radii_used),
            "deficits": list(self.deficits),
            "atom_masses": [a.to_json() for a in self.atom_masses],
        }


def _angle_gap(p: complex, q: complex) -> float:
    return abs(math.remainder(math.atan2(p.imag, p.real) - math.atan2(q.imag, q.real), 2 * math.pi))


def _log_abs_at_origin(f) -> tuple[float, int]:
    """``log|f(z)/z^m|`` at 0 together with ``m``, the order of vanishing there."""
    v = _log_abs(f, 0.0)
    if np.isfinite(v):
        return float(v), 0
    if not hasattr(f, "derivative") and not isinstance(f, Polynomial):
        raise DomainError("f(0) = 0 and f offers no derivatives to divide out z^m")
    # Taylor coefficients, not raw derivatives: singular factors make f^(k)(0) grow like k!
    d = derivative_values(f, 0.0, 32)
    a = np.array([abs(v) / math.factorial(k) for k, v in enumerate(d)])
    big = np.nonzero(a > TOL_TAYLOR * a.max())[0]
    if not big.size or a.max() == 0:
        raise DomainError("f vanishes to order > 32 at 0")
    m = int(big[0])
    return float(math.log(a[m])), m


def jensen_deficits(f, zeros_inside: Sequence[ZeroRecord], radii: Sequence[float], boundary_mean: float, log_f0: float):
    """``deficit(r) = boundary mean - log|f(0)/z^m| - sum_{0<|z_k|<r} log(r/|z_k|)``."""
    out = []
    for r in radii:
        s = sum(z.multiplicity * math.log(r / abs(z.location)) for z in zeros_inside if 0 < abs(z.location) < r)
        out.append(boundary_mean - log_f0 - s)
    return out


def check_inventory(f, zeros_inside: Sequence[ZeroRecord], radius: float) -> int:
    """Compare the supplied zeros against the argument-principle count at ``radius``."""
    cc = contour_count(f, 0.0, radius)
    listed = sum(z.multiplicity for z in zeros_inside if abs(z.location) < cc.radius)
    if listed != cc.count:
        raise InconsistentZeroInventoryError(
            f"{listed} zeros listed inside radius {cc.radius:.12g} but the contour count is {cc.count}"
        )
    return cc.count


def total_singular_mass(
    f,
    zeros_inside: Sequence[ZeroRecord] | None = None,
    radii: Sequence[float] = DEFAULT_RADII,
    atoms: Sequence[complex] = (),
    check: bool = True,
) -> SingularMassEstimate:
    """Total singular mass of ``f`` via the Jensen deficit, extrapolated to ``r -> 1``.

    ``zeros_inside`` defaults to :func:`zero_inventory` up to ``max(radii)``.
    When ``atoms`` are given, :func:`atom_mass_at` is evaluated at each.
    """
    radii = tuple(sorted(float(r) for r in radii))
    if zeros_inside is None:
        zeros_inside = zero_inventory(f, max(radii))
    if check:
        check_inventory(f, zeros_inside, max(radii))
    bm = boundary_mean_log_modulus(f)
    log_f0, _ = _log_abs_at_origin(f)
    deficits = jensen_deficits(f, zeros_inside, radii, bm.value, log_f0)
    ex = richardson(radii, deficits)
    atom_list = tuple(atom_mass_at(f, zeta, radii) for zeta in atoms)
    return SingularMassEstimate(
        total_mass=ex.value,
        atom_masses=atom_list,
        radii_used=radii,
        extrapolated=True,
        uncertainty=ex.uncertainty + bm.error,
        deficits=tuple(deficits),
    )


def atom_mass_at(f, zeta: complex, radii: Sequence[float] = DEFAULT_RADII) -> AtomMass:
    """Radial atom mass ``-(1-r) log|f(r zeta)| / (1+r)`` extrapolated to ``r -> 1``.

    Per-radius values are returned raw; a limit below zero is clamped to 0.
    """
    zeta = complex(zeta)
    if abs(abs(zeta) - 1) > 1e-12:
        raise DomainError(f"atom point {zeta} is not on the unit circle")
    radii = tuple(sorted(float(r) for r in radii))
    r = np.array(radii)
    la = np.asarray(_log_abs(f, r * zeta), dtype=float)
    if not np.all(np.isfinite(la)):
        bad = r[~np.isfinite(la)][0]
        raise RadialZeroError(f"f vanishes at {bad * zeta}; the ray towards {zeta} is unusable")
    vals = -(1 - r) * la / (1 + r)
    # a constant factor contributes exactly -log|c| * x, so extrapolating in x removes it
    ex = richardson(radii, vals, variable="x")
    return AtomMass(zeta, max(ex.value, 0.0), tuple(float(v) for v in vals), ex.uncertainty)


def boundary_scan(f, r: float | None = None, n: int = 1024, threshold: float = 0.05) -> list[tuple[complex, float]]:
    """Coarse scan for unexpected atoms: points where ``-(1-r) log|f(r e^{it})|`` exceeds ``threshold``.

    An atom's footprint at radius ``r`` has angular width about ``1 - r``, so the
    default radius ``1 - 2 pi / n`` matches it to the node spacing.
    """
    if r is None:
        r = 1 - 2 * np.pi / n
    t = 2 * np.pi * (np.arange(n) + 0.5) / n
    pts = np.exp(1j * t)
    vals = -(1 - r) * np.asarray(_log_abs(f, r * pts), dtype=float)
    hits = np.nonzero(vals > threshold)[0]
    return [(complex(pts[i]), float(vals[i])) for i in hits]


# ----------------------------------------------------------------------------
# outerness and comparison


@dataclass(frozen=True)
class FactorizationDiagnostic:
    log_mod_mean_at_radii: tuple
    boundary_mean: float
    log_abs_f0: float
    blaschke_sum_located: float
    singular_deficit: float
    inner_deficit: float
    uncertainty: float
    outer_verdict: str  # outer | not-outer | inconclusive

    def to_json(self) -> dict:
        return {
            "log_mod_mean_at_radii": [[r, v] for r, v in self.log_mod_mean_at_radii],
            "boundary_mean": self.boundary_mean,
            "log_abs_f0": self.log_abs_f0,
            "blaschke_sum_located": self.blaschke_sum_located,
            "singular_deficit": self.singular_deficit,
            "inner_deficit": self.inner_deficit,
            "uncertainty": self.uncertainty,
            "outer_verdict": self.outer_verdict,
        }


def outerness_test(
    f,
    zeros_inside: Sequence[ZeroRecord] | None = None,
    radii: Sequence[float] = DEFAULT_RADII,
    tol: float = TOL_OUTER,
    trace_radii: Sequence[float] = (),
) -> FactorizationDiagnostic:
    """Decide whether ``f`` is outer from its full Jensen deficit.

    The inner deficit is ``boundary mean - log|f(0)|``; it is the singular
    mass plus the Blaschke contribution ``sum log(1/|z_k|)`` and vanishes
    exactly for outer functions.
    """
    radii = tuple(sorted(radii))
    if zeros_inside is None:
        zeros_inside = zero_inventory(f, max(radii))
    log_f0, m = _log_abs_at_origin(f)
    if m:
        raise DomainError("outerness test needs f(0) != 0")
    bm = boundary_mean_log_modulus(f)
    deficits = jensen_deficits(f, zeros_inside, radii, bm.value, log_f0)
    ex = richardson(radii, deficits)
    inner = bm.value - log_f0
    unc = ex.uncertainty + bm.error
    if inner <= tol:
        verdict = "outer"
    elif inner >= 10 * tol:
        verdict = "not-outer"
    else:
        verdict = "inconclusive"
    trace = []
    for r in trace_radii:
        try:
            trace.append((float(r), circle_mean_log_modulus(f, r)))
        except HardyFactorError as exc:
            log.info("circle mean at r=%s skipped: %s", r, exc)
            trace.append((float(r), None))
    return FactorizationDiagnostic(
        log_mod_mean_at_radii=tuple(trace),
        boundary_mean=bm.value,
        log_abs_f0=log_f0,
        blaschke_sum_located=float(sum(z.multiplicity * (1 - abs(z.location)) for z in zeros_inside)),
        singular_deficit=ex.value,
        inner_deficit=inner,
        uncertainty=unc,
        outer_verdict=verdict,
    )


def measure_leq(nu: SingularMassEstimate, mu: SingularMassEstimate, tol: float) -> bool:
    """``nu <= mu`` up to ``tol``: atom by atom, and in total."""
    return comparison_margin(nu, mu, tol) >= 0


def comparison_margin(nu: SingularMassEstimate, mu: SingularMassEstimate, tol: float) -> float:
    """Smallest slack ``mu - nu + tol`` over the atoms of ``nu`` and the totals."""
    margin = mu.total_mass + tol - nu.total_mass
    for a in nu.atom_masses:
        if a.mass <= tol:
            continue
        match = [b for b in mu.atom_masses if _angle_gap(a.point, b.point) <= 1e-6]
        if not match:
            return -a.mass
        margin = min(margin, match[0].mass + tol - a.mass)
    return float(margin)


# ----------------------------------------------------------------------------
# divisibility of singular factors


@dataclass(frozen=True)
class DivisibilitySample:
    lambdas: tuple
    total_mass: float | None
    atom_masses: tuple
    passed: bool
    margin: float | None
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "lambdas": [[c.real, c.imag] for c in self.lambdas],
            "total_mass": self.total_mass,
            "atom_masses": [[m.point.real, m.point.imag, m.mass] for m in self.atom_masses],
            "passed": self.passed,
            "margin": self.margin,
            "error": self.error,
        }


@dataclass(frozen=True)
class DivisibilityReport:
    wronskian_estimate: SingularMassEstimate
    tolerance: float
    samples: tuple
    worst_margin: float
    all_passed: bool
    atom_points: tuple = field(default=())

    def to_json(self) -> dict:
        return {
            "wronskian_estimate": self.wronskian_estimate.to_json(),
            "tolerance": self.tolerance,
            "atom_points": [[p.real, p.imag] for p in self.atom_points],
            "worst_margin": self.worst_margin,
            "all_passed": self.all_passed,
            "samples": [s.to_json() for s in self.samples],
        }


def estimate_structured(f: StructuredFunction, atoms: Sequence[complex], radii=DEFAULT_RADII) -> SingularMassEstimate:
    zeros = zero_inventory(f, INVENTORY_RADIUS)
    return total_singular_mass(f, zeros, radii, atoms, check=False)


def random_unit_vectors(n: int, count: int, seed: int) -> list[tuple]:
    rng = np.random.default_rng(seed)
    out = []
    for _ in range(count):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        out.append(tuple(complex(c) for c in v))
    return out


def singular_divisibility_check(
    fs: Sequence,
    lambda_samples: int = 50,
    seed: int = 0,
    tol: float | None = None,
    radii: Sequence[float] = DEFAULT_RADII,
) -> DivisibilityReport:
    """Check that the singular factor of random combinations divides that of ``W``."""
    fs = [as_structured(f) for f in fs]
    if not independence_check(fs):
        raise DomainError("inputs are linearly dependent")
    atoms: list[complex] = []
    for f in fs:
        for p in f.atom_points():
            if all(abs(p - q) > POINT_TOL for q in atoms):
                atoms.append(p)
    atoms.sort(key=_arg2pi)
    W = wronskian_structured(fs)
    mu_w = estimate_structured(W, atoms, radii)
    if tol is None:
        tol = max(0.05 * mu_w.total_mass, 1e-3)
    lams = random_unit_vectors(len(fs), lambda_samples, seed)

    def one(lam):
        try:
            g = structured_combine(fs, lam)
            nu = estimate_structured(g, atoms, radii)
            margin = comparison_margin(nu, mu_w, tol)
            return DivisibilitySample(lam, nu.total_mass, nu.atom_masses, margin >= 0, margin)
        except HardyFactorError as exc:
            return DivisibilitySample(lam, None, (), False, None, f"{type(exc).__name__}: {exc}")

    with ThreadPoolExecutor(max_workers=worker_count()) as pool:
        samples = tuple(pool.map(one, lams))
    margins = [s.margin for s in samples if s.margin is not None]
    worst = min(margins) if margins else float("nan")
    return DivisibilityReport(mu_w, tol, samples, worst, all(s.passed for s in samples), tuple(atoms))


# ----------------------------------------------------------------------------
# Hardy-Sobolev diagnostic


@dataclass(frozen=True)
class HardySobolevReport:
    order: int
    radii: tuple
    integrals: tuple
    growth_exponent: float
    verdict: str  # plausibly-in | likely-not | inconclusive
    label: str = "diagnostic"

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "radii": list(self.radii),
            "integrals": list(self.integrals),
            "growth_exponent": self.growth_exponent,
            "verdict": self.verdict,
            "label": self.label,
        }


def _abs_mean(f, r: float, rtol: float = 1e-7) -> float:
    n = 256
    prev = None
    while True:
        t = 2 * np.pi * (np.arange(n) + 0.5) / n
        cur = float(np.mean(np.abs(f(r * np.exp(1j * t)))))
        if prev is not None and abs(cur - prev) <= rtol * max(abs(cur), 1e-300):
            return cur
        if 2 * n > MAX_TRAPEZOID_NODES:
            raise QuadratureError(f"mean of |f| at r={r} did not converge", (prev, cur))
        prev = cur
        n *= 2


def hardy_sobolev_diagnostic(f, n: int, radii: Sequence[float] = DEFAULT_RADII) -> HardySobolevReport:
    """Heuristic membership test for ``f^{(n)}`` in the Hardy space of order 1.

    ``I(r)`` is the circle mean of ``|f^{(n)}|``.  Bounded growth (last value
    within 10% of the previous) reads as plausibly in; growth of 2x or more over
    the last step, or a stable power law ``I ~ (1-r)^(-s)`` with ``s >= 1/4``
    over the ladder tail, reads as likely not.  Never a proof.
    """
    g = as_structured(f)
    for _ in range(n):
        g = g.derivative().collect()
    radii = tuple(sorted(float(r) for r in radii))
    vals = tuple(_abs_mean(g, r) for r in radii)
    h = 1 - np.array(radii)
    tail = slice(max(0, len(radii) - 4), len(radii))
    with np.errstate(divide="ignore", invalid="ignore"):
        ly = np.log(np.maximum(np.array(vals[tail]), 1e-300))
        lx = -np.log(h[tail])
    if len(vals) >= 2 and np.ptp(lx) > 0:
        slopes = np.diff(ly) / np.diff(lx)
        s = float(slopes[-1])
        stable = bool(np.all(slopes > 0.25)) and float(np.ptp(slopes)) < 0.1
    else:
        s, stable = 0.0, False
    if len(vals) < 2:
        verdict = "inconclusive"
    elif vals[-2] > 0 and vals[-1] >= 2 * vals[-2]:
        verdict = "likely-not"
    elif stable:
        verdict = "likely-not"
    elif abs(vals[-1] - vals[-2]) <= 0.1 * max(abs(vals[-2]), 1e-300):
        verdict = "plausibly-in"
    else:
        verdict = "inconclusive"
    return HardySobolevReport(n, radii, vals, s, verdict)


# ----------------------------------------------------------------------------
# dominating measures


def least_dominating_measure(measures: Sequence[AtomicSingularMeasure]) -> AtomicSingularMeasure:
    """Smallest atomic measure dominating every input (atomwise maximum)."""
    best: list[tuple[complex, float]] = []
    for mu in measures:
        for p, m in mu.atoms:
            for i, (q, w) in enumerate(best):
                if abs(p - q) <= POINT_TOL:
                    best[i] = (q, max(w, m))
                    break
            else:
                best.append((p, m))
    return AtomicSingularMeasure(best)


def pairwise_disjoint(measures: Sequence[AtomicSingularMeasure]) -> bool:
    for i, a in enumerate(measures):
        for b in measures[i + 1:]:
            if any(abs(p - q) <= POINT_TOL for p in a.points for q in b.points):
                return False
    return True
