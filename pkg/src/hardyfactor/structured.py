"""Rational times atomic-singular-inner functions on the unit disk.

A :class:`StructuredTerm` is ``core(z) * prod_p (z - p)**e_p * S_mu(z)`` where
``core`` is a floating polynomial, the ``p`` are special points (atoms, poles
and known boundary zeros) with integer exponents, and ``S_mu`` is the singular
inner function of an atomic measure.  Keeping the special factors separate
from the core means that derivatives near an atom are not evaluated through a
cancelling expanded numerator.

Evaluation runs in (log-modulus, phase) form, so ``S_mu`` deep inside its
exponential decay does not underflow the log-modulus that the boundary-limit
estimators need.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError, EvaluationSingularityError, TrivialCombinationError
from .poly import FLOAT, Polynomial, poly_roots

#: Two special points closer than this are the same point.
POINT_TOL = 1e-12
#: Relative size below which a collected core is taken to vanish at a special point.
STRIP_TOL = 1e-11


def _arg2pi(z: complex) -> float:
    a = math.atan2(z.imag, z.real)
    return a if a >= 0 else a + 2 * math.pi


def _unit(t: float) -> complex:
    # exact values at the quarter turns keep atoms like 1, i, -1 free of rounding
    q = t / (math.pi / 2)
    if abs(q - round(q)) < 1e-15:
        return (1, 1j, -1, -1j)[int(round(q)) % 4] + 0j
    return cmath.rect(1.0, t)


class AtomicSingularMeasure:
    """Finite positive combination of point masses on the unit circle."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: Iterable[tuple[complex, float]] = ()):
        merged: list[list] = []
        for point, mass in atoms:
            point = complex(point)
            mass = float(mass)
            if not abs(point) > 0:
                raise DomainError("atom point must be nonzero")
            if not mass > 0:
                raise DomainError(f"atom masses must be positive, got {mass}")
            if abs(abs(point) - 1) > 1e-9:
                raise DomainError(f"atom point {point} is not on the unit circle")
            point = point / abs(point)
            for slot in merged:
                if abs(slot[0] - point) <= POINT_TOL:
                    slot[1] += mass
                    break
            else:
                merged.append([point, mass])
        merged.sort(key=lambda s: _arg2pi(s[0]))
        object.__setattr__(self, "atoms", tuple((p, m) for p, m in merged))

    def __setattr__(self, name, value):
        raise AttributeError("AtomicSingularMeasure is immutable")

    @classmethod
    def from_args(cls, pairs: Iterable[tuple[float, float]]) -> "AtomicSingularMeasure":
        """Build from ``(argument in radians, mass)`` pairs."""
        return cls((_unit(t), m) for t, m in pairs)

    @classmethod
    def atom(cls, point: complex = 1.0, mass: float = 1.0) -> "AtomicSingularMeasure":
        return cls([(point, mass)])

    @property
    def total_mass(self) -> float:
        total = 0.0
        for _, m in self.atoms:
            total += m
        return total

    @property
    def points(self) -> tuple[complex, ...]:
        return tuple(p for p, _ in self.atoms)

    @property
    def is_empty(self) -> bool:
        return not self.atoms

    def __add__(self, other: "AtomicSingularMeasure") -> "AtomicSingularMeasure":
        return AtomicSingularMeasure(self.atoms + other.atoms)

    def scaled(self, k: float) -> "AtomicSingularMeasure":
        return AtomicSingularMeasure((p, k * m) for p, m in self.atoms) if k > 0 else AtomicSingularMeasure()

    def is_close(self, other: "AtomicSingularMeasure", rtol: float = 1e-12) -> bool:
        if len(self.atoms) != len(other.atoms):
            return False
        for (p, m), (q, n) in zip(self.atoms, other.atoms):
            if abs(p - q) > POINT_TOL or abs(m - n) > rtol * max(m, n):
                return False
        return True

    def mass_at(self, point: complex, tol: float = 1e-9) -> float:
        for p, m in self.atoms:
            if abs(p - point) <= tol:
                return m
        return 0.0

    def exponent(self, z):
        """``-sum_j m_j (zeta_j + z) / (zeta_j - z)``, so that ``S_mu = exp(exponent)``."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros_like(z)
        for p, m in self.atoms:
            out = out - m * (p + z) / (p - z)
        return out

    def to_json(self) -> dict:
        return {"atoms": [{"arg": _arg2pi(p), "mass": m} for p, m in self.atoms]}

    @classmethod
    def from_json(cls, data: dict) -> "AtomicSingularMeasure":
        return cls.from_args((a["arg"], a["mass"]) for a in data.get("atoms", []))

    def __eq__(self, other):
        if not isinstance(other, AtomicSingularMeasure):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        inner = ", ".join(f"({_arg2pi(p):.6g} rad, {m:.6g})" for p, m in self.atoms)
        return f"AtomicSingularMeasure([{inner}])"


def singular_inner_eval(mu: AtomicSingularMeasure, z):
    """``S_mu(z)``; valid in the closed disk away from the atoms."""
    zz = np.asarray(z, dtype=complex)
    _check_domain(zz, mu.points, ())
    out = np.exp(mu.exponent(zz))
    return out if np.ndim(z) else complex(out)


def _check_domain(z: np.ndarray, atoms: Sequence[complex], poles: Sequence[complex]):
    if z.size == 0:
        return
    if np.any(np.abs(z) > 1 + 1e-12):
        raise DomainError("structured functions are evaluated in the closed unit disk only")
    for p in atoms:
        if np.any(np.abs(z - p) < 1e-15):
            raise EvaluationSingularityError(f"evaluation at the atom {p}")
    for p in poles:
        if np.any(np.abs(z - p) < 1e-15):
            raise EvaluationSingularityError(f"evaluation at the pole {p}")


# ----------------------------------------------------------------------------
# factor bookkeeping


def _merge_powers(*groups: Iterable[tuple[complex, int]]) -> tuple[tuple[complex, int], ...]:
    slots: list[list] = []
    for group in groups:
        for p, e in group:
            for slot in slots:
                if abs(slot[0] - p) <= POINT_TOL:
                    slot[1] += e
                    break
            else:
                slots.append([complex(p), int(e)])
    slots = [s for s in slots if s[1] != 0]
    slots.sort(key=lambda s: (round(abs(s[0]), 12), _arg2pi(s[0])))
    return tuple((p, e) for p, e in slots)


def _power_of(powers, point) -> int:
    for p, e in powers:
        if abs(p - point) <= POINT_TOL:
            return e
    return 0


def _factor_poly(factors: Iterable[tuple[complex, int]]) -> Polynomial:
    out = Polynomial.constant(1.0)
    for p, k in factors:
        if k > 0:
            out = out * (Polynomial.float([-p, 1.0]) ** k)
    return out


def _deflate(core: Polynomial, p: complex) -> Polynomial:
    """Quotient of ``core`` by ``(z - p)``, dropping the (negligible) remainder."""
    c = list(core.coeffs)
    n = len(c) - 1
    q = [0j] * n
    acc = c[n]
    for k in range(n - 1, -1, -1):
        q[k] = acc
        acc = c[k] + acc * p
    return Polynomial.float(q)


def _vanishes_at(core: Polynomial, p: complex) -> bool:
    if core.is_zero:
        return True
    val = abs(core(p))
    scale = 0.0
    ap = abs(p)
    for c in reversed(core.coeffs):
        scale = scale * ap + abs(c)
    return val <= STRIP_TOL * scale


def _snap_unit(p: complex) -> complex:
    p = p / abs(p)
    for q in (1, 1j, -1, -1j):
        if abs(p - q) <= 1e-9:
            return complex(q)
    return p


def _split_boundary_roots(p: Polynomial) -> tuple[Polynomial, list[tuple[complex, int]]]:
    """Pull unit-circle roots out of ``p`` as explicit ``(z - zeta)**m`` factors."""
    p = p.to_float()
    if p.is_zero or not p.degree:
        return p, []
    powers = []
    core = p
    for rec in poly_roots(p):
        if abs(abs(rec.location) - 1) <= 1e-9:
            zeta = _snap_unit(rec.location)
            for _ in range(rec.multiplicity):
                core = _deflate(core, zeta)
            powers.append((zeta, rec.multiplicity))
    return core, powers


class StructuredTerm:
    """``core * prod (z-p)**e * S_mu``; negative exponents are poles (|p| >= 1)."""

    __slots__ = ("core", "powers", "measure", "_core_arr")

    def __init__(self, core: Polynomial, powers=(), measure: AtomicSingularMeasure | None = None):
        if not isinstance(core, Polynomial):
            core = Polynomial.float(core)
        core = core.to_float()
        powers = _merge_powers(powers)
        for p, e in powers:
            if e < 0 and abs(p) < 1 - 1e-12:
                raise DomainError(f"pole {p} lies inside the open unit disk")
        object.__setattr__(self, "core", core)
        object.__setattr__(self, "powers", powers)
        object.__setattr__(self, "measure", measure if measure is not None else AtomicSingularMeasure())
        object.__setattr__(self, "_core_arr", np.array(core.coeffs, dtype=complex))

    def __setattr__(self, name, value):
        raise AttributeError("StructuredTerm is immutable")

    @classmethod
    def from_rational(cls, numerator: Polynomial, denominator: Polynomial, measure=None) -> "StructuredTerm":
        numerator = numerator.to_float()
        denominator = denominator.to_float()
        if denominator.is_zero:
            raise DomainError("zero denominator")
        lead = denominator.leading
        poles = [
            (_snap_unit(r.location) if abs(abs(r.location) - 1) <= 1e-9 else r.location, -r.multiplicity)
            for r in poly_roots(denominator)
        ]
        core, zeros = _split_boundary_roots(numerator.scale(1 / lead))
        return cls(core, zeros + poles, measure)

    @property
    def numerator(self) -> Polynomial:
        return self.core * _factor_poly((p, e) for p, e in self.powers if e > 0)

    @property
    def denominator(self) -> Polynomial:
        """Monic denominator (leading coefficient normalized to 1)."""
        return _factor_poly((p, -e) for p, e in self.powers if e < 0)

    @property
    def poles(self) -> tuple[complex, ...]:
        return tuple(p for p, e in self.powers if e < 0)

    def scale(self, c: complex) -> "StructuredTerm":
        return StructuredTerm(self.core.scale(c), self.powers, self.measure)

    def __mul__(self, other: "StructuredTerm") -> "StructuredTerm":
        return StructuredTerm(self.core * other.core, _merge_powers(self.powers, other.powers), self.measure + other.measure)

    def derivative(self) -> "StructuredTerm":
        # d/dz [M * prod (z-p)^e * S] over the common factor
        # C = prod_{special p} (z-p) * prod_{atoms} (z-zeta)^2
        need: list[list] = [[p, 1] for p, _ in self.powers]
        for zeta, _ in self.measure.atoms:
            for slot in need:
                if abs(slot[0] - zeta) <= POINT_TOL:
                    slot[1] = 2
                    break
            else:
                need.append([zeta, 2])
        M = self.core

        def cofactor(point, drop):
            return _factor_poly((q, d - drop if abs(q - point) <= POINT_TOL else d) for q, d in need)

        C = _factor_poly((q, d) for q, d in need)
        core = M.derivative() * C
        for p, e in self.powers:
            core = core + (M * cofactor(p, 1)).scale(e)
        for zeta, m in self.measure.atoms:
            core = core - (M * cofactor(zeta, 2)).scale(2 * m * zeta)
        powers = _merge_powers(self.powers, ((q, -d) for q, d in need))
        return StructuredTerm(core, powers, self.measure)

    def log_parts(self, z: np.ndarray):
        """Log-modulus and unit phase of the rational part at ``z`` (array)."""
        acc = np.zeros_like(z)
        for c in self._core_arr[::-1]:
            acc = acc * z + c
        with np.errstate(divide="ignore", invalid="ignore"):
            logmod = np.log(np.abs(acc))
            phase = np.exp(1j * np.angle(acc))
            for p, e in self.powers:
                d = z - p
                logmod = logmod + e * np.log(np.abs(d))
                phase = phase * np.exp(1j * e * np.angle(d))
        return logmod, phase

    def to_json(self) -> dict:
        return {
            "numerator": self.numerator.to_json(),
            "denominator": self.denominator.to_json(),
            "measure": self.measure.to_json(),
            "factored": {
                "core": self.core.to_json(),
                "powers": [{"point": [p.real, p.imag], "power": e} for p, e in self.powers],
            },
        }

    @classmethod
    def from_json(cls, data: dict) -> "StructuredTerm":
        measure = AtomicSingularMeasure.from_json(data.get("measure", {}))
        if "factored" in data:
            fac = data["factored"]
            powers = [(complex(*item["point"]), int(item["power"])) for item in fac.get("powers", [])]
            return cls(Polynomial.from_json(fac["core"]), powers, measure)
        num = Polynomial.from_json(data["numerator"])
        den = Polynomial.from_json(data.get("denominator", {"kind": FLOAT, "coeffs": [[1.0, 0.0]]}))
        return cls.from_rational(num, den, measure)

    def __repr__(self):
        return f"StructuredTerm(core={self.core!r}, powers={self.powers!r}, measure={self.measure!r})"


class StructuredFunction:
    """Finite sum of :class:`StructuredTerm` values."""

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable[StructuredTerm] = ()):
        object.__setattr__(self, "terms", tuple(t for t in terms if not t.core.is_zero))

    def __setattr__(self, name, value):
        raise AttributeError("StructuredFunction is immutable")

    # constructors

    @classmethod
    def constant(cls, c: complex) -> "StructuredFunction":
        return cls([StructuredTerm(Polynomial.constant(c))])

    @classmethod
    def polynomial(cls, p: Polynomial) -> "StructuredFunction":
        core, powers = _split_boundary_roots(p)
        return cls([StructuredTerm(core, powers)])

    @classmethod
    def singular_inner(cls, mu: AtomicSingularMeasure) -> "StructuredFunction":
        return cls([StructuredTerm(Polynomial.constant(1.0), (), mu)])

    @classmethod
    def rational(cls, numerator: Polynomial, denominator: Polynomial | None = None, mu=None) -> "StructuredFunction":
        if denominator is None:
            denominator = Polynomial.constant(1.0)
        return cls([StructuredTerm.from_rational(numerator, denominator, mu)])

    @classmethod
    def factored(cls, core, powers=(), mu=None) -> "StructuredFunction":
        return cls([StructuredTerm(core if isinstance(core, Polynomial) else Polynomial.constant(core), powers, mu)])

    # algebra

    def __add__(self, other):
        other = as_structured(other)
        return StructuredFunction(self.terms + other.terms)

    __radd__ = __add__

    def __neg__(self):
        return StructuredFunction(t.scale(-1) for t in self.terms)

    def __sub__(self, other):
        return self + (-as_structured(other))

    def __rsub__(self, other):
        return as_structured(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        other = as_structured(other)
        return StructuredFunction(a * b for a in self.terms for b in other.terms)

    def __rmul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return self.scale(other)
        return as_structured(other) * self

    def scale(self, c: complex) -> "StructuredFunction":
        c = complex(c)
        if c == 0:
            return StructuredFunction()
        return StructuredFunction(t.scale(c) for t in self.terms)

    def derivative(self) -> "StructuredFunction":
        return StructuredFunction(t.derivative() for t in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def atom_points(self) -> tuple[complex, ...]:
        pts: list[complex] = []
        for t in self.terms:
            for p in t.measure.points:
                if all(abs(p - q) > POINT_TOL for q in pts):
                    pts.append(p)
        pts.sort(key=_arg2pi)
        return tuple(pts)

    def poles(self) -> tuple[complex, ...]:
        pts: list[complex] = []
        for t in self.terms:
            for p in t.poles:
                if all(abs(p - q) > POINT_TOL for q in pts):
                    pts.append(p)
        return tuple(pts)

    def boundary_points(self) -> tuple[complex, ...]:
        """Atoms together with special factor points lying on the unit circle."""
        pts = list(self.atom_points())
        for t in self.terms:
            for p, _ in t.powers:
                if abs(abs(p) - 1) <= 1e-12 and all(abs(p - q) > POINT_TOL for q in pts):
                    pts.append(p)
        pts.sort(key=_arg2pi)
        return tuple(pts)

    def total_mass_bound(self) -> float:
        return max((t.measure.total_mass for t in self.terms), default=0.0)

    def collect(self) -> "StructuredFunction":
        """Add up terms sharing a measure over their common special factors.

        This is like-term collection, not gcd cancellation: the only factors
        ever removed from a collected core are ``(z - p)`` at the special
        points the terms already carry, and only when the core vanishes there
        to ``STRIP_TOL``.
        """
        groups: list[tuple[AtomicSingularMeasure, list[StructuredTerm]]] = []
        for t in self.terms:
            for mu, members in groups:
                if mu.is_close(t.measure):
                    members.append(t)
                    break
            else:
                groups.append((t.measure, [t]))
        out = []
        for mu, members in groups:
            points: list[complex] = []
            for t in members:
                for p, _ in t.powers:
                    if all(abs(p - q) > POINT_TOL for q in points):
                        points.append(p)
            low = {i: min(_power_of(t.powers, p) for t in members) for i, p in enumerate(points)}
            core = Polynomial.zero(FLOAT)
            for t in members:
                lift = _factor_poly((p, _power_of(t.powers, p) - low[i]) for i, p in enumerate(points))
                core = core + t.core * lift
            if core.is_zero:
                continue
            powers = [[p, low[i]] for i, p in enumerate(points)]
            for slot in powers:
                while core.degree and _vanishes_at(core, slot[0]):
                    core = _deflate(core, slot[0])
                    slot[1] += 1
            out.append(StructuredTerm(core, [(p, e) for p, e in powers], mu))
        return StructuredFunction(out)

    def single_measure_term(self) -> StructuredTerm | None:
        """The collected single term when all terms share one measure, else ``None``."""
        c = self.collect()
        if len(c.terms) == 1:
            return c.terms[0]
        if not c.terms:
            return StructuredTerm(Polynomial.zero(FLOAT))
        return None

    # evaluation

    def _reference_index(self) -> int:
        masses = [t.measure.total_mass for t in self.terms]
        return int(np.argmin(masses))

    def _parts(self, z: np.ndarray):
        """Return ``(E_ref, s, res)`` with ``f = exp(E_ref + s) * res`` elementwise.

        ``E_ref`` is the exponent of a reference term's measure, analytic in the
        open disk, so ``res`` winds exactly as ``f`` does around closed curves
        inside the disk.
        """
        _check_domain(z, self.atom_points(), self.poles())
        if not self.terms:
            return np.zeros_like(z), np.full(z.shape, -np.inf), np.zeros_like(z)
        ref = self.terms[self._reference_index()].measure
        e_ref = ref.exponent(z)
        logs = []
        phases = []
        for t in self.terms:
            lm, ph = t.log_parts(z)
            de = t.measure.exponent(z) - e_ref if t.measure is not ref else np.zeros_like(z)
            logs.append(lm + de.real)
            phases.append(ph * np.exp(1j * de.imag))
        logs = np.array(logs)
        with np.errstate(invalid="ignore"):
            s = np.max(logs, axis=0)
        finite = np.isfinite(s)
        shift = np.where(finite, s, 0.0)
        with np.errstate(invalid="ignore", over="ignore"):
            weights = np.exp(logs - shift)
        res = np.sum(weights * np.array(phases), axis=0)
        res = np.where(finite, res, 0.0)
        return e_ref, s, res

    def log_abs(self, z):
        zz = np.asarray(z, dtype=complex)
        e_ref, s, res = self._parts(zz)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = e_ref.real + s + np.log(np.abs(res))
        out = np.where(np.abs(res) > 0, out, -np.inf)
        return out if np.ndim(z) else float(out)

    def log_value(self, z):
        """A branch of ``log f(z)``; ``-inf`` real part where ``f`` vanishes."""
        zz = np.asarray(z, dtype=complex)
        e_ref, s, res = self._parts(zz)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = e_ref + s + np.log(np.where(np.abs(res) > 0, res, 1.0))
        out = np.where(np.abs(res) > 0, out, complex(-np.inf, 0.0))
        return out if np.ndim(z) else complex(out)

    def boundary_log_abs(self, anchor: float, offsets):
        """``log|f(e^{i(anchor + u)})|`` for offsets ``u`` measured from the angle ``anchor``.

        On the circle every singular factor is unimodular, with phase
        ``-m cot(delta/2)`` at angular distance ``delta`` from its atom; boundary
        factors ``|z - p|`` equal ``2|sin(delta/2)|``.  Computing ``delta`` as
        ``(anchor - arg p) + u`` keeps it exact for the atom at ``anchor``, so
        values stay accurate arbitrarily close to that atom.
        """
        u = np.asarray(offsets, dtype=float)
        z = np.exp(1j * (anchor + u))

        def delta(point):
            return math.remainder(anchor - _arg2pi(point), 2 * math.pi) + u

        logs, phases = [], []
        with np.errstate(divide="ignore", invalid="ignore"):
            for t in self.terms:
                acc = np.zeros_like(z)
                for c in t._core_arr[::-1]:
                    acc = acc * z + c
                lm = np.log(np.abs(acc))
                ph = np.exp(1j * np.angle(acc))
                for p, e in t.powers:
                    if abs(abs(p) - 1) <= 1e-12:
                        d = delta(p)
                        sh = np.sin(d / 2)
                        lm = lm + e * np.log(2 * np.abs(sh))
                        ph = ph * (p * np.exp(0.5j * d) * 1j * np.sign(sh)) ** e
                    else:
                        w = z - p
                        lm = lm + e * np.log(np.abs(w))
                        ph = ph * np.exp(1j * e * np.angle(w))
                turn = np.zeros_like(u)
                for p, m in t.measure.atoms:
                    turn = turn - m / np.tan(delta(p) / 2)
                logs.append(lm)
                phases.append(ph * np.exp(1j * turn))
        if not logs:
            return np.full(u.shape, -np.inf)
        logs = np.array(logs)
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.max(logs, axis=0)
            shift = np.where(np.isfinite(s), s, 0.0)
            res = np.sum(np.exp(logs - shift) * np.array(phases), axis=0)
            out = s + np.log(np.abs(res))
        return np.where(np.isfinite(s) & (np.abs(res) > 0), out, -np.inf)

    def winding_residual(self, z):
        """A function of ``z`` with the same winding as ``self`` on closed curves in the disk."""
        zz = np.asarray(z, dtype=complex)
        _, _, res = self._parts(zz)
        return res

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        e_ref, s, res = self._parts(zz)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            mag = np.exp(e_ref.real + s)
            out = np.where(np.abs(res) > 0, mag * res * np.exp(1j * e_ref.imag), 0.0)
        return out if np.ndim(z) else complex(out)

    # serialization

    def to_json(self) -> dict:
        return {"terms": [t.to_json() for t in self.terms]}

    @classmethod
    def from_json(cls, data: dict) -> "StructuredFunction":
        return cls(StructuredTerm.from_json(t) for t in data.get("terms", []))

    def __repr__(self):
        return f"StructuredFunction({len(self.terms)} terms)"


def as_structured(f) -> StructuredFunction:
    if isinstance(f, StructuredFunction):
        return f
    if isinstance(f, Polynomial):
        return StructuredFunction.polynomial(f)
    if isinstance(f, BlaschkeProduct):
        return f.to_structured()
    if isinstance(f, (int, float, complex, np.number)):
        return StructuredFunction.constant(complex(f))
    raise TypeError(f"cannot treat {type(f).__name__} as a structured function")


def structured_eval(f: StructuredFunction, z):
    return f(z)


def structured_derivative(f: StructuredFunction) -> StructuredFunction:
    return f.derivative()


def structured_multiply(f, g) -> StructuredFunction:
    return as_structured(f) * as_structured(g)


def structured_combine(fs: Sequence, lambdas: Sequence[complex], nontrivial: bool = True) -> StructuredFunction:
    """``sum_j lambdas[j] * fs[j]`` by term concatenation (no simplification)."""
    if len(fs) != len(lambdas):
        raise ValueError("fs and lambdas must have equal lengths")
    lambdas = [complex(c) for c in lambdas]
    if nontrivial and not any(lambdas):
        raise TrivialCombinationError("all combination coefficients are zero (need sum |lambda_j| > 0)")
    terms: list[StructuredTerm] = []
    for f, c in zip(fs, lambdas):
        if c == 0:
            continue
        terms.extend(t.scale(c) for t in as_structured(f).terms)
    return StructuredFunction(terms)


@dataclass(frozen=True)
class FrostmanShift:
    """``(theta - alpha) / (1 - conj(alpha) theta)`` for a (intended inner) ``theta``."""

    base: StructuredFunction
    alpha: complex

    def __post_init__(self):
        object.__setattr__(self, "alpha", complex(self.alpha))
        if not abs(self.alpha) < 1:
            raise DomainError(f"Frostman parameter must satisfy |alpha| < 1, got {self.alpha}")

    def __call__(self, z):
        th = self.base(z)
        a = self.alpha
        return (th - a) / (1 - a.conjugate() * th)

    def derivative_at(self, z):
        th = self.base(z)
        dth = self.base.derivative()(z)
        a = self.alpha
        return dth * (1 - abs(a) ** 2) / (1 - a.conjugate() * th) ** 2

    def numerator(self) -> StructuredFunction:
        """``theta - alpha`` as an in-family combination."""
        return structured_combine([self.base, 1.0], [1.0, -self.alpha])

    def outer_factor(self) -> StructuredFunction:
        """``1 - conj(alpha) theta`` as an in-family combination."""
        return structured_combine([1.0, self.base], [1.0, -self.alpha.conjugate()], nontrivial=False)


def frostman_eval(shift: FrostmanShift, z):
    return shift(z)


def frostman_derivative_eval(shift: FrostmanShift, z):
    return shift.derivative_at(z)


class BlaschkeProduct:
    """Finite Blaschke product ``c * prod ((z - a) / (1 - conj(a) z))**m``."""

    __slots__ = ("zeros", "unimodular_constant")

    def __init__(self, zeros: Iterable[tuple[complex, int]], unimodular_constant: complex = 1.0):
        zs = []
        for a, m in zeros:
            a = complex(a)
            if not abs(a) < 1:
                raise DomainError(f"Blaschke zero {a} is not inside the open disk")
            if int(m) < 1:
                raise DomainError("Blaschke multiplicities must be positive")
            zs.append((a, int(m)))
        c = complex(unimodular_constant)
        if abs(abs(c) - 1) > 1e-12:
            raise DomainError("Blaschke constant must have modulus 1")
        object.__setattr__(self, "zeros", tuple(zs))
        object.__setattr__(self, "unimodular_constant", c)

    def __setattr__(self, name, value):
        raise AttributeError("BlaschkeProduct is immutable")

    @property
    def blaschke_sum(self) -> float:
        return sum(m * (1 - abs(a)) for a, m in self.zeros)

    def __call__(self, z):
        zz = np.asarray(z, dtype=complex)
        out = np.full(zz.shape, self.unimodular_constant, dtype=complex)
        for a, m in self.zeros:
            out = out * ((zz - a) / (1 - a.conjugate() * zz)) ** m
        return out if np.ndim(z) else complex(out)

    def to_structured(self) -> StructuredFunction:
        core = self.unimodular_constant
        powers = []
        for a, m in self.zeros:
            powers.append((a, m))
            if a != 0:
                # (z - a) / (1 - conj(a) z) = (z - a) / (-conj(a) (z - 1/conj(a)))
                core = core * (-1 / a.conjugate()) ** m
                powers.append((1 / a.conjugate(), -m))
        return StructuredFunction.factored(Polynomial.constant(core), powers)
