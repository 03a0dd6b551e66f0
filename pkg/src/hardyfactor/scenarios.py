"""Declarative scenarios: config validation, checks, and report emission.

A scenario is a JSON document validated against ``config.schema.json``.
Running it yields a :class:`ScenarioReport` whose JSON form depends only on
the config (seeded draws, fixed evaluation order), so reruns are byte-identical.
Wall-clock timings go to a separate sidecar file.
"""

from __future__ import annotations

import cmath
import copy
import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Sequence

import jsonschema
import numpy as np

from .errors import ConfigError, HardyFactorError
from .factor import (
    DEFAULT_RADII,
    TOL_OUTER,
    atom_mass_at,
    hardy_sobolev_diagnostic,
    least_dominating_measure,
    outerness_test,
    pairwise_disjoint,
    singular_divisibility_check,
)
from .poly import EXACT, FLOAT, ExactComplex, Polynomial, poly_roots
from .structured import (
    AtomicSingularMeasure,
    FrostmanShift,
    StructuredFunction,
    StructuredTerm,
)
from .wronskian import DEFAULT_TOL_RANK, wronskian_exact, wronskian_structured
from .zeros import TOL_DERIV, contour_count, deep_zero_set, locate_zeros, multiplicity_at

SCENARIOS = ("theorem-a", "theorem-1", "derivative-lemma", "frostman")

DEFAULT_TOLERANCES = {
    "rank": DEFAULT_TOL_RANK,
    "deriv": TOL_DERIV,
    "outer": TOL_OUTER,
    "divisibility": None,
    "soundness_distance": 1e-6,
    "cross_engine": 1e-9,
    "identity_residual": 1e-12,
    "lemma_relative": 0.02,
}


def _atom_fn(arg: float, mass: float, numerator=(1,)) -> dict:
    return {"rational": {"numerator": {"kind": "float", "coeffs": list(numerator)}, "atoms": [{"arg": arg, "mass": mass}]}}


_ONE_MINUS_Z4 = (1, -4, 6, -4, 1)
_Z_ONE_MINUS_Z4 = (0, 1, -4, 6, -4, 1)

DEFAULT_FIXTURES = {
    "theorem-1": [
        {"name": "S,zS", "functions": [_atom_fn(0.0, 1.0), _atom_fn(0.0, 1.0, (0, 1))]},
        {"name": "(1-z)^4 S,z(1-z)^4 S", "functions": [_atom_fn(0.0, 1.0, _ONE_MINUS_Z4), _atom_fn(0.0, 1.0, _Z_ONE_MINUS_Z4)]},
        {"name": "S,zS,z^2S", "functions": [_atom_fn(0.0, 1.0), _atom_fn(0.0, 1.0, (0, 1)), _atom_fn(0.0, 1.0, (0, 0, 1))]},
    ],
    "derivative-lemma": [
        {"name": "(1-z)^4 S", "function": _atom_fn(0.0, 1.0, _ONE_MINUS_Z4), "atom": [1.0, 0.0]},
        {"name": "(1-z)^6 S", "function": _atom_fn(0.0, 1.0, (1, -6, 15, -20, 15, -6, 1)), "atom": [1.0, 0.0]},
    ],
}


def _defaults(scenario: str) -> dict:
    d: dict[str, Any] = {
        "seed": 0,
        "sample_count": 50,
        "radius": 0.995,
        "radii": list(DEFAULT_RADII),
        "tolerances": dict(DEFAULT_TOLERANCES),
        "outputs": {"traces": True, "plots": True},
    }
    if scenario == "theorem-a":
        d["functions"] = [
            {"polynomial": {"kind": "exact", "coeffs": [1]}},
            {"polynomial": {"kind": "exact", "coeffs": [0, 0, 1]}},
        ]
        d["sweep"] = {"tuples": 200, "lambdas": 50, "max_degree": 6, "orders": [1, 2, 3]}
    elif scenario in DEFAULT_FIXTURES:
        d["fixtures"] = copy.deepcopy(DEFAULT_FIXTURES[scenario])
    elif scenario == "frostman":
        d["theta"] = _atom_fn(0.0, 1.0)
        d["alphas"] = [0.3, [0, 0.5]]
        d["count_alpha"] = 0.3
        d["count_radius"] = 0.999
        d["alpha_grid"] = [0, 0.1, 0.3, 0.5, 0.7, [0, 0.3], -0.3]
        d["identity_points"] = 100
        d["disjoint_k"] = 8
    return d


def load_schema() -> dict:
    text = resources.files("hardyfactor").joinpath("config.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def _pointer(path) -> str:
    parts = [str(p).replace("~", "~0").replace("/", "~1") for p in path]
    return "/" + "/".join(parts)


# ----------------------------------------------------------------------------
# function specs


def _scalar(x) -> Fraction | float:
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


def _complex_parts(x) -> tuple:
    if isinstance(x, (list, tuple)):
        return _scalar(x[0]), _scalar(x[1])
    return _scalar(x), Fraction(0)


def parse_complex(x) -> complex:
    re, im = _complex_parts(x)
    return complex(float(re), float(im))


def parse_polynomial(spec: dict) -> Polynomial:
    parts = [_complex_parts(c) for c in spec["coeffs"]]
    kind = spec.get("kind")
    if kind is None:
        kind = EXACT if all(isinstance(v, Fraction) for pair in parts for v in pair) else FLOAT
    if kind == EXACT:
        return Polynomial.exact([ExactComplex(Fraction(re), Fraction(im)) for re, im in parts])
    return Polynomial.float([complex(float(re), float(im)) for re, im in parts])


def parse_function(spec: dict):
    """Build a :class:`Polynomial` or :class:`StructuredFunction` from a config entry."""
    if "polynomial" in spec:
        return parse_polynomial(spec["polynomial"])
    if "rational" in spec:
        r = spec["rational"]
        num = parse_polynomial(r["numerator"]).to_float()
        den = parse_polynomial(r["denominator"]).to_float() if "denominator" in r else Polynomial.constant(1.0)
        mu = AtomicSingularMeasure.from_json({"atoms": r.get("atoms", [])})
        return StructuredFunction([StructuredTerm.from_rational(num, den, mu)])
    if "sum" in spec:
        out = StructuredFunction()
        for item in spec["sum"]:
            f = parse_function(item)
            out = out + (f if isinstance(f, StructuredFunction) else StructuredFunction.polynomial(f.to_float()))
        return out
    if "structured" in spec:
        return StructuredFunction.from_json(spec["structured"])
    raise ConfigError("unknown function spec", "/")


# ----------------------------------------------------------------------------
# config


@dataclass(frozen=True)
class ScenarioConfig:
    """Validated configuration with defaults filled in (``data`` is the echo)."""

    data: dict

    @property
    def scenario(self) -> str:
        return self.data["scenario"]

    @property
    def seed(self) -> int:
        return int(self.data["seed"])

    @property
    def tolerances(self) -> dict:
        return self.data["tolerances"]

    @property
    def radii(self) -> tuple:
        return tuple(sorted(self.data["radii"]))

    def __getitem__(self, key):
        return self.data[key]

    @classmethod
    def from_dict(cls, raw: dict, overrides: dict | None = None) -> "ScenarioConfig":
        raw = copy.deepcopy(raw)
        for k, v in (overrides or {}).items():
            if v is not None:
                raw[k] = v
        validator = jsonschema.Draft202012Validator(load_schema())
        errors = sorted(validator.iter_errors(raw), key=lambda e: (len(e.absolute_path), list(map(str, e.absolute_path))))
        if errors:
            err = errors[0]
            raise ConfigError(err.message, _pointer(err.absolute_path))
        data = _defaults(raw["scenario"])
        for k, v in raw.items():
            if k == "tolerances":
                data["tolerances"].update(v)
            elif k == "outputs":
                data["outputs"].update(v)
            elif k == "sweep":
                data.setdefault("sweep", {}).update(v)
            else:
                data[k] = v
        data["scenario"] = raw["scenario"]
        try:
            _check_semantics(data)
        except ConfigError:
            raise
        except (ValueError, KeyError, TypeError, ZeroDivisionError, HardyFactorError) as exc:
            raise ConfigError(str(exc), "/") from exc
        return cls(data)

    @classmethod
    def from_file(cls, path, overrides: dict | None = None) -> "ScenarioConfig":
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise ConfigError(f"invalid JSON: {exc}", "/") from exc
        except OSError as exc:
            raise ConfigError(f"cannot read {path}: {exc}", "/") from exc
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object", "/")
        return cls.from_dict(raw, overrides)


def _check_semantics(data: dict):
    s = data["scenario"]
    if s == "theorem-a":
        for i, spec in enumerate(data["functions"]):
            if "polynomial" not in spec:
                raise ConfigError("theorem-a takes polynomial inputs only", f"/functions/{i}")
            parse_function(spec)
        if len(data["functions"]) < 2:
            raise ConfigError("need at least two functions", "/functions")
    if s in ("theorem-1", "derivative-lemma"):
        key = "functions" if s == "theorem-1" else "function"
        for i, fx in enumerate(data["fixtures"]):
            if key not in fx:
                raise ConfigError(f"fixture needs '{key}'", f"/fixtures/{i}")
            specs = fx[key] if s == "theorem-1" else [fx[key]]
            for j, spec in enumerate(specs):
                try:
                    parse_function(spec)
                except (ValueError, KeyError, HardyFactorError) as exc:
                    raise ConfigError(str(exc), f"/fixtures/{i}/{key}" + (f"/{j}" if s == "theorem-1" else "")) from exc
    if s == "frostman":
        th = parse_function(data["theta"])
        if not isinstance(th, StructuredFunction):
            raise ConfigError("theta must be a singular inner function", "/theta")
        named = [(f"/alphas/{i}", a) for i, a in enumerate(data["alphas"])]
        named += [("/count_alpha", data["count_alpha"])]
        named += [(f"/alpha_grid/{i}", a) for i, a in enumerate(data["alpha_grid"])]
        for pointer, a in named:
            if not abs(parse_complex(a)) < 1:
                raise ConfigError("Frostman parameters need |alpha| < 1", pointer)


# ----------------------------------------------------------------------------
# report


@dataclass
class CheckResult:
    name: str
    passed: bool
    mandatory: bool = True
    margin: float | None = None
    details: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "passed": self.passed, "mandatory": self.mandatory, "margin": self.margin, "details": self.details}


@dataclass
class ScenarioReport:
    config: dict
    checks: list = field(default_factory=list)
    traces: dict = field(default_factory=dict)  # file name -> (header, rows)
    plots: dict = field(default_factory=dict)  # file name -> svg text
    timing: dict = field(default_factory=dict)

    @property
    def overall_pass(self) -> bool:
        return all(c.passed for c in self.checks if c.mandatory)

    @property
    def artifacts(self) -> list:
        return sorted(list(self.traces) + list(self.plots))

    def to_json(self) -> dict:
        return _clean(
            {
                "scenario": self.config["scenario"],
                "config": self.config,
                "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.name)],
                "artifacts": self.artifacts,
                "overall_pass": self.overall_pass,
            }
        )

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2, allow_nan=False) + "\n"


def _clean(x):
    """JSON-safe copy: complex -> [re, im], non-finite floats -> None, tuples -> lists."""
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        return float(x) if math.isfinite(x) else None
    if isinstance(x, (complex, np.complexfloating)):
        return [_clean(float(x.real)), _clean(float(x.imag))]
    if isinstance(x, Fraction):
        return str(x)
    return x


def emit_report(report: ScenarioReport, out_dir) -> list[Path]:
    """Write report.json, the timing sidecar, CSV traces and SVG plots."""
    out = Path(out_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OSError(f"cannot create output directory {out}: {exc}") from exc
    written = []

    def put(name: str, text: str):
        path = out / name
        try:
            path.write_text(text, encoding="utf-8", newline="")
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
        written.append(path)

    put("report.json", report.dumps())
    put("timing.json", json.dumps(_clean(report.timing), sort_keys=True, indent=2) + "\n")
    for name, (header, rows) in sorted(report.traces.items()):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        put(name, buf.getvalue())
    for name, svg in sorted(report.plots.items()):
        put(name, svg)
    return written


def _fmt(v) -> str:
    if isinstance(v, float):
        return repr(v) if math.isfinite(v) else ""
    return str(v)


# ----------------------------------------------------------------------------
# SVG


def zero_map_svg(points: Sequence[complex], title: str, size: int = 400) -> str:
    """Unit circle with one marker per point."""
    c = size / 2
    s = 0.45 * size
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">',
        f"<title>{_esc(title)}</title>",
        f'<circle cx="{c:.1f}" cy="{c:.1f}" r="{s:.1f}" fill="none" stroke="black" stroke-width="1"/>',
        f'<line x1="{c - s:.1f}" y1="{c:.1f}" x2="{c + s:.1f}" y2="{c:.1f}" stroke="#bbb"/>',
        f'<line x1="{c:.1f}" y1="{c - s:.1f}" x2="{c:.1f}" y2="{c + s:.1f}" stroke="#bbb"/>',
    ]
    for z in points:
        lines.append(f'<circle class="marker" cx="{c + s * z.real:.3f}" cy="{c - s * z.imag:.3f}" r="4" fill="crimson"/>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def decay_svg(series: dict, title: str, width: int = 480, height: int = 320) -> str:
    """Line plot of per-radius values against ``-log2(1 - r)``."""
    pad = 40
    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts if y is not None and math.isfinite(y)]
    x0, x1 = (min(xs), max(xs)) if xs else (0.0, 1.0)
    y0, y1 = (min(ys + [0.0]), max(ys + [0.0])) if ys else (0.0, 1.0)
    if x1 == x0:
        x1 = x0 + 1
    if y1 == y0:
        y1 = y0 + 1

    def px(x):
        return pad + (width - 2 * pad) * (x - x0) / (x1 - x0)

    def py(y):
        return height - pad - (height - 2 * pad) * (y - y0) / (y1 - y0)

    colors = ["steelblue", "crimson", "darkgreen", "darkorange", "purple"]
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">',
        f"<title>{_esc(title)}</title>",
        f'<rect x="{pad}" y="{pad}" width="{width - 2 * pad}" height="{height - 2 * pad}" fill="none" stroke="black"/>',
        f'<text x="{width / 2:.0f}" y="{height - 8}" text-anchor="middle" font-size="12">-log2(1-r)</text>',
        f'<text x="4" y="{pad - 8}" font-size="12">{y1:.4g}</text>',
        f'<text x="4" y="{height - pad}" font-size="12">{y0:.4g}</text>',
    ]
    for i, (name, pts) in enumerate(sorted(series.items())):
        good = [(x, y) for x, y in pts if y is not None and math.isfinite(y)]
        path = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in good)
        col = colors[i % len(colors)]
        lines.append(f'<polyline fill="none" stroke="{col}" stroke-width="1.5" points="{path}"/>')
        lines.append(f'<text x="{width - pad - 4}" y="{pad + 14 * (i + 1)}" text-anchor="end" font-size="11" fill="{col}">{_esc(name)}</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


# ----------------------------------------------------------------------------
# random polynomial tuples


def _gauss_int(rng, lo: int, hi: int) -> ExactComplex:
    return ExactComplex(int(rng.integers(lo, hi + 1)), int(rng.integers(lo, hi + 1)))


def _random_poly(rng, degree: int) -> Polynomial:
    coeffs = [_gauss_int(rng, -3, 3) for _ in range(degree + 1)]
    while not coeffs[-1]:
        coeffs[-1] = _gauss_int(rng, -3, 3)
    return Polynomial.exact(coeffs)


@dataclass(frozen=True)
class PolyTuple:
    functions: tuple
    planted: ExactComplex | None

    @property
    def order(self) -> int:
        return len(self.functions) - 1


def random_polynomial_tuple(rng, n: int, max_degree: int = 6, plant: bool = False) -> PolyTuple:
    """``n + 1`` independent exact polynomials of degree at most ``max_degree``.

    With ``plant`` the first one is ``(z - a)^(n+1) q`` for a Gaussian
    rational ``a``, so some combinations have a zero of order above ``n``.
    """
    while True:
        a = None
        fs = []
        if plant and max_degree >= n + 1:
            while True:
                a = ExactComplex(Fraction(int(rng.integers(-3, 4)), 4), Fraction(int(rng.integers(-3, 4)), 4))
                if float(a.abs2()) < 0.81:
                    break
            q = _random_poly(rng, int(rng.integers(0, max_degree - n)))
            fs.append(Polynomial.exact([-a, 1]) ** (n + 1) * q)
        while len(fs) < n + 1:
            fs.append(_random_poly(rng, int(rng.integers(0, max_degree + 1))))
        if not wronskian_exact(fs).is_zero:
            return PolyTuple(tuple(fs), a)


def random_gaussian_lambdas(rng, size: int) -> tuple:
    """Gaussian integers in ``[-2, 2]^2``, each zeroed with probability 1/2; never all zero."""
    while True:
        lam = []
        for _ in range(size):
            c = _gauss_int(rng, -2, 2)
            lam.append(ExactComplex(0, 0) if rng.random() < 0.5 else c)
        if any(lam):
            return tuple(lam)


def sweep_tuples(seed, count: int, max_degree: int = 6, orders: Sequence[int] = (1, 2, 3)) -> list[PolyTuple]:
    rng = np.random.default_rng([int(seed), 1])
    out = []
    for _ in range(count):
        n = int(orders[int(rng.integers(0, len(orders)))])
        out.append(random_polynomial_tuple(rng, n, max_degree, plant=bool(rng.random() < 0.5)))
    return out


def exact_combination(fs: Sequence[Polynomial], lam: Sequence) -> Polynomial:
    g = Polynomial.zero(EXACT)
    for f, c in zip(fs, lam):
        if c:
            g = g + f.scale(c)
    return g


@dataclass
class SoundnessResult:
    combinations: int = 0
    deep_roots: int = 0
    violations: list = field(default_factory=list)
    max_distance: float = 0.0

    def to_json(self) -> dict:
        return {
            "combinations": self.combinations,
            "deep_roots": self.deep_roots,
            "violations": self.violations[:20],
            "violation_count": len(self.violations),
            "max_distance": self.max_distance,
        }


def soundness_sweep(tuples: Sequence[PolyTuple], lambdas: int, seed, tol: float = 1e-6) -> SoundnessResult:
    """Every root of order > n of a random combination must be a root of the Wronskian."""
    res = SoundnessResult()
    for i, t in enumerate(tuples):
        rng = np.random.default_rng([int(seed), 2, i])
        W = wronskian_exact(t.functions)
        w_roots = [r.location for r in poly_roots(W)] if W.degree else []
        n = t.order
        for _ in range(lambdas):
            g = exact_combination(t.functions, random_gaussian_lambdas(rng, n + 1))
            res.combinations += 1
            if not g.degree:
                continue
            for r in poly_roots(g):
                if r.multiplicity < n + 1:
                    continue
                res.deep_roots += 1
                d = min((abs(r.location - w) for w in w_roots), default=math.inf)
                res.max_distance = max(res.max_distance, d)
                if d > tol:
                    res.violations.append({"tuple": i, "root": r.location, "multiplicity": r.multiplicity, "distance": d})
    return res


@dataclass
class CompletenessResult:
    certificates: int = 0
    verified: int = 0
    wronskian_zeros: int = 0
    failures: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "certificates": self.certificates,
            "verified": self.verified,
            "wronskian_zeros_in_radius": self.wronskian_zeros,
            "failures": self.failures[:20],
        }


def completeness_sweep(tuples: Sequence[PolyTuple], radius: float = 0.995, tol_rank=DEFAULT_TOL_RANK, tol_deriv=TOL_DERIV) -> CompletenessResult:
    """Each certificate's witness is recombined independently and its multiplicity rechecked."""
    res = CompletenessResult()
    for i, t in enumerate(tuples):
        W = wronskian_exact(t.functions)
        if W.degree:
            res.wronskian_zeros += sum(1 for r in poly_roots(W) if abs(r.location) <= radius)
        n = t.order
        for c in deep_zero_set(t.functions, radius, tol_rank, tol_deriv):
            res.certificates += 1
            g = Polynomial.zero(FLOAT)
            for f, lam in zip(t.functions, c.witness):
                g = g + f.to_float().scale(lam)
            m = multiplicity_at(g, c.point, 2 * (n + 1), tol_deriv)
            if m >= n + 1:
                res.verified += 1
            else:
                res.failures.append({"tuple": i, "point": c.point, "multiplicity": m})
    return res


def cross_engine_error(fs: Sequence[Polynomial], points: Sequence[complex]) -> float:
    """Largest gap between exact and structured Wronskians, relative to the largest value seen."""
    we = wronskian_exact(fs).to_float()
    ws = wronskian_structured(fs)
    a = np.array([we(complex(z)) for z in points])
    b = np.array([ws(complex(z)) for z in points])
    scale = max(float(np.max(np.abs(a))), 1e-300)
    return float(np.max(np.abs(a - b)) / scale)


def interior_points(seed, count: int, rmax: float = 0.9) -> list[complex]:
    rng = np.random.default_rng([int(seed), 3])
    r = rmax * np.sqrt(rng.random(count))
    t = 2 * np.pi * rng.random(count)
    return [complex(z) for z in r * np.exp(1j * t)]


# ----------------------------------------------------------------------------
# scenario runners


def _run_theorem_a(cfg: ScenarioConfig, report: ScenarioReport):
    tol = cfg.tolerances
    fs = [parse_function(s) for s in cfg["functions"]]
    t0 = time.perf_counter()
    certs = deep_zero_set(fs, cfg["radius"], tol["rank"], tol["deriv"])
    report.timing["deep_zero_set"] = time.perf_counter() - t0
    W = wronskian_exact(fs)
    n = len(fs) - 1
    ok = True
    for c in certs:
        g = Polynomial.zero(FLOAT)
        for f, lam in zip(fs, c.witness):
            g = g + f.to_float().scale(lam)
        ok &= multiplicity_at(g, c.point, 2 * (n + 1), tol["deriv"]) >= n + 1
    w_zeros = [r for r in poly_roots(W) if abs(r.location) <= cfg["radius"]] if W.degree else []
    report.checks.append(
        CheckResult(
            "theorem-a.certificates",
            ok and len(certs) == len(w_zeros),
            details={
                "wronskian": W.to_json(),
                "wronskian_zeros_in_radius": len(w_zeros),
                "certificates": [c.to_json() for c in certs],
            },
        )
    )
    sw = cfg["sweep"]
    t0 = time.perf_counter()
    tuples = sweep_tuples(cfg.seed, sw["tuples"], sw["max_degree"], sw["orders"])
    snd = soundness_sweep(tuples, sw["lambdas"], cfg.seed, tol["soundness_distance"])
    report.timing["soundness"] = time.perf_counter() - t0
    report.checks.append(
        CheckResult("theorem-a.soundness", not snd.violations, margin=tol["soundness_distance"] - snd.max_distance, details=snd.to_json())
    )
    t0 = time.perf_counter()
    cmp_ = completeness_sweep(tuples, cfg["radius"], tol["rank"], tol["deriv"])
    report.timing["completeness"] = time.perf_counter() - t0
    report.checks.append(
        CheckResult(
            "theorem-a.completeness",
            not cmp_.failures and cmp_.certificates == cmp_.wronskian_zeros,
            details=cmp_.to_json(),
        )
    )
    pts = interior_points(cfg.seed, 20)
    errs = [cross_engine_error(fs, pts)] + [cross_engine_error(t.functions, pts) for t in tuples[:20]]
    worst = max(errs)
    report.checks.append(
        CheckResult("theorem-a.cross-engine", worst <= tol["cross_engine"], margin=tol["cross_engine"] - worst, details={"max_relative_error": worst, "tuples": len(errs)})
    )
    if cfg["outputs"]["plots"]:
        report.plots["zeros.svg"] = zero_map_svg([c.point for c in certs], "deep-zero certificates")


def _estimate_trace(est, name: str, report: ScenarioReport):
    header = ["r", "deficit"] + [f"atom_{k}" for k in range(len(est.atom_masses))]
    rows = []
    for i, r in enumerate(est.radii_used):
        rows.append([r, est.deficits[i]] + [a.per_radius[i] for a in est.atom_masses])
    report.traces[name] = (header, rows)


def _slug(s: str) -> str:
    out = "".join(ch if ch.isalnum() else "-" for ch in s.lower())
    while "--" in out:
        out = out.replace("--", "-")
    return out.strip("-") or "fixture"


def _run_theorem_1(cfg: ScenarioConfig, report: ScenarioReport):
    tol = cfg.tolerances
    series = {}
    for i, fx in enumerate(cfg["fixtures"]):
        fs = [parse_function(s) for s in fx["functions"]]
        n = len(fs) - 1
        name = fx["name"]
        t0 = time.perf_counter()
        hs = [hardy_sobolev_diagnostic(f, n, cfg.radii) for f in fs]
        smooth = all(h.verdict == "plausibly-in" for h in hs)
        details: dict[str, Any] = {"hardy_sobolev": [h.to_json() for h in hs], "smoothness_gate": smooth}
        try:
            rep = singular_divisibility_check(fs, cfg["sample_count"], [cfg.seed, i], tol["divisibility"], cfg.radii)
            details.update(rep.to_json())
            passed = rep.all_passed
            margin = rep.worst_margin
            est = rep.wronskian_estimate
            if cfg["outputs"]["traces"]:
                _estimate_trace(est, f"trace-{i:02d}-{_slug(name)}.csv", report)
            for a in est.atom_masses:
                series[f"W {name}"] = [(-math.log2(1 - r), v) for r, v in zip(est.radii_used, a.per_radius)]
        except HardyFactorError as exc:
            details["error"] = f"{type(exc).__name__}: {exc}"
            passed, margin = False, None
        report.timing[f"theorem-1.{name}"] = time.perf_counter() - t0
        report.checks.append(CheckResult(f"theorem-1.{name}", passed, mandatory=smooth, margin=margin, details=details))
    if cfg["outputs"]["plots"] and series:
        report.plots["radial-decay.svg"] = decay_svg(series, "per-radius atom mass of W")


def _run_derivative_lemma(cfg: ScenarioConfig, report: ScenarioReport):
    rel = cfg.tolerances["lemma_relative"]
    series = {}
    for i, fx in enumerate(cfg["fixtures"]):
        h = parse_function(fx["function"])
        if isinstance(h, Polynomial):
            h = StructuredFunction.polynomial(h.to_float())
        atom = parse_complex(fx.get("atom", [1.0, 0.0]))
        name = fx["name"]
        t0 = time.perf_counter()
        try:
            dh = h.derivative().collect()
            mh = atom_mass_at(h, atom, cfg.radii)
            md = atom_mass_at(dh, atom, cfg.radii)
            margin = md.mass - (1 - rel) * mh.mass
            passed = margin >= 0
            details = {"mass_h": mh.to_json(), "mass_derivative": md.to_json(), "relative_tolerance": rel}
            if cfg["outputs"]["traces"]:
                report.traces[f"trace-{i:02d}-{_slug(name)}.csv"] = (
                    ["r", "mass_h", "mass_derivative"],
                    [[r, a, b] for r, a, b in zip(cfg.radii, mh.per_radius, md.per_radius)],
                )
            ks = [-math.log2(1 - r) for r in cfg.radii]
            series[f"h {name}"] = list(zip(ks, mh.per_radius))
            series[f"h' {name}"] = list(zip(ks, md.per_radius))
        except HardyFactorError as exc:
            passed, margin, details = False, None, {"error": f"{type(exc).__name__}: {exc}"}
        report.timing[f"derivative-lemma.{name}"] = time.perf_counter() - t0
        report.checks.append(CheckResult(f"derivative-lemma.{name}", passed, margin=margin, details=details))
    if cfg["outputs"]["plots"] and series:
        report.plots["radial-decay.svg"] = decay_svg(series, "per-radius atom mass")


def frostman_zero_oracle(theta: StructuredFunction, alpha: complex, radius: float) -> int | None:
    """Closed-form count of zeros of ``theta - alpha`` in ``|z| < radius`` for one-atom ``theta``.

    ``exp(-c (zeta + z)/(zeta - z)) = alpha`` gives
    ``w = (zeta + z)/(zeta - z) = -(log alpha + 2 pi i k)/c`` and
    ``z = zeta (w - 1)/(w + 1)``; returns None when ``theta`` is not of that form.
    """
    term = theta.single_measure_term()
    if term is None or len(term.measure.atoms) != 1 or term.powers or term.core.degree != 0:
        return None
    (zeta, c), = term.measure.atoms
    k0 = term.core.coeffs[0]
    if abs(abs(k0) - 1) > 1e-12:
        return None
    a = complex(alpha) / k0
    if a == 0:
        return 0
    la = cmath.log(a)
    count = 0
    # |z| < radius < 1 forces Re w bounded and |Im w| bounded; scan k until zeros leave for good
    k = 0
    while True:
        found = 0
        for kk in {k, -k}:
            w = -(la + 2j * math.pi * kk) / c
            z = zeta * (w - 1) / (w + 1)
            if abs(z) < radius:
                found += 1
        count += found
        if found == 0 and abs(2 * math.pi * k / c) > 2 * (1 + radius) / (1 - radius):
            return count
        k += 1


def _run_frostman(cfg: ScenarioConfig, report: ScenarioReport):
    tol = cfg.tolerances
    theta = parse_function(cfg["theta"])
    pts = interior_points(cfg.seed, cfg["identity_points"], 0.95)
    z = np.array(pts)
    worst = 0.0
    for a in cfg["alphas"] + [cfg["count_alpha"]]:
        sh = FrostmanShift(theta, parse_complex(a))
        th = theta(z)
        lhs = th - sh.alpha
        rhs = sh(z) * (1 - sh.alpha.conjugate() * th)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    report.checks.append(
        CheckResult("frostman.identity", worst <= tol["identity_residual"], margin=tol["identity_residual"] - worst, details={"max_residual": worst, "points": len(pts)})
    )
    for a in cfg["alphas"]:
        alpha = parse_complex(a)
        sh = FrostmanShift(theta, alpha)
        try:
            d = outerness_test(sh.outer_factor(), [], cfg.radii, tol["outer"])
            passed = d.outer_verdict == "outer"
            details = d.to_json()
            margin = tol["outer"] - d.inner_deficit
        except HardyFactorError as exc:
            passed, margin, details = False, None, {"error": f"{type(exc).__name__}: {exc}"}
        report.checks.append(CheckResult(f"frostman.outer[{alpha.real:+.6g}{alpha.imag:+.6g}i]", passed, margin=margin, details=details))
    R = cfg["count_radius"]
    grid = []
    ok = True
    for a in [cfg["count_alpha"]] + cfg["alpha_grid"]:
        alpha = parse_complex(a)
        g = FrostmanShift(theta, alpha).numerator()
        try:
            cc = contour_count(g, 0.0, R)
            oracle = frostman_zero_oracle(theta, alpha, cc.radius)
            grid.append({"alpha": alpha, "count": cc.count, "radius": cc.radius, "oracle": oracle})
            if oracle is not None and oracle != cc.count:
                ok = False
        except HardyFactorError as exc:
            grid.append({"alpha": alpha, "error": f"{type(exc).__name__}: {exc}"})
            ok = False
    report.checks.append(CheckResult("frostman.zero-counts", ok, details={"counts": grid}))
    K = cfg["disjoint_k"]
    mus = [AtomicSingularMeasure.from_args([(2 * math.pi * j / K, 1.0)]) for j in range(K)]
    disjoint = pairwise_disjoint(mus)
    masses = [least_dominating_measure(mus[: k + 1]).total_mass for k in range(K)]
    report.checks.append(
        CheckResult(
            "frostman.disjoint-supports",
            disjoint and all(abs(m - (k + 1)) <= 1e-12 for k, m in enumerate(masses)),
            details={"K": K, "pairwise_disjoint": disjoint, "least_dominating_mass": masses},
        )
    )
    if cfg["outputs"]["plots"]:
        alpha = parse_complex(cfg["count_alpha"])
        try:
            recs = locate_zeros(FrostmanShift(theta, alpha).numerator(), min(R, 0.99))
            report.plots["zeros.svg"] = zero_map_svg([r.location for r in recs], "zeros of theta - alpha")
        except HardyFactorError as exc:
            report.plots["zeros.svg"] = zero_map_svg([], f"zero map unavailable: {exc}")


_RUNNERS = {
    "theorem-a": _run_theorem_a,
    "theorem-1": _run_theorem_1,
    "derivative-lemma": _run_derivative_lemma,
    "frostman": _run_frostman,
}


def run_scenario(config: ScenarioConfig | dict) -> ScenarioReport:
    if not isinstance(config, ScenarioConfig):
        config = ScenarioConfig.from_dict(config)
    report = ScenarioReport(config=copy.deepcopy(config.data))
    t0 = time.perf_counter()
    _RUNNERS[config.scenario](config, report)
    report.timing["total"] = time.perf_counter() - t0
    return report
