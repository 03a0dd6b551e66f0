"""Exact Gaussian-rational and floating complex polynomials.

Coefficients are stored in ascending degree order.  The zero polynomial is the
empty coefficient tuple and has degree ``None``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import DomainError, KindMismatchError

EXACT = "exact"
FLOAT = "float"

#: Roots closer than this (relative to ``max(1, |z|)``) are grouped outright.
DELTA_CLUSTER = 1e-6

_EPS = np.finfo(float).eps


class ExactComplex:
    """Gaussian rational ``re + i*im`` with arbitrary-precision parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def _raw(cls, re, im):
        obj = cls.__new__(cls)
        obj.re = re
        obj.im = im
        return obj

    @classmethod
    def coerce(cls, value) -> "ExactComplex":
        if isinstance(value, ExactComplex):
            return value
        if isinstance(value, (int, Rational)):
            return cls._raw(Fraction(value), Fraction(0))
        if isinstance(value, float):
            return cls._raw(Fraction(value), Fraction(0))
        if isinstance(value, complex):
            return cls._raw(Fraction(value.real), Fraction(value.imag))
        if isinstance(value, str):
            return cls._raw(Fraction(value), Fraction(0))
        raise TypeError(f"cannot convert {type(value).__name__} to ExactComplex")

    def __add__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex._raw(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return ExactComplex._raw(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return ExactComplex.coerce(other) - self

    def __neg__(self):
        return ExactComplex._raw(-self.re, -self.im)

    def __mul__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        a, b, c, d = self.re, self.im, o.re, o.im
        return ExactComplex._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = ExactComplex.coerce(other)
        den = o.re * o.re + o.im * o.im
        if den == 0:
            raise ZeroDivisionError("division by exact zero")
        a, b, c, d = self.re, self.im, o.re, o.im
        return ExactComplex._raw((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        return ExactComplex.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return ExactComplex(1) / (self ** (-k))
        out = ExactComplex(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return ExactComplex._raw(self.re, -self.im)

    def abs2(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = ExactComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({_fmt_q(self.re)}, {_fmt_q(self.im)})"


def _fmt_q(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _parse_q(text) -> Fraction:
    if isinstance(text, str):
        return Fraction(text.strip())
    if isinstance(text, int):
        return Fraction(text)
    raise ValueError(f"exact scalar must be a 'num/den' string, got {text!r}")


class Polynomial:
    """Immutable univariate polynomial over exact or floating complex scalars."""

    __slots__ = ("coeffs", "kind")

    def __init__(self, coeffs=(), kind: str = FLOAT):
        if kind not in (EXACT, FLOAT):
            raise ValueError(f"unknown scalar kind {kind!r}")
        if kind == EXACT:
            cs = [ExactComplex.coerce(c) for c in coeffs]
        else:
            cs = [complex(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "kind", kind)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # constructors

    @classmethod
    def exact(cls, coeffs) -> "Polynomial":
        return cls(coeffs, EXACT)

    @classmethod
    def float(cls, coeffs) -> "Polynomial":
        return cls(coeffs, FLOAT)

    @classmethod
    def zero(cls, kind: str = FLOAT) -> "Polynomial":
        return cls((), kind)

    @classmethod
    def constant(cls, c, kind: str = FLOAT) -> "Polynomial":
        return cls((c,), kind)

    @classmethod
    def monomial(cls, k: int, c=1, kind: str = FLOAT) -> "Polynomial":
        return cls([0] * k + [c], kind)

    @classmethod
    def from_roots(cls, roots, kind: str = FLOAT) -> "Polynomial":
        out = cls.constant(1, kind)
        for r in roots:
            out = out * cls((-r if kind == FLOAT else -ExactComplex.coerce(r), 1), kind)
        return out

    # basic properties

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self):
        """Degree, or ``None`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self):
        return self.coeffs[-1] if self.coeffs else None

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.kind == other.kind and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.kind, self.coeffs))

    def __repr__(self):
        return f"Polynomial.{self.kind}({list(self.coeffs)!r})"

    # arithmetic

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self._lift(other)
        if other.kind != self.kind:
            raise KindMismatchError(f"cannot combine {self.kind} and {other.kind} polynomials")
        return other

    def _lift(self, scalar):
        if self.kind == FLOAT and isinstance(scalar, ExactComplex):
            scalar = complex(scalar)
        return Polynomial.constant(scalar, self.kind)

    def __add__(self, other):
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] = out[k] + c
        return Polynomial(out, self.kind)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial([-c for c in self.coeffs], self.kind)

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        other = self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Polynomial.zero(self.kind)
        zero = ExactComplex(0) if self.kind == EXACT else 0j
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                out[i + j] = out[i + j] + x * y
        return Polynomial(out, self.kind)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Polynomial":
        if self.kind == EXACT:
            c = ExactComplex.coerce(c)
        else:
            c = complex(c)
        return Polynomial([x * c for x in self.coeffs], self.kind)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative polynomial power")
        out = Polynomial.constant(1, self.kind)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def derivative(self) -> "Polynomial":
        return Polynomial([k * c for k, c in enumerate(self.coeffs)][1:], self.kind)

    def __call__(self, z):
        return poly_eval(self, z)

    def to_float(self) -> "Polynomial":
        if self.kind == FLOAT:
            return self
        return Polynomial([complex(c) for c in self.coeffs], FLOAT)

    def to_exact(self) -> "Polynomial":
        """Exact copy; float coefficients are converted without rounding."""
        if self.kind == EXACT:
            return self
        return Polynomial([ExactComplex.coerce(c) for c in self.coeffs], EXACT)

    def as_array(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    # exact division machinery

    def monic(self) -> "Polynomial":
        if self.is_zero:
            return self
        lead = self.leading
        if self.kind == EXACT:
            return Polynomial([c / lead for c in self.coeffs], EXACT)
        return Polynomial([c / lead for c in self.coeffs], FLOAT)

    def __divmod__(self, other):
        other = self._check(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.kind != EXACT:
            raise DomainError("long division is only offered for exact polynomials")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lead = other.leading
        if len(rem) - 1 < db:
            return Polynomial.zero(EXACT), self
        quo = [ExactComplex(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            q = rem[k + db] / lead
            quo[k] = q
            if q:
                for j, c in enumerate(other.coeffs):
                    rem[k + j] = rem[k + j] - q * c
        return Polynomial(quo, EXACT), Polynomial(rem[:db], EXACT)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # serialization

    def to_json(self) -> dict:
        if self.kind == EXACT:
            coeffs = [[_fmt_q(c.re), _fmt_q(c.im)] for c in self.coeffs]
        else:
            coeffs = [[c.real, c.imag] for c in self.coeffs]
        return {"kind": self.kind, "coeffs": coeffs}

    @classmethod
    def from_json(cls, data: dict) -> "Polynomial":
        kind = data.get("kind")
        if kind == EXACT:
            return cls([ExactComplex._raw(_parse_q(re), _parse_q(im)) for re, im in data["coeffs"]], EXACT)
        if kind == FLOAT:
            return cls([complex(float(re), float(im)) for re, im in data["coeffs"]], FLOAT)
        raise ValueError(f"unknown polynomial kind {kind!r}")


def poly_arith(p: Polynomial, q, op: str) -> Polynomial:
    """Apply ``op`` in {add, sub, mul, scale}; for ``scale`` the second operand is a scalar."""
    if op == "scale":
        return p.scale(q)
    if not isinstance(q, Polynomial):
        raise TypeError("add/sub/mul expect two polynomials")
    if p.kind != q.kind:
        raise KindMismatchError(f"cannot combine {p.kind} and {q.kind} polynomials")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def poly_derivative(p: Polynomial) -> Polynomial:
    return p.derivative()


def _is_exact_scalar(z) -> bool:
    return isinstance(z, (ExactComplex, int, Rational)) and not isinstance(z, bool)


def poly_eval(p: Polynomial, z):
    """Horner evaluation; exact when both ``p`` and ``z`` are exact."""
    if p.kind == EXACT and _is_exact_scalar(z):
        z = ExactComplex.coerce(z)
        acc = ExactComplex(0)
        for c in reversed(p.coeffs):
            acc = acc * z + c
        return acc
    if isinstance(z, np.ndarray) or isinstance(z, (list, tuple)):
        z = np.asarray(z, dtype=complex)
        acc = np.zeros_like(z)
        for c in reversed(p.coeffs):
            acc = acc * z + complex(c)
        return acc
    z = complex(z)
    acc = 0j
    for c in reversed(p.coeffs):
        acc = acc * z + complex(c)
    return acc


def horner_error_bound(p: Polynomial, z) -> float:
    """Running-error style bound on the rounding error of float Horner at ``z``."""
    n = len(p.coeffs)
    if n == 0:
        return 0.0
    az = abs(complex(z))
    s = 0.0
    for c in reversed(p.coeffs):
        s = s * az + abs(complex(c))
    gamma = 2 * n * _EPS / (1 - 2 * n * _EPS)
    return gamma * s * math.sqrt(2)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd of two exact polynomials (Euclid with monic normalisation)."""
    if a.kind != EXACT or b.kind != EXACT:
        raise DomainError("gcd is only offered for exact polynomials")
    a, b = a.monic(), b.monic()
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


# prime with p = 1 (mod 4), so i has an image in GF(p)
_P = 1_000_000_009


def _sqrt_minus_one(p: int) -> int:
    for g in range(2, 100):
        r = pow(g, (p - 1) // 4, p)
        if r * r % p == p - 1:
            return r
    raise ArithmeticError("no square root of -1 found")


_I_MOD = _sqrt_minus_one(_P)


def _reduce_mod(p: Polynomial) -> list[int] | None:
    """Image of ``D * p`` in GF(_P)[z], ``D`` the common denominator; None if that is not defined."""
    den = 1
    for c in p.coeffs:
        den = math.lcm(den, c.re.denominator, c.im.denominator)
    if den % _P == 0:
        return None
    out = []
    for c in p.coeffs:
        re = c.re.numerator * (den // c.re.denominator)
        im = c.im.numerator * (den // c.im.denominator)
        out.append((re + im * _I_MOD) % _P)
    return out


def _gcd_degree_mod(a: list[int], b: list[int]) -> int:
    def trim(v):
        while v and v[-1] == 0:
            v.pop()
        return v

    a, b = trim(list(a)), trim(list(b))
    while b:
        inv = pow(b[-1], _P - 2, _P)
        while len(a) >= len(b):
            f = a[-1] * inv % _P
            shift = len(a) - len(b)
            for k in range(len(b)):
                a[shift + k] = (a[shift + k] - f * b[k]) % _P
            trim(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


def is_squarefree(p: Polynomial) -> bool:
    """Exact test for repeated roots.

    A constant gcd of ``p`` and ``p'`` modulo a large prime proves
    square-freeness whenever the leading coefficient survives the reduction;
    otherwise the exact gcd decides.
    """
    if p.kind != EXACT:
        raise DomainError("square-free test needs an exact polynomial")
    if p.is_zero:
        raise DomainError("the zero polynomial is not square-free")
    if p.degree < 2:
        return True
    img = _reduce_mod(p)
    if img is not None and img[-1] != 0 and p.degree < _P:
        d_img = [(k * img[k]) % _P for k in range(1, len(img))]
        if _gcd_degree_mod(img, d_img) == 0:
            return True
    return poly_gcd(p, p.derivative()).degree == 0


def squarefree_decomposition(p: Polynomial) -> list[tuple[Polynomial, int]]:
    """Yun's algorithm: monic factors ``g_i`` with ``p = lead * prod g_i**i``."""
    if p.kind != EXACT:
        raise DomainError("square-free decomposition needs an exact polynomial")
    if p.is_zero:
        raise DomainError("zero polynomial has no square-free decomposition")
    if p.degree == 0:
        return []
    dp = p.derivative()
    c = poly_gcd(p, dp)
    w = p // c
    y = dp // c
    z = y - w.derivative()
    out = []
    i = 1
    while w.degree and w.degree > 0:
        g = poly_gcd(w, z)
        if g.degree and g.degree > 0:
            out.append((g, i))
        w = w // g
        y = z // g
        z = y - w.derivative()
        i += 1
    return out


@dataclass(frozen=True)
class RootRecord:
    location: complex
    multiplicity: int
    residual: float
    conversion_error: float = 0.0


def _companion_roots(coeffs: np.ndarray) -> np.ndarray:
    # np.roots takes descending coefficients and peels off roots at zero exactly.
    return np.roots(coeffs[::-1]).astype(complex)


def _polish(coeffs: np.ndarray, z: complex, steps: int = 8) -> complex:
    p = Polynomial.float(coeffs)
    dp = p.derivative()
    best, best_val = z, abs(p(z))
    cur = z
    for _ in range(steps):
        d = dp(cur)
        if d == 0:
            break
        cur = cur - p(cur) / d
        val = abs(p(cur))
        if val < best_val:
            best, best_val = cur, val
        else:
            break
    return best


def _taylor_at(coeffs: np.ndarray, c: complex) -> np.ndarray:
    """Taylor coefficients of the polynomial about ``c`` (repeated synthetic division)."""
    a = np.array(coeffs, dtype=complex)
    n = len(a)
    for k in range(n):
        for j in range(n - 2, k - 1, -1):
            a[j] += c * a[j + 1]
    return a


def _taylor_scale(coeffs: np.ndarray, c: complex) -> np.ndarray:
    return np.abs(_taylor_at(np.abs(coeffs), abs(c)))


def _merge_ok(coeffs: np.ndarray, center: complex, mult: int, tol: float) -> bool:
    t = _taylor_at(coeffs, center)
    s = _taylor_scale(coeffs, center)
    return all(abs(t[k]) <= tol * s[k] for k in range(mult))


def _cluster(coeffs: np.ndarray, roots, radius: float, tol: float = 1e-10):
    clusters = [[complex(r)] for r in roots]

    def centre(cl):
        return sum(cl) / len(cl)

    # single linkage at the raw clustering radius
    changed = True
    while changed:
        changed = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                a, b = centre(clusters[i]), centre(clusters[j])
                if abs(a - b) <= radius * max(1.0, abs(a)):
                    clusters[i] = clusters[i] + clusters.pop(j)
                    changed = True
                    break
            if changed:
                break
    # eigenvalues of an m-fold root spread like eps**(1/m); a wider group is
    # accepted only when the Taylor coefficients at its centre certify it,
    # trying the largest candidate group first
    done = []
    pending = sorted(clusters, key=lambda cl: -len(cl))
    while pending:
        seed = pending.pop(0)
        c0 = centre(seed)
        near = sorted(
            (k for k in range(len(pending)) if abs(centre(pending[k]) - c0) <= 1e-2 * max(1.0, abs(c0))),
            key=lambda k: abs(centre(pending[k]) - c0),
        )
        chosen = []
        for m in range(len(near), 0, -1):
            group = seed + [r for k in near[:m] for r in pending[k]]
            if _merge_ok(coeffs, centre(group), len(group), tol):
                chosen = near[:m]
                seed = group
                break
        for k in sorted(chosen, reverse=True):
            pending.pop(k)
        done.append(seed)
    return [(centre(cl), len(cl)) for cl in done]


def _cplx_key(z: complex):
    return (z.real, z.imag)


def poly_roots(p: Polynomial, cluster_radius: float = DELTA_CLUSTER) -> list[RootRecord]:
    """Roots with multiplicities.

    Exact polynomials are split by square-free decomposition first, so their
    multiplicities are exact; each square-free factor is rounded to floating
    point (the rounding is reported as ``conversion_error``) and solved with
    companion-matrix eigenvalues and a Newton polish.  Floating polynomials
    are clustered: roots within ``cluster_radius`` are grouped, and wider
    splinter groups are merged only when the Taylor coefficients at the group
    centre vanish to working precision.
    """
    if p.is_zero:
        raise DomainError("W ≡ 0 means the f_j are linearly dependent; reject (zero polynomial has no roots)")
    if p.degree == 0:
        return []
    full = p.to_float().as_array()
    out = []
    if p.kind == EXACT:
        factors = [(p.monic(), 1)] if is_squarefree(p) else squarefree_decomposition(p)
        for factor, mult in factors:
            fl = factor.to_float().as_array()
            conv = max(
                abs(Fraction(float(c.re)) - c.re) + abs(Fraction(float(c.im)) - c.im)
                for c in factor.coeffs
            )
            scale = max(abs(complex(c)) for c in factor.coeffs)
            conv = float(conv) / scale
            for r in _companion_roots(fl):
                r = _polish(fl, complex(r))
                out.append((r, mult, conv))
    else:
        groups = _cluster(full, _companion_roots(full), cluster_radius)
        out = [(_polish(full, c) if m == 1 else c, m, 0.0) for c, m in groups]
    fp = Polynomial.float(full)
    records = []
    for r, m, conv in out:
        res = abs(fp(r)) + horner_error_bound(fp, r)
        records.append(RootRecord(complex(r), int(m), float(res), float(conv)))
    records.sort(key=lambda rec: (abs(rec.location), _arg(rec.location)))
    return records


def _arg(z: complex) -> float:
    # tiny negative imaginary noise on a positive real root must sort as arg 0
    a = math.atan2(z.imag, z.real)
    a = a if a >= 0 else a + 2 * math.pi
    return 0.0 if a > 2 * math.pi - 1e-12 else a
