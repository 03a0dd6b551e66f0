"""Wronskians: exact polynomial, in-family structured, and pointwise matrices."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import NoDeepZeroError
from .poly import EXACT, Polynomial
from .structured import POINT_TOL, StructuredFunction, StructuredTerm, as_structured

DEFAULT_TOL_RANK = 1e-8
MAX_TERM_CHOICES = 256


def cofactor_det(matrix: Sequence[Sequence], simplify=None):
    """Determinant by Laplace expansion along successive rows.

    Works over any commutative ring whose elements support ``+``, ``-`` and
    ``*``.  Minors are memoised by their column set, and the expansion order
    is fixed, so results are reproducible term for term.  ``simplify`` is
    applied to every minor when given.
    """
    n = len(matrix)
    memo: dict[tuple[int, ...], object] = {}

    def minor(cols: tuple[int, ...]):
        if cols in memo:
            return memo[cols]
        row = n - len(cols)
        if len(cols) == 1:
            out = matrix[row][cols[0]]
        else:
            out = None
            for idx, j in enumerate(cols):
                term = matrix[row][j] * minor(cols[:idx] + cols[idx + 1:])
                if out is None:
                    out = term
                elif idx % 2:
                    out = out - term
                else:
                    out = out + term
        if simplify is not None:
            out = simplify(out)
        memo[cols] = out
        return out

    return minor(tuple(range(n)))


def _derivative_rows(f, n: int, simplify=None) -> list:
    rows = [f]
    for _ in range(n):
        nxt = rows[-1].derivative()
        rows.append(simplify(nxt) if simplify else nxt)
    return rows


def wronskian_exact(ps: Sequence[Polynomial]) -> Polynomial:
    """Wronskian of polynomials over their own scalar ring (exact for exact input)."""
    if not ps:
        raise ValueError("need at least one polynomial")
    n = len(ps) - 1
    cols = [_derivative_rows(p, n) for p in ps]
    matrix = [[cols[j][k] for j in range(n + 1)] for k in range(n + 1)]
    return cofactor_det(matrix)


def _same_shape(a: StructuredTerm, b: StructuredTerm) -> bool:
    if not a.measure.is_close(b.measure) or len(a.powers) != len(b.powers):
        return False
    return all(e == f and abs(p - q) <= POINT_TOL for (p, e), (q, f) in zip(a.powers, b.powers))


def proportional_terms(a: StructuredTerm, b: StructuredTerm, rtol: float = 1e-12) -> bool:
    """True when ``a = c * b`` for a constant ``c`` (same measure, same special factors)."""
    if not _same_shape(a, b) or a.core.degree != b.core.degree:
        return False
    x, y = a.core.as_array(), b.core.as_array()
    cross = x * y[-1] - y * x[-1]
    return float(np.max(np.abs(cross))) <= rtol * float(np.max(np.abs(x))) * float(np.max(np.abs(y)))


def _direct_structured(fs: Sequence[StructuredFunction]) -> StructuredFunction:
    n = len(fs) - 1
    collect = StructuredFunction.collect
    cols = [_derivative_rows(f, n, collect) for f in fs]
    matrix = [[cols[j][k] for j in range(n + 1)] for k in range(n + 1)]
    return cofactor_det(matrix, collect)


def wronskian_structured(fs: Sequence) -> StructuredFunction:
    """Wronskian inside the rational-times-singular-inner family.

    The determinant is expanded multilinearly over the collected terms of each
    input.  A choice of terms with two proportional columns has an identically
    vanishing Wronskian and is skipped, so for instance replacing ``f_k`` by a
    combination ``sum lambda_j f_j`` returns ``lambda_k W`` term for term
    instead of relying on pointwise cancellation.  Every derivative and minor
    is passed through :meth:`StructuredFunction.collect`, so like terms (same
    singular measure) are merged before they can cancel near an atom.
    """
    fs = [as_structured(f).collect() for f in fs]
    if not fs:
        raise ValueError("need at least one function")
    blocks = [f.terms for f in fs]
    if any(not b for b in blocks):
        return StructuredFunction()
    if math.prod(len(b) for b in blocks) > MAX_TERM_CHOICES:
        return _direct_structured(fs)
    out = StructuredFunction()
    for choice in itertools.product(*blocks):
        if any(proportional_terms(choice[i], choice[j]) for i in range(len(choice)) for j in range(i)):
            continue
        out = out + _direct_structured([StructuredFunction([t]) for t in choice])
    return out.collect()


def wronskian(fs: Sequence):
    """Dispatch to the exact engine for polynomials, the structured engine otherwise."""
    if all(isinstance(f, Polynomial) for f in fs):
        kinds = {f.kind for f in fs}
        if len(kinds) == 1:
            return wronskian_exact(fs)
        return wronskian_exact([f.to_float() for f in fs])
    return wronskian_structured(fs)


@dataclass(frozen=True)
class WronskianMatrix:
    """``entries[k, j] = f_j^{(k)}(point)``."""

    entries: np.ndarray
    point: complex
    order: int

    @property
    def determinant(self) -> complex:
        return complex(np.linalg.det(self.entries))

    @property
    def singular_values(self) -> np.ndarray:
        return np.linalg.svd(self.entries, compute_uv=False)

    @property
    def gap(self) -> float:
        """Smallest over largest singular value (0 for an exactly singular matrix)."""
        s = self.singular_values
        return float(s[-1] / s[0]) if s[0] > 0 else 0.0

    def hadamard_bound(self) -> float:
        return float(np.prod(np.linalg.norm(self.entries, axis=0)))


def _as_function(f):
    if isinstance(f, (int, float, complex, np.number)):
        return Polynomial.constant(complex(f))
    return f


def derivative_values(f, z: complex, n: int) -> list[complex]:
    """``[f(z), f'(z), ..., f^{(n)}(z)]`` using in-family derivatives."""
    f = _as_function(f)
    if not hasattr(f, "derivative"):
        raise TypeError(f"{type(f).__name__} does not provide in-family derivatives")
    if isinstance(f, Polynomial) and f.kind == EXACT:
        f = f.to_float()
    out = []
    g = f
    for k in range(n + 1):
        out.append(complex(g(complex(z))))
        if k < n:
            g = g.derivative()
            if isinstance(g, StructuredFunction):
                g = g.collect()
    return out


def wronskian_matrix_at(fs: Sequence, z: complex, n: int | None = None) -> WronskianMatrix:
    if n is None:
        n = len(fs) - 1
    cols = [derivative_values(f, z, n) for f in fs]
    entries = np.array(cols, dtype=complex).T
    return WronskianMatrix(entries, complex(z), n)


@dataclass(frozen=True)
class CoefficientVector:
    """Coefficients of a nontrivial combination, scaled so the largest entry is 1."""

    lambdas: tuple
    gap: float = field(default=float("nan"), compare=False)
    residual: float = field(default=float("nan"), compare=False)

    def __post_init__(self):
        lam = tuple(complex(c) for c in self.lambdas)
        if not sum(abs(c) for c in lam) > 0:
            raise ValueError("coefficient vector must be nontrivial (sum |lambda_j| > 0)")
        object.__setattr__(self, "lambdas", lam)

    def __len__(self):
        return len(self.lambdas)

    def __iter__(self):
        return iter(self.lambdas)

    def __getitem__(self, k):
        return self.lambdas[k]

    @classmethod
    def normalized(cls, values, **kw) -> "CoefficientVector":
        v = np.asarray(values, dtype=complex)
        k = int(np.argmax(np.abs(v)))
        v = v / v[k]
        v[k] = 1.0
        return cls(tuple(v), **kw)

    def to_json(self) -> list:
        return [[c.real, c.imag] for c in self.lambdas]


def nullspace_coefficients(m: WronskianMatrix, tol_rank: float = DEFAULT_TOL_RANK) -> CoefficientVector:
    """Kernel direction of a (numerically) singular Wronskian matrix."""
    a = m.entries
    _, s, vh = np.linalg.svd(a)
    gap = float(s[-1] / s[0]) if s[0] > 0 else 0.0
    if s[0] > 0 and s[-1] > tol_rank * s[0]:
        raise NoDeepZeroError(
            f"Wronskian matrix at {m.point} is nonsingular (gap {gap:.3e} > {tol_rank:.1e}); no deep zero here",
            gap,
        )
    v = vh[-1].conj()
    lam = CoefficientVector.normalized(v)
    residual = float(np.linalg.norm(a @ np.array(lam.lambdas)))
    return CoefficientVector(lam.lambdas, gap=gap, residual=residual)


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    exact: bool
    max_ratio: float | None = None

    def __bool__(self):
        return self.independent


def independence_check(fs: Sequence, n_points: int = 32, seed: int = 0, threshold: float = 1e-10) -> IndependenceVerdict:
    """Decide linear independence through the Wronskian.

    Exact polynomial inputs get an exact decision.  Anything else is sampled
    at pseudo-random interior points and declared dependent only if
    ``|W| <= threshold * (Hadamard bound)`` at every sample.
    """
    fs = [_as_function(f) for f in fs]
    if all(isinstance(f, Polynomial) and f.kind == EXACT for f in fs):
        return IndependenceVerdict(not wronskian_exact(fs).is_zero, True)
    rng = np.random.default_rng(seed)
    rad = 0.9 * np.sqrt(rng.random(n_points))
    ang = 2 * np.pi * rng.random(n_points)
    pts = rad * np.exp(1j * ang)
    worst = 0.0
    for z in pts:
        m = wronskian_matrix_at(fs, complex(z))
        h = m.hadamard_bound()
        ratio = abs(m.determinant) / h if h > 0 else 0.0
        worst = max(worst, ratio)
    return IndependenceVerdict(worst > threshold, False, worst)
