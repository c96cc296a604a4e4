"""Besov, Hardy and H' norms of holomorphic polynomials, fractional derivatives
and Hadamard-lacunary series.

Disk integrals use the product rule of :mod:`dixmier_lab.bergman`: Gauss-Jacobi
in u = r^2 carrying the exact radial weight, uniform in the angle.  The
Mobius-invariant measure is never sampled; for the Besov norm the integrand
((1-|z|^2)|f'|)^p (1-|z|^2)^-2 is folded into a single radial exponent p-2.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import poch

from .bergman import radial_rule, circle_rule

DEFAULT_P_GRID = tuple(1.0 + 2.0**-j for j in range(1, 9))


class PowerSeries:
    """Polynomial f(z) = sum a_k z^k, stored sparsely (exponents, coeffs).

    ``PowerSeries([a0, a1, ...])`` builds from dense coefficients;
    ``PowerSeries.sparse({k: a_k})`` from a mapping.  Zero coefficients are
    dropped, so the dense form always has a nonzero trailing coefficient.
    """

    def __init__(self, coeffs=()):
        c = np.asarray(coeffs, dtype=complex).ravel()
        self._set(np.nonzero(c)[0], c[np.nonzero(c)[0]])

    @classmethod
    def sparse(cls, terms):
        out = cls.__new__(cls)
        items = sorted((int(k), complex(a)) for k, a in dict(terms).items())
        if any(k < 0 for k, _ in items):
            raise ValueError("exponents must be nonnegative")
        exps = np.array([k for k, a in items if a != 0], dtype=np.int64)
        coeffs = np.array([a for _, a in items if a != 0], dtype=complex)
        out._set(exps, coeffs)
        return out

    def _set(self, exps, coeffs):
        self.exponents = np.asarray(exps, dtype=np.int64)
        self.values = np.asarray(coeffs, dtype=complex)
        self.exponents.setflags(write=False)
        self.values.setflags(write=False)

    @property
    def degree(self):
        return int(self.exponents[-1]) if self.exponents.size else 0

    @property
    def coeffs(self):
        out = np.zeros(self.degree + 1, dtype=complex)
        out[self.exponents] = self.values
        return out

    def is_zero(self):
        return self.exponents.size == 0

    def is_constant(self):
        return self.is_zero() or (self.exponents.size == 1 and self.exponents[0] == 0)

    def __eq__(self, other):
        return (
            isinstance(other, PowerSeries)
            and np.array_equal(self.exponents, other.exponents)
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        terms = ", ".join(f"{k}: {a}" for k, a in zip(self.exponents, self.values))
        return f"PowerSeries.sparse({{{terms}}})"

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape, dtype=complex)
        for k, a in zip(self.exponents, self.values):
            out += a * z**k
        return out

    def derivative(self):
        keep = self.exponents > 0
        e = self.exponents[keep]
        return PowerSeries.sparse(dict(zip(e - 1, self.values[keep] * e)))

    def polar(self, r, m):
        """Values on the grid r_i e^{2 pi i j / m}, shape (len(r), m)."""
        r = np.asarray(r, dtype=float)
        if self.is_zero():
            return np.zeros((r.size, m), dtype=complex)
        e = self.exponents
        rad = self.values[None, :] * r[:, None] ** e[None, :]
        ang = np.exp(2j * np.pi * np.outer(e % m, np.arange(m)) / m)
        return rad @ ang

    def divide_by_z(self, k):
        """f / z^k; requires the lowest exponent to be >= k."""
        if self.exponents.size and self.exponents[0] < k:
            raise ValueError("series does not vanish to that order")
        return PowerSeries.sparse(dict(zip(self.exponents - k, self.values)))


def _angular_points(series, minimum):
    # Nyquist: |g|^p of a degree-d polynomial needs well over 2d angles.
    need = max(int(minimum), 4 * series.degree + 8)
    return 1 << int(np.ceil(np.log2(need)))


def besov_integral(f, p, rule_size=128, angular=2048):
    """int_D (1-|z|^2)^(p-2) |f'(z)|^p dA, i.e. ||f||_{B^p}^p."""
    p = float(p)
    if p <= 1:
        raise ValueError("Besov exponent must satisfy p > 1")
    df = f.derivative()
    if df.is_zero():
        return 0.0
    # A zero of order m at the origin goes into the Jacobi weight u^(m p / 2).
    m = int(df.exponents[0])
    g = df.divide_by_z(m)
    u, w = radial_rule(rule_size, p - 2.0, m * p / 2.0)
    M = _angular_points(g, angular)
    vals = np.abs(g.polar(np.sqrt(u), M)) ** p
    return float(np.sum(w * vals.mean(axis=1)))


def besov_norm(f, p, rule_size=128, angular=2048):
    """(int_D (1-|z|^2)^(p-2) |f'|^p dA)^(1/p); zero for constants."""
    return besov_integral(f, p, rule_size, angular) ** (1.0 / float(p))


def besov_norm_from_derivative(df, p, rule_size=128, angular=2048):
    """Besov norm from a callable derivative, for non-polynomial f (e.g. f o phi_a)."""
    p = float(p)
    if p <= 1:
        raise ValueError("Besov exponent must satisfy p > 1")
    u, w = radial_rule(rule_size, p - 2.0)
    zeta = np.exp(2j * np.pi * np.arange(angular) / angular)
    vals = np.abs(df(np.sqrt(u)[:, None] * zeta[None, :])) ** p
    return float(np.sum(w * vals.mean(axis=1))) ** (1.0 / p)


def mobius(a):
    """phi_a(z) = (a - z)/(1 - conj(a) z) and its derivative."""
    a = complex(a)
    if abs(a) >= 1:
        raise ValueError("Mobius parameter must lie in the open disk")
    phi = lambda z: (a - z) / (1 - np.conj(a) * z)  # noqa: E731
    dphi = lambda z: (abs(a) ** 2 - 1) / (1 - np.conj(a) * z) ** 2  # noqa: E731
    return phi, dphi


def hardy_norm(g, p, points=None):
    """||g||_{H^p} for a polynomial g, evaluated on the unit circle.

    For polynomials the p-means over circles of radius r increase with r
    (|g|^p is subharmonic), so the sup is the boundary value.
    """
    p = float(p)
    if p < 1:
        raise ValueError("Hardy exponent must satisfy p >= 1")
    if g.is_zero():
        return 0.0
    M = _angular_points(g, 8192) if points is None else int(points)
    vals = np.abs(g.polar(np.ones(1), M)[0]) ** p
    return float(circle_rule(M).weights @ vals) ** (1.0 / p)


def hprime_norm(h, points=None):
    """||h||_{H'} = int_T |h'| d theta (normalized)."""
    return hardy_norm(h.derivative(), 1.0, points)


def richardson(values, ratio=2.0, order=2):
    """Richardson extrapolation to step 0 from values at steps x, x/ratio, ...

    ``values`` run from coarse to fine; the last ``order + 1`` are used and
    error terms x, x^2, ..., x^order are eliminated.
    """
    v = [float(x) for x in values[-(order + 1):]]
    if len(v) < order + 1:
        raise ValueError("not enough values for the requested order")
    for k in range(1, order + 1):
        f = ratio**k
        v = [(f * v[i + 1] - v[i]) / (f - 1) for i in range(len(v) - 1)]
    return v[0]


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    grid: tuple
    samples: tuple


def besov_limit_info(h, p_grid=DEFAULT_P_GRID, rule_size=128, angular=2048, order=2):
    grid = tuple(sorted((float(p) for p in p_grid), reverse=True))
    if any(p <= 1 for p in grid):
        raise ValueError("p-grid must lie in (1, 2]")
    x = np.array([p - 1 for p in grid])
    if not np.allclose(x[1:] / x[:-1], 0.5):
        raise ValueError("Richardson extrapolation needs a halving grid in p - 1")
    samples = tuple((p - 1) * besov_integral(h, p, rule_size, angular) for p in grid)
    return LimitEstimate(richardson(samples, 2.0, order), grid, samples)


def besov_limit(h, p_grid=DEFAULT_P_GRID, rule_size=128, angular=2048):
    """lim_{p -> 1+} (p-1) ||h||_{B^p}^p by Richardson extrapolation in p-1."""
    return besov_limit_info(h, p_grid, rule_size, angular).value


def sup_norm(h, p_grid=DEFAULT_P_GRID, rule_size=128, angular=2048):
    """max over the grid of (p-1)^(1/p) ||h||_{B^p}."""
    return max((p - 1) ** (1.0 / p) * besov_norm(h, p, rule_size, angular) for p in p_grid)


def power_besov_sup(f, k, p_grid=DEFAULT_P_GRID, rule_size=256, angular=2048):
    """sup over the grid of (p-1) ||f||_{B^{kp}}^{kp}: the D^k functional."""
    return max((p - 1) * besov_integral(f, k * p, rule_size, angular) for p in p_grid)


def frac_derivative(f, t, kind="R"):
    """Fractional derivatives R^t (a_k -> k^t a_k, constant dropped) and
    R^{0,t} (a_k -> Gamma(2) Gamma(2+t+k) / (Gamma(2+t) Gamma(2+k)) a_k)."""
    t = float(t)
    if t < 0:
        raise ValueError("order t must be nonnegative")
    e = f.exponents
    if kind == "R":
        keep = e > 0
        return PowerSeries.sparse(dict(zip(e[keep], f.values[keep] * e[keep].astype(float) ** t)))
    if kind == "R0":
        return PowerSeries.sparse(dict(zip(e, f.values * r0_multiplier(e, t))))
    raise ValueError(f"unknown kind {kind!r}")


def r0_multiplier(k, t):
    """Gamma(2) Gamma(2+t+k) / (Gamma(2+t) Gamma(2+k)); ~ k^t / Gamma(2+t)."""
    k = np.asarray(k, dtype=float)
    return poch(2.0 + k, t) / poch(2.0, t)


@dataclass(frozen=True)
class LacunarySpec:
    """Exponents lambda_0 < lambda_1 < ... with lambda_{n+1} >= c lambda_n."""

    ratio_bound: float
    exponents: tuple

    def __post_init__(self):
        c = float(self.ratio_bound)
        lam = tuple(int(x) for x in self.exponents)
        if c <= 1:
            raise ValueError("Hadamard ratio bound must exceed 1")
        if any(x < 0 for x in lam):
            raise ValueError("exponents must be nonnegative")
        for a, b in zip(lam, lam[1:]):
            if b <= a or b < c * a:
                raise ValueError(f"exponents {a}, {b} violate the Hadamard condition with c={c}")
        object.__setattr__(self, "exponents", lam)

    @classmethod
    def geometric(cls, c, count, start=1):
        return cls(c, tuple(int(round(start * c**n)) for n in range(count)))


def lacunary_series(spec, count):
    """sum_{n<count} z^{lambda_n}."""
    if count > len(spec.exponents):
        raise ValueError("spec has fewer exponents than requested")
    return PowerSeries.sparse({lam: 1.0 for lam in spec.exponents[:count]})
