"""Closed-form arithmetic on the weighted Bergman spaces A^{2,alpha} of the disk.

Measures are normalized: dA has total mass one on the unit disk and
dA_alpha = (alpha+1)(1-|z|^2)^alpha dA is a probability measure.  The
monomials z^n are orthogonal in A^{2,alpha} with

    ||z^n||^2 = (alpha+1) B(n+1, alpha+1) =: moment(n, alpha).

All Beta/Gamma ratios go through log-Gamma differences, or through short
products when the two indices differ by a small integer, so that indices of
order 10^6 do not overflow.
"""

from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln, roots_jacobi


@dataclass(frozen=True)
class WeightParam:
    """Weight exponent of dA_alpha; must satisfy alpha > -1."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not np.isfinite(a) or a <= -1.0:
            raise ValueError(f"weight exponent must satisfy alpha > -1, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    def __float__(self):
        return self.alpha


def as_alpha(alpha):
    """Return ``alpha`` as a validated float (accepts float or WeightParam)."""
    if isinstance(alpha, WeightParam):
        return alpha.alpha
    return WeightParam(alpha).alpha


def log_moment(j, alpha):
    """log of int |z|^{2j} dA_alpha, vectorized over ``j``."""
    a = as_alpha(alpha)
    j = np.asarray(j, dtype=float)
    if np.any(j < 0):
        raise ValueError("moment index must be nonnegative")
    return np.log1p(a) + gammaln(j + 1.0) + gammaln(a + 1.0) - gammaln(j + a + 2.0)


def moment(j, alpha):
    """int |z|^{2j} dA_alpha = (alpha+1) B(j+1, alpha+1)."""
    out = np.exp(log_moment(j, alpha))
    return float(out) if np.ndim(out) == 0 else out


def log_moment_ratio(a, b, alpha):
    """log(moment(a)/moment(b)) for integer ``a``, ``b`` close to each other.

    Uses moment(j+1)/moment(j) = (j+1)/(j+alpha+2), so the ratio is a product
    of |a-b| factors and stays accurate to a few ulps for large indices.
    """
    al = as_alpha(alpha)
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    a, b = np.broadcast_arrays(a, b)
    if np.any(a < 0) or np.any(b < 0):
        raise ValueError("moment index must be nonnegative")
    lo = np.minimum(a, b).astype(float)
    d = np.abs(a - b)
    out = np.zeros(a.shape, dtype=float)
    for i in range(1, int(d.max(initial=0)) + 1):
        step = np.log1p(-(al + 1.0) / (lo + al + 1.0 + i))
        out += np.where(i <= d, step, 0.0)
    return np.where(a >= b, out, -out)


def moment_ratio(a, b, alpha):
    """moment(a, alpha) / moment(b, alpha) for nearby integer indices."""
    out = np.exp(log_moment_ratio(a, b, alpha))
    return float(out) if np.ndim(out) == 0 else out


def onb_norm(n, alpha):
    """||z^n|| in A^{2,alpha}; e_n = z^n / onb_norm(n) is the orthonormal basis."""
    out = np.exp(0.5 * log_moment(n, alpha))
    return float(out) if np.ndim(out) == 0 else out


def project_monomial(k, m, alpha):
    """Bergman projection of conj(z)^k z^m.

    Returns ``(degree, coeff)`` with P_alpha(conj(z)^k z^m) = coeff * z^degree.
    When m < k the projection vanishes and ``(0, 0.0)`` is returned.
    """
    if k < 0 or m < 0:
        raise ValueError("exponents must be nonnegative")
    if m < k:
        return 0, 0.0
    return m - k, moment_ratio(m, m - k, alpha)


def kernel_eval(z, w, alpha):
    """Reproducing kernel K_alpha(z, w) = (1 - z conj(w))^{-(2+alpha)}."""
    a = as_alpha(alpha)
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    if np.any(np.abs(z) >= 1) or np.any(np.abs(w) >= 1):
        raise ValueError("kernel arguments must lie in the open unit disk")
    out = (1.0 - z * np.conj(w)) ** (-(2.0 + a))
    return complex(out) if out.ndim == 0 else out


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Immutable quadrature rule on the circle or the disk.

    ``integrate(g)`` returns sum(weights * g(points)).  For the circle the
    weights sum to one (normalized d theta).  For the disk the rule
    integrates g(z) (1-|z|^2)^weight_exponent |z|^(2*origin_exponent) dA.
    """

    kind: str
    points: np.ndarray
    weights: np.ndarray
    weight_exponent: float | None = None
    origin_exponent: float = 0.0

    def __post_init__(self):
        for arr in (self.points, self.weights):
            arr.setflags(write=False)
        if not np.all(np.isfinite(self.weights)):
            raise ValueError("quadrature weights must be finite")

    def __len__(self):
        return self.points.size

    def integrate(self, g):
        vals = g(self.points)
        return np.sum(self.weights * vals)


def circle_rule(points):
    """Uniform rule at the M-th roots of unity, weights 1/M."""
    m = int(points)
    if m < 1:
        raise ValueError("circle rule needs at least one point")
    theta = 2.0 * np.pi * np.arange(m) / m
    return QuadratureRule("circle", np.exp(1j * theta), np.full(m, 1.0 / m))


def radial_rule(n, weight_exponent, origin_exponent=0.0):
    """Gauss-Jacobi nodes/weights in u = r^2 on [0, 1].

    sum(w * g(u)) approximates int_0^1 g(u) (1-u)^beta u^gamma du, exactly
    for polynomials g of degree <= 2n-1.
    """
    beta = float(weight_exponent)
    gam = float(origin_exponent)
    if n < 1:
        raise ValueError("radial rule needs at least one node")
    if beta <= -1 or gam <= -1:
        raise ValueError("radial weight exponents must be > -1")
    x, w = roots_jacobi(int(n), beta, gam)
    u = 0.5 * (1.0 + x)
    w = w * 2.0 ** (-beta - gam - 1.0)
    return u, w


def disk_rule(radial_points, angular_points, weight_exponent, *, origin_exponent=0.0):
    """Product rule for int_D g(z) (1-|z|^2)^beta dA.

    The radial part is Gauss-Jacobi in u = r^2 (dA = du d theta / 2 pi), the
    angular part is uniform.  ``origin_exponent`` gamma folds an extra
    |z|^(2 gamma) into the radial weight, for integrands that vanish like a
    power of |z| at the origin.
    """
    u, wr = radial_rule(radial_points, weight_exponent, origin_exponent)
    m = int(angular_points)
    if m < 1:
        raise ValueError("angular rule needs at least one point")
    zeta = np.exp(2j * np.pi * np.arange(m) / m)
    pts = (np.sqrt(u)[:, None] * zeta[None, :]).ravel()
    wts = np.repeat(wr / m, m)
    return QuadratureRule("weighted-disk", pts, wts, float(weight_exponent), float(origin_exponent))


def inner_product(f, g, alpha, rule):
    """<f, g> in L^{2,alpha} by quadrature; ``rule`` must carry weight exponent alpha."""
    a = as_alpha(alpha)
    if rule.kind != "weighted-disk" or rule.weight_exponent != a or rule.origin_exponent != 0:
        raise ValueError("rule must be a disk rule with weight exponent alpha")
    return (a + 1.0) * rule.integrate(lambda z: f(z) * np.conj(g(z)))
