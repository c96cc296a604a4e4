"""Hankel operators H_f = (I - P_alpha)(f .) on A^{2,alpha} with polynomial symbols.

The Gram matrix G = H_f^* H_f is assembled in the orthonormal monomial basis
e_n = z^n / ||z^n|| from one rule,

    <z^a conj(z)^b, z^c conj(z)^d>_alpha = [a + d == b + c] moment(a + d),

and is banded with bandwidth at most degz + degzbar.  Singular values are the
square roots of its eigenvalues.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.special import gammaln, poch

from .bergman import as_alpha, disk_rule, log_moment_ratio, onb_norm, project_monomial
from .config import TOL


class EigensolverError(RuntimeError):
    """Raised when the banded eigensolver fails to converge."""


@dataclass(frozen=True)
class BidegreeSymbol:
    """Polynomial symbol f(z) = sum b_kl z^k conj(z)^l with complex coefficients.

    ``terms`` maps (k, l) to b_kl.  Zero coefficients are dropped on
    construction, so equal symbols compare equal.
    """

    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (k, l), c in self.terms.items():
            k, l, c = int(k), int(l), complex(c)
            if k < 0 or l < 0:
                raise ValueError(f"negative exponent in term {(k, l)}")
            if c != 0:
                clean[(k, l)] = clean.get((k, l), 0) + c
        clean = {kl: c for kl, c in sorted(clean.items()) if c != 0}
        object.__setattr__(self, "terms", clean)

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    @classmethod
    def conj_of_holomorphic(cls, coeffs):
        """The symbol conj(f) for f(z) = sum coeffs[k] z^k."""
        return cls({(0, k): np.conj(c) for k, c in enumerate(coeffs)})

    @property
    def degz(self):
        return max((k for k, _ in self.terms), default=0)

    @property
    def degzbar(self):
        return max((l for _, l in self.terms), default=0)

    @property
    def bandwidth(self):
        return self.degz + self.degzbar

    def is_zero(self):
        return not self.terms

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        zb = np.conj(z)
        out = np.zeros_like(z)
        for (k, l), c in self.terms.items():
            out = out + c * z**k * zb**l
        return out

    def __add__(self, other):
        if not isinstance(other, BidegreeSymbol):
            other = BidegreeSymbol.constant(other)
        merged = dict(self.terms)
        for kl, c in other.terms.items():
            merged[kl] = merged.get(kl, 0) + c
        return BidegreeSymbol(merged)

    __radd__ = __add__

    def __mul__(self, c):
        return BidegreeSymbol({kl: c * b for kl, b in self.terms.items()})

    __rmul__ = __mul__

    def conj(self):
        return BidegreeSymbol({(l, k): np.conj(c) for (k, l), c in self.terms.items()})

    def dbar(self):
        """The d/d conj(z) derivative, again a polynomial symbol."""
        return BidegreeSymbol({(k, l - 1): l * c for (k, l), c in self.terms.items() if l > 0})


@dataclass(frozen=True, eq=False)
class BandedHermitian:
    """Hermitian band matrix in LAPACK lower storage.

    ``bands[d, j]`` holds G[j + d, j] for 0 <= d <= bandwidth; entries with
    j + d >= dim are padding and are kept at zero.
    """

    bands: np.ndarray

    def __post_init__(self):
        self.bands.setflags(write=False)

    @property
    def dim(self):
        return self.bands.shape[1]

    @property
    def bandwidth(self):
        return self.bands.shape[0] - 1

    def entry(self, m, n):
        if not (0 <= m < self.dim and 0 <= n < self.dim):
            raise IndexError((m, n))
        d = m - n
        if abs(d) > self.bandwidth:
            return 0j
        return complex(self.bands[d, n]) if d >= 0 else complex(np.conj(self.bands[-d, m]))

    def to_dense(self):
        n, b = self.dim, self.bandwidth
        out = np.zeros((n, n), dtype=self.bands.dtype)
        for d in range(b + 1):
            idx = np.arange(n - d)
            out[idx + d, idx] = self.bands[d, : n - d]
            if d:
                out[idx, idx + d] = np.conj(self.bands[d, : n - d])
        return out

    def eigvalsh(self):
        try:
            return scipy.linalg.eigvals_banded(self.bands, lower=True, check_finite=True)
        except np.linalg.LinAlgError as exc:
            raise EigensolverError(f"banded eigensolver did not converge: {exc}") from exc


@dataclass(frozen=True, eq=False)
class SingularSpectrum:
    """Non-increasing nonnegative singular values s_0 >= s_1 >= ..."""

    values: np.ndarray
    source_dim: int | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.ndim != 1:
            raise ValueError("spectrum must be one-dimensional")
        if np.any(v < 0) or np.any(np.diff(v) > 0):
            raise ValueError("spectrum must be nonnegative and non-increasing")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size

    def __getitem__(self, i):
        return self.values[i]

    def __array__(self, dtype=None, copy=None):
        return self.values if dtype is None else self.values.astype(dtype)

    def trusted(self):
        """First half of a truncated spectrum; the tail is contaminated by the cut."""
        if self.source_dim is None:
            return self
        return SingularSpectrum(self.values[: self.source_dim // 2], self.source_dim)


def gram(symbol, alpha, dim):
    """Truncated Gram matrix G[m, n] = <H_f e_m, H_f e_n>, 0 <= m, n < dim.

    Pairs of terms where either factor is holomorphic (l = 0) contribute
    nothing: holomorphic products are fixed by P_alpha.  This makes constants
    and holomorphic parts of the symbol drop out exactly.
    """
    a = as_alpha(alpha)
    dim = int(dim)
    if dim < 1:
        raise ValueError("dim must be positive")
    terms = [(k, l, c) for (k, l), c in symbol.terms.items() if l > 0]
    b = symbol.bandwidth
    bands = np.zeros((b + 1, dim), dtype=complex)
    for k1, l1, c1 in terms:
        for k2, l2, c2 in terms:
            d = (k1 - l1) - (k2 - l2)  # n - m
            if d > 0 or -d >= dim:
                continue
            m = np.arange(-d, dim)
            n = m + d
            norm = -0.5 * log_moment_ratio(n, m, a)
            t1 = np.exp(log_moment_ratio(k1 + m + l2, m, a) + norm)
            j = k1 + m - l1
            ok = j >= 0
            jj = np.where(ok, j, 0)
            t2 = np.exp(
                log_moment_ratio(k1 + m, m, a) + log_moment_ratio(k2 + n, jj, a) + norm
            )
            t = c1 * np.conj(c2) * (t1 - np.where(ok, t2, 0.0))
            bands[-d, n] += t
    if not np.any(bands.imag):
        bands = bands.real.copy()
    return BandedHermitian(bands)


def singular_values(G):
    """Singular values of H from its Gram matrix, sorted non-increasing."""
    ev = G.eigvalsh()
    top = ev.max(initial=0.0)
    if ev.size and ev.min() < -TOL.psd_slack * max(top, np.finfo(float).tiny):
        raise ValueError(f"Gram matrix is not positive semidefinite (min eigenvalue {ev.min():.3e})")
    s = np.sqrt(np.clip(ev, 0.0, None))[::-1]
    return SingularSpectrum(s, G.dim)


def monomial_spectrum(k, alpha, count):
    """Closed-form singular values of H_{conj(z)^k} on A^{2,alpha}.

    s_n^2 = moment(n+k)/moment(n) - moment(n)/moment(n-k) for n >= k and
    moment(n+k)/moment(n) below.  The difference is rewritten as
    r * expm1(d) with d a sum of log1p terms, so no cancellation occurs even
    for n ~ 10^6.
    """
    a = as_alpha(alpha) + 1.0
    k, count = int(k), int(count)
    if k < 1 or count < 1:
        raise ValueError("k and count must be positive")
    n = np.arange(count)
    s2 = np.empty(count)
    lo = n < k
    s2[lo] = np.exp(log_moment_ratio(n[lo] + k, n[lo], a - 1.0))
    nh = n[~lo].astype(float)
    if nh.size:
        d = np.zeros_like(nh)
        for j in range(1, k + 1):
            d += np.log1p(a * k / ((nh + a + j) * (nh - k + j)))
        r = np.exp(log_moment_ratio(n[~lo], n[~lo] - k, a - 1.0))
        s2[~lo] = r * np.expm1(d)
    s = np.sqrt(s2)
    # Monotone in exact arithmetic; sort guards against ulp-level ties.
    return SingularSpectrum(np.sort(s)[::-1])


def m_alpha_diag(n, alpha):
    """Diagonal of M_alpha between the A^2 and A^{2,alpha} orthonormal bases.

    d_n = sqrt(alpha+1) sqrt(B(n+1, alpha+1)) / (sqrt(n+1) B(n+1, alpha/2+1)),
    evaluated as limit * sqrt(R) with R = poch(x, alpha/2) / poch(x+alpha/2, alpha/2),
    x = n+2.  R -> 1, and R == 1 exactly when alpha = 0.
    """
    a = as_alpha(alpha)
    n = np.asarray(n, dtype=float)
    if np.any(n < 0):
        raise ValueError("index must be nonnegative")
    x = n + 2.0
    out = m_alpha_limit(a) * np.sqrt(poch(x, a / 2) / poch(x + a / 2, a / 2))
    return float(out) if out.ndim == 0 else out


def m_alpha_limit(alpha):
    """lim_n d_n = sqrt(alpha+1) sqrt(Gamma(alpha+1)) / Gamma(alpha/2+1)."""
    a = as_alpha(alpha)
    return float(np.exp(0.5 * np.log1p(a) + 0.5 * gammaln(a + 1) - gammaln(a / 2 + 1)))


def m_alpha_summary(alpha, n_max=10**6):
    """sup and limit of d_n next to the constant sqrt(alpha+1)."""
    n = np.unique(np.concatenate([np.arange(min(n_max, 10**4) + 1), np.geomspace(1, n_max, 200).astype(int)]))
    d = m_alpha_diag(n, alpha)
    a = as_alpha(alpha)
    return {
        "sup": float(d.max()),
        "argsup": int(n[np.argmax(d)]),
        "value_at_n_max": float(m_alpha_diag(n_max, alpha)),
        "limit": m_alpha_limit(alpha),
        "sqrt_alpha_plus_1": float(np.sqrt(a + 1)),
    }


def gram_by_quadrature(symbol, alpha, dim, radial=64, angular=None):
    """Dense Gram matrix from disk quadrature, independent of the moment rule.

    f e_m is sampled directly and P_alpha(f e_m) is built term by term from
    ``project_monomial``; both inner products then go through ``disk_rule``.
    """
    a = as_alpha(alpha)
    dim = int(dim)
    deg = symbol.degz + symbol.degzbar + dim
    M = angular or 1 << int(np.ceil(np.log2(4 * deg + 8)))
    rule = disk_rule(max(radial, deg + 2), M, a)
    z = rule.points
    zb = np.conj(z)
    F = np.zeros((dim, z.size), dtype=complex)
    PF = np.zeros_like(F)
    for m in range(dim):
        nm = onb_norm(m, a)
        for (k, l), c in symbol.terms.items():
            F[m] += c * z ** (k + m) * zb**l / nm
            d, r = project_monomial(l, k + m, a)
            PF[m] += c * r * z**d / nm
    W = (a + 1.0) * rule.weights
    return (F * W) @ F.conj().T - (PF * W) @ PF.conj().T
