"""Sequence-space functionals for the Macaev ideal and Dixmier trace estimates.

Conventions (fixed here, relied on everywhere):

* ``sigma(a, N)`` sums indices 0..N-1.
* ``macaev_norm`` divides the N-term partial sum by ln(N+1), so N = 1 is
  divided by ln 2.  ``convention="ln N"`` gives sup_{N>=2} sigma_N / ln N
  instead.

The Dixmier functional itself is not computable.  ``trace_slope`` and
``trace_zeta`` are deterministic surrogates: when sigma_N / ln N has a limit
both converge to it and agree.
"""

from dataclasses import dataclass, field

import numpy as np

from .config import TOL

DEFAULT_S_GRID = tuple(1.0 + 2.0**-j for j in range(13))


@dataclass(frozen=True, eq=False)
class NullSequence:
    """Finite truncation of a sequence tending to zero."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if not np.all(np.isfinite(v)):
            raise ValueError("sequence entries must be finite")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class TraceEstimate:
    value: float
    method: str
    window: tuple
    residual: float
    diagnostics: dict = field(default_factory=dict)


def _values(a):
    if isinstance(a, NullSequence):
        return a.values
    return np.asarray(a, dtype=float).ravel()


def rearrange(a):
    """Decreasing rearrangement a* of |a|."""
    return np.sort(np.abs(_values(a)))[::-1]


def partial_sums(a):
    """sigma_N for N = 1..len(a); sequential summation, reproducible."""
    return np.cumsum(_values(a))


def sigma(a, N):
    """sum_{k<N} a_k for an already non-increasing nonnegative sequence."""
    v = _values(a)
    if not 1 <= N <= v.size:
        raise ValueError(f"N={N} outside 1..{v.size}")
    return float(np.sum(v[:N]))


def macaev_norm(a, convention="ln(N+1)"):
    """sup over N of sigma_N(a*) / ln(N+1)  (or / ln N for N >= 2)."""
    s = partial_sums(rearrange(a))
    if s.size == 0:
        return 0.0
    N = np.arange(1, s.size + 1, dtype=float)
    if convention == "ln(N+1)":
        return float(np.max(s / np.log1p(N)))
    if convention == "ln N":
        if s.size < 2:
            raise ValueError("the ln N convention needs at least two entries")
        return float(np.max(s[1:] / np.log(N[1:])))
    raise ValueError(f"unknown convention {convention!r}")


def _check_s(s):
    s = float(s)
    if not 1.0 < s <= 2.0:
        raise ValueError(f"s must lie in (1, 2], got {s}")
    return s


def zeta_norm(a, s_grid=DEFAULT_S_GRID):
    """max over the grid of ((s-1) sum |a_k|^s)^(1/s), on the raw truncation."""
    grid = [_check_s(s) for s in s_grid]
    if not grid:
        raise ValueError("s-grid must be nonempty")
    v = np.abs(_values(a))
    v = v[v > 0]
    if v.size == 0:
        return 0.0
    # Factor out the max so the powers stay in range.
    top = v.max()
    w = v / top
    return float(max(top * ((s - 1.0) * np.sum(w**s)) ** (1.0 / s) for s in grid))


@dataclass(frozen=True)
class PowerTail:
    """Fit a_n ~ c n^-gamma (n 1-based) over the last decade of a sequence."""

    c: float
    gamma: float
    rms: float
    reliable: bool


def power_tail(a, decade=10.0):
    v = np.abs(_values(a))
    L = v.size
    start = int(L // decade)
    n = np.arange(start + 1, L + 1, dtype=float)
    tail = v[start:]
    if tail.size < 8 or np.any(tail <= 0):
        return PowerTail(0.0, 0.0, np.inf, False)
    x, y = np.log(n), np.log(tail)
    slope, icept = np.polyfit(x, y, 1)
    rms = float(np.sqrt(np.mean((y - (slope * x + icept)) ** 2)))
    return PowerTail(float(np.exp(icept)), float(-slope), rms, rms <= TOL.tail_fit_rms)


@dataclass(frozen=True)
class ZetaSum:
    value: float
    raw: float
    tail: float
    tail_known: bool


def zeta_sum_info(a, s, tail=True, fit=None):
    """sum |a_k|^s plus, when the tail is a clean power law, its integral estimate.

    The tail beyond n = L is approximated by int_{L+1/2}^inf c^s x^{-gamma s} dx,
    the midpoint form of Euler-Maclaurin.
    """
    s = float(s)
    if s <= 1:
        raise ValueError("zeta sums need s > 1")
    v = np.abs(_values(a))
    raw = float(np.sum(v**s))
    if not tail or raw == 0.0:
        return ZetaSum(raw, raw, 0.0, raw == 0.0)
    if fit is None:
        fit = power_tail(v)
    gs = fit.gamma * s
    if not fit.reliable or gs <= 1:
        return ZetaSum(raw, raw, 0.0, False)
    L = v.size
    t = fit.c**s * (L + 0.5) ** (1.0 - gs) / (gs - 1.0)
    return ZetaSum(raw + t, raw, float(t), True)


def zeta_sum(a, s, tail=True):
    """zeta_a(s) = sum |a_k|^s with tail correction (see ``zeta_sum_info``)."""
    return zeta_sum_info(a, s, tail).value


def _spectrum_values(s, min_len=64):
    v = _values(s)
    if v.size < min_len:
        raise ValueError(f"spectrum needs at least {min_len} values, got {v.size}")
    return v


def trace_slope(s, points=32):
    """Least-squares slope of sigma_N against ln N, N geometric on [L/4, L]."""
    v = _spectrum_values(s)
    L = v.size
    S = partial_sums(v)
    N = np.unique(np.geomspace(L // 4, L, points).round().astype(int))
    x, y = np.log(N), S[N - 1]
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, icept), *_ = np.linalg.lstsq(A, y, rcond=None)
    resid = float(np.sqrt(np.mean((A @ [slope, icept] - y) ** 2)))
    return TraceEstimate(float(slope), "slope-fit", (int(N[0]), int(N[-1])), resid, {"intercept": float(icept)})


def trace_zeta(s, scales=(1.0, 0.75, 0.5)):
    """Extrapolate (s-1) zeta(s) to s = 1 from s = 1 + 1/ln(L^q), q in ``scales``.

    The fit is linear in (s-1) on log((s-1) zeta(s)): for s_n ~ c/n the
    log removes the c^s curvature, so the straight line is accurate.
    Residual is the change in the extrapolated value when the coarsest point
    is dropped.
    """
    v = _spectrum_values(s)
    L = v.size
    x = np.array([1.0 / (q * np.log(L)) for q in scales])
    fit = power_tail(v)
    info = [zeta_sum_info(v, 1.0 + xi, fit=fit) for xi in x]
    vals = np.array([xi * z.value for xi, z in zip(x, info)])
    window = (float(1 + x.min()), float(1 + x.max()))
    diag = {"s": (1 + x).tolist(), "values": vals.tolist(), "tail_known": all(z.tail_known for z in info)}
    if np.all(vals == 0):
        return TraceEstimate(0.0, "zeta-window", window, 0.0, diag)
    y = np.log(vals)
    full = np.polyfit(x, y, 1)
    fine = np.polyfit(x[:2], y[:2], 1)
    value = float(np.exp(full[1]))
    return TraceEstimate(value, "zeta-window", window, float(abs(np.exp(fine[1]) - value)), diag)


@dataclass(frozen=True)
class SandwichReport:
    upper_sigma: float
    lower_sigma: float
    upper_zeta: float
    lower_zeta: float
    checks: dict
    slack: float
    window: tuple = ()

    @property
    def passed(self):
        return all(self.checks.values())


def _extended_partial_sum(S, fit, n):
    """sigma_n for n > L using the fitted tail c x^-gamma (midpoint integral)."""
    L = S.size
    if n <= L:
        return S[n - 1]
    g, c = fit.gamma, fit.c
    a, b = L + 0.5, n + 0.5
    add = c * np.log(b / a) if abs(g - 1) < 1e-12 else c * (b ** (1 - g) - a ** (1 - g)) / (1 - g)
    return S[-1] + add


def sandwich_check(a, slack=TOL.sandwich_slack, window=0.5, points=16, extend=True):
    """Windowed check of the e / e^-1 sandwich between sigma_N/ln N and (s-1) zeta(s).

    Both sides are read off the same object: the sequence itself, continued by
    its fitted power-law tail when that tail is reliable and summable on the
    whole s-window (the same continuation ``zeta_sum`` uses).  The sigma
    window is N in [window*L, L], or [window*L, L^2] on the continued
    sequence; the zeta window is s = 1 + 1/ln N over the same N, read as
    ((s-1) zeta(s))^(1/s).  The 1/s power leaves the limits as s -> 1 alone
    but removes the c^(s-1) drift of c/n sequences at finite s, so the
    comparison is scale invariant.  Checks

        L_zeta <= U_sigma (1+eps),  U_sigma <= e U_zeta (1+eps),
        L_sigma >= e^-1 L_zeta (1-eps).
    """
    v = rearrange(a)
    L = v.size
    lo = max(2, int(window * L))
    if L < 4 or lo >= L:
        raise ValueError("sequence too short for the sandwich window")
    S = partial_sums(v)
    fit = power_tail(v)
    hi = L
    if extend and fit.reliable and fit.gamma * (1.0 + 1.0 / np.log(float(L) ** 2)) > 1:
        hi = L**2
    N = np.unique(np.geomspace(lo, hi, 4 * points).round().astype(np.int64))
    ratio = np.array([_extended_partial_sum(S, fit, n) for n in N]) / np.log(N)
    Ns = np.geomspace(lo, hi, points)
    zs = np.empty(Ns.size)
    for i, n in enumerate(Ns):
        sv = 1.0 + 1.0 / np.log(n)
        zs[i] = ((sv - 1.0) * zeta_sum_info(v, sv, tail=hi > L, fit=fit).value) ** (1.0 / sv)
    U_s, L_s = float(ratio.max()), float(ratio.min())
    U_z, L_z = float(zs.max()), float(zs.min())
    checks = {
        "lower_zeta_le_upper_sigma": L_z <= U_s * (1 + slack),
        "upper_sigma_le_e_upper_zeta": U_s <= np.e * U_z * (1 + slack),
        "lower_sigma_ge_inv_e_lower_zeta": L_s >= L_z / np.e * (1 - slack),
    }
    return SandwichReport(U_s, L_s, U_z, L_z, checks, slack, (int(lo), int(hi)))


def oscillation(a, lo_exponent=0.5):
    """max/min of sigma_N / ln N over N in [L^lo_exponent, L]; 1 for a clean limit."""
    v = rearrange(a)
    S = partial_sums(v)
    L = v.size
    N = np.arange(max(2, int(L**lo_exponent)), L + 1)
    r = S[N - 1] / np.log(N)
    if r.min() <= 0:
        return np.inf
    return float(r.max() / r.min())
