# %% [markdown]
# Besov norms near p = 1 and a lacunary example.
#
# (p-1) ||h||_{B^p}^p tends to the H' norm of h as p -> 1+.  For h = z this
# is exactly 1 at every p, which pins down the quadrature.

# %%
import numpy as np

from dixmier_lab.spaces import (
    DEFAULT_P_GRID,
    LacunarySpec,
    PowerSeries,
    besov_limit_info,
    hprime_norm,
    power_besov_sup,
)

# %%
for coeffs in ([0, 1], [0, 0, 1], [0, 1, 0.5], [0, -1, 0, 1]):
    h = PowerSeries(coeffs)
    info = besov_limit_info(h)
    print(f"{coeffs}: samples {np.round(info.samples[-3:], 5)} limit {info.value:.6f}  H' {hprime_norm(h):.6f}")

# %% [markdown]
# Lacunary series sum z^(2^n).  With unit coefficients the D^2 functional
# grows with the truncation level, since every z^lambda already costs about
# lambda.  Damping the coefficients by lambda^(-1/2) keeps it bounded.

# %%
spec = LacunarySpec.geometric(2, 13)
for M in (4, 8, 12):
    lam = spec.exponents[: M + 1]
    plain = PowerSeries.sparse({l: 1.0 for l in lam})
    damped = PowerSeries.sparse({l: l**-0.5 for l in lam})
    print(f"M={M:2d}: unit {power_besov_sup(plain, 2, DEFAULT_P_GRID):10.3f}   damped {power_besov_sup(damped, 2, DEFAULT_P_GRID):.4f}")
