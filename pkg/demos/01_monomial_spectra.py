# %% [markdown]
# Hankel operators with symbol conj(z)^k on weighted Bergman spaces.
#
# The Gram matrix H^*H is diagonal in the monomial basis, so the singular
# values have a closed form.  Their partial sums grow like ln N, and the
# slope is k sqrt(alpha+1).

# %%
import numpy as np

from dixmier_lab import BidegreeSymbol, gram, monomial_spectrum, singular_values, trace_slope

# %%
s = monomial_spectrum(1, 0.0, 8)
print("first singular values, k=1, alpha=0:", np.round(s.values, 6))
print("1/sqrt((n+1)(n+2))             :", np.round(1 / np.sqrt(np.arange(1, 9) * np.arange(2, 10)), 6))

# %% The banded eigensolver sees the same numbers.
G = gram(BidegreeSymbol({(0, 2): 1}), 1.0, 256)
eig = singular_values(G).trusted().values
closed = monomial_spectrum(2, 1.0, eig.size).values
print("max |eigensolver - closed form|:", np.abs(eig - closed).max())

# %% Trace slopes on 10^5 values.
for k in (1, 2, 3):
    row = []
    for alpha in (0.0, 0.5, 1.0, 3.0):
        est = trace_slope(monomial_spectrum(k, alpha, 10**5)).value
        row.append(f"{est:7.4f} ({k * np.sqrt(alpha + 1):6.4f})")
    print(f"k={k}: " + "  ".join(row))
