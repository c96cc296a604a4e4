# %% [markdown]
# General polynomial symbols.
#
# For f = z + z^2/2 the Hankel operator with symbol conj(f) should have slope
# sqrt(alpha+1) times the H' norm of f, here 4/pi.  For the symbol |z|^2 the
# slope is the circle average of |dbar f| = |z|, i.e. 1.

# %%
import numpy as np

from dixmier_lab import hprime_norm, parse_symbol, trace_slope
from dixmier_lab.experiments import antiholomorphic, circle_mean_abs, hankel_spectrum
from dixmier_lab.parser import parse_power_series

# %%
f = parse_power_series("z + 0.5*z^2")
print("H' norm of f:", hprime_norm(f), " 4/pi =", 4 / np.pi)

for alpha in (0.0, 1.0):
    s = hankel_spectrum(antiholomorphic(f), alpha, 8192)
    print(f"alpha={alpha}: slope {trace_slope(s).value:.5f}  expected {np.sqrt(alpha + 1) * hprime_norm(f):.5f}")

# %%
g = parse_symbol("z*w").symbol
s = hankel_spectrum(g, 0.0, 8192)
print("|z|^2: slope", trace_slope(s).value, " circle mean of |dbar g|:", circle_mean_abs(g.dbar()))

# %% The truncation cut only damages the tail, which is why half is kept.
from dixmier_lab import gram, singular_values

full = singular_values(gram(antiholomorphic(f), 0.0, 1024)).values
ref = singular_values(gram(antiholomorphic(f), 0.0, 4096)).values[:1024]
err = np.abs(full - ref) / ref
print("rel error, first half:", err[:512].max(), " second half:", err[512:].max())
