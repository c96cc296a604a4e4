# %% [markdown]
# Sequence functionals behind the Dixmier trace.
#
# sigma_N / ln N and (s-1) zeta(s) are two windows on the same growth rate.
# When one has a limit the other does too, with the same value.  On dyadic
# block sequences sigma_N / ln N keeps oscillating, yet the two stay within
# the e / e^-1 sandwich.

# %%
import numpy as np

from dixmier_lab import macaev_norm, sandwich_check, trace_slope, trace_zeta, zeta_norm
from dixmier_lab.corpus import build_corpus, flat_blocks
from dixmier_lab.experiments import zeta_norm_constant
from dixmier_lab.macaev import oscillation

# %%
h = 1.0 / np.arange(1, 10**5 + 1)
print("harmonic: slope", trace_slope(h).value, " zeta", trace_zeta(h).value)

# %%
b = flat_blocks(2**18, weight=4.0)
print("flat blocks: oscillation of sigma_N/ln N =", oscillation(b))
print(sandwich_check(b))

# %%
corpus = build_corpus()
ratios = np.array([zeta_norm(m.values) / macaev_norm(m.values) for m in corpus])
print("zeta_norm / macaev_norm over the corpus: min %.4f max %.4f" % (ratios.min(), ratios.max()))
print("majorization bound sup_s ((s-1) zeta(s))^(1/s) =", zeta_norm_constant())
