"""Synthetic corpus of decreasing null sequences for the Macaev-ideal checks.

Four families, 100 members in all:

* ``power``     c (n+1)^-gamma, gamma in [1, 3]
* ``harmonic``  c/(n+1) exactly (the members with a genuine Dixmier limit c)
* ``log``       harmonic sequences with logarithmic corrections
* ``block``     dyadic-block sequences whose sigma_N / ln N keeps oscillating

Blocks are [b^(2^j), b^(2^(j+1))).  ``block`` members are c_j/(k+1) with c_j
alternating between 1 and r over blocks, then rearranged; ``flat`` block
members are constant on each block, which pushes the oscillation of
sigma_N / ln N past a factor 1.5.
"""

from dataclasses import dataclass

import numpy as np

from .macaev import rearrange


@dataclass(frozen=True, eq=False)
class CorpusMember:
    name: str
    family: str
    values: np.ndarray
    # Dixmier limit when sigma_N / ln N converges, else None.
    limit: float | None = None


def _block_index(L, base):
    k = np.arange(L)
    j = np.zeros(L, dtype=int)
    i = 0
    while base ** (2**i) < L:
        j[k >= base ** (2**i)] = i
        i += 1
    return k, j


def alternating_blocks(L, ratio, phase=0, base=2):
    k, j = _block_index(L, base)
    c = np.where((j + phase) % 2 == 0, 1.0, ratio)
    return rearrange(c / (k + 1.0))


def flat_blocks(L, weight=1.0, base=2, phase=0):
    """Constant on each block, block j carrying total mass ~ w_j 2^j."""
    k, j = _block_index(L, base)
    edges = np.array([float(base) ** (2 ** (i + 1)) for i in range(j.max() + 1)])
    w = np.where((np.arange(j.max() + 1) + phase) % 2 == 0, 1.0, weight)
    v = w[j] * 2.0 ** j / edges[j]
    v[0] = max(v[0], 1.0)
    return np.minimum.accumulate(v)


def build_corpus(power_len=10**5, block_len=2**18):
    out = []
    n = np.arange(power_len, dtype=float)
    for g in np.linspace(1.0, 3.0, 20):
        for c in (0.5, 2.0):
            out.append(CorpusMember(f"power-g{g:.3f}-c{c}", "power", c * (n + 1) ** -g, c if g == 1.0 else (0.0 if g > 1 else None)))
    for c in (0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 6.0):
        for shift in (0.0, 0.5):
            out.append(CorpusMember(f"harmonic-c{c}-h{shift}", "harmonic", c / (n + 1 + shift), c))
    for b in (0.5, 1.0, 2.0, 4.0, 8.0):
        out.append(CorpusMember(f"log-plus-b{b}", "log", (1 + b / np.log(n + 2)) / (n + 1), 1.0))
    for beta in (0.25, 0.5, 0.75, 1.0, 1.5):
        out.append(CorpusMember(f"log-minus-b{beta}", "log", 1 / ((n + 1) * np.log(n + 2) ** beta), 0.0))
    for beta in (0.5, 1.0, 2.0, 3.0):
        out.append(CorpusMember(f"log-log-b{beta}", "log", (1 + beta * np.log(np.log(n + 3)) / np.log(n + 3)) / (n + 1), 1.0))
    for ratio in (1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0):
        for phase in (0, 1):
            out.append(CorpusMember(f"block-r{ratio}-p{phase}", "block", alternating_blocks(block_len, ratio, phase)))
    for weight in (1.0, 2.0, 4.0):
        for base in (2, 3):
            for phase in (0, 1):
                out.append(CorpusMember(f"flat-w{weight}-b{base}-p{phase}", "flat", flat_blocks(block_len, weight, base, phase)))
    for weight in (0.5, 8.0):
        for phase in (0, 1):
            out.append(CorpusMember(f"flat-w{weight}-b2-p{phase}-x", "flat", flat_blocks(block_len, weight, 2, phase)))
    return out
