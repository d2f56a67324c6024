"""Oracle for the bootstrap std_h of an IID Gaussian series, N = 30,000.

std_h is the sample std over scramble iterations of each iteration's mean
local h (overlapping windows). Computed with numpy sliding windows; the
permutation stream is numpy's, not the C++ one, so only the magnitude is
comparable.
"""
import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def mean_local_h(x, n):
    w = sliding_window_view(x, n)
    dev = w - w.mean(axis=1, keepdims=True)
    z = np.cumsum(dev, axis=1)
    r = z.max(axis=1) - z.min(axis=1)
    s = w.std(axis=1)
    return float(np.mean(np.log(r / s) / np.log(n)))


def main():
    rng = np.random.default_rng(777)
    for rep in range(3):
        x = rng.standard_normal(30_000)
        for n in (10, 20):
            means = [mean_local_h(rng.permutation(x), n) for _ in range(300)]
            print(f"series={rep} n={n} std_h={np.std(means, ddof=1):.5f}")


if __name__ == "__main__":
    main()
