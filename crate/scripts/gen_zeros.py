#!/usr/bin/env python3
"""Write the imaginary parts of the first N nontrivial zeros of zeta, one per line.

Zeros are bracketed by sign changes of the Riemann-Siegel Z function on a
fine grid (vectorized float64 evaluation), then refined with mpmath.siegelz.
Refined roots must stay near their brackets and increase strictly, and a
sample of indices is compared with mpmath.zetazero.

Usage: gen_zeros.py N OUT
"""
import math
import sys

import mpmath
import numpy as np

STEP = 0.004
CHUNK = 200_000


def theta(t):
    return t / 2 * np.log(t / (2 * np.pi)) - t / 2 - np.pi / 8 + 1 / (48 * t) + 7 / (5760 * t**3)


def z_approx(t):
    """Riemann-Siegel Z with the leading remainder term."""
    a = np.sqrt(t / (2 * np.pi))
    n_terms = np.floor(a).astype(np.int64)
    p = a - n_terms
    th = theta(t)
    total = np.zeros_like(t)
    for n in range(1, int(n_terms.max()) + 1):
        active = n_terms >= n
        total += np.where(active, np.cos(th - t * math.log(n)) / math.sqrt(n), 0.0)
    den = np.cos(2 * np.pi * p)
    den = np.where(np.abs(den) < 1e-12, 1e-12, den)
    c0 = np.cos(2 * np.pi * (p * p - p - 1 / 16)) / den
    sign = np.where((n_terms - 1) % 2 == 0, 1.0, -1.0)
    return 2 * total + sign * a ** -0.5 * c0


def brackets(t_max):
    out = []
    start = 10.0
    prev_t, prev_z = None, None
    while start < t_max:
        t = start + STEP * np.arange(CHUNK)
        t = t[t <= t_max]
        z = z_approx(t)
        if prev_t is not None:
            t = np.concatenate(([prev_t], t))
            z = np.concatenate(([prev_z], z))
        idx = np.nonzero(np.sign(z[:-1]) * np.sign(z[1:]) < 0)[0]
        out.extend(zip(t[idx], t[idx + 1]))
        prev_t, prev_z = t[-1], z[-1]
        start = prev_t + STEP
    return out


def main():
    n = int(sys.argv[1])
    out = sys.argv[2]
    mpmath.mp.dps = 25
    # the N-th zero lies below the point where the smooth zero count reaches N + 2
    t_max = float(mpmath.findroot(lambda t: mpmath.siegeltheta(t) / mpmath.pi + 1 - (n + 2), 2 * math.pi * n / math.log(n)))
    found = brackets(t_max)
    if len(found) < n:
        sys.exit(f"only {len(found)} sign changes below {t_max}")
    zeros = []
    for lo, hi in found[:n]:
        mid = mpmath.mpf((lo + hi) / 2)
        root = mpmath.findroot(mpmath.siegelz, (mid - STEP, mid + STEP))
        if abs(root - mid) > 0.05:
            sys.exit(f"refined root {root} strayed from the bracket [{lo}, {hi}]")
        if zeros and root - zeros[-1] < mpmath.mpf(10) ** -6:
            sys.exit(f"refined roots {zeros[-1]} and {root} are not increasing")
        zeros.append(root)
    for k in sorted({1, 2, n // 3, n // 2, (2 * n) // 3, n - 1, n}):
        ref = mpmath.zetazero(k).imag
        if abs(ref - zeros[k - 1]) > mpmath.mpf(10) ** -15:
            sys.exit(f"zero #{k}: {zeros[k - 1]} differs from zetazero {ref}")
    with open(out, "w", encoding="utf-8") as fh:
        fh.write(f"# imaginary parts of the first {n} nontrivial zeros of zeta (Riemann-Siegel Z, mpmath dps=25)\n")
        for z in zeros:
            fh.write(mpmath.nstr(z, 18, strip_zeros=False) + "\n")


if __name__ == "__main__":
    main()
