# Inverse power sums and the truncated log.
#
# A polynomial with constant term 1 is fixed by its first few inverse power
# sums.  If no root lies in a disk of radius M, the log of the polynomial at
# |t| < M is well approximated by a short prefix of those sums.

from __future__ import annotations

import numpy as np

from bigcp.series import (
    coeffs_from_power_sums,
    evaluate_truncated,
    power_sums_from_coeffs,
    taylor_order,
)

# %% (1 + z)(1 + 2z): roots -1 and -1/2
e = np.array([1, 3, 2])
p = power_sums_from_coeffs(e, 6)
print("p_1..p_6 =", p.real)          # sum of (-1)^-j + (-1/2)^-j
print("back to e:", coeffs_from_power_sums(p[:2]).real)

# %% a random cubic with all roots outside the unit disk
rng = np.random.default_rng(0)
zeta = rng.uniform(1.5, 3, 3) * np.exp(1j * rng.uniform(-np.pi, np.pi, 3))
e = np.poly(1 / zeta)                # ascending coefficients of prod(1 - z/zeta)
t = 0.9 * np.exp(0.3j)
exact = np.prod(1 - t / zeta)

for eps in (1e-1, 1e-3, 1e-6):
    m = taylor_order(t, 1.5, 3, eps)
    est = evaluate_truncated(1, power_sums_from_coeffs(e, m), t).value
    print(f"eps={eps:g}  m={m:3d}  |log(est/exact)| = {abs(np.log(est / exact)):.2e}")
