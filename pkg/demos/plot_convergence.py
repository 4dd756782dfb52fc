"""
Binomial pairings approaching their Gaussian limit
==================================================

Pair a skewed binomial (p = 0.3) with a few Hermite functions and watch the
error shrink as n grows.
"""

import numpy as np

from demoivre.pairing import convergence_study
from demoivre.probes import HermiteFunction, Indicator

n_values = [64, 256, 1024, 4096]

for m in (0, 2, 3):
    report = convergence_study(0.3, HermiteFunction(m), n_values)
    print(f"h_{m}: errors", np.array2string(np.array(report.errors), precision=3),
          f"slope {report.fitted_slope:.3f}")

# an odd probe against a symmetric law: every pairing vanishes exactly
report = convergence_study(0.5, HermiteFunction(1), n_values)
print("h_1 at p = 1/2:", report.note)

# indicators converge too, but only at the rough rate set by the jumps
report = convergence_study(0.5, Indicator(-1, 1), [16 * 4**i for i in range(5)])
print(f"indicator [-1, 1]: slope {report.fitted_slope:.3f}")
