"""
The three central probabilities
===============================

Probability that a standard normal lands within 1, 2 and 3 standard
deviations, computed two ways, next to the figures printed in 1733.
"""

from demoivre.cli import HISTORICAL_TABLE
from demoivre.numerics import gaussian_integral_series
from demoivre.quadrature import BOOLE, gaussian_cdf_central, historical_bracket

# the alternating series converges quickly near the centre
for terms in range(4, 11):
    print(f"{terms:2d} terms  2*series(1) = {2 * gaussian_integral_series(1.0, terms):.6f}")

# Boole's rule on 256 panels is enough for every digit shown
print()
print("  s   quadrature   1733 figure   coarse bracket")
for s in (1.0, 2.0, 3.0):
    b = historical_bracket(s)
    print(f"{s:3g}   {gaussian_cdf_central(s, BOOLE, 256):.6f}     {HISTORICAL_TABLE[s]:.6f}"
          f"      [{b.low:.5f}, {b.high:.5f}]")
print("coarse settings:", historical_bracket(1.0).settings())
