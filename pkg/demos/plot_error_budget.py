"""
Where the approximation error comes from
========================================

Split the gap between the binomial pairing and its Gaussian limit into a
local term, a Riemann-sum term and a tail term.
"""

from demoivre.laws import BinomialLaw
from demoivre.pairing import error_decomposition
from demoivre.probes import HermiteFunction

print("    n      local       riemann      tail         total")
for n in (100, 400, 1600, 6400):
    d = error_decomposition(BinomialLaw(n, 0.3), HermiteFunction(0), 5.0)
    print(f"{n:5d}  {d.local_error:.3e}  {d.riemann_error:.3e}  {d.tail_bound:.3e}  "
          f"{d.total_error:.3e}  sound={d.is_sound}")

# the local term falls about fourfold each time n is multiplied by four
