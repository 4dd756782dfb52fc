"""
From generating function to characteristic function
===================================================

The generating function, the characteristic function and the weights are
three views of the same binomial law.
"""

import math

import numpy as np

from demoivre.laws import BinomialLaw, atom_grid
from demoivre.transforms import characteristic_function, coefficients_from_pgf, pgf

law = BinomialLaw(20, 0.3)

# cf(t) is the generating function on the unit circle
t = 1.1
print(characteristic_function(law, t), pgf(law, complex(math.cos(t), math.sin(t))))

# sampling the generating function at roots of unity recovers every weight
recovered = coefficients_from_pgf(law)
print("max weight error:", np.max(np.abs(recovered - atom_grid(law).weights)))
