"""
Moments of the Cauchy law through a window
==========================================

The Cauchy law has no variance: x^2 / (pi (1 + x^2)) is not integrable.
Multiplying by a Gaussian window gives finite numbers that still carry
the shape information.
"""

from demoivre.laws import CauchyLaw, GaussianReference
from demoivre.probes import gaussian_window
from demoivre.transforms import weak_characteristic_function, weak_moment

window = gaussian_window()
for name, law in (("cauchy", CauchyLaw()), ("gaussian", GaussianReference())):
    base = weak_moment(law, 0, window)
    ratios = [weak_moment(law, r, window) / base for r in range(5)]
    print(name, " ".join(f"{v:.6f}" for v in ratios))

# the weak characteristic function of the Cauchy law stays real by symmetry
for t in (0.0, 0.5, 1.0, 2.0):
    v = weak_characteristic_function(CauchyLaw(), t, window, normalized=True)
    print(f"t={t:3g}  {v.real:.6f}  imag {v.imag:.1e}")
