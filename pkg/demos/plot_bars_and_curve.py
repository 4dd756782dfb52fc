"""
Bars under the bell curve
=========================

Histogram heights w_k / dx of Binomial(100, 1/2) on the standardized grid,
drawn against the normal density.  Saves bars_and_curve.png in the working
directory when matplotlib is present;
otherwise prints the tallest bars.
"""

import numpy as np

from demoivre.laws import BinomialLaw, atom_grid, gaussian_density

grid = atom_grid(BinomialLaw(100, 0.5))
keep = np.abs(grid.x) <= 4
x, height = grid.x[keep], grid.weights[keep] / grid.dx
curve_x = np.linspace(-4, 4, 401)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    for xi, hi in zip(x[18:23], height[18:23]):
        print(f"x={xi:+.2f}  bar {hi:.6f}  curve {gaussian_density(xi):.6f}")
else:
    plt.bar(x, height, width=grid.dx, alpha=0.5)
    plt.plot(curve_x, gaussian_density(curve_x), "k")
    plt.savefig("bars_and_curve.png")
