"""
Euler-Lagrange equations and shooting
=====================================

Derive the Euler-Lagrange equation of two Lagrangians symbolically, solve
the boundary-value problems by shooting, and compare with the known
closed-form extremals.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from varcal import parse
from varcal.numerics import shoot
from varcal.varcalc import accel_function, euler_lagrange, first_integral_constancy

# %%
# A Lagrangian depending on x and y
# ---------------------------------
# L = 12 x y - y'^2 with y(-1) = 1, y(0) = 0. Neither x nor y is absent,
# so there is no first integral to fall back on.
r = euler_lagrange("12*x*y - yp^2")
print("residual:", r.residual)
print("ypp     =", r.accel)
print("first integrals:", r.first_integrals)

slope, traj = shoot(accel_function(r.accel), -1.0, 1.0, 0.0, 0.0)
print(f"initial slope {slope:.12f}")
print("max |y + x^3|:", np.max(np.abs(traj.y + traj.x ** 3)))

# %%
# A Lagrangian without y
# ----------------------
# y does not appear in L = y'(1 + x^2 y'), so dL/dy' is conserved along
# extremals. The extremal through (1, 3) and (2, 5) is 7 - 4/x.
r2 = euler_lagrange("yp*(1 + x^2*yp)")
(momentum,) = r2.first_integrals
print("momentum integral:", momentum.phi)

slope2, traj2 = shoot(accel_function(r2.accel), 1.0, 3.0, 2.0, 5.0, 0.0, 10.0)
K, dev = first_integral_constancy(momentum, parse("7 - 4/x"), 1.0, 2.0)
print(f"slope {slope2:.12f}, K = {K} (spread {dev:.1e})")

# %%
# Both extremals, numeric and exact
# ---------------------------------
fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
axes[0].plot(traj.x, traj.y, lw=3, alpha=0.4, label="shooting")
axes[0].plot(traj.x, -traj.x ** 3, "k--", label="$-x^3$")
axes[1].plot(traj2.x, traj2.y, lw=3, alpha=0.4, label="shooting")
axes[1].plot(traj2.x, 7 - 4 / traj2.x, "k--", label="$7 - 4/x$")
for ax in axes:
    ax.set_xlabel("x")
    ax.legend()
fig.tight_layout()
fig.savefig("euler_lagrange.png", dpi=120)
