"""
The brachistochrone
===================

Find the cycloid joining two points, compute the minimal descent time, and
race it against a straight line and a circular arc through the same points.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from varcal.brach import (
    Endpoints, descent_time, descent_time_parametric, min_time, sample_curve, sample_cycloid,
    solve_constants,
)

# %%
# Cycloid constants
# -----------------
# Start at rest from A(0, 2) and slide to B(3, 1) with g = 9.8.
ends = Endpoints(0.0, 2.0, 3.0, 1.0)
sol = solve_constants(ends)
T = min_time(sol)
print(f"a = {sol.a:.10f}  theta1 = {sol.theta1:.10f}  T = {T:.10f}")

# theta1 > pi: the fastest path dips below B before climbing to it
print("lowest point y =", sol.y0 - sol.a)

# %%
# The closed-form time against direct quadrature over theta
print("quadrature - closed form:", descent_time_parametric(sol) - T)

# %%
# Racing other curves
# -------------------
curves = {
    "line": "2 - x/3",
    "circle arc": "6 - sqrt(16 - x^2 + 6*x)",
    "cubic": "2 - x*(1 - (x - 3)^2/9)/3 - x*(3 - x)/4",
}
times = {"cycloid": T}
for label, text in curves.items():
    times[label] = descent_time(text, ends.x0, ends.x1, ends.y0)
for label, t in sorted(times.items(), key=lambda kv: kv[1]):
    print(f"{label:>10}: {t:.10f}")

# %%
# Picture
# -------
fig, ax = plt.subplots(figsize=(6, 3.5))
c = sample_cycloid(sol, 200)
ax.plot(c.x, c.y, color="blue", lw=2, label=f"cycloid  {T:.4f} s")
for (label, text), color in zip(curves.items(), ("black", "red", "green")):
    s = sample_curve(text, ends.x0, ends.x1, 200, label)
    ax.plot(s.x, s.y, color=color, label=f"{label}  {times[label]:.4f} s")
ax.plot([ends.x0, ends.x1], [ends.y0, ends.y1], "ko")
ax.set_aspect("equal")
ax.legend(fontsize=8)
fig.tight_layout()
fig.savefig("brachistochrone.png", dpi=120)
