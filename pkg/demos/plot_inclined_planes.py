"""
Inclined planes and the time scale
==================================

Sliding down the line y = 1 - x/b from (0, 1) to (b, 0) takes
2 sqrt(1 + b^2) time units once g is chosen so that 1/sqrt(2 g) = 1.
This is a quick check of the singular quadrature, and a reminder of how
badly a long shallow ramp loses to the cycloid with the same endpoints.
"""

import math

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from varcal.brach import Endpoints, descent_time, min_time, solve_constants

g = 0.5
bs = np.linspace(0.25, 6.0, 24)
line = np.array([descent_time(f"1 - x/{float(b)!r}", 0.0, float(b), 1.0, g=g) for b in bs])
closed = 2 * np.sqrt(1 + bs ** 2)
print("max relative deviation from 2 sqrt(1 + b^2):", np.max(np.abs(line / closed - 1)))

cycloid = np.array([min_time(solve_constants(Endpoints(0.0, 1.0, float(b), 0.0)), g) for b in bs])

# %%
# For steep ramps (small b) the line is nearly optimal; the gap opens up as
# the ramp flattens.
for b, t_line, t_cyc in zip(bs[::6], line[::6], cycloid[::6]):
    print(f"b = {b:4.2f}: line {t_line:7.4f}  cycloid {t_cyc:7.4f}  ratio {t_line / t_cyc:5.3f}")

fig, ax = plt.subplots(figsize=(5, 3.5))
ax.plot(bs, line, "k", label="line")
ax.plot(bs, cycloid, "b", label="cycloid")
ax.set_xlabel("b")
ax.set_ylabel("descent time")
ax.set_title(f"1/sqrt(2g) = {1 / math.sqrt(2 * g):g}")
ax.legend()
fig.tight_layout()
fig.savefig("inclined_planes.png", dpi=120)
