"""
The four Wigner surmises
========================

Each surmise is P(s) = C1 s^beta exp(-C2 s^2) with both constants fixed
by unit norm and unit mean.  Larger beta means stronger level repulsion:
the density starts as s^beta and its peak moves right and grows.
"""

import numpy as np

from _common import plt, save
from transpacing import surmise_constants, surmise_pdf
from transpacing.surmise import surmise_peak

# Constants and peak positions for beta = 1 (GOE), 2 (GUE), 3 (Ginibre)
# and 4 (GSE).
for beta in (1, 2, 3, 4):
    c = surmise_constants(beta)
    r_peak, p_peak = surmise_peak(beta)
    print(f"beta={beta}: C1={c.c1:.7f} C2={c.c2:.7f} peak at r={r_peak:.4f}, height {p_peak:.4f}")

# The ratio of the Ginibre and GUE peak heights is the "taller peak"
# number that shows up again in the first transition.
print(f"peak ratio beta=3 / beta=2: {surmise_peak(3)[1] / surmise_peak(2)[1]:.6f}")

r = np.linspace(0.0, 3.5, 701)
fig, ax = plt.subplots(figsize=(6, 4))
for beta, label in zip((1, 2, 3, 4), ("GOE", "GUE", "Ginibre", "GSE")):
    ax.plot(r, surmise_pdf(beta, r), label=f"beta={beta} ({label})")
ax.set_xlabel("r = s / <s>")
ax.set_ylabel("P(r)")
ax.legend()
save(fig, "surmises.png")
