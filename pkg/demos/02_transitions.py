"""
Transitional spacing densities
==============================

Three one-parameter paths through the 4x4 model, each drawn on the
unit-mean scale for alpha = 0, 0.25, ..., 1:

* GUE to Ginibre, strengths (1, alpha, 0)
* Ginibre to GSE, strengths (1, 1, alpha)
* GOE to Ginibre, strengths (alpha, alpha, 0)

At alpha = 0 and alpha = 1 every curve lands on a surmise (dashed).
"""

import numpy as np

from _common import plt, save
from transpacing import TransitionKind, mean, pdf, pdf_table, surmise_pdf

ENDS = {
    TransitionKind.GUE_GINIBRE: (2, 3),
    TransitionKind.GINIBRE_GSE: (3, 4),
    TransitionKind.GOE_GINIBRE: (1, 3),
}
alphas = np.linspace(0.0, 1.0, 5)

fig, axes = plt.subplots(1, 3, figsize=(15, 4), sharey=True)
for ax, (kind, (b0, b1)) in zip(axes, ENDS.items()):
    for a in alphas:
        table = pdf_table(kind, a, "0:4:0.01")
        ax.plot(table.x, table.density, label=f"alpha={a:g}")
    ax.plot(table.x, surmise_pdf(b0, table.x), "k--", lw=0.8)
    ax.plot(table.x, surmise_pdf(b1, table.x), "k:", lw=0.8)
    ax.set_title(kind.value)
    ax.set_xlabel("r = s / <s>")
    # the raw mean spacing moves monotonically between the endpoint values
    print(kind.value, "means:", ", ".join(f"{mean(kind, a):.6f}" for a in alphas))
axes[0].set_ylabel("P(r)")
axes[0].legend()
save(fig, "transitions.png")

# Near s = 0 the density goes as s^3 for any alpha > 0 on the first and
# third paths, so the change from linear to cubic repulsion on the GOE
# path happens at once, not gradually.  A log-log view shows the slope.
s = np.geomspace(1e-3, 1.0, 200)
fig, ax = plt.subplots(figsize=(6, 4))
for a in (0.0, 0.01, 0.1, 0.5):
    ax.loglog(s, pdf(TransitionKind.GOE_GINIBRE, s, a), label=f"alpha={a:g}")
ax.set_xlabel("s")
ax.set_ylabel("F(s)")
ax.legend()
save(fig, "goe_ginibre_small_s.png")
