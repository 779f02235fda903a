"""
Chebyshev approximation of the angular function Z
=================================================

On the GOE to Ginibre path the density involves an angular integral Z of
the lumped variable xi, mapped to y in (0, 1).  A six-term even Chebyshev
series with published coefficients is compared here against quadrature
and against a least-squares refit.  The published set is off by about a
third of max Z; the refit is within 1% of max Z.
"""

import numpy as np

from _common import plt, save
from transpacing.chebfit import (
    PUBLISHED_COEFFS,
    Convention,
    arbitrate,
    refit,
    validate_fit,
    validation_grid,
    y_to_xi,
    z_cheb,
)
from transpacing.oracle import z_integral
from transpacing.transition import z_closed

y = validation_grid()
z = z_integral(y_to_xi(y))
# Z also has a short closed form, which agrees with the quadrature.
print(f"max |quadrature - closed form|: {np.max(np.abs(z - z_closed(y_to_xi(y)))):.2e}")

winner, reports = arbitrate()
for conv, rep in reports.items():
    print(f"published set, {conv.value}: rel {rep.max_rel_err:.3f}, abs/max {rep.max_abs_err_scaled:.3f}")
print("better convention:", winner.value)

fits = {order: refit(order) for order in (6, 8, 10)}
for order, fit in fits.items():
    rep = validate_fit(fit)
    print(f"refit order {order}: rel {rep.max_rel_err:.4f}, abs/max {rep.max_abs_err_scaled:.5f}")
print("order-6 coefficients:", np.round(fits[6].a, 4))

fig, (top, bottom) = plt.subplots(2, 1, figsize=(6, 6), sharex=True)
top.plot(y, z, "k", label="quadrature")
top.plot(y, z_cheb(y, PUBLISHED_COEFFS.with_convention(winner)), label="published set")
top.plot(y, z_cheb(y, fits[6]), "--", label="refit, order 6")
top.set_ylabel("Z")
top.legend()
for order, fit in fits.items():
    bottom.plot(y, (z_cheb(y, fit) - z) / z.max(), label=f"order {order}")
bottom.set_xlabel("y")
bottom.set_ylabel("error / max Z")
bottom.legend()
save(fig, "chebyshev.png")
