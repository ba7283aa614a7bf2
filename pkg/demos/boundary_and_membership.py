# %% [markdown]
# # Image domain and subordination membership
#
# Samples the boundary of xi(D), checks the Ma-Minda conditions, and tests a
# few coefficient lists for membership. Run with `python demos/boundary_and_membership.py`.

# %%
import math

from qstar.geometry import (
    ExtremalSpec,
    Generator,
    boundary_curve,
    extremal_coeffs,
    extremal_pole_radius,
    maminda_checks,
    membership_test,
)
from qstar.qcalc import CLASSICAL, QContext
from qstar.series import Series

# %%
for ctx in (CLASSICAL, QContext(0.5), QContext(0.8)):
    curve = boundary_curve(ctx, 2048)
    rep = maminda_checks(curve)
    i = min(range(len(curve)), key=lambda k: abs(curve.theta[k] - math.pi))
    print(f"{ctx.label:>9}: Ma-Minda {'ok' if rep.passed else 'FAILED'}, "
          f"xi(-1) = {curve.points[i].real:.6f}, {len(curve)} points")

# %% [markdown]
# The q-extremal function has poles where (1 - q) G = 1. For q = 0.5 they sit
# inside the disk, so membership only holds on smaller circles.

# %%
for q in (0.5, 0.8):
    for gen in Generator:
        ctx = QContext(q)
        v = membership_test(extremal_coeffs(ExtremalSpec(ctx, gen, 400)), ctx)
        print(f"q={q} {gen.value:>3}: pole radius {extremal_pole_radius(ctx, gen):.5f}  "
              f"{v.status.value} up to r={v.largest_reliable_r}")

# %% [markdown]
# z + 2z^2 vanishes at z = -1/2, so z f'/f has a pole on the r = 0.5 circle.

# %%
v = membership_test(Series([0, 1, 2]), CLASSICAL, exact=True)
print(f"z + 2z^2: {v.status.value}, worst point (r, theta) = {v.worst_point}")
