# %% [markdown]
# # Printed bounds against the numerical oracle
#
# Each printed estimate is compared with a grid-plus-refinement maximum taken
# over Schwarz jets. Run with `python demos/bounds_walkthrough.py`.

# %%
from qstar.coeffmaps import coeffs_q, schwarz_jet
from qstar.functionals import FunctionalId, Kind, evaluate_functional
from qstar.oracle import OracleConfig, maximize_functional
from qstar.qcalc import CLASSICAL, QContext

cfg = OracleConfig(grid_b1=32, grid_radial=16, grid_angular=48, refine_iters=120)

# %% [markdown]
# A sharp case: the second Hankel determinant, attained by the jet of w = z^2.

# %%
for ctx in (CLASSICAL, QContext(0.5), QContext(0.8)):
    r = maximize_functional(FunctionalId(Kind.H22), ctx, cfg)
    print(f"h22 {ctx.label:>9}: printed {r.closed_form.value:.6f}  oracle {r.oracle_max:.6f}  {r.status.value}")

# %% [markdown]
# A broken case: the printed T2(1) estimate 1 - 1/q^2 is negative for every q,
# while w = z and w = z^2 give values 1/q^2 - 1 and 1.

# %%
for q in (0.3, 0.5, 0.8):
    ctx = QContext(q)
    r = maximize_functional(FunctionalId(Kind.T21), ctx, cfg)
    w1 = evaluate_functional(FunctionalId(Kind.T21), coeffs_q(ctx, schwarz_jet(1.0, 0, 0)))
    w2 = evaluate_functional(FunctionalId(Kind.T21), coeffs_q(ctx, schwarz_jet(0.0, 1, 0)))
    print(f"t21 q={q}: printed {r.closed_form.printed:+.4f}  oracle {r.oracle_max:.4f}  "
          f"(w=z {w1:.4f}, w=z^2 {w2:.4f})")

# %% [markdown]
# Fekete-Szego at mu = 0 in the classical class: the estimate 0.75 is beaten by b1 = 1.

# %%
r = maximize_functional(FunctionalId(Kind.FEKETE_SZEGO, 0.0), CLASSICAL, cfg)
print(f"fs(mu=0): printed {r.closed_form.value}  oracle {r.oracle_max:.6f}  witness b1={r.witness.b1.real:.4f}")
