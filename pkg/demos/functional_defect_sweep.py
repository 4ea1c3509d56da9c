"""Why the objective was changed: sweep the death rate under both forms.

The widespread "legacy" objective integrates c1*I + c3*u1^2 + c2*u2^2.
Its defect: a deadlier virus empties the infected compartment faster, so
the optimal cost DROPS as the death rate alpha rises, rewarding exactly
the outcome one wants to avoid.  The corrected objective prices the
destroyed nodes themselves, c1*u1^2 + c2*u2^2 + c3*alpha*I, and rises
with alpha instead.

Both problems are solved at every alpha below; watch the two columns
move in opposite directions.
"""

import numpy as np

from sircontrol import ModelParams, sweep_alpha

params = ModelParams(
    beta=0.01, alpha=0.1, c1=1.0, c2=1.0, c3=10.0,
    u1_max=0.9, u2_max=0.9, horizon=10.0,
    s0=95.0, i0=5.0, r0=0.0,
)

alphas = [float(a) for a in np.linspace(0.05, 0.5, 10)]
rows = sweep_alpha(params, alphas)

print("alpha   corrected objective   legacy objective   destroyed nodes D(T)")
for row in rows:
    print(f"{row.alpha:5.2f}   {row.objective_new:19.6f}   {row.objective_legacy:16.6f}"
          f"   {row.defective_terminal_new:20.6f}")

legacy = [row.objective_legacy for row in rows]
corrected = [row.objective_new for row in rows]
print(f"\nlegacy objective falls as alpha rises:     "
      f"{all(b < a for a, b in zip(legacy, legacy[1:]))}")
print(f"corrected objective rises as alpha rises:  "
      f"{all(b >= a for a, b in zip(corrected, corrected[1:]))}")
