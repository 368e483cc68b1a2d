"""First contact with the model: build a network, simulate it, find its
equilibria, and read off the critical attention.

Run:  python demos/getting_started.py
"""

import numpy as np

from modnod import (
    NetworkSpec,
    critical_attention,
    integrate,
    leading_eigenpair,
    newton_equilibrium,
    settle,
    vector_field,
)

# Two mutually inhibiting nodes. Negative weights mean each node pushes
# the other toward the opposite opinion, which is what makes a decision
# between two options form at all.
spec = NetworkSpec(A=np.array([[0.0, -1.0], [-1.0, 0.0]]))

print("== spectral picture ==")
eig = leading_eigenpair(spec)
print(f"leading eigenvalue : {eig.lambda_max:.6f}")
print(f"right eigenvector  : {eig.v_max}")
print(f"critical attention : u0* = {critical_attention(spec):.6f}")
print()

# Below u0* the neutral state absorbs everything.
print("== below the critical attention (u0 = 0.8) ==")
traj = integrate(spec, np.array([0.4, 0.1]), u0=0.8, t_end=30.0)
print(f"|x(30)| = {np.linalg.norm(traj.states[-1]):.2e}  (decayed to neutral)")
print()

# Above it, a tiny push along the leading eigenvector grows into a firm
# opinion; the formed pattern is the eigenvector's sign pattern.
print("== above the critical attention (u0 = 1.3) ==")
x_final = settle(spec, 1e-3 * eig.v_max, u0=1.3, tol=1e-10)
print(f"settled state      : {x_final}")
x_star = newton_equilibrium(spec, x_final, 1.3)
print(f"newton-polished    : {x_star}")
print(f"field residual     : {np.linalg.norm(vector_field(spec, x_star, 1.3)):.2e}")
print(f"mirror equilibrium : {newton_equilibrium(spec, -x_final, 1.3)}")
