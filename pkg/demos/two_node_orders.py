"""How the order of a single modulatory edge reshapes the opinion-forming
bifurcation of a two-node network.

One multiplicative edge is added to the classic mutual-inhibition pair:
node 1's opinion rescales the inhibition it exerts on node 2, entering as
x_1**n.  The bifurcation at u0 = 1 never moves (the origin Jacobian cannot
see the modulation), but its type changes with n:

    n = 1  breaks the odd symmetry      -> transcritical crossing
    n = 2  keeps symmetry, adds fuel    -> subcritical pitchfork
    n = 3  breaks symmetry, cubic only  -> locally supercritical pitchfork

Orders 1 and 2 open a bistable window below u0 = 1 where the neutral state
coexists with formed opinions; the demo verifies that by settling from the
two sides.

Run:  python demos/two_node_orders.py        (writes SVGs next to itself)
"""

from pathlib import Path

import numpy as np

from modnod import EventKind, build_two_node, diagram, settle
from modnod.output import branches_to_svg

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

for n in (1, 2, 3):
    spec = build_two_node(1.0, n)
    branches = diagram(spec, (0.0, 1.5))

    onset = branches[0].events[0]
    print(f"== order n = {n} ==")
    print(f"neutral state loses stability at u0 = {onset.u0:.8f}")
    print(f"singularity type: {onset.detail.classification.value}")

    folds = [e for b in branches for e in b.events if e.kind == EventKind.SADDLE_NODE]
    if folds:
        u0_sn = min(e.u0 for e in folds)
        u0_mid = 0.5 * (u0_sn + 1.0)
        print(f"fold at u0 = {u0_sn:.6f} -> bistable window ({u0_sn:.3f}, 1.0)")
        x_small = settle(spec, np.array([0.01, -0.01]), u0_mid, t_max=5000)
        arm = [p for b in branches[1:] for p in b.points
               if p.stable and abs(p.u0 - u0_mid) < 0.05][0]
        x_large = settle(spec, arm.x + 1e-3, u0_mid, t_max=5000)
        print(f"settling at u0 = {u0_mid:.3f}: small kicks -> {np.round(x_small, 6)}, "
              f"large kicks -> {np.round(x_large, 4)}")
    else:
        print("no fold in range: branches emerge stable above the onset")

    svg = branches_to_svg(branches, lambda x: x[0], "x_1")
    path = OUT / f"two_node_n{n}.svg"
    path.write_text(svg)
    print(f"diagram written to {path}\n")
