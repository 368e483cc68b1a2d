"""Deterministic builders for the three studied networks.

* ``two_node``: a pair of mutually inhibiting nodes where node 1's opinion
  modulates the inhibition it exerts on node 2; the modulation order n
  controls whether the opinion-forming bifurcation at u0 = 1 stays a
  pitchfork or unfolds.
* ``influencer_ring``: an undirected 5-cycle with unit coupling in which
  node 1 modulates every edge; consensus forms at u0 = 1/2.
* ``drive_steer``: two decoupled mutually-inhibiting pairs, {1,2}
  (drive/stay, strength alpha) and {3,4} (steer left/right, strength
  beta), where node 1's opinion modulates the steering inhibition.  The
  effective gain on the steering edges is u0 + (m_bar/beta) * x1, so the
  steering pair destabilizes where beta * u0 + m_bar * x1 = 1: a positive
  drive opinion lowers the attention needed to trigger steering.
"""

from __future__ import annotations

import numpy as np

from .continuation import BranchPoint, _sign_pattern
from .model import NetworkSpec

__all__ = [
    "build_two_node",
    "build_influencer_ring",
    "build_drive_steer",
    "drive_steer_label",
    "SCENARIOS",
    "build_scenario",
]


def build_two_node(m_strength: float = 1.0, n: int = 1) -> NetworkSpec:
    """Two mutually inhibiting nodes; node 1 modulates edge (2, 1)."""
    A = np.array([[0.0, -1.0], [-1.0, 0.0]])
    return NetworkSpec(A=A, M=((2, 1, 1, float(m_strength)),), order=n)


def build_influencer_ring(m_bar: float = 0.0) -> NetworkSpec:
    """Undirected 5-cycle with every edge modulated by node 1."""
    if m_bar < 0:
        raise ValueError(f"m_bar must be >= 0, got {m_bar}")
    N = 5
    A = np.zeros((N, N))
    for i in range(N):
        A[i, (i + 1) % N] = 1.0
        A[i, (i - 1) % N] = 1.0
    M = tuple(
        (i + 1, j + 1, 1, float(m_bar) * A[i, j])
        for i in range(N)
        for j in range(N)
        if A[i, j] != 0.0
    )
    return NetworkSpec(A=A, M=M, order=1)


def build_drive_steer(alpha: float = 1.0, beta: float = 0.3, m_bar: float = 0.0) -> NetworkSpec:
    """Drive/stay pair {1,2} plus steer pair {3,4} modulated by node 1."""
    if not (alpha > 0 and beta > 0):
        raise ValueError(f"alpha and beta must be positive, got {alpha}, {beta}")
    A = np.zeros((4, 4))
    A[0, 1] = A[1, 0] = -float(alpha)
    A[2, 3] = A[3, 2] = -float(beta)
    w = float(m_bar) / float(beta)
    M = ((3, 4, 1, w), (4, 3, 1, w))
    return NetworkSpec(A=A, M=M, order=1)


def drive_steer_label(point: BranchPoint) -> str:
    """Navigation-command label from the subnetwork sign patterns.

    {1,2} decides the prefix (id / dr / st), the steering pair appends
    l / r: e.g. "drl" = drive and steer left.
    """
    pattern = _sign_pattern(point.x)
    prefix = {"+": "dr", "-": "st", "0": "id"}[pattern[0]]
    suffix = {"+": "l", "-": "r", "0": ""}[pattern[2]]
    return prefix + suffix


SCENARIOS = {
    "two_node": {
        "build": build_two_node,
        "params": {"m_strength": 1.0, "n": 1},
        "labeler": None,
        "describe": "two mutually inhibiting nodes, node 1 modulates edge (2,1)",
    },
    "influencer_ring": {
        "build": build_influencer_ring,
        "params": {"m_bar": 0.0},
        "labeler": None,
        "describe": "5-cycle with all edges modulated by node 1",
    },
    "drive_steer": {
        "build": build_drive_steer,
        "params": {"alpha": 1.0, "beta": 0.3, "m_bar": 0.0},
        "labeler": drive_steer_label,
        "describe": "drive/stay pair conditioning a steer left/right pair",
    },
}


def build_scenario(name: str, **params) -> NetworkSpec:
    """Build a named scenario, validating parameter names."""
    if name not in SCENARIOS:
        raise ValueError(
            f"unknown scenario {name!r}; available: {', '.join(sorted(SCENARIOS))}"
        )
    entry = SCENARIOS[name]
    unknown = set(params) - set(entry["params"])
    if unknown:
        raise ValueError(
            f"unknown parameter(s) {sorted(unknown)} for scenario {name!r}"
        )
    merged = {**entry["params"], **params}
    return entry["build"](**merged)
