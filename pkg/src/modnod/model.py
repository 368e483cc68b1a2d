"""Core model: saturations, network specification, vector field, Jacobian.

The dynamics of the N opinion states are

    tau * dx_i/dt = -x_i + b_i + S( p_i(x) ),
    p_i(x) = sum_j a_ij * (u0 + sum_k m_ijk * x_k**n) * x_j,

where ``A = [a_ij]`` holds the additive interaction weights, the sparse
third-order coefficients ``m_ijk`` let the opinion of node k modulate
(multiplicatively rescale) the attention paid along the edge (i, j), ``n``
is the order of that modulation, ``u0`` is the basal attention (the
bifurcation parameter, passed to every evaluation rather than stored), and
``S`` is a smooth saturation with S(0) = 0 and S'(0) = 1.

Everything in this module is a pure function of immutable inputs; specs
and states are freely shareable across threads.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import math

import numpy as np

__all__ = [
    "Saturation",
    "NetworkSpec",
    "as_state",
    "modulated_gains",
    "inner_argument",
    "vector_field",
    "jacobian",
]


@dataclass(frozen=True)
class Saturation:
    """Saturating nonlinearity applied to the networked input.

    Two variants:

    * ``odd``      -- S(z) = tanh(z); odd symmetric, used whenever the two
      options should be interchangeable.
    * ``shifted``  -- S(z) = (tanh(z - s) + tanh(s)) / (1 - tanh(s)^2);
      breaks odd symmetry but keeps S(0) = 0 and S'(0) = 1 for every s.
    """

    kind: str = "odd"
    shift: float = 0.0

    def __post_init__(self):
        if self.kind not in ("odd", "shifted"):
            raise ValueError(f"unknown saturation kind {self.kind!r}")
        if not math.isfinite(self.shift):
            raise ValueError("saturation shift must be finite")

    @classmethod
    def odd(cls) -> "Saturation":
        return cls("odd", 0.0)

    @classmethod
    def shifted(cls, s: float) -> "Saturation":
        return cls("shifted", float(s))

    def __call__(self, z):
        if self.kind == "odd":
            return np.tanh(z)
        s = self.shift
        return (np.tanh(z - s) + np.tanh(s)) / (1.0 - np.tanh(s) ** 2)

    def derivative(self, z):
        if self.kind == "odd":
            return 1.0 - np.tanh(z) ** 2
        s = self.shift
        return (1.0 - np.tanh(z - s) ** 2) / (1.0 - np.tanh(s) ** 2)

    def bound(self) -> float:
        """sup |S(z)| over the real line."""
        if self.kind == "odd":
            return 1.0
        return 1.0 / (1.0 - abs(np.tanh(self.shift)))


def as_state(x, n: int) -> np.ndarray:
    """Validate and coerce an opinion state to a finite float vector."""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.shape != (n,):
        raise ValueError(f"state has shape {x.shape}, expected ({n},)")
    if not np.all(np.isfinite(x)):
        raise ValueError("state contains non-finite entries")
    return x


@dataclass(eq=False)
class NetworkSpec:
    """A full model instance.

    Attributes:
        A: (N, N) additive interaction matrix.
        M: modulation coefficients as a tuple of 1-based triplets
            ``(i, j, k, weight)``: the opinion of node k modulates the
            attention on edge (i, j).  Sparse on purpose; the studied
            networks have a handful of modulatory edges.
        order: modulation order n >= 1 (the modulating state enters as
            x_k**n).
        saturation: the saturating nonlinearity S.
        b: (N,) exogenous input vector (defaults to zero).
        tau: global timescale, > 0.
    """

    A: np.ndarray
    M: tuple = ()
    order: int = 1
    saturation: Saturation = field(default_factory=Saturation.odd)
    b: np.ndarray | None = None
    tau: float = 1.0

    def __post_init__(self):
        A = np.asarray(self.A, dtype=float)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError(f"A must be square, got shape {A.shape}")
        if not np.all(np.isfinite(A)):
            raise ValueError("A contains non-finite entries")
        self.A = A
        n = A.shape[0]

        if self.b is None:
            b = np.zeros(n)
        else:
            b = np.asarray(self.b, dtype=float).reshape(-1)
            if b.shape != (n,):
                raise ValueError(f"b has shape {b.shape}, expected ({n},)")
            if not np.all(np.isfinite(b)):
                raise ValueError("b contains non-finite entries")
        self.b = b

        if int(self.order) != self.order or self.order < 1:
            raise ValueError(f"modulation order must be an integer >= 1, got {self.order}")
        self.order = int(self.order)

        if not (math.isfinite(self.tau) and self.tau > 0):
            raise ValueError(f"tau must be positive and finite, got {self.tau}")
        self.tau = float(self.tau)

        triplets = []
        seen = set()
        for t in self.M:
            if len(t) != 4:
                raise ValueError(f"modulation entry {t!r} is not (i, j, k, weight)")
            i, j, k, w = t
            for idx in (i, j, k):
                if int(idx) != idx or not (1 <= idx <= n):
                    raise ValueError(f"modulation index {idx} outside 1..{n} in {t!r}")
            if not math.isfinite(w):
                raise ValueError(f"modulation weight in {t!r} is not finite")
            key = (int(i), int(j), int(k))
            if key in seen:
                raise ValueError(f"duplicate modulation triplet {key}")
            seen.add(key)
            triplets.append((int(i), int(j), int(k), float(w)))
        self.M = tuple(triplets)

    @property
    def N(self) -> int:
        return self.A.shape[0]

    def __eq__(self, other):
        if not isinstance(other, NetworkSpec):
            return NotImplemented
        return (
            np.array_equal(self.A, other.A)
            and self.M == other.M
            and self.order == other.order
            and self.saturation == other.saturation
            and np.array_equal(self.b, other.b)
            and self.tau == other.tau
        )


def modulated_gains(spec: NetworkSpec, x, u0: float) -> np.ndarray:
    """Effective attention on each edge: ``u0 + sum_k m_ijk x_k**n``.

    With no modulation every entry is the basal attention u0.
    """
    x = np.asarray(x, dtype=float)
    gains = np.full((spec.N, spec.N), float(u0))
    if spec.M:
        xn = x ** spec.order
        for i, j, k, w in spec.M:
            gains[i - 1, j - 1] += w * xn[k - 1]
    return gains


def inner_argument(spec: NetworkSpec, x, u0: float) -> np.ndarray:
    """Saturation argument p(x): p_i = sum_j a_ij * gain_ij(x) * x_j."""
    x = np.asarray(x, dtype=float)
    return (spec.A * modulated_gains(spec, x, u0)) @ x


def vector_field(spec: NetworkSpec, x, u0: float) -> np.ndarray:
    """Right-hand side of the opinion dynamics: (-x + b + S(p(x))) / tau."""
    x = np.asarray(x, dtype=float)
    return (-x + spec.b + spec.saturation(inner_argument(spec, x, u0))) / spec.tau


def jacobian(spec: NetworkSpec, x, u0: float) -> np.ndarray:
    """Analytic Jacobian of ``vector_field`` at (x, u0).

    J_il = (S'(p_i) * dp_i/dx_l - delta_il) / tau with

        dp_i/dx_l = a_il * gain_il(x)
                    + n * sum_j a_ij * m_ijl * x_l**(n-1) * x_j.

    For n = 1 the factor x_l**(n-1) is the constant 1, including at
    x_l = 0 (the 0**0 = 1 convention matches the algebraic expansion;
    a naive power evaluation could produce surprises there).
    """
    x = np.asarray(x, dtype=float)
    n = spec.order
    dp = spec.A * modulated_gains(spec, x, u0)
    if spec.M:
        xm = np.ones_like(x) if n == 1 else x ** (n - 1)
        for i, j, k, w in spec.M:
            dp[i - 1, k - 1] += n * spec.A[i - 1, j - 1] * w * xm[k - 1] * x[j - 1]
    sp = spec.saturation.derivative(inner_argument(spec, x, u0))
    return (sp[:, None] * dp - np.eye(spec.N)) / spec.tau
