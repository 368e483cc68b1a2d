"""Fixed-step time integration of the opinion dynamics.

Classical RK4 with a fixed step keeps runs deterministic, which the golden
tests rely on; the dynamics are smooth and low-dimensional, so adaptive
stepping buys nothing here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import Diverged, NonFinite, NotSettled
from .model import NetworkSpec, as_state, vector_field

__all__ = ["Trajectory", "integrate", "settle"]

#: state norm beyond which integration aborts; solutions of the saturated
#: model are bounded, so reaching this signals bad input
DIVERGENCE_NORM = 1e6


@dataclass
class Trajectory:
    """A sampled solution of the opinion dynamics.

    ``times`` is strictly increasing and aligned with the rows of
    ``states``.  ``terminated_early`` is None for a complete run, or a
    short reason string on the partial trajectory attached to a Diverged /
    NonFinite error.
    """

    times: np.ndarray
    states: np.ndarray
    u0: float
    terminated_early: str | None = None


def _rk4_step(spec: NetworkSpec, x: np.ndarray, u0: float, dt: float) -> np.ndarray:
    k1 = vector_field(spec, x, u0)
    k2 = vector_field(spec, x + 0.5 * dt * k1, u0)
    k3 = vector_field(spec, x + 0.5 * dt * k2, u0)
    k4 = vector_field(spec, x + dt * k3, u0)
    return x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate(
    spec: NetworkSpec,
    x0,
    u0: float,
    t_end: float,
    dt: float | None = None,
) -> Trajectory:
    """Integrate from ``x0`` over [0, t_end], sampling every step.

    The default step is 0.01 * tau.  A final shorter step lands exactly on
    t_end when it is not a multiple of dt.

    Raises:
        NonFinite: a NaN/Inf state appeared (including in x0).
        Diverged: the state norm exceeded DIVERGENCE_NORM; the partial
            trajectory is attached to the exception.
    """
    if dt is None:
        dt = 0.01 * spec.tau
    if not (dt > 0 and t_end > 0):
        raise ValueError("dt and t_end must be positive")
    x = np.asarray(x0, dtype=float).reshape(-1)
    if x.shape != (spec.N,):
        raise ValueError(f"x0 has shape {x.shape}, expected ({spec.N},)")
    if not np.all(np.isfinite(x)):
        raise NonFinite("initial state contains non-finite entries")

    times = [0.0]
    states = [x.copy()]
    t = 0.0
    while t < t_end - 1e-12 * dt:
        h = min(dt, t_end - t)
        x = _rk4_step(spec, x, u0, h)
        t += h
        if not np.all(np.isfinite(x)):
            raise NonFinite(f"non-finite state at t={t:.6g}")
        times.append(t)
        states.append(x.copy())
        if np.linalg.norm(x) > DIVERGENCE_NORM:
            partial = Trajectory(np.array(times), np.array(states), u0, "diverged")
            raise Diverged(
                f"state norm exceeded {DIVERGENCE_NORM:.0e} at t={t:.6g}", partial
            )
    return Trajectory(np.array(times), np.array(states), u0)


def settle(
    spec: NetworkSpec,
    x0,
    u0: float,
    tol: float = 1e-9,
    t_max: float | None = None,
    dt: float | None = None,
) -> np.ndarray:
    """Run the dynamics until the vector-field residual drops below ``tol``.

    Returns the settled state.  Raises NotSettled (with the final state and
    residual attached) when t_max is reached first, which is expected near a
    bifurcation where convergence is algebraically slow.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if t_max is None:
        t_max = 1e4 * spec.tau
    if dt is None:
        dt = 0.01 * spec.tau
    x = as_state(x0, spec.N)
    t = 0.0
    residual = np.linalg.norm(vector_field(spec, x, u0))
    while residual >= tol:
        if t >= t_max:
            raise NotSettled(
                f"residual {residual:.3e} >= {tol:.1e} at t_max={t_max:.6g}",
                state=x,
                residual=float(residual),
            )
        x = _rk4_step(spec, x, u0, dt)
        t += dt
        if not np.all(np.isfinite(x)):
            raise NonFinite(f"non-finite state at t={t:.6g}")
        if np.linalg.norm(x) > DIVERGENCE_NORM:
            raise Diverged(f"state norm exceeded {DIVERGENCE_NORM:.0e} at t={t:.6g}")
        residual = np.linalg.norm(vector_field(spec, x, u0))
    return x
