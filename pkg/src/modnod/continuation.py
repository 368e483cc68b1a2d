"""Equilibrium solving, pseudo-arclength continuation, and bifurcation
detection.

Branches of equilibria of ``vector_field(spec, x, u0) = 0`` are traced in
the combined space z = (x, u0) with Keller's pseudo-arclength scheme:
tangent predictor plus Newton correction of the bordered system

    [ F(x, u0) ]            [ J      F_u0 ]
    [ t . (z - z_pred) ],   [ t_x^T  t_u0 ],

which stays well conditioned through folds where the plain Jacobian turns
singular.  Steady-state bifurcations are located by monitoring the real
Jacobian eigenvalue closest to zero between consecutive points and bisecting
the bracketing segment; folds additionally reverse the u0 component of the
branch tangent.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .errors import (
    NewtonDiverged,
    NoBranchFound,
    NoStrictLeader,
    SingularJacobian,
    StallError,
)
from .model import NetworkSpec, jacobian, vector_field
from .spectral import eigenpair_near, max_entry_normalized

__all__ = [
    "StepParams",
    "BranchPoint",
    "EventKind",
    "BifurcationEvent",
    "Branch",
    "newton_equilibrium",
    "branch_point_at",
    "trace_branch",
    "detect_events",
    "switch_branch",
    "DiagramOptions",
    "diagram",
]

log = logging.getLogger("modnod.continuation")

#: residual tolerance every emitted branch point satisfies
NEWTON_TOL = 1e-12
#: eigenvalue magnitude below which an event bracket counts as refined
EVENT_EIG_TOL = 1e-8
#: entries smaller than this count as zero in branch sign-pattern labels
LABEL_ZERO_TOL = 1e-6


class EventKind(str, Enum):
    PITCHFORK = "Pitchfork"
    TRANSCRITICAL = "Transcritical"
    SADDLE_NODE = "SaddleNode"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class StepParams:
    """Pseudo-arclength step control."""

    initial: float = 0.02
    min_step: float = 1e-5
    max_step: float = 0.1
    grow: float = 1.3
    shrink: float = 0.5
    fast_iters: int = 3  # grow the step when the corrector needs fewer
    corrector_iters: int = 8
    max_points: int = 2000
    max_stalls: int = 10


@dataclass
class BranchPoint:
    """One converged point of an equilibrium branch."""

    u0: float
    x: np.ndarray
    leading_jac_eig: float
    stable: bool
    tangent: np.ndarray  # unit (N+1)-vector in (x, u0) space


@dataclass
class BifurcationEvent:
    kind: EventKind
    u0: float
    x: np.ndarray
    eigenvalue: float = 0.0       # refined test-function value
    kernel: np.ndarray | None = None  # unit right null vector of J at the event
    detail: object | None = None  # reduction.LSReport for classified events
    segment: int = -1             # index of the left bracketing branch point


@dataclass
class Branch:
    points: list = field(default_factory=list)
    events: list = field(default_factory=list)
    label: str = ""


# ---------------------------------------------------------------------------
# Newton solvers


def newton_equilibrium(
    spec: NetworkSpec,
    x_guess,
    u0: float,
    tol: float = NEWTON_TOL,
    max_iter: int = 50,
) -> np.ndarray:
    """Damped Newton solve of ``vector_field(spec, x, u0) = 0``.

    Backtracking halves the step until the residual norm decreases.

    Raises:
        NewtonDiverged: iteration budget exhausted or damping underflowed.
        SingularJacobian: the linear solve failed (typically right at a
            bifurcation; callers should fall back to a bordered system).
    """
    x = np.asarray(x_guess, dtype=float).reshape(-1).copy()
    if x.shape != (spec.N,):
        raise ValueError(f"x_guess has shape {x.shape}, expected ({spec.N},)")
    if not np.all(np.isfinite(x)):
        raise ValueError("x_guess contains non-finite entries")

    res = vector_field(spec, x, u0)
    rnorm = np.linalg.norm(res)
    for _ in range(max_iter):
        if rnorm < tol:
            return x
        jac = jacobian(spec, x, u0)
        try:
            step = np.linalg.solve(jac, -res)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(
                f"Jacobian singular at u0={u0:.6g} (residual {rnorm:.3e})"
            ) from exc
        damping = 1.0
        while damping >= 2.0 ** -30:
            trial = x + damping * step
            trial_res = vector_field(spec, trial, u0)
            trial_norm = np.linalg.norm(trial_res)
            if np.isfinite(trial_norm) and trial_norm < rnorm:
                x, res, rnorm = trial, trial_res, trial_norm
                break
            damping *= 0.5
        else:
            raise NewtonDiverged(
                f"step damping underflowed at u0={u0:.6g} (residual {rnorm:.3e})"
            )
    if rnorm < tol:
        return x
    raise NewtonDiverged(
        f"no convergence in {max_iter} iterations at u0={u0:.6g} "
        f"(residual {rnorm:.3e})"
    )


def _field_u0_derivative(spec: NetworkSpec, x: np.ndarray, u0: float) -> np.ndarray:
    # dF/du0 = S'(p) * (A x) / tau : u0 enters every gain additively
    from .model import inner_argument  # local to avoid import cycle noise

    p = inner_argument(spec, x, u0)
    return spec.saturation.derivative(p) * (spec.A @ x) / spec.tau


def _bordered_correct(
    spec: NetworkSpec,
    z0: np.ndarray,
    direction: np.ndarray,
    tol: float = NEWTON_TOL,
    max_iter: int = 8,
):
    """Newton-correct z = (x, u0) onto the branch within the hyperplane
    through z0 orthogonal to ``direction``.  Returns (z, iterations) or None.
    """
    n = spec.N
    z = z0.copy()
    for it in range(max_iter + 1):
        res = vector_field(spec, z[:n], z[n])
        if np.linalg.norm(res) < tol:
            return z, it
        if it == max_iter:
            return None
        jac = jacobian(spec, z[:n], z[n])
        bordered = np.zeros((n + 1, n + 1))
        bordered[:n, :n] = jac
        bordered[:n, n] = _field_u0_derivative(spec, z[:n], z[n])
        bordered[n, :] = direction
        rhs = np.zeros(n + 1)
        rhs[:n] = -res
        rhs[n] = -(direction @ (z - z0))
        try:
            dz = np.linalg.solve(bordered, rhs)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(dz)):
            return None
        z = z + dz
    return None


def _tangent(spec: NetworkSpec, z: np.ndarray, prev: np.ndarray) -> np.ndarray:
    """Unit tangent of the equilibrium curve at z, oriented along ``prev``."""
    n = spec.N
    bordered = np.zeros((n + 1, n + 1))
    bordered[:n, :n] = jacobian(spec, z[:n], z[n])
    bordered[:n, n] = _field_u0_derivative(spec, z[:n], z[n])
    bordered[n, :] = prev
    rhs = np.zeros(n + 1)
    rhs[n] = 1.0
    try:
        t = np.linalg.solve(bordered, rhs)
    except np.linalg.LinAlgError:
        # singular exactly at a branch point; reuse the previous tangent
        return prev.copy()
    t /= np.linalg.norm(t)
    return -t if t @ prev < 0 else t


def _leading_eig(spec: NetworkSpec, x: np.ndarray, u0: float) -> float:
    return float(np.max(np.linalg.eigvals(jacobian(spec, x, u0)).real))


def _test_eigenvalue(spec: NetworkSpec, x: np.ndarray, u0: float) -> float:
    """Real Jacobian eigenvalue of smallest magnitude (signed)."""
    vals = np.linalg.eigvals(jacobian(spec, x, u0))
    scale = max(1.0, float(np.max(np.abs(vals))))
    real = vals[np.abs(vals.imag) <= 1e-8 * scale].real
    if real.size == 0:
        return np.nan
    return float(real[np.argmin(np.abs(real))])


def branch_point_at(
    spec: NetworkSpec,
    x,
    u0: float,
    tangent=None,
) -> BranchPoint:
    """Build a fully populated BranchPoint from a converged equilibrium."""
    x = np.asarray(x, dtype=float).reshape(-1)
    z = np.concatenate([x, [u0]])
    if tangent is None:
        seed = np.zeros(spec.N + 1)
        seed[-1] = 1.0
        tangent = _tangent(spec, z, seed)
    else:
        tangent = np.asarray(tangent, dtype=float)
        tangent = tangent / np.linalg.norm(tangent)
    lead = _leading_eig(spec, x, u0)
    return BranchPoint(u0=float(u0), x=x, leading_jac_eig=lead, stable=lead < 0.0, tangent=tangent)


# ---------------------------------------------------------------------------
# Branch tracing


def trace_branch(
    spec: NetworkSpec,
    seed: BranchPoint,
    u0_range,
    step: StepParams | None = None,
    detect: bool = True,
) -> Branch:
    """Pseudo-arclength continuation of the equilibrium branch through
    ``seed`` until it leaves ``u0_range``, exhausts the point budget, or the
    step underflows.

    The step halves on correction failure, grows by ``step.grow`` after fast
    corrections, and stays inside [step.min_step, step.max_step].

    Raises StallError after ``step.max_stalls`` consecutive underflows.
    """
    lo, hi = float(u0_range[0]), float(u0_range[1])
    if not lo < hi:
        raise ValueError(f"invalid u0 range [{lo}, {hi}]")
    step = step or StepParams()
    n = spec.N

    branch = Branch(points=[seed])
    z = np.concatenate([seed.x, [seed.u0]])
    t = seed.tangent.copy()
    h = step.initial
    stalls = 0
    trail = [z.copy()]

    while len(branch.points) < step.max_points:
        z_pred = z + h * t
        result = _bordered_correct(spec, z_pred, t, max_iter=step.corrector_iters)
        accept = False
        if result is not None:
            z_new, iters = result
            dist = np.linalg.norm(z_new - z)
            if dist <= step.max_step * (1.0 + 1e-9) and np.isfinite(dist):
                accept = True
        if not accept:
            if h <= step.min_step * (1.0 + 1e-12):
                stalls += 1
                if stalls >= step.max_stalls:
                    raise StallError(
                        f"step underflowed {stalls} times near u0={z[n]:.6g}"
                    )
            h = max(h * step.shrink, step.min_step)
            continue
        stalls = 0

        u0_new = z_new[n]
        if u0_new < lo - 1e-12 or u0_new > hi + 1e-12:
            boundary = lo if u0_new < lo else hi
            closed = _close_on_boundary(spec, z, z_new, boundary)
            if closed is not None:
                t_new = _tangent(spec, closed, t)
                branch.points.append(
                    branch_point_at(spec, closed[:n], closed[n], t_new)
                )
            break
        if _closes_loop(trail, z, z_new):
            log.debug("loop closed near u0=%.6g after %d points", u0_new, len(trail))
            break

        t = _tangent(spec, z_new, t)
        z = z_new
        trail.append(z.copy())
        branch.points.append(branch_point_at(spec, z[:n], z[n], t))
        if iters <= step.fast_iters:
            h = min(h * step.grow, step.max_step)

    if detect:
        branch.events = detect_events(spec, branch.points)
    return branch


#: revisiting an earlier stretch of the same branch within this distance,
#: moving the same way, terminates the trace (closed equilibrium curve)
CLOSURE_TOL = 2e-3
_CLOSURE_GAP = 10  # segments to skip right behind the current point


def _closes_loop(trail, z, z_new) -> bool:
    if len(trail) < _CLOSURE_GAP + 2:
        return False
    pts = np.asarray(trail[: len(trail) - _CLOSURE_GAP])
    a, b = pts[:-1], pts[1:]
    d = b - a
    seg_len2 = np.einsum("ij,ij->i", d, d)
    seg_len2[seg_len2 == 0] = 1.0
    s = np.clip(np.einsum("ij,ij->i", z_new - a, d) / seg_len2, 0.0, 1.0)
    proj = a + s[:, None] * d
    dist = np.linalg.norm(proj - z_new, axis=1)
    heading = z_new - z
    hn = np.linalg.norm(heading)
    if hn == 0:
        return False
    heading = heading / hn
    seg_dir = d / np.sqrt(seg_len2)[:, None]
    same_way = seg_dir @ heading > 0.9
    return bool(np.any((dist <= CLOSURE_TOL) & same_way))


def _close_on_boundary(spec, z_in, z_out, boundary):
    """Land the final branch point exactly on the u0 boundary."""
    n = spec.N
    span = z_out[n] - z_in[n]
    if abs(span) < 1e-14:
        return None
    frac = (boundary - z_in[n]) / span
    x_guess = z_in[:n] + frac * (z_out[:n] - z_in[:n])
    try:
        x_b = newton_equilibrium(spec, x_guess, boundary)
    except (NewtonDiverged, SingularJacobian):
        return None
    return np.concatenate([x_b, [boundary]])


# ---------------------------------------------------------------------------
# Event detection


def _secant_point(spec, za, zb, s):
    """Correct the convex combination (1-s) za + s zb back onto the branch,
    constraining along the secant so the parametrization survives folds."""
    d = zb - za
    norm = np.linalg.norm(d)
    if norm == 0:
        return za.copy()
    d = d / norm
    z0 = za + s * (zb - za)
    result = _bordered_correct(spec, z0, d, max_iter=12)
    return None if result is None else result[0]


def _refine_event(spec, za, zb, fa, fb, max_iter: int = 30):
    """Bisect the segment [za, zb] on the near-zero real eigenvalue.

    Returns (z, eig) with |eig| <= EVENT_EIG_TOL, or None when the sign
    change does not correspond to an actual crossing (the smallest-magnitude
    eigenvalue can change identity discontinuously along a branch).
    """
    sa, sb = 0.0, 1.0
    z_best, f_best = None, np.inf
    for _ in range(max_iter):
        sm = 0.5 * (sa + sb)
        zm = _secant_point(spec, za, zb, sm)
        if zm is None:
            return None
        fm = _test_eigenvalue(spec, zm[:-1], zm[-1])
        if not np.isfinite(fm):
            return None
        if abs(fm) < abs(f_best):
            z_best, f_best = zm, fm
        if abs(fm) <= EVENT_EIG_TOL:
            return zm, fm
        if fa * fm < 0:
            sb, fb = sm, fm
        else:
            sa, fa = sm, fm
    if z_best is not None and abs(f_best) <= 1e-6:
        return z_best, f_best
    return None


def _kernel_vector(spec, x, u0):
    """Unit right eigenvector of J for its real eigenvalue nearest zero."""
    jac = jacobian(spec, x, u0)
    vals, vecs = np.linalg.eig(jac)
    scale = max(1.0, float(np.max(np.abs(vals))))
    real = [i for i in range(len(vals)) if abs(vals[i].imag) <= 1e-8 * scale]
    if not real:
        return None
    idx = min(real, key=lambda i: abs(vals[i].real))
    v = vecs[:, idx].real.copy()
    v /= np.linalg.norm(v)
    imax = int(np.argmax(np.abs(v)))
    return -v if v[imax] < 0 else v


def _classify_neutral_event(spec, u0_event):
    """Classify a neutral-branch crossing via the reduced scalar map."""
    from . import reduction  # deferred: reduction imports this module

    try:
        eig = eigenpair_near(spec, 1.0 / u0_event)
    except (NoStrictLeader, ZeroDivisionError):
        return None
    try:
        report = reduction.ls_derivatives(spec, max_entry_normalized(eig))
    except Exception as exc:  # reduction failure leaves the event unclassified
        log.debug("reduction failed at u0=%.6g: %s", u0_event, exc)
        return None
    return report


def detect_events(spec: NetworkSpec, points) -> list:
    """Scan consecutive branch points for bifurcations.

    Two test functions are monitored: (a) the real Jacobian eigenvalue of
    smallest magnitude and (b) the u0 component of the branch tangent.  A
    sign change in (a) flags a steady-state bifurcation candidate, refined
    by bisection; a simultaneous sign change in (b) marks a fold.  Neutral-
    branch candidates are classified through the Lyapunov-Schmidt reduction,
    remaining ones stay Unclassified.
    """
    events = []
    if len(points) < 2:
        return events
    tests = [_test_eigenvalue(spec, p.x, p.u0) for p in points]
    for i in range(len(points) - 1):
        fa, fb = tests[i], tests[i + 1]
        if not (np.isfinite(fa) and np.isfinite(fb)) or fa * fb >= 0:
            continue
        pa, pb = points[i], points[i + 1]
        za = np.concatenate([pa.x, [pa.u0]])
        zb = np.concatenate([pb.x, [pb.u0]])
        refined = _refine_event(spec, za, zb, fa, fb)
        if refined is None:
            log.debug(
                "discarding spurious eigenvalue sign change on [%0.6g, %0.6g]",
                pa.u0, pb.u0,
            )
            continue
        z_ev, eig_ev = refined
        x_ev, u0_ev = z_ev[:-1], float(z_ev[-1])
        fold = pa.tangent[-1] * pb.tangent[-1] < 0

        kind = EventKind.UNCLASSIFIED
        detail = None
        if fold:
            kind = EventKind.SADDLE_NODE
        elif np.linalg.norm(x_ev) < LABEL_ZERO_TOL and np.linalg.norm(spec.b) == 0:
            detail = _classify_neutral_event(spec, u0_ev)
            if detail is not None:
                from .reduction import Classification

                kind = {
                    Classification.SUPERCRITICAL_PITCHFORK: EventKind.PITCHFORK,
                    Classification.SUBCRITICAL_PITCHFORK: EventKind.PITCHFORK,
                    Classification.TRANSCRITICAL: EventKind.TRANSCRITICAL,
                    Classification.DEGENERATE: EventKind.UNCLASSIFIED,
                }[detail.classification]
        events.append(
            BifurcationEvent(
                kind=kind,
                u0=u0_ev,
                x=x_ev,
                eigenvalue=float(eig_ev),
                kernel=_kernel_vector(spec, x_ev, u0_ev),
                detail=detail,
                segment=i,
            )
        )
    return events


# ---------------------------------------------------------------------------
# Branch switching


def _fixed_amplitude_solve(spec, event, offset, max_iter: int = 30):
    """Solve F(x_event + offset + y, u0) = 0 with y orthogonal to the
    kernel, unknowns (y, u0).  Pinning the kernel amplitude keeps Newton
    from sliding back into the parent equilibrium's basin."""
    n = spec.N
    k = event.kernel
    y = np.zeros(n)
    u0 = event.u0
    for _ in range(max_iter):
        x = event.x + offset + y
        res = np.concatenate([vector_field(spec, x, u0), [k @ y]])
        if np.linalg.norm(res) < NEWTON_TOL:
            return x, u0
        bordered = np.zeros((n + 1, n + 1))
        bordered[:n, :n] = jacobian(spec, x, u0)
        bordered[:n, n] = _field_u0_derivative(spec, x, u0)
        bordered[n, :n] = k
        try:
            delta = np.linalg.solve(bordered, -res)
        except np.linalg.LinAlgError:
            return None
        if not np.all(np.isfinite(delta)):
            return None
        y = y + delta[:n]
        u0 = u0 + delta[n]
    return None


def switch_branch(
    spec: NetworkSpec,
    event: BifurcationEvent,
    direction: int,
    eps: float = 1e-2,
    du0: float = 5e-3,
) -> BranchPoint:
    """Jump from a steady-state bifurcation onto the emanating branch.

    The seed displacement is direction * eps along the kernel direction at
    the event.  The emanating point is found by a bordered Newton solve
    that pins the kernel amplitude at eps and frees u0 (a plain Newton
    solve at u0 displaced by +-du0 is tried as a fallback); the result is
    accepted only when it leaves the parent branch.

    Raises:
        ValueError: called on a fold (no distinct branch emanates there).
        NoBranchFound: every attempt fell back onto the parent branch.
    """
    if event.kind == EventKind.SADDLE_NODE:
        raise ValueError("cannot switch branches at a saddle-node (fold) event")
    if direction not in (-1, 1):
        raise ValueError(f"direction must be +1 or -1, got {direction}")
    if event.kernel is None:
        raise NoBranchFound("event carries no kernel direction")

    def off_parent(x_new, u0_new):
        try:
            parent = newton_equilibrium(spec, event.x, u0_new)
        except (NewtonDiverged, SingularJacobian):
            return True
        return np.linalg.norm(x_new - parent) > 1e-3 * (1.0 + np.linalg.norm(parent))

    def finish(x_new, u0_new):
        # Keep the outward secant as the seed tangent: refining it through
        # the bordered solve this close to the singular point can snap onto
        # the parent branch's tangent instead.
        z_ev = np.concatenate([event.x, [event.u0]])
        z_new = np.concatenate([x_new, [u0_new]])
        outward = z_new - z_ev
        nrm = np.linalg.norm(outward)
        if nrm == 0:
            outward = np.concatenate([event.kernel, [0.0]])
        else:
            outward = outward / nrm
        return branch_point_at(spec, x_new, u0_new, outward)

    offset = direction * eps * event.kernel
    solved = _fixed_amplitude_solve(spec, event, offset)
    if solved is not None and off_parent(*solved):
        return finish(*solved)

    for signed_du0 in (du0, -du0):
        u0_try = event.u0 + signed_du0
        try:
            candidate = newton_equilibrium(spec, event.x + offset, u0_try)
        except (NewtonDiverged, SingularJacobian):
            continue
        if off_parent(candidate, u0_try):
            return finish(candidate, u0_try)
    raise NoBranchFound(
        f"no branch distinct from the parent found at u0={event.u0:.6g}"
    )


# ---------------------------------------------------------------------------
# Whole-diagram driver


@dataclass(frozen=True)
class DiagramOptions:
    """Options for the recursive diagram driver."""

    step: StepParams = field(default_factory=StepParams)
    max_depth: int = 2
    switch_eps: float = 1e-2
    switch_du0: float = 5e-3
    labeler: object = None  # callable(BranchPoint) -> str


def _sign_pattern(x: np.ndarray) -> str:
    return "".join(
        "0" if abs(v) <= LABEL_ZERO_TOL else ("+" if v > 0 else "-") for v in x
    )


def default_label(point: BranchPoint) -> str:
    return _sign_pattern(point.x)


def _label_branch(branch: Branch, labeler) -> str:
    labeler = labeler or default_label
    point = None
    for p in reversed(branch.points):
        if p.stable:
            point = p
            break
    if point is None:
        point = branch.points[-1]
    return labeler(point)


def diagram(
    spec: NetworkSpec,
    u0_range,
    options: DiagramOptions | None = None,
) -> list:
    """Trace the equilibrium branch through the neutral/primary state and
    recurse through its bifurcations (to ``options.max_depth``), producing
    the deterministic branch set behind a full bifurcation diagram.

    Per-branch failures are logged and skipped rather than aborting the
    whole diagram.
    """
    options = options or DiagramOptions()
    lo, hi = float(u0_range[0]), float(u0_range[1])

    x0 = newton_equilibrium(spec, np.zeros(spec.N), lo)
    seed_tangent = np.zeros(spec.N + 1)
    seed_tangent[-1] = 1.0
    primary_seed = branch_point_at(spec, x0, lo, seed_tangent)

    branches: list[Branch] = []
    labels_seen: dict[str, int] = {}

    def add(branch: Branch) -> None:
        label = _label_branch(branch, options.labeler)
        count = labels_seen.get(label, 0)
        labels_seen[label] = count + 1
        branch.label = label if count == 0 else f"{label}/{count + 1}"
        branches.append(branch)

    def trace_from(seed: BranchPoint, depth: int) -> None:
        step = options.step
        if depth > 0:
            # switched seeds sit eps away from a singular point; creep away
            # from it before taking full-size steps
            step = replace(step, initial=min(step.initial, 0.5 * options.switch_eps))
        try:
            branch = trace_branch(spec, seed, (lo, hi), step)
        except StallError as exc:
            log.warning("branch trace stalled: %s", exc)
            return
        add(branch)
        if depth >= options.max_depth:
            return
        for event in branch.events:
            if event.kind == EventKind.SADDLE_NODE:
                continue
            for direction in (1, -1):
                try:
                    seed_new = switch_branch(
                        spec, event, direction,
                        eps=options.switch_eps, du0=options.switch_du0,
                    )
                except (NoBranchFound, ValueError) as exc:
                    log.debug(
                        "no switched branch at u0=%.6g direction %+d: %s",
                        event.u0, direction, exc,
                    )
                    continue
                if _already_covered(branches, seed_new):
                    continue
                trace_from(seed_new, depth + 1)

    trace_from(primary_seed, 0)
    return branches


def _already_covered(branches, point: BranchPoint, tol: float = CLOSURE_TOL) -> bool:
    """True when a previously traced branch passes through ``point``."""
    z = np.concatenate([point.x, [point.u0]])
    for branch in branches:
        pts = branch.points
        for a, b in zip(pts[:-1], pts[1:]):
            za = np.concatenate([a.x, [a.u0]])
            zb = np.concatenate([b.x, [b.u0]])
            d = zb - za
            denom = d @ d
            s = 0.0 if denom == 0 else np.clip((z - za) @ d / denom, 0.0, 1.0)
            if np.linalg.norm(za + s * d - z) <= tol:
                return True
    return False
