"""Spatially homogeneous dynamics in complex time: dw/dt = f(w).

Constant-in-x solutions of the PDE family reduce to scalar ODEs with a monic
polynomial right-hand side f(w) = prod_j (w - e_j).  This module integrates
such fields along polylines in complex time, computes the residue data

    eta_j = 1 / f'(e_j),     sum_j eta_j = 0   (degree >= 2),

whose scaled values 2 pi i eta_j are the imaginary periods around each
equilibrium, and classifies the closure of the subgroup of complex time
shifts they generate (Z, Z^2, R, R x Z, or R^2, with an AMBIGUOUS verdict
when the decision would rest on a near-rational ratio).

For the normalized quadratic f(w) = w^2 - 1 the real-time orbit through 0 is
the explicit kink Gamma(t) = -tanh(t), with poles at t = i pi (k + 1/2); in
imaginary time every non-equilibrium orbit is periodic with period pi, some
passing through w = infinity.  Degree 2 is special in that the chart v = 1/w
pulls the field back to another polynomial, so `integrate` can continue
orbits across infinity on the Riemann sphere; for degree >= 3 leaving
|w| = escape_radius is reported as blow-up instead.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field as dc_field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import ConvergenceError, DomainError, PoleSignal


def quadratic_orbit(t, pole_guard: float = 1e-12):
    """The explicit orbit Gamma(t) = -tanh(t) of dw/dt = w^2 - 1 through 0.

    Accepts real or complex input; raises PoleSignal within pole_guard of the
    poles t = i pi (k + 1/2).
    """
    tv = np.asarray(t, dtype=complex)
    k = np.round(tv.imag / math.pi - 0.5)
    dist = np.hypot(tv.real, tv.imag - math.pi * (k + 0.5))
    if np.any(dist < pole_guard):
        raise PoleSignal(f"quadratic orbit evaluated within {pole_guard:g} of a pole")
    vals = -np.tanh(tv)
    if np.ndim(t) == 0:
        v = complex(vals)
        return v.real if v.imag == 0.0 else v
    if np.isrealobj(np.asarray(t)):
        return vals.real
    return vals


@dataclass
class PolyField:
    """Monic polynomial vector field f(w) = prod_j (w - e_j) with simple roots."""

    roots: np.ndarray

    def __post_init__(self):
        r = np.atleast_1d(np.asarray(self.roots, dtype=complex))
        if r.ndim != 1 or r.size == 0:
            raise DomainError("need a nonempty 1-d array of roots")
        scale = max(1.0, float(np.max(np.abs(r))))
        for i, j in itertools.combinations(range(len(r)), 2):
            if abs(r[i] - r[j]) < 1e-8 * scale:
                raise DomainError(
                    f"roots {i} and {j} closer than 1e-8 relative: {r[i]} ~ {r[j]}"
                )
        self.roots = r

    @classmethod
    def quadratic(cls) -> "PolyField":
        """The normalized field w^2 - 1."""
        return cls(np.array([1.0 + 0j, -1.0 + 0j]))

    @classmethod
    def cyclotomic(cls, d: int) -> "PolyField":
        """f(w) = w^d - 1 via its root set, the d-th roots of unity."""
        if d < 1:
            raise DomainError("degree must be positive")
        return cls(np.exp(2j * math.pi * np.arange(d) / d))

    @property
    def degree(self) -> int:
        return len(self.roots)

    @property
    def coeffs(self) -> np.ndarray:
        """Monic coefficients, highest power first (np.poly convention)."""
        return np.poly(self.roots)

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        return np.prod(w[..., None] - self.roots, axis=-1)

    def fprime_at_roots(self) -> np.ndarray:
        """f'(e_j) = prod_{k != j} (e_j - e_k), exactly the residue inverses."""
        diff = self.roots[:, None] - self.roots[None, :]
        np.fill_diagonal(diff, 1.0)
        return np.prod(diff, axis=1)

    @property
    def eta(self) -> np.ndarray:
        """Residues eta_j = 1 / f'(e_j); they sum to zero for degree >= 2."""
        return 1.0 / self.fprime_at_roots()


@dataclass
class OdeTrajectory:
    """Samples of one complex-time integration (concatenated over segments)."""

    t: np.ndarray            # positions in complex time
    w: np.ndarray            # solution values (inf where passing through infinity)
    sigma: np.ndarray        # cumulative arclength parameter along the path
    final: complex | None
    diverged: bool = False
    blowup_sigma: float | None = None
    blowup_t: complex | None = None
    sup_crossings: list = dc_field(default_factory=list)  # (sigma, t) with |w| rising past threshold
    chart_swaps: int = 0


def integrate(
    fld: PolyField,
    w0: complex,
    path,
    *,
    rtol: float = 1e-11,
    atol: float = 1e-13,
    escape_radius: float = 1e12,
    sup_threshold: float = 1e6,
    sphere_chart: bool | None = None,
    t_eval_per_unit: int = 0,
    max_step: float = math.inf,
) -> OdeTrajectory:
    """Integrate dw/dt = f(w) from w0 along the polyline 0 -> path[0] -> ...

    Each segment is parametrized by arclength sigma with dw/dsigma equal to
    the segment direction times f(w).  For degree-2 fields (default) the
    integration swaps to the v = 1/w chart when |w| grows past 4 and back
    below 2, so orbits continue regularly through infinity; otherwise
    crossing escape_radius terminates the run as blow-up.  Crossings of
    sup_threshold (rising |w|) are recorded with their path position.
    t_eval_per_unit > 0 adds that many uniform samples per unit arclength on
    top of the solver's own steps.
    """
    if sphere_chart is None:
        sphere_chart = fld.degree == 2
    if sphere_chart and fld.degree != 2:
        raise DomainError("the 1/w chart pullback is polynomial only for degree 2")

    waypoints = [complex(p) for p in np.atleast_1d(np.asarray(path, dtype=complex))]
    coeffs = fld.coeffs  # [1, c1, c0] for degree 2
    swap_out, swap_in = 4.0, 2.0

    ts: list[np.ndarray] = []
    ws: list[np.ndarray] = []
    sigmas: list[np.ndarray] = []
    crossings: list[tuple[float, complex]] = []
    swaps = 0

    far_field = 10.0 * (1.0 + float(np.max(np.abs(fld.roots))))
    chart = "w"
    y = np.array([w0.real, w0.imag]) if abs(w0) <= swap_out or not sphere_chart else None
    if y is None:
        chart = "v"
        v0 = 1.0 / w0
        y = np.array([v0.real, v0.imag])

    t_here = 0.0 + 0.0j
    sigma0 = 0.0
    diverged = False
    blow_sigma = blow_t = None

    for target in waypoints:
        seg = target - t_here
        seg_len = abs(seg)
        if seg_len == 0.0:
            continue
        direction = seg / seg_len
        s_local = 0.0

        while s_local < seg_len and not diverged:
            if chart == "w":
                def rhs(_s, yy):
                    w = complex(yy[0], yy[1])
                    dw = direction * np.prod(w - fld.roots)
                    return [dw.real, dw.imag]

                events = []

                def ev_sup(_s, yy):
                    return yy[0] ** 2 + yy[1] ** 2 - sup_threshold ** 2
                ev_sup.direction = 1.0
                ev_sup.terminal = False
                events.append(ev_sup)

                if sphere_chart:
                    def ev_swap(_s, yy):
                        return yy[0] ** 2 + yy[1] ** 2 - swap_out ** 2
                    ev_swap.direction = 1.0
                    ev_swap.terminal = True
                    events.append(ev_swap)
                else:
                    def ev_escape(_s, yy):
                        return yy[0] ** 2 + yy[1] ** 2 - escape_radius ** 2
                    ev_escape.direction = 1.0
                    ev_escape.terminal = True
                    events.append(ev_escape)

                    # A steep pole stalls the solver while |w| is still far
                    # below escape_radius, so record entry into the far field
                    # (vector field dominated by the leading power) as a
                    # blow-up witness for min-step failures.
                    def ev_far(_s, yy):
                        return yy[0] ** 2 + yy[1] ** 2 - far_field ** 2
                    ev_far.direction = 1.0
                    ev_far.terminal = False
                    events.append(ev_far)
            else:
                c1, c0 = coeffs[1], coeffs[2]

                def rhs(_s, yy):
                    v = complex(yy[0], yy[1])
                    dv = -direction * (1.0 + c1 * v + c0 * v * v)
                    return [dv.real, dv.imag]

                # |v| can dip under any fixed threshold within one solver
                # step, so detect closest approach to v = 0 (radial speed
                # changing sign) and filter by |v| afterwards.
                def ev_sup(s, yy):
                    d = rhs(s, yy)
                    return yy[0] * d[0] + yy[1] * d[1]
                ev_sup.direction = 1.0   # minimum of |v| = maximum of |w|
                ev_sup.terminal = False

                def ev_back(_s, yy):
                    return yy[0] ** 2 + yy[1] ** 2 - swap_in ** -2
                ev_back.direction = 1.0   # |v| rising past 1/2 = |w| below 2
                ev_back.terminal = True
                events = [ev_sup, ev_back]

            t_eval = None
            if t_eval_per_unit > 0:
                n_ev = max(2, int((seg_len - s_local) * t_eval_per_unit))
                t_eval = np.linspace(s_local, seg_len, n_ev)

            sol = solve_ivp(
                rhs,
                (s_local, seg_len),
                y,
                method="DOP853",
                rtol=rtol,
                atol=atol,
                events=events,
                dense_output=False,
                t_eval=t_eval,
                max_step=max_step,
            )
            if sol.status == -1:
                # min-step failure: legitimate only as a pole approach.  With
                # t_eval the reported tail can sit well before the failure
                # point, so trust the far-field crossing event as witness.
                far_hits = (sol.t_events[2] if len(sol.t_events) > 2
                            else np.empty(0))
                tail_big = (sol.y.size > 0
                            and sol.y[0, -1] ** 2 + sol.y[1, -1] ** 2
                            >= sup_threshold ** 2)
                if chart == "w" and (far_hits.size > 0 or tail_big):
                    diverged = True
                else:
                    raise ConvergenceError(f"integrator failed: {sol.message}")

            vals = sol.y[0] + 1j * sol.y[1]
            w_vals = vals if chart == "w" else _invert_chart(vals)
            ts.append(t_here + direction * sol.t)
            ws.append(w_vals)
            sigmas.append(sigma0 + sol.t)

            for s_ev, y_ev in zip(sol.t_events[0], sol.y_events[0]):
                if chart == "v" and np.hypot(*y_ev) * sup_threshold > 1.0:
                    continue   # closest approach to infinity was not close
                crossings.append((sigma0 + float(s_ev), t_here + direction * s_ev))

            if sol.status == 1:  # terminal event: swap or escape
                s_local = float(sol.t_events[1][0])
                y = sol.y_events[1][0].copy()
                if chart == "w" and sphere_chart:
                    w_here = complex(y[0], y[1])
                    v_here = 1.0 / w_here
                    y = np.array([v_here.real, v_here.imag])
                    chart = "v"
                    swaps += 1
                elif chart == "v":
                    v_here = complex(y[0], y[1])
                    w_here = 1.0 / v_here
                    y = np.array([w_here.real, w_here.imag])
                    chart = "w"
                    swaps += 1
                else:
                    diverged = True
                    blow_sigma = sigma0 + s_local
                    blow_t = t_here + direction * s_local
            elif diverged:
                s_end = float(sol.t[-1]) if sol.t.size else s_local
                if len(sol.t_events) > 2 and sol.t_events[2].size:
                    s_end = max(s_end, float(sol.t_events[2][-1]))
                blow_sigma = sigma0 + s_end
                blow_t = t_here + direction * s_end
            else:
                s_local = seg_len
                y = sol.y[:, -1].copy()

        t_here = target
        sigma0 += seg_len
        if diverged:
            break

    final = None
    if not diverged:
        if chart == "v":
            v_fin = complex(y[0], y[1])
            final = 1.0 / v_fin if v_fin != 0.0 else complex(math.inf, 0.0)
        else:
            final = complex(y[0], y[1])

    return OdeTrajectory(
        t=np.concatenate(ts) if ts else np.array([], dtype=complex),
        w=np.concatenate(ws) if ws else np.array([], dtype=complex),
        sigma=np.concatenate(sigmas) if sigmas else np.array([]),
        final=final,
        diverged=diverged,
        blowup_sigma=blow_sigma,
        blowup_t=blow_t,
        sup_crossings=crossings,
        chart_swaps=swaps,
    )


def _invert_chart(v: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        w = 1.0 / v
    w[v == 0.0] = complex(math.inf, 0.0)
    return w


# ---------------------------------------------------------------------------
# imaginary periods and their subgroup closure


@dataclass
class PeriodLattice:
    """Imaginary periods 2 pi i eta_j and the closure of the group they generate."""

    generators: list[complex]
    eta: np.ndarray
    closure: str
    degenerate_subsets: list[tuple[int, ...]]  # complex sums near zero
    tol: float


def period_lattice(fld: PolyField, tol: float = 1e-9) -> PeriodLattice:
    """Period generators 2 pi i / f'(e_j) and their closure classification.

    Also reports proper index subsets whose residue sums nearly vanish in the
    full complex sense; each such subset gives a closed complex-time loop.
    """
    if fld.degree < 2:
        raise DomainError("period lattice needs degree >= 2")
    eta = fld.eta
    gens = [2j * math.pi * e for e in eta]
    scale = float(np.max(np.abs(eta)))
    subsets = _small_subsets(eta, tol * scale, key=lambda s: abs(s))
    return PeriodLattice(
        generators=gens,
        eta=eta,
        closure=classify_subgroup_closure(gens),
        degenerate_subsets=subsets,
        tol=tol,
    )


def _small_subsets(eta: np.ndarray, threshold: float, key) -> list[tuple[int, ...]]:
    d = len(eta)
    if d > 20:
        raise DomainError(f"subset scan limited to degree <= 20, got {d}")
    out = []
    for size in range(1, d):
        for J in itertools.combinations(range(d), size):
            if key(sum(eta[j] for j in J)) < threshold:
                out.append(J)
    return out


def degeneracy_scan(fld: PolyField, tol: float = 1e-8) -> list[tuple[int, ...]]:
    """Proper nonempty subsets J with |sum_{j in J} Re eta_j| below tol (relative).

    These are exactly the degeneracies that produce heteroclinic
    saddle-to-saddle connections in the compactified phase portrait; the
    complement of a listed subset is always listed too since the full real
    parts sum to zero.
    """
    eta = fld.eta
    scale = float(np.max(np.abs(eta)))
    return _small_subsets(eta, tol * scale, key=lambda s: abs(s.real))


def classify_subgroup_closure(
    generators,
    *,
    rational_tol: float = 1e-12,
    ambiguous_tol: float = 1e-8,
    height: int = 10 ** 6,
    small_height: int = 1000,
) -> str:
    """Closure in C of the additive group generated by the given complex numbers.

    Returns one of "Z", "Z2", "R", "RxZ", "R2", "AMBIGUOUS".  Ratios are
    declared rational when a continued-fraction convergent p/q with
    q <= height matches to rational_tol (relative); declared AMBIGUOUS when
    they merely come within ambiguous_tol of a low (q <= small_height)
    rational, since then the verdict would hinge on digits we do not have.
    The names mean: discrete rank 1 / rank 2 lattice, dense line, dense line
    plus transverse lattice, dense plane.
    """
    gens = [complex(g) for g in np.atleast_1d(np.asarray(generators, dtype=complex))]
    if not gens:
        return "Z"
    scale = max(abs(g) for g in gens)
    if scale == 0.0:
        return "Z"
    gens = [g for g in gens if abs(g) > 1e-14 * scale]

    # span test: largest parallelogram area over generator pairs
    pairs = list(itertools.combinations(range(len(gens)), 2))
    best_area, basis = 0.0, None
    for i, j in pairs:
        area = abs((gens[i].conjugate() * gens[j]).imag)
        if area > best_area:
            best_area, basis = area, (gens[i], gens[j])

    if best_area <= 1e-12 * scale * scale:
        base = min(gens, key=abs)
        verdicts = {
            _ratio_class((g / base).real, rational_tol, ambiguous_tol, height, small_height)
            for g in gens
        }
        if "ambiguous" in verdicts:
            return "AMBIGUOUS"
        return "Z" if verdicts <= {"rational"} else "R"

    ga, gb = basis
    det = ga.real * gb.imag - ga.imag * gb.real
    verdicts = set()
    for g in gens:
        x = (g.real * gb.imag - g.imag * gb.real) / det
        y = (ga.real * g.imag - ga.imag * g.real) / det
        verdicts.add(_ratio_class(x, rational_tol, ambiguous_tol, height, small_height))
        verdicts.add(_ratio_class(y, rational_tol, ambiguous_tol, height, small_height))
    if "ambiguous" in verdicts:
        return "AMBIGUOUS"
    if verdicts <= {"rational"}:
        return "Z2"

    return _dense_directions(gens, scale)


def _ratio_class(r: float, rational_tol, ambiguous_tol, height, small_height) -> str:
    """Continued-fraction classification of a real ratio.

    A convergent p/q counts as an exact rational only when its error also
    beats the generic 1/q^2 floor by three orders of magnitude: quadratic
    irrationals dip under any fixed tolerance once q is large (the golden
    ratio reaches 7e-13 within q < 10^6), but never under eps * q^2.
    """
    ref = max(1.0, abs(r))
    best_small = math.inf
    x = r
    p_prev, q_prev, p, q = 1, 0, int(math.floor(r)), 1
    err = abs(r - p)
    best_small = err
    while True:
        if err < rational_tol * ref and q <= height and err * q * q < 1e-3 * ref:
            return "rational"
        if q <= small_height:
            best_small = min(best_small, err)
        if q > height:
            break
        frac = x - math.floor(x)
        if frac < 1e-18:
            break
        x = 1.0 / frac
        a = int(math.floor(x))
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        err = abs(r - p / q)
    if best_small < ambiguous_tol * ref:
        return "ambiguous"
    return "irrational"


def _dense_directions(gens: list[complex], scale: float) -> str:
    """Integer-combination reduction to separate dense and lattice directions.

    Repeatedly subtracts nearest-integer multiples of shorter generators from
    longer ones.  Rationally dependent directions telescope to (noise-level)
    zero and are dropped; irrationally dependent ones shrink geometrically
    below dense_tol, marking a dense direction; whatever keeps a stable norm
    transverse to the dense line is a residual lattice factor.
    """
    drop_tol = 1e-12 * scale
    dense_tol = 1e-6 * scale
    V = [np.array([g.real, g.imag]) for g in gens]

    for _ in range(400):
        V = [v for v in V if float(np.hypot(*v)) > drop_tol]
        V.sort(key=lambda v: float(np.hypot(*v)))
        changed = False
        for i in range(1, len(V)):
            for j in range(i):
                denom = float(V[j] @ V[j])
                if denom <= drop_tol * drop_tol:
                    continue
                c = round(float(V[i] @ V[j]) / denom)
                if c != 0:
                    cand = V[i] - c * V[j]
                    if float(np.hypot(*cand)) < float(np.hypot(*V[i])) * (1.0 - 1e-12):
                        V[i] = cand
                        changed = True
        if not changed:
            break

    survivors = [v for v in V if float(np.hypot(*v)) > drop_tol]
    if not survivors:
        return "AMBIGUOUS"
    tiny = [v for v in survivors if float(np.hypot(*v)) <= dense_tol]
    big = [v for v in survivors if float(np.hypot(*v)) > dense_tol]
    if not tiny:
        return "AMBIGUOUS"
    # do the tiny vectors span the plane?
    for u, v in itertools.combinations(tiny, 2):
        cross = abs(u[0] * v[1] - u[1] * v[0])
        if cross > 1e-3 * float(np.hypot(*u)) * float(np.hypot(*v)):
            return "R2"
    return "RxZ" if big else "R"


# ---------------------------------------------------------------------------
# reversible second-order example


@dataclass
class ReversibleReport:
    """Integration record for the reversible oscillator w'' + w'^2 + w^2 - 3w = 0."""

    t: np.ndarray
    w: np.ndarray
    wdot: np.ndarray
    energy: np.ndarray
    energy_drift: float
    return_error_2pi: float | None
    equilibria: tuple[float, float] = (0.0, 3.0)


def periodic_data() -> tuple[float, float]:
    """Initial data of the exact solution w(t) = 2 + sqrt(2) cos t."""
    return (2.0 + math.sqrt(2.0), 0.0)


def homoclinic_data() -> tuple[float, float]:
    """Initial data on the E = 0 level whose orbit is homoclinic to w = 0."""
    return (1.0, math.sqrt(2.0 * (math.exp(-2.0) + 0.5)))


def exact_periodic(t):
    """The closed-form periodic solution 2 + sqrt(2) cos t."""
    return 2.0 + math.sqrt(2.0) * np.cos(np.asarray(t, dtype=float))


def reversible_energy(w, wdot):
    """E = wdot^2/2 - (exp(-2w) - 1 + 2w - w^2/2).

    E is an exact invariant precisely on its zero level (which contains the
    homoclinic orbit); elsewhere dE/dt = -2 wdot E, so it still serves as a
    sensitive integration check along E = 0.
    """
    w = np.asarray(w, dtype=float)
    wdot = np.asarray(wdot, dtype=float)
    return wdot ** 2 / 2.0 - (np.exp(-2.0 * w) - 1.0 + 2.0 * w - w ** 2 / 2.0)


def reversible_example_check(
    w0: float,
    dw0: float,
    t_end: float = 2.0 * math.pi,
    n_samples: int = 2001,
    rtol: float = 1e-12,
    atol: float = 1e-14,
) -> ReversibleReport:
    """Integrate the reversible oscillator and report invariants.

    The reversal symmetry is t -> -t, (w, wdot) -> (w, -wdot); orbits
    crossing wdot = 0 are symmetric arcs.  return_error_2pi holds the phase
    space distance between the states at t = 0 and t = 2 pi whenever the span
    covers a full 2 pi, which vanishes for the exact cosine solution.
    """
    t_eval = np.linspace(0.0, t_end, n_samples)

    def rhs(_t, y):
        w, v = y
        return [v, -v * v - w * w + 3.0 * w]

    sol = solve_ivp(
        rhs,
        (0.0, t_end),
        [w0, dw0],
        method="DOP853",
        rtol=rtol,
        atol=atol,
        t_eval=t_eval,
        dense_output=t_end >= 2.0 * math.pi,
    )
    if not sol.success:
        raise ConvergenceError(f"integrator failed: {sol.message}")

    w, wdot = sol.y
    energy = reversible_energy(w, wdot)
    ret = None
    if t_end >= 2.0 * math.pi:
        y2pi = sol.sol(2.0 * math.pi)
        ret = float(np.hypot(y2pi[0] - w0, y2pi[1] - dw0))
    return ReversibleReport(
        t=sol.t,
        w=w,
        wdot=wdot,
        energy=energy,
        energy_drift=float(np.max(np.abs(energy - energy[0]))),
        return_error_2pi=ret,
    )
