"""Classical-orbit quantities for the quadratic well in a hard box:
turning points, phase-plane area, orbit curves, and the quantum probability
of sitting in the classically forbidden part of the box.

The area integral uses the substitution x = x_t +- u^2 on any end whose
turning point lies at or inside the wall, which removes the square-root edge
of the integrand before composite Simpson is applied; ends strictly cut off
by a wall keep a smooth integrand and need no treatment.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .model import ConfinedPotential, DomainError, Eigenpair

_SIMPSON_PANELS = 2000   # per half-segment of the area integral


def turning_points(pot: ConfinedPotential, energy: float) -> tuple[float, ...]:
    """Boundaries of the classically allowed part of the box; empty tuple if
    the energy is at or below the well bottom or the allowed interval misses
    the box entirely. A zero-strength well is allowed everywhere."""
    if energy <= 0.0 and pot.k > 0.0:
        return ()
    if pot.k == 0.0:
        if energy <= 0.0:
            return ()
        return (pot.b1, pot.b2)
    r = math.sqrt(2.0 * energy / pot.k)
    lo = max(pot.d_m - r, pot.b1)
    hi = min(pot.d_m + r, pot.b2)
    if lo >= hi:
        return ()
    return (lo, hi)


def classical_region_lengths(pot: ConfinedPotential,
                             energy: float) -> tuple[float, float]:
    """(length of the allowed interval, gap between its right edge and the
    right wall); both zero when nothing in the box is allowed."""
    tp = turning_points(pot, energy)
    if not tp:
        return (0.0, 0.0)
    lo, hi = tp
    return (hi - lo, pot.b2 - hi)


def _simpson(f_vals: np.ndarray, h: float) -> float:
    w = np.full(len(f_vals), 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return float(w @ f_vals) * h / 3.0


def phase_area(pot: ConfinedPotential, energy: float) -> float:
    """integral of sqrt(energy - V(x)) over the allowed interval; the full
    phase-plane loop area for unit mass is 2*sqrt(2) times this."""
    tp = turning_points(pot, energy)
    if not tp:
        return 0.0
    lo, hi = tp
    if pot.k == 0.0:
        return (hi - lo) * math.sqrt(energy)

    def f(x):
        return np.sqrt(np.maximum(energy - 0.5 * pot.k * (x - pot.d_m) ** 2,
                                  0.0))

    mid = 0.5 * (lo + hi)
    n = 2 * _SIMPSON_PANELS + 1
    total = 0.0
    # an edge needs the substitution exactly when it is a zero of the
    # integrand, i.e. the analytic turning point sits at or inside the wall
    r = math.sqrt(2.0 * energy / pot.k)
    # left half
    if pot.d_m - r >= pot.b1:   # true turning point: x = lo + u^2
        u = np.linspace(0.0, math.sqrt(mid - lo), n)
        total += _simpson(2.0 * u * f(lo + u * u), u[1] - u[0])
    else:
        x = np.linspace(lo, mid, n)
        total += _simpson(f(x), x[1] - x[0])
    # right half
    if pot.d_m + r <= pot.b2:   # true turning point: x = hi - u^2
        u = np.linspace(0.0, math.sqrt(hi - mid), n)
        total += _simpson(2.0 * u * f(hi - u * u), u[1] - u[0])
    else:
        x = np.linspace(mid, hi, n)
        total += _simpson(f(x), x[1] - x[0])
    return total


def tunneling_probability(state: Eigenpair, pot: ConfinedPotential) -> float:
    """Probability carried by the state outside the classically allowed
    interval for its own energy (Simpson sum over the masked density)."""
    grid = state.grid
    x = grid.points
    v = np.empty(grid.n_points)
    v[1:-1] = pot.interior_values(grid)
    # wall values only matter through the mask; the density vanishes there
    v[0] = 0.5 * pot.k * (x[0] - pot.d_m) ** 2
    v[-1] = 0.5 * pot.k * (x[-1] - pot.d_m) ** 2
    rho = state.values * state.values
    masked = np.where(v > state.energy, rho, 0.0)
    return float(simpson(masked, dx=grid.h))


def tunneling_onset(params: np.ndarray, probabilities: np.ndarray,
                    threshold: float = 1e-6):
    """First sweep value whose forbidden-region probability exceeds the
    threshold, or None."""
    params = np.asarray(params, dtype=float)
    probabilities = np.asarray(probabilities, dtype=float)
    if params.shape != probabilities.shape:
        raise DomainError("sweep values and probabilities must align")
    idx = np.nonzero(probabilities > threshold)[0]
    return float(params[idx[0]]) if len(idx) else None


@dataclass(frozen=True)
class PhaseOrbit:
    """Closed constant-energy curve in the (x, p) plane (unit mass). Wall
    cut-offs appear as vertical segments; interior turning points pinch the
    curve to p = 0."""
    x: np.ndarray = field(repr=False)
    p: np.ndarray = field(repr=False)

    def __post_init__(self):
        self.x.setflags(write=False)
        self.p.setflags(write=False)

    def area(self) -> float:
        """Shoelace area of the loop."""
        return 0.5 * abs(float(np.sum(self.x * np.roll(self.p, -1)
                                      - np.roll(self.x, -1) * self.p)))


def phase_orbit(pot: ConfinedPotential, energy: float, mass: float = 1.0,
                n_samples: int = 1001) -> PhaseOrbit:
    """Sample the closed orbit at the given energy: out along +p, back along
    -p, with the joins forming the wall segments when clipping occurs."""
    if n_samples < 2:
        raise DomainError("need at least two samples per leg")
    tp = turning_points(pot, energy)
    if not tp:
        raise DomainError("no classically allowed interval at this energy")
    lo, hi = tp
    x_fwd = np.linspace(lo, hi, n_samples)
    ke = energy - 0.5 * pot.k * (x_fwd - pot.d_m) ** 2
    p_fwd = np.sqrt(np.maximum(2.0 * mass * ke, 0.0))
    xs = np.concatenate((x_fwd, x_fwd[::-1], x_fwd[:1]))
    ps = np.concatenate((p_fwd, -p_fwd[::-1], p_fwd[:1]))
    return PhaseOrbit(x=xs, p=ps)
