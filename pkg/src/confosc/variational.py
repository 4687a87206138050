"""Rayleigh-Ritz treatment of the (possibly off-centre) quadratic well in a
hard symmetric box.

Trial space: eigenfunctions of an auxiliary *centred* confined oscillator,

    -u'' + beta^2 x^2 u = eps u,  u(+-b) = 0,  beta = 2*sqrt(2)*alpha,

i.e. Gaussian-envelope functions exp(-beta x^2 / 2) times a confluent
hypergeometric factor, with the boundary condition enforced through the
hypergeometric parameter. They form a complete orthogonal set on the box,
decay like the target states do, and reduce to the exact answer when the well
is centred and alpha matches it. The envelope width alpha is either fixed or
tuned by a golden-section search on the lowest Rayleigh-Ritz eigenvalue.

Roots of the boundary equation are located by scanning in sqrt(eps), where
consecutive same-parity levels are nearly equally spaced (the flat-box ladder
gives exactly pi/(2b) spacing, and the quadratic term only compresses it
mildly), so a fixed scan step cannot skip a level.

The discrete Hamiltonian applies the five-point second derivative; at the two
rows next to a wall the point beyond the wall is odd-reflected, which is
fourth-order exact for any function with u(wall) = 0 and u''(wall) = 0 (the
boundary equation forces the latter). All quadrature is composite Simpson,
which requires an odd number of grid points.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import brentq
from scipy.special import hyp1f1

from .model import ConfinedPotential, DomainError, Eigenpair, Grid, box_grid

DEFAULT_ALPHA = math.sqrt(1.0 / 8.0)   # envelope exp(-x^2/2), the unit-well width


class BasisError(RuntimeError):
    """The trial set could not be built or lost its numerical guarantees."""


def simpson_weights(n_points: int, h: float) -> np.ndarray:
    if n_points < 3 or n_points % 2 == 0:
        raise DomainError("composite Simpson needs an odd point count >= 3")
    w = np.full(n_points, 2.0)
    w[1::2] = 4.0
    w[0] = w[-1] = 1.0
    return w * (h / 3.0)


@dataclass(frozen=True)
class BasisSet:
    """Orthonormal trial functions sampled on a grid, ordered by the energy
    they carry in the auxiliary centred problem."""
    alpha: float
    size: int
    grid: Grid
    values: np.ndarray = field(repr=False)         # (size, n_points)
    aux_energies: tuple[float, ...] = ()

    def __post_init__(self):
        self.values.setflags(write=False)


def _boundary_roots(beta: float, z_edge: float, odd: bool, count: int,
                    s_step: float) -> list[float]:
    """First `count` eigenvalues of the auxiliary problem for one parity,
    found as zeros (in eps) of the hypergeometric boundary factor."""
    b = 1.5 if odd else 0.5
    shift = 3.0 if odd else 1.0

    def g(s: float) -> float:
        eps = s * s
        a = (shift - eps / beta) / 4.0
        return float(hyp1f1(a, b, z_edge))

    roots: list[float] = []
    s_lo = 1e-9
    g_lo = g(s_lo)
    chunk = 512
    guard = 0
    while len(roots) < count:
        guard += 1
        if guard > 200:
            raise BasisError("boundary root scan ran away (beta=%g)" % beta)
        s_vals = s_lo + s_step * np.arange(1, chunk + 1)
        eps = s_vals * s_vals
        a = (shift - eps / beta) / 4.0
        g_vals = hyp1f1(a, b, z_edge)
        prev = g_lo
        prev_s = s_lo
        for s, gv in zip(s_vals, g_vals):
            if prev == 0.0:
                roots.append(prev_s * prev_s)
            elif gv == 0.0 or (gv < 0) != (prev < 0):
                s_root = brentq(g, prev_s, s, xtol=1e-13, maxiter=200)
                roots.append(s_root * s_root)
            if len(roots) >= count:
                break
            prev, prev_s = gv, s
        s_lo, g_lo = s_vals[-1], g_vals[-1]
    return roots[:count]


@lru_cache(maxsize=16)
def build_basis(alpha: float, size: int, grid: Grid) -> BasisSet:
    """Orthonormal Gaussian-envelope trial set on a symmetric box."""
    if alpha <= 0:
        raise DomainError("alpha must be positive")
    if size < 1:
        raise DomainError("size must be >= 1")
    if grid.n_points % 2 == 0:
        raise DomainError("Simpson quadrature needs an odd grid point count")
    edge = grid.x_max
    if not math.isclose(grid.x_min, -edge, rel_tol=0, abs_tol=1e-12):
        raise BasisError("trial set needs a symmetric box")

    beta = 2.0 * math.sqrt(2.0) * alpha
    z_edge = beta * edge * edge
    # sqrt-energy scan step: flat-box spacing is pi/(2*edge); stay well under
    # the worst-case compression from the in-box quadratic term
    s_step = 0.3 / edge
    per_parity = size // 2 + 1
    levels = []
    for odd in (False, True):
        for eps in _boundary_roots(beta, z_edge, odd, per_parity, s_step):
            levels.append((eps, odd))
    levels.sort()
    levels = levels[:size]

    x = grid.points
    zx = beta * x * x
    env = np.exp(-0.5 * zx)
    rows = np.empty((size, grid.n_points))
    for j, (eps, odd) in enumerate(levels):
        if odd:
            a = (3.0 - eps / beta) / 4.0
            rows[j] = x * env * hyp1f1(a, 1.5, zx)
        else:
            a = (1.0 - eps / beta) / 4.0
            rows[j] = env * hyp1f1(a, 0.5, zx)
    rows[:, 0] = 0.0
    rows[:, -1] = 0.0

    w = simpson_weights(grid.n_points, grid.h)
    for j in range(size):
        for i in range(j):
            rows[j] -= float(w @ (rows[i] * rows[j])) * rows[i]
        nrm = math.sqrt(float(w @ (rows[j] * rows[j])))
        if nrm < 1e-12:
            raise BasisError("trial function %d degenerated during "
                             "orthogonalization" % j)
        rows[j] /= nrm

    return BasisSet(alpha=alpha, size=size, grid=grid, values=rows,
                    aux_energies=tuple(eps for eps, _ in levels))


def _second_derivative(rows: np.ndarray, h: float) -> np.ndarray:
    """Five-point second derivative of wall-vanishing rows; the two rows next
    to a wall use the odd-reflected ghost point (still fourth order here)."""
    n = rows.shape[1]
    out = np.zeros_like(rows)
    c = 1.0 / (12.0 * h * h)
    out[:, 2:-2] = c * (-rows[:, :-4] + 16.0 * rows[:, 1:-3]
                        - 30.0 * rows[:, 2:-2] + 16.0 * rows[:, 3:-1]
                        - rows[:, 4:])
    out[:, 1] = c * (16.0 * rows[:, 0] - 29.0 * rows[:, 1]
                     + 16.0 * rows[:, 2] - rows[:, 3])
    out[:, n - 2] = c * (16.0 * rows[:, n - 1] - 29.0 * rows[:, n - 2]
                         + 16.0 * rows[:, n - 3] - rows[:, n - 4])
    return out


def hamiltonian_matrix(basis: BasisSet, pot: ConfinedPotential,
                       mass: float = 1.0, hbar: float = 1.0) -> np.ndarray:
    """Matrix of the well Hamiltonian in the trial set (Simpson quadrature),
    symmetrized after checking that the raw asymmetry is at round-off scale."""
    grid = basis.grid
    v = pot.interior_values(grid)
    kin = hbar * hbar / (2.0 * mass)
    rows = basis.values
    h_rows = -kin * _second_derivative(rows, grid.h)
    h_rows[:, 1:-1] += v * rows[:, 1:-1]
    h_rows[:, 0] = 0.0
    h_rows[:, -1] = 0.0
    w = simpson_weights(grid.n_points, grid.h)
    mat = (rows * w) @ h_rows.T
    asym = float(np.max(np.abs(mat - mat.T)))
    scale = max(1.0, float(np.max(np.abs(mat))))
    if asym > 1e-8 * scale:
        raise BasisError("Hamiltonian matrix asymmetry %.3e exceeds "
                         "round-off budget" % asym)
    return 0.5 * (mat + mat.T)


def diagonalize(h_matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and column eigenvectors of a symmetric matrix,
    with an explicit residual check."""
    mat = np.asarray(h_matrix, dtype=float)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise DomainError("need a square matrix")
    if float(np.max(np.abs(mat - mat.T))) > 1e-8 * max(1.0, float(np.max(np.abs(mat)))):
        raise DomainError("matrix is not symmetric")
    energies, vectors = np.linalg.eigh(mat)
    resid = float(np.max(np.abs(mat @ vectors - vectors * energies)))
    if resid > 1e-9 * max(1.0, float(np.max(np.abs(energies)))):
        raise BasisError("eigen decomposition residual %.3e too large" % resid)
    return energies, vectors


def _golden_minimum(fun, lo: float, hi: float, iterations: int) -> float:
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(iterations):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = fun(d)
    return c if fc < fd else d


@dataclass(frozen=True)
class VariationalResult:
    alpha: float
    basis_size: int
    energies: np.ndarray = field(repr=False)       # all Rayleigh-Ritz levels
    states: tuple[Eigenpair, ...] = ()
    grid: Grid | None = None

    def __post_init__(self):
        self.energies.setflags(write=False)


def solve_acho(pot: ConfinedPotential, size: int = 50,
               grid: Grid | None = None, mass: float = 1.0, hbar: float = 1.0,
               alpha: float | None = None, optimize_alpha: bool = True,
               alpha_range: tuple[float, float] = (0.05, 2.0),
               golden_iters: int = 40, n_states: int = 6) -> VariationalResult:
    """Rayleigh-Ritz levels and states of a quadratic well in a hard box.

    alpha given        -> use that envelope width;
    optimize_alpha     -> golden-section on the lowest level (the default);
    otherwise          -> the fixed unit-well width DEFAULT_ALPHA.
    """
    if grid is None:
        grid = box_grid(pot.b1, pot.b2, n_interior=3999)

    def lowest(al: float) -> float:
        basis = build_basis(al, size, grid)
        return float(np.linalg.eigvalsh(
            hamiltonian_matrix(basis, pot, mass, hbar))[0])

    if alpha is not None:
        if alpha <= 0:
            raise DomainError("alpha must be positive")
        best = alpha
    elif optimize_alpha:
        best = _golden_minimum(lowest, alpha_range[0], alpha_range[1],
                               golden_iters)
    else:
        best = DEFAULT_ALPHA

    basis = build_basis(best, size, grid)
    energies, vectors = diagonalize(hamiltonian_matrix(basis, pot, mass, hbar))

    w = simpson_weights(grid.n_points, grid.h)
    states = []
    for j in range(min(n_states, size)):
        vals = vectors[:, j] @ basis.values
        vals /= math.sqrt(float(w @ (vals * vals)))
        k = int(np.argmax(np.abs(vals)))
        if vals[k] < 0:
            vals = -vals
        states.append(Eigenpair(n=j, energy=float(energies[j]), values=vals,
                                grid=grid, provenance="variational"))
    return VariationalResult(alpha=best, basis_size=size,
                             energies=energies, states=tuple(states),
                             grid=grid)
