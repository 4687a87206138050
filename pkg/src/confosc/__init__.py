"""Confined-oscillator toolkit: a quadratic well between hard walls.

Solvers (imaginary-time relaxation, boundary-quantized closed forms, a
confined-oscillator variational basis, first-order flat-box mixing),
position/momentum information measures with their rigorous bounds, a
semiclassical phase-plane view, and a deterministic sweep/report CLI.
"""

from .model import (ConfinedPotential, DomainError, Eigenpair, Grid,
                    ScalingMap, WALL, acho_unit_box, box_grid,
                    potential_value, scale_energy, scho_unit_box,
                    state_from_physical, state_to_physical,
                    to_dimensionless, unscale_energy)
from .itp_solver import (ConvergenceError, DiffusionState, LadderError,
                         PentaSystem, SolverConfig, StepSizeError,
                         build_penta, energy_expectation, initial_guess,
                         solve_spectrum, solve_state, stable_dtau, step)
from .exact_scho import (RootSearchError, kummer_1f1, pib_energy,
                         pib_measures, scho_eigenvalue, scho_wavefunction)
from .variational import (BasisError, BasisSet, DEFAULT_ALPHA,
                          VariationalResult, build_basis, diagonalize,
                          hamiltonian_matrix, simpson_weights, solve_acho)
from .spectral import (MomentumDensity, momentum_moments, parseval_defect,
                       to_momentum)
from .infomeasures import (BOUND_SLACK, DensityProfile, FISHER_FLOOR,
                           InfoReport, ONICESCU_CEILING, SHANNON_FLOOR,
                           fisher, full_report, onicescu, shannon)
from .perturbation import (pib_energy_unit_box, pib_state_values,
                           pib_x2_element, pt_energy, pt_fisher_x,
                           pt_onicescu_x0, pt_wavefunction)
from .semiclassical import (PhaseOrbit, classical_region_lengths,
                            phase_area, phase_orbit, tunneling_onset,
                            tunneling_probability, turning_points)
from .cli_reports import (ConfigError, CrossReport, ReportRow, SchemaError,
                          SweepSpec, cross_check, emit_table, main,
                          parse_config, rows_from_csv, rows_to_csv,
                          run_sweep)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
