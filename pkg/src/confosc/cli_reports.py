"""Command-line front end: parameter sweeps, report tables, CSV emission.

Sweep modes and their conventions (unit conventions follow the module that
solves each regime):

* ``scho-eta``  - centred well in the unit box [-1, 1], H = -d2/2 + eta x^2/2,
                  swept over the dimensionless strength eta. The ``exact``
                  solver maps to the natural-width problem (half-length
                  eta^(1/4)) and rescales back.
* ``scho-xc``   - natural-unit centred well (k = m = 1) in a box of
                  half-length x_c, swept over x_c.
* ``acho-dm``   - offset well in the unit box, H = -d2 + eta (x - d_m)^2,
                  swept over the offset d_m at fixed eta.
* ``acho-eta``  - same operator swept over eta at fixed d_m.

Every successfully solved state yields one row carrying the energy, the
position/momentum/joint information measures, the phase-plane area, the
forbidden-region probability, the allowed-interval length, and the rigorous
bound flags. Failures become error rows and the sweep continues.

Output is deterministic: rows are ordered sweep-value major, state minor
(solver innermost), floats print with 10 significant digits, the decimal
separator is '.', lines end with LF.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import exact_scho, infomeasures, semiclassical, spectral, variational
from .itp_solver import SolverConfig, solve_spectrum, stable_dtau
from .model import (ConfinedPotential, DomainError, Eigenpair, Grid,
                    acho_unit_box, box_grid, scho_unit_box)


class ConfigError(ValueError):
    """Bad sweep configuration text."""


class SchemaError(ValueError):
    """Rows do not carry what the requested table layout needs."""


_MODES = ("scho-eta", "scho-xc", "acho-dm", "acho-eta")
_SOLVERS = ("itp", "exact", "variational", "pt")
# solvers that only make sense for some modes: the closed-form routes need a
# centred well, and the flat-box mixing route is tied to the unit-box sweep
_SOLVER_MODES = {
    "itp": set(_MODES),
    "variational": set(_MODES),
    "exact": {"scho-eta", "scho-xc"},
    "pt": {"scho-eta"},
}
_CROSS_DEFAULTS = {
    frozenset(("itp", "exact")): 1e-6,
    frozenset(("itp", "variational")): 1e-8,
}


@dataclass(frozen=True)
class SweepSpec:
    mode: str
    values: tuple[float, ...]
    n_lo: int = 0
    n_hi: int = 0
    solvers: tuple[str, ...] = ("itp",)
    eta: float = 1.0          # well strength for the offset-sweep mode
    d_m: float = 1.0          # offset for the acho-eta mode
    grid_points: int = 2000   # interior points
    dtau: float | None = None  # None -> automatic stable step
    tol: float = 1e-12
    pad_factor: int = 16
    cross_tol: float | None = None

    def __post_init__(self):
        if self.mode not in _MODES:
            raise DomainError("unknown mode '%s'" % self.mode)
        if not self.values:
            raise DomainError("empty value list")
        if not (0 <= self.n_lo <= self.n_hi):
            raise DomainError("need 0 <= n_lo <= n_hi")
        if not (1 <= len(self.solvers) <= 2):
            raise DomainError("need one or two solvers")
        if len(set(self.solvers)) != len(self.solvers):
            raise DomainError("duplicate solver")
        for s in self.solvers:
            if s not in _SOLVERS:
                raise DomainError("unknown solver '%s'" % s)
            if self.mode not in _SOLVER_MODES[s]:
                raise DomainError("solver '%s' not valid for mode '%s'"
                                  % (s, self.mode))
        if self.mode in ("scho-xc",) and min(self.values) <= 0:
            raise DomainError("box half-length values must be positive")
        if self.mode in ("scho-eta", "acho-eta") and min(self.values) < 0:
            raise DomainError("well strength values must be non-negative")
        if self.grid_points < 8:
            raise DomainError("grid_points too small")
        if self.pad_factor < 1:
            raise DomainError("pad_factor must be >= 1")
        if self.tol <= 0:
            raise DomainError("tol must be positive")
        if self.dtau is not None and self.dtau <= 0:
            raise DomainError("dtau must be positive")
        if self.cross_tol is not None and self.cross_tol <= 0:
            raise DomainError("cross_tol must be positive")


@dataclass(frozen=True)
class ReportRow:
    value: float
    n: int
    solver: str
    energy: float = math.nan
    s_x: float = math.nan
    s_p: float = math.nan
    s: float = math.nan
    i_x: float = math.nan
    i_p: float = math.nan
    i: float = math.nan
    e_x: float = math.nan
    e_p: float = math.nan
    e: float = math.nan
    a_n: float = math.nan
    t_n: float = math.nan
    l_cl: float = math.nan
    shannon_ok: bool = False
    fisher_ok: bool = False
    onicescu_ok: bool = False
    error: str = ""


_CSV_COLUMNS = (
    ("value", "value"), ("n", "n"), ("solver", "solver"),
    ("energy", "energy"), ("S_x", "s_x"), ("S_p", "s_p"), ("S", "s"),
    ("I_x", "i_x"), ("I_p", "i_p"), ("I", "i"),
    ("E_x", "e_x"), ("E_p", "e_p"), ("E", "e"),
    ("A_n", "a_n"), ("T_n", "t_n"), ("L_cl", "l_cl"),
    ("shannon_ok", "shannon_ok"), ("fisher_ok", "fisher_ok"),
    ("onicescu_ok", "onicescu_ok"), ("error", "error"),
)


def _odd_interior(n_interior: int) -> int:
    """Interior count bumped so the full grid has an odd point count (the
    variational route integrates with composite Simpson)."""
    return n_interior if n_interior % 2 else n_interior + 1


def _itp_states(pot: ConfinedPotential, grid: Grid, spec: SweepSpec,
                mass: float) -> list[Eigenpair]:
    dtau = spec.dtau
    if dtau is None:
        dtau = stable_dtau(pot, grid, n_max=spec.n_hi, mass=mass)
    cfg = SolverConfig(dtau=dtau, energy_tol=spec.tol)
    return solve_spectrum(pot, grid, spec.n_hi, cfg, mass=mass)


def _variational_states(pot: ConfinedPotential, spec: SweepSpec,
                        mass: float) -> list[Eigenpair]:
    grid = box_grid(pot.b1, pot.b2, _odd_interior(spec.grid_points))
    size = max(50, 2 * (spec.n_hi + 1) + 10)
    res = variational.solve_acho(pot, size=size, grid=grid, mass=mass,
                                 alpha=variational.DEFAULT_ALPHA,
                                 n_states=spec.n_hi + 1)
    return list(res.states)


def _solve_with(spec: SweepSpec, value: float, solver: str):
    """-> (potential-in-report-units, list of states n_lo..n_hi)."""
    if spec.mode == "scho-eta":
        eta = value
        pot, mass = scho_unit_box(eta)
        unit_grid = box_grid(-1.0, 1.0, spec.grid_points)
        if solver == "exact":
            x_c = eta ** 0.25
            native = box_grid(-x_c, x_c, spec.grid_points)
            states = []
            for n in range(spec.n_hi + 1):
                eps = exact_scho.scho_eigenvalue(n, x_c)
                psi = exact_scho.scho_wavefunction(n, x_c, native)
                vals = math.sqrt(x_c) * psi.values
                states.append(Eigenpair(n=n, energy=x_c * x_c * eps,
                                        values=vals, grid=unit_grid,
                                        provenance="exact"))
            return pot, states
        if solver == "pt":
            grid = box_grid(-1.0, 1.0, _odd_interior(spec.grid_points))
            from .perturbation import pt_wavefunction
            states = [pt_wavefunction(n, eta, grid)
                      for n in range(spec.n_hi + 1)]
            return pot, states
        if solver == "itp":
            return pot, _itp_states(pot, unit_grid, spec, mass)
        return pot, _variational_states(pot, spec, mass)

    if spec.mode == "scho-xc":
        x_c = value
        pot = ConfinedPotential(k=1.0, d_m=0.0, b1=-x_c, b2=x_c)
        grid = box_grid(-x_c, x_c, spec.grid_points)
        if solver == "exact":
            states = [exact_scho.scho_wavefunction(n, x_c, grid)
                      for n in range(spec.n_hi + 1)]
            return pot, states
        if solver == "itp":
            return pot, _itp_states(pot, grid, spec, 1.0)
        return pot, _variational_states(pot, spec, 1.0)

    if spec.mode == "acho-dm":
        pot, mass = acho_unit_box(spec.eta, value)
    else:                       # acho-eta
        pot, mass = acho_unit_box(value, spec.d_m)
    if solver == "itp":
        grid = box_grid(-1.0, 1.0, spec.grid_points)
        return pot, _itp_states(pot, grid, spec, mass)
    return pot, _variational_states(pot, spec, mass)


def _measured_row(spec: SweepSpec, value: float, solver: str,
                  pot: ConfinedPotential, state: Eigenpair) -> ReportRow:
    md = spectral.to_momentum(state, pad_factor=spec.pad_factor)
    rep = infomeasures.full_report(state, md)
    energy = state.energy
    return ReportRow(
        value=value, n=state.n, solver=solver, energy=energy,
        s_x=rep.s_x, s_p=rep.s_p, s=rep.s,
        i_x=rep.i_x, i_p=rep.i_p, i=rep.i,
        e_x=rep.e_x, e_p=rep.e_p, e=rep.e,
        a_n=semiclassical.phase_area(pot, energy),
        t_n=semiclassical.tunneling_probability(state, pot),
        l_cl=semiclassical.classical_region_lengths(pot, energy)[0],
        shannon_ok=rep.shannon_bound_ok, fisher_ok=rep.fisher_bound_ok,
        onicescu_ok=rep.onicescu_bound_ok)


def _point_rows(spec: SweepSpec, value: float) -> list[ReportRow]:
    rows: list[ReportRow] = []
    for solver in spec.solvers:
        try:
            pot, states = _solve_with(spec, value, solver)
        except Exception as exc:      # recorded, sweep continues
            n_fail = getattr(exc, "state_index", spec.n_lo)
            rows.append(ReportRow(value=value, n=max(n_fail, 0),
                                  solver=solver,
                                  error="%s: %s" % (type(exc).__name__, exc)))
            continue
        for state in states:
            if state.n < spec.n_lo:
                continue
            try:
                rows.append(_measured_row(spec, value, solver, pot, state))
            except Exception as exc:
                rows.append(ReportRow(value=value, n=state.n, solver=solver,
                                      error="%s: %s" % (type(exc).__name__,
                                                        exc)))
    order = {s: k for k, s in enumerate(spec.solvers)}
    rows.sort(key=lambda r: (r.n, order[r.solver]))
    return rows


def run_sweep(spec: SweepSpec, workers: int = 1) -> list[ReportRow]:
    """All rows of the sweep, value major / n minor / solver innermost.
    Points are dispatched to a thread pool and reassembled in spec order, so
    the result does not depend on the worker count."""
    if workers < 1:
        raise DomainError("workers must be >= 1")
    if workers == 1:
        chunks = [_point_rows(spec, v) for v in spec.values]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(lambda v: _point_rows(spec, v),
                                   spec.values))
    return [row for chunk in chunks for row in chunk]


@dataclass(frozen=True)
class CrossReport:
    solvers: tuple[str, ...]
    max_delta: float
    tol: float | None
    n_pairs: int

    @property
    def ok(self) -> bool:
        if self.tol is None or self.n_pairs == 0:
            return True
        return self.max_delta <= self.tol


def cross_check(rows: list[ReportRow], spec: SweepSpec) -> CrossReport:
    """Largest energy disagreement between the two requested solvers."""
    if len(spec.solvers) != 2:
        raise DomainError("cross check needs exactly two solvers")
    tol = spec.cross_tol
    if tol is None:
        tol = _CROSS_DEFAULTS.get(frozenset(spec.solvers))
    by_key: dict[tuple[float, int, str], float] = {}
    for r in rows:
        if not r.error:
            by_key[(r.value, r.n, r.solver)] = r.energy
    worst = 0.0
    pairs = 0
    a, b = spec.solvers
    for v in spec.values:
        for n in range(spec.n_lo, spec.n_hi + 1):
            ea = by_key.get((v, n, a))
            eb = by_key.get((v, n, b))
            if ea is None or eb is None:
                continue
            pairs += 1
            worst = max(worst, abs(ea - eb))
    return CrossReport(solvers=spec.solvers, max_delta=worst, tol=tol,
                       n_pairs=pairs)


def _fmt_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.10g" % value
    if isinstance(value, int):
        return "%d" % value
    return str(value).replace(",", ";").replace("\n", "; ")


def rows_to_csv(rows: list[ReportRow]) -> str:
    lines = [",".join(name for name, _ in _CSV_COLUMNS)]
    for r in rows:
        lines.append(",".join(_fmt_cell(getattr(r, attr))
                              for _, attr in _CSV_COLUMNS))
    return "\n".join(lines) + "\n"


def rows_from_csv(text: str) -> list[ReportRow]:
    lines = [ln for ln in text.split("\n") if ln]
    header = lines[0].split(",")
    expected = [name for name, _ in _CSV_COLUMNS]
    if header != expected:
        raise SchemaError("unexpected header %r" % (header,))
    out = []
    for ln in lines[1:]:
        cells = ln.split(",")
        if len(cells) != len(_CSV_COLUMNS):
            raise SchemaError("row with %d cells, expected %d"
                              % (len(cells), len(_CSV_COLUMNS)))
        kw = {}
        for (name, attr), cell in zip(_CSV_COLUMNS, cells):
            if attr in ("n",):
                kw[attr] = int(cell)
            elif attr in ("solver", "error"):
                kw[attr] = cell
            elif attr.endswith("_ok"):
                kw[attr] = cell == "true"
            else:
                kw[attr] = float(cell)
        out.append(ReportRow(**kw))
    return out


# report table layouts: value-column label plus the measure columns; paired
# layouts repeat each measure once per solver (column suffix = solver tag)
_TABLE_PLAIN = {
    "II": ("eta", (("S_x", "s_x"), ("S_p", "s_p"))),
    "III": ("eta", (("I_x", "i_x"), ("I_p", "i_p"))),
    "IV": ("eta", (("E_x", "e_x"), ("E_p", "e_p"))),
    "VI": ("xc", (("S_x", "s_x"), ("E_x", "e_x"))),
    "VII": ("dm", (("energy", "energy"),)),
    "VIII": ("dm", (("S_x", "s_x"), ("S_p", "s_p"), ("S", "s"))),
    "IX": ("eta", (("I_x", "i_x"), ("I_p", "i_p"), ("S_x", "s_x"),
                   ("S_p", "s_p"), ("E_x", "e_x"), ("E_p", "e_p"))),
}
_TABLE_PAIRED = {
    "I": ("eta", (("energy", "energy"),)),
    "V": ("eta", (("S_x", "s_x"), ("I_x", "i_x"), ("E_x", "e_x"))),
}
_ROMAN = {"I": 1, "II": 2, "III": 3, "IV": 4, "V": 5, "VI": 6, "VII": 7,
          "VIII": 8, "IX": 9}


def normalize_table_id(table_id: str) -> str:
    tid = table_id.strip().upper()
    if tid in _ROMAN:
        return tid
    for roman, arabic in _ROMAN.items():
        if tid == str(arabic):
            return roman
    raise SchemaError("unknown table id '%s' (expected I..IX)" % table_id)


def _pretty(header: list[str], cells: list[list[str]]) -> str:
    widths = [len(h) for h in header]
    for row in cells:
        for j, c in enumerate(row):
            widths[j] = max(widths[j], len(c))
    def line(parts):
        return "  ".join(p.rjust(w) for p, w in zip(parts, widths)).rstrip()
    out = [line(header), line(["-" * w for w in widths])]
    out.extend(line(row) for row in cells)
    return "\n".join(out) + "\n"


def emit_table(rows: list[ReportRow], table_id: str) -> tuple[str, str]:
    """(aligned text, CSV text) for one of the report layouts I..IX."""
    tid = normalize_table_id(table_id)
    solvers_seen = []
    for r in rows:
        if r.solver not in solvers_seen:
            solvers_seen.append(r.solver)

    by_key = {}
    for r in rows:
        if not r.error:
            by_key[(r.value, r.n, r.solver)] = r
    values = sorted({r.value for r in rows})
    ns = sorted({r.n for r in rows if not r.error})

    if tid in _TABLE_PAIRED:
        value_label, columns = _TABLE_PAIRED[tid]
        if len(solvers_seen) != 2:
            raise SchemaError("table %s pairs two solvers; got %r"
                              % (tid, solvers_seen))
        col_names = ["%s_%s" % (name, s)
                     for name, _ in columns for s in solvers_seen]
        col_getters = [(attr, s) for _, attr in columns for s in solvers_seen]
    else:
        value_label, columns = _TABLE_PLAIN[tid]
        if len(solvers_seen) != 1:
            raise SchemaError("table %s needs a single solver; got %r"
                              % (tid, solvers_seen))
        col_names = [name for name, _ in columns]
        col_getters = [(attr, solvers_seen[0]) for _, attr in columns]

    header = [value_label, "n"] + col_names
    cells = []
    for v in values:
        for n in ns:
            row_cells = [_fmt_cell(v), "%d" % n]
            for (attr, solver), name in zip(col_getters, col_names):
                r = by_key.get((v, n, solver))
                if r is None:
                    raise SchemaError("missing column %s (no %s row at "
                                      "value=%g n=%d)" % (name, solver, v, n))
                val = getattr(r, attr)
                if isinstance(val, float) and math.isnan(val):
                    raise SchemaError("missing column %s" % name)
                row_cells.append(_fmt_cell(val))
            cells.append(row_cells)

    csv_text = ",".join(header) + "\n" + \
        "\n".join(",".join(row) for row in cells) + "\n"
    return _pretty(header, cells), csv_text


_CONFIG_KEYS = ("mode", "values", "states", "solver", "eta", "dm",
                "grid_points", "dtau", "tol", "pad_factor", "cross_tol")


def _parse_values(token: str, line_no: int) -> tuple[float, ...]:
    out: list[float] = []
    for part in token.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" in part:
            pieces = part.split(":")
            if len(pieces) != 3:
                raise ConfigError("line %d: range must be lo:hi:step"
                                  % line_no)
            lo, hi, step = (float(p) for p in pieces)
            if step <= 0:
                raise ConfigError("line %d: range step must be positive"
                                  % line_no)
            count = int(round((hi - lo) / step))
            if count < 0 or abs(lo + count * step - hi) > 1e-6 * step:
                raise ConfigError("line %d: range step does not reach hi"
                                  % line_no)
            out.extend(lo + i * step for i in range(count + 1))
        else:
            out.append(float(part))
    return tuple(out)


def parse_config(text: str) -> SweepSpec:
    """Line-oriented `key = value` sweep description; '#' starts a comment."""
    seen: dict[str, tuple[str, int]] = {}
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError("line %d: expected key = value" % line_no)
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.split("#", 1)[0].strip()
        if key not in _CONFIG_KEYS:
            raise ConfigError("line %d: unknown key '%s'" % (line_no, key))
        if key in seen:
            raise ConfigError("duplicate key '%s' (line %d)" % (key, line_no))
        if not val:
            raise ConfigError("line %d: empty value for '%s'"
                              % (line_no, key))
        seen[key] = (val, line_no)

    if "mode" not in seen:
        raise ConfigError("missing mode")

    kw: dict = {"mode": seen["mode"][0]}
    try:
        if "values" in seen:
            kw["values"] = _parse_values(*seen["values"])
        else:
            kw["values"] = ()
        if "states" in seen:
            tok, line_no = seen["states"]
            if ":" in tok:
                lo_s, _, hi_s = tok.partition(":")
                kw["n_lo"], kw["n_hi"] = int(lo_s), int(hi_s)
            else:
                kw["n_lo"] = kw["n_hi"] = int(tok)
        if "solver" in seen:
            kw["solvers"] = tuple(s.strip()
                                  for s in seen["solver"][0].split(",")
                                  if s.strip())
        for key, conv in (("eta", float), ("dm", float), ("dtau", float),
                          ("tol", float), ("cross_tol", float),
                          ("grid_points", int), ("pad_factor", int)):
            if key in seen:
                kw["d_m" if key == "dm" else key] = conv(seen[key][0])
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc

    try:
        return SweepSpec(**kw)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc


# ---------------------------------------------------------------- CLI glue

_CANONICAL_TABLE_SPECS = {
    "I": SweepSpec(mode="scho-eta", values=(0.001, 0.01, 0.1), n_lo=0,
                   n_hi=4, solvers=("pt", "exact")),
    "II": SweepSpec(mode="scho-eta", values=(0.001, 0.01, 0.1, 25.0, 50.0,
                                             100.0), n_hi=2,
                    solvers=("exact",)),
    "III": SweepSpec(mode="scho-eta", values=(0.001, 0.01, 0.1, 25.0, 50.0,
                                              100.0), n_hi=2,
                     solvers=("exact",)),
    "IV": SweepSpec(mode="scho-eta", values=(0.001, 0.01, 0.1, 25.0, 50.0,
                                             100.0), n_hi=2,
                    solvers=("exact",)),
    "V": SweepSpec(mode="scho-eta", values=(0.001, 0.01, 0.1), n_hi=2,
                   solvers=("pt", "exact")),
    "VI": SweepSpec(mode="scho-xc", values=(0.25, 2.0, 5.0), n_hi=4,
                    solvers=("exact",)),
    "VII": SweepSpec(mode="acho-dm", values=(0.36, 1.92, 5.0, 10.0), n_hi=5,
                     solvers=("variational",)),
    "VIII": SweepSpec(mode="acho-dm", values=(0.12, 2.04, 5.0, 8.0, 10.0),
                      n_hi=2, solvers=("variational",)),
    "IX": SweepSpec(mode="acho-eta", values=(5.0, 10.0, 20.0), n_hi=0,
                    d_m=1.0, solvers=("variational",)),
}


def _add_common_flags(p: argparse.ArgumentParser):
    p.add_argument("--grid-points", type=int, default=None,
                   help="interior grid points")
    p.add_argument("--dtau", type=float, default=None,
                   help="relaxation step (default: automatic)")
    p.add_argument("--tol", type=float, default=None,
                   help="energy plateau tolerance")
    p.add_argument("--pad-factor", type=int, default=None,
                   help="FFT zero-padding factor")
    p.add_argument("--solver", type=str, default=None,
                   help="solver or comma pair (itp,exact,variational,pt)")
    p.add_argument("--workers", type=int, default=1,
                   help="sweep worker threads")
    p.add_argument("--out", type=str, default=None,
                   help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "tsv", "pretty"),
                   default=None, help="output format")


def _apply_overrides(spec: SweepSpec, args) -> SweepSpec:
    updates = {}
    if args.grid_points is not None:
        updates["grid_points"] = args.grid_points
    if args.dtau is not None:
        updates["dtau"] = args.dtau
    if args.tol is not None:
        updates["tol"] = args.tol
    if args.pad_factor is not None:
        updates["pad_factor"] = args.pad_factor
    if args.solver is not None:
        updates["solvers"] = tuple(s.strip() for s in args.solver.split(",")
                                   if s.strip())
    return replace(spec, **updates) if updates else spec


def _write_out(text: str, path: str | None):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _rows_text(rows: list[ReportRow], fmt: str) -> str:
    csv_text = rows_to_csv(rows)
    if fmt == "csv":
        return csv_text
    if fmt == "tsv":
        return csv_text.replace(",", "\t")
    lines = [ln.split(",") for ln in csv_text.strip().split("\n")]
    return _pretty(lines[0], lines[1:])


def _cmd_solve(args) -> int:
    spec = SweepSpec(mode=args.mode, values=(args.value,), n_lo=args.n,
                     n_hi=args.n, solvers=(args.solver or "itp",),
                     eta=args.eta, d_m=args.dm)
    spec = _apply_overrides(spec, args)
    rows = run_sweep(spec, workers=1)
    _write_out(_rows_text(rows, args.format or "pretty"), args.out)
    return 1 if any(r.error for r in rows) else 0


def _cmd_sweep(args) -> int:
    if args.config == "-":
        text = sys.stdin.read()
    else:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    spec = _apply_overrides(parse_config(text), args)
    rows = run_sweep(spec, workers=args.workers)
    _write_out(_rows_text(rows, args.format or "csv"), args.out)
    if len(spec.solvers) == 2:
        rep = cross_check(rows, spec)
        tol_text = "none" if rep.tol is None else "%.3g" % rep.tol
        sys.stderr.write("cross-check %s vs %s: max |dE| = %.6g over %d "
                         "pairs (tol %s)\n"
                         % (rep.solvers[0], rep.solvers[1], rep.max_delta,
                            rep.n_pairs, tol_text))
        if not rep.ok:
            return 1
    return 0


def _cmd_table(args) -> int:
    tid = normalize_table_id(args.table_id)
    spec = _apply_overrides(_CANONICAL_TABLE_SPECS[tid], args)
    rows = run_sweep(spec, workers=args.workers)
    text, csv_text = emit_table(rows, tid)
    fmt = args.format or "pretty"
    if fmt == "csv":
        _write_out(csv_text, args.out)
    elif fmt == "tsv":
        _write_out(csv_text.replace(",", "\t"), args.out)
    else:
        _write_out(text, args.out)
    return 0


def _cmd_phase(args) -> int:
    spec = SweepSpec(mode=args.mode, values=(args.value,), n_lo=0,
                     n_hi=args.n_max,
                     solvers=(args.solver or
                              ("exact" if args.mode.startswith("scho")
                               else "variational"),),
                     eta=args.eta, d_m=args.dm)
    spec = _apply_overrides(spec, args)
    if args.orbit is not None:
        pot, states = _solve_with(spec, args.value, spec.solvers[0])
        match = [s for s in states if s.n == args.orbit]
        if not match:
            sys.stderr.write("state %d not solved\n" % args.orbit)
            return 1
        orbit = semiclassical.phase_orbit(pot, match[0].energy)
        lines = ["x,p"] + ["%.10g,%.10g" % (xi, pi)
                           for xi, pi in zip(orbit.x, orbit.p)]
        _write_out("\n".join(lines) + "\n", args.out)
        return 0
    pot, states = _solve_with(spec, args.value, spec.solvers[0])
    header = ["n", "energy", "A_n", "T_n", "L_cl", "L_gap"]
    cells = []
    for st in states:
        lengths = semiclassical.classical_region_lengths(pot, st.energy)
        cells.append([_fmt_cell(c) for c in
                      (st.n, st.energy,
                       semiclassical.phase_area(pot, st.energy),
                       semiclassical.tunneling_probability(st, pot),
                       lengths[0], lengths[1])])
    fmt = args.format or "pretty"
    if fmt in ("csv", "tsv"):
        sep = "," if fmt == "csv" else "\t"
        text = sep.join(header) + "\n" + \
            "\n".join(sep.join(row) for row in cells) + "\n"
    else:
        text = _pretty(header, cells)
    _write_out(text, args.out)
    return 0


def _cmd_validate(args) -> int:
    from . import acceptance
    results = acceptance.run_all(args.criteria or None)
    for res in results:
        print("%s  criterion %d: %s — %s"
              % ("PASS" if res.passed else "FAIL", res.index, res.name,
                 res.summary))
    return 0 if all(r.passed for r in results) else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="confosc",
        description="Quadratic well in a hard-wall box: solvers, information "
                    "measures, and report tables.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a single sweep point")
    p_solve.add_argument("--mode", required=True, choices=_MODES)
    p_solve.add_argument("--value", type=float, required=True)
    p_solve.add_argument("--n", type=int, default=0)
    p_solve.add_argument("--eta", type=float, default=1.0)
    p_solve.add_argument("--dm", type=float, default=1.0)
    _add_common_flags(p_solve)

    p_sweep = sub.add_parser("sweep", help="run a config-driven sweep")
    p_sweep.add_argument("--config", required=True,
                         help="config path, or '-' for stdin")
    _add_common_flags(p_sweep)

    p_table = sub.add_parser("table", help="emit a report table")
    p_table.add_argument("table_id", help="I..IX (or 1..9)")
    _add_common_flags(p_table)

    p_phase = sub.add_parser("phase", help="orbit/area/tunneling data")
    p_phase.add_argument("--mode", default="scho-xc", choices=_MODES)
    p_phase.add_argument("--value", type=float, required=True)
    p_phase.add_argument("--n-max", type=int, default=4)
    p_phase.add_argument("--eta", type=float, default=1.0)
    p_phase.add_argument("--dm", type=float, default=1.0)
    p_phase.add_argument("--orbit", type=int, default=None,
                         help="emit the (x, p) loop of this state instead")
    _add_common_flags(p_phase)

    p_val = sub.add_parser("validate", help="run the acceptance suite")
    p_val.add_argument("criteria", nargs="*", type=int,
                       help="criterion numbers (default: all)")

    args = parser.parse_args(argv)
    handlers = {"solve": _cmd_solve, "sweep": _cmd_sweep,
                "table": _cmd_table, "phase": _cmd_phase,
                "validate": _cmd_validate}
    try:
        return handlers[args.command](args)
    except (ConfigError, SchemaError, DomainError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except OSError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
