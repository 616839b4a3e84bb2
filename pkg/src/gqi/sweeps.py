"""Parameter sweeps, slope analysis, advantage threshold, figure presets, CSV."""

import csv
import io
import os
from dataclasses import dataclass, field

import numpy as np

from .chernoff import snr
from .discord import remained_discord
from .probes import ProbeKind, ProbeSpec, TargetScenario
from .symplectic import ValidationError

CSV_COLUMNS = [
    "axis_value", "n0", "n1", "n2", "ns", "kappa", "nb", "ensembles",
    "kind", "s_star", "q_min", "log_error_prob", "snr", "discord",
]

SWEEP_AXES = ("n0", "n1", "n2", "ns", "kappa", "nb")

# Slope-fit defaults: N_S up to 4 on 32 uniform points, starting at the
# smallest energy the probe can emit.
FIT_TO_DEFAULT = 4.0
FIT_POINTS_DEFAULT = 32


@dataclass
class SweepRow:
    """One fully evaluated (probe, scenario) point."""

    axis_value: float
    n0: float
    n1: float
    n2: float
    ns: float
    kappa: float
    nb: float
    ensembles: float
    kind: str
    s_star: float
    q_min: float
    log_error_prob: float
    snr: float
    discord: float | None = None


@dataclass
class SweepTable:
    axis: str
    grid: list[float]
    rows: list[SweepRow] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    def column(self, name: str, kind: str | None = None) -> np.ndarray:
        rows = self.rows if kind is None else [r for r in self.rows if r.kind == kind]
        return np.array([getattr(r, name) for r in rows], dtype=float)


def solve_n1_for_signal_energy(ns: float, n0: float) -> float:
    """Invert N_S = N0 + 2 N0 N1 + N1 for the signal squeezer N1."""
    if ns < n0:
        raise ValidationError(
            f"target signal energy {ns} is below the probe floor N0 = {n0}"
        )
    return (ns - n0) / (2.0 * n0 + 1.0)


def run_scenario(probe: ProbeSpec, scenario: TargetScenario,
                 with_discord: bool = False,
                 axis_value: float = float("nan")) -> SweepRow:
    """Evaluate one probe/scenario pair into a sweep row."""
    result = snr(probe, scenario)
    discord_value = None
    if with_discord and probe.kind is not ProbeKind.COHERENT:
        discord_value = remained_discord(probe, scenario).value
    return SweepRow(
        axis_value=axis_value,
        n0=probe.n0, n1=probe.n1, n2=probe.n2,
        ns=probe.signal_energy,
        kappa=scenario.kappa, nb=scenario.nb, ensembles=scenario.ensembles,
        kind=probe.kind.value,
        s_star=result.s_star, q_min=result.q_min,
        log_error_prob=result.log_error_prob, snr=result.snr,
        discord=discord_value,
    )


def _with_axis(probe: ProbeSpec, scenario: TargetScenario, axis: str,
               value: float) -> tuple[ProbeSpec, TargetScenario]:
    p = {"kind": probe.kind, "n0": probe.n0, "n1": probe.n1,
         "n2": probe.n2, "ns": probe.ns}
    s = {"kappa": scenario.kappa, "nb": scenario.nb,
         "ensembles": scenario.ensembles}
    if axis in ("kappa", "nb"):
        s[axis] = value
    elif axis == "ns" and probe.kind is not ProbeKind.COHERENT:
        p["n1"] = solve_n1_for_signal_energy(value, probe.n0)
    else:
        p[axis] = value
    return ProbeSpec(**p), TargetScenario(**s)


def sweep(axis: str, grid, probe: ProbeSpec, scenario: TargetScenario,
          with_discord: bool = False, compare: bool | None = None) -> SweepTable:
    """Evaluate one row per grid point along the chosen axis.

    For axis="ns" on a two-mode probe, N1 is solved from the signal-energy
    closed form at fixed N0, and matched TMSV (N0 = N_S) and coherent
    (|alpha|^2 = N_S) comparison rows are emitted alongside each ASTM row
    unless compare=False.
    """
    if axis not in SWEEP_AXES:
        raise ValidationError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    emit_compare = (
        axis == "ns" and probe.kind is not ProbeKind.COHERENT
        if compare is None else compare
    )
    table = SweepTable(axis=axis, grid=[float(v) for v in grid])
    errors = []
    for value in table.grid:
        try:
            p, s = _with_axis(probe, scenario, axis, value)
            table.rows.append(run_scenario(p, s, with_discord, axis_value=value))
            if emit_compare:
                tmsv = ProbeSpec(kind=ProbeKind.TMSV, n0=value)
                table.rows.append(
                    run_scenario(tmsv, s, with_discord, axis_value=value))
                coherent = ProbeSpec(kind=ProbeKind.COHERENT, ns=value)
                table.rows.append(
                    run_scenario(coherent, s, False, axis_value=value))
        except ValidationError as exc:
            errors.append(f"{axis}={value}: {exc}")
    if errors and not table.rows:
        raise ValidationError("every grid point failed: " + "; ".join(errors))
    table.errors.extend(errors)
    return table


def slope_fit(table: SweepTable, kind: str | None = None) -> float:
    """Least-squares slope of SNR against signal energy N_S."""
    x = table.column("ns", kind)
    y = table.column("snr", kind)
    if len(x) < 2 or np.ptp(x) == 0.0:
        raise ValidationError("slope fit needs >= 2 rows spanning an N_S range")
    return float(np.polyfit(x, y, 1)[0])


def _astm_ci_slopes(n0: float, scenario: TargetScenario, fit_from: float | None,
                    fit_to: float, points: int) -> tuple[float, float]:
    lo = n0 if fit_from is None else max(fit_from, n0)
    grid = np.linspace(lo, fit_to, points)
    base = ProbeSpec(kind=ProbeKind.ASTM, n0=n0)
    astm_rows = sweep("ns", grid, base, scenario, compare=False)
    ci_rows = sweep("ns", grid, ProbeSpec(kind=ProbeKind.COHERENT), scenario)
    return slope_fit(astm_rows), slope_fit(ci_rows)


def advantage_threshold(scenario: TargetScenario,
                        bracket: tuple[float, float] = (0.02, 1.0),
                        fit_from: float | None = None,
                        fit_to: float = FIT_TO_DEFAULT,
                        points: int = FIT_POINTS_DEFAULT,
                        tol: float = 0.005) -> float:
    """Smallest initial TMSV energy N0 whose fitted SNR slope matches the CI.

    Bisection on slope_ASTM(N0) - slope_CI over the bracket; raises when the
    bracket shows no sign change rather than guessing.
    """
    def gap(n0: float) -> float:
        slope_astm, slope_ci = _astm_ci_slopes(
            n0, scenario, fit_from, fit_to, points)
        return slope_astm - slope_ci

    lo, hi = bracket
    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo * g_hi > 0.0:
        raise ValidationError(
            f"no slope crossing on N0 bracket [{lo}, {hi}]: "
            f"gap({lo}) = {g_lo:.4g}, gap({hi}) = {g_hi:.4g}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        g_mid = gap(mid)
        if g_lo * g_mid <= 0.0:
            hi, g_hi = mid, g_mid
        else:
            lo, g_lo = mid, g_mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# CSV persistence

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return repr(float(value))  # shortest round-trip decimal
    return str(value)


def table_to_csv(table: SweepTable, stream) -> None:
    writer = csv.writer(stream)
    writer.writerow(CSV_COLUMNS)
    for row in table.rows:
        writer.writerow([_fmt(getattr(row, c)) for c in CSV_COLUMNS])


def write_table(table: SweepTable, path: str) -> None:
    with open(path, "w", newline="") as fh:
        table_to_csv(table, fh)


def table_from_csv(stream, axis: str = "", grid=None) -> SweepTable:
    reader = csv.reader(stream)
    header = next(reader)
    if header != CSV_COLUMNS:
        raise ValidationError(f"unexpected CSV header: {header}")
    rows = []
    for rec in reader:
        values = dict(zip(CSV_COLUMNS, rec))
        kind = values.pop("kind")
        discord = values.pop("discord")
        rows.append(SweepRow(
            kind=kind,
            discord=None if discord == "" else float(discord),
            **{k: float(v) for k, v in values.items()},
        ))
    return SweepTable(axis=axis, grid=list(grid or []), rows=rows)


def read_table(path: str) -> SweepTable:
    with open(path, newline="") as fh:
        return table_from_csv(fh)


def table_to_string(table: SweepTable) -> str:
    buf = io.StringIO()
    table_to_csv(table, buf)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Figure-reproduction presets

MICROWAVE = TargetScenario(kappa=0.01, nb=3.8e3, ensembles=1e7)
LOW_NOISE = TargetScenario(kappa=0.01, nb=30.0, ensembles=1e7)

FIGURE_IDS = ("fig2a", "fig2b", "fig3a", "fig3b", "fig4a", "fig4b", "fig5")


def reproduce_figure(figure_id: str, out_dir: str) -> list[str]:
    """Write the CSV tables behind one figure; returns the file paths."""
    if figure_id not in FIGURE_IDS:
        raise ValidationError(f"unknown figure id {figure_id!r}")
    os.makedirs(out_dir, exist_ok=True)
    written = []

    def emit(name: str, table: SweepTable) -> None:
        path = os.path.join(out_dir, name)
        write_table(table, path)
        written.append(path)

    if figure_id == "fig2a":
        # SNR vs idler squeezing at fixed signal energy; flat curves.
        grid = np.linspace(0.0, 4.0, 17)
        for tag, n1 in (("ns1", 0.0), ("ns2", solve_n1_for_signal_energy(2.0, 1.0))):
            probe = ProbeSpec(kind=ProbeKind.ASTM, n0=1.0, n1=n1)
            emit(f"fig2a_{tag}.csv", sweep("n2", grid, probe, MICROWAVE))
    elif figure_id == "fig2b":
        grid = np.linspace(0.1, 2.0, 20)
        for n1 in (0.0, 1.0, 2.0, 3.0):
            probe = ProbeSpec(kind=ProbeKind.ASTM, n1=n1)
            emit(f"fig2b_n1_{n1:g}.csv", sweep("n0", grid, probe, MICROWAVE))
    elif figure_id in ("fig3a", "fig4a"):
        n0 = 1.0 if figure_id == "fig3a" else 0.1
        scenario = MICROWAVE if figure_id == "fig3a" else LOW_NOISE
        grid = np.linspace(n0, 4.0, 32)
        table = sweep("ns", grid, ProbeSpec(kind=ProbeKind.ASTM, n0=n0), scenario)
        for kind in ("astm", "tmsv", "coherent"):
            sub = SweepTable(table.axis, table.grid,
                             [r for r in table.rows if r.kind == kind])
            emit(f"{figure_id}_{kind}.csv", sub)
    elif figure_id == "fig3b":
        grid = np.linspace(0.005, 0.1, 20)
        ns_fixed = 2.0
        probes = {
            "astm": ProbeSpec(kind=ProbeKind.ASTM, n0=1.0,
                              n1=solve_n1_for_signal_energy(ns_fixed, 1.0)),
            "tmsv": ProbeSpec(kind=ProbeKind.TMSV, n0=ns_fixed),
            "coherent": ProbeSpec(kind=ProbeKind.COHERENT, ns=ns_fixed),
        }
        for kind, probe in probes.items():
            emit(f"fig3b_{kind}.csv", sweep("kappa", grid, probe, MICROWAVE))
    elif figure_id == "fig4b":
        n0_grid = np.linspace(0.05, 1.0, 20)
        path = os.path.join(out_dir, "fig4b_slopes.csv")
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["n0", "slope_astm", "slope_ci"])
            for n0 in n0_grid:
                slope_astm, slope_ci = _astm_ci_slopes(
                    float(n0), LOW_NOISE, None, FIT_TO_DEFAULT, FIT_POINTS_DEFAULT)
                writer.writerow([_fmt(float(n0)), _fmt(slope_astm), _fmt(slope_ci)])
        written.append(path)
    elif figure_id == "fig5":
        n0 = 0.1
        grid = np.linspace(n0, 4.0, 32)
        table = sweep("ns", grid, ProbeSpec(kind=ProbeKind.ASTM, n0=n0),
                      LOW_NOISE, with_discord=True)
        path = os.path.join(out_dir, "fig5_advantage_discord.csv")
        astm = [r for r in table.rows if r.kind == "astm"]
        ci = {r.axis_value: r for r in table.rows if r.kind == "coherent"}
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["ns", "advantage", "discord"])
            for row in astm:
                adv = row.snr / ci[row.axis_value].snr
                writer.writerow([_fmt(row.axis_value), _fmt(adv), _fmt(row.discord)])
        written.append(path)
    return written


def gnuplot_script(csv_paths: list[str], out_path: str) -> str:
    """Convenience gnuplot script plotting SNR against the sweep axis."""
    lines = [
        "set datafile separator ','",
        "set key autotitle columnhead",
        "set xlabel 'axis value'",
        "set ylabel 'SNR'",
    ]
    plots = ", ".join(
        f"'{os.path.basename(p)}' using 1:13 with lines title '{os.path.basename(p)}'"
        for p in csv_paths
    )
    lines.append(f"plot {plots}")
    script = "\n".join(lines) + "\n"
    with open(out_path, "w") as fh:
        fh.write(script)
    return script
