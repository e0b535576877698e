"""Scenario runner: one config file in, one result file out.

    dotcav --config scenario.cfg [--seed N] [--out PATH] [--format csv|json]
           [--threads N] [--no-timestamp]

Exit codes: 0 success, 2 configuration error (nothing written), 3 numerical
failure (fit did not converge, undefined normalization, ...). Results are
written atomically (temp file + rename). Every run echoes its fully resolved
parameters into the output header; rerunning with the same config and seed
reproduces the output byte for byte at any --threads value (disable the
timestamp line for file-level comparison).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

import numpy as np

from . import cmt, device, indist, layers, modevolume, presets, report, spectra, units
from .config import REQUIRED, ConfigError, parse_config, resolve_section
from .errors import FitFailedError, NormalizationError
from .photonstats import (
    PulseTrainConfig,
    extract_lifetime_from_sidepeaks,
    g2_zero,
    hbt_correlate,
    hom_overlap_mc,
    simulate_emission_train,
    write_histogram,
    write_records,
)

SCENARIO_SCHEMA = {
    "command": ("str", REQUIRED),
    "seed": ("int", 0),
    "output": ("path", None),
    "format": ("str", "csv"),
}


def _indist_model(params, lineno_hint=""):
    model = params["model"]
    if model not in indist.MODELS:
        raise ConfigError(f"model must be one of {indist.MODELS}, got {model!r}{lineno_hint}")
    return model


# ---------------------------------------------------------------------------
# command handlers: (params, seed, threads) -> list of row dicts


def _run_rates(params, seed, threads):
    emitter = presets.emitter_preset(params["preset"])
    if params["mu_debye"] is not None:
        emitter = device.EmitterSpec(
            lambda_emit_nm=emitter.lambda_emit_nm,
            mu_cm=units.dipole_debye_to_si(params["mu_debye"]),
            n_host=emitter.n_host,
            alpha=emitter.alpha,
            delta=emitter.delta,
            gamma_dipole=emitter.gamma_dipole,
        )
    cavity = device.CavitySpec(
        lambda_c_nm=params["lambda_c"],
        q=params["q"],
        v_n=params["v_n"],
        n_cavity=params["n_cavity"],
    )
    placement = device.Placement(psi=params["psi"], lambda_detuning_nm=params["detuning"])
    gamma0 = device.gamma_free(emitter)
    purcell = device.purcell_factor(cavity, placement)
    budget = device.emission_budget(gamma0, purcell, params["other_ratio"], params["eta_extract"])
    coupling = device.coupling_regime(emitter, cavity)
    return [{
        "gamma0_per_ns": gamma0,
        "lifetime0_ns": 1.0 / gamma0,
        "purcell": purcell,
        "gamma_cav_per_ns": budget.gamma_cav,
        "gamma_other_per_ns": budget.gamma_other,
        "gamma_total_per_ns": budget.gamma_total,
        "lifetime_ns": 1.0 / budget.gamma_total,
        "beta": budget.beta,
        "eta_extract": budget.eta_extract,
        "eta": budget.eta,
        "g_rad_per_ns": coupling.g,
        "kappa_rad_per_ns": coupling.kappa,
        "gamma_dipole_rad_per_ns": coupling.gamma_dipole,
        "regime": coupling.regime,
    }]


def _run_modevol(params, seed, threads):
    grid = modevolume.read_grid(params["grid"])
    v = modevolume.mode_volume(grid)
    row = {"v_nm3": v}
    if params["lambda"] is not None and params["n_index"] is not None:
        row["v_normalized"] = modevolume.normalized_mode_volume(
            v, params["lambda"], params["n_index"]
        )
    return [row]


def _run_indist(params, seed, threads):
    value = indist.indistinguishability(
        params["gamma"],
        params["alpha"],
        params["delta"],
        model=_indist_model(params),
        no_jitter=params["no_jitter"],
    )
    return [{"i": value}]


def _run_optimize(params, seed, threads):
    result = indist.phonon_whatif(
        params["alpha"], params["delta"], params["enhancement"], model=_indist_model(params)
    )
    return [{
        "gamma_star_per_ns": result.gamma_star,
        "lifetime_star_ps": result.lifetime_star_ps,
        "i_star": result.i_star,
    }]


def _run_mc_g2(params, seed, threads):
    config = PulseTrainConfig(
        n_pulses=params["n_pulses"],
        gamma=params["gamma"],
        delta=params["delta"],
        rep_period=params["rep_period"],
        excitation_prob=params["excitation_prob"],
        multi_excitation_prob=params["multi_excitation_prob"],
        dark_count_rate=params["dark_count_rate"],
        efficiency=params["efficiency"],
        source=params["source"],
        seed=seed,
    )
    records = simulate_emission_train(config, threads=threads)
    if params["records_out"]:
        write_records(params["records_out"], records)
    hist = hbt_correlate(
        records, bin_width=params["bin_width"], max_lag=params["max_lag"], threads=threads
    )
    if params["histogram_out"]:
        write_histogram(params["histogram_out"], hist)
    row = {
        "n_records": len(records),
        "g2_zero": g2_zero(hist),
        "side_peak_counts_mean": hist.normalization,
    }
    if params["fit_lifetime"]:
        rate = extract_lifetime_from_sidepeaks(hist)
        row["gamma_fit_per_ns"] = rate
        row["lifetime_fit_ns"] = 1.0 / rate
    return [row]


def _run_mc_hom(params, seed, threads):
    est = hom_overlap_mc(
        gamma=params["gamma"],
        alpha=params["alpha"],
        delta=params["delta"],
        trials=params["trials"],
        no_jitter=params["no_jitter"],
        span_lifetimes=params["span_lifetimes"],
        points_per_lifetime=params["points_per_lifetime"],
        seed=seed,
        threads=threads,
    )
    return [{
        "mean_overlap": est.mean_overlap,
        "std_error": est.std_error,
        "trials": est.trials,
    }]


def _run_fit_spectrum(params, seed, threads):
    if params["input"]:
        spectrum = spectra.read_spectrum(params["input"])
    else:
        spectrum = spectra.synthesize_spectrum(
            lambda0_nm=params["lambda0"],
            q=params["q"],
            amplitude=params["amplitude"],
            offset=params["offset"],
            noise_rel=params["noise_rel"],
            n_points=params["n_points"],
            span_fwhm=params["span_fwhm"],
            seed=seed,
        )
    if params["spectrum_out"]:
        spectra.write_spectrum(params["spectrum_out"], spectrum)
    fit = spectra.fit_lorentzian(spectrum)
    if params["report_out"]:
        spectra.write_fit_report(params["report_out"], fit)
    return [{
        "lambda0_nm": fit.lambda0_nm,
        "fwhm_nm": fit.fwhm_nm,
        "q": fit.q,
        "amplitude_counts": fit.amplitude,
        "offset_counts": fit.offset,
        "residual_norm": fit.residual_norm,
        "iterations": fit.n_iterations,
    }]


def _run_cmt(params, seed, threads):
    p = cmt.CmtParams(
        omega0=params["omega0"], kappa_wg=params["kappa_wg"], kappa_loss=params["kappa_loss"]
    )
    curve = cmt.transmission(p, cmt.default_grid(p, params["half_widths"], params["n_points"]))
    if params["curve_out"]:
        cmt.write_curve(params["curve_out"], curve, inverted=params["inverted"])
    return [{
        "drop_efficiency": cmt.drop_efficiency(p),
        "t_on_resonance": cmt.transmission_at(p, p.omega0),
        "dip_fwhm_rad_per_ns": 2.0 * p.kappa_total,
        "loaded_q": p.loaded_q,
    }]


def _run_stack(params, seed, threads):
    if params["file"]:
        stack = layers.read_stack(params["file"])
    else:
        stack = layers.quarter_wave_dbr(
            n_high=params["n_high"],
            n_low=params["n_low"],
            pairs=params["pairs"],
            design_lambda_nm=params["lambda"],
            ambient_index=params["ambient_index"],
            substrate_index=params["substrate_index"],
        )
    r = layers.stack_reflectance(stack, params["lambda"])
    result = layers.optimize_spacing(stack, params["lambda"], (params["d_min"], params["d_max"]))
    if params["sweep_out"]:
        d, f = layers.spacing_sweep(
            stack, params["lambda"], (params["d_min"], params["d_max"]), params["sweep_points"]
        )
        layers.write_sweep(params["sweep_out"], d, f)
    return [{
        "r_real": r.real,
        "r_imag": r.imag,
        "reflectance": abs(r) ** 2,
        "d_star_nm": result.spacing_nm,
        "f_up_star": result.f_up,
    }]


def _run_report(params, seed, threads):
    rows = report.build_report(include_mc=params["include_mc"], seed=seed, threads=threads)
    return report.rows_as_dicts(rows)


COMMANDS = {
    "rates": (_run_rates, {
        "preset": ("str", "A"),
        "mu_debye": ("float", None),
        "lambda_c": ("float", 929.0),
        "q": ("float", 4500.0),
        "v_n": ("float", 0.5),
        "n_cavity": ("float", 3.46),
        "psi": ("float", 1.0),
        "detuning": ("float", 0.0),
        "other_ratio": ("float", 0.2),
        "eta_extract": ("float", 1.0),
    }),
    "modevol": (_run_modevol, {
        "grid": ("path", REQUIRED),
        "lambda": ("float", None),
        "n_index": ("float", None),
    }),
    "indist": (_run_indist, {
        "gamma": ("float", REQUIRED),
        "alpha": ("float", REQUIRED),
        "delta": ("float", None),
        "model": ("str", "eq3"),
        "no_jitter": ("bool", False),
    }),
    "optimize": (_run_optimize, {
        "alpha": ("float", REQUIRED),
        "delta": ("float", REQUIRED),
        "model": ("str", "eq3"),
        "enhancement": ("float", 1.0),
    }),
    "mc-g2": (_run_mc_g2, {
        "n_pulses": ("int", REQUIRED),
        "gamma": ("float", REQUIRED),
        "delta": ("float", REQUIRED),
        "rep_period": ("float", 13.0),
        "excitation_prob": ("float", 1.0),
        "multi_excitation_prob": ("float", 0.0),
        "dark_count_rate": ("float", 0.0),
        "efficiency": ("float", 1.0),
        "source": ("str", "single"),
        "bin_width": ("float", 0.1),
        "max_lag": ("float", None),
        "fit_lifetime": ("bool", False),
        "histogram_out": ("path", None),
        "records_out": ("path", None),
    }),
    "mc-hom": (_run_mc_hom, {
        "gamma": ("float", REQUIRED),
        "alpha": ("float", REQUIRED),
        "delta": ("float", None),
        "no_jitter": ("bool", False),
        "trials": ("int", 10_000),
        "span_lifetimes": ("float", 8.0),
        "points_per_lifetime": ("int", 200),
    }),
    "fit-spectrum": (_run_fit_spectrum, {
        "input": ("path", None),
        "lambda0": ("float", 929.0),
        "q": ("float", 4500.0),
        "amplitude": ("float", 1000.0),
        "offset": ("float", 50.0),
        "noise_rel": ("float", 0.0),
        "n_points": ("int", 200),
        "span_fwhm": ("float", 10.0),
        "spectrum_out": ("path", None),
        "report_out": ("path", None),
    }),
    "cmt": (_run_cmt, {
        "omega0": ("float", REQUIRED),
        "kappa_wg": ("float", REQUIRED),
        "kappa_loss": ("float", REQUIRED),
        "half_widths": ("float", 12.0),
        "n_points": ("int", 2001),
        "inverted": ("bool", False),
        "curve_out": ("path", None),
    }),
    "stack": (_run_stack, {
        "file": ("path", None),
        "n_high": ("float", 3.46),
        "n_low": ("float", 2.95),
        "pairs": ("int", 15),
        "ambient_index": ("float", 1.0),
        "substrate_index": ("float", 3.46),
        "lambda": ("float", 929.0),
        "d_min": ("float", 0.0),
        "d_max": ("float", 929.0),
        "sweep_out": ("path", None),
        "sweep_points": ("int", 401),
    }),
    "report": (_run_report, {
        "include_mc": ("bool", True),
    }),
}


# ---------------------------------------------------------------------------
# output serialization


def _fmt(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def render_csv(rows, params, timestamp: str | None) -> str:
    buf = io.StringIO()
    buf.write("# dotcav-output 1\n")
    if timestamp is not None:
        buf.write(f"# generated = {timestamp}\n")
    for key in sorted(params):
        buf.write(f"# {key} = {_fmt(params[key])}\n")
    columns = list(rows[0].keys()) if rows else []
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_fmt(row[col]) for col in columns])
    return buf.getvalue()


def _jsonable(value):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    return value


def render_json(rows, params, timestamp: str | None) -> str:
    doc = {"params": {k: _jsonable(params[k]) for k in sorted(params)}}
    if timestamp is not None:
        doc["generated"] = timestamp
    doc["rows"] = [{k: _jsonable(v) for k, v in row.items()} for row in rows]
    return json.dumps(doc, indent=2) + "\n"


def _write_atomic(path: str, content: str) -> None:
    tmp = f"{path}.tmp-{os.getpid()}"
    with open(tmp, "w") as fh:
        fh.write(content)
    os.replace(tmp, path)


def run_scenario(
    config_text: str,
    seed_override: int | None = None,
    out_override: str | None = None,
    format_override: str | None = None,
    threads: int = 1,
    timestamp: bool = True,
):
    """Execute a scenario; returns (content, destination path or None)."""
    raw = parse_config(config_text)
    for name in raw.sections:
        if name != "scenario" and name not in COMMANDS:
            raise ConfigError(f"unknown section [{name}]")
    if "scenario" not in raw.sections:
        raise ConfigError("missing [scenario] section")
    scenario = resolve_section(raw, "scenario", SCENARIO_SCHEMA)
    command = scenario["command"]
    if command not in COMMANDS:
        raise ConfigError(
            f"unknown command {command!r} (known: {', '.join(sorted(COMMANDS))})"
        )
    for name in raw.sections:
        if name not in ("scenario", command):
            raise ConfigError(f"section [{name}] does not belong to command {command!r}")
    handler, schema = COMMANDS[command]
    params = resolve_section(raw, command, schema)

    seed = seed_override if seed_override is not None else scenario["seed"]
    if not 0 <= seed < 2 ** 64:
        raise ConfigError("seed must fit in an unsigned 64-bit integer")
    out_format = format_override or scenario["format"]
    if out_format not in ("csv", "json"):
        raise ConfigError(f"format must be csv or json, got {out_format!r}")

    rows = handler(params, seed, max(1, int(threads)))

    echo = {"command": command, "seed": seed}
    echo.update(params)
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ") if timestamp else None
    content = render_csv(rows, echo, stamp) if out_format == "csv" else render_json(rows, echo, stamp)
    return content, (out_override or scenario["output"])


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="dotcav",
        description="single-photon-source design toolkit scenario runner",
    )
    parser.add_argument("--config", required=True, help="scenario configuration file")
    parser.add_argument("--seed", type=int, default=None, help="override the scenario seed")
    parser.add_argument("--out", default=None, help="output path (default: from config or stdout)")
    parser.add_argument("--format", choices=("csv", "json"), default=None)
    parser.add_argument("--threads", type=int, default=1,
                        help="worker bound for the Monte Carlo commands; never changes results")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the generated-at header line")
    args = parser.parse_args(argv)

    try:
        with open(args.config) as fh:
            text = fh.read()
    except OSError as exc:
        print(f"dotcav: cannot read config: {exc}", file=sys.stderr)
        return 2

    try:
        content, destination = run_scenario(
            text,
            seed_override=args.seed,
            out_override=args.out,
            format_override=args.format,
            threads=args.threads,
            timestamp=not args.no_timestamp,
        )
    except ConfigError as exc:
        print(f"dotcav: config error: {exc}", file=sys.stderr)
        return 2
    except (FitFailedError, NormalizationError, np.linalg.LinAlgError) as exc:
        print(f"dotcav: numerical failure: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"dotcav: config error: {exc}", file=sys.stderr)
        return 2

    if destination:
        _write_atomic(destination, content)
    else:
        sys.stdout.write(content)
    return 0


if __name__ == "__main__":
    sys.exit(main())
