use optical_bloch::analytic::equilibrium_coherence;
use optical_bloch::state::density_from_bloch_unchecked;
use optical_bloch::sweep::{
    detect_revivals, detect_revivals_analytic, figure_preset, quantize_grayscale, sweep_log_t2_time_with,
    sweep_omega_time_with, time_series, with_workers, Backend, FieldMap, FigureLayout, GridAxis, Observable,
    Quantization, RevivalReport, SeriesColumn,
};
use optical_bloch::{
    classify_regime, equilibrium_relation_residual, equilibrium_state, optimal_rabi, steady_state,
    validate_physicality, BlochVector, DensityMatrix, DriveParams, PhysicalityReport, RelaxationParams, Solution,
    SystemParams, ThermalParams, DEFAULT_EPS,
};
use serde_json::{json, Value};

use crate::args::{Command, FigureArgs, MapArgs, PhysArgs, ReportArgs, SimulateArgs, SweepArgs, SweepParam};
use crate::output::{map_csv, multi_series_csv, pgm, series_csv};
use crate::{Artifact, Cli, CliError, Outcome, VERSION};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Simulate(a) => simulate(a),
        Command::Sweep(a) => sweep(a),
        Command::SteadyState(a) => steady(a),
        Command::Figure(a) => figure(a),
        Command::Validate(a) => validate(a),
    }
}

fn system(a: &PhysArgs) -> Result<SystemParams> {
    Ok(SystemParams::new(
        RelaxationParams::new(a.t1, a.t2)?,
        DriveParams::new(a.omega, a.delta, a.phi)?,
        ThermalParams::new(a.r3tilde)?,
    ))
}

/// `ground` (0,0,1), `excited` (0,0,−1), `x` (1,0,0), `y` (0,1,0),
/// `mixed` (0,0,0), or three comma-separated components.
pub fn parse_initial(s: &str) -> Result<BlochVector> {
    let r = match s.trim() {
        "ground" => BlochVector::GROUND,
        "excited" => BlochVector::new(0.0, 0.0, -1.0),
        "x" => BlochVector::new(1.0, 0.0, 0.0),
        "y" => BlochVector::new(0.0, 1.0, 0.0),
        "mixed" => BlochVector::ZERO,
        other => {
            let parts = other
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| CliError::Invalid(format!("cannot parse initial state '{other}'")))?;
            let [r1, r2, r3] = parts[..] else {
                return Err(CliError::Invalid(format!(
                    "initial state needs 3 components, got '{other}'"
                )));
            };
            BlochVector::new(r1, r2, r3)
        }
    };
    if !r.is_physical(DEFAULT_EPS) {
        return Err(CliError::Invalid(format!(
            "initial state {s} has |R| = {} > 1",
            r.norm()
        )));
    }
    Ok(r)
}

fn physicality_warnings(p: &SystemParams) -> Vec<String> {
    validate_physicality(p).violations
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn bloch_json(r: &BlochVector) -> Value {
    json!({ "R1": r.r1, "R2": r.r2, "R3": r.r3 })
}

fn density_json(rho: &DensityMatrix) -> Value {
    json!({
        "rho11": rho.rho11,
        "rho22": rho.rho22,
        "rho12": { "re": rho.rho12.re, "im": rho.rho12.im },
        "abs_rho12": rho.rho12.norm(),
    })
}

fn params_json(p: &SystemParams) -> Value {
    json!({
        "t1": p.relaxation.t1,
        "t2": p.relaxation.t2,
        "omega": p.drive.omega,
        "delta": p.drive.delta,
        "phi": p.drive.phi,
        "r3_tilde": p.thermal.r3_tilde,
    })
}

fn regime_json(p: &SystemParams) -> Value {
    classify_regime(p).map(|r| json!(r.as_str())).unwrap_or(Value::Null)
}

/// Closed-form equilibrium on resonance, linear solve otherwise.
fn equilibrium(p: &SystemParams) -> Result<(BlochVector, DensityMatrix, &'static str)> {
    if p.drive.delta == 0.0 {
        let (r, rho) = equilibrium_state(p)?;
        Ok((r, rho, "analytic"))
    } else {
        let r = steady_state(p)?;
        Ok((r, density_from_bloch_unchecked(&r), "linear_solve"))
    }
}

fn backend_json(b: &Backend) -> Value {
    match b {
        Backend::Analytic => json!({ "name": "analytic" }),
        Backend::Numeric(o) => json!({
            "name": "numeric",
            "method": "rk4",
            "max_step": o.max_step,
            "convergence_factor": o.convergence_factor,
            "tolerance": o.tolerance,
        }),
    }
}

fn axis_json(name: &str, a: &GridAxis) -> Value {
    json!({ "name": name, "scale": a.kind, "min": a.min, "max": a.max, "n": a.n })
}

fn revival_json(r: &RevivalReport) -> Value {
    json!({
        "observable": r.observable.name(),
        "threshold": r.threshold,
        "horizon": r.horizon,
        "intervals": r.intervals.iter().map(|i| json!({
            "start": i.start,
            "end": i.end,
            "duration": i.duration(),
            "persists": i.persists,
        })).collect::<Vec<_>>(),
    })
}

fn simulate(a: &SimulateArgs) -> Result<Outcome> {
    let p = system(&a.phys)?;
    let r0 = parse_initial(&a.initial)?;
    let backend = a.backend.backend();
    let axis = GridAxis::linear(0.0, a.t_max, a.samples)?;
    let series = time_series(&p, &r0, &axis, &SeriesColumn::ALL, backend)?;
    let revivals = match backend {
        Backend::Analytic => detect_revivals_analytic(&Solution::new(&p, &r0)?, Observable::Zeta, &axis, a.threshold)?,
        Backend::Numeric(_) => {
            let zeta = series.column(SeriesColumn::Zeta).unwrap_or_default();
            let pairs: Vec<(f64, f64)> = series.times.iter().copied().zip(zeta.iter().copied()).collect();
            detect_revivals(&pairs, a.threshold)?
        }
    };
    let (req, rho_eq, eq_method) = equilibrium(&p)?;
    let meta = json!({
        "command": "simulate",
        "version": VERSION,
        "backend": backend_json(&backend),
        "params": params_json(&p),
        "physicality": validate_physicality(&p),
        "regime": regime_json(&p),
        "initial": bloch_json(&r0),
        "time": axis_json("t", &axis),
        "columns": SeriesColumn::ALL.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "equilibrium": {
            "method": eq_method,
            "bloch": bloch_json(&req),
            "density": density_json(&rho_eq),
        },
        "revivals": revival_json(&revivals),
        "csv": format!("{}.csv", a.name),
    });
    Ok(Outcome {
        artifacts: vec![
            Artifact {
                file_name: format!("{}.csv", a.name),
                bytes: series_csv(&series).into_bytes(),
            },
            Artifact {
                file_name: format!("{}.json", a.name),
                bytes: to_json(&meta).into_bytes(),
            },
        ],
        out_dir: Some(a.out.clone()),
        warnings: physicality_warnings(&p),
        ..Outcome::default()
    })
}

fn in_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match workers {
        Some(n) => with_workers(n, f),
        None => f(),
    }
}

fn quantization(map: &MapArgs, observable: Observable) -> Result<Quantization> {
    let d = observable.default_quantization();
    Ok(Quantization::new(
        map.levels,
        map.v_min.unwrap_or(d.v_min),
        map.v_max.unwrap_or(d.v_max),
    )?)
}

/// CSV, PGM and JSON for a rendered map.
fn map_artifacts(
    stem: &str,
    map: &FieldMap,
    q: &Quantization,
    backend: &Backend,
    extra: Value,
) -> Result<Vec<Artifact>> {
    let levels = quantize_grayscale(map, q.levels, q.v_min, q.v_max)?;
    let mut meta = json!({
        "version": VERSION,
        "backend": backend_json(backend),
        "params": params_json(&map.params),
        "physicality": validate_physicality(&map.params),
        "initial": bloch_json(&map.initial),
        "observable": map.observable.name(),
        "grid": {
            "x": axis_json("t", &map.x_axis),
            "y": axis_json(&map.y_label, &map.y_axis),
            "csv_order": "y-major, both axes ascending",
            "pgm_orientation": "first row is the largest y (y increases upward); time increases to the right",
        },
        "quantization": {
            "levels": q.levels,
            "v_min": q.v_min,
            "v_max": q.v_max,
            "boundaries": q.boundaries(),
            "gray": "level k -> round(255 k / levels); level 0 (v >= v_max) is black, level `levels` (v <= v_min) is white",
        },
        "files": [format!("{stem}.csv"), format!("{stem}.pgm")],
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    Ok(vec![
        Artifact {
            file_name: format!("{stem}.csv"),
            bytes: map_csv(map).into_bytes(),
        },
        Artifact {
            file_name: format!("{stem}.pgm"),
            bytes: pgm(&levels, q),
        },
        Artifact {
            file_name: format!("{stem}.json"),
            bytes: to_json(&meta).into_bytes(),
        },
    ])
}

fn sweep(a: &SweepArgs) -> Result<Outcome> {
    let base = system(&a.phys)?;
    let r0 = parse_initial(&a.initial)?;
    let backend = a.backend.backend();
    let observable = Observable::from(a.observable);
    let q = quantization(&a.map, observable)?;
    let time_axis = GridAxis::linear(0.0, a.t_max, a.map.grid.n_x)?;
    let map = match a.param {
        SweepParam::Omega => {
            let axis = GridAxis::linear(a.y_min.unwrap_or(0.0), a.y_max.unwrap_or(6.0), a.map.grid.n_y)?;
            in_pool(a.map.workers, || {
                sweep_omega_time_with(&base, &axis, &time_axis, observable, &r0, backend)
            })?
        }
        SweepParam::T2 => {
            let top = (base.relaxation.t1 / 2.0).log10();
            let axis = GridAxis::log10(a.y_min.unwrap_or(-2.0), a.y_max.unwrap_or(top), a.map.grid.n_y)?;
            in_pool(a.map.workers, || {
                sweep_log_t2_time_with(&base, &axis, &time_axis, observable, &r0, backend)
            })?
        }
    };
    let artifacts = map_artifacts(&a.name, &map, &q, &backend, json!({ "command": "sweep" }))?;
    Ok(Outcome {
        artifacts,
        out_dir: Some(a.out.clone()),
        warnings: physicality_warnings(&base),
        ..Outcome::default()
    })
}

/// Files of a figure preset: map presets give CSV + PGM + JSON, series
/// presets CSV + JSON.
pub fn render_figure(a: &FigureArgs) -> Result<Vec<Artifact>> {
    let preset = figure_preset(&a.name).ok_or_else(|| {
        let names: Vec<&str> = optical_bloch::sweep::FIGURE_PRESETS.iter().map(|p| p.name).collect();
        CliError::Invalid(format!("unknown figure '{}' (known: {})", a.name, names.join(", ")))
    })?;
    let backend = a.backend.backend();
    let extra = json!({
        "command": "figure",
        "figure": preset.name,
        "description": preset.description,
    });
    if let Some(observable) = preset.observable() {
        let (y0, y1) = preset.y_range().unwrap_or_default();
        let y_range = (a.y_min.unwrap_or(y0), a.y_max.unwrap_or(y1));
        let q = quantization(&a.map, observable)?;
        let map = in_pool(a.map.workers, || {
            preset.render_map_with(a.map.grid.n_x, a.map.grid.n_y, Some(y_range), a.t_max, backend)
        })?;
        return map_artifacts(preset.name, &map, &q, &backend, extra);
    }
    let FigureLayout::Series { varied, .. } = preset.layout else {
        unreachable!()
    };
    let curves = preset.render_series_with(a.samples, a.t_max, backend)?;
    let first = &curves[0].1;
    let mut meta = json!({
        "version": VERSION,
        "backend": backend_json(&backend),
        "params": params_json(&preset.base_params()?),
        "initial": bloch_json(&preset.initial()),
        "varied": varied.name(),
        "values": curves.iter().map(|c| c.0).collect::<Vec<_>>(),
        "columns": first.columns.iter().map(|c| c.name()).collect::<Vec<_>>(),
        "time": { "min": first.times[0], "max": first.times[first.times.len() - 1], "n": first.times.len() },
        "files": [format!("{}.csv", preset.name)],
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut meta, extra) {
        m.extend(e);
    }
    Ok(vec![
        Artifact {
            file_name: format!("{}.csv", preset.name),
            bytes: multi_series_csv(varied.name(), &curves).into_bytes(),
        },
        Artifact {
            file_name: format!("{}.json", preset.name),
            bytes: to_json(&meta).into_bytes(),
        },
    ])
}

fn figure(a: &FigureArgs) -> Result<Outcome> {
    Ok(Outcome {
        artifacts: render_figure(a)?,
        out_dir: Some(a.out.clone()),
        ..Outcome::default()
    })
}

fn steady(a: &ReportArgs) -> Result<Outcome> {
    let p = system(&a.phys)?;
    let (r, rho, method) = equilibrium(&p)?;
    let opt = optimal_rabi(&p.relaxation, p.thermal.r3_tilde);
    let mut report = json!({
        "command": "steady-state",
        "version": VERSION,
        "params": params_json(&p),
        "physicality": validate_physicality(&p),
        "regime": regime_json(&p),
        "method": method,
        "R_eq": bloch_json(&r),
        "rho_eq": density_json(&rho),
        "rho11_eq": rho.rho11,
        "omega_r": opt.omega_r,
        "max_coherence": opt.max_coherence,
        "coherence_at_omega": equilibrium_coherence(&p.relaxation, p.drive.omega, p.thermal.r3_tilde),
    });
    if p.drive.delta == 0.0 {
        report["relation_residual"] = json!(equilibrium_relation_residual(&p));
    }
    Ok(Outcome {
        stdout: to_json(&report),
        copy_stdout_to: a.out.clone(),
        warnings: physicality_warnings(&p),
        ..Outcome::default()
    })
}

fn validate(a: &ReportArgs) -> Result<Outcome> {
    let report = PhysicalityReport::check(a.phys.t1, a.phys.t2, a.phys.r3tilde);
    let ok = report.is_physical();
    let body = json!({
        "command": "validate",
        "version": VERSION,
        "physical": ok,
        "on_boundary": report.on_boundary(),
        "report": report,
    });
    Ok(Outcome {
        stdout: to_json(&body),
        copy_stdout_to: a.out.clone(),
        warnings: report.violations.clone(),
        exit_code: if ok { 0 } else { 1 },
        ..Outcome::default()
    })
}
