use std::fmt;
use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};
use xxz_core::model::ground_state;
use xxz_core::sweep::{
    critical_field, critical_temperature, figure_data_with, sweep_with, CriticalPoint, Execution, FieldAxis, Param,
    Parameterization, PointParams, SweepGrid, SweepSpec, ToleranceRecord, DEFAULT_POINTS,
};
use xxz_core::thermal::thermal_concurrence;
use xxz_core::verify::run_verify_with;
use xxz_core::{Error, ModelParams, Temperature};

use crate::args::{Command, GridFormat, ModelArgs, RecordFormat, SweepArgs};
use crate::exit;
use crate::record::{number, OutputRecord};

#[derive(Debug)]
pub enum CliError {
    Domain(Error),
    Usage(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Domain(_) | CliError::Io(_) => exit::DOMAIN,
            CliError::Usage(_) => exit::USAGE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Domain(e) => write!(f, "{e}"),
            CliError::Usage(msg) | CliError::Io(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidAxis(_) | Error::UnknownFigure(_) => CliError::Usage(e.to_string()),
            other => CliError::Domain(other),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(format!("I/O failure: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(format!("CSV write failure: {e}"))
    }
}

type CliResult<T> = Result<T, CliError>;

pub fn run(command: Command) -> CliResult<u8> {
    match command {
        Command::Eval {
            model,
            temperature,
            format,
        } => emit(&eval(model, temperature.t)?, format),
        Command::Ground { model, format } => emit(&ground(model)?, format),
        Command::Sweep(args) => sweep(&args),
        Command::Critical {
            axis,
            model,
            temperature,
            format,
        } => emit(&critical(axis, model, temperature.t)?, format),
        Command::Verify { samples, seed, format } => verify(samples, seed, format),
    }
}

fn emit(record: &OutputRecord, format: RecordFormat) -> CliResult<u8> {
    let text = match format {
        RecordFormat::Text => record.to_text(),
        RecordFormat::Json => record.to_json_string() + "\n",
    };
    io::stdout().write_all(text.as_bytes())?;
    Ok(exit::OK)
}

fn params_map(model: ModelArgs, t: Option<f64>, skip: &[Param]) -> Map<String, Value> {
    let point = PointParams {
        j: model.j,
        jz: model.jz,
        big_b: model.big_b,
        b: model.b,
        t: t.unwrap_or(f64::NAN),
    };
    Param::ALL
        .into_iter()
        .filter(|p| !skip.contains(p) && (*p != Param::T || t.is_some()))
        .map(|p| (p.token().to_string(), number(point.get(p))))
        .collect()
}

fn model_params(m: ModelArgs) -> CliResult<ModelParams> {
    Ok(ModelParams::new(m.j, m.jz, m.big_b, m.b)?)
}

fn tolerances() -> Value {
    serde_json::to_value(ToleranceRecord::default()).expect("tolerances serialize")
}

fn eval(model: ModelArgs, t: f64) -> CliResult<OutputRecord> {
    let p = model_params(model)?;
    let c = thermal_concurrence(&p, Temperature::new(t)?)?;
    let gibbs = c.gibbs;
    Ok(OutputRecord {
        command: "eval",
        params: params_map(model, Some(t), &[]),
        results: json!({
            "concurrence": c.value(),
            "wootters_roots": c.concurrence.wootters_roots.map(number),
            "method": c.concurrence.method.as_str(),
        }),
        diagnostics: json!({
            "method": c.concurrence.method.as_str(),
            "sign_function": c.sign.map_or(Value::Null, number),
            "partition_function": gibbs.map_or(Value::Null, |g| number(g.z)),
            "log_partition_function": gibbs.map_or(Value::Null, |g| number(g.log_z)),
            "tolerances": tolerances(),
        }),
    })
}

fn ground(model: ModelArgs) -> CliResult<OutputRecord> {
    let g = ground_state(&model_params(model)?)?;
    Ok(OutputRecord {
        command: "ground",
        params: params_map(model, None, &[]),
        results: json!({
            "phase": g.phase.as_str(),
            "ground_energy": number(g.ground_energy),
            "ground_concurrence": g.ground_concurrence.map_or(Value::Null, number),
            "threshold_jz": number(g.threshold_jz),
            "threshold_b": number(g.threshold_b),
        }),
        diagnostics: json!({
            "phase_boundary_tolerance": xxz_core::tol::PHASE_BOUNDARY,
        }),
    })
}

fn critical_results(cp: &CriticalPoint) -> Value {
    let root = cp.root();
    json!({
        "axis": cp.axis.token(),
        "status": if root.is_some() { "Finite" } else { "NoFiniteRoot" },
        "location": root.map_or(Value::Null, number),
        "bracket": [number(cp.bracket.0), number(cp.bracket.1)],
        "residual": number(cp.residual),
        "diagnostic": cp.diagnostic,
        "zero_temperature_boundary": cp.zero_temperature_boundary.map_or(Value::Null, number),
    })
}

fn critical(axis: Param, model: ModelArgs, t: f64) -> CliResult<OutputRecord> {
    let p = model_params(model)?;
    let (cp, params) = match axis {
        Param::T => (critical_temperature(&p)?, params_map(model, None, &[Param::T])),
        Param::SmallB => (
            critical_field(&p, Temperature::new(t)?, FieldAxis::Inhomogeneous)?,
            params_map(model, Some(t), &[Param::SmallB]),
        ),
        _ => (
            critical_field(&p, Temperature::new(t)?, FieldAxis::Uniform)?,
            params_map(model, Some(t), &[Param::BigB]),
        ),
    };
    Ok(OutputRecord {
        command: "critical",
        params,
        results: critical_results(&cp),
        diagnostics: json!({ "root_tolerance": xxz_core::tol::ROOT }),
    })
}

fn verify(samples: u64, seed: u64, format: RecordFormat) -> CliResult<u8> {
    let samples = usize::try_from(samples).map_err(|_| CliError::Usage("sample count too large".into()))?;
    let report = run_verify_with(seed, samples, Execution::default())?;
    let mut params = Map::new();
    params.insert("samples".into(), json!(samples));
    params.insert("seed".into(), json!(seed));
    let record = OutputRecord {
        command: "verify",
        params,
        results: json!({
            "passed": report.passed,
            "suites": serde_json::to_value(&report.suites).expect("reports serialize"),
        }),
        diagnostics: json!({
            "rng": "SplitMix64 seeded with seed_from_u64(seed); per sample |J|, sign of J, Jz, B, b, T, then 8 pure-state amplitude uniforms",
        }),
    };
    emit(&record, format)?;
    if report.passed {
        return Ok(exit::OK);
    }
    for s in report.failures() {
        let worst = serde_json::to_string(&s.worst).expect("points serialize");
        eprintln!(
            "verification failed: {} max error {:e} exceeds {:e} at {worst}",
            s.name, s.max_error, s.tolerance
        );
    }
    Ok(exit::VERIFY_FAILED)
}

fn parameterization_name(p: Parameterization) -> &'static str {
    match p {
        Parameterization::Standard => "standard",
        Parameterization::XxxRescaled => "xxx_rescaled",
    }
}

/// Formats a float with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv<W: Write>(grid: &SweepGrid, sink: W) -> CliResult<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(sink);
    let axes = &grid.spec.axes;
    let mut header: Vec<&str> = axes.iter().map(|a| a.name.token()).collect();
    header.push("concurrence");
    w.write_record(&header)?;
    for (i, v) in grid.values.iter().enumerate() {
        let mut row: Vec<String> = grid.spec.coordinates(i).into_iter().map(fmt17).collect();
        row.push(fmt17(*v));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

fn grid_record(name: Option<&str>, grid: &SweepGrid) -> OutputRecord {
    let spec = &grid.spec;
    let mut skip: Vec<Param> = spec.axes.iter().map(|a| a.name).collect();
    if spec.parameterization == Parameterization::XxxRescaled {
        skip.push(Param::Jz);
    }
    let f = spec.fixed;
    let model = ModelArgs {
        j: f.j,
        jz: f.jz,
        big_b: f.big_b,
        b: f.b,
    };
    let axes: Vec<Value> = spec
        .axes
        .iter()
        .map(|a| {
            json!({
                "name": a.name.token(),
                "start": a.start,
                "stop": a.stop,
                "points": a.points,
                "values": a.values(),
            })
        })
        .collect();
    let values = if spec.axes.len() == 1 {
        json!(grid.values)
    } else {
        json!(grid.rows())
    };
    let methods: Vec<&str> = grid.metadata.methods.iter().map(|m| m.as_str()).collect();
    let mut results = json!({
        "parameterization": parameterization_name(spec.parameterization),
        "axes": axes,
        "concurrence": values,
    });
    if let Some(name) = name {
        results["name"] = json!(name);
    }
    OutputRecord {
        command: "sweep",
        params: params_map(model, Some(f.t), &skip),
        results,
        diagnostics: json!({
            "methods": methods,
            "tolerances": serde_json::to_value(grid.metadata.tolerances).expect("tolerances serialize"),
        }),
    }
}

fn write_grid<W: Write>(name: Option<&str>, grid: &SweepGrid, format: GridFormat, mut sink: W) -> CliResult<()> {
    match format {
        GridFormat::Csv => write_csv(grid, sink),
        GridFormat::Json => {
            sink.write_all((grid_record(name, grid).to_json_string() + "\n").as_bytes())?;
            Ok(sink.flush()?)
        }
    }
}

fn create(path: &Path) -> CliResult<io::BufWriter<File>> {
    File::create(path)
        .map(io::BufWriter::new)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))
}

fn sweep(args: &SweepArgs) -> CliResult<u8> {
    let exec = if args.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let extension = match args.format {
        GridFormat::Csv => "csv",
        GridFormat::Json => "json",
    };

    if let Some(id) = args.figure {
        let points = args.points.map_or(DEFAULT_POINTS, |p| p as usize);
        let grids = figure_data_with(id, points, exec)?;
        let dir = args.out.clone().unwrap_or_else(|| PathBuf::from("."));
        fs::create_dir_all(&dir).map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        for fig in &grids {
            let path = dir.join(format!("{}.{extension}", fig.name));
            write_grid(Some(&fig.name), &fig.grid, args.format, create(&path)?)?;
            println!("{}", path.display());
        }
        return Ok(exit::OK);
    }

    let m = args.model;
    let fixed = PointParams {
        j: m.j,
        jz: m.jz,
        big_b: m.big_b,
        b: m.b,
        t: args.temperature.t,
    };
    let parameterization = if args.xxx_rescaled {
        Parameterization::XxxRescaled
    } else {
        Parameterization::Standard
    };
    let spec = SweepSpec::new(fixed, args.axis.clone()).rescaled(parameterization);
    spec.validate()?;
    let grid = sweep_with(&spec, exec)?;
    match &args.out {
        Some(path) => write_grid(None, &grid, args.format, create(path)?)?,
        None => write_grid(None, &grid, args.format, io::stdout().lock())?,
    }
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits_round_trip() {
        for x in [0.0, 1.0, 0.1, -6.0, 0.068_893_290_777_046_05, 1e-300, 5e-324, f64::MAX] {
            let s = fmt17(x);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits(), "{s}");
        }
        assert_eq!(fmt17(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn error_classes() {
        assert_eq!(CliError::from(Error::UnknownFigure(9)).exit_code(), exit::USAGE);
        assert_eq!(CliError::from(Error::InvalidAxis("x".into())).exit_code(), exit::USAGE);
        assert_eq!(
            CliError::from(Error::NonPositiveTemperature(-1.0)).exit_code(),
            exit::DOMAIN
        );
    }
}
