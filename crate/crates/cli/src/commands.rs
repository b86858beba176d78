use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use fadof_core::calibrate::fit_lines;
use fadof_core::config::{parse_config, RunConfig};
use fadof_core::design::{figures_of_merit, optimize as run_optimize, sweep as run_sweep};
use fadof_core::formats::{parse_absorption_csv, write_spectrum_csv, write_sweep_csv};
use fadof_core::jones::jones_oracle;
use fadof_core::spectrum::{spectrum as run_spectrum, GridSpec};
use fadof_core::transfer::transmission;
use fadof_core::{units, Error, Workers};

use crate::report::{FitReport, OptimizeReport, OracleReport, SpectrumSummary};
use crate::{CommonArgs, Exit};

/// Largest closed-form vs. Jones deviation accepted by `oracle-check`.
pub const ORACLE_THRESHOLD: f64 = 1e-10;

pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

type Outcome = Result<Exit, Failure>;

fn fail(exit: Exit, message: impl Into<String>) -> Failure {
    Failure {
        exit,
        message: message.into(),
    }
}

fn exit_for(err: &Error) -> Exit {
    match err {
        Error::Config { .. }
        | Error::InvalidParameter { .. }
        | Error::InvalidGrid(_)
        | Error::InvalidCoefficients(_)
        | Error::WavelengthOutOfRange { .. }
        | Error::InsufficientData(_)
        | Error::Parse(_) => Exit::Config,
        Error::Numeric(_) => Exit::Numeric,
        Error::Io { .. } => Exit::Io,
        Error::NoPeak { .. } | Error::GridTooNarrow | Error::Infeasible(_) => Exit::NoSolution,
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        fail(exit_for(&err), err.to_string())
    }
}

struct Run {
    config: RunConfig,
    grid: GridSpec,
    workers: Workers,
    quiet: bool,
}

impl Run {
    fn load(args: &CommonArgs) -> Result<Self, Failure> {
        let config = parse_config(&args.config)?;
        let grid = GridSpec {
            span_ghz: args.grid_span_ghz.unwrap_or(config.grid.span_ghz),
            points: args.grid_points.unwrap_or(config.grid.points),
        };
        grid.validate()?;
        let workers = match args.workers {
            Some(0) => return Err(fail(Exit::Config, "--workers must be at least 1")),
            Some(n) => Workers::new(n),
            None => Workers::available(),
        };
        Ok(Run {
            config,
            grid,
            workers,
            quiet: args.quiet,
        })
    }

    fn out_path(&self, args: &CommonArgs, default: &str) -> PathBuf {
        args.out
            .clone()
            .or_else(|| self.config.output.clone())
            .unwrap_or_else(|| PathBuf::from(default))
    }

    fn note(&self, msg: impl AsRef<str>) {
        if !self.quiet {
            eprintln!("{}", msg.as_ref());
        }
    }
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| fail(Exit::Io, format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| fail(Exit::Numeric, format!("serializing {}: {e}", path.display())))?;
    text.push('\n');
    write_text(path, &text)
}

/// `x.csv` -> `x.summary.json`
pub fn summary_path(out: &Path) -> PathBuf {
    out.with_extension("summary.json")
}

pub fn spectrum(args: &CommonArgs) -> Outcome {
    let run = Run::load(args)?;
    let out = run.out_path(args, "spectrum.csv");
    let filter = &run.config.filter;
    let spec = run_spectrum(filter, &run.grid, run.workers)?;
    write_text(&out, &write_spectrum_csv(&spec.points))?;

    let fom = figures_of_merit(&spec);
    let summary = SpectrumSummary {
        field_t: filter.zeeman.field_t,
        length_mm: units::m_to_mm(filter.length()),
        grid: run.grid,
        figures_of_merit: fom.as_ref().ok().cloned(),
        error: fom.as_ref().err().map(|e| e.to_string()),
    };
    write_json(&summary_path(&out), &summary)?;
    match fom {
        Ok(f) => {
            run.note(format!(
                "T_max {:.4}, bandwidth {:.3} GHz, {} peak(s) -> {}",
                f.t_max,
                f.bandwidth_ghz,
                f.peak_count,
                out.display()
            ));
            Ok(Exit::Ok)
        }
        Err(e) => Err(fail(exit_for(&e), format!("{e} (spectrum written to {})", out.display()))),
    }
}

pub fn sweep(args: &CommonArgs) -> Outcome {
    let run = Run::load(args)?;
    let Some(spec) = &run.config.sweep else {
        return Err(fail(Exit::Config, "sweep: missing [sweep] section in config"));
    };
    let out = run.out_path(args, "sweep.csv");
    let result = run_sweep(&run.config.filter, spec.field_t, spec.length_mm, &run.grid, run.workers)?;
    write_text(&out, &write_sweep_csv(&result))?;
    let absent = result.cells.iter().filter(|c| c.fom.is_none()).count();
    run.note(format!(
        "{} cells ({absent} without figures of merit) -> {}",
        result.cells.len(),
        out.display()
    ));
    Ok(Exit::Ok)
}

pub fn optimize(args: &CommonArgs) -> Outcome {
    let run = Run::load(args)?;
    let Some(spec) = &run.config.optimize else {
        return Err(fail(Exit::Config, "optimize: missing [optimize] section in config"));
    };
    let out = run.out_path(args, "optimize.json");
    match run_optimize(&run.config.filter, &spec.bounds, &spec.options, &run.grid, run.workers) {
        Ok(solution) => {
            write_json(
                &out,
                &OptimizeReport {
                    status: "ok",
                    solution: &solution,
                    grid: run.grid,
                },
            )?;
            run.note(format!(
                "B = {:.6} T, L = {:.6} mm, T_max {:.4} ({} evaluations) -> {}",
                solution.field_t,
                solution.length_mm,
                solution.objective,
                solution.evaluations,
                out.display()
            ));
            Ok(Exit::Ok)
        }
        Err(Error::Infeasible(best)) => {
            write_json(
                &out,
                &OptimizeReport {
                    status: "infeasible",
                    solution: &best,
                    grid: run.grid,
                },
            )?;
            Err(fail(
                Exit::NoSolution,
                format!("no feasible design; best infeasible point written to {}", out.display()),
            ))
        }
        Err(e) => Err(e.into()),
    }
}

pub fn calibrate(args: &CommonArgs, samples: Option<&Path>) -> Outcome {
    let run = Run::load(args)?;
    let path = samples
        .map(Path::to_path_buf)
        .or_else(|| run.config.calibrate.samples_path.clone())
        .ok_or_else(|| fail(Exit::Config, "calibrate: no samples given (--samples or calibrate.samples_path)"))?;
    let text = fs::read_to_string(&path).map_err(|e| fail(Exit::Io, format!("{}: {e}", path.display())))?;
    let data = parse_absorption_csv(&text).map_err(|e| fail(Exit::Config, format!("{}: {e}", path.display())))?;

    let out = run.out_path(args, "calibration.json");
    let filter = &run.config.filter;
    let options = run.config.calibrate.options;
    let fit = fit_lines(&data, filter, &filter.strengths, &options)?;
    write_json(&out, &FitReport::new(&fit, data.len(), options.fit_zeeman))?;
    if fit.converged {
        run.note(format!(
            "converged in {} iterations, rms residual {:.3e} -> {}",
            fit.iterations,
            fit.rms_residual,
            out.display()
        ));
        Ok(Exit::Ok)
    } else {
        Err(fail(
            Exit::Numeric,
            format!(
                "fit did not converge within {} iterations; partial result written to {}",
                fit.iterations,
                out.display()
            ),
        ))
    }
}

pub fn oracle_check(args: &CommonArgs) -> Outcome {
    let run = Run::load(args)?;
    let out = run.out_path(args, "oracle_check.json");
    let filter = &run.config.filter;
    let reference = filter.reference_frequency();
    let detunings = run.grid.detunings_ghz();
    let deviations = run.workers.map(&detunings, |&d| {
        let omega = reference + units::ghz_to_angular(d);
        Ok::<f64, Error>((transmission(filter, omega)? - jones_oracle(filter, omega)?).abs())
    });
    let mut max_dev = 0.0;
    let mut at = detunings[0];
    for (d, dev) in detunings.iter().zip(deviations) {
        let dev = dev?;
        // NaN compares false, so track it explicitly
        if dev > max_dev || dev.is_nan() {
            max_dev = dev;
            at = *d;
            if dev.is_nan() {
                break;
            }
        }
    }
    let pass = max_dev <= ORACLE_THRESHOLD;
    write_json(
        &out,
        &OracleReport {
            points: detunings.len(),
            max_abs_deviation: max_dev,
            at_detuning_ghz: at,
            threshold: ORACLE_THRESHOLD,
            pass,
        },
    )?;
    if pass {
        run.note(format!("max |T - T_jones| = {max_dev:.3e} -> {}", out.display()));
        Ok(Exit::Ok)
    } else {
        Err(fail(
            Exit::Numeric,
            format!("max |T - T_jones| = {max_dev:.3e} at {at} GHz exceeds {ORACLE_THRESHOLD:e}"),
        ))
    }
}
