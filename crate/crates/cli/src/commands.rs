//! Subcommand bodies. Each returns the process exit code on success and the
//! first hard error otherwise.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde_json::json;
use sphconv_bench::{
    run_check, run_grid, timing_summary, to_json, write_csv, AlphaGrid, BenchRecord, GridSpec,
    SuiteOptions, Timing, CHECK_IDS,
};
use sphconv_core::asympt::{asymptotic_i, pole_term, remainder_closed_form, remainder_series};
use sphconv_core::gegenbauer::{default_m_max, solve_method_6};
use sphconv_core::methods::default_context;
use sphconv_core::monomial::{method_3_k_max, solve_method_3};
use sphconv_core::spectral::{default_dim, solve_method_4, solve_method_5};
use sphconv_core::{evaluate, Error, Method, MethodResult, Problem, Result};

use crate::args::{AsymptArgs, BenchArgs, CoeffsArgs, EvalArgs, Format, GridArgs, VerifyArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_NUMERICAL: u8 = 2;

pub fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

pub fn report(e: &Error) {
    eprintln!("error: {}: {e}", e.class());
}

fn io_error(e: io::Error) -> Error {
    Error::Domain(format!("i/o: {e}"))
}

fn open_output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path).map_err(io_error)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn cmd_eval(args: &EvalArgs) -> Result<u8> {
    let problem = Problem::new(args.n, args.angle.to_radians(args.alpha))?;
    let ctx = args.precision.context()?;
    let methods = args.method.methods();
    let single = methods.len() == 1;

    let mut rows: Vec<(Method, Result<MethodResult>)> = Vec::new();
    for m in methods {
        let r = evaluate(&problem, m, ctx.as_ref());
        if single {
            // a lone method's failure is the command's failure
            rows.push((m, Ok(r?)));
        } else {
            rows.push((m, r));
        }
    }

    let mut out = io::stdout().lock();
    match args.format {
        Format::Plain => {
            writeln!(out, "N = {}, alpha = {}", problem.n(), problem.alpha()).map_err(io_error)?;
            writeln!(
                out,
                "{:<11} {:>24} {:>10} {:>6} {:>10}",
                "method", "value", "truncation", "digits", "seconds"
            )
            .map_err(io_error)?;
            for (m, r) in &rows {
                let line = match r {
                    Ok(r) => format!(
                        "{:<11} {:>24} {:>10} {:>6} {:>10.3e}",
                        m.name(),
                        real(r.value),
                        r.truncation_order,
                        r.digits_used,
                        r.seconds
                    ),
                    Err(e) => format!("{:<11} {:>24}", m.name(), e.class().as_str()),
                };
                writeln!(out, "{line}").map_err(io_error)?;
            }
        }
        Format::Csv => {
            writeln!(out, "method,n,alpha,value,truncation,digits,seconds").map_err(io_error)?;
            for (m, r) in &rows {
                let line = match r {
                    Ok(r) => format!(
                        "{},{},{},{},{},{},{}",
                        m.name(),
                        problem.n(),
                        real(problem.alpha()),
                        real(r.value),
                        r.truncation_order,
                        r.digits_used,
                        real(r.seconds)
                    ),
                    Err(e) => format!(
                        "{},{},{},{},,,",
                        m.name(),
                        problem.n(),
                        real(problem.alpha()),
                        e.class()
                    ),
                };
                writeln!(out, "{line}").map_err(io_error)?;
            }
        }
        Format::Json => {
            let items: Vec<serde_json::Value> = rows
                .iter()
                .map(|(m, r)| match r {
                    Ok(r) => json!({
                        "method": m.name(), "n": problem.n(), "alpha": problem.alpha(), "value": r.value,
                        "truncation": r.truncation_order, "digits": r.digits_used, "seconds": r.seconds,
                    }),
                    Err(e) => json!({
                        "method": m.name(), "n": problem.n(), "alpha": problem.alpha(),
                        "value": e.class().as_str(), "error": e.to_string(),
                    }),
                })
                .collect();
            let doc = if single {
                items.into_iter().next().expect("one row")
            } else {
                serde_json::Value::Array(items)
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| Error::Domain(e.to_string()))?
            )
            .map_err(io_error)?;
        }
    }
    out.flush().map_err(io_error)?;

    let worst = rows
        .iter()
        .filter_map(|(_, r)| r.as_ref().err())
        .map(exit_code)
        .max();
    for (m, r) in &rows {
        if let Err(e) = r {
            eprintln!("{}: {}: {e}", m.name(), e.class());
        }
    }
    Ok(worst.unwrap_or(EXIT_OK))
}

fn grid_spec(args: &GridArgs, timing: Timing) -> Result<GridSpec> {
    let alpha = AlphaGrid::new(
        args.angle.to_radians(args.alpha_start),
        args.angle.to_radians(args.alpha_stop),
        args.count,
    )?;
    let mut spec = GridSpec::new(args.n.clone(), alpha, args.method.methods());
    if let Some(r) = args.reference {
        spec.reference = r;
    }
    if let Some(p) = args.precision.monomial_precision() {
        spec.precisions = vec![p];
    }
    spec.timing = timing;
    Ok(spec)
}

fn write_records(records: &[BenchRecord], format: Format, out: Option<&Path>) -> Result<()> {
    let mut w = open_output(out)?;
    match format {
        Format::Csv => write_csv(records, &mut w)?,
        Format::Json => writeln!(w, "{}", to_json(records)?).map_err(io_error)?,
        Format::Plain => {
            writeln!(
                w,
                "{:<11} {:>5} {:>10} {:>24} {:>24} {:>10} {:>10} {:>6} {:>10}",
                "method",
                "n",
                "alpha",
                "value",
                "reference",
                "abs_error",
                "seconds",
                "digits",
                "truncation"
            )
            .map_err(io_error)?;
            for r in records {
                let value = r.value().map_or_else(
                    || {
                        r.failure()
                            .map(|c| c.as_str().to_string())
                            .unwrap_or_default()
                    },
                    real,
                );
                writeln!(
                    w,
                    "{:<11} {:>5} {:>10.6} {:>24} {:>24} {:>10.2e} {:>10.3e} {:>6} {:>10}",
                    r.method.name(),
                    r.n,
                    r.alpha,
                    value,
                    real(r.reference),
                    r.abs_error(),
                    r.seconds,
                    r.digits,
                    r.truncation
                )
                .map_err(io_error)?;
            }
        }
    }
    w.flush().map_err(io_error)
}

pub fn cmd_scan(args: &GridArgs) -> Result<u8> {
    let spec = grid_spec(args, Timing::single())?;
    let records = run_grid(&spec)?;
    write_records(&records, args.format, args.out.as_deref())?;
    Ok(EXIT_OK)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<u8> {
    let timing = Timing {
        warmup: true,
        repetitions: args.repetitions,
    };
    let spec = match args.preset {
        Some(preset) => {
            let mut spec = preset.spec();
            spec.timing = timing;
            if let Some(p) = args.grid.precision.monomial_precision() {
                spec.precisions = vec![p];
            }
            spec
        }
        None => grid_spec(&args.grid, timing)?,
    };
    let records = run_grid(&spec)?;
    write_records(&records, args.grid.format, args.grid.out.as_deref())?;
    if args.summary {
        eprintln!(
            "{:<11} {:>6} {:>7} {:>12} {:>12}",
            "method", "digits", "samples", "median_s", "p95_s"
        );
        for row in timing_summary(&records)? {
            eprintln!(
                "{:<11} {:>6} {:>7} {:>12.3e} {:>12.3e}",
                row.method.name(),
                row.digits,
                row.samples,
                row.median,
                row.p95
            );
        }
    }
    Ok(EXIT_OK)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<u8> {
    let opts = SuiteOptions {
        quick: args.quick,
        seed: args.seed,
    };
    let ids: Vec<String> = if args.only.is_empty() {
        CHECK_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        args.only
            .iter()
            .map(|s| s.trim().to_ascii_uppercase())
            .collect()
    };
    // reject unknown ids before running anything
    if let Some(bad) = ids.iter().find(|id| !CHECK_IDS.contains(&id.as_str())) {
        return Err(Error::Domain(format!(
            "unknown check '{bad}' (valid: {})",
            CHECK_IDS.join(", ")
        )));
    }
    let mut failed = 0;
    let mut out = io::stdout().lock();
    for id in &ids {
        let outcome = run_check(id, &opts)?;
        writeln!(out, "{outcome}").map_err(io_error)?;
        out.flush().map_err(io_error)?;
        if !outcome.passed {
            failed += 1;
        }
    }
    writeln!(out, "{} of {} checks passed", ids.len() - failed, ids.len()).map_err(io_error)?;
    Ok(if failed == 0 { EXIT_OK } else { EXIT_NUMERICAL })
}

pub fn cmd_coeffs(args: &CoeffsArgs) -> Result<u8> {
    // alpha does not enter the coefficients
    let problem = Problem::new(args.n, 1.0)?;
    let coeffs = match args.method {
        Method::Galerkin => solve_method_4(
            &problem,
            args.order.unwrap_or_else(|| default_dim(&problem, 16)),
        )?,
        Method::Volterra => solve_method_5(
            &problem,
            args.order.unwrap_or_else(|| default_dim(&problem, 16)),
        )?,
        Method::Gegenbauer => solve_method_6(
            &problem,
            args.order.unwrap_or_else(|| default_m_max(&problem)),
        )?,
        Method::Method3 => {
            let ctx = args
                .precision
                .context()?
                .unwrap_or_else(|| default_context(Method::Method3, &problem));
            let order = match args.order {
                Some(o) => o,
                None => method_3_k_max(&problem)?,
            };
            solve_method_3(&problem, &ctx, order)?
        }
        m => {
            return Err(Error::Domain(format!(
                "{m} has no Legendre coefficients (valid: method3, galerkin, volterra, gegenbauer)"
            )))
        }
    };
    let c = coeffs.c();
    let shown = &c[..args.count.map_or(c.len(), |k| k.min(c.len()))];
    let mut out = io::stdout().lock();
    match args.format {
        Format::Plain | Format::Csv => {
            let sep = if args.format == Format::Csv { "," } else { " " };
            writeln!(out, "j{sep}l{sep}c").map_err(io_error)?;
            for (j, v) in shown.iter().enumerate() {
                writeln!(out, "{j}{sep}{}{sep}{}", 2 * j, real(*v)).map_err(io_error)?;
            }
        }
        Format::Json => {
            let doc = json!({ "method": args.method.name(), "n": args.n, "c": shown });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| Error::Domain(e.to_string()))?
            )
            .map_err(io_error)?;
        }
    }
    out.flush().map_err(io_error)?;
    Ok(EXIT_OK)
}

pub fn cmd_asympt(args: &AsymptArgs) -> Result<u8> {
    let problem = Problem::new(args.n, args.angle.to_radians(args.alpha))?;
    let alpha = problem.alpha();
    let b = asymptotic_i(&problem);
    let split = 0.5 * pole_term(alpha, problem.n())
        + 0.5 * pole_term(std::f64::consts::PI - alpha, problem.n());
    let closed = remainder_closed_form(alpha);
    let series = args
        .series_terms
        .map(|j| remainder_series(alpha, j))
        .transpose()?;

    let mut out = io::stdout().lock();
    match args.format {
        Format::Json => {
            let doc = json!({
                "n": problem.n(), "alpha": alpha, "leading_log": b.leading_log, "remainder": b.remainder,
                "envelope": b.envelope, "value": b.value, "pole_split": split,
                "c_closed_form": closed, "c_series": series,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).map_err(|e| Error::Domain(e.to_string()))?
            )
            .map_err(io_error)?;
        }
        Format::Plain | Format::Csv => {
            let mut rows = vec![
                ("leading_log", b.leading_log),
                ("remainder", b.remainder),
                ("envelope", b.envelope),
                ("value", b.value),
                ("pole_split", split),
                ("c_closed_form", closed),
            ];
            if let Some(s) = series {
                rows.push(("c_series", s));
            }
            if args.format == Format::Csv {
                writeln!(out, "quantity,value").map_err(io_error)?;
            }
            for (k, v) in rows {
                if args.format == Format::Csv {
                    writeln!(out, "{k},{}", real(v)).map_err(io_error)?;
                } else {
                    writeln!(out, "{k:<14} {}", real(v)).map_err(io_error)?;
                }
            }
        }
    }
    out.flush().map_err(io_error)?;
    Ok(EXIT_OK)
}
