//! Grid sweeps over (method, N, α) with serial timing.
//!
//! A method that fails on a cell produces a record carrying its error class;
//! only an invalid grid description is an error of the sweep itself.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use sphconv_core::gegenbauer::eval_method_6;
use sphconv_core::oracle::oracle_value;
use sphconv_core::{evaluate, Error, Method, PrecisionContext, Problem, Result};

use crate::record::{BenchRecord, Outcome};

/// Largest N for which the 2D quadrature is the default reference.
pub const ORACLE_MAX_N: u32 = 30;

/// Evenly spaced α values, both endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlphaGrid {
    start: f64,
    stop: f64,
    count: usize,
}

impl AlphaGrid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::Dimension { got: count, min: 2 });
        }
        if !(start > 0.0 && stop < PI && start < stop) {
            return Err(Error::Domain(format!(
                "alpha grid [{start}, {stop}] must satisfy 0 < start < stop < pi"
            )));
        }
        Ok(AlphaGrid { start, stop, count })
    }

    /// 60 points on [0.1, π − 0.1].
    pub fn default_grid() -> Self {
        AlphaGrid {
            start: 0.1,
            stop: PI - 0.1,
            count: 60,
        }
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn points(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    self.stop
                } else {
                    self.start + step * i as f64
                }
            })
            .collect()
    }
}

/// What the `reference` column is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reference {
    Oracle2d,
    Method6,
}

impl Reference {
    /// The 2D oracle up to N = 30, Method 6 beyond.
    pub fn default_for(n_max: u32) -> Self {
        if n_max <= ORACLE_MAX_N {
            Reference::Oracle2d
        } else {
            Reference::Method6
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Reference::Oracle2d => "oracle_2d",
            Reference::Method6 => "method_6",
        }
    }

    pub fn value(self, problem: &Problem) -> Result<f64> {
        match self {
            Reference::Oracle2d => oracle_value(problem),
            Reference::Method6 => eval_method_6(problem).map(|r| r.value),
        }
    }
}

impl fmt::Display for Reference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Reference {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "oracle" | "oracle_2d" | "oracle2d" => Ok(Reference::Oracle2d),
            "method_6" | "method6" | "m6" | "gegenbauer" => Ok(Reference::Method6),
            _ => Err(Error::Domain(format!(
                "unknown reference '{s}' (valid: oracle_2d, method_6)"
            ))),
        }
    }
}

/// Arithmetic used for the monomial methods 1 to 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialPrecision {
    /// `required_digits(N, 16)`.
    Certified,
    Native,
    Digits(u32),
}

impl MonomialPrecision {
    pub fn context(self, problem: &Problem) -> Result<PrecisionContext> {
        match self {
            MonomialPrecision::Certified => Ok(PrecisionContext::certified(problem.n())),
            MonomialPrecision::Native => Ok(PrecisionContext::native()),
            MonomialPrecision::Digits(d) => PrecisionContext::big_float(d),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Timing {
    /// One untimed run before measuring.
    pub warmup: bool,
    /// Timed runs per cell; the minimum is reported.
    pub repetitions: usize,
}

impl Timing {
    pub fn single() -> Self {
        Timing {
            warmup: false,
            repetitions: 1,
        }
    }
}

impl Default for Timing {
    fn default() -> Self {
        Timing {
            warmup: true,
            repetitions: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub n_values: Vec<u32>,
    pub alpha_grid: AlphaGrid,
    pub methods: Vec<Method>,
    pub reference: Reference,
    /// Monomial methods run once per entry; the others ignore it.
    pub precisions: Vec<MonomialPrecision>,
    pub timing: Timing,
}

impl GridSpec {
    /// A spec with the default reference for its largest N, certified
    /// monomial precision and default timing.
    pub fn new(n_values: Vec<u32>, alpha_grid: AlphaGrid, methods: Vec<Method>) -> Self {
        let n_max = n_values.iter().copied().max().unwrap_or(0);
        GridSpec {
            n_values,
            alpha_grid,
            methods,
            reference: Reference::default_for(n_max),
            precisions: vec![MonomialPrecision::Certified],
            timing: Timing::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() {
            return Err(Error::EmptyInput("N values"));
        }
        if self.methods.is_empty() {
            return Err(Error::EmptyInput("methods"));
        }
        if self.timing.repetitions == 0 {
            return Err(Error::Dimension { got: 0, min: 1 });
        }
        if self.precisions.is_empty() && self.methods.iter().any(|m| m.is_monomial()) {
            return Err(Error::EmptyInput("monomial precisions"));
        }
        if let Some(&n) = self.n_values.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidProblem(format!(
                "N = {n} must be a positive integer"
            )));
        }
        for p in &self.precisions {
            if let MonomialPrecision::Digits(d) = *p {
                PrecisionContext::big_float(d)?;
            }
        }
        AlphaGrid::new(
            self.alpha_grid.start,
            self.alpha_grid.stop,
            self.alpha_grid.count,
        )?;
        Ok(())
    }

    /// Number of records [`run_grid`] will produce.
    pub fn cell_count(&self) -> usize {
        let per_cell: usize = self
            .methods
            .iter()
            .map(|m| {
                if m.is_monomial() {
                    self.precisions.len()
                } else {
                    1
                }
            })
            .sum();
        self.n_values.len() * self.alpha_grid.count * per_cell
    }
}

fn timed_cell(
    problem: &Problem,
    method: Method,
    ctx: &PrecisionContext,
    timing: Timing,
) -> (Outcome, f64, u32, usize) {
    if timing.warmup {
        let _ = evaluate(problem, method, Some(ctx));
    }
    let mut best = f64::INFINITY;
    let mut outcome = None;
    for _ in 0..timing.repetitions {
        let start = Instant::now();
        let r = evaluate(problem, method, Some(ctx));
        best = best.min(start.elapsed().as_secs_f64());
        outcome.get_or_insert(r);
    }
    let digits = if method.is_monomial() {
        ctx.decimal_digits()
    } else {
        PrecisionContext::native().decimal_digits()
    };
    match outcome.expect("at least one repetition") {
        Ok(r) => (
            Outcome::Value(r.value),
            best,
            r.digits_used,
            r.truncation_order,
        ),
        Err(e) => (Outcome::Failure(e.class()), best, digits, 0),
    }
}

/// Run every cell of `spec` in the order N, α, method, precision.
pub fn run_grid(spec: &GridSpec) -> Result<Vec<BenchRecord>> {
    spec.validate()?;
    let mut records = Vec::with_capacity(spec.cell_count());
    for &n in &spec.n_values {
        for alpha in spec.alpha_grid.points() {
            let problem = Problem::new(n, alpha)?;
            let reference = spec.reference.value(&problem).unwrap_or(f64::NAN);
            for &method in &spec.methods {
                let precisions: &[MonomialPrecision] = if method.is_monomial() {
                    &spec.precisions
                } else {
                    &[MonomialPrecision::Native]
                };
                for &precision in precisions {
                    let (outcome, seconds, digits, truncation) = match precision.context(&problem) {
                        Ok(ctx) => timed_cell(&problem, method, &ctx, spec.timing),
                        Err(e) => (Outcome::Failure(e.class()), 0.0, 0, 0),
                    };
                    records.push(BenchRecord {
                        method,
                        n,
                        alpha,
                        outcome,
                        reference,
                        seconds,
                        digits,
                        truncation,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Timing statistics for one (method, digits) group.
#[derive(Debug, Clone, PartialEq)]
pub struct TimingRow {
    pub method: Method,
    pub digits: u32,
    pub samples: usize,
    pub median: f64,
    pub p95: f64,
}

/// Nearest-rank percentile of sorted data, `q` in [0, 1].
fn percentile(sorted: &[f64], q: f64) -> f64 {
    let rank = (q * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

fn median(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2]
    } else {
        0.5 * (sorted[n / 2 - 1] + sorted[n / 2])
    }
}

/// Median and 95th percentile of `seconds`, grouped by (method, digits) in
/// order of first appearance. Failed cells are included.
pub fn timing_summary(records: &[BenchRecord]) -> Result<Vec<TimingRow>> {
    if records.is_empty() {
        return Err(Error::EmptyInput("benchmark records"));
    }
    let mut groups: Vec<((Method, u32), Vec<f64>)> = Vec::new();
    for r in records {
        let key = (r.method, r.digits);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, v)) => v.push(r.seconds),
            None => groups.push((key, vec![r.seconds])),
        }
    }
    Ok(groups
        .into_iter()
        .map(|((method, digits), mut s)| {
            s.sort_by(f64::total_cmp);
            TimingRow {
                method,
                digits,
                samples: s.len(),
                median: median(&s),
                p95: percentile(&s, 0.95),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use sphconv_core::ErrorClass;

    fn small_spec() -> GridSpec {
        let mut spec = GridSpec::new(
            vec![2, 3],
            AlphaGrid::new(0.5, 2.5, 3).unwrap(),
            vec![Method::Gegenbauer, Method::Method3],
        );
        spec.timing = Timing::single();
        spec
    }

    #[test]
    fn alpha_grid_is_inclusive() {
        let g = AlphaGrid::new(0.2, PI - 0.2, 12).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 12);
        assert_eq!(p[0], 0.2);
        assert_eq!(p[11], PI - 0.2);
        assert!(p.windows(2).all(|w| w[1] > w[0]));
        let d = AlphaGrid::default_grid();
        assert_eq!((d.count(), d.start()), (60, 0.1));
    }

    #[test]
    fn alpha_grid_rejects_bad_ranges() {
        assert!(matches!(
            AlphaGrid::new(0.1, 1.0, 1),
            Err(Error::Dimension { .. })
        ));
        assert!(AlphaGrid::new(1.0, 0.5, 4).is_err());
        assert!(AlphaGrid::new(0.0, 1.0, 4).is_err());
        assert!(AlphaGrid::new(0.1, PI, 4).is_err());
    }

    #[test]
    fn default_reference_switches_at_thirty() {
        assert_eq!(Reference::default_for(30), Reference::Oracle2d);
        assert_eq!(Reference::default_for(31), Reference::Method6);
        assert_eq!("m6".parse::<Reference>().unwrap(), Reference::Method6);
        assert!("simpson".parse::<Reference>().is_err());
    }

    #[test]
    fn runs_cells_in_order() {
        let spec = small_spec();
        let records = run_grid(&spec).unwrap();
        assert_eq!(records.len(), spec.cell_count());
        assert_eq!(records.len(), 12);
        assert_eq!((records[0].n, records[0].method), (2, Method::Gegenbauer));
        assert_eq!(records[1].method, Method::Method3);
        assert_eq!(records[1].digits, 60);
        for r in &records {
            assert!(r.abs_error() < 1e-8, "{r:?}");
        }
    }

    #[test]
    fn failures_become_records() {
        let mut spec = small_spec();
        spec.n_values = vec![20];
        spec.methods = vec![Method::Method2];
        spec.precisions = vec![MonomialPrecision::Digits(16), MonomialPrecision::Digits(30)];
        spec.reference = Reference::Method6;
        let records = run_grid(&spec).unwrap();
        assert_eq!(records.len(), 6);
        assert!(records
            .iter()
            .all(|r| r.failure() == Some(ErrorClass::PrecisionFailure)));
    }

    #[test]
    fn invalid_specs_are_errors() {
        let mut spec = small_spec();
        spec.n_values.clear();
        assert!(matches!(run_grid(&spec), Err(Error::EmptyInput(_))));
        let mut spec = small_spec();
        spec.methods.clear();
        assert!(run_grid(&spec).is_err());
        let mut spec = small_spec();
        spec.n_values = vec![0];
        assert!(matches!(run_grid(&spec), Err(Error::InvalidProblem(_))));
        let mut spec = small_spec();
        spec.timing.repetitions = 0;
        assert!(run_grid(&spec).is_err());
        let mut spec = small_spec();
        spec.precisions = vec![MonomialPrecision::Digits(4)];
        assert!(matches!(run_grid(&spec), Err(Error::Domain(_))));
    }

    #[test]
    fn summary_groups_by_method_and_digits() {
        let mut records = run_grid(&small_spec()).unwrap();
        for (i, r) in records.iter_mut().enumerate() {
            r.seconds = i as f64;
        }
        let rows = timing_summary(&records).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].method, Method::Gegenbauer);
        assert_eq!(rows[0].samples, 6);
        // Gegenbauer rows sit at even positions 0..=10
        assert_eq!(rows[0].median, 5.0);
        assert_eq!(rows[0].p95, 10.0);
        assert!(matches!(timing_summary(&[]), Err(Error::EmptyInput(_))));
    }
}
