//! The (N, α) problem, the method catalogue, shared result types and the
//! Funk–Hecke assembler that turns even-Legendre coefficients into I.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use crate::hiprec::Field;
use crate::specfun::legendre_all;
use crate::{Error, Result};

/// Smallest admissible distance of α from the poles.
pub const ALPHA_MARGIN: f64 = 1e-6;

/// A harmonic `n` and opening angle `alpha`; `a = nπ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Problem {
    n: u32,
    alpha: f64,
}

impl Problem {
    /// Accepts n ≥ 1 and α ∈ [1e-6, π − 1e-6]. At n = 0 the kernel vanishes
    /// and I = 0; that case is rejected rather than carried through every method.
    pub fn new(n: u32, alpha: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidProblem(
                "N must be >= 1 (at N = 0 the integrand vanishes and I = 0)".into(),
            ));
        }
        if !(ALPHA_MARGIN..=PI - ALPHA_MARGIN).contains(&alpha) {
            return Err(Error::InvalidProblem(format!(
                "alpha = {alpha} must lie in [{ALPHA_MARGIN:e}, pi - {ALPHA_MARGIN:e}]"
            )));
        }
        Ok(Problem { n, alpha })
    }

    /// As [`Problem::new`], for an `n` that arrives as a real number.
    pub fn from_real(n: f64, alpha: f64) -> Result<Self> {
        if !n.is_finite() || n.fract() != 0.0 {
            return Err(Error::InvalidProblem(format!("N = {n} must be an integer")));
        }
        if !(1.0..=u32::MAX as f64).contains(&n) {
            return Err(Error::InvalidProblem(format!("N = {n} must be >= 1")));
        }
        Problem::new(n as u32, alpha)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn a(&self) -> f64 {
        self.n as f64 * PI
    }

    /// `nπ` formed in the given arithmetic.
    pub fn a_in<F: Field>(&self, field: &F) -> F::Num {
        field.pi() * self.n as f64
    }

    pub fn cos_alpha(&self) -> f64 {
        self.alpha.cos()
    }

    pub fn sin_alpha(&self) -> f64 {
        self.alpha.sin()
    }

    /// (−1)^N.
    pub fn parity(&self) -> f64 {
        if self.n % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N={}, alpha={}", self.n, self.alpha)
    }
}

/// The same harmonic at the mirrored angle π − α.
pub fn symmetry_partner(problem: &Problem) -> Problem {
    Problem {
        n: problem.n,
        alpha: PI - problem.alpha,
    }
}

/// The seven evaluators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Method1,
    Method2,
    Method3,
    Galerkin,
    Volterra,
    Gegenbauer,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Method1,
        Method::Method2,
        Method::Method3,
        Method::Galerkin,
        Method::Volterra,
        Method::Gegenbauer,
        Method::Asymptotic,
    ];

    /// The six exact methods, without the asymptotic estimate.
    pub const EXACT: [Method; 6] = [
        Method::Method1,
        Method::Method2,
        Method::Method3,
        Method::Galerkin,
        Method::Volterra,
        Method::Gegenbauer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Method1 => "method1",
            Method::Method2 => "method2",
            Method::Method3 => "method3",
            Method::Galerkin => "galerkin",
            Method::Volterra => "volterra",
            Method::Gegenbauer => "gegenbauer",
            Method::Asymptotic => "asymptotic",
        }
    }

    /// 1..=6 for the exact methods.
    pub fn number(self) -> Option<u8> {
        Method::EXACT
            .iter()
            .position(|m| *m == self)
            .map(|i| i as u8 + 1)
    }

    /// Methods evaluated through big-float monomial sums.
    pub fn is_monomial(self) -> bool {
        matches!(self, Method::Method1 | Method::Method2 | Method::Method3)
    }

    pub fn is_spectral(self) -> bool {
        matches!(
            self,
            Method::Galerkin | Method::Volterra | Method::Gegenbauer
        )
    }

    pub fn valid_names() -> String {
        let names: Vec<&str> = Method::ALL.iter().map(|m| m.name()).collect();
        format!("{} (aliases m1..m6)", names.join(", "))
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        if let Some(m) = Method::ALL.iter().find(|m| m.name() == s) {
            return Ok(*m);
        }
        if let Some(k) = s.strip_prefix('m').and_then(|d| d.parse::<usize>().ok()) {
            if (1..=6).contains(&k) {
                return Ok(Method::EXACT[k - 1]);
            }
        }
        Err(Error::Domain(format!(
            "unknown method '{s}'; valid: {}",
            Method::valid_names()
        )))
    }
}

/// Which pipeline produced a coefficient vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Provenance {
    Galerkin,
    Volterra,
    Gegenbauer,
    HybridMonomial,
}

/// Truncated even-Legendre coefficients; `c[j]` is C_2j.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralCoeffs {
    c: Vec<f64>,
    provenance: Provenance,
}

impl SpectralCoeffs {
    pub fn new(c: Vec<f64>, provenance: Provenance) -> Result<Self> {
        if c.is_empty() {
            return Err(Error::EmptyInput("spectral coefficient vector"));
        }
        Ok(SpectralCoeffs { c, provenance })
    }

    pub fn c(&self) -> &[f64] {
        &self.c
    }

    pub fn j_max(&self) -> usize {
        self.c.len() - 1
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Whether the last stored term is negligible: |C_2J|/(4J+1) < 1e-14 · max |C|.
    pub fn tail_is_small(&self) -> bool {
        let j = self.j_max();
        let peak = self.c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        self.c[j].abs() / (4 * j + 1) as f64 <= 1e-14 * peak
    }

    /// The same coefficients followed by `extra` zeros.
    pub fn padded(&self, extra: usize) -> Self {
        let mut c = self.c.clone();
        c.resize(c.len() + extra, 0.0);
        SpectralCoeffs {
            c,
            provenance: self.provenance,
        }
    }
}

/// Value of I with the diagnostics of the run that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct MethodResult {
    pub value: f64,
    pub method: Method,
    pub truncation_order: usize,
    pub digits_used: u32,
    pub seconds: f64,
}

impl MethodResult {
    /// Refuses non-finite values, which would otherwise pass as a result.
    pub fn new(
        value: f64,
        method: Method,
        truncation_order: usize,
        digits_used: u32,
    ) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::PrecisionFailure(format!(
                "{method} produced a non-finite value"
            )));
        }
        Ok(MethodResult {
            value,
            method,
            truncation_order,
            digits_used,
            seconds: 0.0,
        })
    }
}

/// I = 4π Σ_j C_2j²/(4j+1) · P_2j(cos α), summed from the highest order down.
pub fn funk_hecke_sum(coeffs: &SpectralCoeffs, alpha: f64) -> f64 {
    let j_max = coeffs.j_max();
    let p = legendre_all(alpha.cos(), 2 * j_max).expect("cos alpha lies in [-1, 1]");
    let sum: f64 = (0..=j_max)
        .rev()
        .map(|j| {
            let c = coeffs.c[j];
            c * c / (4 * j + 1) as f64 * p[2 * j]
        })
        .sum();
    4.0 * PI * sum
}

/// Radiated power of harmonic N: 32 Gμ² / (π³ N²) · I.
pub fn power_spectrum(problem: &Problem, g_mu_sq: f64, i_value: f64) -> f64 {
    let n = problem.n() as f64;
    32.0 * g_mu_sq / (PI.powi(3) * n * n) * i_value
}
