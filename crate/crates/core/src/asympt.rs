//! Large-N asymptotics. I ≈ 4π/sin²α · (L + C(α) − ln 2), with
//! L = γ + ln(Nπ) + ln 2 and C(α) = ln sin α + cos α ln tan(α/2).
//! The same value splits into two pole terms, ½K(α) + ½K(π − α).

use std::f64::consts::{LN_2, PI};
use std::time::Instant;

use crate::hiprec::DOUBLE_DIGITS;
use crate::problem::{Method, MethodResult, Problem};
use crate::specfun::{assoc_legendre1_all, harmonic, harmonic_all, EULER_GAMMA};
use crate::{Error, Result};

/// The pieces of the asymptotic estimate; `value = envelope · (leading_log + remainder)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticBreakdown {
    /// L = γ + ln(Nπ) + ln 2.
    pub leading_log: f64,
    /// C(α) − ln 2.
    pub remainder: f64,
    /// 4π / sin²α.
    pub envelope: f64,
    pub value: f64,
}

/// L = γ + ln(nπ) + ln 2.
pub fn leading_log(n: u32) -> f64 {
    EULER_GAMMA + (n as f64 * PI).ln() + LN_2
}

pub fn asymptotic_i(problem: &Problem) -> AsymptoticBreakdown {
    let alpha = problem.alpha();
    let s = alpha.sin();
    let leading_log = leading_log(problem.n());
    let remainder = remainder_closed_form(alpha) - LN_2;
    let envelope = 4.0 * PI / (s * s);
    AsymptoticBreakdown {
        leading_log,
        remainder,
        envelope,
        value: envelope * (leading_log + remainder),
    }
}

pub fn eval_asymptotic(problem: &Problem) -> Result<MethodResult> {
    let start = Instant::now();
    let value = asymptotic_i(problem).value;
    let mut result = MethodResult::new(value, Method::Asymptotic, 0, DOUBLE_DIGITS)?;
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// C(α) = ln sin α + cos α · ln tan(α/2).
pub fn remainder_closed_form(alpha: f64) -> f64 {
    alpha.sin().ln() + alpha.cos() * (0.5 * alpha).tan().ln()
}

/// Smallest accepted `j_max` of [`remainder_series`].
pub const MIN_SERIES_TERMS: usize = 100;

/// ln 2 + sin α Σ_{j=0}^{j_max} (H²_(2j+2) − H²_(2j)) P¹_(2j+1)(cos α).
///
/// The partial sums oscillate with an amplitude that decays only slowly, so
/// the result is their sin²-weighted mean over the last half of the range.
pub fn remainder_series(alpha: f64, j_max: usize) -> Result<f64> {
    if j_max < MIN_SERIES_TERMS {
        return Err(Error::Dimension {
            got: j_max,
            min: MIN_SERIES_TERMS,
        });
    }
    if !(alpha > 0.0 && alpha < PI) {
        return Err(Error::Domain(format!("alpha = {alpha} outside (0, pi)")));
    }
    let (s, c) = alpha.sin_cos();
    let p1 = assoc_legendre1_all(c, s, 2 * j_max + 1)?;
    let h = harmonic_all(2 * j_max + 2);

    let window = j_max / 2;
    let first = j_max + 1 - window;
    let mut partial = LN_2;
    let mut weighted = 0.0;
    let mut total_weight = 0.0;
    for j in 0..=j_max {
        let dh = h[2 * j + 2] * h[2 * j + 2] - h[2 * j] * h[2 * j];
        partial += s * dh * p1[2 * j + 1];
        if j >= first {
            let i = (j - first) as f64;
            let w = (PI * (i + 0.5) / window as f64).sin().powi(2);
            weighted += w * partial;
            total_weight += w;
        }
    }
    Ok(weighted / total_weight)
}

/// K(α) = 4π/(1 − cos α) · (L + ln sin²(α/2)).
pub fn pole_term(alpha: f64, n: u32) -> f64 {
    let half = (0.5 * alpha).sin();
    let s2 = half * half;
    4.0 * PI / (2.0 * s2) * (leading_log(n) + s2.ln())
}

/// (4m+3)/((2m+1)(2m+2)) = H_(2m+2) − H_(2m).
pub fn harmonic_limit_coeff(m: usize) -> f64 {
    let mf = m as f64;
    let v = (4.0 * mf + 3.0) / ((2.0 * mf + 1.0) * (2.0 * mf + 2.0));
    let upper = harmonic(2 * m + 2);
    debug_assert!((v - (upper - harmonic(2 * m))).abs() <= 1e-14 * upper);
    v
}
