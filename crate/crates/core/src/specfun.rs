//! Special functions consumed by the evaluators: Legendre and associated
//! Legendre families, Gegenbauer C^(3/2), spherical Bessel j_l, the
//! complementary cosine integral, harmonic numbers and Γ(n + 3/2).
//!
//! Every family is returned whole, indexed by order, because every method
//! consumes a run of consecutive orders at one argument.

use std::f64::consts::PI;
use std::ops::Index;

use num_complex::Complex64;

use crate::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// One function family evaluated at a fixed argument; `values[l]` is order `l`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolySequence {
    values: Vec<f64>,
}

impl PolySequence {
    fn new(values: Vec<f64>) -> Self {
        debug_assert!(!values.is_empty());
        PolySequence { values }
    }

    pub fn order_max(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.values
    }
}

impl Index<usize> for PolySequence {
    type Output = f64;
    fn index(&self, l: usize) -> &f64 {
        &self.values[l]
    }
}

fn check_unit_interval(x: f64, closed: bool) -> Result<()> {
    let inside = if closed {
        x.abs() <= 1.0
    } else {
        x.abs() < 1.0
    };
    if inside {
        Ok(())
    } else {
        let bracket = if closed { "[-1, 1]" } else { "(-1, 1)" };
        Err(Error::Domain(format!("argument {x} outside {bracket}")))
    }
}

fn legendre_values(x: f64, l_max: usize) -> Vec<f64> {
    let mut p = Vec::with_capacity(l_max + 1);
    p.push(1.0);
    if l_max >= 1 {
        p.push(x);
    }
    for l in 1..l_max {
        let lf = l as f64;
        let next = ((2.0 * lf + 1.0) * x * p[l] - lf * p[l - 1]) / (lf + 1.0);
        p.push(next);
    }
    p
}

/// P'_l from (2l+1) P_l = P'_{l+1} − P'_{l−1}; needs P up to `l_max − 1`.
fn legendre_derivative_values(p: &[f64], l_max: usize) -> Vec<f64> {
    let mut d = Vec::with_capacity(l_max + 1);
    d.push(0.0);
    if l_max >= 1 {
        d.push(1.0);
    }
    for l in 1..l_max {
        d.push(d[l - 1] + (2 * l + 1) as f64 * p[l]);
    }
    d
}

/// P_l(x) for l = 0..=l_max by the upward three-term recurrence.
pub fn legendre_all(x: f64, l_max: usize) -> Result<PolySequence> {
    check_unit_interval(x, true)?;
    Ok(PolySequence::new(legendre_values(x, l_max)))
}

/// P'_l(x) for l = 0..=l_max. Rejects the endpoints; see [`gegenbauer32_all`]
/// for a family that is defined there.
pub fn legendre_deriv_all(x: f64, l_max: usize) -> Result<PolySequence> {
    check_unit_interval(x, false)?;
    let p = legendre_values(x, l_max);
    Ok(PolySequence::new(legendre_derivative_values(&p, l_max)))
}

/// P^1_k(cos α) = −sin α · P'_k(cos α), Condon–Shortley phase.
pub fn assoc_legendre1_all(cos_alpha: f64, sin_alpha: f64, l_max: usize) -> Result<PolySequence> {
    if sin_alpha.is_nan() || sin_alpha <= 0.0 {
        return Err(Error::DegenerateAngle(sin_alpha));
    }
    let norm = cos_alpha * cos_alpha + sin_alpha * sin_alpha;
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::Domain(format!(
            "cos^2 + sin^2 = {norm} is not 1 within 1e-12"
        )));
    }
    let d = legendre_deriv_all(cos_alpha, l_max)?;
    Ok(PolySequence::new(
        d.values.iter().map(|v| -sin_alpha * v).collect(),
    ))
}

/// C_k^(3/2)(x) = P'_{k+1}(x) for k = 0..=m_max, including the endpoints
/// where P'_l(±1) = (±1)^(l+1) l(l+1)/2.
pub fn gegenbauer32_all(x: f64, m_max: usize) -> Result<PolySequence> {
    check_unit_interval(x, true)?;
    if x.abs() == 1.0 {
        let values = (0..=m_max)
            .map(|k| {
                let l = (k + 1) as f64;
                let sign = if x < 0.0 && k % 2 == 1 { -1.0 } else { 1.0 };
                sign * l * (l + 1.0) / 2.0
            })
            .collect();
        return Ok(PolySequence::new(values));
    }
    let p = legendre_values(x, m_max + 1);
    let d = legendre_derivative_values(&p, m_max + 1);
    Ok(PolySequence::new(d[1..].to_vec()))
}

const RESCALE_ABOVE: f64 = 1e200;

/// j_l(x) for l = 0..=l_max by Miller's downward recurrence.
///
/// The recurrence starts past both `l_max` and `x`, so the minimal solution
/// dominates by the time it reaches the orders we keep. The trial sequence is
/// normalised against whichever of j_0 = sin x / x and
/// j_1 = sin x / x² − cos x / x is larger in magnitude; at x = Nπ, j_0 vanishes
/// and j_1 takes over.
pub fn spherical_bessel_all(x: f64, l_max: usize) -> Result<PolySequence> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "spherical Bessel argument {x} must be positive"
        )));
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    if l_max == 0 {
        return Ok(PolySequence::new(vec![j0]));
    }

    let margin = (15.0 + 10.0 * x.cbrt()).ceil() as usize;
    let start = l_max.max(x.ceil() as usize) + margin;

    let mut trial = vec![0.0; l_max + 1];
    let mut upper = 0.0; // f_{l+1}
    let mut current = 1e-280; // f_l
    for l in (1..=start).rev() {
        if l <= l_max {
            trial[l] = current;
        }
        let lower = (2 * l + 1) as f64 / x * current - upper;
        upper = current;
        current = lower;
        if current.abs() > RESCALE_ABOVE {
            current /= RESCALE_ABOVE;
            upper /= RESCALE_ABOVE;
            for v in trial.iter_mut().skip(l.min(l_max + 1)) {
                *v /= RESCALE_ABOVE;
            }
        }
    }
    trial[0] = current;

    let scale = if j0.abs() >= j1.abs() {
        j0 / trial[0]
    } else {
        j1 / trial[1]
    };
    Ok(PolySequence::new(
        trial.into_iter().map(|v| v * scale).collect(),
    ))
}

const CIN_SERIES_MAX: f64 = 4.0;

/// Complementary cosine integral Cin(z) = ∫_0^z (1 − cos t)/t dt.
///
/// Power series for z ≤ 4, otherwise γ + ln z − Ci(z) with Ci from the
/// continued fraction of E1(iz). Cin is even, so negative z is reflected.
pub fn cin(z: f64) -> f64 {
    let z = z.abs();
    if z == 0.0 {
        return 0.0;
    }
    if z <= CIN_SERIES_MAX {
        cin_series(z)
    } else {
        EULER_GAMMA + z.ln() - cosine_integral_cf(z)
    }
}

fn cin_series(z: f64) -> f64 {
    let z2 = z * z;
    let mut power = 1.0; // z^{2k}/(2k)!
    let mut sum = 0.0;
    for k in 1..200 {
        let kk = 2.0 * k as f64;
        power *= z2 / ((kk - 1.0) * kk);
        let term = power / kk;
        sum += if k % 2 == 1 { term } else { -term };
        if term < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// Ci(x) for x > 2 by modified Lentz evaluation of the E1(ix) continued fraction.
fn cosine_integral_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    let (s, co) = x.sin_cos();
    let h = Complex64::new(co, -s) * h;
    -h.re
}

/// Si(x) companion of the same continued fraction, used only to cross-check it.
#[cfg(test)]
fn sine_integral_cf(x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    let mut b = Complex64::new(1.0, x);
    let mut c = Complex64::new(1.0 / TINY, 0.0);
    let mut d = b.inv();
    let mut h = d;
    for i in 2..10_000 {
        let a = -(((i - 1) * (i - 1)) as f64);
        b += 2.0;
        d = (d * a + b).inv();
        c = b + c.inv() * a;
        let del = c * d;
        h *= del;
        if (del.re - 1.0).abs() + del.im.abs() < 1e-16 {
            break;
        }
    }
    let (s, co) = x.sin_cos();
    std::f64::consts::FRAC_PI_2 + (Complex64::new(co, -s) * h).im
}

/// H_k = Σ_{i=1..k} 1/i, with H_0 = 0.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

/// H_0..=H_k in one pass.
pub fn harmonic_all(k: usize) -> Vec<f64> {
    let mut h = Vec::with_capacity(k + 1);
    let mut acc = 0.0;
    h.push(0.0);
    for i in 1..=k {
        acc += 1.0 / i as f64;
        h.push(acc);
    }
    h
}

/// Γ(n + 3/2) = (√π / 2) · Π_{i=1..n} (i + 1/2).
pub fn gamma_half_integer(n: usize) -> f64 {
    let mut g = PI.sqrt() / 2.0;
    for i in 1..=n {
        g *= i as f64 + 0.5;
    }
    g
}
