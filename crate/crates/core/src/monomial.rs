//! Methods 1–3: evaluation through the Taylor expansion f_N(t) = Σ d_2k t^2k.
//!
//! Methods 1 and 2 evaluate the double sum Σ d_2k d_2j J_2k,2j by one
//! dynamic-programming recurrence over the coefficients of (1 + 2Cz + z²)^K,
//! with C = cos α. Method 1 scales row K by 1/(2K)! (the sinh K / K
//! generating function), Method 2 by 1/(4^K K!) (the Gaussian lift). Method 3
//! projects each monomial onto even Legendre polynomials and reuses the
//! Funk–Hecke sum.
//!
//! The terms reach e^A before cancelling, so all of this runs in a [`Field`]
//! chosen by a [`PrecisionContext`].

use std::f64::consts::{LN_10, PI};
use std::time::Instant;

use crate::hiprec::{
    required_digits, with_precision, Computation, Field, Mode, PrecisionContext, Real,
    DOUBLE_DIGITS,
};
use crate::problem::{funk_hecke_sum, Method, MethodResult, Problem, Provenance, SpectralCoeffs};
use crate::specfun::gamma_half_integer;
use crate::{Error, Result};

/// Taylor coefficients; `d[k]` is d_2k.
#[derive(Debug, Clone)]
pub struct TaylorCoeffs<T> {
    pub d: Vec<T>,
}

impl<T> TaylorCoeffs<T> {
    pub fn k_max(&self) -> usize {
        self.d.len() - 1
    }
}

/// b_m = (2m)! d_2m truncated at m = M; `b[m]` for m = 0..=M.
#[derive(Debug, Clone)]
pub struct ScaledTaylorCoeffs<T> {
    pub b: Vec<T>,
}

impl<T> ScaledTaylorCoeffs<T> {
    pub fn m_max(&self) -> usize {
        self.b.len() - 1
    }
}

/// Row K of the rotation-coefficient table, stored for a = 0..=K and
/// mirrored through a ↦ 2K − a.
#[derive(Debug, Clone)]
pub struct RotationRow<T> {
    k: usize,
    h: Vec<T>,
}

impl<T: Real> RotationRow<T> {
    pub fn first<F: Field<Num = T>>(field: &F) -> Self {
        RotationRow {
            k: 0,
            h: vec![field.one()],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry a for a = 0..=2K.
    pub fn get(&self, a: usize) -> T {
        assert!(
            a <= 2 * self.k,
            "rotation index {a} beyond 2K = {}",
            2 * self.k
        );
        if a <= self.k {
            self.h[a].clone()
        } else {
            self.h[2 * self.k - a].clone()
        }
    }

    /// Row K + 1 from [z^a] (1 + 2Cz + z²)^(K+1) = H(a−2) + H(a) + 2C H(a−1),
    /// divided by `divisor`.
    pub fn next(&self, two_c: &T, divisor: f64) -> Self {
        let k = self.k;
        let h = &self.h;
        let mut out = Vec::with_capacity(k + 2);
        for a in 0..=k {
            let mut v = h[a].clone();
            if a >= 1 {
                v = v + two_c.clone() * h[a - 1].clone();
            }
            if a >= 2 {
                v = v + h[a - 2].clone();
            }
            out.push(v / divisor);
        }
        // midpoint a = K + 1, where H(K + 1) = H(K − 1)
        let mid = if k >= 1 {
            h[k - 1].clone() * 2.0 + two_c.clone() * h[k].clone()
        } else {
            two_c.clone() * h[0].clone()
        };
        out.push(mid / divisor);
        RotationRow { k: k + 1, h: out }
    }
}

/// Row scaling of the rotation table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scaling {
    /// 1/(2K)!, weight 4π/(2K + 1).
    Factorial,
    /// 1/(4^K K!), weight 2π^(3/2)/Γ(K + 3/2).
    Gaussian,
}

impl Scaling {
    pub fn for_method(method: Method) -> Option<Self> {
        match method {
            Method::Method1 => Some(Scaling::Factorial),
            Method::Method2 => Some(Scaling::Gaussian),
            _ => None,
        }
    }

    pub fn method(self) -> Method {
        match self {
            Scaling::Factorial => Method::Method1,
            Scaling::Gaussian => Method::Method2,
        }
    }

    fn divisor(self, k: usize) -> f64 {
        match self {
            Scaling::Factorial => ((2 * k + 1) * (2 * k + 2)) as f64,
            Scaling::Gaussian => 4.0 * (k + 1) as f64,
        }
    }
}

/// d_2k = −(−1)^N Σ_{j=1..k} (−1)^j A^2j/(2j)! + (1 − (−1)^N), k = 0..=k_max.
pub fn taylor_coeffs_in<F: Field>(
    problem: &Problem,
    k_max: usize,
    field: &F,
) -> TaylorCoeffs<F::Num> {
    let a = problem.a_in(field);
    let a2 = a.clone() * a;
    let parity = problem.parity();
    let mut d = Vec::with_capacity(k_max + 1);
    let mut current = field.num(1.0 - parity);
    let mut term = field.one(); // A^2j/(2j)!
    d.push(current.clone());
    for j in 1..=k_max {
        term = term * a2.clone() / ((2 * j - 1) * (2 * j)) as f64;
        let sign = if j % 2 == 0 { parity } else { -parity };
        current = current - term.clone() * sign;
        d.push(current.clone());
    }
    TaylorCoeffs { d }
}

struct TaylorJob {
    problem: Problem,
    k_max: usize,
}

impl Computation for TaylorJob {
    type Output = Vec<f64>;
    fn run<F: Field>(&self, field: &F) -> Result<Vec<f64>> {
        Ok(taylor_coeffs_in(&self.problem, self.k_max, field)
            .d
            .iter()
            .map(Real::to_f64)
            .collect())
    }
}

/// [`taylor_coeffs_in`] run at `ctx` and lowered to doubles.
pub fn taylor_coeffs(
    problem: &Problem,
    k_max: usize,
    ctx: &PrecisionContext,
) -> Result<TaylorCoeffs<f64>> {
    Ok(TaylorCoeffs {
        d: with_precision(
            ctx,
            &TaylorJob {
                problem: *problem,
                k_max,
            },
        )?,
    })
}

/// Backward recurrence b_m = (b_{m+1} + (−1)^(N+m+1) A^(2m+2)) / ((2m+1)(2m+2)),
/// seeded with b_{M+1} = 0.
pub fn scaled_taylor_coeffs<F: Field>(
    problem: &Problem,
    m_max: usize,
    field: &F,
) -> ScaledTaylorCoeffs<F::Num> {
    let a = problem.a_in(field);
    let a2 = a.clone() * a;
    let mut powers = Vec::with_capacity(m_max + 1); // A^(2m+2)
    let mut p = a2.clone();
    for _ in 0..=m_max {
        powers.push(p.clone());
        p = p * a2.clone();
    }
    let mut b = vec![field.zero(); m_max + 1];
    let mut next = field.zero();
    for m in (0..=m_max).rev() {
        let odd = (problem.n() as usize + m + 1) % 2 == 1;
        let forcing = if odd {
            -powers[m].clone()
        } else {
            powers[m].clone()
        };
        next = (next + forcing) / ((2 * m + 1) * (2 * m + 2)) as f64;
        b[m] = next.clone();
    }
    ScaledTaylorCoeffs { b }
}

/// Truncation M of the Taylor series: walk log(A^2j/(2j)!) upward and stop at
/// the first j past the peak (2j > A) where it falls below 10^(−target);
/// M = j − 2, floored at 0.
pub fn truncation_m(problem: &Problem, target_digits: u32) -> usize {
    let a = problem.a();
    let log_a2 = 2.0 * a.ln();
    let threshold = -(target_digits as f64) * LN_10;
    let mut log_t = 0.0;
    let mut j = 0usize;
    loop {
        j += 1;
        let jj = 2 * j;
        log_t += log_a2 - ((jj - 1) as f64).ln() - (jj as f64).ln();
        if log_t < threshold && jj as f64 > a {
            return j.saturating_sub(2);
        }
    }
}

/// Hard cap on M: max(100, 2A + 5·target).
pub fn truncation_cap(problem: &Problem, target_digits: u32) -> usize {
    let cap = 2.0 * problem.a() + 5.0 * target_digits as f64;
    (cap.ceil() as usize).max(100)
}

fn checked_truncation(problem: &Problem, target_digits: u32) -> Result<usize> {
    let m = truncation_m(problem, target_digits);
    let cap = truncation_cap(problem, target_digits);
    if m > cap {
        return Err(Error::TruncationFailure { order: m, cap });
    }
    Ok(m)
}

/// I = Σ_K w_K Σ_m b_m b_(K−m) H_K(2m) over K = 0..=2M, pairing m with K − m.
pub fn rotation_sum<F: Field>(
    problem: &Problem,
    m_max: usize,
    scaling: Scaling,
    field: &F,
) -> F::Num {
    let b = scaled_taylor_coeffs(problem, m_max, field).b;
    let two_c = field.num(problem.alpha()).cos() * 2.0;
    let mut row = RotationRow::first(field);
    let four_pi = field.pi() * 4.0;
    let mut weight = four_pi.clone();
    let mut total = field.zero();
    for k in 0..=2 * m_max {
        let mut inner = field.zero();
        for m in k.saturating_sub(m_max)..=k / 2 {
            let term = b[m].clone() * b[k - m].clone() * row.get(2 * m);
            inner = if m < k - m {
                inner + term * 2.0
            } else {
                inner + term
            };
        }
        let w = match scaling {
            Scaling::Factorial => four_pi.clone() / (2 * k + 1) as f64,
            Scaling::Gaussian => weight.clone(),
        };
        total = total + inner * w;
        if k < 2 * m_max {
            row = row.next(&two_c, scaling.divisor(k));
        }
        weight = weight / (k as f64 + 1.5);
    }
    total
}

struct RotationJob {
    problem: Problem,
    m_max: usize,
    scaling: Scaling,
}

impl Computation for RotationJob {
    type Output = f64;
    fn run<F: Field>(&self, field: &F) -> Result<f64> {
        Ok(rotation_sum(&self.problem, self.m_max, self.scaling, field).to_f64())
    }
}

/// The full truncation + recurrence + DP pipeline at `ctx`, without the
/// certified-digits gate. Returns the value and M.
pub fn rotation_pipeline(
    problem: &Problem,
    ctx: &PrecisionContext,
    scaling: Scaling,
) -> Result<(f64, usize)> {
    let m = checked_truncation(problem, DOUBLE_DIGITS)?;
    let value = with_precision(
        ctx,
        &RotationJob {
            problem: *problem,
            m_max: m,
            scaling,
        },
    )?;
    Ok((value, m))
}

fn certify(problem: &Problem, ctx: &PrecisionContext) -> Result<()> {
    if ctx.mode() == Mode::BigFloat {
        let need = required_digits(problem.n(), DOUBLE_DIGITS);
        if ctx.decimal_digits() < need {
            return Err(Error::PrecisionFailure(format!(
                "{} digits requested but N = {} needs at least {need}",
                ctx.decimal_digits(),
                problem.n()
            )));
        }
    }
    Ok(())
}

/// Method 1 or 2. A big-float `ctx` must carry at least
/// `required_digits(N, 16)` digits. Native doubles always run but overflow
/// or lose everything to cancellation beyond N ≈ 6.
pub fn eval_method_1_2(
    problem: &Problem,
    ctx: &PrecisionContext,
    scaling: Scaling,
) -> Result<MethodResult> {
    certify(problem, ctx)?;
    let start = Instant::now();
    let (value, m) = rotation_pipeline(problem, ctx, scaling)?;
    let mut result = MethodResult::new(value, scaling.method(), m, ctx.decimal_digits())?;
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// J_2k,2j(α) = ∫ (u·ẑ)^2k (u·â)^2j dΩ from the sinh K / K generating function:
/// 4π (2k)!(2j)!/(2s+1)! Σ_r s!/(p! q! r!) (2 cos α)^r, with s = k + j,
/// r even, p = k − r/2, q = j − r/2.
pub fn moment_j(k: usize, j: usize, cos_alpha: f64) -> f64 {
    let s = k + j;
    let fact = |n: usize| (1..=n).fold(1.0f64, |acc, i| acc * i as f64);
    let prefactor = 4.0 * PI * fact(2 * k) * fact(2 * j) / fact(2 * s + 1);
    let sum: f64 = (0..=2 * k.min(j))
        .step_by(2)
        .map(|r| {
            let p = k - r / 2;
            let q = j - r / 2;
            fact(s) / (fact(p) * fact(q) * fact(r)) * (2.0 * cos_alpha).powi(r as i32)
        })
        .sum();
    prefactor * sum
}

/// The same moment from the Gaussian lift J = 2M/Γ(s + 3/2), with
/// M = π^(3/2)(2k)!(2j)! Σ_r (C/2)^r/(r! 4^(p+q) p! q!).
pub fn moment_j_gaussian(k: usize, j: usize, cos_alpha: f64) -> f64 {
    let s = k + j;
    let fact = |n: usize| (1..=n).fold(1.0f64, |acc, i| acc * i as f64);
    let sum: f64 = (0..=2 * k.min(j))
        .step_by(2)
        .map(|r| {
            let p = k - r / 2;
            let q = j - r / 2;
            (0.5 * cos_alpha).powi(r as i32)
                / (fact(r) * 4f64.powi((p + q) as i32) * fact(p) * fact(q))
        })
        .sum();
    let m = PI.powf(1.5) * fact(2 * k) * fact(2 * j) * sum;
    2.0 * m / gamma_half_integer(s)
}

/// T_k,m = (4m+1)(2k)! / (2^(k−m) (k−m)! (2k+2m+1)!!) for m = 0..=k, so that
/// t^2k = Σ_m T_k,m P_2m(t). Built down from T_k,k = (4k+1)(2k)!/(4k+1)!!.
pub fn legendre_projection_row<F: Field>(k: usize, field: &F) -> Vec<F::Num> {
    let mut u = field.one(); // (2k)!/(4k+1)!! at k = 0
    for i in 1..=k {
        u = u * ((2 * i - 1) * (2 * i)) as f64 / ((4 * i - 1) * (4 * i + 1)) as f64;
    }
    let mut row = vec![field.zero(); k + 1];
    for m in (0..=k).rev() {
        row[m] = u.clone() * (4 * m + 1) as f64;
        if m > 0 {
            // U_k,m−1 = U_k,m · (2k + 2m + 1) / (2(k − m + 1))
            u = u * (2 * k + 2 * m + 1) as f64 / (2 * (k - m + 1)) as f64;
        }
    }
    row
}

/// C_2m = Σ_{k≥m} d_2k T_k,m for m = 0..=j_max, with d truncated at k_max.
pub fn hybrid_coeffs_in<F: Field>(
    problem: &Problem,
    j_max: usize,
    k_max: usize,
    field: &F,
) -> Vec<F::Num> {
    let d = taylor_coeffs_in(problem, k_max, field).d;
    let mut c = vec![field.zero(); j_max + 1];
    for (k, dk) in d.iter().enumerate() {
        let row = legendre_projection_row(k, field);
        for (m, t) in row.into_iter().enumerate().take(j_max + 1) {
            c[m] = c[m].clone() + dk.clone() * t;
        }
    }
    c
}

struct HybridJob {
    problem: Problem,
    j_max: usize,
    k_max: usize,
}

impl Computation for HybridJob {
    type Output = Vec<f64>;
    fn run<F: Field>(&self, field: &F) -> Result<Vec<f64>> {
        Ok(
            hybrid_coeffs_in(&self.problem, self.j_max, self.k_max, field)
                .iter()
                .map(Real::to_f64)
                .collect(),
        )
    }
}

/// Taylor order used by Method 3: the truncation walk's stopping index.
pub fn method_3_k_max(problem: &Problem) -> Result<usize> {
    Ok(checked_truncation(problem, DOUBLE_DIGITS)? + 2)
}

/// Method 3 coefficients lowered to doubles.
pub fn solve_method_3(
    problem: &Problem,
    ctx: &PrecisionContext,
    j_max: usize,
) -> Result<SpectralCoeffs> {
    let k_max = method_3_k_max(problem)?;
    let c = with_precision(
        ctx,
        &HybridJob {
            problem: *problem,
            j_max,
            k_max,
        },
    )?;
    SpectralCoeffs::new(c, Provenance::HybridMonomial)
}

pub fn eval_method_3(
    problem: &Problem,
    ctx: &PrecisionContext,
    j_max: usize,
) -> Result<MethodResult> {
    certify(problem, ctx)?;
    let start = Instant::now();
    let coeffs = solve_method_3(problem, ctx, j_max)?;
    let value = funk_hecke_sum(&coeffs, problem.alpha());
    let mut result = MethodResult::new(value, Method::Method3, j_max, ctx.decimal_digits())?;
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

/// Method 3 at its default order j_max = k_max.
pub fn eval_method_3_default(problem: &Problem, ctx: &PrecisionContext) -> Result<MethodResult> {
    eval_method_3(problem, ctx, method_3_k_max(problem)?)
}
