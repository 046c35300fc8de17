//! Methods 4 and 5: even-Legendre coefficients of the kernel from the
//! Galerkin tridiagonal system and from the Volterra forward recurrence.
//!
//! Both start from (1 − t²) f_N(t) = 1 − (−1)^N cos(At), whose Legendre
//! projections are spherical Bessel values.

use std::time::Instant;

use crate::hiprec::DOUBLE_DIGITS;
use crate::problem::{funk_hecke_sum, Method, MethodResult, Problem, Provenance, SpectralCoeffs};
use crate::specfun::{cin, spherical_bessel_all};
use crate::{Error, Result};

/// (A_l, B_l, C_l) with t² P_l = A_l P_{l+2} + B_l P_l + C_l P_{l−2}.
pub fn three_term_coeffs(l: usize) -> (f64, f64, f64) {
    let l = l as f64;
    let a = (l + 1.0) * (l + 2.0) / ((2.0 * l + 1.0) * (2.0 * l + 3.0));
    let b = (2.0 * l * l + 2.0 * l - 1.0) / ((2.0 * l - 1.0) * (2.0 * l + 3.0));
    let c = l * (l - 1.0) / ((2.0 * l - 1.0) * (2.0 * l + 1.0));
    (a, b, c)
}

/// Symmetric tridiagonal system; `off[i]` couples rows i and i + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    diag: Vec<f64>,
    off: Vec<f64>,
    rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(diag: Vec<f64>, off: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        if diag.is_empty() {
            return Err(Error::EmptyInput("tridiagonal system"));
        }
        if off.len() + 1 != diag.len() || rhs.len() != diag.len() {
            return Err(Error::Domain(format!(
                "inconsistent lengths: diag {}, off {}, rhs {}",
                diag.len(),
                off.len(),
                rhs.len()
            )));
        }
        Ok(TridiagonalSystem { diag, off, rhs })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    pub fn rhs(&self) -> &[f64] {
        &self.rhs
    }

    /// Unpivoted LDLᵀ (Thomas) solve. A pivot that is not positive means the
    /// matrix is not SPD and becomes [`Error::Positivity`].
    pub fn solve(&self) -> Result<Vec<f64>> {
        let n = self.dim();
        let mut d = Vec::with_capacity(n);
        let mut l = vec![0.0; n];
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let (pivot, yi) = if i == 0 {
                (self.diag[0], self.rhs[0])
            } else {
                l[i] = self.off[i - 1] / d[i - 1];
                (
                    self.diag[i] - l[i] * self.off[i - 1],
                    self.rhs[i] - l[i] * y[i - 1],
                )
            };
            if pivot.is_nan() || pivot <= 0.0 {
                return Err(Error::Positivity { row: i, pivot });
            }
            d.push(pivot);
            y.push(yi);
        }
        let mut x = vec![0.0; n];
        x[n - 1] = y[n - 1] / d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = y[i] / d[i] - l[i + 1] * x[i + 1];
        }
        Ok(x)
    }

    /// G·x, for residual checks.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }
}

/// Smallest accepted truncation: ceil(A/2) + 20.
pub fn min_dim(problem: &Problem) -> usize {
    (problem.a() / 2.0).ceil() as usize + 20
}

/// ceil(A/2) + 20 + ceil(0.75·digits) + ceil(4 A^(1/3)).
pub fn default_dim(problem: &Problem, target_digits: u32) -> usize {
    let a = problem.a();
    min_dim(problem)
        + (0.75 * target_digits as f64).ceil() as usize
        + (4.0 * a.cbrt()).ceil() as usize
}

/// G_ij = ∫(1 − t²) P_2i P_2j dt and b_i = 2δ_i0 − 2(−1)^(N+i) j_2i(A), for
/// i, j < dim.
pub fn build_galerkin(problem: &Problem, dim: usize) -> Result<TridiagonalSystem> {
    let min = min_dim(problem);
    if dim < min {
        return Err(Error::Dimension { got: dim, min });
    }
    let diag = (0..dim)
        .map(|i| {
            let (_, b, _) = three_term_coeffs(2 * i);
            (1.0 - b) * 2.0 / (4 * i + 1) as f64
        })
        .collect();
    let off = (0..dim - 1)
        .map(|i| {
            let (_, _, c) = three_term_coeffs(2 * i + 2);
            -c * 2.0 / (4 * i + 1) as f64
        })
        .collect();
    let j = spherical_bessel_all(problem.a(), 2 * dim)?;
    let rhs = (0..dim)
        .map(|i| {
            let sign = if i % 2 == 0 {
                problem.parity()
            } else {
                -problem.parity()
            };
            let delta = if i == 0 { 2.0 } else { 0.0 };
            delta - 2.0 * sign * j[2 * i]
        })
        .collect();
    TridiagonalSystem::new(diag, off, rhs)
}

pub fn solve_method_4(problem: &Problem, dim: usize) -> Result<SpectralCoeffs> {
    let system = build_galerkin(problem, dim)?;
    SpectralCoeffs::new(system.solve()?, Provenance::Galerkin)
}

/// T_1(2j) = −2A² (−1)^(N+j) j_2j(A).
fn volterra_t1(problem: &Problem, j: usize, j2j: f64) -> f64 {
    let a = problem.a();
    let sign = if j % 2 == 0 {
        problem.parity()
    } else {
        -problem.parity()
    };
    -2.0 * a * a * sign * j2j
}

/// The j = 0 right-hand side T_1(0) + S_R(0), which must vanish.
pub fn volterra_degenerate_residual(problem: &Problem) -> Result<f64> {
    let j = spherical_bessel_all(problem.a(), 0)?;
    Ok(volterra_t1(problem, 0, j[0]))
}

/// C_0 = ½ Cin(2A), then for j ≥ 1
/// C_2j = (4j+1)(T_1(2j) + S_R(j)) / (4(2j² − j)), with
/// S_R(j) = Σ_{m<j} (8m+2) γ_2m and γ_2m = 2 C_2m/(4m+1).
pub fn solve_method_5(problem: &Problem, j_max: usize) -> Result<SpectralCoeffs> {
    let min = min_dim(problem);
    if j_max < min {
        return Err(Error::Dimension { got: j_max, min });
    }
    let bessel = spherical_bessel_all(problem.a(), 2 * j_max)?;
    let mut c = Vec::with_capacity(j_max + 1);
    c.push(0.5 * cin(2.0 * problem.a()));
    let mut s_r = 0.0;
    for j in 1..=j_max {
        let m = j - 1;
        let gamma = 2.0 * c[m] / (4 * m + 1) as f64;
        s_r += (8 * m + 2) as f64 * gamma;
        let jf = j as f64;
        let t1 = volterra_t1(problem, j, bessel[2 * j]);
        c.push((4.0 * jf + 1.0) * (t1 + s_r) / (4.0 * (2.0 * jf * jf - jf)));
    }
    SpectralCoeffs::new(c, Provenance::Volterra)
}

pub fn eval_method_4(problem: &Problem) -> Result<MethodResult> {
    let dim = default_dim(problem, DOUBLE_DIGITS);
    let start = Instant::now();
    let coeffs = solve_method_4(problem, dim)?;
    let value = funk_hecke_sum(&coeffs, problem.alpha());
    let mut result = MethodResult::new(value, Method::Galerkin, dim, DOUBLE_DIGITS)?;
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

pub fn eval_method_5(problem: &Problem) -> Result<MethodResult> {
    let j_max = default_dim(problem, DOUBLE_DIGITS);
    let start = Instant::now();
    let coeffs = solve_method_5(problem, j_max)?;
    let value = funk_hecke_sum(&coeffs, problem.alpha());
    let mut result = MethodResult::new(value, Method::Volterra, j_max, DOUBLE_DIGITS)?;
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gegenbauer::{default_m_max, solve_method_6};
    use crate::oracle::{coeff_oracle, f_kernel};
    use crate::quadrature::GaussRule;
    use crate::specfun::legendre_all;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn m4(n: u32) -> SpectralCoeffs {
        let p = Problem::new(n, 1.0).unwrap();
        solve_method_4(&p, default_dim(&p, 16)).unwrap()
    }

    fn m5(n: u32) -> SpectralCoeffs {
        let p = Problem::new(n, 1.0).unwrap();
        solve_method_5(&p, default_dim(&p, 16)).unwrap()
    }

    #[test]
    fn three_term_identity() {
        for x in [-0.83, -0.2, 0.0, 0.37, 0.91] {
            let p = legendre_all(x, 22).unwrap();
            for l in 0..=20 {
                let (a, b, c) = three_term_coeffs(l);
                let lower = if l >= 2 { c * p[l - 2] } else { 0.0 };
                let rhs = a * p[l + 2] + b * p[l] + lower;
                let lhs = x * x * p[l];
                assert!(
                    (lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()),
                    "x={x} l={l}"
                );
            }
        }
    }

    #[test]
    fn rhs_for_even_harmonic() {
        for n in [2, 4, 10] {
            let p = Problem::new(n, 1.0).unwrap();
            let g = build_galerkin(&p, min_dim(&p)).unwrap();
            assert!((g.rhs()[0] - 2.0).abs() < 1e-14);
        }
    }

    #[test]
    fn matrix_entries_match_quadrature() {
        let rule = GaussRule::new(16);
        let p = Problem::new(3, 1.0).unwrap();
        let g = build_galerkin(&p, min_dim(&p)).unwrap();
        for i in 0..=10 {
            for j in 0..=10 {
                let q = rule.integrate(-1.0, 1.0, 8, |t| {
                    let pl = legendre_all(t, 20).unwrap();
                    (1.0 - t * t) * pl[2 * i] * pl[2 * j]
                });
                let entry = if i == j {
                    g.diag()[i]
                } else if j == i + 1 {
                    g.off()[i]
                } else if i == j + 1 {
                    g.off()[j]
                } else {
                    0.0
                };
                assert!((entry - q).abs() < 1e-12, "i={i} j={j}: {entry} vs {q}");
            }
        }
    }

    #[test]
    fn rhs_matches_quadrature() {
        let rule = GaussRule::new(16);
        for n in [1, 4, 7] {
            let p = Problem::new(n, 1.0).unwrap();
            let g = build_galerkin(&p, min_dim(&p)).unwrap();
            for i in 0..=10 {
                let q = rule.integrate(-1.0, 1.0, 32, |t| {
                    (1.0 - t * t) * f_kernel(t, &p) * legendre_all(t, 2 * i).unwrap()[2 * i]
                });
                assert!((g.rhs()[i] - q).abs() < 1e-12, "N={n} i={i}");
            }
        }
    }

    #[test]
    fn dimension_is_checked() {
        let p = Problem::new(10, 1.0).unwrap();
        let min = min_dim(&p);
        assert!(matches!(
            build_galerkin(&p, min - 1),
            Err(Error::Dimension { .. })
        ));
        assert!(matches!(
            solve_method_5(&p, min - 1),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn non_positive_pivot_is_reported() {
        let s = TridiagonalSystem::new(vec![1.0, 1.0], vec![2.0], vec![1.0, 1.0]).unwrap();
        assert!(matches!(s.solve(), Err(Error::Positivity { row: 1, .. })));
        assert!(TridiagonalSystem::new(vec![1.0], vec![1.0], vec![1.0]).is_err());
        assert!(TridiagonalSystem::new(vec![], vec![], vec![]).is_err());
    }

    #[test]
    fn thomas_solve_residual() {
        let p = Problem::new(12, 1.0).unwrap();
        let g = build_galerkin(&p, default_dim(&p, 16)).unwrap();
        let x = g.solve().unwrap();
        for (r, b) in g.apply(&x).iter().zip(g.rhs()) {
            assert!((r - b).abs() < 1e-14);
        }
    }

    #[test]
    fn leading_coefficient_is_half_cin() {
        for n in 1..=30 {
            let p = Problem::new(n, 1.0).unwrap();
            let want = 0.5 * cin(2.0 * p.a());
            assert!((m4(n).c()[0] - want).abs() < 1e-9, "N={n}");
            assert!((m5(n).c()[0] - want).abs() < 1e-9, "N={n}");
        }
    }

    #[test]
    fn degenerate_volterra_row_vanishes() {
        for n in 1..=20 {
            let p = Problem::new(n, 1.0).unwrap();
            assert!(volterra_degenerate_residual(&p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn galerkin_matches_projection_oracle() {
        for n in 1..=10 {
            let p = Problem::new(n, 1.0).unwrap();
            let c = m4(n);
            for j in 0..=20 {
                let want = coeff_oracle(&p, j).unwrap();
                assert!((c.c()[j] - want).abs() < 1e-9, "N={n} j={j}");
            }
        }
    }

    #[test]
    fn galerkin_residual_by_quadrature() {
        let rule = GaussRule::new(16);
        for n in [1, 2, 5, 10] {
            let p = Problem::new(n, 1.0).unwrap();
            let c = m4(n);
            let g = build_galerkin(&p, c.c().len()).unwrap();
            let jm = c.j_max();
            for i in 0..=10 {
                let q = rule.integrate(-1.0, 1.0, 64, |t| {
                    let pl = legendre_all(t, 2 * jm.max(i)).unwrap();
                    let series: f64 = (0..=jm).map(|j| c.c()[j] * pl[2 * j]).sum();
                    (1.0 - t * t) * series * pl[2 * i]
                });
                assert!((q - g.rhs()[i]).abs() < 1e-10, "N={n} i={i}");
            }
        }
    }

    #[test]
    fn spectral_methods_agree_entrywise() {
        for n in 1..=20 {
            let p = Problem::new(n, 1.0).unwrap();
            let c4 = m4(n);
            let c5 = m5(n);
            let c6 = solve_method_6(&p, default_m_max(&p)).unwrap();
            let len = c4.c().len().min(c5.c().len()).min(c6.c().len());
            for j in 0..len {
                assert!((c4.c()[j] - c5.c()[j]).abs() < 1e-10, "N={n} j={j} 4 vs 5");
                assert!((c4.c()[j] - c6.c()[j]).abs() < 1e-10, "N={n} j={j} 4 vs 6");
            }
        }
    }

    #[test]
    fn integrals_match_frozen_oracle_values() {
        let cases = [
            (1, 18.340_260_153_001_82),
            (5, 53.735_907_772_777_374),
            (20, 74.476_856_504_642_47),
        ];
        for (n, want) in cases {
            let p = Problem::new(n, 1.0).unwrap();
            let v4 = eval_method_4(&p).unwrap().value;
            let v5 = eval_method_5(&p).unwrap().value;
            assert!((v4 - want).abs() < 1e-8, "N={n} method 4: {v4}");
            assert!((v5 - want).abs() < 1e-8, "N={n} method 5: {v5}");
        }
    }

    #[test]
    fn galerkin_agrees_with_method_6_at_high_harmonic() {
        let p = Problem::new(100, 1.0).unwrap();
        let v4 = eval_method_4(&p).unwrap().value;
        let v6 = crate::gegenbauer::eval_method_6(&p).unwrap().value;
        assert!((v4 - v6).abs() < 1e-7);
    }

    proptest! {
        #[test]
        fn parity_and_positivity(n in 1u32..40, alpha in 1e-3f64..(PI - 1e-3)) {
            let p = Problem::new(n, alpha).unwrap();
            let q = crate::problem::symmetry_partner(&p);
            for eval in [eval_method_4, eval_method_5] {
                let a = eval(&p).unwrap().value;
                let b = eval(&q).unwrap().value;
                prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
                prop_assert!(a >= -1e-9);
            }
        }
    }
}
