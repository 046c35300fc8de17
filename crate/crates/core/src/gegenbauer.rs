//! Method 6: closed-form Gegenbauer C^(3/2) coefficients of the kernel and
//! the Legendre coefficients obtained from their tail sums.
//!
//! b_2m = −A (−1)^(N+m) j_(2m+1)(A) (4m+3)/((2m+1)(2m+2)) and
//! C_2j = (4j+1) Σ_{m≥j} b_2m, with Σ_m b_2m = C_0 = ½ Cin(2A).

use std::time::Instant;

use crate::hiprec::DOUBLE_DIGITS;
use crate::problem::{funk_hecke_sum, Method, MethodResult, Problem, Provenance, SpectralCoeffs};
use crate::specfun::{cin, spherical_bessel_all};
use crate::{Error, Result};

/// Gegenbauer coefficients; `b[m]` is b_2m.
#[derive(Debug, Clone, PartialEq)]
pub struct GegenbauerCoeffs {
    b: Vec<f64>,
}

impl GegenbauerCoeffs {
    pub fn b(&self) -> &[f64] {
        &self.b
    }

    pub fn m_max(&self) -> usize {
        self.b.len() - 1
    }

    /// R_j = Σ_{m=j}^{m_max} b_2m for every j, accumulated from m_max down.
    pub fn tails(&self) -> Vec<f64> {
        let mut tails = vec![0.0; self.b.len()];
        let mut acc = 0.0;
        for m in (0..self.b.len()).rev() {
            acc += self.b[m];
            tails[m] = acc;
        }
        tails
    }
}

/// Smallest truncation accepted: ceil(A/2) + 20.
pub fn min_m_max(problem: &Problem) -> usize {
    (problem.a() / 2.0).ceil() as usize + 20
}

/// Default truncation ceil(A/2) + 40 + ceil(4 A^(1/3)). The Bessel factors
/// leave their transition zone only after ~A^(1/3) orders past A.
pub fn default_m_max(problem: &Problem) -> usize {
    let a = problem.a();
    (a / 2.0).ceil() as usize + 40 + (4.0 * a.cbrt()).ceil() as usize
}

/// (4m+3)/((2m+1)(2m+2)), the rational factor of b_2m.
pub fn rational_factor(m: usize) -> f64 {
    let m = m as f64;
    (4.0 * m + 3.0) / ((2.0 * m + 1.0) * (2.0 * m + 2.0))
}

pub fn gegenbauer_coeffs(problem: &Problem, m_max: usize) -> Result<GegenbauerCoeffs> {
    let min = min_m_max(problem);
    if m_max < min {
        return Err(Error::Dimension { got: m_max, min });
    }
    let a = problem.a();
    let j = spherical_bessel_all(a, 2 * m_max + 1)?;
    let b = (0..=m_max)
        .map(|m| {
            let sign = if m % 2 == 0 {
                problem.parity()
            } else {
                -problem.parity()
            };
            -a * sign * j[2 * m + 1] * rational_factor(m)
        })
        .collect();
    Ok(GegenbauerCoeffs { b })
}

/// C_2j = (4j+1) R_j for j = 0..=m_max.
pub fn solve_method_6(problem: &Problem, m_max: usize) -> Result<SpectralCoeffs> {
    let g = gegenbauer_coeffs(problem, m_max)?;
    let c = g
        .tails()
        .into_iter()
        .enumerate()
        .map(|(j, r)| (4 * j + 1) as f64 * r)
        .collect();
    SpectralCoeffs::new(c, Provenance::Gegenbauer)
}

/// The C_0-anchored forward form (4j+1)(C_0 − Σ_{m<j} b_2m). It subtracts
/// nearly equal numbers once R_j is small, and exists to cross-check the tails.
pub fn anchored_forward_coeffs(problem: &Problem, m_max: usize) -> Result<Vec<f64>> {
    let g = gegenbauer_coeffs(problem, m_max)?;
    let c0 = 0.5 * cin(2.0 * problem.a());
    let mut partial = 0.0;
    let mut out = Vec::with_capacity(g.b.len());
    for (j, b) in g.b.iter().enumerate() {
        out.push((4 * j + 1) as f64 * (c0 - partial));
        partial += b;
    }
    Ok(out)
}

pub fn eval_method_6(problem: &Problem) -> Result<MethodResult> {
    eval_method_6_with(problem, default_m_max(problem))
}

pub fn eval_method_6_with(problem: &Problem, m_max: usize) -> Result<MethodResult> {
    let start = Instant::now();
    let coeffs = solve_method_6(problem, m_max)?;
    let value = funk_hecke_sum(&coeffs, problem.alpha());
    let mut result = MethodResult::new(value, Method::Gegenbauer, m_max, DOUBLE_DIGITS)?;
    result.seconds = start.elapsed().as_secs_f64();
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{coeff_oracle, f_kernel};
    use crate::quadrature::GaussRule;
    use crate::specfun::gegenbauer32_all;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn coefficient_sum_is_half_cin() {
        for n in 1..=50 {
            let p = Problem::new(n, 1.0).unwrap();
            let g = gegenbauer_coeffs(&p, default_m_max(&p)).unwrap();
            let sum: f64 = g.b().iter().rev().sum();
            let want = 0.5 * cin(2.0 * p.a());
            assert!((sum - want).abs() < 1e-10, "N={n}: {sum} vs {want}");
        }
    }

    #[test]
    fn leading_coefficient_approaches_harmonic_limit() {
        let p = Problem::new(1000, 1.0).unwrap();
        let g = gegenbauer_coeffs(&p, default_m_max(&p)).unwrap();
        assert!((g.b()[0] / 1.5 - 1.0).abs() < 5e-3, "b_0 = {}", g.b()[0]);
    }

    #[test]
    fn coefficients_match_weighted_projection() {
        let rule = GaussRule::new(16);
        for n in 1..=6 {
            let p = Problem::new(n, 1.0).unwrap();
            let g = gegenbauer_coeffs(&p, min_m_max(&p)).unwrap();
            for m in 0..=10 {
                let h = 2.0 * ((2 * m + 1) * (2 * m + 2)) as f64 / (4 * m + 3) as f64;
                let integral = rule.integrate(-1.0, 1.0, 64, |t| {
                    let c = gegenbauer32_all(t, 2 * m).unwrap()[2 * m];
                    f_kernel(t, &p) * c * (1.0 - t * t)
                });
                assert!((integral / h - g.b()[m]).abs() < 1e-10, "N={n} m={m}");
            }
        }
    }

    #[test]
    fn sign_pattern() {
        let p = Problem::new(7, 1.0).unwrap();
        let m_max = default_m_max(&p);
        let g = gegenbauer_coeffs(&p, m_max).unwrap();
        let j = spherical_bessel_all(p.a(), 2 * m_max + 1).unwrap();
        for m in 0..=m_max {
            let sign = if (7 + m) % 2 == 0 { 1.0 } else { -1.0 };
            let expected = -sign * j[2 * m + 1];
            if expected != 0.0 {
                assert_eq!(g.b()[m].signum(), expected.signum(), "m={m}");
            }
        }
    }

    #[test]
    fn decay_past_the_transition_zone() {
        for n in [1, 10, 100, 1000] {
            let p = Problem::new(n, 1.0).unwrap();
            let g = gegenbauer_coeffs(&p, default_m_max(&p)).unwrap();
            let a = p.a();
            let peak = g.b().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let threshold = a + 40f64.max(12.0 * a.cbrt());
            for (m, b) in g.b().iter().enumerate() {
                if (2 * m + 1) as f64 > threshold {
                    assert!(b.abs() < 1e-15 * peak, "N={n} m={m}: {b}");
                }
            }
        }
    }

    #[test]
    fn rejects_short_truncation() {
        let p = Problem::new(10, 1.0).unwrap();
        let min = min_m_max(&p);
        assert!(matches!(
            gegenbauer_coeffs(&p, min - 1),
            Err(Error::Dimension { .. })
        ));
        assert!(gegenbauer_coeffs(&p, min).is_ok());
    }

    #[test]
    fn leading_coefficient_is_half_cin() {
        for n in [1, 2, 9, 40, 100] {
            let p = Problem::new(n, 1.0).unwrap();
            let c = solve_method_6(&p, default_m_max(&p)).unwrap();
            assert!((c.c()[0] - 0.5 * cin(2.0 * p.a())).abs() < 1e-10, "N={n}");
            assert!(c.tail_is_small(), "N={n}");
            assert_eq!(c.provenance(), Provenance::Gegenbauer);
        }
    }

    #[test]
    fn default_truncation_clears_the_transition_zone() {
        for n in [300, 600, 1000] {
            let p = Problem::new(n, 1.0).unwrap();
            assert!(
                solve_method_6(&p, default_m_max(&p))
                    .unwrap()
                    .tail_is_small(),
                "N={n}"
            );
        }
    }

    #[test]
    fn coefficients_match_projection_oracle() {
        let p = Problem::new(4, 1.0).unwrap();
        let c = solve_method_6(&p, default_m_max(&p)).unwrap();
        for j in 0..=12 {
            let want = coeff_oracle(&p, j).unwrap();
            assert!(
                (c.c()[j] - want).abs() < 1e-10,
                "j={j}: {} vs {want}",
                c.c()[j]
            );
        }
    }

    #[test]
    fn downward_tails_match_anchored_forward_form() {
        for n in [50, 80, 100] {
            let p = Problem::new(n, 1.0).unwrap();
            let m_max = default_m_max(&p);
            let down = solve_method_6(&p, m_max).unwrap();
            let fwd = anchored_forward_coeffs(&p, m_max).unwrap();
            let centre = (p.a() / 2.0) as usize;
            for j in centre - 5..=centre + 5 {
                assert!((down.c()[j] - fwd[j]).abs() < 1e-9, "N={n} j={j}");
            }
        }
    }

    #[test]
    fn tails_decay_super_exponentially() {
        let p = Problem::new(30, 1.0).unwrap();
        let g = gegenbauer_coeffs(&p, default_m_max(&p)).unwrap();
        let tails = g.tails();
        let first = ((p.a() + 20.0) / 2.0).ceil() as usize;
        let mut last_ratio = f64::INFINITY;
        // the last two tails feel the truncation itself
        for j in first..tails.len() - 3 {
            if tails[j + 1].abs() < 1e-280 {
                break;
            }
            let ratio = (tails[j + 1] / tails[j]).abs();
            assert!(ratio < 1.0 && ratio < last_ratio, "j={j} ratio={ratio}");
            last_ratio = ratio;
        }
    }

    #[test]
    fn integral_matches_frozen_oracle_values() {
        let cases = [
            (1, 18.340_260_153_001_82),
            (3, 38.588_613_528_510_77),
            (5, 53.735_907_772_777_374),
            (20, 74.476_856_504_642_47),
            (100, 103.201_408_440_983_78),
        ];
        for (n, want) in cases {
            let p = Problem::new(n, 1.0).unwrap();
            let r = eval_method_6(&p).unwrap();
            assert!(
                (r.value - want).abs() < 1e-8 * want,
                "N={n}: {} vs {want}",
                r.value
            );
            assert_eq!(r.method, Method::Gegenbauer);
        }
        let p = Problem::new(1, PI / 2.0).unwrap();
        let want = crate::oracle::oracle_value(&p).unwrap();
        assert!((eval_method_6(&p).unwrap().value - want).abs() < 1e-9);
    }

    proptest! {
        #[test]
        fn parity_and_positivity(n in 1u32..40, alpha in 1e-3f64..(PI - 1e-3)) {
            let p = Problem::new(n, alpha).unwrap();
            let q = crate::problem::symmetry_partner(&p);
            let a = eval_method_6(&p).unwrap().value;
            let b = eval_method_6(&q).unwrap().value;
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
            prop_assert!(a >= -1e-9);
        }
    }
}
