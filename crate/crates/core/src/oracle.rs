//! Brute-force ground truth: tensor Gauss–Legendre quadrature of the sphere
//! integral and 1D projections for individual Legendre coefficients.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::problem::Problem;
use crate::quadrature::{integrate_adaptive, pairwise_sum, GaussRule, PANEL_ORDER};
use crate::specfun::legendre_all;
use crate::{Error, Result};

/// Default absolute tolerance of the 2D oracle.
pub const DEFAULT_ABS_TOL: f64 = 1e-9;
/// Absolute tolerance of the 1D coefficient projections.
pub const COEFF_ABS_TOL: f64 = 1e-13;
/// Below this distance from ±1 the kernel is evaluated in the endpoint form.
pub const ENDPOINT_BAND: f64 = 1e-3;

/// Node budget and stopping rule of [`integrate_2d`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub nodes_theta: usize,
    pub nodes_phi: usize,
    pub refinement_limit: usize,
    pub abs_tol: f64,
}

impl QuadratureSpec {
    /// Minimum θ nodes for harmonic `n`.
    pub fn min_nodes_theta(n: u32) -> usize {
        32 * n as usize + 64
    }

    pub fn for_problem(problem: &Problem) -> Self {
        let n = problem.n() as usize;
        QuadratureSpec {
            nodes_theta: Self::min_nodes_theta(problem.n()),
            nodes_phi: 16 * n + 64,
            refinement_limit: 4,
            abs_tol: DEFAULT_ABS_TOL,
        }
    }

    fn validate(&self, problem: &Problem) -> Result<()> {
        let min = Self::min_nodes_theta(problem.n());
        if self.nodes_theta < min {
            return Err(Error::Dimension {
                got: self.nodes_theta,
                min,
            });
        }
        if self.nodes_phi == 0 || self.refinement_limit == 0 {
            return Err(Error::Domain(
                "node counts and refinement limit must be positive".into(),
            ));
        }
        if self.abs_tol.is_nan() || self.abs_tol <= 0.0 {
            return Err(Error::Domain(format!(
                "abs_tol = {} must be positive",
                self.abs_tol
            )));
        }
        Ok(())
    }
}

/// f_N(t) = [1 − (−1)^N cos(At)]/(1 − t²).
///
/// Near the poles it switches to 2 sin²(Au/2)/(u(2 − u)) with u = 1 − |t|,
/// which is the same function for integer N and has no cancellation.
pub fn f_kernel(t: f64, problem: &Problem) -> f64 {
    let a = problem.a();
    let u = 1.0 - t.abs();
    if u <= ENDPOINT_BAND {
        if u <= 0.0 {
            return 0.0;
        }
        let s = (0.5 * a * u).sin();
        return 2.0 * s * s / (u * (2.0 - u));
    }
    (1.0 - problem.parity() * (a * t).cos()) / ((1.0 - t) * (1.0 + t))
}

/// I(N, α) by tensor Gauss–Legendre in (cos θ, φ), doubling both panel counts
/// until successive estimates differ by less than `spec.abs_tol`.
///
/// φ runs over [0, π] and the result is doubled; the integrand is even in φ.
pub fn integrate_2d(problem: &Problem, spec: &QuadratureSpec) -> Result<f64> {
    spec.validate(problem)?;
    let rule = GaussRule::new(PANEL_ORDER);
    let mut panels_theta = spec.nodes_theta.div_ceil(PANEL_ORDER);
    let mut panels_phi = spec.nodes_phi.div_ceil(PANEL_ORDER);
    let mut previous = tensor_estimate(problem, &rule, panels_theta, panels_phi);
    let mut older = f64::NAN;
    for _ in 0..spec.refinement_limit {
        panels_theta *= 2;
        panels_phi *= 2;
        let current = tensor_estimate(problem, &rule, panels_theta, panels_phi);
        if (current - previous).abs() < spec.abs_tol {
            return Ok(current);
        }
        older = previous;
        previous = current;
    }
    Err(Error::NonConvergence {
        last: previous,
        previous: older,
    })
}

/// [`integrate_2d`] with the default spec for the problem.
pub fn oracle_value(problem: &Problem) -> Result<f64> {
    integrate_2d(problem, &QuadratureSpec::for_problem(problem))
}

fn tensor_estimate(
    problem: &Problem,
    rule: &GaussRule,
    panels_theta: usize,
    panels_phi: usize,
) -> f64 {
    let xs = rule.composite_points(-1.0, 1.0, panels_theta);
    let phis: Vec<(f64, f64)> = rule
        .composite_points(0.0, PI, panels_phi)
        .into_iter()
        .map(|(phi, w)| (phi.cos(), w))
        .collect();
    let (ca, sa) = (problem.cos_alpha(), problem.sin_alpha());

    let rows: Vec<f64> = xs
        .par_iter()
        .map(|&(x, wx)| {
            let s = ((1.0 - x) * (1.0 + x)).sqrt();
            let inner: Vec<f64> = phis
                .iter()
                .map(|&(cphi, wphi)| {
                    let e2 = (s * cphi * sa + x * ca).clamp(-1.0, 1.0);
                    wphi * f_kernel(e2, problem)
                })
                .collect();
            wx * f_kernel(x, problem) * pairwise_sum(&inner)
        })
        .collect();
    2.0 * pairwise_sum(&rows)
}

/// C_2j = (4j + 1) ∫_0^1 f_N(t) P_2j(t) dt by adaptive Gauss–Legendre.
pub fn coeff_oracle(problem: &Problem, j: usize) -> Result<f64> {
    let n = problem.n() as usize;
    let limit = 4 * n + 200;
    if 2 * j > limit {
        return Err(Error::Domain(format!(
            "2j = {} exceeds the oracle limit {limit}",
            2 * j
        )));
    }
    // at least 16N + 64 nodes on [0, 1], plus enough to resolve P_2j
    let panels = n + 4 + j / 4;
    let integral = integrate_adaptive(0.0, 1.0, panels, COEFF_ABS_TOL, 6, |t| {
        f_kernel(t, problem) * legendre_all(t, 2 * j).expect("t in [0, 1]")[2 * j]
    })?;
    Ok((4 * j + 1) as f64 * integral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::cin;

    #[test]
    fn kernel_examples() {
        for n in 1..=7 {
            let p = Problem::new(n, 1.0).unwrap();
            assert_eq!(f_kernel(1.0, &p), 0.0);
            assert_eq!(f_kernel(-1.0, &p), 0.0);
            assert!((f_kernel(0.0, &p) - (1.0 - p.parity())).abs() < 1e-15);
        }
        let p = Problem::new(2, 1.0).unwrap();
        let naive = (1.0 - (2.0 * PI * 0.25).cos()) / (1.0 - 0.0625);
        assert!((f_kernel(0.25, &p) - naive).abs() < 1e-15);
        assert!((f_kernel(0.25, &p) - 16.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn kernel_branches_agree_at_the_seam() {
        for n in [1, 2, 5, 20, 100] {
            let p = Problem::new(n, 1.0).unwrap();
            let a = p.a();
            for sign in [-1.0, 1.0] {
                let t = sign * (1.0 - ENDPOINT_BAND * 1.0001);
                let u = 1.0 - t.abs();
                let s = (0.5 * a * u).sin();
                let endpoint_form = 2.0 * s * s / (u * (2.0 - u));
                let direct = f_kernel(t, &p);
                assert!(
                    (direct - endpoint_form).abs() < 1e-11,
                    "N={n}: {direct} vs {endpoint_form}"
                );
            }
        }
    }

    #[test]
    fn kernel_is_even() {
        let p = Problem::new(3, 1.0).unwrap();
        for t in [0.1, 0.5, 0.9, 0.9995, 0.999_999_5] {
            assert_eq!(f_kernel(t, &p), f_kernel(-t, &p));
        }
    }

    #[test]
    fn spec_validation() {
        let p = Problem::new(4, 1.0).unwrap();
        let mut spec = QuadratureSpec::for_problem(&p);
        assert_eq!(spec.nodes_theta, 192);
        spec.nodes_theta = 100;
        assert!(matches!(
            integrate_2d(&p, &spec),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn two_dimensional_oracle_values() {
        // frozen from an independent tensor-rule evaluation, confirmed by the Gegenbauer series
        let cases = [
            (1, 18.340_260_153_001_82),
            (3, 38.588_613_528_510_77),
            (5, 53.735_907_772_777_374),
        ];
        for (n, want) in cases {
            let p = Problem::new(n, 1.0).unwrap();
            let got = oracle_value(&p).unwrap();
            assert!((got - want).abs() < 1e-9, "N={n}: {got} vs {want}");
        }
    }

    #[test]
    fn two_dimensional_oracle_symmetry() {
        let p = Problem::new(4, 0.7).unwrap();
        let q = crate::problem::symmetry_partner(&p);
        let a = oracle_value(&p).unwrap();
        let b = oracle_value(&q).unwrap();
        assert!((a - b).abs() < DEFAULT_ABS_TOL);
    }

    #[test]
    fn two_dimensional_oracle_is_deterministic() {
        let p = Problem::new(6, 1.3).unwrap();
        assert_eq!(
            oracle_value(&p).unwrap().to_bits(),
            oracle_value(&p).unwrap().to_bits()
        );
    }

    #[test]
    fn refinement_deltas_shrink() {
        let p = Problem::new(3, 0.9).unwrap();
        let rule = GaussRule::new(PANEL_ORDER);
        let coarse: Vec<f64> = (1..=4).map(|k| tensor_estimate(&p, &rule, k, k)).collect();
        let reference = tensor_estimate(&p, &rule, 32, 32);
        let errs: Vec<f64> = coarse.iter().map(|v| (v - reference).abs()).collect();
        for w in errs.windows(2) {
            assert!(w[1] < w[0] || w[0] < 1e-13, "{errs:?}");
        }
        assert!(errs[1] < errs[0]);
    }

    #[test]
    fn coefficient_oracle_examples() {
        let p = Problem::new(1, 1.0).unwrap();
        let c0 = coeff_oracle(&p, 0).unwrap();
        assert!((c0 - 0.5 * cin(2.0 * PI)).abs() < 1e-10);

        let p = Problem::new(3, 1.0).unwrap();
        assert!(coeff_oracle(&p, 80).unwrap().abs() < 1e-12);
        assert!(coeff_oracle(&p, 107).is_err());
    }
}
