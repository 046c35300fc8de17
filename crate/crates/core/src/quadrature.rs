//! Composite Gauss–Legendre rules on intervals, plus a fixed-order pairwise sum.

use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

/// Points per panel of every composite rule in this crate.
pub const PANEL_ORDER: usize = 16;

/// A Gauss–Legendre rule on the reference interval [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn new(order: usize) -> Self {
        let order = NonZeroUsize::new(order).expect("quadrature order must be positive");
        let rule = GaussLegendre::new(order);
        let (nodes, weights) = rule.as_node_weight_pairs().iter().copied().unzip();
        GaussRule { nodes, weights }
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes and weights mapped onto each of `panels` equal sub-intervals of [a, b].
    pub fn composite_points(&self, a: f64, b: f64, panels: usize) -> Vec<(f64, f64)> {
        let h = (b - a) / panels as f64;
        let mut out = Vec::with_capacity(panels * self.order());
        for p in 0..panels {
            let lo = a + h * p as f64;
            let half = 0.5 * h;
            let mid = lo + half;
            for (x, w) in self.nodes.iter().zip(&self.weights) {
                out.push((mid + half * x, half * w));
            }
        }
        out
    }

    /// Composite integral of `f` on [a, b]; panel sums are reduced pairwise.
    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, panels: usize, mut f: F) -> f64 {
        let h = (b - a) / panels as f64;
        let half = 0.5 * h;
        let sums: Vec<f64> = (0..panels)
            .map(|p| {
                let mid = a + h * p as f64 + half;
                half * self
                    .nodes
                    .iter()
                    .zip(&self.weights)
                    .map(|(x, w)| w * f(mid + half * x))
                    .sum::<f64>()
            })
            .collect();
        pairwise_sum(&sums)
    }
}

/// Sum in a fixed binary-tree order, so the result does not depend on how the
/// terms were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    match xs.len() {
        0 => 0.0,
        1 => xs[0],
        n if n <= 8 => xs.iter().sum(),
        n => {
            let (l, r) = xs.split_at(n / 2);
            pairwise_sum(l) + pairwise_sum(r)
        }
    }
}

/// Integrate on [a, b] doubling the panel count until two successive estimates
/// differ by less than `abs_tol`. Returns the finer estimate.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    a: f64,
    b: f64,
    initial_panels: usize,
    abs_tol: f64,
    max_doublings: usize,
    f: F,
) -> crate::Result<f64> {
    let rule = GaussRule::new(PANEL_ORDER);
    let mut panels = initial_panels.max(1);
    let mut previous = rule.integrate(a, b, panels, &f);
    let mut older = f64::NAN;
    for _ in 0..max_doublings {
        panels *= 2;
        let current = rule.integrate(a, b, panels, &f);
        if (current - previous).abs() < abs_tol {
            return Ok(current);
        }
        older = previous;
        previous = current;
    }
    Err(crate::Error::NonConvergence {
        last: previous,
        previous: older,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomials_exactly() {
        let rule = GaussRule::new(8);
        let v = rule.integrate(-1.0, 1.0, 1, |x| x.powi(14));
        assert!((v - 2.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn composite_oscillatory() {
        let rule = GaussRule::new(PANEL_ORDER);
        let v = rule.integrate(0.0, 40.0, 20, f64::cos);
        assert!((v - 40f64.sin()).abs() < 1e-13);
    }

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (1..1000).map(|i| 1.0 / i as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
    }
}
