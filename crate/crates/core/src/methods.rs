//! One entry point over all seven evaluators.

use crate::asympt::eval_asymptotic;
use crate::gegenbauer::eval_method_6;
use crate::hiprec::PrecisionContext;
use crate::monomial::{eval_method_1_2, eval_method_3_default, Scaling};
use crate::problem::{Method, MethodResult, Problem};
use crate::spectral::{eval_method_4, eval_method_5};
use crate::Result;

/// Precision used by the monomial methods when no context is given.
pub fn default_context(method: Method, problem: &Problem) -> PrecisionContext {
    if method.is_monomial() {
        PrecisionContext::certified(problem.n())
    } else {
        PrecisionContext::native()
    }
}

/// Evaluate `method` on `problem`. `ctx` applies to the monomial methods only;
/// `None` means the certified digit count for this N.
pub fn evaluate(
    problem: &Problem,
    method: Method,
    ctx: Option<&PrecisionContext>,
) -> Result<MethodResult> {
    let ctx = ctx
        .copied()
        .unwrap_or_else(|| default_context(method, problem));
    match method {
        Method::Method1 => eval_method_1_2(problem, &ctx, Scaling::Factorial),
        Method::Method2 => eval_method_1_2(problem, &ctx, Scaling::Gaussian),
        Method::Method3 => eval_method_3_default(problem, &ctx),
        Method::Galerkin => eval_method_4(problem),
        Method::Volterra => eval_method_5(problem),
        Method::Gegenbauer => eval_method_6(problem),
        Method::Asymptotic => eval_asymptotic(problem),
    }
}
