//! Evaluators for the cosmic-string loop integral
//!
//! I(N, α) = ∫ f_N(e₁·ẑ) f_N(e₁·â) dΩ,  f_N(t) = [1 − (−1)^N cos(Nπt)]/(1 − t²),
//!
//! by six exact methods and a large-N asymptotic formula, with a quadrature
//! oracle to check them against.

pub mod asympt;
pub mod error;
pub mod gegenbauer;
pub mod hiprec;
pub mod methods;
pub mod monomial;
pub mod oracle;
pub mod problem;
pub mod quadrature;
pub mod specfun;
pub mod spectral;

pub use error::{Error, ErrorClass, Result};
pub use hiprec::{required_digits, Mode, PrecisionContext};
pub use methods::evaluate;
pub use problem::{
    funk_hecke_sum, power_spectrum, symmetry_partner, Method, MethodResult, Problem, Provenance,
    SpectralCoeffs,
};
