//! Configurable-precision arithmetic for the cancellation-prone monomial paths.
//!
//! The monomial methods sum alternating series whose terms reach `e^A` before
//! cancelling down to O(1). They are written once, generically over a
//! [`Field`], and run either in native doubles or in a big-float field whose
//! width comes from a [`PrecisionContext`].

use std::f64::consts::{LOG10_E, LOG2_10, PI};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode};

use crate::{Error, Result};

/// Floor on the working precision of any big-float evaluation.
pub const MIN_WORKING_DIGITS: u32 = 60;
/// Digits added on top of the cancellation estimate and the target.
pub const SAFETY_MARGIN_DIGITS: u32 = 20;
/// Nominal decimal digits of an IEEE double.
pub const DOUBLE_DIGITS: u32 = 16;

const ROUNDING: RoundingMode = RoundingMode::ToEven;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    NativeDouble,
    BigFloat,
}

/// Decimal-digit budget plus the arithmetic backend that honours it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrecisionContext {
    decimal_digits: u32,
    mode: Mode,
}

impl PrecisionContext {
    pub fn native() -> Self {
        PrecisionContext {
            decimal_digits: DOUBLE_DIGITS,
            mode: Mode::NativeDouble,
        }
    }

    pub fn big_float(decimal_digits: u32) -> Result<Self> {
        if decimal_digits < DOUBLE_DIGITS {
            return Err(Error::Domain(format!(
                "decimal_digits must be >= {DOUBLE_DIGITS}, got {decimal_digits}"
            )));
        }
        Ok(PrecisionContext {
            decimal_digits,
            mode: Mode::BigFloat,
        })
    }

    /// The certified big-float context for harmonic `n` at double-precision output.
    pub fn certified(n: u32) -> Self {
        PrecisionContext {
            decimal_digits: required_digits(n, DOUBLE_DIGITS),
            mode: Mode::BigFloat,
        }
    }

    pub fn decimal_digits(&self) -> u32 {
        self.decimal_digits
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Binary precision used for the big-float backend.
    pub fn bits(&self) -> usize {
        digits_to_bits(self.decimal_digits)
    }
}

impl fmt::Display for PrecisionContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mode {
            Mode::NativeDouble => write!(f, "native double"),
            Mode::BigFloat => write!(f, "{} digits", self.decimal_digits),
        }
    }
}

fn digits_to_bits(digits: u32) -> usize {
    let bits = (digits as f64 * LOG2_10).ceil() as usize + 32;
    bits.div_ceil(64) * 64
}

/// Working digits for harmonic `n`: the `e^A` cancellation loss
/// `A·log10(e)` plus the target and a safety margin, floored at
/// [`MIN_WORKING_DIGITS`].
pub fn required_digits(n: u32, target_digits: u32) -> u32 {
    let loss = (n as f64 * PI * LOG10_E).ceil() as u32;
    (loss + target_digits + SAFETY_MARGIN_DIGITS).max(MIN_WORKING_DIGITS)
}

/// Scalar arithmetic needed by the monomial evaluators.
pub trait Real:
    Clone
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn powi(&self, n: u32) -> Self;
    fn cos(&self) -> Self;
    fn sqrt(&self) -> Self;
    fn to_f64(&self) -> f64;
    fn is_finite(&self) -> bool;
}

/// Constructor side of an arithmetic backend.
pub trait Field {
    type Num: Real;

    /// Exact conversion of a double.
    fn num(&self, v: f64) -> Self::Num;
    fn pi(&self) -> Self::Num;
    fn decimal_digits(&self) -> u32;

    fn zero(&self) -> Self::Num {
        self.num(0.0)
    }

    fn one(&self) -> Self::Num {
        self.num(1.0)
    }
}

impl Real for f64 {
    fn powi(&self, n: u32) -> Self {
        f64::powi(*self, n as i32)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
}

/// IEEE double arithmetic.
#[derive(Debug, Clone, Copy, Default)]
pub struct NativeField;

impl Field for NativeField {
    type Num = f64;
    fn num(&self, v: f64) -> f64 {
        v
    }
    fn pi(&self) -> f64 {
        PI
    }
    fn decimal_digits(&self) -> u32 {
        DOUBLE_DIGITS
    }
}

/// Big-float arithmetic at a fixed binary precision.
#[derive(Debug, Clone, Copy)]
pub struct BigField {
    bits: usize,
    digits: u32,
}

impl BigField {
    pub fn new(decimal_digits: u32) -> Self {
        BigField {
            bits: digits_to_bits(decimal_digits),
            digits: decimal_digits,
        }
    }
}

impl Field for BigField {
    type Num = BigReal;
    fn num(&self, v: f64) -> BigReal {
        BigReal {
            v: BigFloat::from_f64(v, self.bits),
            bits: self.bits,
        }
    }
    fn pi(&self) -> BigReal {
        let mut cc = consts();
        BigReal {
            v: cc.pi(self.bits, ROUNDING),
            bits: self.bits,
        }
    }
    fn decimal_digits(&self) -> u32 {
        self.digits
    }
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constants cache allocation")
}

/// A big float tagged with the precision its operations round to.
#[derive(Clone)]
pub struct BigReal {
    v: BigFloat,
    bits: usize,
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl BigReal {
    fn lift(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.bits)
    }
}

macro_rules! big_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                let bits = self.bits.max(rhs.bits);
                BigReal {
                    v: self.v.$method(&rhs.v, bits, ROUNDING),
                    bits,
                }
            }
        }
        impl $trait<f64> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: f64) -> BigReal {
                let rhs = self.lift(rhs);
                BigReal {
                    v: self.v.$method(&rhs, self.bits, ROUNDING),
                    bits: self.bits,
                }
            }
        }
    };
}

big_binop!(Add, add);
big_binop!(Sub, sub);
big_binop!(Mul, mul);
big_binop!(Div, div);

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal {
            v: self.v.neg(),
            bits: self.bits,
        }
    }
}

impl Real for BigReal {
    fn powi(&self, n: u32) -> Self {
        BigReal {
            v: self.v.powi(n as usize, self.bits, ROUNDING),
            bits: self.bits,
        }
    }
    fn cos(&self) -> Self {
        let mut cc = consts();
        BigReal {
            v: self.v.cos(self.bits, ROUNDING, &mut cc),
            bits: self.bits,
        }
    }
    fn sqrt(&self) -> Self {
        BigReal {
            v: self.v.sqrt(self.bits, ROUNDING),
            bits: self.bits,
        }
    }
    fn to_f64(&self) -> f64 {
        if self.v.is_nan() {
            return f64::NAN;
        }
        if self.v.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if self.v.is_zero() {
            return 0.0;
        }
        // Decimal rendering carries all `bits` of mantissa; f64 parsing rounds correctly.
        self.v.to_string().parse().unwrap_or(f64::NAN)
    }
    fn is_finite(&self) -> bool {
        !(self.v.is_nan() || self.v.is_inf())
    }
}

/// A computation that can be run in any arithmetic backend. Implementations
/// lower their result to native types before returning.
pub trait Computation {
    type Output: Finite;
    fn run<F: Field>(&self, field: &F) -> Result<Self::Output>;
}

/// Native outputs that can be checked for overflow or invalid results.
pub trait Finite {
    fn all_finite(&self) -> bool;
}

impl Finite for f64 {
    fn all_finite(&self) -> bool {
        self.is_finite()
    }
}

impl Finite for Vec<f64> {
    fn all_finite(&self) -> bool {
        self.iter().all(|v| v.is_finite())
    }
}

/// Run `computation` with all arithmetic honouring `ctx`. A non-finite result
/// becomes [`Error::PrecisionFailure`].
pub fn with_precision<C: Computation>(
    ctx: &PrecisionContext,
    computation: &C,
) -> Result<C::Output> {
    let out = match ctx.mode {
        Mode::NativeDouble => computation.run(&NativeField)?,
        Mode::BigFloat => computation.run(&BigField::new(ctx.decimal_digits))?,
    };
    if out.all_finite() {
        Ok(out)
    } else {
        Err(Error::PrecisionFailure(format!(
            "non-finite result (overflow or invalid operation) at {ctx}"
        )))
    }
}
