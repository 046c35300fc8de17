//! Named grids that regenerate the three standard figure data sets.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use sphconv_core::{Error, Method, Result};

use crate::grid::{AlphaGrid, GridSpec, MonomialPrecision, Reference};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// Method 6 against the oracle for N ∈ {2, 5, 10, 15}.
    Fig1,
    /// Every exact method at N = 20, monomial methods native and certified.
    Fig2,
    /// Method 6 and the asymptotic formula for N ∈ {10, 100, 1000}.
    Fig3,
}

impl Preset {
    pub const ALL: [Preset; 3] = [Preset::Fig1, Preset::Fig2, Preset::Fig3];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Fig1 => "fig1",
            Preset::Fig2 => "fig2",
            Preset::Fig3 => "fig3",
        }
    }

    pub fn spec(self) -> GridSpec {
        match self {
            Preset::Fig1 => {
                let mut s = GridSpec::new(
                    vec![2, 5, 10, 15],
                    AlphaGrid::new(0.2, PI - 0.2, 12).expect("static grid"),
                    vec![Method::Gegenbauer],
                );
                s.reference = Reference::Oracle2d;
                s
            }
            Preset::Fig2 => {
                let mut s =
                    GridSpec::new(vec![20], AlphaGrid::default_grid(), Method::EXACT.to_vec());
                s.reference = Reference::Oracle2d;
                s.precisions = vec![MonomialPrecision::Native, MonomialPrecision::Certified];
                s
            }
            Preset::Fig3 => {
                let mut s = GridSpec::new(
                    vec![10, 100, 1000],
                    AlphaGrid::default_grid(),
                    vec![Method::Gegenbauer, Method::Asymptotic],
                );
                s.reference = Reference::Method6;
                s
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Domain(format!("unknown preset '{s}' (valid: fig1, fig2, fig3)")))
    }
}
