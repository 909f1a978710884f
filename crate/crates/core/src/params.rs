use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// The entropy parameters `(alpha, beta)`: `alpha > 0`, `alpha != 1`, `beta != 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamPair {
    alpha: f64,
    beta: f64,
}

impl ParamPair {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::BadParams(format!("non-finite ({alpha}, {beta})")));
        }
        if alpha <= 0.0 {
            return Err(Error::BadParams(format!("alpha = {alpha} must be positive")));
        }
        if alpha == 1.0 {
            return Err(Error::BadParams("alpha = 1 is excluded".into()));
        }
        if beta == 0.0 {
            return Err(Error::BadParams("beta = 0 is excluded".into()));
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `(1 - alpha) * beta`, the common denominator of every kernel.
    pub fn denominator(&self) -> f64 {
        (1.0 - self.alpha) * self.beta
    }

    /// `(2 - alpha, beta)`; fails when `alpha >= 2`.
    pub fn reflected(&self) -> Result<Self> {
        Self::new(2.0 - self.alpha, self.beta)
    }

    /// `1 < alpha < 2`, `beta <= 1`: range where `M` is a monotone.
    pub fn in_monotone_range_upper(&self) -> bool {
        self.alpha > 1.0 && self.alpha < 2.0 && self.beta <= 1.0
    }

    /// `0 < alpha < 1`, `beta <= 1`: range where `m` is a monotone.
    pub fn in_monotone_range_lower(&self) -> bool {
        self.alpha < 1.0 && self.beta <= 1.0
    }

    /// `alpha > 1`, `beta >= 1`: range of the Lipschitz bounds.
    pub fn in_lipschitz_range(&self) -> bool {
        self.alpha > 1.0 && self.beta >= 1.0
    }

    /// `alpha / (alpha - 1)`
    pub fn lipschitz_constant(&self) -> f64 {
        self.alpha / (self.alpha - 1.0)
    }
}

impl fmt::Display for ParamPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha={}, beta={})", self.alpha, self.beta)
    }
}
