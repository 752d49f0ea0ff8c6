//! Cost functions `J(f(x), y)` and their gradients with respect to `X^L`.

use alloc::string::ToString;
use core::fmt;
use core::str::FromStr;

use crate::{ColumnVector, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LossKind {
    /// `J = Σ_i (f(x)_i - y_i)`; its gradient is all ones.
    PaperIdentity,
    /// `J = ½ ‖f(x) - y‖²`.
    SquaredError,
}

impl LossKind {
    pub fn name(self) -> &'static str {
        match self {
            LossKind::PaperIdentity => "paper-identity",
            LossKind::SquaredError => "squared-error",
        }
    }

    pub fn value(self, output: &ColumnVector, target: &ColumnVector) -> Result<f64> {
        let diff = output.sub(target)?;
        Ok(match self {
            LossKind::PaperIdentity => diff.iter().sum(),
            LossKind::SquaredError => 0.5 * diff.iter().map(|d| d * d).sum::<f64>(),
        })
    }

    /// `δ_up^L = ∂J/∂X^L`.
    pub fn grad(self, output: &ColumnVector, target: &ColumnVector) -> Result<ColumnVector> {
        let diff = output.sub(target)?;
        Ok(match self {
            LossKind::PaperIdentity => ColumnVector::ones(diff.dim()),
            LossKind::SquaredError => diff,
        })
    }
}

impl fmt::Display for LossKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LossKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper-identity" => Ok(LossKind::PaperIdentity),
            "squared-error" => Ok(LossKind::SquaredError),
            _ => Err(Error::UnknownName {
                what: "loss",
                name: s.to_string(),
            }),
        }
    }
}
