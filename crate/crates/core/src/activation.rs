//! Coordinate-wise activation maps `σ = (σ_1, …, σ_n)ᵀ`.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::{ColumnVector, Error, Result};

/// A scalar transfer function together with its derivative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActivationKind {
    Identity,
    Sigmoid,
    Tanh,
    Relu,
    /// The constant function 1. Used for the formal bias neuron.
    ConstantOne,
}

impl ActivationKind {
    pub const ALL: [ActivationKind; 5] = [
        ActivationKind::Identity,
        ActivationKind::Sigmoid,
        ActivationKind::Tanh,
        ActivationKind::Relu,
        ActivationKind::ConstantOne,
    ];

    pub fn eval(self, t: f64) -> f64 {
        match self {
            ActivationKind::Identity => t,
            ActivationKind::Sigmoid => sigmoid(t),
            ActivationKind::Tanh => libm::tanh(t),
            ActivationKind::Relu => {
                if t > 0.0 {
                    t
                } else {
                    0.0
                }
            }
            ActivationKind::ConstantOne => 1.0,
        }
    }

    /// First derivative. ReLU uses 0 at the kink.
    pub fn derivative(self, t: f64) -> f64 {
        match self {
            ActivationKind::Identity => 1.0,
            ActivationKind::Sigmoid => {
                let s = sigmoid(t);
                s * (1.0 - s)
            }
            ActivationKind::Tanh => {
                let th = libm::tanh(t);
                1.0 - th * th
            }
            ActivationKind::Relu => {
                if t > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            ActivationKind::ConstantOne => 0.0,
        }
    }

    /// Whether the function is continuously differentiable everywhere.
    pub fn is_smooth(self) -> bool {
        !matches!(self, ActivationKind::Relu)
    }

    pub fn name(self) -> &'static str {
        match self {
            ActivationKind::Identity => "identity",
            ActivationKind::Sigmoid => "sigmoid",
            ActivationKind::Tanh => "tanh",
            ActivationKind::Relu => "relu",
            ActivationKind::ConstantOne => "one",
        }
    }
}

fn sigmoid(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + libm::exp(-t))
    } else {
        let e = libm::exp(t);
        e / (1.0 + e)
    }
}

impl fmt::Display for ActivationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ActivationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::UnknownName {
                what: "activation",
                name: s.to_string(),
            })
    }
}

/// One activation kind per coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActivationColumn(Vec<ActivationKind>);

impl ActivationColumn {
    pub fn new(kinds: Vec<ActivationKind>) -> Self {
        Self(kinds)
    }

    pub fn uniform(kind: ActivationKind, len: usize) -> Self {
        Self(vec![kind; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn kinds(&self) -> &[ActivationKind] {
        &self.0
    }

    /// `σ(y) = (σ_1(y_1), …, σ_n(y_n))ᵀ`.
    pub fn apply(&self, y: &ColumnVector) -> Result<ColumnVector> {
        self.map_with("activation", y, ActivationKind::eval)
    }

    /// `σ'(y) = (σ_1'(y_1), …, σ_n'(y_n))ᵀ`.
    pub fn derivative(&self, y: &ColumnVector) -> Result<ColumnVector> {
        self.map_with("activation derivative", y, ActivationKind::derivative)
    }

    fn map_with(
        &self,
        op: &'static str,
        y: &ColumnVector,
        f: fn(ActivationKind, f64) -> f64,
    ) -> Result<ColumnVector> {
        if self.0.len() != y.dim() {
            return Err(Error::DimensionMismatch {
                op,
                left: (self.0.len(), 1),
                right: y.shape(),
            });
        }
        ColumnVector::new(self.0.iter().zip(y.iter()).map(|(&k, t)| f(k, t)).collect())
    }
}
