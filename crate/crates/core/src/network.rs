//! Architecture `A[N_0, …, N_L]`, weights, and the forward pass.
//!
//! In [`BiasMode::Augmented`] every layer below the output receives a trailing
//! constant-1 coordinate, so the last column of `W^h` is the bias of layer
//! `h`. Preactivations `Y^h` only ever hold the `N_h` genuine neurons; the
//! constant coordinate is appended to `X^h` after the activation.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{ActivationColumn, ActivationKind, ColumnVector, Error, Matrix, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BiasMode {
    /// Biases live in the last weight column; inputs and hidden activations
    /// carry a trailing 1.
    Augmented,
    /// Purely linear layers.
    NoBias,
}

impl BiasMode {
    pub fn name(self) -> &'static str {
        match self {
            BiasMode::Augmented => "augmented",
            BiasMode::NoBias => "none",
        }
    }
}

impl fmt::Display for BiasMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BiasMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "augmented" => Ok(BiasMode::Augmented),
            "none" => Ok(BiasMode::NoBias),
            _ => Err(Error::UnknownName {
                what: "bias mode",
                name: s.to_string(),
            }),
        }
    }
}

/// Layer sizes, activations and bias convention of a network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetworkSpec {
    sizes: Vec<usize>,
    hidden_activation: ActivationKind,
    output_activation: ActivationKind,
    bias_mode: BiasMode,
}

impl NetworkSpec {
    /// `sizes` is `[N_0, …, N_L]`, genuine neurons only.
    pub fn new(
        sizes: Vec<usize>,
        hidden_activation: ActivationKind,
        output_activation: ActivationKind,
        bias_mode: BiasMode,
    ) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::InvalidSpec(format!(
                "need at least an input and an output layer, got sizes {sizes:?}"
            )));
        }
        if sizes.contains(&0) {
            return Err(Error::InvalidSpec(format!(
                "layer sizes must be positive, got {sizes:?}"
            )));
        }
        Ok(Self {
            sizes,
            hidden_activation,
            output_activation,
            bias_mode,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// Number of weight layers `L`.
    pub fn depth(&self) -> usize {
        self.sizes.len() - 1
    }

    pub fn input_dim(&self) -> usize {
        self.sizes[0]
    }

    pub fn output_dim(&self) -> usize {
        self.sizes[self.depth()]
    }

    pub fn hidden_activation(&self) -> ActivationKind {
        self.hidden_activation
    }

    pub fn output_activation(&self) -> ActivationKind {
        self.output_activation
    }

    pub fn bias_mode(&self) -> BiasMode {
        self.bias_mode
    }

    /// Shape of `W^h` for `h` in `1..=L`.
    pub fn weight_shape(&self, h: usize) -> (usize, usize) {
        assert!((1..=self.depth()).contains(&h), "layer {h} out of range");
        let extra = usize::from(self.bias_mode == BiasMode::Augmented);
        (self.sizes[h], self.sizes[h - 1] + extra)
    }

    /// Activation column applied to `Y^h`.
    pub fn layer_activation(&self, h: usize) -> ActivationColumn {
        assert!((1..=self.depth()).contains(&h), "layer {h} out of range");
        let kind = if h == self.depth() {
            self.output_activation
        } else {
            self.hidden_activation
        };
        ActivationColumn::uniform(kind, self.sizes[h])
    }
}

/// A network: its spec, `W^1 … W^L`, and one activation column per layer.
#[derive(Clone, Debug, PartialEq)]
pub struct Network {
    spec: NetworkSpec,
    weights: Vec<Matrix>,
    activations: Vec<ActivationColumn>,
}

impl Network {
    /// Wraps existing weights, checking every shape against the spec.
    pub fn from_weights(spec: NetworkSpec, weights: Vec<Matrix>) -> Result<Self> {
        let activations = (1..=spec.depth())
            .map(|h| spec.layer_activation(h))
            .collect();
        Self::with_activations(spec, weights, activations)
    }

    /// Like [`Network::from_weights`] but with per-coordinate activation
    /// columns overriding the spec's hidden/output kinds.
    pub fn with_activations(
        spec: NetworkSpec,
        weights: Vec<Matrix>,
        activations: Vec<ActivationColumn>,
    ) -> Result<Self> {
        let depth = spec.depth();
        if weights.len() != depth {
            return Err(Error::LayerCount {
                expected: depth,
                found: weights.len(),
            });
        }
        if activations.len() != depth {
            return Err(Error::LayerCount {
                expected: depth,
                found: activations.len(),
            });
        }
        for h in 1..=depth {
            let expected = spec.weight_shape(h);
            let found = weights[h - 1].shape();
            if expected != found {
                return Err(Error::InvalidSpec(format!(
                    "W^{h} has shape {found:?}, expected {expected:?}"
                )));
            }
            if activations[h - 1].len() != spec.sizes[h] {
                return Err(Error::InvalidSpec(format!(
                    "activation column {h} has length {}, expected {}",
                    activations[h - 1].len(),
                    spec.sizes[h]
                )));
            }
        }
        Ok(Self {
            spec,
            weights,
            activations,
        })
    }

    /// Random network with entries i.i.d. uniform on `[-scale, scale]`,
    /// fully determined by `(spec, seed, scale)`.
    pub fn init(spec: NetworkSpec, seed: u64, scale: f64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        Self::init_with_rng(spec, &mut rng, scale)
    }

    pub(crate) fn init_with_rng<R: Rng>(
        spec: NetworkSpec,
        rng: &mut R,
        scale: f64,
    ) -> Result<Self> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "init scale must be finite and non-negative, got {scale}"
            )));
        }
        let weights = (1..=spec.depth())
            .map(|h| {
                let (rows, cols) = spec.weight_shape(h);
                let data = (0..rows * cols)
                    .map(|_| {
                        if scale == 0.0 {
                            0.0
                        } else {
                            rng.gen_range(-scale..=scale)
                        }
                    })
                    .collect();
                Matrix::new(rows, cols, data)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_weights(spec, weights)
    }

    pub fn spec(&self) -> &NetworkSpec {
        &self.spec
    }

    pub fn depth(&self) -> usize {
        self.spec.depth()
    }

    pub fn augmented(&self) -> bool {
        self.spec.bias_mode == BiasMode::Augmented
    }

    /// All weights; `weights()[h - 1]` is `W^h`.
    pub fn weights(&self) -> &[Matrix] {
        &self.weights
    }

    /// `W^h` for `h` in `1..=L`.
    pub fn weight(&self, h: usize) -> &Matrix {
        &self.weights[h - 1]
    }

    pub(crate) fn weight_mut(&mut self, h: usize) -> &mut Matrix {
        &mut self.weights[h - 1]
    }

    /// Activation column of layer `h` in `1..=L`.
    pub fn activation(&self, h: usize) -> &ActivationColumn {
        &self.activations[h - 1]
    }

    /// Whether the activation columns are exactly those implied by the spec.
    pub fn has_spec_activations(&self) -> bool {
        (1..=self.depth()).all(|h| self.activations[h - 1] == self.spec.layer_activation(h))
    }

    /// Two-step forward pass: `Y^h = W^h X^{h-1}`, then `X^h = σ(Y^h)`.
    pub fn forward(&self, x: &ColumnVector) -> Result<ForwardTrace> {
        if x.dim() != self.spec.input_dim() {
            return Err(Error::DimensionMismatch {
                op: "forward input",
                left: (self.spec.input_dim(), 1),
                right: x.shape(),
            });
        }
        let depth = self.depth();
        let input = if self.augmented() {
            x.augmented()
        } else {
            x.clone()
        };
        let mut preactivations = Vec::with_capacity(depth);
        let mut activations: Vec<ColumnVector> = Vec::with_capacity(depth);
        for h in 1..=depth {
            let prev = activations.last().unwrap_or(&input);
            let y = self.weight(h).matvec(prev)?;
            let mut x = self.activation(h).apply(&y)?;
            if self.augmented() && h < depth {
                x = x.augmented();
            }
            preactivations.push(y);
            activations.push(x);
        }
        Ok(ForwardTrace {
            input,
            preactivations,
            activations,
        })
    }

    /// Network output `f(x)`.
    pub fn predict(&self, x: &ColumnVector) -> Result<ColumnVector> {
        Ok(self.forward(x)?.output().clone())
    }
}

/// Cached `X^0`, `Y^1 … Y^L` and `X^1 … X^L` from one forward pass.
#[derive(Clone, Debug, PartialEq)]
pub struct ForwardTrace {
    input: ColumnVector,
    preactivations: Vec<ColumnVector>,
    activations: Vec<ColumnVector>,
}

impl ForwardTrace {
    pub fn depth(&self) -> usize {
        self.preactivations.len()
    }

    /// `X^h` for `h` in `0..=L`, including the trailing 1 where augmented.
    pub fn x(&self, h: usize) -> &ColumnVector {
        if h == 0 {
            &self.input
        } else {
            &self.activations[h - 1]
        }
    }

    /// `Y^h` for `h` in `1..=L`.
    pub fn y(&self, h: usize) -> &ColumnVector {
        &self.preactivations[h - 1]
    }

    /// `X^L`.
    pub fn output(&self) -> &ColumnVector {
        self.activations
            .last()
            .expect("trace has at least one layer")
    }
}
