//! Backward passes.
//!
//! [`two_step_backward`] is the main engine. It mirrors the forward pair
//! `(Y^h = W^h X^{h-1}, X^h = σ(Y^h))` with the adjoint pair
//!
//! ```text
//! δ_down^h   = δ_up^h ⊙ σ'(Y^h)
//! δ_up^{h-1} = (W^h)ᵀ δ_down^h        (W^h♯ when inputs are augmented)
//! ∂J/∂W^h    = δ_down^h (X^{h-1})ᵀ
//! ```
//!
//! [`classical_backward`] computes the same gradients with the textbook
//! single-δ recursion, written with explicit index loops so that it shares
//! nothing with the engine beyond the matrix type.

use alloc::format;
use alloc::vec::Vec;

use crate::{outer, ColumnVector, Error, ForwardTrace, Matrix, Network, Result};

/// `δ_up^h` for `h = 0..=L` and `δ_down^h` for `h = 1..=L`.
///
/// In augmented mode neither list includes the bias coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct DeltaSet {
    up: Vec<ColumnVector>,
    down: Vec<ColumnVector>,
}

impl DeltaSet {
    pub fn depth(&self) -> usize {
        self.down.len()
    }

    /// `δ_up^h = ∂J/∂X^h`, `h` in `0..=L`. `δ_up^0` is the input gradient.
    pub fn up(&self, h: usize) -> &ColumnVector {
        &self.up[h]
    }

    /// `δ_down^h = ∂J/∂Y^h`, `h` in `1..=L`.
    pub fn down(&self, h: usize) -> &ColumnVector {
        &self.down[h - 1]
    }
}

/// `∂J/∂W^h` for every layer, shaped like the weights.
#[derive(Clone, Debug, PartialEq)]
pub struct GradientSet {
    grads: Vec<Matrix>,
}

impl GradientSet {
    pub fn new(grads: Vec<Matrix>) -> Self {
        Self { grads }
    }

    /// All-zero gradients shaped like `net`'s weights.
    pub fn zeros_like(net: &Network) -> Self {
        Self::new(
            net.weights()
                .iter()
                .map(|w| Matrix::zeros(w.rows(), w.cols()))
                .collect(),
        )
    }

    pub fn depth(&self) -> usize {
        self.grads.len()
    }

    /// `∂J/∂W^h`, `h` in `1..=L`.
    pub fn layer(&self, h: usize) -> &Matrix {
        &self.grads[h - 1]
    }

    pub fn as_slice(&self) -> &[Matrix] {
        &self.grads
    }

    pub fn into_vec(self) -> Vec<Matrix> {
        self.grads
    }

    /// `alpha * a + b`, layer by layer.
    pub fn axpy(alpha: f64, a: &GradientSet, b: &GradientSet) -> Result<GradientSet> {
        if a.depth() != b.depth() {
            return Err(Error::LayerCount {
                expected: a.depth(),
                found: b.depth(),
            });
        }
        a.grads
            .iter()
            .zip(&b.grads)
            .map(|(x, y)| Matrix::axpy(alpha, x, y))
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn scale(&self, alpha: f64) -> GradientSet {
        Self::new(self.grads.iter().map(|g| g.scale(alpha)).collect())
    }
}

fn check_inputs(net: &Network, trace: &ForwardTrace, loss_grad: &ColumnVector) -> Result<()> {
    let depth = net.depth();
    if trace.depth() != depth {
        return Err(Error::LayerCount {
            expected: depth,
            found: trace.depth(),
        });
    }
    for h in 1..=depth {
        let w = net.weight(h);
        if w.cols() != trace.x(h - 1).dim() || w.rows() != trace.y(h).dim() {
            return Err(Error::InvalidArgument(format!(
                "trace layer {h} does not match W^{h} of shape {:?}",
                w.shape()
            )));
        }
    }
    if loss_grad.dim() != trace.output().dim() {
        return Err(Error::DimensionMismatch {
            op: "loss gradient",
            left: trace.output().shape(),
            right: loss_grad.shape(),
        });
    }
    Ok(())
}

/// Runs the two-step backward rule for layers `L, …, 1`, seeded with
/// `loss_grad = ∂J/∂X^L`.
pub fn two_step_backward(
    net: &Network,
    trace: &ForwardTrace,
    loss_grad: &ColumnVector,
) -> Result<(DeltaSet, GradientSet)> {
    check_inputs(net, trace, loss_grad)?;
    let depth = net.depth();
    let mut up = Vec::with_capacity(depth + 1);
    let mut down = Vec::with_capacity(depth);
    let mut grads = Vec::with_capacity(depth);

    let mut delta_up = loss_grad.clone();
    for h in (1..=depth).rev() {
        let delta_down = delta_up.hadamard(&net.activation(h).derivative(trace.y(h))?)?;
        grads.push(outer(&delta_down, trace.x(h - 1)));
        let next_up = if net.augmented() {
            net.weight(h)
                .drop_last_column()?
                .transpose()
                .matvec(&delta_down)?
        } else {
            net.weight(h).transpose().matvec(&delta_down)?
        };
        up.push(core::mem::replace(&mut delta_up, next_up));
        down.push(delta_down);
    }
    up.push(delta_up);

    up.reverse();
    down.reverse();
    grads.reverse();
    Ok((DeltaSet { up, down }, GradientSet::new(grads)))
}

/// Textbook backpropagation: `δ^L = ∂J/∂X^L ⊙ σ'(Y^L)`,
/// `δ^h = (W^{h+1})ᵀ δ^{h+1} ⊙ σ'(Y^h)`, `∂J/∂W^h = δ^h (X^{h-1})ᵀ`.
///
/// The bias column is skipped by index rather than by dropping it from the
/// matrix.
pub fn classical_backward(
    net: &Network,
    trace: &ForwardTrace,
    loss_grad: &ColumnVector,
) -> Result<GradientSet> {
    check_inputs(net, trace, loss_grad)?;
    let depth = net.depth();
    let mut grads: Vec<Matrix> = Vec::with_capacity(depth);

    let error_term = |h: usize, upstream: &[f64]| -> Vec<f64> {
        let kinds = net.activation(h).kinds();
        let y = trace.y(h).as_slice();
        (0..y.len())
            .map(|i| upstream[i] * kinds[i].derivative(y[i]))
            .collect()
    };

    let mut delta = error_term(depth, loss_grad.as_slice());
    for h in (1..=depth).rev() {
        let x_prev = trace.x(h - 1).as_slice();
        let mut data = Vec::with_capacity(delta.len() * x_prev.len());
        for &d in &delta {
            for &x in x_prev {
                data.push(d * x);
            }
        }
        grads.push(Matrix::new(delta.len(), x_prev.len(), data)?);

        if h > 1 {
            let w = net.weight(h);
            let genuine = trace.y(h - 1).dim();
            let mut back = Vec::with_capacity(genuine);
            for j in 0..genuine {
                let mut acc = 0.0;
                for (i, &d) in delta.iter().enumerate() {
                    acc += w.get(i, j) * d;
                }
                back.push(acc);
            }
            delta = error_term(h - 1, &back);
        }
    }
    grads.reverse();
    Ok(GradientSet::new(grads))
}

/// Gradient-descent step `W^h ← W^h - lr · ∂J/∂W^h`.
pub fn apply_gradients(net: &Network, grads: &GradientSet, lr: f64) -> Result<Network> {
    if !lr.is_finite() || lr < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "learning rate must be finite and non-negative, got {lr}"
        )));
    }
    if grads.depth() != net.depth() {
        return Err(Error::LayerCount {
            expected: net.depth(),
            found: grads.depth(),
        });
    }
    let mut updated = net.clone();
    for h in 1..=net.depth() {
        let w = Matrix::axpy(-lr, grads.layer(h), net.weight(h))?;
        *updated.weight_mut(h) = w;
    }
    Ok(updated)
}
