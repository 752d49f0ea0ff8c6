//! Dense feedforward networks whose backward pass is written as the mirror
//! image of the forward pass.
//!
//! The forward pass alternates a linear step and a coordinate-wise
//! activation step:
//!
//! ```text
//! X^0 = x,   Y^h = W^h X^{h-1},   X^h = σ(Y^h),   h = 1..L
//! ```
//!
//! and the backward pass alternates the two matching adjoint steps:
//!
//! ```text
//! δ_up^L = ∂J/∂X^L,   δ_down^h = δ_up^h ⊙ σ'(Y^h),   δ_up^{h-1} = (W^h)ᵀ δ_down^h
//! ∂J/∂W^h = δ_down^h (X^{h-1})ᵀ
//! ```
//!
//! When the network carries its biases as a trailing constant-1 input
//! coordinate, `W^h` is replaced by `W^h` with its last column removed in
//! the `δ_up` step.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, CSV datasets
//! and the command line live in the companion `twostep` crate.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod activation;
pub mod backprop;
mod error;
pub mod loss;
pub mod matrix;
pub mod network;
pub mod trainer;
pub mod verification;

pub use activation::{ActivationColumn, ActivationKind};
pub use backprop::{apply_gradients, classical_backward, two_step_backward, DeltaSet, GradientSet};
pub use error::{Error, Result};
pub use loss::LossKind;
pub use matrix::{outer, ColumnVector, Matrix};
pub use network::{BiasMode, ForwardTrace, Network, NetworkSpec};
pub use trainer::{train, Dataset, TrainConfig};
pub use verification::{
    closed_form_a111, closed_form_a121, compare_gradients, finite_difference_gradients,
    GradCheckReport, LayerReport,
};
