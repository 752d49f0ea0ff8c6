//! Per-sample gradient descent driven by the two-step backward pass.

use alloc::format;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{
    apply_gradients, two_step_backward, ColumnVector, Error, LossKind, Network, NetworkSpec, Result,
};

#[derive(Clone, Debug, PartialEq)]
pub struct TrainConfig {
    pub spec: NetworkSpec,
    pub loss: LossKind,
    pub learning_rate: f64,
    pub epochs: usize,
    pub seed: u64,
    pub init_scale: f64,
    pub shuffle: bool,
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.learning_rate.is_finite() && self.learning_rate >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "learning rate must be finite and non-negative, got {}",
                self.learning_rate
            )));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidArgument("epochs must be at least 1".into()));
        }
        Ok(())
    }
}

/// Paired inputs and targets.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    inputs: Vec<ColumnVector>,
    targets: Vec<ColumnVector>,
}

impl Dataset {
    pub fn new(inputs: Vec<ColumnVector>, targets: Vec<ColumnVector>) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::InvalidDataset("dataset is empty".into()));
        }
        if inputs.len() != targets.len() {
            return Err(Error::InvalidDataset(format!(
                "{} inputs but {} targets",
                inputs.len(),
                targets.len()
            )));
        }
        let (din, dout) = (inputs[0].dim(), targets[0].dim());
        for (row, (x, y)) in inputs.iter().zip(&targets).enumerate() {
            if x.dim() != din || y.dim() != dout {
                return Err(Error::InvalidDataset(format!(
                    "row {row} has shape ({}, {}), expected ({din}, {dout})",
                    x.dim(),
                    y.dim()
                )));
            }
        }
        Ok(Self { inputs, targets })
    }

    pub fn len(&self) -> usize {
        self.inputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty()
    }

    pub fn input_dim(&self) -> usize {
        self.inputs[0].dim()
    }

    pub fn target_dim(&self) -> usize {
        self.targets[0].dim()
    }

    pub fn sample(&self, i: usize) -> (&ColumnVector, &ColumnVector) {
        (&self.inputs[i], &self.targets[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ColumnVector, &ColumnVector)> + '_ {
        self.inputs.iter().zip(&self.targets)
    }

    pub fn check_against(&self, spec: &NetworkSpec) -> Result<()> {
        if self.input_dim() != spec.input_dim() || self.target_dim() != spec.output_dim() {
            return Err(Error::InvalidDataset(format!(
                "rows have {} inputs and {} targets, network expects {} and {}",
                self.input_dim(),
                self.target_dim(),
                spec.input_dim(),
                spec.output_dim()
            )));
        }
        Ok(())
    }
}

/// Trains a freshly initialised network and returns it together with the
/// mean per-sample loss of every epoch. Each sample's loss is measured
/// before its own update.
pub fn train(config: &TrainConfig, data: &Dataset) -> Result<(Network, Vec<f64>)> {
    config.validate()?;
    data.check_against(&config.spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut net = Network::init_with_rng(config.spec.clone(), &mut rng, config.init_scale)?;
    let mut order: Vec<usize> = (0..data.len()).collect();
    let mut history = Vec::with_capacity(config.epochs);

    for epoch in 0..config.epochs {
        if config.shuffle {
            order.shuffle(&mut rng);
        }
        let mut total = 0.0;
        for &sample in &order {
            let (x, y) = data.sample(sample);
            let trace = net.forward(x)?;
            let loss = config.loss.value(trace.output(), y)?;
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    sample,
                    value: loss,
                });
            }
            total += loss;
            let seed = config.loss.grad(trace.output(), y)?;
            let (_, grads) = two_step_backward(&net, &trace, &seed)?;
            net = apply_gradients(&net, &grads, config.learning_rate)?;
        }
        history.push(total / data.len() as f64);
    }
    Ok((net, history))
}
