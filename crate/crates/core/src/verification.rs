//! Independent gradient oracles and gradient comparison.
//!
//! * [`finite_difference_gradients`] perturbs each weight and re-runs the
//!   forward pass.
//! * [`closed_form_a111`] and [`closed_form_a121`] evaluate hand-derived
//!   gradient formulas for the two smallest biased networks, `A[1,1,1]` and
//!   `A[1,2,1]`, with the same activation on both layers and the cost
//!   `J = f(x) - y`. They touch no backward machinery at all.

use alloc::format;
use alloc::vec::Vec;

use crate::{ActivationKind, ColumnVector, Error, GradientSet, LossKind, Matrix, Network, Result};

/// Floor on the relative-error denominator.
pub const RELATIVE_FLOOR: f64 = 1e-12;

/// `|a - b| / max(|a|, |b|, 1e-12)`.
pub fn relative_error(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(RELATIVE_FLOOR)
}

/// Worst disagreement within one layer.
#[derive(Clone, Debug, PartialEq)]
pub struct LayerReport {
    /// 1-based layer index `h`.
    pub layer: usize,
    pub max_abs: f64,
    pub max_rel: f64,
    /// `(row, col)` of the largest relative error.
    pub at: (usize, usize),
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradCheckReport {
    pub layers: Vec<LayerReport>,
    pub tol: f64,
    pub pass: bool,
}

impl GradCheckReport {
    pub fn max_abs(&self) -> f64 {
        self.layers.iter().map(|l| l.max_abs).fold(0.0, f64::max)
    }

    pub fn max_rel(&self) -> f64 {
        self.layers.iter().map(|l| l.max_rel).fold(0.0, f64::max)
    }

    /// `(layer, row, col)` of the overall largest relative error.
    pub fn worst(&self) -> (usize, usize, usize) {
        let worst = self
            .layers
            .iter()
            .fold(None::<&LayerReport>, |best, l| match best {
                Some(b) if b.max_rel >= l.max_rel => Some(b),
                _ => Some(l),
            })
            .expect("report has at least one layer");
        (worst.layer, worst.at.0, worst.at.1)
    }

    /// Folds another report over the same architecture into this one,
    /// keeping the worst entry of each layer.
    pub fn merge(&mut self, other: &GradCheckReport) {
        for (mine, theirs) in self.layers.iter_mut().zip(&other.layers) {
            mine.max_abs = mine.max_abs.max(theirs.max_abs);
            if theirs.max_rel > mine.max_rel {
                mine.max_rel = theirs.max_rel;
                mine.at = theirs.at;
            }
            mine.pass = mine.max_rel <= self.tol;
        }
        self.pass = self.layers.iter().all(|l| l.pass);
    }
}

/// Compares two gradient sets entrywise. Passes iff the largest relative
/// error is at most `tol`.
pub fn compare_gradients(a: &GradientSet, b: &GradientSet, tol: f64) -> Result<GradCheckReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    if a.depth() != b.depth() || a.depth() == 0 {
        return Err(Error::LayerCount {
            expected: a.depth(),
            found: b.depth(),
        });
    }
    let mut layers = Vec::with_capacity(a.depth());
    for h in 1..=a.depth() {
        let (ga, gb) = (a.layer(h), b.layer(h));
        if ga.shape() != gb.shape() {
            return Err(Error::DimensionMismatch {
                op: "compare_gradients",
                left: ga.shape(),
                right: gb.shape(),
            });
        }
        let mut report = LayerReport {
            layer: h,
            max_abs: 0.0,
            max_rel: 0.0,
            at: (0, 0),
            pass: true,
        };
        for i in 0..ga.rows() {
            for j in 0..ga.cols() {
                let (x, y) = (ga.get(i, j), gb.get(i, j));
                report.max_abs = report.max_abs.max((x - y).abs());
                let rel = relative_error(x, y);
                // NaN compares false, so route it through explicitly.
                if rel > report.max_rel || rel.is_nan() {
                    report.max_rel = rel;
                    report.at = (i, j);
                }
            }
        }
        report.pass = report.max_rel <= tol;
        layers.push(report);
    }
    let pass = layers.iter().all(|l| l.pass);
    Ok(GradCheckReport { layers, tol, pass })
}

/// Central differences `(J(w + eps) - J(w - eps)) / 2eps` for every weight,
/// each from a fresh forward pass. `net` itself is never modified.
pub fn finite_difference_gradients(
    net: &Network,
    kind: LossKind,
    x: &ColumnVector,
    y: &ColumnVector,
    eps: f64,
) -> Result<GradientSet> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "eps must be positive, got {eps}"
        )));
    }
    let mut probe = net.clone();
    let cost = |probe: &Network| -> Result<f64> { kind.value(probe.forward(x)?.output(), y) };
    let mut grads = Vec::with_capacity(net.depth());
    for h in 1..=net.depth() {
        let (rows, cols) = net.weight(h).shape();
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let original = net.weight(h).get(i, j);
                probe.weight_mut(h).set(i, j, original + eps);
                let plus = cost(&probe)?;
                probe.weight_mut(h).set(i, j, original - eps);
                let minus = cost(&probe)?;
                probe.weight_mut(h).set(i, j, original);
                data.push((plus - minus) / (2.0 * eps));
            }
        }
        grads.push(Matrix::new(rows, cols, data)?);
    }
    Ok(GradientSet::new(grads))
}

fn expect_shape(name: &'static str, m: &Matrix, shape: (usize, usize)) -> Result<()> {
    if m.shape() != shape {
        return Err(Error::DimensionMismatch {
            op: name,
            left: shape,
            right: m.shape(),
        });
    }
    Ok(())
}

/// Hand-derived `(∂J/∂W^1, ∂J/∂W^2)` for the biased `A[1,1,1]` network
/// `W^1 = (α¹₁₁ α¹₁₂)`, `W^2 = (α²₁ α²₂)` with `J = f(x) - y`:
///
/// ```text
/// w¹    = α¹₁₁ x + α¹₁₂
/// δ_W²  = ( σ'[α²₁σ(w¹)+α²₂] σ(w¹),  σ'[α²₁σ(w¹)+α²₂] )
/// δ_W¹  = ( σ'[…] σ'(w¹) α²₁ x,      σ'[…] σ'(w¹) α²₁ )
/// ```
pub fn closed_form_a111(
    w1: &Matrix,
    w2: &Matrix,
    x: f64,
    act: ActivationKind,
) -> Result<(Matrix, Matrix)> {
    expect_shape("closed_form_a111 W^1", w1, (1, 2))?;
    expect_shape("closed_form_a111 W^2", w2, (1, 2))?;
    let (a11, a12) = (w1.get(0, 0), w1.get(0, 1));
    let (b1, b2) = (w2.get(0, 0), w2.get(0, 1));
    let s = |t| act.eval(t);
    let ds = |t| act.derivative(t);

    let w = a11 * x + a12;
    let outer = ds(b1 * s(w) + b2);

    let dw2 = Matrix::new(1, 2, alloc::vec![outer * s(w), outer])?;
    let dw1 = Matrix::new(
        1,
        2,
        alloc::vec![outer * ds(w) * b1 * x, outer * ds(w) * b1],
    )?;
    Ok((dw1, dw2))
}

/// Hand-derived `(∂J/∂W^1, ∂J/∂W^2)` for the biased `A[1,2,1]` network
/// with `W^1` 2×2 and `W^2 = (α²₁ α²₂ α²₃)`, `J = f(x) - y`:
///
/// ```text
/// wᵏ   = α¹ₖ₁ x + α¹ₖ₂,   k = 1, 2
/// s    = σ'[α²₁σ(w¹) + α²₂σ(w²) + α²₃]
/// δ_W² = ( s σ(w¹),  s σ(w²),  s )
/// δ_W¹ = [ α²₁ x σ'(w¹) s,  α²₁ σ'(w¹) s ]
///        [ α²₂ x σ'(w²) s,  α²₂ σ'(w²) s ]
/// ```
pub fn closed_form_a121(
    w1: &Matrix,
    w2: &Matrix,
    x: f64,
    act: ActivationKind,
) -> Result<(Matrix, Matrix)> {
    expect_shape("closed_form_a121 W^1", w1, (2, 2))?;
    expect_shape("closed_form_a121 W^2", w2, (1, 3))?;
    let s = |t| act.eval(t);
    let ds = |t| act.derivative(t);
    let (b1, b2, b3) = (w2.get(0, 0), w2.get(0, 1), w2.get(0, 2));

    let wa = w1.get(0, 0) * x + w1.get(0, 1);
    let wb = w1.get(1, 0) * x + w1.get(1, 1);
    let outer = ds(b1 * s(wa) + b2 * s(wb) + b3);

    let dw2 = Matrix::new(1, 3, alloc::vec![outer * s(wa), outer * s(wb), outer])?;
    let dw1 = Matrix::new(
        2,
        2,
        alloc::vec![
            b1 * x * ds(wa) * outer,
            b1 * ds(wa) * outer,
            b2 * x * ds(wb) * outer,
            b2 * ds(wb) * outer,
        ],
    )?;
    Ok((dw1, dw2))
}
