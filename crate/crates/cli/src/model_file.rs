//! JSON model files.
//!
//! ```json
//! {
//!   "sizes": [1, 1, 1],
//!   "bias_mode": "augmented",
//!   "hidden_activation": "identity",
//!   "output_activation": "identity",
//!   "weights": [[[0.5, 0.1]], [[2.0, -1.0]]]
//! }
//! ```
//!
//! `weights[h - 1]` is `W^h` as a list of rows. Loading re-validates every
//! shape against `sizes` and `bias_mode`.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use twostep_core::{ActivationKind, BiasMode, Matrix, Network, NetworkSpec};

use crate::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    sizes: Vec<usize>,
    bias_mode: String,
    hidden_activation: String,
    output_activation: String,
    weights: Vec<Vec<Vec<f64>>>,
}

pub fn to_json(net: &Network) -> Result<String> {
    if !net.has_spec_activations() {
        return Err(Error::Model(
            "per-coordinate activation overrides cannot be stored in a model file".into(),
        ));
    }
    if !net.weights().iter().all(Matrix::is_finite) {
        return Err(Error::Model("refusing to write non-finite weights".into()));
    }
    let spec = net.spec();
    let file = ModelFile {
        sizes: spec.sizes().to_vec(),
        bias_mode: spec.bias_mode().name().into(),
        hidden_activation: spec.hidden_activation().name().into(),
        output_activation: spec.output_activation().name().into(),
        weights: net
            .weights()
            .iter()
            .map(|w| w.iter_rows().map(<[f64]>::to_vec).collect())
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&file).map_err(|e| Error::Model(e.to_string()))?;
    text.push('\n');
    Ok(text)
}

pub fn from_json(text: &str) -> Result<Network> {
    let file: ModelFile = serde_json::from_str(text).map_err(|e| Error::Model(e.to_string()))?;
    let spec = NetworkSpec::new(
        file.sizes,
        file.hidden_activation.parse::<ActivationKind>()?,
        file.output_activation.parse::<ActivationKind>()?,
        file.bias_mode.parse::<BiasMode>()?,
    )?;
    let weights = file
        .weights
        .iter()
        .enumerate()
        .map(|(i, rows)| {
            Matrix::from_rows(rows).map_err(|e| Error::Model(format!("weights[{i}]: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Network::from_weights(spec, weights)?)
}

/// Writes the model to a temporary file next to `path`, then renames it
/// into place.
pub fn save(path: &Path, net: &Network) -> Result<()> {
    let text = to_json(net)?;
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    tmp.write_all(text.as_bytes())
        .and_then(|()| tmp.as_file().sync_all())
        .map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn load(path: &Path) -> Result<Network> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    from_json(&text)
}
