//! CSV datasets: one sample per row, the first `N_0` columns are inputs and
//! the last `N_L` columns are targets. A first row that does not parse as
//! numbers is taken to be a header and skipped.

use std::path::Path;

use twostep_core::{ColumnVector, Dataset};

use crate::{Error, Result};

pub fn parse_csv(text: &str, input_dim: usize, target_dim: usize) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let width = input_dim + target_dim;
    let mut inputs = Vec::new();
    let mut targets = Vec::new();
    for (index, record) in reader.records().enumerate() {
        let record = record.map_err(|e| Error::Dataset(e.to_string()))?;
        let line = record.position().map_or(index + 1, |p| p.line() as usize);
        let values: std::result::Result<Vec<f64>, _> =
            record.iter().map(str::parse::<f64>).collect();
        let values = match values {
            Ok(v) => v,
            Err(_) if index == 0 => continue,
            Err(e) => return Err(Error::Dataset(format!("line {line}: {e}"))),
        };
        if values.len() != width {
            return Err(Error::Dataset(format!(
                "line {line}: expected {width} columns ({input_dim} inputs + {target_dim} targets), found {}",
                values.len()
            )));
        }
        let (x, y) = values.split_at(input_dim);
        inputs.push(ColumnVector::from_slice(x)?);
        targets.push(ColumnVector::from_slice(y)?);
    }
    Ok(Dataset::new(inputs, targets)?)
}

pub fn load_csv(path: &Path, input_dim: usize, target_dim: usize) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text, input_dim, target_dim)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_rows_with_and_without_header() {
        let plain = parse_csv("0,0,0\n0,1,1\n1,0,1\n1,1,0\n", 2, 1).unwrap();
        assert_eq!(plain.len(), 4);
        assert_eq!(plain.sample(1).0.as_slice(), &[0.0, 1.0]);
        assert_eq!(plain.sample(1).1.as_slice(), &[1.0]);

        let headed = parse_csv("a, b, y\n0.5, -1.25, 3e-1\n", 2, 1).unwrap();
        assert_eq!(headed.len(), 1);
        assert_eq!(headed.sample(0).1.as_slice(), &[0.3]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(parse_csv("1,2\n3,4,5\n", 1, 1).is_err());
        assert!(parse_csv("1,2\nx,4\n", 1, 1).is_err());
        assert!(parse_csv("x,y\n", 1, 1).is_err());
        assert!(parse_csv("", 1, 1).is_err());
    }
}
