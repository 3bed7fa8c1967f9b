use std::fs;
use std::io::Read;
use std::path::Path;

use serde::Deserialize;
use subentropy::{DensityMatrix, Spectrum};

use crate::CliError;

/// The JSON input document. `im` may be omitted for a real matrix.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InputDocument {
    Spectrum {
        values: Vec<f64>,
    },
    DensityMatrix {
        re: Vec<Vec<f64>>,
        #[serde(default)]
        im: Option<Vec<Vec<f64>>>,
    },
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Parse(format!("invalid input document: {e}")))
    }

    /// Validates the payload and returns its spectrum.
    pub fn spectrum(&self) -> Result<Spectrum, CliError> {
        let s = match self {
            InputDocument::Spectrum { values } => Spectrum::new(values.clone()),
            InputDocument::DensityMatrix { re, im } => {
                DensityMatrix::from_parts(re, im.as_deref()).map(|m| m.eigenvalues())
            }
        };
        s.map_err(CliError::Validation)
    }
}

/// Reads and validates an input file; `-` means stdin.
pub fn load(path: &Path) -> Result<Spectrum, CliError> {
    let text = if path.as_os_str() == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
        buf
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("cannot read {}: {e}", path.display())))?
    };
    InputDocument::parse(&text)?.spectrum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_kinds_parse() {
        let a = InputDocument::parse(r#"{"kind":"spectrum","values":[0.7,0.3]}"#).unwrap();
        assert_eq!(a.spectrum().unwrap().values(), &[0.7, 0.3]);
        let b = InputDocument::parse(r#"{"kind":"density_matrix","re":[[0.5,0.2],[0.2,0.5]]}"#)
            .unwrap();
        let v = b.spectrum().unwrap();
        assert!((v.values()[0] - 0.7).abs() < 1e-14);
    }

    #[test]
    fn mismatched_payload_rejected() {
        assert!(InputDocument::parse(r#"{"kind":"spectrum","re":[[1.0]]}"#).is_err());
        assert!(
            InputDocument::parse(r#"{"kind":"spectrum","values":[1.0],"re":[[1.0]]}"#).is_err()
        );
        assert!(InputDocument::parse(r#"{"kind":"operator","values":[1.0]}"#).is_err());
    }
}
