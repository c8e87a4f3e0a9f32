//! Matrix JSON format: `{"n": 3, "entries": [[re, im], ...]}`, row-major.

use serde::{Deserialize, Serialize};

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct MatrixFile {
    n: usize,
    entries: Vec<[f64; 2]>,
}

impl ComplexMatrix {
    pub fn from_json(text: &str) -> Result<Self> {
        let file: MatrixFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.entries.len() != file.n * file.n {
            return Err(Error::Parse(format!(
                "expected {} entries for n = {}, found {}",
                file.n * file.n,
                file.n,
                file.entries.len()
            )));
        }
        let data = file.entries.iter().map(|&[re, im]| C64::new(re, im)).collect();
        Self::from_vec(file.n, data)
    }

    pub fn to_json(&self) -> String {
        let file = MatrixFile {
            n: self.dim(),
            entries: self.as_slice().iter().map(|z| [z.re, z.im]).collect(),
        };
        serde_json::to_string(&file).expect("matrix serialisation cannot fail")
    }
}
