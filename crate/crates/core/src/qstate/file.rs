//! JSON state file:
//!
//! ```text
//! { "dim": 4, "matrix": [[[re, im], [re, im], [re, im], [re, im]], ...4 rows] }
//! ```
//!
//! Numbers are written in shortest round-trip form, so write → read is exact.

use serde::{Deserialize, Serialize};

use super::{make_density, DensityMatrix};
use crate::error::{Error, Result};
use crate::qlinalg::{ComplexMatrix, C64};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateFile {
    pub dim: usize,
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateFile {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let m = rho.matrix();
        let matrix = (0..4)
            .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
            .collect();
        Self { dim: 4, matrix }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.dim != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: self.dim });
        }
        if self.matrix.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, got: self.matrix.len() });
        }
        let mut entries = Vec::with_capacity(16);
        for row in &self.matrix {
            if row.len() != 4 {
                return Err(Error::DimensionMismatch { expected: 4, got: row.len() });
            }
            entries.extend(row.iter().map(|&[re, im]| C64::new(re, im)));
        }
        ComplexMatrix::from_row_major(4, &entries)
    }

    pub fn to_state(&self) -> Result<DensityMatrix> {
        make_density(self.to_matrix()?)
    }
}

pub fn parse_state_file(text: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_state()
}

pub fn write_state_file(rho: &DensityMatrix) -> String {
    let mut s = serde_json::to_string_pretty(&StateFile::from_state(rho)).expect("plain data serializes");
    s.push('\n');
    s
}
