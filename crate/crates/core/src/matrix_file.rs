// Copyright 2026 The qmatops Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


//! JSON matrix files.
//!
//! ```json
//! { "rows": 2, "cols": 2, "data": [0.5, [0, 0.5], -0.5, 0.5] }
//! ```
//!
//! `data` is row-major; each entry is a real number or an `[re, im]` pair.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Complex<f64>> for Entry {
    fn from(z: Complex<f64>) -> Self {
        if z.im == 0.0 {
            Entry::Real(z.re)
        } else {
            Entry::Complex([z.re, z.im])
        }
    }
}

impl From<Entry> for Complex<f64> {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Real(re) => Complex::new(re, 0.0),
            Entry::Complex([re, im]) => Complex::new(re, im),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Entry>,
}

impl MatrixFile {
    pub fn from_matrix<T: Real>(m: &Matrix<T>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            data: m
                .as_slice()
                .iter()
                .map(|z| Complex::new(z.re.to_f64_lossy(), z.im.to_f64_lossy()).into())
                .collect(),
        }
    }

    pub fn to_matrix<T: Real>(&self) -> Result<Matrix<T>> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        let data: Vec<Complex<f64>> = self.data.iter().map(|&e| e.into()).collect();
        Ok(Matrix::from_vec(self.rows, self.cols, data)?.cast())
    }
}

pub fn parse_matrix<T: Real>(text: &str) -> Result<Matrix<T>> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::MatrixFile(e.to_string()))?;
    file.to_matrix()
}

/// Pretty-printed JSON, terminated by a newline.
pub fn format_matrix<T: Real>(m: &Matrix<T>) -> String {
    let mut s = serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("matrix file serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_entries() {
        let m: Matrix<f64> = parse_matrix(r#"{"rows":1,"cols":2,"data":[1.5,[0,-2]]}"#).unwrap();
        assert_eq!(m.get(0, 0), Complex::new(1.5, 0.0));
        assert_eq!(m.get(0, 1), Complex::new(0.0, -2.0));
    }

    #[test]
    fn round_trip() {
        let m = Matrix::from_vec(2, 1, vec![Complex::new(0.25, 0.0), Complex::new(-1.0, 3.0)]).unwrap();
        let back: Matrix<f64> = parse_matrix(&format_matrix(&m)).unwrap();
        assert_eq!(back, m);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(matches!(parse_matrix::<f64>("{"), Err(Error::MatrixFile(_))));
        assert!(matches!(
            parse_matrix::<f64>(r#"{"rows":2,"cols":2,"data":[1,2,3]}"#),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            parse_matrix::<f64>(r#"{"rows":1,"cols":1,"data":[[1,2,3]]}"#),
            Err(Error::MatrixFile(_))
        ));
        assert_eq!(parse_matrix::<f64>(r#"{"rows":0,"cols":0,"data":[]}"#).unwrap_err(), Error::EmptyMatrix);
    }
}
