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


//! JSON report bodies.

use num_complex::Complex;
use qmatops::{Algorithm, GateTally, MatrixFile, SampleSummary, StepRecord};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

#[derive(Debug, Serialize)]
pub struct Term {
    pub ket: String,
    pub amplitude: [f64; 2],
}

/// Nonzero basis terms of one intermediate state.
#[derive(Debug, Serialize)]
pub struct Branches {
    pub state: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Serialize)]
pub struct RunDocument {
    pub algorithm: Algorithm,
    pub input: Shape,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub frobenius_scale: f64,
    pub probability: f64,
    pub predicted_probability: f64,
    /// Normalized output with padding removed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixFile>,
    /// Output in the units of the input matrix.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restored_matrix: Option<MatrixFile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalization_g: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub restored_trace: Option<[f64; 2]>,
    pub gate_tally: GateTally,
    pub toffoli_equivalents: usize,
    pub steps: Vec<StepRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<(String, bool)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sampling: Option<SampleSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branches: Option<Vec<Branches>>,
}

pub fn pair(z: Complex<f64>) -> [f64; 2] {
    [z.re, z.im]
}
