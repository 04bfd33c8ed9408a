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

use thiserror::Error;

/// Every rejection raised by the simulator, the gate kit and the algorithm drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("register `{0}` is declared more than once")]
    DuplicateRegister(String),
    #[error("register `{0}` must have width >= 1")]
    EmptyRegister(String),
    #[error("layout needs {requested} qubits, capacity is {capacity}")]
    CapacityExceeded { requested: usize, capacity: usize },
    #[error("unknown register `{0}`")]
    UnknownRegister(String),
    #[error("value {value} does not fit in register `{register}` of width {width}")]
    ValueOutOfRange {
        register: String,
        value: usize,
        width: usize,
    },
    #[error("qubit {index} is outside register `{register}` of width {width}")]
    QubitOutOfRange {
        register: String,
        index: usize,
        width: usize,
    },
    #[error("qubit {index} of register `{register}` is referenced more than once")]
    RepeatedQubit { register: String, index: usize },
    #[error("target qubit {index} of register `{register}` is also a control")]
    ControlTargetOverlap { register: String, index: usize },
    #[error("registers `{a}` (width {width_a}) and `{b}` (width {width_b}) differ in width")]
    WidthMismatch {
        a: String,
        width_a: usize,
        b: String,
        width_b: usize,
    },
    #[error("register `{0}` cannot be swapped with itself")]
    SelfSwap(String),
    #[error("amplitude table of length {actual} does not match {expected} basis states")]
    TableLength { expected: usize, actual: usize },
    #[error("squared norm {norm_sqr} is not 1")]
    NotNormalized { norm_sqr: f64 },
    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },
    #[error("matrix has no nonzero entry and cannot be normalized")]
    ZeroMatrix,
    #[error("matrix must have at least one row and one column")]
    EmptyMatrix,
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {actual}")]
    ShapeMismatch {
        rows: usize,
        cols: usize,
        expected: usize,
        actual: usize,
    },
    #[error("matrix is {rows}x{cols}; a square matrix is required")]
    NotSquare { rows: usize, cols: usize },
    #[error("row index {index} is out of range for {rows} rows")]
    RowOutOfRange { index: usize, rows: usize },
    #[error("row indices must differ (k = l = {0})")]
    EqualRows(usize),
    #[error("register `{0}` is neither decoded nor pinned")]
    UnpinnedRegister(String),
    #[error("{mass:e} of probability mass lies outside the decoded subspace")]
    DecodeLeak { mass: f64 },
    #[error("multi-controlled X needs between 1 and {max} controls, got {got}")]
    ControlCount { got: usize, max: usize },
    #[error("polarity list has {got} entries for {expected} controls")]
    PolarityLength { expected: usize, got: usize },
    #[error("dense construction is limited to {max} qubits, got {got}")]
    DenseTooLarge { got: usize, max: usize },
    #[error("gate trace is empty")]
    EmptyTrace,
    #[error("scaling needs at least two widths")]
    TooFewWidths,
    #[error("width {width} exceeds the cap of {cap}")]
    WidthCap { width: usize, cap: usize },
    #[error("repeated width {0} in scaling series")]
    RepeatedWidth(usize),
    #[error("state layout does not match the circuit layout")]
    LayoutMismatch,
    #[error("malformed matrix file: {0}")]
    MatrixFile(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
