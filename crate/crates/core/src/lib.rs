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


//! State-vector simulation of quantum circuits that perform elementary
//! matrix operations on amplitude-encoded matrices: adding one row to
//! another, swapping two rows, computing the trace and transposing.
//!
//! A matrix `A` is zero-padded to power-of-two dimensions, scaled to unit
//! Frobenius norm and loaded as `sum_ij a_ij |i>_R |j>_C`. Each algorithm is
//! a [`Circuit`] of projector-controlled flips and swaps, Hadamard layers and
//! register swaps, followed by post-selection of ancilla qubits.
//!
//! Global bit order is MSB-first: registers are concatenated in declaration
//! order with the first register most significant, and qubit 0 of a register
//! is its most significant bit.
//!
//! The numeric core is generic over [`Real`] (`f32`, `f64`); the aliases at
//! the crate root fix it to `f64`.

pub mod algorithms;
pub mod circuit;
pub mod complexity;
pub mod encoding;
pub mod error;
pub mod gates;
pub mod layout;
pub mod matrix;
pub mod matrix_file;
pub mod mcx;
pub mod oracle;
pub mod scalar;
pub mod state;
pub mod tally;
pub mod verification;
pub mod worked_example;

pub use algorithms::{
    post_select, run_row_add, run_row_swap, run_trace, run_transpose, run_transpose_square, sample_post_selection,
    Algorithm, PostSelection, Prepared, RunReport, SampleSummary,
};
pub use circuit::{Circuit, Execution, Instruction, Step, StepRecord};
pub use encoding::{encode_matrix, AncillaKind, AncillaVector, EncodedMatrix};
pub use error::{Error, Result};
pub use gates::{apply_controlled, apply_hadamard_layer, apply_register_swap, Action, ControlledOp, HadamardTarget, Projector};
pub use layout::{BasisPattern, QubitRef, RegisterId, RegisterLayout, MAX_QUBITS};
pub use matrix::Matrix;
pub use matrix_file::{format_matrix, parse_matrix, MatrixFile};
pub use complexity::{measure_scaling, Order, ScalingReport};
pub use mcx::{decompose_mcx, McxNetwork, NetGate, MAX_MCX_CONTROLS};
pub use oracle::OracleResult;
pub use scalar::{ComplexScalar, Real};
pub use state::{decode_matrix, prepare_product_state, StatePart, StateVector};
pub use tally::{tally_gates, GateCounts, GateTally, StepTally};
pub use verification::{run_suite, SuiteReport};

pub type Complex64 = num_complex::Complex<f64>;
pub type Complex32 = num_complex::Complex<f32>;
pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type StateVector64 = StateVector<f64>;
pub type StateVector32 = StateVector<f32>;
pub type EncodedMatrix64 = EncodedMatrix<f64>;
pub type RunReport64 = RunReport<f64>;
pub type PostSelection64 = PostSelection<f64>;
pub type OracleResult64 = OracleResult<f64>;
