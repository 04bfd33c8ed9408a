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

//! Transpose.
//!
//! The general variant prepends a fresh column-sized register `D` and swaps it
//! with `C`: `sum a_ij |0>_D |i>_R |j>_C` becomes `sum a_ij |j>_D |i>_R |0>_C`,
//! which read as rows `D`, columns `R` is `A^T`. The square variant pads to a
//! square and swaps `R` with `C` directly. Neither needs post-selection.

use crate::circuit::{Circuit, Instruction, Step};
use crate::encoding::EncodedMatrix;
use crate::error::Result;
use crate::layout::{BasisPattern, RegisterLayout};
use crate::scalar::Real;
use crate::state::{decode_matrix, prepare_product_state, StatePart};

use super::{Algorithm, Prepared, RunReport};

pub fn transpose_circuit(n: usize, m: usize) -> Result<Circuit> {
    let layout = RegisterLayout::new([("D", m), ("R", n), ("C", m)])?;
    let steps = vec![Step::new("step2", "Phi_1").push(Instruction::RegisterSwap("D".into(), "C".into()))];
    Ok(Circuit::new(layout, steps))
}

pub fn transpose_square_circuit(side_qubits: usize) -> Result<Circuit> {
    let layout = RegisterLayout::new([("R", side_qubits), ("C", side_qubits)])?;
    let steps = vec![Step::new("step2", "Phi_1").push(Instruction::RegisterSwap("R".into(), "C".into()))];
    Ok(Circuit::new(layout, steps))
}

pub fn prepare_transpose<T: Real>(a: &EncodedMatrix<T>) -> Result<Prepared<T>> {
    let m = a.col_qubits();
    let initial = prepare_product_state(&[StatePart::zeros("D", m), a.state_part("R", "C")])?;
    Ok(Prepared {
        algorithm: Algorithm::Transpose,
        circuit: transpose_circuit(a.row_qubits(), m)?,
        initial,
        accept: BasisPattern::new().with("C", 0),
    })
}

pub fn prepare_transpose_square<T: Real>(a: &EncodedMatrix<T>) -> Result<Prepared<T>> {
    let sq = a.padded_square();
    let initial = prepare_product_state(&[sq.state_part("R", "C")])?;
    Ok(Prepared {
        algorithm: Algorithm::TransposeSquare,
        circuit: transpose_square_circuit(sq.row_qubits())?,
        initial,
        accept: BasisPattern::new(),
    })
}

fn report<T: Real>(
    prepared: &Prepared<T>,
    decode: impl FnOnce(&crate::state::StateVector<T>) -> Result<crate::matrix::Matrix<T>>,
) -> Result<RunReport<T>> {
    let (execution, selection) = prepared.execute(false)?;
    let output_matrix = selection.renormalized_state.as_ref().map(decode).transpose()?;
    Ok(RunReport {
        algorithm: prepared.algorithm,
        output_matrix,
        trace: None,
        normalization: None,
        success_probability: selection.probability,
        predicted_probability: T::one(),
        gate_tally: prepared.circuit.gate_tally()?,
        step_records: execution.records,
        checks: Vec::new(),
    })
}

/// Transposes `a`; the output has the padded shape `cols x rows`.
pub fn run_transpose<T: Real>(a: &EncodedMatrix<T>) -> Result<RunReport<T>> {
    let prepared = prepare_transpose(a)?;
    report(&prepared, |s| decode_matrix(s, "D", "R", &BasisPattern::new().with("C", 0)))
}

/// Transposes `a` through a square embedding; the output is cropped back to
/// the padded `cols x rows` shape.
pub fn run_transpose_square<T: Real>(a: &EncodedMatrix<T>) -> Result<RunReport<T>> {
    let prepared = prepare_transpose_square(a)?;
    let (rows, cols) = (a.rows(), a.cols());
    report(&prepared, |s| {
        decode_matrix(s, "R", "C", &BasisPattern::new()).map(|m| m.block(cols, rows))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode_matrix;
    use crate::matrix::Matrix;

    fn sample() -> EncodedMatrix<f64> {
        encode_matrix(&Matrix::from_real_rows(&[&[1.0, 2.0, 3.0, 4.0], &[5.0, 6.0, 7.0, 8.0]])).unwrap()
    }

    fn naive(m: &Matrix<f64>) -> Matrix<f64> {
        let mut t = Matrix::zeros(m.cols(), m.rows());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                t.set(j, i, m.get(i, j));
            }
        }
        t
    }

    #[test]
    fn rectangular() {
        let a = sample();
        let r = run_transpose(&a).unwrap();
        assert_eq!(r.success_probability, 1.0);
        assert_eq!(r.output_matrix.unwrap().max_abs_diff(&naive(a.matrix())), 0.0);
        assert_eq!(r.gate_tally.total.swap, 2);
        assert_eq!(r.gate_tally.total.toffoli, 0);
    }

    #[test]
    fn square_embedding() {
        let a = sample();
        let r = run_transpose_square(&a).unwrap();
        assert_eq!(r.success_probability, 1.0);
        assert_eq!(r.output_matrix.unwrap().max_abs_diff(&naive(a.matrix())), 0.0);
    }
}
