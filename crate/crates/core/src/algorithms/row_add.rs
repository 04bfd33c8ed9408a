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

//! Adds row `k` to row `l`.
//!
//! Registers: `R1` (rows), `C1` (columns), `R2` (row selector holding
//! `(|k> + |l>)/sqrt2`), single-qubit tags `B1`, `B2`, `B3`. The accepting
//! branch `B1 B2 B3 = 000` holds `A'/G` where `A'` is `A` with row `l`
//! replaced by row `l` + row `k`, found with probability `G^2 / 8`.

use crate::circuit::{Circuit, Instruction, Step};
use crate::encoding::{AncillaKind, AncillaVector, EncodedMatrix};
use crate::error::Result;
use crate::gates::{ControlledOp, Projector};
use crate::layout::{BasisPattern, RegisterLayout};
use crate::scalar::Real;
use crate::state::{decode_matrix, prepare_product_state, StatePart};

use super::{Algorithm, Prepared, RunReport};

pub fn row_add_circuit(n: usize, m: usize, k: usize) -> Result<Circuit> {
    let layout = RegisterLayout::new([("R1", n), ("C1", m), ("R2", n), ("B1", 1), ("B2", 1), ("B3", 1)])?;
    let steps = vec![
        // tag the |k>_R2 half
        Step::new("step2", "Phi_1").push(Instruction::Controlled(ControlledOp::flip(
            Projector::identity().register("R2", k),
            "B1",
            0,
        ))),
        // in the |l>_R2 half keep only row k
        Step::new("step3", "Phi_2").push(Instruction::Controlled(ControlledOp::flip(
            Projector::identity().register("R1", k).register("B1", 0),
            "B2",
            0,
        ))),
        Step::new("step4", "Phi_3").push(Instruction::Controlled(ControlledOp::swap_registers(
            Projector::identity().register("B2", 1),
            "R1",
            "R2",
        ))),
        Step::new("step5", "Phi_4").push(Instruction::Controlled(ControlledOp::flip(
            Projector::identity().register("B1", 0).register("B2", 0),
            "B3",
            0,
        ))),
        Step::new("step6", "Phi_5").push(Instruction::Hadamard(vec!["B1".into(), "B2".into()])),
    ];
    Ok(Circuit::new(layout, steps))
}

pub fn prepare_row_add<T: Real>(a: &EncodedMatrix<T>, k: usize, l: usize) -> Result<Prepared<T>> {
    let selector = AncillaVector::new(AncillaKind::RowAdd, k, l, a.rows())?;
    let n = a.row_qubits();
    let circuit = row_add_circuit(n, a.col_qubits(), k)?;
    let initial = prepare_product_state(&[
        a.state_part("R1", "C1"),
        StatePart::new([("R2", n)], selector.amplitudes(n)),
        StatePart::zeros("B1", 1),
        StatePart::zeros("B2", 1),
        StatePart::zeros("B3", 1),
    ])?;
    Ok(Prepared {
        algorithm: Algorithm::RowAdd,
        circuit,
        initial,
        accept: BasisPattern::new().with("B1", 0).with("B2", 0).with("B3", 0),
    })
}

/// Closed form `(G^2 / 8, G)` for the normalized matrix `a`.
pub fn row_add_probability<T: Real>(a: &EncodedMatrix<T>, k: usize, l: usize) -> (T, T) {
    let m = a.matrix();
    let mut g2 = T::zero();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            g2 += if i == l {
                (m.get(k, j) + m.get(l, j)).norm_sqr()
            } else {
                m.get(i, j).norm_sqr()
            };
        }
    }
    (g2 / T::from_f64_lossy(8.0), g2.sqrt())
}

pub fn run_row_add<T: Real>(a: &EncodedMatrix<T>, k: usize, l: usize) -> Result<RunReport<T>> {
    let prepared = prepare_row_add(a, k, l)?;
    let (execution, selection) = prepared.execute(false)?;
    let (predicted, _) = row_add_probability(a, k, l);
    let output_matrix = selection
        .renormalized_state
        .as_ref()
        .map(|s| {
            decode_matrix(
                s,
                "R1",
                "C1",
                &BasisPattern::new().with("R2", k).with("B1", 0).with("B2", 0).with("B3", 0),
            )
        })
        .transpose()?;
    let normalization = output_matrix
        .as_ref()
        .map(|_| (selection.probability * T::from_f64_lossy(8.0)).sqrt());
    Ok(RunReport {
        algorithm: Algorithm::RowAdd,
        output_matrix,
        trace: None,
        normalization,
        success_probability: selection.probability,
        predicted_probability: predicted,
        gate_tally: prepared.circuit.gate_tally()?,
        step_records: execution.records,
        checks: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode_matrix;
    use crate::error::Error;
    use crate::matrix::Matrix;
    use num_complex::Complex;

    #[test]
    fn identity_example() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = encode_matrix(&Matrix::<f64>::from_real_rows(&[&[h, 0.0], &[0.0, h]])).unwrap();
        let report = run_row_add(&a, 0, 1).unwrap();
        // G^2 = 1/2 + 1/2 + 1/2 by direct evaluation
        assert!((report.success_probability - 3.0 / 16.0).abs() < 1e-12);
        let g = 1.5f64.sqrt();
        let expected = Matrix::<f64>::from_real_rows(&[&[h / g, 0.0], &[h / g, h / g]]);
        assert!(report.output_matrix.unwrap().max_abs_diff(&expected) < 1e-12);
        assert!((report.normalization.unwrap() - g).abs() < 1e-12);
    }

    #[test]
    fn zero_source_row_changes_nothing() {
        let a = encode_matrix(&Matrix::<f64>::from_real_rows(&[&[0.0, 0.0], &[0.6, 0.8]])).unwrap();
        let report = run_row_add(&a, 0, 1).unwrap();
        assert!((report.success_probability - 0.125).abs() < 1e-12);
        assert!(report.output_matrix.unwrap().max_abs_diff(a.matrix()) < 1e-12);
    }

    #[test]
    fn cancelling_rows() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = encode_matrix(&Matrix::<f64>::from_real_rows(&[&[h, 0.0], &[-h, 0.0]])).unwrap();
        let report = run_row_add(&a, 0, 1).unwrap();
        assert!((report.success_probability - 1.0 / 16.0).abs() < 1e-12);
        let out = report.output_matrix.unwrap();
        assert!(out.get(1, 0).norm() < 1e-12);
        assert!((out.get(0, 0) - Complex::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_equal_rows() {
        let a = encode_matrix(&Matrix::<f64>::from_real_rows(&[&[1.0, 0.0], &[0.0, 1.0]])).unwrap();
        assert_eq!(run_row_add(&a, 1, 1).unwrap_err(), Error::EqualRows(1));
        assert!(matches!(run_row_add(&a, 0, 2), Err(Error::RowOutOfRange { .. })));
    }
}
