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

//! Exchanges rows `k` and `l`.
//!
//! Registers: `R1`, `C1` (matrix), `R2`, `C2` (selector
//! `(|l>|k> + |k>|k> + |l>|l>)/sqrt3`), tags `B1`, `B2` (two qubits), `B3`.
//!
//! The `|l,k>` branch keeps every row except `k` and `l`; the `|k,k>` branch
//! keeps row `l` and the `|l,l>` branch keeps row `k`. Controlled swaps move
//! the two kept rows into place and re-label their selector registers as
//! `|l,k>`. After Hadamards on `B1 B2` the accepting branch
//! `B1 = 0, B2 = 00, B3 = 1` holds the swapped matrix with amplitude
//! `1/sqrt(24)`.

use crate::circuit::{Circuit, Instruction, Step};
use crate::encoding::{AncillaKind, AncillaVector, EncodedMatrix};
use crate::error::Result;
use crate::gates::{ControlledOp, Projector};
use crate::layout::{BasisPattern, RegisterLayout};
use crate::scalar::Real;
use crate::state::{decode_matrix, prepare_product_state, StatePart};

use super::{Algorithm, Prepared, RunReport};

pub const ROW_SWAP_PROBABILITY: f64 = 1.0 / 24.0;

fn tag_pattern(b1: bool, b2_0: bool, b2_1: bool) -> Projector {
    Projector::identity()
        .qubit("B1", 0, b1)
        .qubit("B2", 0, b2_0)
        .qubit("B2", 1, b2_1)
}

pub fn row_swap_circuit(n: usize, m: usize, k: usize, l: usize) -> Result<Circuit> {
    let layout = RegisterLayout::new([
        ("R1", n),
        ("C1", m),
        ("R2", n),
        ("C2", n),
        ("B1", 1),
        ("B2", 2),
        ("B3", 1),
    ])?;
    let flip = |p: Projector, reg: &str, q: usize| Instruction::Controlled(ControlledOp::flip(p, reg, q));
    let steps = vec![
        Step::new("step2", "Phi_1").push(flip(Projector::identity().register("R2", l).register("C2", k), "B1", 0)),
        Step::new("step3", "Phi_2")
            .push_tagged("W1", flip(Projector::identity().register("R1", k).register("R2", l), "B2", 0))
            .push_tagged("W2", flip(Projector::identity().register("R1", l).register("C2", k), "B2", 1)),
        Step::new("step4", "Phi_3")
            .push_tagged(
                "W1",
                Instruction::Controlled(ControlledOp::swap_registers(
                    Projector::identity().qubit("B2", 0, true),
                    "R1",
                    "C2",
                )),
            )
            .push_tagged(
                "W2",
                Instruction::Controlled(ControlledOp::swap_registers(
                    Projector::identity().qubit("B2", 1, true),
                    "R1",
                    "R2",
                )),
            ),
        Step::new("step5", "Phi_4")
            .push_tagged("V1", flip(tag_pattern(true, false, false), "B3", 0))
            .push_tagged("V2", flip(tag_pattern(false, false, true), "B3", 0))
            .push_tagged("V3", flip(tag_pattern(false, true, false), "B3", 0)),
        Step::new("step6", "Phi_5").push(Instruction::Hadamard(vec!["B1".into(), "B2".into()])),
    ];
    Ok(Circuit::new(layout, steps))
}

pub fn prepare_row_swap<T: Real>(a: &EncodedMatrix<T>, k: usize, l: usize) -> Result<Prepared<T>> {
    let selector = AncillaVector::new(AncillaKind::RowSwap, k, l, a.rows())?;
    let n = a.row_qubits();
    let circuit = row_swap_circuit(n, a.col_qubits(), k, l)?;
    let initial = prepare_product_state(&[
        a.state_part("R1", "C1"),
        StatePart::new([("R2", n), ("C2", n)], selector.amplitudes(n)),
        StatePart::zeros("B1", 1),
        StatePart::zeros("B2", 2),
        StatePart::zeros("B3", 1),
    ])?;
    Ok(Prepared {
        algorithm: Algorithm::RowSwap,
        circuit,
        initial,
        accept: BasisPattern::new().with("B1", 0).with("B2", 0).with("B3", 1),
    })
}

pub fn run_row_swap<T: Real>(a: &EncodedMatrix<T>, k: usize, l: usize) -> Result<RunReport<T>> {
    let prepared = prepare_row_swap(a, k, l)?;
    let (execution, selection) = prepared.execute(false)?;
    let output_matrix = selection
        .renormalized_state
        .as_ref()
        .map(|s| {
            decode_matrix(
                s,
                "R1",
                "C1",
                &BasisPattern::new()
                    .with("R2", l)
                    .with("C2", k)
                    .with("B1", 0)
                    .with("B2", 0)
                    .with("B3", 1),
            )
        })
        .transpose()?;
    Ok(RunReport {
        algorithm: Algorithm::RowSwap,
        output_matrix,
        trace: None,
        normalization: None,
        success_probability: selection.probability,
        predicted_probability: T::from_f64_lossy(ROW_SWAP_PROBABILITY),
        gate_tally: prepared.circuit.gate_tally()?,
        step_records: execution.records,
        checks: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::encode_matrix;
    use crate::matrix::Matrix;

    #[test]
    fn swaps_two_by_two() {
        let a = encode_matrix(&Matrix::<f64>::from_real_rows(&[&[0.6, 0.0], &[0.0, 0.8]])).unwrap();
        let report = run_row_swap(&a, 0, 1).unwrap();
        assert!((report.success_probability - 1.0 / 24.0).abs() < 1e-12);
        let expected = Matrix::<f64>::from_real_rows(&[&[0.0, 0.8], &[0.6, 0.0]]);
        assert!(report.output_matrix.unwrap().max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn order_of_k_and_l_is_irrelevant() {
        let a = encode_matrix(&Matrix::<f64>::from_real_rows(&[
            &[1.0, 2.0],
            &[3.0, 4.0],
            &[5.0, 6.0],
            &[7.0, 8.0],
        ]))
        .unwrap();
        let x = run_row_swap(&a, 1, 3).unwrap().output_matrix.unwrap();
        let y = run_row_swap(&a, 3, 1).unwrap().output_matrix.unwrap();
        assert!(x.max_abs_diff(&y) < 1e-14);
    }
}
