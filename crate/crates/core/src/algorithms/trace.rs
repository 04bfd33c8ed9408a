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

//! Trace of a square matrix.
//!
//! Registers `R`, `C`, `A` (n qubits each), tags `B1`, `B2`. Qubit `j` of `A`
//! is set when qubit `j` of `R` equals qubit `j` of `C`, so `A = N - 1`
//! exactly on the diagonal. `B1` marks that, a Hadamard layer over `R C A`
//! sums the marked amplitudes into `|0>|0>|0>|1>_B1` with weight
//! `2^(-3n/2)`, and `B2` marks that single basis state for post-selection.

use num_complex::Complex;

use crate::circuit::{Circuit, Instruction, Step};
use crate::encoding::EncodedMatrix;
use crate::error::{Error, Result};
use crate::gates::{ControlledOp, Projector};
use crate::layout::{BasisPattern, RegisterLayout};
use crate::scalar::Real;
use crate::state::{prepare_product_state, StatePart, StateVector};

use super::{post_select, Algorithm, Prepared, RunReport};

pub fn trace_circuit(n: usize) -> Result<Circuit> {
    let layout = RegisterLayout::new([("R", n), ("C", n), ("A", n), ("B1", 1), ("B2", 1)])?;
    let mut mark = Step::new("step2", "Phi_1");
    for j in 0..n {
        for bit in [false, true] {
            mark = mark.push(Instruction::Controlled(ControlledOp::flip(
                Projector::identity().qubit("R", j, bit).qubit("C", j, bit),
                "A",
                j,
            )));
        }
    }
    let all_ones = (1usize << n) - 1;
    let steps = vec![
        mark,
        Step::new("step3", "Phi_2").push(Instruction::Controlled(ControlledOp::flip(
            Projector::identity().register("A", all_ones),
            "B1",
            0,
        ))),
        Step::new("step4", "Phi_3").push(Instruction::Hadamard(vec!["R".into(), "C".into(), "A".into()])),
        Step::new("step5", "Phi_4").push(Instruction::Controlled(ControlledOp::flip(
            Projector::identity()
                .register("R", 0)
                .register("C", 0)
                .register("A", 0)
                .register("B1", 1),
            "B2",
            0,
        ))),
    ];
    Ok(Circuit::new(layout, steps))
}

pub fn prepare_trace<T: Real>(s: &EncodedMatrix<T>) -> Result<Prepared<T>> {
    if s.original_rows() != s.original_cols() {
        return Err(Error::NotSquare {
            rows: s.original_rows(),
            cols: s.original_cols(),
        });
    }
    let n = s.row_qubits();
    let initial = prepare_product_state(&[
        s.state_part("R", "C"),
        StatePart::zeros("A", n),
        StatePart::zeros("B1", 1),
        StatePart::zeros("B2", 1),
    ])?;
    Ok(Prepared {
        algorithm: Algorithm::Trace,
        circuit: trace_circuit(n)?,
        initial,
        accept: BasisPattern::new().with("B2", 1),
    })
}

/// Checks a state after the marking step: every basis state carries
/// `A = XNOR(R, C)` with the untouched matrix entry, and nothing else is populated.
pub fn diagonal_marking_is_exact<T: Real>(marked: &StateVector<T>, s: &EncodedMatrix<T>) -> Result<bool> {
    let layout = marked.layout();
    let n = layout.width("A")?;
    let ones = (1usize << n) - 1;
    for (idx, amp) in marked.amplitudes().iter().enumerate() {
        let r = layout.extract("R", idx)?;
        let c = layout.extract("C", idx)?;
        let a = layout.extract("A", idx)?;
        let tags = layout.extract("B1", idx)? | layout.extract("B2", idx)?;
        let expected = !(r ^ c) & ones;
        let ok = if a == expected && tags == 0 {
            *amp == s.matrix().get(r, c) && ((a == ones) == (r == c))
        } else {
            amp.re == T::zero() && amp.im == T::zero()
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn run_trace<T: Real>(s: &EncodedMatrix<T>) -> Result<RunReport<T>> {
    let prepared = prepare_trace(s)?;
    let n = s.row_qubits();
    let mut marking_ok = false;
    let (final_state, records) = prepared.circuit.run_with(prepared.initial.clone(), |step, state| {
        if step.label == "step2" {
            marking_ok = diagonal_marking_is_exact(state, s)?;
        }
        Ok(())
    })?;
    let selection = post_select(&final_state, &prepared.accept)?;
    let useful = final_state.amplitude(&BasisPattern::new().with("B1", 1).with("B2", 1))?;
    let weight = T::from_f64_lossy(2.0).powi(3 * n as i32).sqrt();
    let trace: Complex<T> = useful * weight;

    let mut diagonal = Complex::new(T::zero(), T::zero());
    for i in 0..s.rows() {
        diagonal += s.matrix().get(i, i);
    }
    let predicted = diagonal.norm_sqr() / T::from_f64_lossy(2.0).powi(3 * n as i32);
    Ok(RunReport {
        algorithm: Algorithm::Trace,
        output_matrix: None,
        trace: Some(trace),
        normalization: None,
        success_probability: selection.probability,
        predicted_probability: predicted,
        gate_tally: prepared.circuit.gate_tally()?,
        step_records: records,
        checks: vec![("ancilla-marks-diagonal".to_owned(), marking_ok)],
    })
}
