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

//! The four matrix-operation circuits, ancilla post-selection and run reports.
//!
//! Every algorithm follows the same shape: build the initial product state,
//! tag useful and useless branches with ancillas through projector-controlled
//! flips, move data with (controlled) swaps, mix the tags with Hadamards and
//! finally post-select the ancillas on the accepting pattern.

mod row_add;
mod row_swap;
mod trace;
mod transpose;

pub use row_add::{prepare_row_add, row_add_circuit, run_row_add, row_add_probability};
pub use row_swap::{prepare_row_swap, row_swap_circuit, run_row_swap, ROW_SWAP_PROBABILITY};
pub use trace::{diagonal_marking_is_exact, prepare_trace, run_trace, trace_circuit};
pub use transpose::{
    prepare_transpose, prepare_transpose_square, run_transpose, run_transpose_square, transpose_circuit,
    transpose_square_circuit,
};

use num_complex::Complex;
use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::circuit::{Circuit, Execution, StepRecord};
use crate::error::Result;
use crate::layout::BasisPattern;
use crate::matrix::Matrix;
use crate::scalar::{czero, Real};
use crate::state::StateVector;
use crate::tally::GateTally;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    RowAdd,
    RowSwap,
    Trace,
    Transpose,
    TransposeSquare,
}

/// Outcome of projecting a state onto an ancilla pattern.
#[derive(Clone, Debug, PartialEq)]
pub struct PostSelection<T> {
    pub pattern: BasisPattern,
    pub probability: T,
    /// The projected branch scaled to unit norm; `None` when the branch is empty.
    pub renormalized_state: Option<StateVector<T>>,
}

/// Projects `state` onto `pattern`.
///
/// The probability is the matching mass over the total mass, accumulated in a
/// single pass. When all mass already matches, both sums see the same terms in
/// the same order, the ratio is exactly one and the state is returned unscaled.
pub fn post_select<T: Real>(state: &StateVector<T>, pattern: &BasisPattern) -> Result<PostSelection<T>> {
    let (mask, value) = pattern.resolve(state.layout())?;
    let mut matched = T::zero();
    let mut total = T::zero();
    for (idx, z) in state.amplitudes().iter().enumerate() {
        let p = z.norm_sqr();
        total += p;
        if idx & mask == value {
            matched += p;
        }
    }
    let probability = if total > T::zero() { matched / total } else { T::zero() };
    let renormalized_state = (matched > T::vanishing_mass()).then(|| {
        let inv = if matched == total { T::one() } else { T::one() / matched.sqrt() };
        let amps: Vec<Complex<T>> = state
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(idx, z)| if idx & mask == value { z * inv } else { czero() })
            .collect();
        StateVector::from_parts_unchecked(state.layout().clone(), amps)
    });
    Ok(PostSelection {
        pattern: pattern.clone(),
        probability,
        renormalized_state,
    })
}

/// Empirical acceptance frequency over `shots` seeded draws.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleSummary {
    pub shots: u64,
    pub accepted: u64,
    pub frequency: f64,
}

pub fn sample_post_selection(probability: f64, shots: u64, seed: u64) -> SampleSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coin = Bernoulli::new(probability.clamp(0.0, 1.0)).expect("probability clamped to [0, 1]");
    let accepted = (0..shots).filter(|_| coin.sample(&mut rng)).count() as u64;
    SampleSummary {
        shots,
        accepted,
        frequency: if shots == 0 { 0.0 } else { accepted as f64 / shots as f64 },
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport<T> {
    pub algorithm: Algorithm,
    /// Decoded result; `None` when post-selection has zero probability or the
    /// algorithm yields a scalar.
    pub output_matrix: Option<Matrix<T>>,
    /// Recovered trace, for the trace algorithm.
    pub trace: Option<Complex<T>>,
    /// Row-add renormalization `G` inferred from the measured probability.
    pub normalization: Option<T>,
    pub success_probability: T,
    pub predicted_probability: T,
    pub gate_tally: GateTally,
    pub step_records: Vec<StepRecord>,
    /// Named internal consistency checks evaluated during the run.
    pub checks: Vec<(String, bool)>,
}

/// A circuit bound to its initial state and accepting pattern.
#[derive(Clone, Debug)]
pub struct Prepared<T> {
    pub algorithm: Algorithm,
    pub circuit: Circuit,
    pub initial: StateVector<T>,
    pub accept: BasisPattern,
}

impl<T: Real> Prepared<T> {
    /// Runs the circuit and post-selects the final state.
    pub fn execute(&self, keep_states: bool) -> Result<(Execution<T>, PostSelection<T>)> {
        let execution = self.circuit.run(self.initial.clone(), keep_states)?;
        let selection = post_select(&execution.final_state, &self.accept)?;
        Ok((execution, selection))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layout::RegisterLayout;

    #[test]
    fn basis_state_projection() {
        let layout = RegisterLayout::new([("a", 1), ("b", 1)]).unwrap();
        let mut amps = vec![Complex::new(0.0, 0.0); 4];
        amps[2] = Complex::new(1.0, 0.0);
        let s = StateVector::from_amplitudes(layout, amps).unwrap();
        let hit = post_select(&s, &BasisPattern::new().with("a", 1).with("b", 0)).unwrap();
        assert_eq!(hit.probability, 1.0);
        let miss = post_select(&s, &BasisPattern::new().with("a", 0).with("b", 0)).unwrap();
        assert_eq!(miss.probability, 0.0);
        assert!(miss.renormalized_state.is_none());
    }

    #[test]
    fn uniform_half() {
        let layout = RegisterLayout::new([("q0", 1), ("q1", 1)]).unwrap();
        let s = StateVector::from_amplitudes(layout, vec![Complex::new(0.5f64, 0.0); 4]).unwrap();
        let sel = post_select(&s, &BasisPattern::new().with("q0", 0)).unwrap();
        assert!((sel.probability - 0.5).abs() < 1e-15);
        let kept = sel.renormalized_state.unwrap();
        assert!((kept.norm_sqr() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sampling_is_seeded() {
        let a = sample_post_selection(0.25, 10_000, 7);
        let b = sample_post_selection(0.25, 10_000, 7);
        assert_eq!(a, b);
        assert!((a.frequency - 0.25).abs() < 0.02);
        assert_eq!(sample_post_selection(0.0, 100, 1).accepted, 0);
    }
}
