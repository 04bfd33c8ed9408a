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


//! A fully worked row swap on a 4x4 matrix.
//!
//! Rows 3 and 1 (zero-based) of the matrix below are exchanged. The listed
//! branch amplitudes of every intermediate state are kept in the units of the
//! unnormalized matrix (sixteenths), so a simulated amplitude is compared
//! after multiplying it back by the Frobenius scale `sqrt(258) / 16`.

use num_complex::Complex;
use serde::Serialize;

use crate::algorithms::{post_select, prepare_row_swap};
use crate::encoding::encode_matrix;
use crate::error::Result;
use crate::layout::BasisPattern;
use crate::matrix::Matrix;
use crate::state::StateVector;

pub const WORKED_K: usize = 3;
pub const WORKED_L: usize = 1;

const SIXTEENTHS: [[f64; 4]; 4] = [[4.0, 1.0, 3.0, 3.0], [0.0, 8.0, 2.0, 2.0], [7.0, 0.0, 4.0, 0.0], [3.0, 3.0, 2.0, 8.0]];

/// The example matrix as written, before normalization.
pub fn worked_matrix() -> Matrix<f64> {
    let rows: Vec<Vec<f64>> = SIXTEENTHS.iter().map(|r| r.iter().map(|x| x / 16.0).collect()).collect();
    let refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_real_rows(&refs)
}

/// One listed basis term: register values in layout order
/// `R1 C1 R2 C2 B1 B2 B3`, and its amplitude.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ListedTerm {
    pub values: [usize; 7],
    pub amplitude: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ListedState {
    pub name: &'static str,
    /// True when the listing covers the whole state; otherwise only the
    /// useful branches are listed and the rest is unspecified garbage.
    pub complete: bool,
    pub terms: Vec<ListedTerm>,
}

/// Row `r1` written out over the four column values.
fn row_terms(r1: usize, entries: [f64; 4], coef: f64, rest: [usize; 5]) -> impl Iterator<Item = ListedTerm> {
    (0..4).map(move |c1| ListedTerm {
        values: [r1, c1, rest[0], rest[1], rest[2], rest[3], rest[4]],
        amplitude: coef * entries[c1] / 16.0,
    })
}

/// Branch amplitudes as listed in the walkthrough, transcribed state by state.
pub fn listed_states() -> Vec<ListedState> {
    let s3 = 1.0 / 3f64.sqrt();
    let psi1 = [4.0, 1.0, 3.0, 3.0];
    let psi2 = [3.0, 3.0, 2.0, 8.0];
    let psi3 = [7.0, 0.0, 4.0, 0.0];
    let psi4 = [0.0, 8.0, 2.0, 2.0];
    // initial encoding, row by row
    let a = [psi1, psi4, psi3, psi2];

    let full = |b1_for_lk: usize| {
        let mut terms = Vec::new();
        for (r2, c2, b1) in [(1, 3, b1_for_lk), (3, 3, 0), (1, 1, 0)] {
            for (r1, row) in a.iter().enumerate() {
                terms.extend(row_terms(r1, *row, s3, [r2, c2, b1, 0, 0]));
            }
        }
        terms
    };

    let mut phi2 = Vec::new();
    phi2.extend(row_terms(0, psi1, s3, [1, 3, 1, 0, 0]));
    phi2.extend(row_terms(2, psi3, s3, [1, 3, 1, 0, 0]));
    phi2.extend(row_terms(3, psi2, s3, [1, 1, 0, 2, 0]));
    phi2.extend(row_terms(1, psi4, s3, [3, 3, 0, 1, 0]));

    let after_swaps = |b3: usize| {
        let mut terms = Vec::new();
        terms.extend(row_terms(0, psi1, s3, [1, 3, 1, 0, b3]));
        terms.extend(row_terms(2, psi3, s3, [1, 3, 1, 0, b3]));
        terms.extend(row_terms(1, psi2, s3, [1, 3, 0, 2, b3]));
        terms.extend(row_terms(3, psi4, s3, [1, 3, 0, 1, b3]));
        terms
    };

    let mixed = 1.0 / (8f64.sqrt() * 3f64.sqrt());
    let mut phi5 = Vec::new();
    for (r1, row) in [psi1, psi2, psi3, psi4].iter().enumerate() {
        phi5.extend(row_terms(r1, *row, mixed, [1, 3, 0, 0, 1]));
    }

    let mut phi6 = Vec::new();
    for (r1, row) in [psi1, psi2, psi3, psi4].iter().enumerate() {
        phi6.extend(row_terms(r1, *row, 1.0, [1, 3, 0, 0, 1]));
    }

    vec![
        ListedState { name: "Phi_0", complete: true, terms: full(0) },
        ListedState { name: "Phi_1", complete: true, terms: full(1) },
        ListedState { name: "Phi_2", complete: false, terms: phi2 },
        ListedState { name: "Phi_3", complete: false, terms: after_swaps(0) },
        ListedState { name: "Phi_4", complete: false, terms: after_swaps(1) },
        ListedState { name: "Phi_5", complete: false, terms: phi5 },
        ListedState { name: "Phi_6", complete: true, terms: phi6 },
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermComparison {
    pub ket: String,
    pub listed: f64,
    /// Simulated amplitude times the Frobenius scale.
    pub simulated: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateComparison {
    pub name: &'static str,
    pub complete: bool,
    pub terms: Vec<TermComparison>,
    pub max_abs_error: f64,
    /// Simulated mass outside the listed terms, in normalized units.
    pub unlisted_mass: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Replay {
    pub frobenius_scale: f64,
    pub probability: f64,
    pub states: Vec<StateComparison>,
}

impl Replay {
    /// Every listed amplitude is reproduced within `tol`, and complete
    /// listings leave no simulated mass unaccounted for.
    pub fn agrees(&self, tol: f64) -> bool {
        self.states
            .iter()
            .all(|s| s.max_abs_error <= tol && (!s.complete || s.unlisted_mass <= tol))
    }
}

fn compare(name: &'static str, complete: bool, listed: &[ListedTerm], state: &StateVector<f64>, scale: f64) -> Result<StateComparison> {
    let layout = state.layout();
    let regs: Vec<String> = layout.registers().map(|(r, _)| r.as_str().to_owned()).collect();
    let mut terms = Vec::with_capacity(listed.len());
    let mut max_abs_error: f64 = 0.0;
    let mut listed_mass = 0.0;
    for t in listed {
        let pattern: BasisPattern = regs.iter().cloned().zip(t.values).collect();
        let (_, index) = pattern.resolve(layout)?;
        let z = state.amplitudes()[index] * scale;
        max_abs_error = max_abs_error.max((z - Complex::new(t.amplitude, 0.0)).norm());
        listed_mass += state.amplitudes()[index].norm_sqr();
        terms.push(TermComparison {
            ket: layout.ket_label(index),
            listed: t.amplitude,
            simulated: [z.re, z.im],
        });
    }
    Ok(StateComparison {
        name,
        complete,
        terms,
        max_abs_error,
        unlisted_mass: (state.norm_sqr() - listed_mass).abs(),
    })
}

/// Runs the example and lines every simulated state up against its listing.
pub fn replay() -> Result<Replay> {
    let encoded = encode_matrix(&worked_matrix())?;
    let scale = encoded.frobenius_scale();
    let prepared = prepare_row_swap(&encoded, WORKED_K, WORKED_L)?;
    let execution = prepared.circuit.run(prepared.initial.clone(), true)?;
    let selection = post_select(&execution.final_state, &prepared.accept)?;
    let mut states: Vec<StateVector<f64>> = execution.states.unwrap_or_default();
    if let Some(s) = selection.renormalized_state {
        states.push(s);
    }
    let listed = listed_states();
    let comparisons = listed
        .iter()
        .zip(&states)
        .map(|(l, s)| compare(l.name, l.complete, &l.terms, s, scale))
        .collect::<Result<Vec<_>>>()?;
    Ok(Replay {
        frobenius_scale: scale,
        probability: selection.probability,
        states: comparisons,
    })
}
