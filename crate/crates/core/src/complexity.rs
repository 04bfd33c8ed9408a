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


//! Gate-count scaling against register width.
//!
//! Each algorithm is run at several widths on seeded random inputs, its gate
//! tally is recorded and every annotated step is fitted with an exact
//! rational least-squares line. An `O(1)` claim passes when all gate classes
//! are identical across widths; an `O(n)` or `O(m)` claim passes when the fit
//! has zero residual and positive slope.
//!
//! Row operations use `M = 2` columns and `k = N - 1, l = 0`, so that the
//! X conjugations needed for zero-valued controls are themselves affine in
//! `n`. Transpose uses square `2^w x 2^w` inputs.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::{Num, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::algorithms::{run_row_add, run_row_swap, run_trace, run_transpose, run_transpose_square, Algorithm};
use crate::circuit::{Circuit, Instruction};
use crate::encoding::encode_matrix;
use crate::error::{Error, Result};
use crate::layout::QubitRef;
use crate::tally::{GateCounts, GateTally};
use crate::verification::random_matrix;
use crate::algorithms::{row_add_circuit, row_swap_circuit, trace_circuit, transpose_circuit, transpose_square_circuit};

/// Largest register width accepted by [`measure_scaling`].
pub const MAX_SCALING_WIDTH: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    #[serde(rename = "O(1)")]
    Constant,
    #[serde(rename = "O(n)")]
    LinearN,
    #[serde(rename = "O(m)")]
    LinearM,
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Order::Constant => "O(1)",
            Order::LinearN => "O(n)",
            Order::LinearM => "O(m)",
        })
    }
}

/// `y = slope * x + intercept` with the largest absolute residual.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFit<S> {
    pub slope: S,
    pub intercept: S,
    pub max_residual: S,
}

/// Ordinary least squares over any exact or floating field.
///
/// Returns `None` with fewer than two distinct abscissae.
pub fn fit_line<S: Num + Signed + Clone + PartialOrd>(points: &[(S, S)]) -> Option<LinearFit<S>> {
    let mut count = S::zero();
    let (mut sx, mut sy, mut sxx, mut sxy) = (S::zero(), S::zero(), S::zero(), S::zero());
    for (x, y) in points {
        count = count + S::one();
        sx = sx + x.clone();
        sy = sy + y.clone();
        sxx = sxx + x.clone() * x.clone();
        sxy = sxy + x.clone() * y.clone();
    }
    let denom = count.clone() * sxx - sx.clone() * sx.clone();
    if denom.is_zero() {
        return None;
    }
    let slope = (count.clone() * sxy - sx.clone() * sy.clone()) / denom;
    let intercept = (sy - slope.clone() * sx) / count;
    let mut max_residual = S::zero();
    for (x, y) in points {
        let r = (y.clone() - (slope.clone() * x.clone() + intercept.clone())).abs();
        if r > max_residual {
            max_residual = r;
        }
    }
    Some(LinearFit {
        slope,
        intercept,
        max_residual,
    })
}

fn ratio_str<S: Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeriesPoint {
    pub width: usize,
    pub qubits: usize,
    pub success_probability: f64,
    pub tally: GateTally,
}

/// Fit of the total primitive count of one step against width.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StepFit {
    pub step: String,
    #[serde(serialize_with = "ratio_str")]
    pub slope: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub intercept: Ratio<i64>,
    #[serde(serialize_with = "ratio_str")]
    pub max_residual: Ratio<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Claim {
    pub step: String,
    pub claimed: Order,
    pub pass: bool,
}

/// Control-qubit count stated for a step as `a * n + b`, next to what the
/// circuit actually uses.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ControlCount {
    pub step: String,
    pub stated: String,
    /// `(width, largest control set of a single operator, union over the step)`.
    pub observed: Vec<(usize, usize, usize)>,
    /// True when the stated count equals either observed count at every width.
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScalingReport {
    pub algorithm: Algorithm,
    pub seed: u64,
    pub series: Vec<SeriesPoint>,
    pub fits: Vec<StepFit>,
    pub claims: Vec<Claim>,
    pub control_counts: Vec<ControlCount>,
    /// Additional structural checks, e.g. equal slopes of parallel groups.
    pub checks: Vec<(String, bool)>,
}

impl ScalingReport {
    /// Every claim and every structural check holds. Control-count
    /// mismatches are informational and do not affect this.
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.pass) && self.checks.iter().all(|(_, ok)| *ok)
    }

    pub fn fit(&self, step: &str) -> Option<&StepFit> {
        self.fits.iter().find(|f| f.step == step)
    }
}

const TOTAL: &str = "total";

fn claims_for(algorithm: Algorithm) -> Vec<(&'static str, Order)> {
    use Order::*;
    match algorithm {
        Algorithm::RowAdd | Algorithm::RowSwap => vec![
            ("step2", LinearN),
            ("step3", LinearN),
            ("step5", Constant),
            ("step6", Constant),
            (TOTAL, LinearN),
        ],
        Algorithm::Trace => vec![
            ("step2", LinearN),
            ("step3", LinearN),
            ("step4", LinearN),
            ("step5", LinearN),
            (TOTAL, LinearN),
        ],
        Algorithm::Transpose => vec![("step2", LinearM), (TOTAL, LinearM)],
        Algorithm::TransposeSquare => vec![("step2", LinearN), (TOTAL, LinearN)],
    }
}

/// Stated control counts as `(step, a, b)` meaning `a * n + b`.
fn stated_controls(algorithm: Algorithm) -> Vec<(&'static str, usize, usize)> {
    match algorithm {
        Algorithm::RowAdd => vec![("step2", 1, 0), ("step3", 1, 1), ("step5", 0, 2)],
        Algorithm::RowSwap => vec![("step2", 1, 0), ("step3", 2, 0), ("step5", 0, 1)],
        Algorithm::Trace => vec![("step2", 2, 0), ("step3", 1, 0), ("step5", 3, 1)],
        Algorithm::Transpose | Algorithm::TransposeSquare => Vec::new(),
    }
}

fn circuit_for(algorithm: Algorithm, w: usize) -> Result<Circuit> {
    let n_rows = 1usize << w;
    match algorithm {
        Algorithm::RowAdd => row_add_circuit(w, 1, n_rows - 1),
        Algorithm::RowSwap => row_swap_circuit(w, 1, n_rows - 1, 0),
        Algorithm::Trace => trace_circuit(w),
        Algorithm::Transpose => transpose_circuit(w, w),
        Algorithm::TransposeSquare => transpose_square_circuit(w),
    }
}

/// `(largest single-operator control set, union)` for a step.
fn control_sizes(circuit: &Circuit, step: &str) -> Result<(usize, usize)> {
    let mut largest = 0;
    let mut union: BTreeSet<QubitRef> = BTreeSet::new();
    for s in circuit.steps().iter().filter(|s| s.label == step) {
        for (_, ins) in &s.instructions {
            if let Instruction::Controlled(op) = ins {
                let controls = op.projector.controls(circuit.layout())?;
                largest = largest.max(controls.len());
                union.extend(controls.into_iter().map(|(q, _)| q));
            }
        }
    }
    Ok((largest, union.len()))
}

fn run_point(algorithm: Algorithm, w: usize, rng: &mut ChaCha8Rng) -> Result<SeriesPoint> {
    let side = 1usize << w;
    let (rows, cols) = match algorithm {
        Algorithm::RowAdd | Algorithm::RowSwap => (side, 2),
        _ => (side, side),
    };
    let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols))?;
    let report = match algorithm {
        Algorithm::RowAdd => run_row_add(&a, side - 1, 0)?,
        Algorithm::RowSwap => run_row_swap(&a, side - 1, 0)?,
        Algorithm::Trace => run_trace(&a)?,
        Algorithm::Transpose => run_transpose(&a)?,
        Algorithm::TransposeSquare => run_transpose_square(&a)?,
    };
    let circuit = circuit_for(algorithm, w)?;
    Ok(SeriesPoint {
        width: w,
        qubits: circuit.layout().total_qubits(),
        success_probability: report.success_probability,
        tally: report.gate_tally,
    })
}

fn counts_at(point: &SeriesPoint, step: &str) -> GateCounts {
    if step == TOTAL {
        point.tally.total
    } else {
        point.tally.step(step).map(|s| s.counts).unwrap_or_default()
    }
}

fn exact_fit(points: impl Iterator<Item = (usize, usize)>) -> LinearFit<Ratio<i64>> {
    let pts: Vec<(Ratio<i64>, Ratio<i64>)> = points
        .map(|(x, y)| (Ratio::from_integer(x as i64), Ratio::from_integer(y as i64)))
        .collect();
    fit_line(&pts).expect("at least two distinct widths")
}

fn is_exactly_linear(fit: &LinearFit<Ratio<i64>>) -> bool {
    fit.max_residual.is_zero() && fit.slope > Ratio::zero()
}

/// Runs `algorithm` at each width and evaluates every annotated complexity claim.
pub fn measure_scaling(algorithm: Algorithm, widths: &[usize], seed: u64) -> Result<ScalingReport> {
    if widths.len() < 2 {
        return Err(Error::TooFewWidths);
    }
    let mut sorted = widths.to_vec();
    sorted.sort_unstable();
    for pair in sorted.windows(2) {
        if pair[0] == pair[1] {
            return Err(Error::RepeatedWidth(pair[0]));
        }
    }
    for &w in &sorted {
        if w == 0 || w > MAX_SCALING_WIDTH {
            return Err(Error::WidthCap {
                width: w,
                cap: MAX_SCALING_WIDTH,
            });
        }
        // reject oversized layouts before allocating any state
        circuit_for(algorithm, w)?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let series = sorted
        .iter()
        .map(|&w| run_point(algorithm, w, &mut rng))
        .collect::<Result<Vec<_>>>()?;

    let mut labels: Vec<String> = series[0].tally.steps.iter().map(|s| s.step.clone()).collect();
    labels.push(TOTAL.to_owned());
    let fits: Vec<StepFit> = labels
        .iter()
        .map(|label| {
            let f = exact_fit(series.iter().map(|p| (p.width, counts_at(p, label).total())));
            StepFit {
                step: label.clone(),
                slope: f.slope,
                intercept: f.intercept,
                max_residual: f.max_residual,
            }
        })
        .collect();

    let claims = claims_for(algorithm)
        .into_iter()
        .map(|(step, claimed)| {
            let pass = match claimed {
                Order::Constant => series.windows(2).all(|p| counts_at(&p[0], step) == counts_at(&p[1], step)),
                Order::LinearN | Order::LinearM => {
                    is_exactly_linear(&exact_fit(series.iter().map(|p| (p.width, counts_at(p, step).total()))))
                }
            };
            Claim {
                step: step.to_owned(),
                claimed,
                pass,
            }
        })
        .collect();

    let mut control_counts = Vec::new();
    for (step, a, b) in stated_controls(algorithm) {
        let mut observed = Vec::new();
        let mut matches = true;
        for &w in &sorted {
            let (largest, union) = control_sizes(&circuit_for(algorithm, w)?, step)?;
            let stated = a * w + b;
            matches &= stated == largest || stated == union;
            observed.push((w, largest, union));
        }
        let stated = match (a, b) {
            (0, b) => b.to_string(),
            (1, 0) => "n".to_owned(),
            (a, 0) => format!("{a}n"),
            (1, b) => format!("n+{b}"),
            (a, b) => format!("{a}n+{b}"),
        };
        control_counts.push(ControlCount {
            step: step.to_owned(),
            stated,
            observed,
            matches,
        });
    }

    let checks = structural_checks(algorithm, &series);
    Ok(ScalingReport {
        algorithm,
        seed,
        series,
        fits,
        claims,
        control_counts,
        checks,
    })
}

fn structural_checks(algorithm: Algorithm, series: &[SeriesPoint]) -> Vec<(String, bool)> {
    match algorithm {
        Algorithm::RowSwap => {
            let group = |g: &str| {
                exact_fit(
                    series
                        .iter()
                        .map(|p| (p.width, p.tally.group("step4", g).unwrap_or_default().total())),
                )
            };
            let (w1, w2) = (group("W1"), group("W2"));
            vec![(
                "step4 swap groups W1 and W2 are exactly linear with equal slope".to_owned(),
                is_exactly_linear(&w1) && is_exactly_linear(&w2) && w1.slope == w2.slope,
            )]
        }
        Algorithm::Trace => vec![(
            "step4 uses exactly 3n single-qubit gates and nothing else".to_owned(),
            series.iter().all(|p| {
                counts_at(p, "step4")
                    == GateCounts {
                        single_qubit: 3 * p.width,
                        ..GateCounts::default()
                    }
            }),
        )],
        Algorithm::Transpose | Algorithm::TransposeSquare => vec![
            (
                "zero Toffoli-equivalents at every width".to_owned(),
                series.iter().all(|p| p.tally.total.toffoli_equivalents() == 0),
            ),
            (
                "swap count equals the register width".to_owned(),
                series
                    .iter()
                    .all(|p| p.tally.total == GateCounts { swap: p.width, ..GateCounts::default() }),
            ),
        ],
        Algorithm::RowAdd => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_and_rational_fits_agree() {
        let f = fit_line(&[(1.0, 3.0), (2.0, 5.0), (3.0, 7.0)]).unwrap();
        assert_eq!((f.slope, f.intercept, f.max_residual), (2.0, 1.0, 0.0));
        let pts: Vec<_> = [(1, 1), (2, 2), (3, 4)]
            .iter()
            .map(|&(x, y)| (Ratio::from_integer(x), Ratio::<i64>::from_integer(y)))
            .collect();
        let r = fit_line(&pts).unwrap();
        assert_eq!(r.slope, Ratio::new(3, 2));
        assert_eq!(r.intercept, Ratio::new(-2, 3));
        assert_eq!(r.max_residual, Ratio::new(1, 3));
        assert!(fit_line(&[(1.0, 1.0), (1.0, 2.0)]).is_none());
    }

    #[test]
    fn transpose_counts() {
        let r = measure_scaling(Algorithm::Transpose, &[1, 2, 3], 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.fit("step2").unwrap().slope, Ratio::from_integer(1));
    }

    #[test]
    fn rejects_bad_width_lists() {
        assert_eq!(measure_scaling(Algorithm::Trace, &[2], 0).unwrap_err(), Error::TooFewWidths);
        assert_eq!(measure_scaling(Algorithm::Trace, &[2, 2], 0).unwrap_err(), Error::RepeatedWidth(2));
        assert!(matches!(
            measure_scaling(Algorithm::Trace, &[2, 13], 0),
            Err(Error::WidthCap { width: 13, .. })
        ));
        assert!(matches!(
            measure_scaling(Algorithm::RowSwap, &[2, 9], 0),
            Err(Error::CapacityExceeded { .. })
        ));
    }
}
