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


//! Seeded end-to-end checks of every algorithm against the classical oracle.

use std::time::Instant;

use num_complex::Complex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algorithms::{
    row_add_circuit, row_swap_circuit, run_row_add, run_row_swap, run_trace, run_transpose, run_transpose_square,
    trace_circuit, transpose_circuit, transpose_square_circuit, Algorithm,
};
use crate::circuit::{Circuit, Instruction};
use crate::complexity::measure_scaling;
use crate::encoding::encode_matrix;
use crate::error::Result;
use crate::gates::{apply_controlled, ControlledOp, Projector};
use crate::matrix::Matrix;
use crate::mcx::decompose_mcx;
use crate::oracle::{
    clean_work_block, dense_mcx, dense_unitary_of, dense_unitary_of_network, mat_vec, max_unitarity_defect,
    oracle_row_add, oracle_row_swap, oracle_trace, oracle_transpose,
};
use crate::scalar::Real;
use crate::state::StateVector;
use crate::worked_example;

/// Entrywise tolerance for oracle comparisons.
pub const TOLERANCE: f64 = 1e-10;

/// Entries with real and imaginary parts uniform in `[-1, 1)`.
pub fn random_matrix<T: Real, R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            let re = rng.gen_range(-1.0..1.0);
            let im = rng.gen_range(-1.0..1.0);
            m.set(i, j, Complex::new(T::from_f64_lossy(re), T::from_f64_lossy(im)));
        }
    }
    m
}

/// Two distinct row indices below `n`.
pub fn random_pair<R: Rng>(rng: &mut R, n: usize) -> (usize, usize) {
    let k = rng.gen_range(0..n);
    let l = (k + rng.gen_range(1..n)) % n;
    (k, l)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// Worst deviation seen, where meaningful.
    pub worst: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub properties: Vec<PropertyOutcome>,
    /// Wall-clock time; left out of serialized reports so they stay reproducible.
    #[serde(skip)]
    pub elapsed_seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

struct Tracker {
    cases: usize,
    worst: f64,
    failures: Vec<String>,
}

impl Tracker {
    fn new() -> Self {
        Self {
            cases: 0,
            worst: 0.0,
            failures: Vec::new(),
        }
    }

    fn case(&mut self) {
        self.cases += 1;
    }

    /// Records a deviation that must stay within `tol`.
    fn within(&mut self, what: impl FnOnce() -> String, deviation: f64, tol: f64) {
        self.worst = self.worst.max(deviation);
        if deviation.is_nan() || deviation > tol {
            self.fail(format!("{}: deviation {deviation:e}", what()));
        }
    }

    fn require(&mut self, what: impl FnOnce() -> String, ok: bool) {
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        if self.failures.len() < 5 {
            self.failures.push(msg);
        }
    }

    fn finish(self, name: &str) -> PropertyOutcome {
        PropertyOutcome {
            name: name.to_owned(),
            passed: self.failures.is_empty() && self.cases > 0,
            cases: self.cases,
            worst: self.worst,
            detail: self.failures.join("; "),
        }
    }
}

fn guarded(name: &str, body: impl FnOnce(&mut Tracker) -> Result<()>) -> PropertyOutcome {
    let mut t = Tracker::new();
    if let Err(e) = body(&mut t) {
        t.fail(format!("error: {e}"));
    }
    t.finish(name)
}

const SIDES: [usize; 3] = [2, 4, 8];

/// Worked-example row swap against the classical swap and the listed
/// intermediate amplitudes.
pub fn check_worked_example() -> PropertyOutcome {
    guarded("worked example row swap", |t| {
        let a = encode_matrix(&worked_example::worked_matrix())?;
        let report = run_row_swap(&a, worked_example::WORKED_K, worked_example::WORKED_L)?;
        let expected = oracle_row_swap(a.matrix(), worked_example::WORKED_K, worked_example::WORKED_L)?;
        t.case();
        match &report.output_matrix {
            Some(m) => t.within(|| "decoded matrix".into(), m.max_abs_diff(expected.matrix.as_ref().unwrap()), TOLERANCE),
            None => t.fail("empty accepting branch".into()),
        }
        t.within(|| "probability".into(), (report.success_probability - 1.0 / 24.0).abs(), TOLERANCE);
        let replay = worked_example::replay()?;
        for s in &replay.states {
            t.case();
            t.within(|| format!("{} listed amplitudes", s.name), s.max_abs_error, TOLERANCE);
            if s.complete {
                t.within(|| format!("{} unlisted mass", s.name), s.unlisted_mass, TOLERANCE);
            }
        }
        Ok(())
    })
}

/// All four algorithms against the oracle on `count` random matrices.
pub fn check_oracle_equivalence(rng: &mut ChaCha8Rng, count: usize) -> PropertyOutcome {
    guarded("oracle equivalence", |t| {
        for _ in 0..count {
            let rows = *SIDES.choose(rng).unwrap();
            let cols = *SIDES.choose(rng).unwrap();
            let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols))?;
            let (k, l) = random_pair(rng, rows);
            t.case();

            let add = run_row_add(&a, k, l)?;
            let want = oracle_row_add(a.matrix(), k, l)?;
            let g = want.normalization_g.unwrap();
            match add.output_matrix {
                Some(m) => t.within(
                    || format!("row-add {rows}x{cols} k={k} l={l}"),
                    m.max_abs_diff(&want.matrix.unwrap().scale(1.0 / g)),
                    TOLERANCE,
                ),
                None => t.fail(format!("row-add {rows}x{cols}: empty branch")),
            }

            let swap = run_row_swap(&a, k, l)?;
            let want = oracle_row_swap(a.matrix(), k, l)?.matrix.unwrap();
            t.within(
                || format!("row-swap {rows}x{cols} k={k} l={l}"),
                swap.output_matrix.map_or(f64::INFINITY, |m| m.max_abs_diff(&want)),
                TOLERANCE,
            );

            let tr = run_transpose(&a)?;
            let want = oracle_transpose(a.matrix())?.matrix.unwrap();
            t.within(
                || format!("transpose {rows}x{cols}"),
                tr.output_matrix.map_or(f64::INFINITY, |m| m.max_abs_diff(&want)),
                TOLERANCE,
            );

            let sq = encode_matrix(&random_matrix::<f64, _>(rng, rows, rows))?;
            let got = run_trace(&sq)?.trace.unwrap();
            let want = oracle_trace(sq.matrix())?.scalar.unwrap();
            t.within(|| format!("trace {rows}x{rows}"), (got - want).norm(), TOLERANCE);
        }
        Ok(())
    })
}

/// Row-add success probability is `G^2 / 8` and the output is the oracle
/// result divided by `G`.
pub fn check_row_add_law(rng: &mut ChaCha8Rng, count: usize) -> PropertyOutcome {
    guarded("row-add probability law", |t| {
        for _ in 0..count {
            let rows = *SIDES.choose(rng).unwrap();
            let cols = *SIDES.choose(rng).unwrap();
            let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols))?;
            let pairs: Vec<(usize, usize)> = if rows <= 4 {
                (0..rows).flat_map(|k| (0..rows).filter(move |&l| l != k).map(move |l| (k, l))).collect()
            } else {
                (0..4).map(|_| random_pair(rng, rows)).collect()
            };
            for (k, l) in pairs {
                t.case();
                let report = run_row_add(&a, k, l)?;
                let want = oracle_row_add(a.matrix(), k, l)?;
                let g = want.normalization_g.unwrap();
                t.within(
                    || format!("probability {rows}x{cols} k={k} l={l}"),
                    (report.success_probability - g * g / 8.0).abs(),
                    TOLERANCE,
                );
                t.within(
                    || format!("output {rows}x{cols} k={k} l={l}"),
                    report
                        .output_matrix
                        .map_or(f64::INFINITY, |m| m.max_abs_diff(&want.matrix.unwrap().scale(1.0 / g))),
                    TOLERANCE,
                );
            }
        }
        Ok(())
    })
}

/// Row-swap probability is `1/24` for every row count.
pub fn check_row_swap_probability(rng: &mut ChaCha8Rng, count: usize) -> PropertyOutcome {
    guarded("row-swap dimension independence", |t| {
        for i in 0..count {
            let rows = [2, 4, 8, 16][i % 4];
            let cols = *[2, 4].choose(rng).unwrap();
            let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols))?;
            let (k, l) = random_pair(rng, rows);
            t.case();
            let report = run_row_swap(&a, k, l)?;
            t.within(
                || format!("N={rows} k={k} l={l}"),
                (report.success_probability - 1.0 / 24.0).abs(),
                TOLERANCE,
            );
        }
        Ok(())
    })
}

/// Trace probability and recovered value, plus zero-diagonal inputs.
pub fn check_trace_law(rng: &mut ChaCha8Rng, count: usize) -> PropertyOutcome {
    guarded("trace law", |t| {
        for i in 0..count {
            let n = 1 + i % 2;
            let side = 1usize << n;
            let mut m = random_matrix::<f64, _>(rng, side, side);
            let traceless = i % 5 == 4;
            if traceless {
                for d in 0..side {
                    m.set(d, d, Complex::new(0.0, 0.0));
                }
            }
            let s = encode_matrix(&m)?;
            t.case();
            let report = run_trace(&s)?;
            let want = oracle_trace(s.matrix())?.scalar.unwrap();
            let got = report.trace.unwrap();
            t.within(|| format!("trace n={n}"), (got - want).norm(), TOLERANCE);
            let p = want.norm_sqr() / 2f64.powi(3 * n as i32);
            t.within(|| format!("probability n={n}"), (report.success_probability - p).abs(), TOLERANCE);
            t.require(|| format!("diagonal marking n={n}"), report.checks.iter().all(|(_, ok)| *ok));
            if traceless {
                t.require(
                    || "traceless input must give exactly zero".into(),
                    report.success_probability == 0.0 && got.norm() == 0.0,
                );
            }
        }
        Ok(())
    })
}

/// Transpose is an exact permutation with probability exactly one.
pub fn check_transpose(rng: &mut ChaCha8Rng, count: usize) -> PropertyOutcome {
    guarded("transpose exactness", |t| {
        for _ in 0..count {
            let rows = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=8);
            let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols))?;
            t.case();
            let main = run_transpose(&a)?;
            let square = run_transpose_square(&a)?;
            let want = oracle_transpose(a.matrix())?.matrix.unwrap();
            t.require(|| format!("{rows}x{cols} probability is exactly one"), main.success_probability == 1.0);
            t.require(|| format!("{rows}x{cols} square variant probability"), square.success_probability == 1.0);
            let (m, s) = (main.output_matrix.unwrap(), square.output_matrix.unwrap());
            t.require(|| format!("{rows}x{cols} exact permutation"), m == want);
            t.require(|| format!("{rows}x{cols} square variant agrees"), s == m);
        }
        Ok(())
    })
}

/// Small instances of every circuit, for dense checks.
pub fn small_circuits() -> Result<Vec<(String, Circuit)>> {
    Ok(vec![
        ("row-add n=1 m=1".into(), row_add_circuit(1, 1, 1)?),
        ("row-add n=2 m=2".into(), row_add_circuit(2, 2, 2)?),
        ("row-swap n=1 m=1".into(), row_swap_circuit(1, 1, 1, 0)?),
        ("row-swap n=1 m=2".into(), row_swap_circuit(1, 2, 0, 1)?),
        ("trace n=1".into(), trace_circuit(1)?),
        ("trace n=2".into(), trace_circuit(2)?),
        ("transpose n=2 m=1".into(), transpose_circuit(2, 1)?),
        ("transpose n=2 m=3".into(), transpose_circuit(2, 3)?),
        ("transpose-square n=3".into(), transpose_square_circuit(3)?),
    ])
}

fn random_state<R: Rng>(rng: &mut R, layout: &crate::layout::RegisterLayout) -> Result<StateVector<f64>> {
    let dim = layout.dimension();
    let mut amps: Vec<Complex<f64>> = (0..dim)
        .map(|_| Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut amps {
        *z /= norm;
    }
    StateVector::from_amplitudes(layout.clone(), amps)
}

/// Dense unitarity of every controlled operator, agreement of the
/// simulator with the dense product, and MCX decomposition equivalence.
pub fn check_gate_kit(rng: &mut ChaCha8Rng) -> PropertyOutcome {
    guarded("gate-kit soundness", |t| {
        for (name, circuit) in small_circuits()? {
            let layout = circuit.layout();
            for step in circuit.steps() {
                for (_, ins) in &step.instructions {
                    let op = match ins {
                        Instruction::Controlled(op) => op.clone(),
                        Instruction::RegisterSwap(a, b) => {
                            ControlledOp::swap_registers(Projector::identity(), a.clone(), b.clone())
                        }
                        Instruction::Hadamard(_) => continue,
                    };
                    t.case();
                    let u = dense_unitary_of::<f64>(&op, layout)?;
                    t.within(|| format!("{name} {} unitarity", step.label), max_unitarity_defect(&u), 1e-12);
                    let psi = random_state(rng, layout)?;
                    let want = mat_vec(&u, psi.amplitudes());
                    let got = apply_controlled(&psi, &op)?;
                    let dev = want
                        .iter()
                        .zip(got.amplitudes())
                        .map(|(a, b)| (a - b).norm())
                        .fold(0.0, f64::max);
                    t.within(|| format!("{name} {} simulator vs dense", step.label), dev, 0.0);
                }
            }
        }
        for c in 1..=4 {
            for mask in 0..(1usize << c) {
                let pol: Vec<bool> = (0..c).map(|i| (mask >> i) & 1 == 1).collect();
                t.case();
                let net = decompose_mcx(c, &pol)?;
                let u = dense_unitary_of_network::<f64>(&net)?;
                let ok = clean_work_block(&u, c + 1).is_some_and(|b| b == dense_mcx(&pol).unwrap());
                t.require(|| format!("dense MCX c={c} polarity {pol:?}"), ok);
            }
        }
        for c in 5..=12 {
            let pol: Vec<bool> = (0..c).map(|_| rng.gen()).collect();
            let net = decompose_mcx(c, &pol)?;
            t.case();
            let mut ok = true;
            for x in 0..(1u64 << (c + 1)) {
                let fires = pol.iter().enumerate().all(|(i, &p)| ((x >> i) & 1 == 1) == p);
                let want = if fires { x ^ (1 << c) } else { x };
                ok &= net.apply_to_bits(x) == want;
            }
            t.require(|| format!("basis-state MCX c={c}"), ok);
        }
        Ok(())
    })
}

/// Scaling verdicts over the standard width ranges.
pub fn check_complexity(seed: u64) -> PropertyOutcome {
    guarded("complexity claims", |t| {
        let runs: [(Algorithm, &[usize]); 4] = [
            (Algorithm::RowAdd, &[2, 3, 4, 5]),
            (Algorithm::RowSwap, &[2, 3, 4, 5]),
            (Algorithm::Trace, &[1, 2, 3]),
            (Algorithm::Transpose, &[1, 2, 3, 4, 5, 6]),
        ];
        for (alg, widths) in runs {
            t.case();
            let r = measure_scaling(alg, widths, seed)?;
            for c in &r.claims {
                t.require(|| format!("{alg:?} {} {}", c.step, c.claimed), c.pass);
            }
            for (name, ok) in &r.checks {
                t.require(|| format!("{alg:?} {name}"), *ok);
            }
        }
        Ok(())
    })
}

/// Runs every property from one seed.
pub fn run_suite(seed: u64) -> SuiteReport {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let properties = vec![
        check_worked_example(),
        check_oracle_equivalence(&mut rng, 200),
        check_row_add_law(&mut rng, 100),
        check_row_swap_probability(&mut rng, 50),
        check_trace_law(&mut rng, 50),
        check_transpose(&mut rng, 50),
        check_gate_kit(&mut rng),
        check_complexity(seed),
    ];
    SuiteReport {
        seed,
        properties,
        elapsed_seconds: start.elapsed().as_secs_f64(),
    }
}
