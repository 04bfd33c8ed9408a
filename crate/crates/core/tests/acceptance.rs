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


//! Acceptance criteria, one line of output each.
//!
//! Run with `cargo test -p qmatops --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex;
use qmatops::algorithms::{row_add_circuit, row_swap_circuit, trace_circuit, transpose_circuit, transpose_square_circuit};
use qmatops::oracle::{
    clean_work_block, dense_mcx, dense_unitary_of, dense_unitary_of_network, max_unitarity_defect, oracle_row_add,
    oracle_row_swap, oracle_trace, oracle_transpose,
};
use qmatops::verification::{random_matrix, random_pair};
use qmatops::worked_example::{replay, worked_matrix, WORKED_K, WORKED_L};
use qmatops::{
    decompose_mcx, encode_matrix, measure_scaling, run_row_add, run_row_swap, run_suite, run_trace, run_transpose,
    run_transpose_square, Algorithm, Circuit, ControlledOp, Instruction, Matrix64, Projector,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-10;
const SEED: u64 = 20_261_017;

type Verdict = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden_worked_example() -> Verdict {
    let start = Instant::now();
    let a = encode_matrix(&worked_matrix()).map_err(|e| e.to_string())?;
    let report = run_row_swap(&a, WORKED_K, WORKED_L).map_err(|e| e.to_string())?;
    let want = oracle_row_swap(a.matrix(), WORKED_K, WORKED_L).unwrap().matrix.unwrap();
    let out = report.output_matrix.ok_or("empty accepting branch")?;
    let err = out.max_abs_diff(&want);
    ensure(err <= TOL, || format!("decoded output off by {err:e}"))?;
    let dp = (report.success_probability - 1.0 / 24.0).abs();
    ensure(dp <= TOL, || format!("probability off by {dp:e}"))?;
    let r = replay().map_err(|e| e.to_string())?;
    for s in &r.states {
        ensure(s.max_abs_error <= TOL, || format!("{} listed amplitudes off by {:e}", s.name, s.max_abs_error))?;
        ensure(!s.complete || s.unlisted_mass <= TOL, || format!("{} has unlisted mass", s.name))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "output err {err:.1e}, |p - 1/24| {dp:.1e}, {} step states match, {elapsed:.2?}",
        r.states.len()
    ))
}

fn row_add_law(rng: &mut ChaCha8Rng) -> Verdict {
    let mut cases = 0;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let rows = *[2, 4, 8].choose(rng).unwrap();
        let cols = *[2, 4, 8].choose(rng).unwrap();
        let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols)).unwrap();
        for _ in 0..3 {
            let (k, l) = random_pair(rng, rows);
            let report = run_row_add(&a, k, l).map_err(|e| e.to_string())?;
            let want = oracle_row_add(a.matrix(), k, l).unwrap();
            let g = want.normalization_g.unwrap();
            let dp = (report.success_probability - g * g / 8.0).abs();
            let out = report.output_matrix.ok_or("empty accepting branch")?;
            let dm = out.max_abs_diff(&want.matrix.unwrap().scale(1.0 / g));
            ensure(dp <= TOL && dm <= TOL, || format!("{rows}x{cols} k={k} l={l}: dp {dp:e}, dm {dm:e}"))?;
            worst = worst.max(dp).max(dm);
            cases += 1;
        }
    }
    Ok(format!("{cases} cases, worst deviation {worst:.1e}"))
}

fn row_swap_independence(rng: &mut ChaCha8Rng) -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let rows = [2, 4, 8, 16][i % 4];
        let cols = *[2, 4].choose(rng).unwrap();
        let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols)).unwrap();
        let (k, l) = random_pair(rng, rows);
        let report = run_row_swap(&a, k, l).map_err(|e| e.to_string())?;
        let dp = (report.success_probability - 1.0 / 24.0).abs();
        ensure(dp <= TOL, || format!("N={rows} k={k} l={l}: |p - 1/24| = {dp:e}"))?;
        let want = oracle_row_swap(a.matrix(), k, l).unwrap().matrix.unwrap();
        let dm = report.output_matrix.ok_or("empty accepting branch")?.max_abs_diff(&want);
        ensure(dm <= TOL, || format!("N={rows}: output off by {dm:e}"))?;
        worst = worst.max(dp);
    }
    Ok(format!("50 matrices, N in {{2,4,8,16}}, worst |p - 1/24| {worst:.1e}"))
}

fn trace_law(rng: &mut ChaCha8Rng) -> Verdict {
    let mut worst: f64 = 0.0;
    for i in 0..50 {
        let n = 1 + i % 2;
        let side = 1usize << n;
        let s = encode_matrix(&random_matrix::<f64, _>(rng, side, side)).unwrap();
        let report = run_trace(&s).map_err(|e| e.to_string())?;
        let tr = oracle_trace(s.matrix()).unwrap().scalar.unwrap();
        let dt = (report.trace.unwrap() - tr).norm();
        let dp = (report.success_probability - tr.norm_sqr() / 2f64.powi(3 * n)).abs();
        ensure(dt <= TOL && dp <= TOL, || format!("n={n}: dt {dt:e}, dp {dp:e}"))?;
        ensure(report.checks.iter().all(|(_, ok)| *ok), || format!("n={n}: diagonal marking failed"))?;
        worst = worst.max(dt).max(dp);
    }
    for n in 1..=2 {
        let side = 1usize << n;
        let mut m = random_matrix::<f64, _>(rng, side, side);
        for d in 0..side {
            m.set(d, d, Complex::new(0.0, 0.0));
        }
        let report = run_trace(&encode_matrix(&m).unwrap()).map_err(|e| e.to_string())?;
        ensure(
            report.success_probability == 0.0 && report.trace.unwrap().norm() == 0.0,
            || format!("traceless n={n} gave p={:e}", report.success_probability),
        )?;
    }
    Ok(format!("50 matrices, worst deviation {worst:.1e}; traceless inputs give exactly 0"))
}

fn transpose_exact(rng: &mut ChaCha8Rng) -> Verdict {
    let mut rectangular = 0;
    for _ in 0..50 {
        let rows = rng.gen_range(1..=8);
        let cols = rng.gen_range(1..=8);
        let a = encode_matrix(&random_matrix::<f64, _>(rng, rows, cols)).unwrap();
        if a.rows() != a.cols() {
            rectangular += 1;
        }
        let main = run_transpose(&a).map_err(|e| e.to_string())?;
        let square = run_transpose_square(&a).map_err(|e| e.to_string())?;
        ensure(main.success_probability == 1.0, || format!("{rows}x{cols}: p = {:?}", main.success_probability))?;
        ensure(square.success_probability == 1.0, || format!("{rows}x{cols}: square p != 1"))?;
        let want = oracle_transpose(a.matrix()).unwrap().matrix.unwrap();
        let m = main.output_matrix.unwrap();
        ensure(m == want, || format!("{rows}x{cols}: not an exact permutation"))?;
        ensure(square.output_matrix.unwrap() == m, || format!("{rows}x{cols}: square variant disagrees"))?;
    }
    ensure(rectangular > 0, || "no rectangular shapes sampled".into())?;
    Ok(format!("50 matrices ({rectangular} rectangular), p == 1.0 bitwise, exact equality"))
}

/// Every circuit whose layout fits in ten qubits.
fn small_circuits() -> Vec<Circuit> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for m in 1..=3 {
            for k in 0..(1usize << n) {
                if 2 * n + m + 3 <= 10 {
                    out.push(row_add_circuit(n, m, k).unwrap());
                }
                for l in 0..(1usize << n) {
                    if k != l && 3 * n + m + 4 <= 10 {
                        out.push(row_swap_circuit(n, m, k, l).unwrap());
                    }
                }
            }
            if n + 2 * m <= 10 {
                out.push(transpose_circuit(n, m).unwrap());
            }
        }
        if 3 * n + 2 <= 10 {
            out.push(trace_circuit(n).unwrap());
        }
    }
    for s in 1..=5 {
        out.push(transpose_square_circuit(s).unwrap());
    }
    out
}

fn gate_kit() -> Verdict {
    let mut ops = 0;
    let mut worst: f64 = 0.0;
    for circuit in small_circuits() {
        for step in circuit.steps() {
            for (_, ins) in &step.instructions {
                let op = match ins {
                    Instruction::Controlled(op) => op.clone(),
                    Instruction::RegisterSwap(a, b) => ControlledOp::swap_registers(Projector::identity(), a.clone(), b.clone()),
                    Instruction::Hadamard(_) => continue,
                };
                let u: Matrix64 = dense_unitary_of(&op, circuit.layout()).map_err(|e| e.to_string())?;
                let d = max_unitarity_defect(&u);
                ensure(d <= 1e-12, || format!("{} {}: defect {d:e}", circuit.layout().ket_label(0), step.label))?;
                worst = worst.max(d);
                ops += 1;
            }
        }
    }
    for c in 1..=4 {
        for mask in 0..(1usize << c) {
            let pol: Vec<bool> = (0..c).map(|i| (mask >> i) & 1 == 1).collect();
            let net = decompose_mcx(c, &pol).unwrap();
            let u: Matrix64 = dense_unitary_of_network(&net).unwrap();
            let direct: Matrix64 = dense_mcx(&pol).unwrap();
            ensure(clean_work_block(&u, c + 1).as_ref() == Some(&direct), || format!("dense MCX c={c} {pol:?}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for c in 5..=12 {
        for pol in [vec![true; c], (0..c).map(|_| rng.gen()).collect::<Vec<bool>>()] {
            let net = decompose_mcx(c, &pol).unwrap();
            for x in 0..(1u64 << (c + 1)) {
                let fires = pol.iter().enumerate().all(|(i, &p)| ((x >> i) & 1 == 1) == p);
                let want = if fires { x ^ (1 << c) } else { x };
                ensure(net.apply_to_bits(x) == want, || format!("MCX c={c} input {x:b}"))?;
            }
        }
    }
    Ok(format!("{ops} operators unitary (worst {worst:.1e}); MCX exact for 1-4 (dense) and 5-12 (basis)"))
}

fn complexity_claims() -> Verdict {
    let runs: [(Algorithm, &[usize]); 4] = [
        (Algorithm::RowAdd, &[2, 3, 4, 5]),
        (Algorithm::RowSwap, &[2, 3, 4, 5]),
        (Algorithm::Trace, &[1, 2, 3]),
        (Algorithm::Transpose, &[1, 2, 3, 4, 5, 6]),
    ];
    let mut claims = 0;
    for (alg, widths) in runs {
        let r = measure_scaling(alg, widths, SEED).map_err(|e| e.to_string())?;
        for c in &r.claims {
            ensure(c.pass, || format!("{alg:?} {} {} failed", c.step, c.claimed))?;
            claims += 1;
        }
        for (name, ok) in &r.checks {
            ensure(*ok, || format!("{alg:?}: {name}"))?;
        }
    }
    Ok(format!("{claims} step claims hold with exact fits"))
}

fn suite_time() -> Verdict {
    let report = run_suite(7);
    for p in &report.properties {
        ensure(p.passed, || format!("{} failed: {}", p.name, p.detail))?;
    }
    ensure(report.elapsed_seconds < 60.0, || format!("took {:.1}s", report.elapsed_seconds))?;
    Ok(format!("{} properties in {:.2}s", report.properties.len(), report.elapsed_seconds))
}

type Criterion<'a> = (&'static str, Box<dyn FnOnce() -> Verdict + 'a>);

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let criteria: Vec<Criterion> = vec![
        ("worked-example row swap", Box::new(golden_worked_example)),
        ("row-add probability law", Box::new(|| row_add_law(&mut ChaCha8Rng::seed_from_u64(SEED + 2)))),
        ("row-swap dimension independence", Box::new(|| row_swap_independence(&mut ChaCha8Rng::seed_from_u64(SEED + 3)))),
        ("trace law", Box::new(|| trace_law(&mut ChaCha8Rng::seed_from_u64(SEED + 4)))),
        ("transpose exactness", Box::new(move || transpose_exact(&mut rng))),
        ("gate-kit soundness", Box::new(gate_kit)),
        ("complexity claims", Box::new(complexity_claims)),
        ("verify suite under 60 s", Box::new(suite_time)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.into_iter().enumerate() {
        match check() {
            Ok(summary) => println!("[{}] PASS {name}: {summary}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("[{}] FAIL {name}: {reason}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
