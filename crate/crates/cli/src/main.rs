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


//! `qmatops`: run the matrix-operation circuits on matrix files.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qmatops::algorithms::{prepare_row_add, prepare_row_swap, prepare_trace, prepare_transpose, prepare_transpose_square};
use qmatops::worked_example;
use qmatops::{
    encode_matrix, format_matrix, measure_scaling, parse_matrix, run_row_add, run_row_swap, run_suite, run_trace,
    run_transpose, run_transpose_square, sample_post_selection, Algorithm, EncodedMatrix64, Matrix64, MatrixFile,
    Prepared, RunReport64,
};

use report::{pair, Branches, RunDocument, Shape, Term};

#[derive(Parser, Debug)]
#[command(name = "qmatops", version, about = "Simulate quantum circuits for elementary matrix operations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Add row k to row l.
    RowAdd(RowArgs),
    /// Exchange rows k and l.
    RowSwap(RowArgs),
    /// Trace of a square matrix.
    Trace(RunArgs),
    /// Transpose through an extra column register.
    Transpose(RunArgs),
    /// Transpose of the square zero-padded embedding.
    TransposeSquare(RunArgs),
    /// Run the seeded oracle-equivalence suite.
    Verify(VerifyArgs),
    /// Fit gate counts against register width.
    Scaling(ScalingArgs),
    /// Replay the worked 4x4 row-swap example step by step.
    Appendix1(ReplayArgs),
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Matrix file (JSON with rows, cols, data).
    #[arg(long)]
    input: PathBuf,
    /// Seed for the sampling demonstration.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Draw this many post-selection outcomes and report the frequency.
    #[arg(long)]
    shots: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the scale-restored output matrix as a matrix file.
    #[arg(long)]
    matrix_out: Option<PathBuf>,
    /// Include the nonzero amplitudes of every intermediate state.
    #[arg(long, short)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct RowArgs {
    /// Source row (added from / swapped).
    #[arg(long)]
    k: usize,
    /// Target row.
    #[arg(long)]
    l: usize,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Also write the JSON suite report here.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScalingAlgorithm {
    RowAdd,
    RowSwap,
    Trace,
    Transpose,
    TransposeSquare,
}

impl From<ScalingAlgorithm> for Algorithm {
    fn from(a: ScalingAlgorithm) -> Self {
        match a {
            ScalingAlgorithm::RowAdd => Algorithm::RowAdd,
            ScalingAlgorithm::RowSwap => Algorithm::RowSwap,
            ScalingAlgorithm::Trace => Algorithm::Trace,
            ScalingAlgorithm::Transpose => Algorithm::Transpose,
            ScalingAlgorithm::TransposeSquare => Algorithm::TransposeSquare,
        }
    }
}

#[derive(Args, Debug)]
struct ScalingArgs {
    #[arg(long, value_enum)]
    algorithm: ScalingAlgorithm,
    /// Register widths, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    widths: Vec<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ReplayArgs {
    /// Write the JSON comparison here as well.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn emit(text: &str, output: Option<&Path>) -> Result<()> {
    match output {
        Some(path) => fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

fn load(path: &Path) -> Result<EncodedMatrix64> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let m: Matrix64 = parse_matrix(&text).with_context(|| format!("in {}", path.display()))?;
    encode_matrix(&m).with_context(|| format!("cannot encode {}", path.display()))
}

fn branches(prepared: &Prepared<f64>) -> Result<Vec<Branches>> {
    let execution = prepared.circuit.run(prepared.initial.clone(), true)?;
    let states = execution.states.unwrap_or_default();
    let layout = prepared.circuit.layout();
    let names = std::iter::once("Phi_0".to_owned()).chain(prepared.circuit.steps().iter().map(|s| s.produces.clone()));
    Ok(names
        .zip(&states)
        .map(|(state, s)| Branches {
            state,
            terms: s
                .support(1e-15)
                .into_iter()
                .map(|(i, z)| Term {
                    ket: layout.ket_label(i),
                    amplitude: pair(z),
                })
                .collect(),
        })
        .collect())
}

fn run_algorithm(algorithm: Algorithm, args: &RunArgs, rows: Option<(usize, usize)>) -> Result<()> {
    let a = load(&args.input)?;
    let (report, prepared): (RunReport64, Option<Prepared<f64>>) = match (algorithm, rows) {
        (Algorithm::RowAdd, Some((k, l))) => (run_row_add(&a, k, l)?, args.verbose.then(|| prepare_row_add(&a, k, l)).transpose()?),
        (Algorithm::RowSwap, Some((k, l))) => (run_row_swap(&a, k, l)?, args.verbose.then(|| prepare_row_swap(&a, k, l)).transpose()?),
        (Algorithm::Trace, None) => (run_trace(&a)?, args.verbose.then(|| prepare_trace(&a)).transpose()?),
        (Algorithm::Transpose, None) => (run_transpose(&a)?, args.verbose.then(|| prepare_transpose(&a)).transpose()?),
        (Algorithm::TransposeSquare, None) => (
            run_transpose_square(&a)?,
            args.verbose.then(|| prepare_transpose_square(&a)).transpose()?,
        ),
        _ => bail!("row indices are only accepted by row-add and row-swap"),
    };
    let scale = a.frobenius_scale();
    let (out_rows, out_cols) = match algorithm {
        Algorithm::Transpose | Algorithm::TransposeSquare => (a.original_cols(), a.original_rows()),
        _ => (a.original_rows(), a.original_cols()),
    };
    let matrix = report.output_matrix.as_ref().map(|m| m.block(out_rows, out_cols));
    let restored = matrix
        .as_ref()
        .map(|m| m.scale(scale * report.normalization.unwrap_or(1.0)));
    if let Some(path) = &args.matrix_out {
        match &restored {
            Some(m) => fs::write(path, format_matrix(m)).with_context(|| format!("cannot write {}", path.display()))?,
            None => bail!("post-selection probability is zero; there is no output matrix to write"),
        }
    }
    let document = RunDocument {
        algorithm,
        input: Shape {
            rows: a.original_rows(),
            cols: a.original_cols(),
        },
        k: rows.map(|r| r.0),
        l: rows.map(|r| r.1),
        frobenius_scale: scale,
        probability: report.success_probability,
        predicted_probability: report.predicted_probability,
        matrix: matrix.as_ref().map(MatrixFile::from_matrix),
        restored_matrix: restored.as_ref().map(MatrixFile::from_matrix),
        normalization_g: report.normalization,
        trace: report.trace.map(pair),
        restored_trace: report.trace.map(|t| pair(t * scale)),
        toffoli_equivalents: report.gate_tally.total.toffoli_equivalents(),
        gate_tally: report.gate_tally,
        steps: report.step_records,
        checks: report.checks,
        sampling: args.shots.map(|n| sample_post_selection(report.success_probability, n, args.seed)),
        branches: prepared.as_ref().map(branches).transpose()?,
    };
    emit(&to_json(&document), args.output.as_deref())
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let report = run_suite(args.seed);
    for p in &report.properties {
        let status = if p.passed { "PASS" } else { "FAIL" };
        println!("{status} {} ({} cases, worst deviation {:.1e})", p.name, p.cases, p.worst);
        if !p.passed {
            println!("     {}", p.detail);
        }
    }
    eprintln!("suite finished in {:.2}s", report.elapsed_seconds);
    if let Some(path) = &args.output {
        fs::write(path, to_json(&report)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(report.passed())
}

fn appendix1(args: &ReplayArgs) -> Result<bool> {
    let replay = worked_example::replay()?;
    println!(
        "row swap k={} l={}, frobenius scale {:.12}",
        worked_example::WORKED_K,
        worked_example::WORKED_L,
        replay.frobenius_scale
    );
    for s in &replay.states {
        let kind = if s.complete { "full state" } else { "useful branches" };
        println!("{} ({kind}, max error {:.1e})", s.name, s.max_abs_error);
        for t in &s.terms {
            println!("  {:<44} listed {:>+.12}  simulated {:>+.12}{:>+.1e}i", t.ket, t.listed, t.simulated[0], t.simulated[1]);
        }
    }
    println!("probability {:.15} (listed 1/24 = {:.15})", replay.probability, 1.0 / 24.0);
    let ok = replay.agrees(1e-10) && (replay.probability - 1.0 / 24.0).abs() <= 1e-10;
    println!("{}", if ok { "PASS" } else { "FAIL" });
    if let Some(path) = &args.output {
        fs::write(path, to_json(&replay)).with_context(|| format!("cannot write {}", path.display()))?;
    }
    Ok(ok)
}

fn execute(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::RowAdd(a) => run_algorithm(Algorithm::RowAdd, &a.run, Some((a.k, a.l))).map(|_| true),
        Command::RowSwap(a) => run_algorithm(Algorithm::RowSwap, &a.run, Some((a.k, a.l))).map(|_| true),
        Command::Trace(a) => run_algorithm(Algorithm::Trace, &a, None).map(|_| true),
        Command::Transpose(a) => run_algorithm(Algorithm::Transpose, &a, None).map(|_| true),
        Command::TransposeSquare(a) => run_algorithm(Algorithm::TransposeSquare, &a, None).map(|_| true),
        Command::Verify(a) => verify(&a),
        Command::Scaling(a) => {
            let report = measure_scaling(a.algorithm.into(), &a.widths, a.seed)?;
            emit(&to_json(&report), a.output.as_deref())?;
            Ok(report.passed())
        }
        Command::Appendix1(a) => appendix1(&a),
    }
}

fn main() -> ExitCode {
    match execute(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
