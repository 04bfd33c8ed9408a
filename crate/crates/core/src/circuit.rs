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

//! Step-structured circuits and their sequential execution.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{hadamard_in_place, hadamard_positions, ControlledOp, HadamardTarget, Projector, ResolvedOp};
use crate::layout::{RegisterId, RegisterLayout};
use crate::scalar::Real;
use crate::state::StateVector;
use crate::tally::{tally_gates, GateTally};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instruction {
    Controlled(ControlledOp),
    Hadamard(Vec<HadamardTarget>),
    RegisterSwap(RegisterId, RegisterId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    /// Label used in gate tallies, e.g. `step2`.
    pub label: String,
    /// Name of the state the step produces, e.g. `Phi_1`.
    pub produces: String,
    /// Instructions in application order, each with an optional group tag.
    pub instructions: Vec<(Option<String>, Instruction)>,
}

impl Step {
    pub fn new(label: &str, produces: &str) -> Self {
        Self {
            label: label.to_owned(),
            produces: produces.to_owned(),
            instructions: Vec::new(),
        }
    }

    pub fn push(mut self, instruction: Instruction) -> Self {
        self.instructions.push((None, instruction));
        self
    }

    pub fn push_tagged(mut self, tag: &str, instruction: Instruction) -> Self {
        self.instructions.push((Some(tag.to_owned()), instruction));
        self
    }
}

/// One instruction of a circuit with its step label, as fed to [`tally_gates`].
#[derive(Clone, Copy, Debug)]
pub struct TraceEntry<'a> {
    pub step: &'a str,
    pub group: Option<&'a str>,
    pub instruction: &'a Instruction,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    layout: RegisterLayout,
    steps: Vec<Step>,
}

/// Norm and digest of the state after one step.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StepRecord {
    pub step: String,
    pub state: String,
    pub norm_sqr: f64,
    pub checksum: String,
}

impl StepRecord {
    fn of<T: Real>(step: &str, state_name: &str, state: &StateVector<T>) -> Self {
        Self {
            step: step.to_owned(),
            state: state_name.to_owned(),
            norm_sqr: state.norm_sqr().to_f64_lossy(),
            checksum: format!("{:016x}", state.checksum()),
        }
    }
}

/// Result of running a circuit.
#[derive(Clone, Debug)]
pub struct Execution<T> {
    pub final_state: StateVector<T>,
    pub records: Vec<StepRecord>,
    /// Initial state followed by the state after each step, when requested.
    pub states: Option<Vec<StateVector<T>>>,
}

enum Compiled {
    Permutation(ResolvedOp),
    Hadamard(Vec<usize>),
}

impl Circuit {
    pub fn new(layout: RegisterLayout, steps: Vec<Step>) -> Self {
        Self { layout, steps }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn trace(&self) -> Vec<TraceEntry<'_>> {
        self.steps
            .iter()
            .flat_map(|s| {
                s.instructions.iter().map(move |(tag, ins)| TraceEntry {
                    step: &s.label,
                    group: tag.as_deref(),
                    instruction: ins,
                })
            })
            .collect()
    }

    pub fn gate_tally(&self) -> Result<GateTally> {
        tally_gates(&self.layout, &self.trace())
    }

    fn compile(&self, instruction: &Instruction) -> Result<Compiled> {
        Ok(match instruction {
            Instruction::Controlled(op) => Compiled::Permutation(op.resolve(&self.layout)?),
            Instruction::Hadamard(targets) => Compiled::Hadamard(hadamard_positions(&self.layout, targets)?),
            Instruction::RegisterSwap(a, b) => Compiled::Permutation(
                ControlledOp::swap_registers(Projector::identity(), a.clone(), b.clone()).resolve(&self.layout)?,
            ),
        })
    }

    /// Applies every step in order to `initial`.
    pub fn run<T: Real>(&self, initial: StateVector<T>, keep_states: bool) -> Result<Execution<T>> {
        let mut states = keep_states.then(|| vec![initial.clone()]);
        let (final_state, records) = self.run_with(initial, |_, state| {
            if let Some(s) = states.as_mut() {
                s.push(state.clone());
            }
            Ok(())
        })?;
        Ok(Execution {
            final_state,
            records,
            states,
        })
    }

    /// Like [`Circuit::run`], handing each intermediate state to `inspect`.
    pub fn run_with<T: Real>(
        &self,
        initial: StateVector<T>,
        mut inspect: impl FnMut(&Step, &StateVector<T>) -> Result<()>,
    ) -> Result<(StateVector<T>, Vec<StepRecord>)> {
        if initial.layout() != &self.layout {
            return Err(Error::LayoutMismatch);
        }
        let mut records = Vec::with_capacity(self.steps.len());
        let mut state = initial;
        for step in &self.steps {
            let compiled = step
                .instructions
                .iter()
                .map(|(_, ins)| self.compile(ins))
                .collect::<Result<Vec<_>>>()?;
            apply_all(state.amplitudes_mut(), &compiled);
            records.push(StepRecord::of(&step.label, &step.produces, &state));
            inspect(step, &state)?;
        }
        Ok((state, records))
    }
}

fn apply_all<T: Real>(amps: &mut [Complex<T>], compiled: &[Compiled]) {
    for c in compiled {
        match c {
            Compiled::Permutation(op) => op.apply_in_place(amps),
            Compiled::Hadamard(positions) => hadamard_in_place(amps, positions),
        }
    }
}
