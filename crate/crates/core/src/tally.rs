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

//! Gate accounting.
//!
//! Controlled ops are expanded through [`decompose_mcx`] purely for counting;
//! the simulator applies them directly. A controlled swap of one qubit pair
//! is `CNOT(b, a) . MCX(controls + a -> b) . CNOT(b, a)`. Uncontrolled swaps
//! are counted as swaps, Hadamards and bare X gates as single-qubit gates.

use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::circuit::{Instruction, TraceEntry};
use crate::error::{Error, Result};
use crate::gates::{hadamard_positions, Action};
use crate::layout::RegisterLayout;
use crate::mcx::decompose_mcx;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GateCounts {
    pub toffoli: usize,
    pub cnot: usize,
    pub single_qubit: usize,
    pub swap: usize,
}

impl GateCounts {
    /// Headline cost: Toffoli = 1, everything else 0.
    pub fn toffoli_equivalents(&self) -> usize {
        self.toffoli
    }

    /// All primitives regardless of class.
    pub fn total(&self) -> usize {
        self.toffoli + self.cnot + self.single_qubit + self.swap
    }
}

impl Add for GateCounts {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self {
            toffoli: self.toffoli + rhs.toffoli,
            cnot: self.cnot + rhs.cnot,
            single_qubit: self.single_qubit + rhs.single_qubit,
            swap: self.swap + rhs.swap,
        }
    }
}

impl AddAssign for GateCounts {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Mul<usize> for GateCounts {
    type Output = Self;

    fn mul(self, k: usize) -> Self {
        Self {
            toffoli: self.toffoli * k,
            cnot: self.cnot * k,
            single_qubit: self.single_qubit * k,
            swap: self.swap * k,
        }
    }
}

impl Sum for GateCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepTally {
    pub step: String,
    pub counts: GateCounts,
    /// Sub-totals of tagged instruction groups within the step.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<(String, GateCounts)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateTally {
    pub steps: Vec<StepTally>,
    pub total: GateCounts,
}

impl GateTally {
    pub fn step(&self, label: &str) -> Option<&StepTally> {
        self.steps.iter().find(|s| s.step == label)
    }

    pub fn group(&self, step: &str, group: &str) -> Option<GateCounts> {
        self.step(step)?
            .groups
            .iter()
            .find(|(g, _)| g == group)
            .map(|&(_, c)| c)
    }
}

/// Counts of one instruction after decomposition.
pub fn instruction_counts(layout: &RegisterLayout, instruction: &Instruction) -> Result<GateCounts> {
    match instruction {
        Instruction::Hadamard(targets) => Ok(GateCounts {
            single_qubit: hadamard_positions(layout, targets)?.len(),
            ..GateCounts::default()
        }),
        Instruction::RegisterSwap(a, b) => {
            let pairs = Action::SwapRegisters(a.clone(), b.clone()).targets(layout)?.len() / 2;
            Ok(GateCounts {
                swap: pairs,
                ..GateCounts::default()
            })
        }
        Instruction::Controlled(op) => {
            op.resolve(layout)?;
            let polarity: Vec<bool> = op.projector.controls(layout)?.into_iter().map(|(_, b)| b).collect();
            match &op.action {
                Action::FlipQubit(_) => {
                    if polarity.is_empty() {
                        Ok(GateCounts {
                            single_qubit: 1,
                            ..GateCounts::default()
                        })
                    } else {
                        Ok(decompose_mcx(polarity.len(), &polarity)?.counts())
                    }
                }
                swap => {
                    let pairs = swap.targets(layout)?.len() / 2;
                    if polarity.is_empty() {
                        return Ok(GateCounts {
                            swap: pairs,
                            ..GateCounts::default()
                        });
                    }
                    let mut fredkin_controls = polarity;
                    fredkin_controls.push(true);
                    let fredkin = decompose_mcx(fredkin_controls.len(), &fredkin_controls)?.counts()
                        + GateCounts {
                            cnot: 2,
                            ..GateCounts::default()
                        };
                    Ok(fredkin * pairs)
                }
            }
        }
    }
}

/// Tallies an ordered trace of step-labelled instructions.
pub fn tally_gates(layout: &RegisterLayout, trace: &[TraceEntry<'_>]) -> Result<GateTally> {
    if trace.is_empty() {
        return Err(Error::EmptyTrace);
    }
    let mut steps: Vec<StepTally> = Vec::new();
    for entry in trace {
        let counts = instruction_counts(layout, entry.instruction)?;
        let step = match steps.iter_mut().find(|s| s.step == entry.step) {
            Some(s) => s,
            None => {
                steps.push(StepTally {
                    step: entry.step.to_owned(),
                    counts: GateCounts::default(),
                    groups: Vec::new(),
                });
                steps.last_mut().expect("just pushed")
            }
        };
        step.counts += counts;
        if let Some(group) = entry.group {
            match step.groups.iter_mut().find(|(g, _)| g == group) {
                Some((_, c)) => *c += counts,
                None => step.groups.push((group.to_owned(), counts)),
            }
        }
    }
    let total = steps.iter().map(|s| s.counts).sum();
    Ok(GateTally { steps, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{ControlledOp, Projector};

    #[test]
    fn empty_trace_is_rejected() {
        let layout = RegisterLayout::new([("q", 1)]).unwrap();
        assert_eq!(tally_gates(&layout, &[]), Err(Error::EmptyTrace));
    }

    #[test]
    fn fredkin_cost() {
        let layout = RegisterLayout::new([("R1", 3), ("R2", 3), ("B2", 1)]).unwrap();
        let op = Instruction::Controlled(ControlledOp::swap_registers(
            Projector::identity().register("B2", 1),
            "R1",
            "R2",
        ));
        let counts = instruction_counts(&layout, &op).unwrap();
        // per pair: MCX(2) = 2 Toffoli + 1 CNOT, plus 2 CNOT
        assert_eq!(
            counts,
            GateCounts {
                toffoli: 6,
                cnot: 9,
                single_qubit: 0,
                swap: 0
            }
        );
    }

    #[test]
    fn steps_accumulate_in_order() {
        let layout = RegisterLayout::new([("A", 2), ("B", 1)]).unwrap();
        let ops = [
            Instruction::Hadamard(vec!["A".into()]),
            Instruction::Controlled(ControlledOp::flip(Projector::identity().register("A", 3), "B", 0)),
            Instruction::Hadamard(vec!["B".into()]),
        ];
        let trace = [
            TraceEntry { step: "s1", group: None, instruction: &ops[0] },
            TraceEntry { step: "s2", group: Some("w"), instruction: &ops[1] },
            TraceEntry { step: "s1", group: None, instruction: &ops[2] },
        ];
        let tally = tally_gates(&layout, &trace).unwrap();
        assert_eq!(tally.steps.len(), 2);
        assert_eq!(tally.step("s1").unwrap().counts.single_qubit, 3);
        assert_eq!(tally.group("s2", "w").unwrap().toffoli, 2);
        assert_eq!(tally.total.total(), 3 + 3);
    }
}
