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

//! Projector-controlled operators, Hadamard layers and register swaps.
//!
//! A [`ControlledOp`] realizes `P (x) U + (I - P) (x) I`, where `P` projects
//! the control qubits onto a fixed bit pattern and `U` is either a Pauli-X
//! on one target qubit or a swap of qubits. Both actions are permutations
//! of the computational basis, so the dense simulation only moves
//! amplitudes and never does arithmetic on them.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::layout::{QubitRef, RegisterId, RegisterLayout};
use crate::scalar::Real;
use crate::state::StateVector;

/// One clause of a projector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// The whole register holds `value`.
    Register { register: RegisterId, value: usize },
    /// A single qubit holds `bit`.
    Qubit { qubit: QubitRef, bit: bool },
}

/// `|pattern><pattern|` on the referenced qubits, identity elsewhere.
///
/// The empty projector is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Projector {
    conditions: Vec<Condition>,
}

impl Projector {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn register(mut self, register: impl Into<RegisterId>, value: usize) -> Self {
        self.conditions.push(Condition::Register {
            register: register.into(),
            value,
        });
        self
    }

    pub fn qubit(mut self, register: impl Into<RegisterId>, index: usize, bit: bool) -> Self {
        self.conditions.push(Condition::Qubit {
            qubit: QubitRef::new(register, index),
            bit,
        });
        self
    }

    pub fn conditions(&self) -> &[Condition] {
        &self.conditions
    }

    /// Control qubits with their required values, in condition order.
    pub fn controls(&self, layout: &RegisterLayout) -> Result<Vec<(QubitRef, bool)>> {
        let mut out: Vec<(QubitRef, bool)> = Vec::new();
        for cond in &self.conditions {
            match cond {
                Condition::Register { register, value } => {
                    let width = layout.width(register.as_str())?;
                    if *value >= 1usize << width {
                        return Err(Error::ValueOutOfRange {
                            register: register.to_string(),
                            value: *value,
                            width,
                        });
                    }
                    for i in 0..width {
                        out.push((QubitRef::new(register.clone(), i), (value >> (width - 1 - i)) & 1 == 1));
                    }
                }
                Condition::Qubit { qubit, bit } => {
                    layout.bit_position(qubit)?;
                    out.push((qubit.clone(), *bit));
                }
            }
        }
        for (i, (q, _)) in out.iter().enumerate() {
            if out[..i].iter().any(|(p, _)| p == q) {
                return Err(Error::RepeatedQubit {
                    register: q.register.to_string(),
                    index: q.index,
                });
            }
        }
        Ok(out)
    }
}

/// What happens inside the projected subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Action {
    FlipQubit(QubitRef),
    /// Qubit-pairwise exchange of two equal-width registers.
    SwapRegisters(RegisterId, RegisterId),
    SwapQubits(QubitRef, QubitRef),
}

impl Action {
    /// Target qubits, paired for swaps.
    pub fn targets(&self, layout: &RegisterLayout) -> Result<Vec<QubitRef>> {
        match self {
            Action::FlipQubit(q) => {
                layout.bit_position(q)?;
                Ok(vec![q.clone()])
            }
            Action::SwapRegisters(a, b) => {
                if a == b {
                    return Err(Error::SelfSwap(a.to_string()));
                }
                let (wa, wb) = (layout.width(a.as_str())?, layout.width(b.as_str())?);
                if wa != wb {
                    return Err(Error::WidthMismatch {
                        a: a.to_string(),
                        width_a: wa,
                        b: b.to_string(),
                        width_b: wb,
                    });
                }
                let mut out = layout.qubits_of(a.as_str())?;
                out.extend(layout.qubits_of(b.as_str())?);
                Ok(out)
            }
            Action::SwapQubits(a, b) => {
                layout.bit_position(a)?;
                layout.bit_position(b)?;
                if a == b {
                    return Err(Error::RepeatedQubit {
                        register: a.register.to_string(),
                        index: a.index,
                    });
                }
                Ok(vec![a.clone(), b.clone()])
            }
        }
    }

    /// Pairs of bit positions exchanged by a swap action.
    fn swap_pairs(&self, layout: &RegisterLayout) -> Result<Vec<(usize, usize)>> {
        match self {
            Action::FlipQubit(_) => Ok(Vec::new()),
            Action::SwapRegisters(a, b) => {
                let qa = layout.qubits_of(a.as_str())?;
                let qb = layout.qubits_of(b.as_str())?;
                qa.iter()
                    .zip(&qb)
                    .map(|(x, y)| Ok((layout.bit_position(x)?, layout.bit_position(y)?)))
                    .collect()
            }
            Action::SwapQubits(a, b) => Ok(vec![(layout.bit_position(a)?, layout.bit_position(b)?)]),
        }
    }
}

/// `P (x) U + (I - P) (x) I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ControlledOp {
    pub projector: Projector,
    pub action: Action,
}

impl ControlledOp {
    pub fn new(projector: Projector, action: Action) -> Self {
        Self { projector, action }
    }

    /// Multi-controlled X on `target`.
    pub fn flip(projector: Projector, register: impl Into<RegisterId>, index: usize) -> Self {
        Self::new(projector, Action::FlipQubit(QubitRef::new(register, index)))
    }

    pub fn swap_registers(projector: Projector, a: impl Into<RegisterId>, b: impl Into<RegisterId>) -> Self {
        Self::new(projector, Action::SwapRegisters(a.into(), b.into()))
    }

    /// Checks the op against `layout` and lowers it to bit masks.
    pub fn resolve(&self, layout: &RegisterLayout) -> Result<ResolvedOp> {
        let controls = self.projector.controls(layout)?;
        let targets = self.action.targets(layout)?;
        for t in &targets {
            if controls.iter().any(|(c, _)| c == t) {
                return Err(Error::ControlTargetOverlap {
                    register: t.register.to_string(),
                    index: t.index,
                });
            }
        }
        let mut mask = 0;
        let mut value = 0;
        for (q, bit) in &controls {
            let pos = layout.bit_position(q)?;
            mask |= 1 << pos;
            if *bit {
                value |= 1 << pos;
            }
        }
        let kind = match &self.action {
            Action::FlipQubit(q) => ResolvedAction::Flip(1 << layout.bit_position(q)?),
            other => ResolvedAction::Swap(other.swap_pairs(layout)?),
        };
        Ok(ResolvedOp {
            control_mask: mask,
            control_value: value,
            action: kind,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum ResolvedAction {
    Flip(usize),
    Swap(Vec<(usize, usize)>),
}

/// A [`ControlledOp`] lowered onto basis-index bit masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedOp {
    control_mask: usize,
    control_value: usize,
    action: ResolvedAction,
}

impl ResolvedOp {
    /// Image of basis index `idx`.
    pub fn map_index(&self, idx: usize) -> usize {
        if idx & self.control_mask != self.control_value {
            return idx;
        }
        match &self.action {
            ResolvedAction::Flip(bit) => idx ^ bit,
            ResolvedAction::Swap(pairs) => swap_bits(idx, pairs),
        }
    }

    pub(crate) fn apply_in_place<T: Real>(&self, amps: &mut [Complex<T>]) {
        match &self.action {
            ResolvedAction::Flip(bit) => {
                for idx in 0..amps.len() {
                    if idx & bit == 0 && idx & self.control_mask == self.control_value {
                        amps.swap(idx, idx | bit);
                    }
                }
            }
            ResolvedAction::Swap(pairs) => {
                for idx in 0..amps.len() {
                    if idx & self.control_mask == self.control_value {
                        let j = swap_bits(idx, pairs);
                        if j > idx {
                            amps.swap(idx, j);
                        }
                    }
                }
            }
        }
    }
}

fn swap_bits(idx: usize, pairs: &[(usize, usize)]) -> usize {
    let mut out = idx;
    for &(a, b) in pairs {
        let ba = (idx >> a) & 1;
        let bb = (idx >> b) & 1;
        if ba != bb {
            out ^= (1 << a) | (1 << b);
        }
    }
    out
}

pub fn apply_controlled<T: Real>(state: &StateVector<T>, op: &ControlledOp) -> Result<StateVector<T>> {
    let resolved = op.resolve(state.layout())?;
    let mut out = state.clone();
    resolved.apply_in_place(out.amplitudes_mut());
    Ok(out)
}

/// Hadamard targets: single qubits or whole registers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HadamardTarget {
    Qubit(QubitRef),
    Register(RegisterId),
}

impl From<QubitRef> for HadamardTarget {
    fn from(q: QubitRef) -> Self {
        Self::Qubit(q)
    }
}

impl From<&str> for HadamardTarget {
    fn from(r: &str) -> Self {
        Self::Register(r.into())
    }
}

/// Expands targets to distinct bit positions.
pub(crate) fn hadamard_positions(layout: &RegisterLayout, targets: &[HadamardTarget]) -> Result<Vec<usize>> {
    let mut qubits: Vec<QubitRef> = Vec::new();
    for t in targets {
        match t {
            HadamardTarget::Qubit(q) => qubits.push(q.clone()),
            HadamardTarget::Register(r) => qubits.extend(layout.qubits_of(r.as_str())?),
        }
    }
    let mut positions = Vec::with_capacity(qubits.len());
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::RepeatedQubit {
                register: q.register.to_string(),
                index: q.index,
            });
        }
        positions.push(layout.bit_position(q)?);
    }
    Ok(positions)
}

pub(crate) fn hadamard_in_place<T: Real>(amps: &mut [Complex<T>], positions: &[usize]) {
    let h = T::FRAC_1_SQRT_2();
    for &pos in positions {
        let bit = 1usize << pos;
        for idx in 0..amps.len() {
            if idx & bit == 0 {
                let a = amps[idx];
                let b = amps[idx | bit];
                amps[idx] = (a + b) * h;
                amps[idx | bit] = (a - b) * h;
            }
        }
    }
}

pub fn apply_hadamard_layer<T: Real>(state: &StateVector<T>, targets: &[HadamardTarget]) -> Result<StateVector<T>> {
    let positions = hadamard_positions(state.layout(), targets)?;
    let mut out = state.clone();
    hadamard_in_place(out.amplitudes_mut(), &positions);
    Ok(out)
}

/// `|x>_a |y>_b -> |y>_a |x>_b`, an exact permutation of amplitudes.
pub fn apply_register_swap<T: Real>(state: &StateVector<T>, reg_a: &str, reg_b: &str) -> Result<StateVector<T>> {
    apply_controlled(
        state,
        &ControlledOp::swap_registers(Projector::identity(), reg_a, reg_b),
    )
}
