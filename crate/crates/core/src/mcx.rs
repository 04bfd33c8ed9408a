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

//! Multi-controlled X as a Toffoli ladder over clean work qubits.
//!
//! For `c >= 2` controls the network computes the AND of all controls into
//! work qubit `c - 2` with `c - 1` Toffolis, copies it onto the target with
//! one CNOT and uncomputes the ladder. That is `2(c - 1)` Toffolis, one CNOT
//! and `c - 1` work qubits, all returned to `|0>`. A single control is a bare
//! CNOT. Zero-controls are conjugated with X on both sides.
//!
//! Qubit numbering inside a network: controls `0..c`, target `c`, work
//! qubits `c + 1 ..`.

use crate::error::{Error, Result};
use crate::tally::GateCounts;

pub const MAX_MCX_CONTROLS: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NetGate {
    X(usize),
    Cnot { control: usize, target: usize },
    Toffoli { c1: usize, c2: usize, target: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McxNetwork {
    num_controls: usize,
    num_work: usize,
    gates: Vec<NetGate>,
}

impl McxNetwork {
    pub fn num_controls(&self) -> usize {
        self.num_controls
    }

    pub fn num_work(&self) -> usize {
        self.num_work
    }

    pub fn target(&self) -> usize {
        self.num_controls
    }

    pub fn num_qubits(&self) -> usize {
        self.num_controls + 1 + self.num_work
    }

    pub fn gates(&self) -> &[NetGate] {
        &self.gates
    }

    pub fn counts(&self) -> GateCounts {
        let mut counts = GateCounts::default();
        for g in &self.gates {
            match g {
                NetGate::X(_) => counts.single_qubit += 1,
                NetGate::Cnot { .. } => counts.cnot += 1,
                NetGate::Toffoli { .. } => counts.toffoli += 1,
            }
        }
        counts
    }

    /// Classical action on a bit string, qubit `i` at bit `i`.
    pub fn apply_to_bits(&self, mut bits: u64) -> u64 {
        let get = |b: u64, q: usize| (b >> q) & 1 == 1;
        for g in &self.gates {
            match *g {
                NetGate::X(q) => bits ^= 1 << q,
                NetGate::Cnot { control, target } => {
                    if get(bits, control) {
                        bits ^= 1 << target;
                    }
                }
                NetGate::Toffoli { c1, c2, target } => {
                    if get(bits, c1) && get(bits, c2) {
                        bits ^= 1 << target;
                    }
                }
            }
        }
        bits
    }
}

/// Decomposes an X on one target controlled by `polarity.len()` qubits, control
/// `i` firing when it holds `polarity[i]`.
pub fn decompose_mcx(num_controls: usize, polarity: &[bool]) -> Result<McxNetwork> {
    if num_controls == 0 || num_controls > MAX_MCX_CONTROLS {
        return Err(Error::ControlCount {
            got: num_controls,
            max: MAX_MCX_CONTROLS,
        });
    }
    if polarity.len() != num_controls {
        return Err(Error::PolarityLength {
            expected: num_controls,
            got: polarity.len(),
        });
    }
    let c = num_controls;
    let target = c;
    let work = |i: usize| c + 1 + i;
    let flips: Vec<NetGate> = (0..c).filter(|&i| !polarity[i]).map(NetGate::X).collect();

    let mut gates = flips.clone();
    let num_work = if c == 1 {
        gates.push(NetGate::Cnot { control: 0, target });
        0
    } else {
        let mut ladder = vec![NetGate::Toffoli {
            c1: 0,
            c2: 1,
            target: work(0),
        }];
        for i in 2..c {
            ladder.push(NetGate::Toffoli {
                c1: i,
                c2: work(i - 2),
                target: work(i - 1),
            });
        }
        gates.extend(ladder.iter().copied());
        gates.push(NetGate::Cnot {
            control: work(c - 2),
            target,
        });
        gates.extend(ladder.iter().rev().copied());
        c - 1
    };
    gates.extend(flips);
    Ok(McxNetwork {
        num_controls: c,
        num_work,
        gates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_control_is_cnot() {
        let net = decompose_mcx(1, &[true]).unwrap();
        assert_eq!(net.gates(), &[NetGate::Cnot { control: 0, target: 1 }]);
        let neg = decompose_mcx(1, &[false]).unwrap();
        assert_eq!(neg.counts().single_qubit, 2);
        assert_eq!(neg.counts().cnot, 1);
    }

    #[test]
    fn counts_are_affine_in_controls() {
        for c in 1..=MAX_MCX_CONTROLS {
            let net = decompose_mcx(c, &vec![true; c]).unwrap();
            let counts = net.counts();
            assert_eq!(counts.toffoli, 2 * (c - 1));
            assert_eq!(counts.cnot, 1);
            assert_eq!(net.num_work(), c - 1);
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(decompose_mcx(0, &[]).is_err());
        assert!(decompose_mcx(25, &[true; 25]).is_err());
        assert_eq!(
            decompose_mcx(3, &[true]),
            Err(Error::PolarityLength { expected: 3, got: 1 })
        );
    }

    #[test]
    fn permutation_on_basis_states() {
        let polarity = [true, false, true, true, false];
        let net = decompose_mcx(5, &polarity).unwrap();
        for x in 0u64..1 << 6 {
            let out = net.apply_to_bits(x);
            let fires = (0..5).all(|i| ((x >> i) & 1 == 1) == polarity[i]);
            let expected = if fires { x ^ (1 << 5) } else { x };
            assert_eq!(out, expected);
        }
    }
}
