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

//! Named qubit registers and the global bit order.
//!
//! Registers are concatenated in declaration order with the first register
//! most significant. Inside a register qubit 0 is the most significant bit,
//! so the basis label `|i>` of a register reads as the binary expansion of `i`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of qubits a dense state may span.
pub const MAX_QUBITS: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RegisterId(String);

impl RegisterId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for RegisterId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

impl From<String> for RegisterId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl fmt::Display for RegisterId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One qubit of a named register; index 0 is the register's most significant qubit.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QubitRef {
    pub register: RegisterId,
    pub index: usize,
}

impl QubitRef {
    pub fn new(register: impl Into<RegisterId>, index: usize) -> Self {
        Self {
            register: register.into(),
            index,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct RegisterSpec {
    id: RegisterId,
    width: usize,
    offset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegisterLayout {
    registers: Vec<RegisterSpec>,
    total_qubits: usize,
}

impl RegisterLayout {
    pub fn new<S: Into<RegisterId>>(registers: impl IntoIterator<Item = (S, usize)>) -> Result<Self> {
        let mut specs: Vec<RegisterSpec> = Vec::new();
        let mut offset = 0;
        for (id, width) in registers {
            let id = id.into();
            if width == 0 {
                return Err(Error::EmptyRegister(id.0));
            }
            if specs.iter().any(|s| s.id == id) {
                return Err(Error::DuplicateRegister(id.0));
            }
            specs.push(RegisterSpec { id, width, offset });
            offset += width;
        }
        if offset > MAX_QUBITS {
            return Err(Error::CapacityExceeded {
                requested: offset,
                capacity: MAX_QUBITS,
            });
        }
        Ok(Self {
            registers: specs,
            total_qubits: offset,
        })
    }

    /// Concatenation of two layouts, `self` most significant.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        Self::new(
            self.registers()
                .chain(other.registers())
                .map(|(id, w)| (id.clone(), w)),
        )
    }

    pub fn total_qubits(&self) -> usize {
        self.total_qubits
    }

    pub fn dimension(&self) -> usize {
        1usize << self.total_qubits
    }

    /// `(name, width)` pairs in declaration order.
    pub fn registers(&self) -> impl Iterator<Item = (&RegisterId, usize)> {
        self.registers.iter().map(|s| (&s.id, s.width))
    }

    pub fn contains(&self, register: &str) -> bool {
        self.spec(register).is_ok()
    }

    fn spec(&self, register: &str) -> Result<&RegisterSpec> {
        self.registers
            .iter()
            .find(|s| s.id.as_str() == register)
            .ok_or_else(|| Error::UnknownRegister(register.to_owned()))
    }

    pub fn width(&self, register: &str) -> Result<usize> {
        self.spec(register).map(|s| s.width)
    }

    /// Number of qubits declared before `register`.
    pub fn offset(&self, register: &str) -> Result<usize> {
        self.spec(register).map(|s| s.offset)
    }

    /// Right shift that brings the register's least significant qubit to bit 0 of a basis index.
    pub fn shift(&self, register: &str) -> Result<usize> {
        let s = self.spec(register)?;
        Ok(self.total_qubits - s.offset - s.width)
    }

    /// Mask of the register's bits within a basis index.
    pub fn mask(&self, register: &str) -> Result<usize> {
        let s = self.spec(register)?;
        Ok(((1usize << s.width) - 1) << (self.total_qubits - s.offset - s.width))
    }

    /// Value held by `register` in basis state `index`.
    pub fn extract(&self, register: &str, index: usize) -> Result<usize> {
        let s = self.spec(register)?;
        let shift = self.total_qubits - s.offset - s.width;
        Ok((index >> shift) & ((1usize << s.width) - 1))
    }

    /// Bit position of a qubit inside a basis index (0 = least significant).
    pub fn bit_position(&self, qubit: &QubitRef) -> Result<usize> {
        let s = self.spec(qubit.register.as_str())?;
        if qubit.index >= s.width {
            return Err(Error::QubitOutOfRange {
                register: s.id.0.clone(),
                index: qubit.index,
                width: s.width,
            });
        }
        Ok(self.total_qubits - 1 - s.offset - qubit.index)
    }

    /// Every qubit of `register`, most significant first.
    pub fn qubits_of(&self, register: &str) -> Result<Vec<QubitRef>> {
        let s = self.spec(register)?;
        Ok((0..s.width).map(|i| QubitRef::new(s.id.clone(), i)).collect())
    }

    /// Ket label such as `|01>R1|1>B1` for a basis index.
    pub fn ket_label(&self, index: usize) -> String {
        let mut out = String::new();
        for s in &self.registers {
            let shift = self.total_qubits - s.offset - s.width;
            let value = (index >> shift) & ((1usize << s.width) - 1);
            out.push_str(&format!("|{:0w$b}>{}", value, s.id, w = s.width));
        }
        out
    }
}

/// Basis values pinned on a subset of registers.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BasisPattern(Vec<(RegisterId, usize)>);

impl BasisPattern {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, register: impl Into<RegisterId>, value: usize) -> Self {
        self.0.push((register.into(), value));
        self
    }

    pub fn entries(&self) -> &[(RegisterId, usize)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value_of(&self, register: &str) -> Option<usize> {
        self.0
            .iter()
            .find(|(r, _)| r.as_str() == register)
            .map(|&(_, v)| v)
    }

    /// `(mask, value)` over basis indices of `layout` selecting the pattern.
    pub fn resolve(&self, layout: &RegisterLayout) -> Result<(usize, usize)> {
        let mut mask = 0;
        let mut value = 0;
        for (reg, v) in &self.0 {
            let width = layout.width(reg.as_str())?;
            if *v >= 1usize << width {
                return Err(Error::ValueOutOfRange {
                    register: reg.to_string(),
                    value: *v,
                    width,
                });
            }
            let m = layout.mask(reg.as_str())?;
            if mask & m != 0 {
                return Err(Error::RepeatedQubit {
                    register: reg.to_string(),
                    index: 0,
                });
            }
            mask |= m;
            value |= v << layout.shift(reg.as_str())?;
        }
        Ok((mask, value))
    }
}

impl<S: Into<RegisterId>> FromIterator<(S, usize)> for BasisPattern {
    fn from_iter<I: IntoIterator<Item = (S, usize)>>(iter: I) -> Self {
        Self(iter.into_iter().map(|(r, v)| (r.into(), v)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn msb_first_order() {
        let layout = RegisterLayout::new([("R", 2), ("B", 1)]).unwrap();
        // |10>R|1>B = 0b101
        assert_eq!(layout.extract("R", 0b101).unwrap(), 0b10);
        assert_eq!(layout.extract("B", 0b101).unwrap(), 1);
        assert_eq!(layout.bit_position(&QubitRef::new("R", 0)).unwrap(), 2);
        assert_eq!(layout.bit_position(&QubitRef::new("B", 0)).unwrap(), 0);
        assert_eq!(layout.ket_label(0b101), "|10>R|1>B");
    }

    #[test]
    fn rejects_bad_layouts() {
        assert_eq!(
            RegisterLayout::new([("R", 1), ("R", 2)]),
            Err(Error::DuplicateRegister("R".into()))
        );
        assert_eq!(
            RegisterLayout::new([("R", 0)]),
            Err(Error::EmptyRegister("R".into()))
        );
        assert!(matches!(
            RegisterLayout::new([("R", 20), ("C", 7)]),
            Err(Error::CapacityExceeded { requested: 27, .. })
        ));
        assert!(RegisterLayout::new([("R", 20), ("C", 6)]).is_ok());
    }

    #[test]
    fn pattern_resolution() {
        let layout = RegisterLayout::new([("R", 2), ("B", 2)]).unwrap();
        let (mask, value) = BasisPattern::new().with("B", 0b01).resolve(&layout).unwrap();
        assert_eq!((mask, value), (0b0011, 0b0001));
        assert!(BasisPattern::new().with("B", 4).resolve(&layout).is_err());
        assert!(BasisPattern::new().with("X", 0).resolve(&layout).is_err());
    }
}
