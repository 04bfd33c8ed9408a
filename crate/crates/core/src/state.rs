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

//! Dense state vectors bound to a register layout.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::layout::{BasisPattern, RegisterId, RegisterLayout};
use crate::matrix::Matrix;
use crate::scalar::{cone, czero, Real};

/// A pure state over `layout` holding all `2^q` amplitudes.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector<T> {
    layout: RegisterLayout,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StateVector<T> {
    /// The all-zero basis state.
    pub fn zero(layout: RegisterLayout) -> Self {
        let mut amplitudes = vec![czero(); layout.dimension()];
        amplitudes[0] = cone();
        Self { layout, amplitudes }
    }

    /// Wraps raw amplitudes; the table must be unit norm.
    pub fn from_amplitudes(layout: RegisterLayout, amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.len() != layout.dimension() {
            return Err(Error::TableLength {
                expected: layout.dimension(),
                actual: amplitudes.len(),
            });
        }
        check_unit(&amplitudes)?;
        Ok(Self { layout, amplitudes })
    }

    pub(crate) fn from_parts_unchecked(layout: RegisterLayout, amplitudes: Vec<Complex<T>>) -> Self {
        debug_assert_eq!(amplitudes.len(), layout.dimension());
        Self { layout, amplitudes }
    }

    pub fn layout(&self) -> &RegisterLayout {
        &self.layout
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amplitudes
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    /// Amplitude of the basis state fixing every register listed in `pattern`.
    ///
    /// Registers missing from the pattern are taken to be `|0>`.
    pub fn amplitude(&self, pattern: &BasisPattern) -> Result<Complex<T>> {
        let (_, value) = pattern.resolve(&self.layout)?;
        Ok(self.amplitudes[value])
    }

    /// Order-sensitive FNV-1a digest of the amplitude bit patterns.
    pub fn checksum(&self) -> u64 {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut hash = OFFSET;
        for z in &self.amplitudes {
            for part in [z.re, z.im] {
                // -0.0 and 0.0 hash alike
                let bits = (part.to_f64_lossy() + 0.0).to_bits();
                for byte in bits.to_le_bytes() {
                    hash ^= u64::from(byte);
                    hash = hash.wrapping_mul(PRIME);
                }
            }
        }
        hash
    }

    /// Basis indices and amplitudes whose modulus exceeds `threshold`.
    pub fn support(&self, threshold: T) -> Vec<(usize, Complex<T>)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, z)| z.norm() > threshold)
            .map(|(i, z)| (i, *z))
            .collect()
    }
}

fn check_unit<T: Real>(amplitudes: &[Complex<T>]) -> Result<()> {
    if let Some(i) = amplitudes.iter().position(|z| !crate::scalar::is_finite(z)) {
        return Err(Error::NonFinite { row: i, col: 0 });
    }
    let norm: T = amplitudes.iter().map(|z| z.norm_sqr()).sum();
    if (norm - T::one()).abs() > T::norm_tolerance() {
        return Err(Error::NotNormalized {
            norm_sqr: norm.to_f64_lossy(),
        });
    }
    Ok(())
}

/// An amplitude table over a contiguous group of registers.
#[derive(Clone, Debug, PartialEq)]
pub struct StatePart<T> {
    pub registers: Vec<(RegisterId, usize)>,
    pub amplitudes: Vec<Complex<T>>,
}

impl<T: Real> StatePart<T> {
    pub fn new<S: Into<RegisterId>>(
        registers: impl IntoIterator<Item = (S, usize)>,
        amplitudes: Vec<Complex<T>>,
    ) -> Self {
        Self {
            registers: registers.into_iter().map(|(r, w)| (r.into(), w)).collect(),
            amplitudes,
        }
    }

    /// `|0...0>` on a single register.
    pub fn zeros(register: impl Into<RegisterId>, width: usize) -> Self {
        let mut amplitudes = vec![czero(); 1usize << width];
        amplitudes[0] = cone();
        Self::new([(register.into(), width)], amplitudes)
    }

    /// A single basis state `|value>` on one register.
    pub fn basis(register: impl Into<RegisterId>, width: usize, value: usize) -> Self {
        let mut amplitudes = vec![czero(); 1usize << width];
        amplitudes[value] = cone();
        Self::new([(register.into(), width)], amplitudes)
    }
}

/// Tensor product of the parts, first part most significant.
pub fn prepare_product_state<T: Real>(parts: &[StatePart<T>]) -> Result<StateVector<T>> {
    let layout = RegisterLayout::new(
        parts
            .iter()
            .flat_map(|p| p.registers.iter().map(|(r, w)| (r.clone(), *w))),
    )?;
    let mut amplitudes = vec![cone::<T>()];
    for part in parts {
        let qubits: usize = part.registers.iter().map(|(_, w)| w).sum();
        let dim = 1usize << qubits;
        if part.amplitudes.len() != dim {
            return Err(Error::TableLength {
                expected: dim,
                actual: part.amplitudes.len(),
            });
        }
        check_unit(&part.amplitudes)?;
        let mut next = Vec::with_capacity(amplitudes.len() * dim);
        for a in &amplitudes {
            next.extend(part.amplitudes.iter().map(|b| a * b));
        }
        amplitudes = next;
    }
    Ok(StateVector::from_parts_unchecked(layout, amplitudes))
}

/// Reads the amplitudes of `|i>_row |j>_col` with every other register pinned by `fixed`.
///
/// No renormalization is applied. Fails if more than `T::norm_tolerance()` of the
/// probability mass sits outside the pinned subspace.
pub fn decode_matrix<T: Real>(
    state: &StateVector<T>,
    row_register: &str,
    col_register: &str,
    fixed: &BasisPattern,
) -> Result<Matrix<T>> {
    let layout = state.layout();
    for (reg, _) in layout.registers() {
        let r = reg.as_str();
        if r != row_register && r != col_register && fixed.value_of(r).is_none() {
            return Err(Error::UnpinnedRegister(r.to_owned()));
        }
    }
    let rows = 1usize << layout.width(row_register)?;
    let cols = 1usize << layout.width(col_register)?;
    let (mask, value) = fixed.resolve(layout)?;
    let mut out = Matrix::zeros(rows, cols);
    let mut leaked = T::zero();
    for (idx, amp) in state.amplitudes().iter().enumerate() {
        if idx & mask == value {
            let i = layout.extract(row_register, idx)?;
            let j = layout.extract(col_register, idx)?;
            out.set(i, j, *amp);
        } else {
            leaked += amp.norm_sqr();
        }
    }
    if leaked > T::norm_tolerance() {
        return Err(Error::DecodeLeak {
            mass: leaked.to_f64_lossy(),
        });
    }
    Ok(out)
}
