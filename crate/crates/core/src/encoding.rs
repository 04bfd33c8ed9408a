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

//! Amplitude encoding of classical matrices and of the auxiliary row-selector states.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::layout::RegisterId;
use crate::matrix::Matrix;
use crate::scalar::{czero, is_finite, Real};
use crate::state::StatePart;

/// A matrix zero-padded to power-of-two dimensions and scaled to unit Frobenius norm.
#[derive(Clone, Debug, PartialEq)]
pub struct EncodedMatrix<T> {
    matrix: Matrix<T>,
    original_rows: usize,
    original_cols: usize,
    frobenius_scale: T,
}

/// Smallest power of two that is `>= n` and at least 2.
fn padded_dim(n: usize) -> usize {
    n.next_power_of_two().max(2)
}

pub fn encode_matrix<T: Real>(matrix: &Matrix<T>) -> Result<EncodedMatrix<T>> {
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            if !is_finite(&matrix.get(i, j)) {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    let norm_sqr = matrix.frobenius_norm_sqr();
    if norm_sqr == T::zero() {
        return Err(Error::ZeroMatrix);
    }
    let scale = norm_sqr.sqrt();
    let rows = padded_dim(matrix.rows());
    let cols = padded_dim(matrix.cols());
    let mut padded = Matrix::zeros(rows, cols);
    for i in 0..matrix.rows() {
        for j in 0..matrix.cols() {
            padded.set(i, j, matrix.get(i, j) / scale);
        }
    }
    Ok(EncodedMatrix {
        matrix: padded,
        original_rows: matrix.rows(),
        original_cols: matrix.cols(),
        frobenius_scale: scale,
    })
}

impl<T: Real> EncodedMatrix<T> {
    /// Normalized, padded entries.
    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// Qubits needed to enumerate rows.
    pub fn row_qubits(&self) -> usize {
        self.rows().trailing_zeros() as usize
    }

    pub fn col_qubits(&self) -> usize {
        self.cols().trailing_zeros() as usize
    }

    pub fn original_rows(&self) -> usize {
        self.original_rows
    }

    pub fn original_cols(&self) -> usize {
        self.original_cols
    }

    /// The factor divided out of the input to reach unit norm.
    pub fn frobenius_scale(&self) -> T {
        self.frobenius_scale
    }

    /// Normalized entries with the padding stripped.
    pub fn unpadded(&self) -> Matrix<T> {
        self.matrix.block(self.original_rows, self.original_cols)
    }

    /// `sum_ij a_ij |i>_rows |j>_cols`.
    pub fn state_part(&self, rows: impl Into<RegisterId>, cols: impl Into<RegisterId>) -> StatePart<T> {
        StatePart::new(
            [(rows.into(), self.row_qubits()), (cols.into(), self.col_qubits())],
            self.matrix.as_slice().to_vec(),
        )
    }

    /// Zero-pads to a square of side `max(rows, cols)` keeping the same scale.
    pub fn padded_square(&self) -> Self {
        let side = self.rows().max(self.cols());
        Self {
            matrix: self.matrix.block(side, side),
            original_rows: self.original_rows,
            original_cols: self.original_cols,
            frobenius_scale: self.frobenius_scale,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AncillaKind {
    /// `(|k> + |l>)/sqrt2` on one row register.
    RowAdd,
    /// `(|l>|k> + |k>|k> + |l>|l>)/sqrt3` on a (row, column) register pair.
    RowSwap,
}

/// The auxiliary selector state for the row operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AncillaVector {
    kind: AncillaKind,
    k: usize,
    l: usize,
}

impl AncillaVector {
    pub fn new(kind: AncillaKind, k: usize, l: usize, rows: usize) -> Result<Self> {
        for index in [k, l] {
            if index >= rows {
                return Err(Error::RowOutOfRange { index, rows });
            }
        }
        if k == l {
            return Err(Error::EqualRows(k));
        }
        Ok(Self { kind, k, l })
    }

    pub fn kind(&self) -> AncillaKind {
        self.kind
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    /// Amplitude table over `width` qubits (row-add) or `2 * width` qubits (row-swap).
    pub fn amplitudes<T: Real>(&self, width: usize) -> Vec<Complex<T>> {
        let dim = 1usize << width;
        match self.kind {
            AncillaKind::RowAdd => {
                let a = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
                let mut v = vec![czero(); dim];
                v[self.k] = a;
                v[self.l] = a;
                v
            }
            AncillaKind::RowSwap => {
                let a = Complex::new(T::one() / T::from_f64_lossy(3.0).sqrt(), T::zero());
                let mut v = vec![czero(); dim * dim];
                for (row, col) in [(self.l, self.k), (self.k, self.k), (self.l, self.l)] {
                    v[row * dim + col] = a;
                }
                v
            }
        }
    }
}
