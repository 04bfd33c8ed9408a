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


//! Classical reference implementations.
//!
//! Everything here works on plain nested index loops and reads registers with
//! its own bit arithmetic; none of it calls into the simulator, so agreement
//! between the two is meaningful.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::gates::{Action, Condition, ControlledOp};
use crate::layout::RegisterLayout;
use crate::matrix::Matrix;
use crate::mcx::{McxNetwork, NetGate};
use crate::scalar::Real;

/// Largest layout [`dense_unitary_of`] will expand.
pub const MAX_DENSE_QUBITS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult<T> {
    /// Output matrix for row operations and transpose.
    pub matrix: Option<Matrix<T>>,
    /// Output scalar for trace.
    pub scalar: Option<Complex<T>>,
    /// `G`, for row-add only.
    pub normalization_g: Option<T>,
    pub predicted_probability: T,
}

fn check_rows<T: Real>(a: &Matrix<T>, k: usize, l: usize) -> Result<()> {
    for idx in [k, l] {
        if idx >= a.rows() {
            return Err(Error::RowOutOfRange { index: idx, rows: a.rows() });
        }
    }
    if k == l {
        return Err(Error::EqualRows(k));
    }
    Ok(())
}

/// Row `l` replaced by row `l` + row `k`, without renormalization.
///
/// `G` comes from the closed form `sum_{i != l} |a_ij|^2 + sum_j |a_kj + a_lj|^2`,
/// independently of the returned matrix.
pub fn oracle_row_add<T: Real>(a: &Matrix<T>, k: usize, l: usize) -> Result<OracleResult<T>> {
    check_rows(a, k, l)?;
    let mut out = a.clone();
    for j in 0..a.cols() {
        out.set(l, j, a.get(l, j) + a.get(k, j));
    }
    let mut g2 = T::zero();
    for i in 0..a.rows() {
        if i == l {
            continue;
        }
        for j in 0..a.cols() {
            g2 += a.get(i, j).norm_sqr();
        }
    }
    for j in 0..a.cols() {
        g2 += (a.get(k, j) + a.get(l, j)).norm_sqr();
    }
    Ok(OracleResult {
        matrix: Some(out),
        scalar: None,
        normalization_g: Some(g2.sqrt()),
        predicted_probability: g2 / T::from_f64_lossy(8.0),
    })
}

pub fn oracle_row_swap<T: Real>(a: &Matrix<T>, k: usize, l: usize) -> Result<OracleResult<T>> {
    check_rows(a, k, l)?;
    let mut out = a.clone();
    for j in 0..a.cols() {
        out.set(k, j, a.get(l, j));
        out.set(l, j, a.get(k, j));
    }
    Ok(OracleResult {
        matrix: Some(out),
        scalar: None,
        normalization_g: None,
        predicted_probability: T::one() / T::from_f64_lossy(24.0),
    })
}

/// `sum_i a_ii` and `|tr|^2 / 2^(3n)` where `2^n` is the padded side.
pub fn oracle_trace<T: Real>(s: &Matrix<T>) -> Result<OracleResult<T>> {
    if s.rows() != s.cols() {
        return Err(Error::NotSquare {
            rows: s.rows(),
            cols: s.cols(),
        });
    }
    if s.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut tr = Complex::new(T::zero(), T::zero());
    for i in 0..s.rows() {
        tr += s.get(i, i);
    }
    let mut n = 1;
    while (1usize << n) < s.rows() {
        n += 1;
    }
    let denom = T::from_f64_lossy(2f64.powi(3 * n));
    Ok(OracleResult {
        matrix: None,
        scalar: Some(tr),
        normalization_g: None,
        predicted_probability: tr.norm_sqr() / denom,
    })
}

pub fn oracle_transpose<T: Real>(s: &Matrix<T>) -> Result<OracleResult<T>> {
    let mut out = Matrix::zeros(s.cols(), s.rows());
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            out.set(j, i, s.get(i, j));
        }
    }
    Ok(OracleResult {
        matrix: Some(out),
        scalar: None,
        normalization_g: None,
        predicted_probability: T::one(),
    })
}

/// Register name -> (first bit from the top, width), recomputed from the
/// declaration order.
fn spans(layout: &RegisterLayout) -> Vec<(String, usize, usize)> {
    let mut start = 0;
    let mut out = Vec::new();
    for (r, w) in layout.registers() {
        out.push((r.as_str().to_owned(), start, w));
        start += w;
    }
    out
}

struct Bits {
    spans: Vec<(String, usize, usize)>,
    total: usize,
}

impl Bits {
    fn span(&self, reg: &str) -> Result<(usize, usize)> {
        self.spans
            .iter()
            .find(|(r, _, _)| r == reg)
            .map(|(_, s, w)| (*s, *w))
            .ok_or_else(|| Error::UnknownRegister(reg.to_owned()))
    }

    /// Bit position (from the least significant end) of qubit `q` of `reg`.
    fn pos(&self, reg: &str, q: usize) -> Result<usize> {
        let (start, width) = self.span(reg)?;
        if q >= width {
            return Err(Error::QubitOutOfRange {
                register: reg.to_owned(),
                index: q,
                width,
            });
        }
        Ok(self.total - 1 - start - q)
    }

    fn read(&self, idx: usize, reg: &str, q: usize) -> Result<bool> {
        Ok((idx >> self.pos(reg, q)?) & 1 == 1)
    }

    fn write(&self, idx: usize, reg: &str, q: usize, bit: bool) -> Result<usize> {
        let p = self.pos(reg, q)?;
        Ok((idx & !(1 << p)) | ((bit as usize) << p))
    }
}

fn image(bits: &Bits, op: &ControlledOp, idx: usize) -> Result<usize> {
    for cond in op.projector.conditions() {
        let holds = match cond {
            Condition::Register { register, value } => {
                let (_, w) = bits.span(register.as_str())?;
                let mut v = 0;
                for q in 0..w {
                    v = (v << 1) | bits.read(idx, register.as_str(), q)? as usize;
                }
                v == *value
            }
            Condition::Qubit { qubit, bit } => bits.read(idx, qubit.register.as_str(), qubit.index)? == *bit,
        };
        if !holds {
            return Ok(idx);
        }
    }
    let exchange = |idx: usize, ra: &str, qa: usize, rb: &str, qb: usize| -> Result<usize> {
        let x = bits.read(idx, ra, qa)?;
        let y = bits.read(idx, rb, qb)?;
        bits.write(bits.write(idx, ra, qa, y)?, rb, qb, x)
    };
    match &op.action {
        Action::FlipQubit(q) => {
            let b = bits.read(idx, q.register.as_str(), q.index)?;
            bits.write(idx, q.register.as_str(), q.index, !b)
        }
        Action::SwapQubits(a, b) => exchange(idx, a.register.as_str(), a.index, b.register.as_str(), b.index),
        Action::SwapRegisters(a, b) => {
            let (_, wa) = bits.span(a.as_str())?;
            let (_, wb) = bits.span(b.as_str())?;
            if wa != wb {
                return Err(Error::WidthMismatch {
                    a: a.to_string(),
                    width_a: wa,
                    b: b.to_string(),
                    width_b: wb,
                });
            }
            let mut out = idx;
            for q in 0..wa {
                out = exchange(out, a.as_str(), q, b.as_str(), q)?;
            }
            Ok(out)
        }
    }
}

fn check_dense(qubits: usize) -> Result<usize> {
    if qubits > MAX_DENSE_QUBITS {
        return Err(Error::DenseTooLarge {
            got: qubits,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(1usize << qubits)
}

/// `P (x) U + (I - P) (x) I` as an explicit `2^q x 2^q` matrix.
pub fn dense_unitary_of<T: Real>(op: &ControlledOp, layout: &RegisterLayout) -> Result<Matrix<T>> {
    let dim = check_dense(layout.total_qubits())?;
    let bits = Bits {
        spans: spans(layout),
        total: layout.total_qubits(),
    };
    let mut u = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let row = image(&bits, op, col)?;
        u.set(row, col, Complex::new(T::one(), T::zero()));
    }
    Ok(u)
}

/// Dense unitary of a gate network; network qubit `i` is bit `i` of the index.
pub fn dense_unitary_of_network<T: Real>(net: &McxNetwork) -> Result<Matrix<T>> {
    let dim = check_dense(net.num_qubits())?;
    let mut u = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let mut v = col;
        for g in net.gates() {
            match *g {
                NetGate::X(q) => v ^= 1 << q,
                NetGate::Cnot { control, target } => {
                    if v & (1 << control) != 0 {
                        v ^= 1 << target;
                    }
                }
                NetGate::Toffoli { c1, c2, target } => {
                    if v & (1 << c1) != 0 && v & (1 << c2) != 0 {
                        v ^= 1 << target;
                    }
                }
            }
        }
        u.set(v, col, Complex::new(T::one(), T::zero()));
    }
    Ok(u)
}

/// The multi-controlled X itself on `c + 1` qubits: controls at bits `0..c`,
/// target at bit `c`, control `i` firing on `polarity[i]`.
pub fn dense_mcx<T: Real>(polarity: &[bool]) -> Result<Matrix<T>> {
    let c = polarity.len();
    let dim = check_dense(c + 1)?;
    let mut u = Matrix::zeros(dim, dim);
    for col in 0..dim {
        let fires = polarity.iter().enumerate().all(|(i, &p)| ((col >> i) & 1 == 1) == p);
        let row = if fires { col ^ (1 << c) } else { col };
        u.set(row, col, Complex::new(T::one(), T::zero()));
    }
    Ok(u)
}

/// The block of `u` acting on the low `data_qubits` bits with every higher bit
/// held at zero on input. `None` if some clean input leaves the clean subspace.
pub fn clean_work_block<T: Real>(u: &Matrix<T>, data_qubits: usize) -> Option<Matrix<T>> {
    let d = 1usize << data_qubits;
    let mut out = Matrix::zeros(d, d);
    for col in 0..d {
        for row in 0..u.rows() {
            let z = u.get(row, col);
            if z.re == T::zero() && z.im == T::zero() {
                continue;
            }
            if row >= d {
                return None;
            }
            out.set(row, col, z);
        }
    }
    Some(out)
}

/// `max |(U^dagger U - I)_ij|`.
pub fn max_unitarity_defect<T: Real>(u: &Matrix<T>) -> T {
    let d = u.cols();
    let mut gram = vec![Complex::new(T::zero(), T::zero()); d * d];
    for k in 0..u.rows() {
        for i in 0..d {
            let a = u.get(k, i).conj();
            if a.re == T::zero() && a.im == T::zero() {
                continue;
            }
            for j in 0..d {
                gram[i * d + j] += a * u.get(k, j);
            }
        }
    }
    let mut worst = T::zero();
    for i in 0..d {
        for j in 0..d {
            let id = if i == j { T::one() } else { T::zero() };
            worst = worst.max((gram[i * d + j] - Complex::new(id, T::zero())).norm());
        }
    }
    worst
}

/// Dense matrix-vector product.
pub fn mat_vec<T: Real>(u: &Matrix<T>, v: &[Complex<T>]) -> Vec<Complex<T>> {
    (0..u.rows())
        .map(|i| {
            let mut acc = Complex::new(T::zero(), T::zero());
            for (j, x) in v.iter().enumerate() {
                acc += u.get(i, j) * x;
            }
            acc
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::Projector;
    use crate::mcx::decompose_mcx;

    #[test]
    fn row_add_identity_example() {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let a = Matrix::<f64>::from_real_rows(&[&[h, 0.0], &[0.0, h]]);
        let r = oracle_row_add(&a, 0, 1).unwrap();
        assert!((r.predicted_probability - 3.0 / 16.0).abs() < 1e-15);
        let m = r.matrix.unwrap();
        assert!((m.frobenius_norm_sqr() - 1.5).abs() < 1e-15);
        assert_eq!(m.get(1, 0).re, h);
    }

    #[test]
    fn self_consistency() {
        let a = Matrix::<f64>::from_real_rows(&[&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0], &[7.0, 8.0, 9.5]]);
        let twice = oracle_row_swap(&oracle_row_swap(&a, 0, 2).unwrap().matrix.unwrap(), 0, 2).unwrap();
        assert_eq!(twice.matrix.unwrap(), a);
        let t = oracle_transpose(&a).unwrap().matrix.unwrap();
        assert_eq!(oracle_transpose(&t).unwrap().matrix.unwrap(), a);
        assert_eq!(oracle_trace(&t).unwrap().scalar, oracle_trace(&a).unwrap().scalar);
        assert_eq!(oracle_row_add(&a, 1, 1).unwrap_err(), Error::EqualRows(1));
    }

    #[test]
    fn cnot_matrix() {
        let layout = RegisterLayout::new([("c", 1), ("t", 1)]).unwrap();
        let op = ControlledOp::flip(Projector::identity().register("c", 1), "t", 0);
        let u = dense_unitary_of::<f64>(&op, &layout).unwrap();
        let perm = [0, 1, 3, 2];
        for (col, &row) in perm.iter().enumerate() {
            assert_eq!(u.get(row, col).re, 1.0);
        }
        assert_eq!(u.frobenius_norm_sqr(), 4.0);
    }

    #[test]
    fn unconditioned_flip_is_global_x() {
        let layout = RegisterLayout::new([("q", 1)]).unwrap();
        let u = dense_unitary_of::<f64>(&ControlledOp::flip(Projector::identity(), "q", 0), &layout).unwrap();
        assert_eq!(u.get(0, 1).re, 1.0);
        assert_eq!(u.get(1, 0).re, 1.0);
        assert_eq!(u.get(0, 0).re, 0.0);
    }

    #[test]
    fn three_control_network_matches() {
        let pol = [true, false, true];
        let net = decompose_mcx(3, &pol).unwrap();
        let u = dense_unitary_of_network::<f64>(&net).unwrap();
        let block = clean_work_block(&u, 4).unwrap();
        assert_eq!(block, dense_mcx(&pol).unwrap());
        assert_eq!(max_unitarity_defect(&u), 0.0);
    }

    #[test]
    fn rejects_large_layouts() {
        let layout = RegisterLayout::new([("a", 13)]).unwrap();
        let op = ControlledOp::flip(Projector::identity(), "a", 0);
        assert!(matches!(
            dense_unitary_of::<f64>(&op, &layout),
            Err(Error::DenseTooLarge { got: 13, .. })
        ));
    }
}
