//! Exact linear algebra over the integers and the rationals.
//!
//! Integer matrices are the storage format for representations; rational
//! matrices are only used transiently while building kernels, cokernels and
//! extensions. Ranks of the (potentially large) intertwiner systems go
//! through [`rank`], a fraction-free elimination that runs in checked
//! `i128` and restarts in `BigInt` on overflow.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{NcError, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, data: Vec<i64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(NcError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(IntMat { rows, cols, data })
    }

    pub fn from_vecs(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let data = rows.iter().flat_map(|row| row.iter().copied()).collect();
        IntMat { rows: r, cols: c, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[i64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.cols != other.rows {
            return Err(NcError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = vec![0i128; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)] as i128;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[i * other.cols + j] += a * other[(k, j)] as i128;
                }
            }
        }
        let data = out
            .into_iter()
            .map(|x| i64::try_from(x).map_err(|_| NcError::Overflow))
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMat { rows: self.rows, cols: other.cols, data })
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Block-diagonal sum `diag(self, other)`.
    pub fn direct_sum(&self, other: &IntMat) -> IntMat {
        let mut m = IntMat::zeros(self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &IntMat) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self[(r0 + i, c0 + j)] = block[(i, j)];
            }
        }
    }

    pub fn hstack(blocks: &[IntMat], rows: usize) -> IntMat {
        let cols = blocks.iter().map(IntMat::cols).sum();
        let mut m = IntMat::zeros(rows, cols);
        let mut c0 = 0;
        for b in blocks {
            m.set_block(0, c0, b);
            c0 += b.cols;
        }
        m
    }

    pub fn vstack(blocks: &[IntMat], cols: usize) -> IntMat {
        let rows = blocks.iter().map(IntMat::rows).sum();
        let mut m = IntMat::zeros(rows, cols);
        let mut r0 = 0;
        for b in blocks {
            m.set_block(r0, 0, b);
            r0 += b.rows;
        }
        m
    }

    pub fn to_rational(&self) -> QMat {
        QMat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<i64>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        rank(&rows, self.cols)
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = i64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Rank of an integer matrix given as rows of length `cols`.
pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    let small: Vec<Vec<i128>> = rows
        .iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    if let Some(r) = echelon_rank(small, cols) {
        return r;
    }
    let big: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    echelon_rank(big, cols).expect("BigInt elimination cannot overflow")
}

fn content<T: Integer + Signed + Clone>(row: &[T]) -> T {
    let mut g = T::zero();
    for x in row {
        if !x.is_zero() {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Fraction-free forward elimination. Each eliminated row is divided by its
/// content, so entries stay close to the input size for sparse systems.
/// Returns `None` if a checked operation overflowed.
fn echelon_rank<T>(mut rows: Vec<Vec<T>>, cols: usize) -> Option<usize>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows.len() {
            break;
        }
        let mut best: Option<usize> = None;
        for r in rank..rows.len() {
            let v = &rows[r][col];
            if !v.is_zero() && best.map_or(true, |b| v.abs() < rows[b][col].abs()) {
                best = Some(r);
                if v.abs().is_one() {
                    break;
                }
            }
        }
        let Some(p) = best else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        let a = pivot_row[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let b = row[col].clone();
            let g = a.gcd(&b);
            let ma = a.clone() / g.clone();
            let mb = b / g;
            for j in col..cols {
                let lhs = row[j].checked_mul(&ma)?;
                let rhs = if pivot_row[j].is_zero() {
                    T::zero()
                } else {
                    pivot_row[j].checked_mul(&mb)?
                };
                row[j] = lhs.checked_sub(&rhs)?;
            }
            let c = content(&row[col..]);
            if !c.is_zero() && !c.is_one() {
                for x in row[col..].iter_mut() {
                    *x = x.clone() / c.clone();
                }
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl QMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(NcError::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(QMat { rows, cols, data })
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[BigRational] {
        &self.data
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "QMat::mul shape mismatch");
        let mut out = QMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if !other[(k, j)].is_zero() {
                        out[(i, j)] += a * &other[(k, j)];
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn select_columns(&self, cols: &[usize]) -> QMat {
        let mut m = QMat::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn select_rows(&self, rows: &[usize]) -> QMat {
        let mut m = QMat::zeros(rows.len(), self.cols);
        for (k, &i) in rows.iter().enumerate() {
            for j in 0..self.cols {
                m[(k, j)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (QMat, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if !m[(r, j)].is_zero() {
                        let v = &m[(i, j)] - &f * &m[(r, j)];
                        m[(i, j)] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space, one column per basis vector.
    pub fn nullspace(&self) -> QMat {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = QMat::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -r[(i, f)].clone();
            }
        }
        basis
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.select_columns(&cols))
    }

    /// A left inverse `L` with `L * self = I` for a matrix of full column rank.
    pub fn left_inverse(&self) -> Option<QMat> {
        Some(self.transpose().right_inverse()?.transpose())
    }

    /// A right inverse `R` with `self * R = I` for a matrix of full row rank.
    pub fn right_inverse(&self) -> Option<QMat> {
        let (_, pivots) = self.rref();
        if pivots.len() != self.rows {
            return None;
        }
        let square = self.select_columns(&pivots);
        let inv = square.inverse()?;
        let mut r = QMat::zeros(self.cols, self.rows);
        for (k, &p) in pivots.iter().enumerate() {
            for j in 0..self.rows {
                r[(p, j)] = inv[(k, j)].clone();
            }
        }
        Some(r)
    }

    /// Scales each column to a primitive integer vector. Column spans are
    /// unchanged.
    pub fn columns_to_integers(&self) -> Result<IntMat> {
        let mut out = IntMat::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            let col: Vec<BigRational> = (0..self.rows).map(|i| self[(i, j)].clone()).collect();
            for (i, v) in primitive_integer_vector(&col)?.into_iter().enumerate() {
                out[(i, j)] = v;
            }
        }
        Ok(out)
    }

    /// Converts to integers, failing if any entry is non-integral.
    pub fn to_integer(&self) -> Result<IntMat> {
        let data = self
            .data
            .iter()
            .map(|x| {
                if !x.is_integer() {
                    return Err(NcError::Integrity(format!("non-integral entry {x}")));
                }
                x.to_integer().to_i64().ok_or(NcError::Overflow)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IntMat { rows: self.rows, cols: self.cols, data })
    }
}

impl std::ops::Index<(usize, usize)> for QMat {
    type Output = BigRational;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMat {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

/// Least common multiple of the denominators of `v`.
pub fn denominator_lcm(v: &[BigRational]) -> BigInt {
    v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Scales a rational vector by a positive factor to a primitive integer vector.
pub fn primitive_integer_vector(v: &[BigRational]) -> Result<Vec<i64>> {
    let l = denominator_lcm(v);
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.into_iter()
        .map(|x| {
            let y = if g.is_zero() { x } else { x / &g };
            y.to_i64().ok_or(NcError::Overflow)
        })
        .collect()
}

/// Integer null space of an integer matrix: primitive integer columns.
pub fn int_nullspace(m: &IntMat) -> Result<IntMat> {
    m.to_rational().nullspace().columns_to_integers()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(rank(&[vec![1, 2], vec![2, 4]], 2), 1);
        assert_eq!(rank(&[vec![1, 2], vec![3, 4]], 2), 2);
        assert_eq!(rank(&[vec![0, 0, 0]], 3), 0);
        assert_eq!(rank(&[], 4), 0);
    }

    #[test]
    fn rank_falls_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![
            vec![big, big - 1, 7],
            vec![big - 5, big, 11],
            vec![big - 1, big - 7, 13],
        ];
        let r_int = rank(&rows, 3);
        let qm = QMat::from_data(
            3,
            3,
            rows.iter().flatten().map(|&x| BigRational::from_integer(x.into())).collect(),
        )
        .unwrap();
        assert_eq!(r_int, qm.rank());
    }

    #[test]
    fn nullspace_and_inverses() {
        let m = IntMat::from_vecs(&[vec![1, 1, 0], vec![0, 1, 1]]);
        let ns = int_nullspace(&m).unwrap();
        assert_eq!(ns.cols(), 1);
        assert!(m.mul(&ns).unwrap().is_zero());

        let qm = m.to_rational();
        let r = qm.right_inverse().unwrap();
        assert_eq!(qm.mul(&r), QMat::identity(2));
        let l = qm.transpose().left_inverse().unwrap();
        assert_eq!(l.mul(&qm.transpose()), QMat::identity(2));
    }

    #[test]
    fn singular_has_no_inverse() {
        let m = IntMat::from_vecs(&[vec![1, 2], vec![2, 4]]).to_rational();
        assert!(m.inverse().is_none());
        let m = IntMat::from_vecs(&[vec![0, 1], vec![1, 0]]).to_rational();
        assert_eq!(m.inverse().unwrap(), m);
    }

    #[test]
    fn primitive_vectors() {
        let v = vec![q(1, 2), q(-1, 3), q(0, 1)];
        assert_eq!(primitive_integer_vector(&v).unwrap(), vec![3, -2, 0]);
    }
}
