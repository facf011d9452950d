//! Dense exact matrices over ℤ and ℚ, with deterministic Gaussian elimination.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::{fmt_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        IntMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix::new(rows, cols, vec![BigInt::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.as_ref().len(), cols, "ragged rows");
            data.extend(r.as_ref().iter().map(|&x| BigInt::from(x)));
        }
        IntMatrix::new(rows.len(), cols, data)
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, x) in col.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_rat_vec(&self, v: &[Rational]) -> Vec<Rational> {
        self.to_rational().mul_vec(v)
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::new(
            self.rows,
            self.cols,
            self.data.iter().map(|x| Rational::from_integer(x.clone())).collect(),
        )
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must equal rows * cols");
        RatMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r);
        }
        RatMatrix::new(n, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = RatMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(fmt_rational).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with the row operations that produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    /// `transform * original = reduced`.
    pub reduced: RatMatrix,
    pub transform: RatMatrix,
    /// `pivots[r]` is the pivot column of row `r`, for `r < rank`.
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Gauss–Jordan elimination visiting columns in `column_order`; in each
/// column the pivot is the first remaining row with a nonzero entry.
pub fn echelon_with_order(a: &RatMatrix, column_order: &[usize]) -> Echelon {
    let (m, n) = (a.rows(), a.cols());
    let mut r = a.clone();
    let mut t = RatMatrix::identity(m);
    let mut pivots = Vec::new();
    let mut row = 0;
    for &col in column_order {
        if row == m {
            break;
        }
        let Some(p) = (row..m).find(|&i| !r.get(i, col).is_zero()) else {
            continue;
        };
        r.swap_rows(row, p);
        t.swap_rows(row, p);
        let inv = r.get(row, col).recip();
        for j in 0..n {
            let v = r.get(row, j) * &inv;
            r.set(row, j, v);
        }
        for j in 0..m {
            let v = t.get(row, j) * &inv;
            t.set(row, j, v);
        }
        for i in 0..m {
            if i == row || r.get(i, col).is_zero() {
                continue;
            }
            let factor = r.get(i, col).clone();
            for j in 0..n {
                if r.get(row, j).is_zero() {
                    continue;
                }
                let v = r.get(i, j) - &factor * r.get(row, j);
                r.set(i, j, v);
            }
            for j in 0..m {
                if t.get(row, j).is_zero() {
                    continue;
                }
                let v = t.get(i, j) - &factor * t.get(row, j);
                t.set(i, j, v);
            }
        }
        pivots.push(col);
        row += 1;
    }
    Echelon {
        reduced: r,
        transform: t,
        pivots,
    }
}

pub fn echelon(a: &RatMatrix) -> Echelon {
    let order: Vec<usize> = (0..a.cols()).collect();
    echelon_with_order(a, &order)
}

pub fn rank(a: &RatMatrix) -> usize {
    echelon(a).rank()
}

/// Particular solution of `A x = rhs` from an echelon form; free variables
/// are set to zero. `None` when the system is inconsistent.
pub fn solve_from_echelon(e: &Echelon, rhs: &[Rational]) -> Option<Vec<Rational>> {
    let transformed = e.transform.mul_vec(rhs);
    if transformed[e.rank()..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); e.reduced.cols()];
    for (r, &col) in e.pivots.iter().enumerate() {
        x[col] = transformed[r].clone();
    }
    Some(x)
}

/// Some `x` with `A x = rhs`, or `None` if the system is inconsistent.
pub fn solve_rational(a: &RatMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), rhs.len(), "right-hand side length must match row count");
    solve_from_echelon(&echelon(a), rhs)
}

/// Basis of `ker A`, one vector per free column of the reduced echelon form.
pub fn kernel_rational(a: &RatMatrix) -> Vec<Vec<Rational>> {
    let e = echelon(a);
    let n = a.cols();
    let free: Vec<usize> = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (r, &col) in e.pivots.iter().enumerate() {
                v[col] = -e.reduced.get(r, f).clone();
            }
            v
        })
        .collect()
}

pub fn inverse(a: &RatMatrix) -> Option<RatMatrix> {
    assert_eq!(a.rows(), a.cols());
    let e = echelon(a);
    (e.rank() == a.rows()).then_some(e.transform)
}

pub fn determinant(a: &RatMatrix) -> Rational {
    assert_eq!(a.rows(), a.cols());
    let n = a.rows();
    let mut m = a.clone();
    let mut det = Rational::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m.get(i, col).is_zero()) else {
            return Rational::zero();
        };
        if p != col {
            m.swap_rows(p, col);
            det = -det;
        }
        let pivot = m.get(col, col).clone();
        det *= &pivot;
        for i in col + 1..n {
            if m.get(i, col).is_zero() {
                continue;
            }
            let factor = m.get(i, col) / &pivot;
            for j in col..n {
                let v = m.get(i, j) - &factor * m.get(col, j);
                m.set(i, j, v);
            }
        }
    }
    det
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational::{int, rat};

    fn ratm(rows: &[&[i64]]) -> RatMatrix {
        IntMatrix::from_rows(rows).to_rational()
    }

    #[test]
    fn one_by_one_system() {
        let x = solve_rational(&ratm(&[&[3]]), &[int(1)]).unwrap();
        assert_eq!(x, vec![rat(1, 3)]);
    }

    #[test]
    fn identity_system_returns_rhs() {
        let rhs = vec![int(5), int(-2), int(0)];
        assert_eq!(solve_rational(&RatMatrix::identity(3), &rhs).unwrap(), rhs);
    }

    #[test]
    fn inconsistent_rows() {
        assert!(solve_rational(&ratm(&[&[1, 1], &[2, 2]]), &[int(1), int(3)]).is_none());
    }

    #[test]
    fn kernel_of_single_root_row() {
        let a = ratm(&[&[-1, -1, 1]]);
        let k = kernel_rational(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn invertible_has_trivial_kernel() {
        assert!(kernel_rational(&ratm(&[&[1, 2], &[3, 4]])).is_empty());
        let inv = inverse(&ratm(&[&[1, 2], &[3, 4]])).unwrap();
        assert_eq!(inv.mul(&ratm(&[&[1, 2], &[3, 4]])), RatMatrix::identity(2));
    }

    #[test]
    fn transform_tracks_row_operations() {
        let a = ratm(&[&[0, 2, 1], &[1, 1, 0], &[1, 3, 1]]);
        let e = echelon(&a);
        assert_eq!(e.transform.mul(&a), e.reduced);
        assert_eq!(e.rank(), 2);
    }
}
