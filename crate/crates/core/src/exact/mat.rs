//! Dense rational vectors and matrices with exact Gaussian elimination.
//!
//! Dimensions are explicit and checked on every operation; all results are
//! exact.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::rat::{rat_int, Rat};
use crate::error::{Error, Result};

/// Dense rational vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QVec {
    coords: Vec<Rat>,
}

impl QVec {
    pub fn new(coords: Vec<Rat>) -> Self {
        QVec { coords }
    }

    pub fn zero(n: usize) -> Self {
        QVec {
            coords: vec![Rat::zero(); n],
        }
    }

    pub fn from_i64s(v: &[i64]) -> Self {
        QVec {
            coords: v.iter().map(|&x| rat_int(x)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, i: usize) -> &Rat {
        &self.coords[i]
    }

    pub fn set(&mut self, i: usize, v: Rat) {
        self.coords[i] = v;
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rat> {
        self.coords.iter()
    }

    pub fn as_slice(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn dot(&self, other: &QVec) -> Rat {
        assert_eq!(self.dim(), other.dim(), "dot: dimension mismatch");
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum()
    }

    pub fn scale(&self, c: &Rat) -> QVec {
        QVec {
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(super::rat::rat_str).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Add for &QVec {
    type Output = QVec;
    fn add(self, other: &QVec) -> QVec {
        assert_eq!(self.dim(), other.dim(), "add: dimension mismatch");
        QVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &QVec {
    type Output = QVec;
    fn sub(self, other: &QVec) -> QVec {
        assert_eq!(self.dim(), other.dim(), "sub: dimension mismatch");
        QVec {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &QVec {
    type Output = QVec;
    fn neg(self) -> QVec {
        QVec {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

/// Dense rational matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QMat {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl QMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        QMat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        QMat::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| rat_int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> QVec {
        QVec::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> QVec {
        QVec::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        assert_eq!(self.cols, v.dim(), "apply: dimension mismatch");
        QVec::new(
            (0..self.rows)
                .map(|i| (0..self.cols).map(|j| self.get(i, j) * v.get(j)).sum())
                .collect(),
        )
    }

    /// Exact determinant by fraction-preserving Gaussian elimination.
    pub fn det(&self) -> Result<Rat> {
        if self.rows != self.cols {
            return Err(Error::Usage(format!(
                "det of non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rat::one();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else {
                return Ok(Rat::zero());
            };
            if p != col {
                for j in 0..n {
                    let a = m.get(p, j).clone();
                    let b = m.get(col, j).clone();
                    m.set(p, j, b);
                    m.set(col, j, a);
                }
                det = -det;
            }
            let pv = m.get(col, col).clone();
            det *= &pv;
            for r in col + 1..n {
                let f = m.get(r, col) / &pv;
                if f.is_zero() {
                    continue;
                }
                for j in col..n {
                    let v = m.get(r, j) - &(&f * m.get(col, j));
                    m.set(r, j, v);
                }
            }
        }
        Ok(det)
    }

    /// Exact inverse; `Usage` error when singular or non-square.
    pub fn inv(&self) -> Result<QMat> {
        if self.rows != self.cols {
            return Err(Error::Usage("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut work = self.clone();
        let mut inv = QMat::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !work.get(r, col).is_zero());
            let Some(p) = pivot else {
                return Err(Error::Usage("matrix is singular".into()));
            };
            if p != col {
                for j in 0..n {
                    let (a, b) = (work.get(p, j).clone(), work.get(col, j).clone());
                    work.set(p, j, b);
                    work.set(col, j, a);
                    let (a, b) = (inv.get(p, j).clone(), inv.get(col, j).clone());
                    inv.set(p, j, b);
                    inv.set(col, j, a);
                }
            }
            let pv = work.get(col, col).clone();
            for j in 0..n {
                let v = work.get(col, j) / &pv;
                work.set(col, j, v);
                let v = inv.get(col, j) / &pv;
                inv.set(col, j, v);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = work.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = work.get(r, j) - &(&f * work.get(col, j));
                    work.set(r, j, v);
                    let v = inv.get(r, j) - &(&f * inv.get(col, j));
                    inv.set(r, j, v);
                }
            }
        }
        Ok(inv)
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(p, j).clone(), self.get(r, j).clone());
                    self.set(p, j, b);
                    self.set(r, j, a);
                }
            }
            let pv = self.get(r, c).clone();
            for j in 0..self.cols {
                let v = self.get(r, j) / &pv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in 0..self.cols {
                    let v = self.get(i, j) - &(&f * self.get(r, j));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right null space.
    pub fn null_space(&self) -> Vec<QVec> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = QVec::zero(self.cols);
            v.set(f, Rat::one());
            for (r, &p) in pivots.iter().enumerate() {
                v.set(p, -m.get(r, f).clone());
            }
            basis.push(v);
        }
        basis
    }

    /// Unique solution of `A x = b`, or `None` when the system is
    /// inconsistent or underdetermined.
    pub fn solve(&self, b: &QVec) -> Result<Option<QVec>> {
        if self.rows != b.dim() {
            return Err(Error::Usage("solve: dimension mismatch".into()));
        }
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b.get(i).clone());
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        if pivots.len() < self.cols {
            return Ok(None); // underdetermined
        }
        let mut x = QVec::zero(self.cols);
        for (r, &p) in pivots.iter().enumerate() {
            x.set(p, aug.get(r, self.cols).clone());
        }
        Ok(Some(x))
    }
}

impl Mul for &QMat {
    type Output = QMat;
    fn mul(self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "mat_mul: shape mismatch");
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let v: Rat = (0..self.cols)
                    .map(|k| self.get(i, k) * other.get(k, j))
                    .sum();
                out.set(i, j, v);
            }
        }
        out
    }
}

impl fmt::Display for QMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            writeln!(f, "{}", self.row(i))?;
        }
        Ok(())
    }
}

/// Do two lists of vectors span the same subspace?
pub fn same_span(a: &[QVec], b: &[QVec]) -> bool {
    let dim = a.first().or(b.first()).map_or(0, QVec::dim);
    let stack = |vs: &[QVec]| -> QMat {
        QMat::from_rows(vs.iter().map(|v| v.as_slice().to_vec()).collect())
    };
    if a.is_empty() && b.is_empty() {
        return true;
    }
    if a.is_empty() || b.is_empty() {
        let other = if a.is_empty() { b } else { a };
        return stack(other).rank() == 0;
    }
    let ra = stack(a).rank();
    let rb = stack(b).rank();
    if ra != rb {
        return false;
    }
    let mut all: Vec<QVec> = a.to_vec();
    all.extend(b.iter().cloned());
    let _ = dim;
    stack(&all).rank() == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::rat;

    #[test]
    fn det_identity() {
        assert_eq!(QMat::identity(3).det().unwrap(), rat_int(1));
    }

    #[test]
    fn det_a2_cartan() {
        let c = QMat::from_i64_rows(&[vec![2, -1], vec![-1, 2]]);
        assert_eq!(c.det().unwrap(), rat_int(3));
    }

    #[test]
    fn inv_diagonal() {
        let m = QMat::from_rows(vec![
            vec![rat_int(2), rat_int(0)],
            vec![rat_int(0), rat(1, 2)],
        ]);
        let inv = m.inv().unwrap();
        assert_eq!(inv.get(0, 0), &rat(1, 2));
        assert_eq!(inv.get(1, 1), &rat_int(2));
        assert_eq!(inv.get(0, 1), &rat_int(0));
    }

    #[test]
    fn solve_unique_and_degenerate() {
        let a = QMat::from_i64_rows(&[vec![1, 1], vec![1, -1]]);
        let x = a.solve(&QVec::from_i64s(&[3, 1])).unwrap().unwrap();
        assert_eq!(x, QVec::from_i64s(&[2, 1]));

        // inconsistent
        let a = QMat::from_i64_rows(&[vec![1, 1], vec![2, 2]]);
        assert!(a.solve(&QVec::from_i64s(&[1, 3])).unwrap().is_none());
        // underdetermined
        assert!(a.solve(&QVec::from_i64s(&[1, 2])).unwrap().is_none());
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = QMat::from_i64_rows(&[vec![1, 2, 3]]);
        let ns = a.null_space();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(a.apply(v).is_zero());
        }
    }
}
