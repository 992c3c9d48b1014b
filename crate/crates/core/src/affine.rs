//! Integral affine transformations: an integer linear part of determinant
//! +-1 together with a rational translation. These are the elements of every
//! reflection group in the crate.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{rat_int, QMat, QVec, Rat};

/// Square integer matrix, row major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IMat { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "IMat must be square");
        IMat {
            n,
            data: rows.concat(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.n, other.n, "IMat mul: dimension mismatch");
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IMat { n, data }
    }

    pub fn apply_qvec(&self, v: &QVec) -> QVec {
        assert_eq!(self.n, v.dim(), "IMat apply: dimension mismatch");
        QVec::new(
            (0..self.n)
                .map(|i| {
                    (0..self.n)
                        .map(|j| v.get(j) * &rat_int(self.get(i, j)))
                        .sum()
                })
                .collect(),
        )
    }

    pub fn apply_ints(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn det(&self) -> i64 {
        // cofactor expansion; ranks here are tiny
        fn det_rec(m: &[Vec<i128>]) -> i128 {
            let n = m.len();
            if n == 0 {
                return 1;
            }
            if n == 1 {
                return m[0][0];
            }
            let mut acc = 0i128;
            for (j, &c) in m[0].iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * c * det_rec(&minor);
            }
            acc
        }
        let rows: Vec<Vec<i128>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|&x| x as i128).collect())
            .collect();
        det_rec(&rows) as i64
    }

    pub fn transpose(&self) -> IMat {
        let mut data = vec![0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                data[j * self.n + i] = self.get(i, j);
            }
        }
        IMat { n: self.n, data }
    }

    pub fn is_identity(&self) -> bool {
        *self == IMat::identity(self.n)
    }

    pub fn to_qmat(&self) -> QMat {
        QMat::from_i64_rows(
            &(0..self.n)
                .map(|i| self.row(i).to_vec())
                .collect::<Vec<_>>(),
        )
    }

    /// Inverse of a matrix with determinant +-1; stays integral.
    pub fn inv_unimodular(&self) -> Result<IMat> {
        let d = self.det();
        if d != 1 && d != -1 {
            return Err(Error::Usage(format!(
                "matrix with det {d} is not integrally invertible"
            )));
        }
        use num_traits::ToPrimitive;
        let q = self.to_qmat().inv().expect("unimodular matrix invertible");
        let mut data = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let v = q.get(i, j);
                debug_assert!(num_traits::One::is_one(v.denom()));
                data.push(v.numer().to_i64().expect("entry fits in i64"));
            }
        }
        Ok(IMat { n: self.n, data })
    }
}

impl fmt::Display for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            writeln!(f, "{:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Integral affine map `x -> L x + t` with `|det L| = 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    linear: IMat,
    translation: QVec,
}

impl AffineMap {
    pub fn new(linear: IMat, translation: QVec) -> Result<Self> {
        if linear.dim() != translation.dim() {
            return Err(Error::Usage("affine map: dimension mismatch".into()));
        }
        let d = linear.det();
        if d != 1 && d != -1 {
            return Err(Error::Usage(format!(
                "affine map: linear part has det {d}, expected +-1"
            )));
        }
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        AffineMap {
            linear: IMat::identity(n),
            translation: QVec::zero(n),
        }
    }

    pub fn from_linear(linear: IMat) -> Result<Self> {
        let n = linear.dim();
        AffineMap::new(linear, QVec::zero(n))
    }

    pub fn translation_by(t: QVec) -> Self {
        AffineMap {
            linear: IMat::identity(t.dim()),
            translation: t,
        }
    }

    pub fn dim(&self) -> usize {
        self.linear.dim()
    }

    pub fn linear(&self) -> &IMat {
        &self.linear
    }

    pub fn translation(&self) -> &QVec {
        &self.translation
    }

    pub fn apply(&self, x: &QVec) -> QVec {
        &self.linear.apply_qvec(x) + &self.translation
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            linear: self.linear.mul(&other.linear),
            translation: &self.linear.apply_qvec(&other.translation) + &self.translation,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let li = self
            .linear
            .inv_unimodular()
            .expect("invariant: |det| = 1");
        let t = -&li.apply_qvec(&self.translation);
        AffineMap {
            linear: li,
            translation: t,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_zero()
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    /// Determinant of the linear part, +-1.
    pub fn det(&self) -> i64 {
        self.linear.det()
    }

    pub fn pow(&self, k: u32) -> AffineMap {
        let mut out = AffineMap::identity(self.dim());
        for _ in 0..k {
            out = out.compose(self);
        }
        out
    }

    /// Affine fixed-point set, when it is a hyperplane: returns
    /// `(normal, offset)` with the fixed set `{x : normal . x = offset}`,
    /// in unnormalized rational form.
    pub fn fixed_hyperplane_raw(&self) -> Option<(Vec<Rat>, Rat)> {
        let n = self.dim();
        // (L - I) x = -t
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row: Vec<Rat> = (0..n)
                .map(|j| {
                    let mut v = rat_int(self.linear.get(i, j));
                    if i == j {
                        v -= rat_int(1);
                    }
                    v
                })
                .collect();
            row.push(-self.translation.get(i).clone());
            rows.push(row);
        }
        let mut aug = QMat::from_rows(rows);
        let pivots = aug.rref();
        // solution set is a hyperplane iff exactly one pivot, and it is not
        // the augmented column (which would mean no solutions)
        if pivots.len() != 1 || pivots[0] == n {
            return None;
        }
        let normal: Vec<Rat> = (0..n).map(|j| aug.get(0, j).clone()).collect();
        let offset = aug.get(0, n).clone();
        Some((normal, offset))
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x -> Lx + {} with L =\n{}", self.translation, self.linear)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn refl_1d() -> AffineMap {
        AffineMap::from_linear(IMat::from_rows(&[vec![-1]])).unwrap()
    }

    #[test]
    fn composition_convention() {
        // (L1,t1) . (L2,t2) = (L1 L2, L1 t2 + t1)
        let g = AffineMap::new(
            IMat::from_rows(&[vec![-1]]),
            QVec::new(vec![rat(1, 1)]),
        )
        .unwrap(); // x -> 1 - x
        let h = AffineMap::translation_by(QVec::new(vec![rat(3, 1)]));
        let gh = g.compose(&h); // x -> 1 - (x + 3) = -2 - x
        let x = QVec::new(vec![rat(5, 1)]);
        assert_eq!(gh.apply(&x), QVec::new(vec![rat(-7, 1)]));
    }

    #[test]
    fn inverse_roundtrip() {
        let g = AffineMap::new(
            IMat::from_rows(&[vec![0, 1], vec![-1, 0]]),
            QVec::new(vec![rat(1, 2), rat(-1, 3)]),
        )
        .unwrap();
        assert!(g.compose(&g.inverse()).is_identity());
        assert!(g.inverse().compose(&g).is_identity());
    }

    #[test]
    fn involution_and_fixed_hyperplane() {
        let r = AffineMap::new(
            IMat::from_rows(&[vec![-1]]),
            QVec::new(vec![rat(1, 1)]),
        )
        .unwrap(); // x -> 1 - x, fixes x = 1/2
        assert!(r.is_involution());
        let (normal, offset) = r.fixed_hyperplane_raw().unwrap();
        // normalized rref row: x = 1/2
        assert_eq!(normal, vec![rat(1, 1)]);
        assert_eq!(offset, rat(1, 2));
        // a pure reflection through the origin
        assert!(refl_1d().fixed_hyperplane_raw().is_some());
        // a translation has no fixed points
        let t = AffineMap::translation_by(QVec::new(vec![rat(1, 1)]));
        assert!(t.fixed_hyperplane_raw().is_none());
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(AffineMap::from_linear(IMat::from_rows(&[vec![2]])).is_err());
    }
}
