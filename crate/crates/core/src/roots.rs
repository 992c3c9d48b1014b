//! Root systems of compact Lie algebras in simple-root coordinates.
//!
//! Roots are integer vectors over the simple-root basis, so every Weyl
//! generator is an integer matrix and all reflection-group arithmetic stays
//! integral. Points of the dual Cartan t* use the same coordinate system
//! (the basis dual to the fundamental coweights), and the symmetrized
//! Cartan form `gram()` gives the invariant pairing. Short roots are
//! normalized to squared length 2.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::Serialize;

use crate::affine::{AffineMap, IMat};
use crate::error::{Error, Result};
use crate::exact::{rat_int, QMat, QVec, Rat};

/// Supported root-system labels, a closed enumeration with a data-driven
/// Cartan table. Closure sizes stay desk scale (Weyl order at most 48).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
    A3,
    B3,
}

pub const ALL_LABELS: [Label; 7] = [
    Label::A1,
    Label::A1xA1,
    Label::A2,
    Label::B2,
    Label::G2,
    Label::A3,
    Label::B3,
];

impl Label {
    /// Cartan matrix, with `C[i][j] = <alpha_j, alpha_i^v>` so that
    /// `s_i(alpha_j) = alpha_j - C[i][j] alpha_i`.
    fn cartan_rows(self) -> Vec<Vec<i64>> {
        match self {
            Label::A1 => vec![vec![2]],
            Label::A1xA1 => vec![vec![2, 0], vec![0, 2]],
            Label::A2 => vec![vec![2, -1], vec![-1, 2]],
            // alpha_1 long, alpha_2 short
            Label::B2 => vec![vec![2, -1], vec![-2, 2]],
            // alpha_1 short, alpha_2 long
            Label::G2 => vec![vec![2, -3], vec![-1, 2]],
            Label::A3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            // alpha_1, alpha_2 long, alpha_3 short
            Label::B3 => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]],
        }
    }

    /// Half squared lengths `d_i = (alpha_i, alpha_i)/2`, with short roots
    /// at squared length 2.
    fn root_half_lengths(self) -> Vec<i64> {
        match self {
            Label::A1 => vec![1],
            Label::A1xA1 => vec![1, 1],
            Label::A2 => vec![1, 1],
            Label::B2 => vec![2, 1],
            Label::G2 => vec![1, 3],
            Label::A3 => vec![1, 1, 1],
            Label::B3 => vec![2, 2, 1],
        }
    }

    pub fn rank(self) -> usize {
        self.cartan_rows().len()
    }
}

impl FromStr for Label {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a1" => Ok(Label::A1),
            "a1a1" | "a1xa1" => Ok(Label::A1xA1),
            "a2" => Ok(Label::A2),
            "b2" => Ok(Label::B2),
            "g2" => Ok(Label::G2),
            "a3" => Ok(Label::A3),
            "b3" => Ok(Label::B3),
            _ => Err(Error::Usage(format!(
                "unsupported root system `{s}` (expected one of a1, a1a1, a2, b2, g2, a3, b3)"
            ))),
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Label::A1 => "a1",
            Label::A1xA1 => "a1a1",
            Label::A2 => "a2",
            Label::B2 => "b2",
            Label::G2 => "g2",
            Label::A3 => "a3",
            Label::B3 => "b3",
        };
        write!(f, "{s}")
    }
}

/// A root system together with its Weyl reflection data.
#[derive(Clone, Debug)]
pub struct RootSystem {
    label: Label,
    rank: usize,
    cartan: IMat,
    roots: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    gram: QMat,
    gram_int: Vec<Vec<i64>>,
}

impl RootSystem {
    /// Build the root system by closing the simple roots under the simple
    /// reflections `s_i(x) = x - <x, alpha_i^v> alpha_i`.
    pub fn build(label: Label) -> RootSystem {
        let cartan = IMat::from_rows(&label.cartan_rows());
        let rank = cartan.dim();
        let gens: Vec<IMat> = (0..rank)
            .map(|i| simple_reflection_matrix(&cartan, i))
            .collect();

        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0i64; rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(v) = queue.pop_front() {
            for g in &gens {
                let w = g.apply_ints(&v);
                if seen.insert(w.clone()) {
                    queue.push_back(w);
                }
            }
        }
        let roots: Vec<Vec<i64>> = seen.into_iter().collect();
        let positive: Vec<Vec<i64>> = roots
            .iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .cloned()
            .collect();

        let d = label.root_half_lengths();
        let gram_int: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| d[i] * cartan.get(i, j)).collect())
            .collect();
        let gram = QMat::from_i64_rows(&gram_int);

        RootSystem {
            label,
            rank,
            cartan,
            roots,
            positive,
            gram,
            gram_int,
        }
    }

    pub fn label(&self) -> Label {
        self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Symmetrized Cartan form on simple-root coordinates.
    pub fn gram(&self) -> &QMat {
        &self.gram
    }

    /// `(alpha, xi)` for a root `alpha` (integer simple-root coordinates)
    /// and a point `xi` of t* in the same coordinates.
    pub fn pairing(&self, alpha: &[i64], xi: &QVec) -> Rat {
        let functional = self.root_functional(alpha);
        functional
            .iter()
            .zip(xi.iter())
            .map(|(&a, x)| x * &rat_int(a))
            .sum()
    }

    /// Integer coefficient vector of the linear form `xi -> (alpha, xi)`.
    pub fn root_functional(&self, alpha: &[i64]) -> Vec<i64> {
        assert_eq!(alpha.len(), self.rank);
        (0..self.rank)
            .map(|j| (0..self.rank).map(|i| alpha[i] * self.gram_int[i][j]).sum())
            .collect()
    }

    /// Simple reflections as integral affine maps on t* (simple-root
    /// coordinates): involutions, zero translation, determinant -1.
    pub fn weyl_generators(&self) -> Vec<AffineMap> {
        (0..self.rank)
            .map(|i| {
                AffineMap::from_linear(simple_reflection_matrix(&self.cartan, i))
                    .expect("reflection is unimodular")
            })
            .collect()
    }

    /// Simple reflections acting on t in coroot coordinates.
    pub fn weyl_generators_on_t(&self) -> Vec<AffineMap> {
        let ct = self.cartan.transpose();
        (0..self.rank)
            .map(|i| {
                AffineMap::from_linear(simple_reflection_matrix(&ct, i))
                    .expect("reflection is unimodular")
            })
            .collect()
    }

    /// Evaluate the simple root `alpha_i` on a point of t in coroot
    /// coordinates: `alpha_i(y) = (C^T y)_i`.
    pub fn simple_root_on_t(&self, i: usize) -> Vec<i64> {
        (0..self.rank).map(|j| self.cartan.get(j, i)).collect()
    }

    /// Coroot of a root, as integer coordinates over the simple coroots.
    pub fn coroot(&self, alpha: &[i64]) -> Vec<i64> {
        use num_traits::ToPrimitive;
        let r = self.rank;
        let alpha_q = QVec::from_i64s(alpha);
        let b_alpha = self.gram.apply(&alpha_q);
        let len2 = alpha_q.dot(&b_alpha);
        // solve C^T c = rhs with rhs_j = 2 (alpha_j, alpha) / (alpha, alpha)
        let rhs = QVec::new(
            (0..r)
                .map(|j| {
                    let mut e = QVec::zero(r);
                    e.set(j, Rat::one());
                    let v = e.dot(&b_alpha);
                    v * rat_int(2) / &len2
                })
                .collect(),
        );
        let ct = self.cartan.transpose().to_qmat();
        let c = ct
            .solve(&rhs)
            .expect("Cartan matrix invertible")
            .expect("unique solution");
        c.iter()
            .map(|v| {
                debug_assert!(One::is_one(v.denom()), "coroot must be integral");
                v.numer().to_i64().expect("coroot coordinate fits i64")
            })
            .collect()
    }

    /// Connected components of the Dynkin diagram, as index sets.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.rank];
        let mut comps = Vec::new();
        for start in 0..self.rank {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for j in 0..self.rank {
                    if !seen[j] && self.cartan.get(i, j) != 0 {
                        seen[j] = true;
                        comp.push(j);
                        stack.push(j);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    /// Highest root of an irreducible component: the unique positive root of
    /// maximal height supported on the component.
    pub fn highest_root(&self, component: &[usize]) -> Vec<i64> {
        self.positive
            .iter()
            .filter(|r| {
                r.iter()
                    .enumerate()
                    .all(|(i, &c)| c == 0 || component.contains(&i))
            })
            .max_by_key(|r| r.iter().sum::<i64>())
            .expect("component has roots")
            .clone()
    }
}

fn simple_reflection_matrix(cartan: &IMat, i: usize) -> IMat {
    let n = cartan.dim();
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| {
                    let mut v = if r == c { 1 } else { 0 };
                    if r == i {
                        v -= cartan.get(i, c);
                    }
                    v
                })
                .collect()
        })
        .collect();
    IMat::from_rows(&rows)
}

/// Lattice choice for a compact group with the given root system.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeKind {
    SimplyConnected,
    Adjoint,
}

impl FromStr for LatticeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "simply_connected" | "sc" => Ok(LatticeKind::SimplyConnected),
            "adjoint" | "adj" => Ok(LatticeKind::Adjoint),
            _ => Err(Error::Usage(format!("unknown lattice selector `{s}`"))),
        }
    }
}

/// A compact group choice: the root system plus the lattice
/// `Lambda_G = ker(exp: t -> T)` and its dual.
#[derive(Clone, Debug)]
pub struct GroupChoice {
    rs: RootSystem,
    kind: LatticeKind,
    /// Basis of `Lambda_G` in coroot coordinates (columns); exact rational.
    basis_coroot: QMat,
    /// Basis of the dual lattice in simple-root coordinates of t* (columns).
    dual_basis: QMat,
    /// Coset representatives of `Z = Lambda_G / Q^v`, in coroot coordinates;
    /// the identity coset comes first.
    coset_reps: Vec<QVec>,
}

impl GroupChoice {
    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn basis_coroot(&self) -> &QMat {
        &self.basis_coroot
    }

    pub fn dual_basis(&self) -> &QMat {
        &self.dual_basis
    }

    pub fn coset_reps(&self) -> &[QVec] {
        &self.coset_reps
    }

    /// Order of `Z = Lambda_G / Q^v`.
    pub fn center_quotient_order(&self) -> usize {
        self.coset_reps.len()
    }
}

/// Construct the lattice data for a group choice.
///
/// Simply connected: `Lambda_G` is the coroot lattice. Adjoint: `Lambda_G`
/// is the coweight lattice, and `Z = Lambda_G/Q^v` has order `det C`.
pub fn lattice(rs: &RootSystem, kind: LatticeKind) -> Result<GroupChoice> {
    let r = rs.rank();
    let c = rs.cartan().to_qmat();
    let basis_coroot = match kind {
        LatticeKind::SimplyConnected => QMat::identity(r),
        // columns are the fundamental coweights: (C^T)^{-1}
        LatticeKind::Adjoint => c.transpose().inv()?,
    };
    // the pairing of xi (simple-root coords) with y (coroot coords) is
    // xi^T C^T y, so the dual lattice has basis (C^T W)^{-T}
    let dual_basis = (&c.transpose() * &basis_coroot).inv()?.transpose();
    let coset_reps = coset_representatives(&basis_coroot)?;
    Ok(GroupChoice {
        rs: rs.clone(),
        kind,
        basis_coroot,
        dual_basis,
        coset_reps,
    })
}

/// Enumerate representatives of (lattice spanned by `basis` columns) modulo
/// the integer lattice, by scanning fractional parts of small combinations.
fn coset_representatives(basis: &QMat) -> Result<Vec<QVec>> {
    let r = basis.rows();
    let index = {
        let d = basis.det()?;
        let inv: Rat = Rat::one() / d;
        if !inv.denom().is_one() {
            return Err(Error::Integrity(
                "lattice does not contain the coroot lattice".into(),
            ));
        }
        use num_traits::ToPrimitive;
        inv.numer().abs().to_usize().unwrap_or(0)
    };
    let mut reps: Vec<QVec> = vec![QVec::zero(r)];
    let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::from([frac_parts(&QVec::zero(r))]);
    // combinations of basis columns with coefficients 0..index cover the
    // quotient group
    let mut coeffs = vec![0usize; r];
    loop {
        let mut v = QVec::zero(r);
        for (j, &k) in coeffs.iter().enumerate() {
            if k > 0 {
                v = &v + &basis.col(j).scale(&rat_int(k as i64));
            }
        }
        let key = frac_parts(&v);
        if seen.insert(key.clone()) {
            reps.push(QVec::new(key));
        }
        // odometer
        let mut pos = 0;
        loop {
            if pos == r {
                if reps.len() != index {
                    return Err(Error::Integrity(format!(
                        "expected {} cosets, found {}",
                        index,
                        reps.len()
                    )));
                }
                return Ok(reps);
            }
            coeffs[pos] += 1;
            if coeffs[pos] < index.max(1) {
                break;
            }
            coeffs[pos] = 0;
            pos += 1;
        }
    }
}

fn frac_parts(v: &QVec) -> Vec<Rat> {
    v.iter()
        .map(|x| {
            let f = x - &x.floor();
            if f.is_negative() {
                f + Rat::one()
            } else {
                f
            }
        })
        .collect()
}

/// CLI-facing compact group names.
pub fn group_by_name(name: &str) -> Result<GroupChoice> {
    let (label, kind) = match name.to_ascii_lowercase().as_str() {
        "su2" => (Label::A1, LatticeKind::SimplyConnected),
        "so3" => (Label::A1, LatticeKind::Adjoint),
        "su3" => (Label::A2, LatticeKind::SimplyConnected),
        "psu3" => (Label::A2, LatticeKind::Adjoint),
        "spin5" => (Label::B2, LatticeKind::SimplyConnected),
        "g2c" => (Label::G2, LatticeKind::SimplyConnected),
        _ => {
            return Err(Error::Usage(format!(
                "unknown group `{name}` (expected su2, so3, su3, psu3, spin5, g2c)"
            )))
        }
    };
    lattice(&RootSystem::build(label), kind)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn root_counts() {
        assert_eq!(RootSystem::build(Label::A1).roots().len(), 2);
        let a2 = RootSystem::build(Label::A2);
        assert_eq!(a2.roots().len(), 6);
        assert_eq!(a2.positive_roots().len(), 3);
        let g2 = RootSystem::build(Label::G2);
        assert_eq!(g2.roots().len(), 12);
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(RootSystem::build(Label::B2).roots().len(), 8);
        assert_eq!(RootSystem::build(Label::A3).roots().len(), 12);
        assert_eq!(RootSystem::build(Label::B3).roots().len(), 18);
    }

    #[test]
    fn roots_closed_under_negation() {
        for label in ALL_LABELS {
            let rs = RootSystem::build(label);
            assert_eq!(rs.roots().len(), 2 * rs.positive_roots().len());
            for r in rs.roots() {
                let neg: Vec<i64> = r.iter().map(|&c| -c).collect();
                assert!(rs.roots().contains(&neg), "{label}: -{r:?} missing");
            }
            // every root is a nonnegative or nonpositive combination
            for r in rs.roots() {
                assert!(
                    r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0),
                    "{label}: mixed-sign root {r:?}"
                );
            }
        }
    }

    #[test]
    fn a2_generator_matrices() {
        let a2 = RootSystem::build(Label::A2);
        let gens = a2.weyl_generators();
        assert_eq!(gens[0].linear().row(0), &[-1, 1]);
        assert_eq!(gens[0].linear().row(1), &[0, 1]);
        assert_eq!(gens[1].linear().row(0), &[1, 0]);
        assert_eq!(gens[1].linear().row(1), &[1, -1]);
        for g in &gens {
            assert!(g.is_involution());
            assert_eq!(g.det(), -1);
        }
        // s1 s2 has order 3
        let prod = gens[0].compose(&gens[1]);
        assert!(prod.pow(3).is_identity());
        assert!(!prod.pow(2).is_identity());
    }

    #[test]
    fn gram_normalization() {
        let a1 = RootSystem::build(Label::A1);
        assert_eq!(a1.gram().get(0, 0), &rat(2, 1));
        let b2 = RootSystem::build(Label::B2);
        // short root squared length 2, long root squared length 4
        let mut lens = BTreeSet::new();
        for r in b2.positive_roots() {
            let xi = QVec::from_i64s(r);
            lens.insert(b2.pairing(r, &xi));
        }
        assert_eq!(
            lens.into_iter().collect::<Vec<_>>(),
            vec![rat(2, 1), rat(4, 1)]
        );
    }

    #[test]
    fn generators_preserve_roots_and_gram() {
        for label in ALL_LABELS {
            let rs = RootSystem::build(label);
            let b = rs.gram();
            for g in rs.weyl_generators() {
                let s = g.linear().to_qmat();
                assert_eq!(&(&s.transpose() * &(b * &s)), b, "{label}");
                for r in rs.roots() {
                    let img = g.linear().apply_ints(r);
                    assert!(rs.roots().contains(&img), "{label}");
                }
            }
        }
    }

    #[test]
    fn reflection_fixes_root_hyperplane() {
        let b2 = RootSystem::build(Label::B2);
        let gens = b2.weyl_generators();
        for (i, g) in gens.iter().enumerate() {
            let mut alpha = vec![0i64; 2];
            alpha[i] = 1;
            let functional = b2.root_functional(&alpha);
            // points of the hyperplane: null space of the functional
            let m = QMat::from_i64_rows(&[functional]);
            for v in m.null_space() {
                assert_eq!(g.apply(&v), v);
            }
        }
    }

    #[test]
    fn lattice_indices() {
        let a1 = RootSystem::build(Label::A1);
        let su2 = lattice(&a1, LatticeKind::SimplyConnected).unwrap();
        assert_eq!(su2.center_quotient_order(), 1);
        let so3 = lattice(&a1, LatticeKind::Adjoint).unwrap();
        assert_eq!(so3.center_quotient_order(), 2);
        let a2 = RootSystem::build(Label::A2);
        let psu3 = lattice(&a2, LatticeKind::Adjoint).unwrap();
        assert_eq!(psu3.center_quotient_order(), 3);
        let g2 = RootSystem::build(Label::G2);
        assert_eq!(
            lattice(&g2, LatticeKind::Adjoint)
                .unwrap()
                .center_quotient_order(),
            1
        );
    }

    #[test]
    fn dual_lattices() {
        // simply connected: dual of the coroot lattice is the weight lattice
        let a2 = RootSystem::build(Label::A2);
        let su3 = lattice(&a2, LatticeKind::SimplyConnected).unwrap();
        let cinv = a2.cartan().to_qmat().inv().unwrap();
        assert_eq!(su3.dual_basis(), &cinv);
        // adjoint: dual is the root lattice
        let psu3 = lattice(&a2, LatticeKind::Adjoint).unwrap();
        assert_eq!(psu3.dual_basis(), &QMat::identity(2));
    }

    #[test]
    fn pairing_weyl_invariance() {
        let g2 = RootSystem::build(Label::G2);
        let xi = QVec::new(vec![rat(3, 2), rat(-1, 3)]);
        for g in g2.weyl_generators() {
            for alpha in g2.roots() {
                let w_xi = g.apply(&xi);
                let w_inv_alpha = g.inverse().linear().apply_ints(alpha);
                assert_eq!(g2.pairing(alpha, &w_xi), g2.pairing(&w_inv_alpha, &xi));
            }
        }
    }
}

#[cfg(test)]
mod coroot_tests {
    use super::*;

    #[test]
    fn coroots_of_simple_roots_are_basis_vectors() {
        for label in ALL_LABELS {
            let rs = RootSystem::build(label);
            for i in 0..rs.rank() {
                let mut alpha = vec![0i64; rs.rank()];
                alpha[i] = 1;
                let mut expected = vec![0i64; rs.rank()];
                expected[i] = 1;
                assert_eq!(rs.coroot(&alpha), expected, "{label}");
            }
        }
    }

    #[test]
    fn highest_coroots() {
        // B2: theta = a1 + 2 a2, theta^v = a1^v + a2^v
        let b2 = RootSystem::build(Label::B2);
        let theta = b2.highest_root(&[0, 1]);
        assert_eq!(theta, vec![1, 2]);
        assert_eq!(b2.coroot(&theta), vec![1, 1]);
        // G2: theta = 3 a1 + 2 a2 (a1 short), theta^v = a1^v + 2 a2^v
        let g2 = RootSystem::build(Label::G2);
        let theta = g2.highest_root(&[0, 1]);
        assert_eq!(theta, vec![3, 2]);
        assert_eq!(g2.coroot(&theta), vec![1, 2]);
    }
}
