//! Canonical stratification data for the two model families: duals of
//! compact Lie algebras (Weyl-chamber faces) and compact groups with the
//! Cartan-Dirac structure (alcove faces with the action of the center
//! quotient Z on them).
//!
//! Codimension bookkeeping: at a point with vanishing positive-root set V,
//! the isotropy algebra has dimension rank + 2|V|, its semisimple part has
//! dimension 2|V| + rank(span V), and the stratum codimension equals the
//! semisimple dimension. Codimensions 1 and 2 never occur.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::affine::AffineMap;
use crate::arrangement::{feasible_witness, LinCon};
use crate::error::{Error, Result};
use crate::exact::{rat_int, QMat, QVec, Rat};
use crate::reflection::generate_closure;
use crate::roots::{GroupChoice, RootSystem};

/// Stratum data attached to a face of the fundamental chamber (or to an
/// isotropy computation at a point of t*).
#[derive(Clone, Debug, Serialize)]
pub struct FaceStratum {
    /// Simple roots vanishing on the face (the face descriptor I).
    pub active_simple: Vec<usize>,
    /// Positive roots vanishing on the face, in simple-root coordinates.
    pub vanishing_roots: Vec<Vec<i64>>,
    pub dim_isotropy: usize,
    pub dim_semisimple: usize,
    pub dim_center: usize,
    /// Codimension of the stratum in the ambient dual space; equals
    /// the dimension of the semisimple part of the isotropy.
    pub codim: usize,
    /// Codimension 3, equivalently semisimple part su(2).
    pub subregular: bool,
}

fn stratum_from_vanishing(
    rs: &RootSystem,
    active_simple: Vec<usize>,
    vanishing: Vec<Vec<i64>>,
) -> Result<FaceStratum> {
    let rank = rs.rank();
    let nv = vanishing.len();
    let span_rank = if nv == 0 {
        0
    } else {
        QMat::from_i64_rows(&vanishing).rank()
    };
    let dim_isotropy = rank + 2 * nv;
    let dim_semisimple = 2 * nv + span_rank;
    let codim = dim_semisimple;
    if codim == 1 || codim == 2 {
        return Err(Error::Integrity(format!(
            "stratum of codimension {codim}: no compact semisimple algebra has dimension 1 or 2"
        )));
    }
    Ok(FaceStratum {
        active_simple,
        vanishing_roots: vanishing,
        dim_isotropy,
        dim_semisimple,
        dim_center: rank - span_rank,
        codim,
        subregular: codim == 3,
    })
}

/// Isotropy stratum data at a point of t*.
///
/// The vanishing-root set is computed at the point itself; the face
/// descriptor refers to the dominant representative of its Weyl orbit.
pub fn isotropy_at(rs: &RootSystem, xi: &QVec) -> Result<FaceStratum> {
    let vanishing: Vec<Vec<i64>> = rs
        .positive_roots()
        .iter()
        .filter(|alpha| rs.pairing(alpha, xi).is_zero())
        .cloned()
        .collect();
    // dominant representative: flip through negative simple walls
    let gens = rs.weyl_generators();
    let mut dom = xi.clone();
    'outer: loop {
        for i in 0..rs.rank() {
            let mut alpha = vec![0i64; rs.rank()];
            alpha[i] = 1;
            if rs.pairing(&alpha, &dom) < Rat::zero() {
                dom = gens[i].apply(&dom);
                continue 'outer;
            }
        }
        break;
    }
    let active_simple: Vec<usize> = (0..rs.rank())
        .filter(|&i| {
            let mut alpha = vec![0i64; rs.rank()];
            alpha[i] = 1;
            rs.pairing(&alpha, &dom).is_zero()
        })
        .collect();
    stratum_from_vanishing(rs, active_simple, vanishing)
}

/// All faces of the fundamental Weyl chamber, one stratum per subset of
/// the simple roots.
pub fn chamber_faces(rs: &RootSystem) -> Result<Vec<FaceStratum>> {
    let r = rs.rank();
    // dual direction vectors: pairing(alpha_i, xi_j) = delta_ij
    let g = QMat::from_i64_rows(
        &(0..r)
            .map(|i| {
                let mut alpha = vec![0i64; r];
                alpha[i] = 1;
                rs.root_functional(&alpha)
            })
            .collect::<Vec<_>>(),
    );
    let ginv = g.inv()?;
    let duals: Vec<QVec> = (0..r).map(|j| ginv.col(j)).collect();
    let mut out = Vec::new();
    for mask in 0..(1usize << r) {
        let active: Vec<usize> = (0..r).filter(|i| mask & (1 << i) != 0).collect();
        let free: Vec<usize> = (0..r).filter(|i| mask & (1 << i) == 0).collect();
        // a positive root vanishes identically on the face iff it pairs to
        // zero with every spanning ray
        let vanishing: Vec<Vec<i64>> = rs
            .positive_roots()
            .iter()
            .filter(|alpha| free.iter().all(|&j| rs.pairing(alpha, &duals[j]).is_zero()))
            .cloned()
            .collect();
        out.push(stratum_from_vanishing(rs, active, vanishing)?);
    }
    Ok(out)
}

/// Set of codimensions over all chamber faces. Contains neither 1 nor 2,
/// and every codimension-3 face has isotropy with semisimple part of rank
/// one.
pub fn strata_codim_spectrum(rs: &RootSystem) -> Result<Vec<usize>> {
    let mut codims: Vec<usize> = chamber_faces(rs)?.iter().map(|f| f.codim).collect();
    codims.sort_unstable();
    codims.dedup();
    Ok(codims)
}

/// An affine functional `coeffs . y + constant` on t (coroot coordinates).
#[derive(Clone, Debug)]
pub struct AffineFunc {
    pub coeffs: Vec<i64>,
    pub constant: Rat,
}

impl AffineFunc {
    pub fn eval(&self, y: &QVec) -> Rat {
        self.coeffs
            .iter()
            .zip(y.iter())
            .map(|(&a, yi)| yi * &rat_int(a))
            .fold(self.constant.clone(), |acc, t| acc + t)
    }
}

/// A face of the alcove: the subset of facets where it is pinned, its
/// dimension, an exact relative-interior witness, and the affine roots
/// `(alpha, level)` vanishing identically on it.
#[derive(Clone, Debug)]
pub struct AlcoveFace {
    pub active_facets: Vec<usize>,
    pub dim: usize,
    pub witness: QVec,
    pub vanishing_affine_roots: Vec<(Vec<i64>, i64)>,
    pub codim: usize,
    pub subregular: bool,
}

/// The fundamental alcove of a group choice: the polytope cut out in t
/// (coroot coordinates) by `alpha_i(y) >= 0` and, per irreducible
/// component, `theta(y) <= 1` for the highest root theta. The highest-root
/// level 1 is the recorded normalization.
#[derive(Clone, Debug)]
pub struct AlcoveModel {
    pub facets: Vec<AffineFunc>,
    pub faces: Vec<AlcoveFace>,
    pub vertices: Vec<QVec>,
    /// Normalization: affine root hyperplanes sit at integer levels of the
    /// root functionals; the alcove is bounded by level 1 of each highest
    /// root.
    pub highest_root_level: Rat,
}

impl AlcoveModel {
    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Index of the face whose relative interior contains the point, if
    /// the point lies in the alcove.
    pub fn face_of_point(&self, y: &QVec) -> Option<usize> {
        let mut active = Vec::new();
        for (i, f) in self.facets.iter().enumerate() {
            let v = f.eval(y);
            if v < Rat::zero() {
                return None;
            }
            if v.is_zero() {
                active.push(i);
            }
        }
        self.faces.iter().position(|f| f.active_facets == active)
    }
}

/// Build the alcove of a (semisimple) group choice.
pub fn alcove(gc: &GroupChoice) -> Result<AlcoveModel> {
    let rs = gc.root_system();
    let r = rs.rank();
    let mut facets: Vec<AffineFunc> = (0..r)
        .map(|i| AffineFunc {
            coeffs: rs.simple_root_on_t(i),
            constant: Rat::zero(),
        })
        .collect();
    for comp in rs.components() {
        let theta = rs.highest_root(&comp);
        let theta_fn = root_on_t(rs, &theta);
        facets.push(AffineFunc {
            coeffs: theta_fn.iter().map(|&a| -a).collect(),
            constant: Rat::one(),
        });
    }
    // affine roots potentially vanishing on alcove faces: (alpha, 0) and
    // (alpha, 1) for positive alpha
    let affine_roots: Vec<(Vec<i64>, i64)> = rs
        .positive_roots()
        .iter()
        .flat_map(|alpha| [(alpha.clone(), 0i64), (alpha.clone(), 1i64)])
        .collect();
    let mut faces = Vec::new();
    for mask in 0..(1usize << facets.len()) {
        let active: Vec<usize> = (0..facets.len()).filter(|i| mask & (1 << i) != 0).collect();
        // relative interior: active facets pinned to zero, others strictly
        // positive
        let mut cons: Vec<LinCon> = Vec::new();
        for (i, f) in facets.iter().enumerate() {
            let coeffs: Vec<Rat> = f.coeffs.iter().map(|&a| rat_int(-a)).collect();
            if active.contains(&i) {
                cons.push(LinCon {
                    coeffs: coeffs.clone(),
                    rhs: f.constant.clone(),
                    strict: false,
                });
                cons.push(LinCon {
                    coeffs: coeffs.iter().map(|c| -c).collect(),
                    rhs: -f.constant.clone(),
                    strict: false,
                });
            } else {
                cons.push(LinCon {
                    coeffs,
                    rhs: f.constant.clone(),
                    strict: true,
                });
            }
        }
        let Some(witness) = feasible_witness(&cons, r) else {
            continue;
        };
        // dimension = r - rank of the active facet normals
        let dim = if active.is_empty() {
            r
        } else {
            r - QMat::from_i64_rows(
                &active
                    .iter()
                    .map(|&i| facets[i].coeffs.clone())
                    .collect::<Vec<_>>(),
            )
            .rank()
        };
        // face directions: null space of the active normals
        let dirs = if active.is_empty() {
            QMat::identity(r).null_space() // empty
        } else {
            QMat::from_i64_rows(
                &active
                    .iter()
                    .map(|&i| facets[i].coeffs.clone())
                    .collect::<Vec<_>>(),
            )
            .null_space()
        };
        let dirs: Vec<QVec> = if active.is_empty() {
            (0..r)
                .map(|j| {
                    let mut v = QVec::zero(r);
                    v.set(j, Rat::one());
                    v
                })
                .collect()
        } else {
            dirs
        };
        // affine roots vanishing identically on the face
        let vanishing: Vec<(Vec<i64>, i64)> = affine_roots
            .iter()
            .filter(|(alpha, level)| {
                let f = root_on_t(rs, alpha);
                let at_witness = AffineFunc {
                    coeffs: f.clone(),
                    constant: rat_int(-level),
                }
                .eval(&witness);
                if !at_witness.is_zero() {
                    return false;
                }
                dirs.iter().all(|d| {
                    f.iter()
                        .zip(d.iter())
                        .map(|(&a, di)| di * &rat_int(a))
                        .sum::<Rat>()
                        .is_zero()
                })
            })
            .cloned()
            .collect();
        let nv = vanishing.len();
        let span_rank = if nv == 0 {
            0
        } else {
            QMat::from_i64_rows(&vanishing.iter().map(|(a, _)| a.clone()).collect::<Vec<_>>())
                .rank()
        };
        let codim = 2 * nv + span_rank;
        if codim == 1 || codim == 2 {
            return Err(Error::Integrity(format!(
                "alcove face of codimension {codim}"
            )));
        }
        faces.push(AlcoveFace {
            active_facets: active,
            dim,
            witness,
            vanishing_affine_roots: vanishing,
            codim,
            subregular: codim == 3,
        });
    }
    faces.sort_by(|a, b| {
        a.active_facets
            .len()
            .cmp(&b.active_facets.len())
            .then_with(|| a.active_facets.cmp(&b.active_facets))
    });
    let vertices: Vec<QVec> = faces
        .iter()
        .filter(|f| f.dim == 0)
        .map(|f| f.witness.clone())
        .collect();
    Ok(AlcoveModel {
        facets,
        faces,
        vertices,
        highest_root_level: Rat::one(),
    })
}

/// Integer coefficient vector of `y -> alpha(y)` on t in coroot
/// coordinates: `(C^T y)` contracted with alpha.
fn root_on_t(rs: &RootSystem, alpha: &[i64]) -> Vec<i64> {
    let r = rs.rank();
    (0..r)
        .map(|j| (0..r).map(|i| alpha[i] * rs.cartan().get(j, i)).sum())
        .collect()
}

/// The action of `Z = Lambda_G / Q^v` on the alcove: one integral affine
/// map per coset representative, each mapping the alcove onto itself, with
/// the induced face permutation and orbit partition.
#[derive(Clone, Debug)]
pub struct ZAction {
    /// One map per nontrivial coset representative.
    pub maps: Vec<AffineMap>,
    /// Face permutation per map, parallel to `maps`.
    pub face_permutations: Vec<Vec<usize>>,
    /// Orbits of faces under the whole action (singletons included).
    pub face_orbits: Vec<Vec<usize>>,
}

impl ZAction {
    pub fn n_orbits(&self) -> usize {
        self.face_orbits.len()
    }
}

/// Construct the Z-action: each nontrivial coset representative lambda
/// yields the unique map (translation by lambda) . w, with w in the Weyl
/// group, that preserves the alcove. Existence and uniqueness are
/// asserted, not assumed.
pub fn z_action(gc: &GroupChoice, model: &AlcoveModel) -> Result<ZAction> {
    let rs = gc.root_system();
    let r = rs.rank();
    let closure = generate_closure(&rs.weyl_generators_on_t(), 10_000)?;
    let weyl = closure
        .elements()
        .ok_or_else(|| Error::Integrity("Weyl group failed to close".into()))?;
    let mut maps = Vec::new();
    let mut perms = Vec::new();
    for rep in gc.coset_reps() {
        if rep.is_zero() {
            continue;
        }
        let translation = AffineMap::translation_by(rep.clone());
        let mut found: Option<AffineMap> = None;
        for w in weyl {
            let candidate = translation.compose(w);
            if preserves_vertices(&candidate, &model.vertices) {
                if let Some(prev) = &found {
                    if *prev != candidate {
                        return Err(Error::Integrity(
                            "two distinct maps return the translated alcove".into(),
                        ));
                    }
                } else {
                    found = Some(candidate);
                }
            }
        }
        let g = found.ok_or_else(|| {
            Error::Integrity(format!(
                "no Weyl element returns the alcove translated by {rep}"
            ))
        })?;
        // face permutation via relative-interior witnesses
        let mut perm = Vec::with_capacity(model.faces.len());
        for face in &model.faces {
            let img = g.apply(&face.witness);
            let target = model.face_of_point(&img).ok_or_else(|| {
                Error::Integrity("face image escapes the alcove".into())
            })?;
            perm.push(target);
        }
        maps.push(g);
        perms.push(perm);
    }
    let _ = r;
    // orbits under all maps
    let n = model.faces.len();
    let mut orbit_id: Vec<usize> = (0..n).collect();
    fn find(ids: &mut Vec<usize>, i: usize) -> usize {
        if ids[i] != i {
            let root = find(ids, ids[i]);
            ids[i] = root;
        }
        ids[i]
    }
    for perm in &perms {
        for (i, &j) in perm.iter().enumerate() {
            let (a, b) = (find(&mut orbit_id, i), find(&mut orbit_id, j));
            if a != b {
                orbit_id[a] = b;
            }
        }
    }
    let mut orbits: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for i in 0..n {
        let root = find(&mut orbit_id, i);
        orbits.entry(root).or_default().push(i);
    }
    Ok(ZAction {
        maps,
        face_permutations: perms,
        face_orbits: orbits.into_values().collect(),
    })
}

fn preserves_vertices(g: &AffineMap, vertices: &[QVec]) -> bool {
    let imgs: Vec<QVec> = vertices.iter().map(|v| g.apply(v)).collect();
    imgs.iter().all(|img| vertices.contains(img))
        && vertices.iter().all(|v| imgs.contains(v))
}

/// Strata of the group model: Z-orbits of alcove faces.
pub fn alcove_strata_count(gc: &GroupChoice) -> Result<usize> {
    let model = alcove(gc)?;
    if gc.coset_reps().len() == 1 {
        return Ok(model.face_count());
    }
    let action = z_action(gc, &model)?;
    Ok(action.n_orbits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::roots::{group_by_name, lattice, Label, LatticeKind, ALL_LABELS};

    #[test]
    fn isotropy_examples_a2() {
        let rs = RootSystem::build(Label::A2);
        // generic point: regular
        let s = isotropy_at(&rs, &QVec::new(vec![rat(3, 2), rat(5, 7)])).unwrap();
        assert_eq!(s.codim, 0);
        assert!(!s.subregular);
        // on one wall off the origin: subregular, codimension 3
        let s = isotropy_at(&rs, &QVec::new(vec![rat(1, 1), rat(2, 1)])).unwrap();
        assert_eq!(s.codim, 3);
        assert!(s.subregular);
        assert_eq!(s.vanishing_roots.len(), 1);
        // origin: codim 8 = dim su(3) - rank
        let s = isotropy_at(&rs, &QVec::zero(2)).unwrap();
        assert_eq!(s.codim, 8);
        assert_eq!(s.dim_isotropy, 8); // 2 + 2*3
    }

    #[test]
    fn isotropy_on_non_simple_wall_reports_dominant_face() {
        let rs = RootSystem::build(Label::A2);
        // a point on the hyperplane of the highest root alpha1 + alpha2
        let xi = QVec::new(vec![rat(1, 1), rat(-1, 1)]);
        let s = isotropy_at(&rs, &xi).unwrap();
        assert_eq!(s.codim, 3);
        assert_eq!(s.active_simple.len(), 1);
    }

    #[test]
    fn codim_spectra() {
        let expect = |label: Label, want: &[usize]| {
            let rs = RootSystem::build(label);
            assert_eq!(strata_codim_spectrum(&rs).unwrap(), want, "{label}");
        };
        expect(Label::A1, &[0, 3]);
        expect(Label::A2, &[0, 3, 8]);
        expect(Label::B2, &[0, 3, 10]);
        expect(Label::G2, &[0, 3, 14]);
        for label in ALL_LABELS {
            let rs = RootSystem::build(label);
            let spec = strata_codim_spectrum(&rs).unwrap();
            assert!(!spec.contains(&1) && !spec.contains(&2), "{label}");
        }
    }

    #[test]
    fn codim_increases_toward_smaller_faces() {
        for label in ALL_LABELS {
            let rs = RootSystem::build(label);
            let faces = chamber_faces(&rs).unwrap();
            for f in &faces {
                for g in &faces {
                    // f's active set contained in g's: g is in f's closure
                    if f.active_simple.iter().all(|i| g.active_simple.contains(i)) {
                        assert!(g.codim >= f.codim, "{label}");
                    }
                }
            }
        }
    }

    #[test]
    fn subregular_faces_have_rank_one_span() {
        for label in ALL_LABELS {
            let rs = RootSystem::build(label);
            for f in chamber_faces(&rs).unwrap() {
                if f.subregular {
                    assert_eq!(f.vanishing_roots.len(), 1, "{label}");
                    assert_eq!(f.dim_semisimple, 3, "{label}");
                }
            }
        }
    }

    #[test]
    fn su2_alcove_is_a_segment() {
        let gc = group_by_name("su2").unwrap();
        let model = alcove(&gc).unwrap();
        assert_eq!(model.face_count(), 3); // 2 vertices + interior
        assert_eq!(model.vertices.len(), 2);
        // vertices are y = 0 and y = 1/2 in the coroot coordinate
        let ys: Vec<Rat> = model.vertices.iter().map(|v| v.get(0).clone()).collect();
        assert!(ys.contains(&Rat::zero()));
        assert!(ys.contains(&rat(1, 2)));
    }

    #[test]
    fn su3_alcove_is_a_triangle() {
        let gc = group_by_name("su3").unwrap();
        let model = alcove(&gc).unwrap();
        assert_eq!(model.face_count(), 7);
        assert_eq!(model.vertices.len(), 3);
        assert_eq!(alcove_strata_count(&gc).unwrap(), 7);
    }

    #[test]
    fn psu3_center_three_cycles_the_vertices() {
        let gc = group_by_name("psu3").unwrap();
        let model = alcove(&gc).unwrap();
        let action = z_action(&gc, &model).unwrap();
        assert_eq!(action.maps.len(), 2); // two nontrivial cosets
        assert_eq!(action.n_orbits(), 3); // vertices, edges, interior
        assert_eq!(alcove_strata_count(&gc).unwrap(), 3);
        // every map preserves the alcove and permutes the three vertices
        for perm in &action.face_permutations {
            let vertex_faces: Vec<usize> = model
                .faces
                .iter()
                .enumerate()
                .filter(|(_, f)| f.dim == 0)
                .map(|(i, _)| i)
                .collect();
            for &vf in &vertex_faces {
                assert!(vertex_faces.contains(&perm[vf]));
            }
        }
    }

    #[test]
    fn so3_center_swaps_the_vertices() {
        let gc = group_by_name("so3").unwrap();
        let model = alcove(&gc).unwrap();
        let action = z_action(&gc, &model).unwrap();
        assert_eq!(action.maps.len(), 1);
        assert_eq!(action.n_orbits(), 2); // {two vertices}, {interior}
        let perm = &action.face_permutations[0];
        let vertex_faces: Vec<usize> = model
            .faces
            .iter()
            .enumerate()
            .filter(|(_, f)| f.dim == 0)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(perm[vertex_faces[0]], vertex_faces[1]);
        assert_eq!(perm[vertex_faces[1]], vertex_faces[0]);
    }

    #[test]
    fn a1a1_alcove_is_a_square() {
        let rs = RootSystem::build(Label::A1xA1);
        let gc = lattice(&rs, LatticeKind::SimplyConnected).unwrap();
        let model = alcove(&gc).unwrap();
        // product of two segments: 3 x 3 faces
        assert_eq!(model.face_count(), 9);
        assert_eq!(model.vertices.len(), 4);
    }

    #[test]
    fn alcove_subregular_edges_su3() {
        let gc = group_by_name("su3").unwrap();
        let model = alcove(&gc).unwrap();
        for f in &model.faces {
            match f.dim {
                2 => assert_eq!(f.codim, 0),
                1 => {
                    assert!(f.subregular);
                    assert_eq!(f.vanishing_affine_roots.len(), 1);
                }
                0 => assert!(f.codim > 3),
                _ => unreachable!(),
            }
        }
    }
}
