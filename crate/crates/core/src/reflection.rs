//! Groups of integral affine transformations: closure, element orders,
//! parity, Coxeter matrices, and bounded homomorphism/kernel probes.
//!
//! Infinite order is certified exactly: an element whose linear part has
//! finite order n but whose n-th power is a nonzero translation has infinite
//! order. Bound exhaustion is never reported as infinity.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::affine::AffineMap;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: u64 = 100;
pub const DEFAULT_WORD_BOUND: usize = 12;
pub const DEFAULT_CLOSURE_BOUND: usize = 10_000;

/// Result of a bounded group closure.
#[derive(Clone, Debug)]
pub enum GroupClosure {
    /// The whole group, in deterministic BFS discovery order starting from
    /// the identity.
    Full(Vec<AffineMap>),
    /// More than `bound` elements were found; the group is probably
    /// infinite (affine translations).
    Overflow { explored: usize },
}

impl GroupClosure {
    pub fn elements(&self) -> Option<&[AffineMap]> {
        match self {
            GroupClosure::Full(els) => Some(els),
            GroupClosure::Overflow { .. } => None,
        }
    }

    pub fn order(&self) -> Option<usize> {
        self.elements().map(<[AffineMap]>::len)
    }
}

/// BFS closure of the generated group, up to `bound` elements.
pub fn generate_closure(gens: &[AffineMap], bound: usize) -> Result<GroupClosure> {
    if bound < 1 {
        return Err(Error::Usage("closure bound must be at least 1".into()));
    }
    let dim = gens.first().map(AffineMap::dim).unwrap_or(0);
    let id = AffineMap::identity(dim);
    let mut elements = vec![id.clone()];
    let mut seen: HashSet<AffineMap> = HashSet::from([id]);
    let mut frontier = 0;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        frontier += 1;
        for g in gens {
            let next = current.compose(g);
            if seen.insert(next.clone()) {
                if elements.len() >= bound {
                    return Ok(GroupClosure::Overflow {
                        explored: elements.len() + 1,
                    });
                }
                elements.push(next);
            }
        }
    }
    Ok(GroupClosure::Full(elements))
}

/// All distinct elements expressible as words of length at most `max_len`
/// in the generators and their inverses, in BFS order.
pub fn word_ball(gens: &[AffineMap], max_len: usize) -> Vec<AffineMap> {
    let dim = gens.first().map(AffineMap::dim).unwrap_or(0);
    let id = AffineMap::identity(dim);
    let mut letters: Vec<AffineMap> = gens.to_vec();
    for g in gens {
        let inv = g.inverse();
        if !letters.contains(&inv) {
            letters.push(inv);
        }
    }
    let mut elements = vec![id.clone()];
    let mut seen: HashSet<AffineMap> = HashSet::from([id]);
    let mut layer: Vec<AffineMap> = vec![elements[0].clone()];
    for _ in 0..max_len {
        let mut next_layer = Vec::new();
        for w in &layer {
            for l in &letters {
                let next = w.compose(l);
                if seen.insert(next.clone()) {
                    elements.push(next.clone());
                    next_layer.push(next);
                }
            }
        }
        if next_layer.is_empty() {
            break;
        }
        layer = next_layer;
    }
    elements
}

/// Order of a group element.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ElementOrder {
    Finite(u64),
    /// Certified: the linear part has finite order n but g^n is a nonzero
    /// translation.
    Infinite,
    /// The linear part order exceeds the bound; nothing is certified.
    Unknown { at_least: u64 },
}

impl fmt::Display for ElementOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementOrder::Finite(n) => write!(f, "{n}"),
            ElementOrder::Infinite => write!(f, "inf"),
            ElementOrder::Unknown { at_least } => write!(f, ">={at_least}"),
        }
    }
}

pub fn element_order(g: &AffineMap, bound: u64) -> ElementOrder {
    let mut linear_pow = g.linear().clone();
    let mut n = 1u64;
    while !linear_pow.is_identity() {
        if n >= bound {
            return ElementOrder::Unknown { at_least: bound };
        }
        linear_pow = linear_pow.mul(g.linear());
        n += 1;
    }
    // linear part has order n; decide between order n and infinity
    let gn = g.pow(n as u32);
    if gn.is_identity() {
        ElementOrder::Finite(n)
    } else {
        ElementOrder::Infinite
    }
}

/// Determinant of the linear part: the parity character, +-1.
pub fn parity(g: &AffineMap) -> i64 {
    g.det()
}

/// Entry of a Coxeter matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoxeterEntry {
    M(u64),
    Infinity,
    Unknown { at_least: u64 },
}

impl fmt::Display for CoxeterEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterEntry::M(n) => write!(f, "{n}"),
            CoxeterEntry::Infinity => write!(f, "inf"),
            CoxeterEntry::Unknown { at_least } => write!(f, ">={at_least}"),
        }
    }
}

/// Symmetric matrix of pairwise product orders of generating reflections.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct CoxeterMatrix {
    pub entries: Vec<Vec<CoxeterEntry>>,
}

impl CoxeterMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// Equality up to simultaneous permutation of the generators.
    pub fn equivalent_to(&self, other: &CoxeterMatrix) -> bool {
        let n = self.rank();
        if other.rank() != n {
            return false;
        }
        let mut perm: Vec<usize> = (0..n).collect();
        loop {
            if (0..n).all(|i| {
                (0..n).all(|j| self.entries[i][j] == other.entries[perm[i]][perm[j]])
            }) {
                return true;
            }
            if !next_permutation(&mut perm) {
                return false;
            }
        }
    }
}

impl fmt::Display for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Coxeter matrix of a list of simple reflections: `m_ii = 1`,
/// `m_ij = order(r_i r_j)`.
pub fn coxeter_matrix(simple: &[AffineMap], bound: u64) -> Result<CoxeterMatrix> {
    for (i, r) in simple.iter().enumerate() {
        if !r.is_involution() {
            return Err(Error::Usage(format!("generator {i} is not an involution")));
        }
        if parity(r) != -1 {
            return Err(Error::Usage(format!("generator {i} has parity +1")));
        }
    }
    let n = simple.len();
    let mut entries = vec![vec![CoxeterEntry::M(1); n]; n];
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            entries[i][j] = match element_order(&simple[i].compose(&simple[j]), bound) {
                ElementOrder::Finite(m) => CoxeterEntry::M(m),
                ElementOrder::Infinite => CoxeterEntry::Infinity,
                ElementOrder::Unknown { at_least } => CoxeterEntry::Unknown { at_least },
            };
        }
    }
    Ok(CoxeterMatrix { entries })
}

/// A word in group generators, serialized as signed 1-based indices:
/// `[1, -2, 1]` means `g1 g2^{-1} g1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn evaluate(&self, gens: &[AffineMap]) -> Result<AffineMap> {
        let dim = gens.first().map(AffineMap::dim).unwrap_or(0);
        let mut acc = AffineMap::identity(dim);
        for &ix in &self.0 {
            if ix == 0 || ix.unsigned_abs() as usize > gens.len() {
                return Err(Error::Usage(format!("word index {ix} out of range")));
            }
            let g = &gens[(ix.unsigned_abs() - 1) as usize];
            acc = if ix > 0 {
                acc.compose(g)
            } else {
                acc.compose(&g.inverse())
            };
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A set of generators with declared relations, checkable at word level.
#[derive(Clone, Debug)]
pub struct GroupPresentationCheck {
    pub generators: Vec<AffineMap>,
    pub relations: Vec<Word>,
}

impl GroupPresentationCheck {
    /// Verify every declared relation evaluates to the identity.
    pub fn verify(&self) -> Result<()> {
        for rel in &self.relations {
            let g = rel.evaluate(&self.generators)?;
            if !g.is_identity() {
                return Err(Error::Integrity(format!(
                    "relation {rel} does not evaluate to the identity"
                )));
            }
        }
        Ok(())
    }
}

/// Report of a bounded homomorphism/kernel probe.
#[derive(Clone, Debug, Serialize)]
pub struct KernelProbe {
    /// Words of length at most the bound that are nontrivial in the domain
    /// but trivial in the image, in order of increasing length.
    pub kernel_words: Vec<Word>,
    pub words_checked: usize,
    pub word_bound: usize,
}

impl KernelProbe {
    pub fn shortest_kernel_word(&self) -> Option<&Word> {
        self.kernel_words.first()
    }
}

const MAX_PROBE_WORDS: usize = 5_000_000;

/// Enumerate freely reduced words up to `word_bound` and compare their
/// evaluations under the generator assignment `domain[i] -> image[i]`.
///
/// Words that are trivial in the domain must be trivial in the image, or
/// the assignment is not a homomorphism and an `Integrity` error names the
/// offending word. The returned kernel words are those trivial in the image
/// only.
pub fn hom_kernel_probe(
    domain: &[AffineMap],
    image: &[AffineMap],
    word_bound: usize,
) -> Result<KernelProbe> {
    if domain.len() != image.len() {
        return Err(Error::Usage(
            "domain and image generator lists differ in length".into(),
        ));
    }
    let involutive: Vec<bool> = domain.iter().map(AffineMap::is_involution).collect();
    // Word enumeration below reduces words using the relations g g^{-1} = 1
    // and, for involutive generators, g^2 = 1. The second reduction is only
    // a homomorphism-safe move once the images satisfy the same relation,
    // so confirm that first.
    for (i, inv) in involutive.iter().enumerate() {
        if *inv && !image[i].compose(&image[i]).is_identity() {
            return Err(Error::Integrity(format!(
                "not a homomorphism: relation {} holds in the domain but not the image",
                Word(vec![i as i32 + 1, i as i32 + 1])
            )));
        }
    }
    // letters: +i always; -i only when g_i is not an involution
    let mut letters: Vec<i32> = Vec::new();
    for i in 0..domain.len() {
        letters.push(i as i32 + 1);
        if !involutive[i] {
            letters.push(-(i as i32 + 1));
        }
    }
    let dim_d = domain.first().map(AffineMap::dim).unwrap_or(0);
    let dim_i = image.first().map(AffineMap::dim).unwrap_or(0);

    struct Node {
        word: Vec<i32>,
        d: AffineMap,
        im: AffineMap,
    }
    let mut layer = vec![Node {
        word: Vec::new(),
        d: AffineMap::identity(dim_d),
        im: AffineMap::identity(dim_i),
    }];
    let mut kernel_words = Vec::new();
    let mut checked = 0usize;
    for _ in 0..word_bound {
        let mut next = Vec::new();
        for node in &layer {
            for &l in &letters {
                // skip immediate cancellations: g g^{-1}, and g g for
                // involutions
                if let Some(&last) = node.word.last() {
                    if last == -l || (last == l && involutive[(l.unsigned_abs() - 1) as usize]) {
                        continue;
                    }
                }
                checked += 1;
                if checked > MAX_PROBE_WORDS {
                    return Err(Error::Usage(format!(
                        "kernel probe exceeds {MAX_PROBE_WORDS} words; lower the word bound"
                    )));
                }
                let gi = (l.unsigned_abs() - 1) as usize;
                let (d, im) = if l > 0 {
                    (node.d.compose(&domain[gi]), node.im.compose(&image[gi]))
                } else {
                    (
                        node.d.compose(&domain[gi].inverse()),
                        node.im.compose(&image[gi].inverse()),
                    )
                };
                let mut word = node.word.clone();
                word.push(l);
                let d_id = d.is_identity();
                let im_id = im.is_identity();
                if d_id && !im_id {
                    return Err(Error::Integrity(format!(
                        "not a homomorphism: relation {} holds in the domain but not the image",
                        Word(word)
                    )));
                }
                if !d_id && im_id {
                    kernel_words.push(Word(word.clone()));
                }
                next.push(Node { word, d, im });
            }
        }
        layer = next;
    }
    Ok(KernelProbe {
        kernel_words,
        words_checked: checked,
        word_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::IMat;
    use crate::exact::{rat, QVec};
    use crate::roots::{Label, RootSystem};

    fn refl(offset: i64) -> AffineMap {
        // t -> offset - t
        AffineMap::new(
            IMat::from_rows(&[vec![-1]]),
            QVec::new(vec![rat(offset, 1)]),
        )
        .unwrap()
    }

    #[test]
    fn closure_orders() {
        for (label, expected) in [
            (Label::A1, 2),
            (Label::A1xA1, 4),
            (Label::A2, 6),
            (Label::B2, 8),
            (Label::G2, 12),
            (Label::A3, 24),
            (Label::B3, 48),
        ] {
            let rs = RootSystem::build(label);
            let closure = generate_closure(&rs.weyl_generators(), DEFAULT_CLOSURE_BOUND).unwrap();
            assert_eq!(closure.order(), Some(expected), "{label}");
        }
    }

    #[test]
    fn closure_is_a_group() {
        let rs = RootSystem::build(Label::B2);
        let els = generate_closure(&rs.weyl_generators(), 100)
            .unwrap()
            .elements()
            .unwrap()
            .to_vec();
        for a in &els {
            assert!(els.contains(&a.inverse()));
            for b in &els {
                assert!(els.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn affine_pair_overflows() {
        let gens = [refl(0), refl(1)];
        match generate_closure(&gens, 100).unwrap() {
            GroupClosure::Overflow { .. } => {}
            GroupClosure::Full(els) => panic!("expected overflow, got order {}", els.len()),
        }
    }

    #[test]
    fn orders() {
        assert_eq!(element_order(&refl(0), 100), ElementOrder::Finite(2));
        let translation =
            AffineMap::translation_by(QVec::new(vec![rat(1, 1)]));
        assert_eq!(element_order(&translation, 100), ElementOrder::Infinite);
        // s1 s2 in B2 has order 4
        let b2 = RootSystem::build(Label::B2);
        let gens = b2.weyl_generators();
        assert_eq!(
            element_order(&gens[0].compose(&gens[1]), 100),
            ElementOrder::Finite(4)
        );
    }

    #[test]
    fn order_is_conjugation_invariant() {
        let rs = RootSystem::build(Label::G2);
        let els = generate_closure(&rs.weyl_generators(), 100)
            .unwrap()
            .elements()
            .unwrap()
            .to_vec();
        for g in &els {
            let o = element_order(g, 100);
            for h in &els {
                let conj = h.compose(g).compose(&h.inverse());
                assert_eq!(element_order(&conj, 100), o);
            }
        }
    }

    #[test]
    fn parity_is_a_character_with_balanced_fibers() {
        for label in [Label::A2, Label::B2, Label::G2] {
            let rs = RootSystem::build(label);
            let els = generate_closure(&rs.weyl_generators(), 100)
                .unwrap()
                .elements()
                .unwrap()
                .to_vec();
            for a in &els {
                for b in &els {
                    assert_eq!(parity(&a.compose(b)), parity(a) * parity(b));
                }
            }
            let plus = els.iter().filter(|g| parity(g) == 1).count();
            assert_eq!(plus * 2, els.len(), "{label}");
        }
    }

    #[test]
    fn coxeter_matrices() {
        let a2 = RootSystem::build(Label::A2);
        let m = coxeter_matrix(&a2.weyl_generators(), 100).unwrap();
        assert_eq!(m.entries[0][1], CoxeterEntry::M(3));
        assert_eq!(m.entries[0][0], CoxeterEntry::M(1));

        let a1a1 = RootSystem::build(Label::A1xA1);
        let m = coxeter_matrix(&a1a1.weyl_generators(), 100).unwrap();
        assert_eq!(m.entries[0][1], CoxeterEntry::M(2));

        // affine A1: infinity certified by the translation criterion
        let m = coxeter_matrix(&[refl(0), refl(1)], 100).unwrap();
        assert_eq!(m.entries[0][1], CoxeterEntry::Infinity);
        assert_eq!(m.entries[1][0], CoxeterEntry::Infinity);
    }

    #[test]
    fn coxeter_rejects_rotations() {
        let a2 = RootSystem::build(Label::A2);
        let gens = a2.weyl_generators();
        let rot = gens[0].compose(&gens[1]);
        assert!(coxeter_matrix(&[rot], 100).is_err());
    }

    #[test]
    fn kernel_probe_projection_to_d3() {
        // domain: reflections generating translations by 1/3 on the y-axis
        // (the x coordinate rides along), image: A2 Weyl group
        let r0 = AffineMap::new(
            IMat::from_rows(&[vec![1, 0], vec![0, -1]]),
            QVec::zero(2),
        )
        .unwrap();
        let r1 = AffineMap::new(
            IMat::from_rows(&[vec![1, 0], vec![0, -1]]),
            QVec::new(vec![rat(0, 1), rat(1, 3)]),
        )
        .unwrap();
        let a2 = RootSystem::build(Label::A2);
        let images = a2.weyl_generators();
        let probe = hom_kernel_probe(&[r0, r1], &images, 10).unwrap();
        let shortest = probe.shortest_kernel_word().unwrap();
        assert_eq!(shortest.len(), 6);
        assert!(probe.kernel_words.iter().all(|w| w.len() >= 6));
    }

    #[test]
    fn kernel_probe_identity_map() {
        let a2 = RootSystem::build(Label::A2);
        let gens = a2.weyl_generators();
        let probe = hom_kernel_probe(&gens, &gens, 8).unwrap();
        assert!(probe.kernel_words.is_empty());
    }

    #[test]
    fn kernel_probe_detects_non_homomorphism() {
        // r0^2 = 1 in the domain, but the image of r0 is a rotation of
        // order 3, so the identity relation fails
        let a2 = RootSystem::build(Label::A2);
        let gens = a2.weyl_generators();
        let rot = gens[0].compose(&gens[1]);
        let err = hom_kernel_probe(&[refl(0)], &[rot], 4).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)));
    }

    #[test]
    fn projection_to_z2_kernel_generates_translations() {
        let r0 = refl(0);
        let r1 = refl(1);
        let flip = refl(0);
        let probe = hom_kernel_probe(&[r0.clone(), r1.clone()], &[flip.clone(), flip], 6).unwrap();
        // shortest kernel words are the length-2 translations r0 r1, r1 r0
        let shortest = probe.shortest_kernel_word().unwrap();
        assert_eq!(shortest.len(), 2);
        let g = shortest.evaluate(&[r0, r1]).unwrap();
        assert!(g.linear().is_identity());
        assert!(!g.translation().is_zero());
    }
}
