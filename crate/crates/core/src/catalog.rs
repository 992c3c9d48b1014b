//! Registry of leaf-space models as executable fixtures with expected
//! results. The registry states claims; the generic machinery re-derives
//! every one of them, and any mismatch is a failure entry, never a silent
//! pass.

use std::fmt::Write as _;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::affine::{AffineMap, IMat};
use crate::arrangement::{
    check_free_transitive, enumerate_chambers, fixed_point_regularity_check,
    fundamental_domain_probe, root_arrangement, simple_reflections, Arrangement, BBox, Hyperplane,
};
use crate::error::{Error, Result};
use crate::exact::{rat, rat_int, rat_str, same_span, QMat, QVec, Rat};
use crate::reflection::{
    coxeter_matrix, element_order, generate_closure, hom_kernel_probe, parity, word_ball,
    CoxeterEntry, CoxeterMatrix, ElementOrder, GroupClosure, GroupPresentationCheck, Word,
    DEFAULT_CLOSURE_BOUND, DEFAULT_ORDER_BOUND,
};
use crate::roots::{lattice, Label, LatticeKind, RootSystem};

/// Expected size of the group generated by the reflections.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpectedOrder {
    Finite(usize),
    Infinite,
}

/// Declared quotient map for a kernel probe.
#[derive(Clone, Debug)]
pub struct QuotientSpec {
    pub description: String,
    pub images: Vec<AffineMap>,
    /// Expected length of the shortest kernel word, when finite kernels
    /// are ruled out.
    pub expected_shortest_kernel: Option<usize>,
    /// The kernel must consist of pure translations.
    pub kernel_is_translations: bool,
}

/// Declared chamber-stabilizing generators mapping onto the quotient of
/// the orbifold fundamental group by the reflection group.
#[derive(Clone, Debug)]
pub struct StabilizerSpec {
    pub description: String,
    pub generators: Vec<AffineMap>,
    pub expected_order: usize,
}

/// An executable leaf-space model.
#[derive(Clone, Debug)]
pub struct LeafSpaceModel {
    pub name: String,
    pub dim: usize,
    pub arrangement: Arrangement,
    pub weyl_generators: Vec<AffineMap>,
    /// Generators of the orbifold fundamental group when it is larger
    /// than the reflection group (extra lattice translations).
    pub extra_translations: Vec<AffineMap>,
    pub expected_order: ExpectedOrder,
    pub expected_coxeter: Option<CoxeterMatrix>,
    /// Expected chamber count within the default box, where pinned.
    pub expected_chambers: Option<usize>,
    pub relations: Vec<Word>,
    pub quotient: Option<QuotientSpec>,
    pub stabilizer: Option<StabilizerSpec>,
    /// Informational notes surfaced in every report.
    pub notes: Vec<String>,
    /// Interior point of the preferred base chamber (the fundamental
    /// alcove for affine models); the first certified chamber otherwise.
    pub base_point: Option<QVec>,
}

/// Parsed model names.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ModelName {
    Su2Dual,
    GgDual(Label),
    CartanDirac(Label, LatticeKind),
    Su2CartanDirac,
    Su2MinusMinusI,
    Su2PlusRMinusOrigin,
    Rank2MinusOrigin(Label),
}

impl FromStr for ModelName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("gg_dual(") {
            let label = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Usage(format!("malformed model name `{s}`")))?;
            return Ok(ModelName::GgDual(label.parse()?));
        }
        if let Some(rest) = s.strip_prefix("cartan_dirac(") {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Usage(format!("malformed model name `{s}`")))?;
            let (label, kind) = match inner.split_once(',') {
                Some((l, k)) => (l.trim(), k.trim().parse()?),
                None => (inner.trim(), LatticeKind::SimplyConnected),
            };
            return Ok(ModelName::CartanDirac(label.parse()?, kind));
        }
        if let Some(rest) = s.strip_prefix("rank2_minus_origin(") {
            let label = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Usage(format!("malformed model name `{s}`")))?;
            let label: Label = label.parse()?;
            if label.rank() != 2 {
                return Err(Error::Usage(format!(
                    "rank2_minus_origin needs a rank-2 label, got `{label}`"
                )));
            }
            return Ok(ModelName::Rank2MinusOrigin(label));
        }
        match s {
            "su2_dual" => Ok(ModelName::Su2Dual),
            "su2_cartan_dirac" => Ok(ModelName::Su2CartanDirac),
            "su2_minus_minusI" | "su2_minus_minus_i" => Ok(ModelName::Su2MinusMinusI),
            "su2_plus_r_minus_origin" => Ok(ModelName::Su2PlusRMinusOrigin),
            _ => Err(Error::Usage(format!("unknown model `{s}`"))),
        }
    }
}

/// Names of all registry entries.
pub fn registry_names() -> Vec<String> {
    let mut names = vec!["su2_dual".to_string()];
    for label in ["a1", "a1a1", "a2", "b2", "g2", "a3", "b3"] {
        names.push(format!("gg_dual({label})"));
    }
    for label in ["a1", "a2", "b2", "g2"] {
        names.push(format!("cartan_dirac({label})"));
    }
    for label in ["a1", "a2"] {
        names.push(format!("cartan_dirac({label},adjoint)"));
    }
    names.push("su2_cartan_dirac".to_string());
    names.push("su2_minus_minusI".to_string());
    names.push("su2_plus_r_minus_origin".to_string());
    for label in ["a1a1", "a2", "b2", "g2"] {
        names.push(format!("rank2_minus_origin({label})"));
    }
    names
}

/// Expected Coxeter entry m_ij of a crystallographic Cartan matrix.
fn cartan_to_coxeter(rs: &RootSystem) -> CoxeterMatrix {
    let r = rs.rank();
    let mut entries = vec![vec![CoxeterEntry::M(1); r]; r];
    for i in 0..r {
        for j in 0..r {
            if i == j {
                continue;
            }
            let prod = rs.cartan().get(i, j) * rs.cartan().get(j, i);
            entries[i][j] = CoxeterEntry::M(match prod {
                0 => 2,
                1 => 3,
                2 => 4,
                3 => 6,
                _ => unreachable!("crystallographic Cartan entries"),
            });
        }
    }
    CoxeterMatrix { entries }
}

fn one_d_reflection(offset: Rat) -> AffineMap {
    AffineMap::new(IMat::from_rows(&[vec![-1]]), QVec::new(vec![offset]))
        .expect("reflection is unimodular")
}

/// Reflection (x, y) -> (x, c - y) in the plane.
fn strip_reflection(c: Rat) -> AffineMap {
    AffineMap::new(
        IMat::from_rows(&[vec![1, 0], vec![0, -1]]),
        QVec::new(vec![Rat::zero(), c]),
    )
    .expect("reflection is unimodular")
}

/// Affine reflection in the level-one hyperplane of the highest root of a
/// component: `y -> s_theta(y) + theta^v`.
fn highest_root_affine_reflection(rs: &RootSystem, component: &[usize]) -> AffineMap {
    let theta = rs.highest_root(component);
    let theta_v = rs.coroot(&theta);
    let r = rs.rank();
    // functional theta(y) on t in coroot coordinates
    let func: Vec<i64> = (0..r)
        .map(|j| (0..r).map(|i| theta[i] * rs.cartan().get(j, i)).sum())
        .collect();
    // linear part: y - theta(y) theta^v
    let rows: Vec<Vec<i64>> = (0..r)
        .map(|a| {
            (0..r)
                .map(|b| {
                    let mut v = if a == b { 1 } else { 0 };
                    v -= theta_v[a] * func[b];
                    v
                })
                .collect()
        })
        .collect();
    AffineMap::new(IMat::from_rows(&rows), QVec::from_i64s(&theta_v))
        .expect("affine reflection is unimodular")
}

/// Affine root-hyperplane family of a root system on t, with enough
/// template levels to generate every integer level under coroot-lattice
/// translations.
fn affine_root_arrangement(rs: &RootSystem, bbox: BBox) -> Result<Arrangement> {
    let r = rs.rank();
    let mut hyps: Vec<Hyperplane> = Vec::new();
    for alpha in rs.positive_roots() {
        let func: Vec<i64> = (0..r)
            .map(|j| (0..r).map(|i| alpha[i] * rs.cartan().get(j, i)).sum())
            .collect();
        // offsets shift by alpha(e_i) under the coroot translations; the
        // levels they generate from 0 form d Z with d their gcd
        let d = func
            .iter()
            .fold(0i64, |acc, &v| num_integer::Integer::gcd(&acc, &v))
            .abs()
            .max(1);
        for level in 0..d {
            hyps.push(Hyperplane::new(func.clone(), rat_int(level))?);
        }
    }
    let period: Vec<QVec> = (0..r)
        .map(|i| {
            let mut e = vec![0i64; r];
            e[i] = 1;
            QVec::from_i64s(&e)
        })
        .collect();
    Arrangement::new(r, hyps, period, Some(bbox))
}

/// Build a registry model.
pub fn model(name: &str) -> Result<LeafSpaceModel> {
    let parsed: ModelName = name.parse()?;
    match parsed {
        ModelName::Su2Dual => {
            let arrangement = Arrangement::new(
                1,
                vec![Hyperplane::new(vec![1], Rat::zero())?],
                Vec::new(),
                Some(vec![(rat_int(-2), rat_int(2))]),
            )?;
            Ok(LeafSpaceModel {
                name: name.to_string(),
                dim: 1,
                arrangement,
                weyl_generators: vec![one_d_reflection(Rat::zero())],
                extra_translations: Vec::new(),
                expected_order: ExpectedOrder::Finite(2),
                expected_coxeter: Some(CoxeterMatrix {
                    entries: vec![vec![CoxeterEntry::M(1)]],
                }),
                expected_chambers: Some(2),
                relations: vec![Word(vec![1, 1])],
                quotient: None,
                stabilizer: None,
                notes: Vec::new(),
                base_point: None,
            })
        }
        ModelName::GgDual(label) => {
            let rs = RootSystem::build(label);
            let arrangement = root_arrangement(&rs, None)?;
            let gens = rs.weyl_generators();
            let order = match generate_closure(&gens, DEFAULT_CLOSURE_BOUND)? {
                GroupClosure::Full(els) => els.len(),
                GroupClosure::Overflow { .. } => {
                    return Err(Error::Integrity("finite Weyl group overflowed".into()))
                }
            };
            let mut relations = Vec::new();
            for i in 0..gens.len() as i32 {
                relations.push(Word(vec![i + 1, i + 1]));
            }
            Ok(LeafSpaceModel {
                name: name.to_string(),
                dim: rs.rank(),
                arrangement,
                weyl_generators: gens,
                extra_translations: Vec::new(),
                expected_order: ExpectedOrder::Finite(order),
                expected_coxeter: Some(cartan_to_coxeter(&rs)),
                expected_chambers: Some(order),
                relations,
                quotient: None,
                stabilizer: None,
                notes: Vec::new(),
                base_point: None,
            })
        }
        ModelName::CartanDirac(..) | ModelName::Su2CartanDirac => {
            let (label, kind) = match parsed {
                ModelName::Su2CartanDirac => (Label::A1, LatticeKind::SimplyConnected),
                ModelName::CartanDirac(l, k) => (l, k),
                _ => unreachable!(),
            };
            let rs = RootSystem::build(label);
            let r = rs.rank();
            // a box around the fundamental alcove: it sits inside the unit
            // cube of the coroot coordinates
            let bbox: BBox = vec![(rat(-3, 4), rat(5, 4)); r];
            let arrangement = affine_root_arrangement(&rs, bbox)?;
            let mut gens = rs.weyl_generators_on_t();
            for comp in rs.components() {
                gens.push(highest_root_affine_reflection(&rs, &comp));
            }
            let base_point = Some(fundamental_alcove_point(&rs)?);
            // the extended group of a quotient group gains the coweight
            // translations; its alcove-stabilizing part is the center
            // quotient Z, realized by the unique alcove-preserving maps
            let (extra_translations, stabilizer) = match kind {
                LatticeKind::SimplyConnected => (Vec::new(), None),
                LatticeKind::Adjoint => {
                    let gc = lattice(&rs, kind)?;
                    let translations: Vec<AffineMap> = (0..r)
                        .map(|j| AffineMap::translation_by(gc.basis_coroot().col(j)))
                        .collect();
                    let alcove_model = crate::strata::alcove(&gc)?;
                    let action = crate::strata::z_action(&gc, &alcove_model)?;
                    let spec = StabilizerSpec {
                        description: format!(
                            "alcove-stabilizing representatives of the center quotient of order {}",
                            gc.center_quotient_order()
                        ),
                        generators: action.maps.clone(),
                        expected_order: gc.center_quotient_order(),
                    };
                    (translations, Some(spec))
                }
            };
            let mut relations = Vec::new();
            for i in 0..gens.len() as i32 {
                relations.push(Word(vec![i + 1, i + 1]));
            }
            let expected_coxeter = match label {
                // two reflections with an infinite-order product
                Label::A1 => Some(CoxeterMatrix {
                    entries: vec![
                        vec![CoxeterEntry::M(1), CoxeterEntry::Infinity],
                        vec![CoxeterEntry::Infinity, CoxeterEntry::M(1)],
                    ],
                }),
                // the affine a2 diagram is a triangle of order-3 bonds
                Label::A2 => Some(CoxeterMatrix {
                    entries: vec![
                        vec![CoxeterEntry::M(1), CoxeterEntry::M(3), CoxeterEntry::M(3)],
                        vec![CoxeterEntry::M(3), CoxeterEntry::M(1), CoxeterEntry::M(3)],
                        vec![CoxeterEntry::M(3), CoxeterEntry::M(3), CoxeterEntry::M(1)],
                    ],
                }),
                _ => None,
            };
            Ok(LeafSpaceModel {
                name: name.to_string(),
                dim: r,
                arrangement,
                weyl_generators: gens,
                extra_translations,
                expected_order: ExpectedOrder::Infinite,
                expected_coxeter,
                expected_chambers: None,
                relations,
                quotient: None,
                stabilizer,
                notes: Vec::new(),
                base_point,
            })
        }
        ModelName::Su2MinusMinusI => {
            let arrangement = Arrangement::new(
                1,
                vec![Hyperplane::new(vec![1], Rat::zero())?],
                Vec::new(),
                Some(vec![(rat(-1, 2), rat(1, 2))]),
            )?;
            Ok(LeafSpaceModel {
                name: name.to_string(),
                dim: 1,
                arrangement,
                weyl_generators: vec![one_d_reflection(Rat::zero())],
                extra_translations: Vec::new(),
                expected_order: ExpectedOrder::Finite(2),
                expected_coxeter: Some(CoxeterMatrix {
                    entries: vec![vec![CoxeterEntry::M(1)]],
                }),
                expected_chambers: Some(2),
                relations: vec![Word(vec![1, 1])],
                quotient: None,
                stabilizer: None,
                notes: Vec::new(),
                base_point: None,
            })
        }
        ModelName::Su2PlusRMinusOrigin => {
            let arrangement = Arrangement::new(
                2,
                vec![
                    Hyperplane::new(vec![0, 1], Rat::zero())?,
                    Hyperplane::new(vec![0, 1], rat(1, 2))?,
                ],
                vec![QVec::new(vec![rat_int(0), rat_int(1)])],
                Some(vec![(rat_int(0), rat_int(1)), (rat(-5, 4), rat(5, 4))]),
            )?;
            let r0 = strip_reflection(Rat::zero());
            let r1 = strip_reflection(Rat::one());
            // quotient onto the finite Weyl group of the unpunctured model
            let flip = one_d_reflection(Rat::zero());
            Ok(LeafSpaceModel {
                name: name.to_string(),
                dim: 2,
                arrangement,
                weyl_generators: vec![r0, r1],
                extra_translations: Vec::new(),
                expected_order: ExpectedOrder::Infinite,
                expected_coxeter: Some(CoxeterMatrix {
                    entries: vec![
                        vec![CoxeterEntry::M(1), CoxeterEntry::Infinity],
                        vec![CoxeterEntry::Infinity, CoxeterEntry::M(1)],
                    ],
                }),
                expected_chambers: None,
                relations: vec![Word(vec![1, 1]), Word(vec![2, 2])],
                quotient: Some(QuotientSpec {
                    description: "projection onto the rank-one Weyl group".into(),
                    images: vec![flip.clone(), flip],
                    expected_shortest_kernel: Some(2),
                    kernel_is_translations: true,
                }),
                stabilizer: None,
                notes: Vec::new(),
                base_point: Some(QVec::new(vec![rat(1, 2), rat(1, 4)])),
            })
        }
        ModelName::Rank2MinusOrigin(label) => {
            let rs = RootSystem::build(label);
            let k = match cartan_to_coxeter(&rs).entries[0][1] {
                CoxeterEntry::M(m) => m as i64,
                _ => unreachable!(),
            };
            let arrangement = Arrangement::new(
                2,
                vec![
                    Hyperplane::new(vec![0, 1], Rat::zero())?,
                    Hyperplane::new(vec![0, 1], rat(1, 2 * k))?,
                ],
                vec![QVec::new(vec![rat_int(0), rat(1, k)])],
                Some(vec![(rat_int(0), rat_int(1)), (rat(-5, 4 * k), rat(5, 4 * k))]),
            )?;
            let r0 = strip_reflection(Rat::zero());
            let r1 = strip_reflection(rat(1, k));
            Ok(LeafSpaceModel {
                name: name.to_string(),
                dim: 2,
                arrangement,
                weyl_generators: vec![r0, r1],
                extra_translations: Vec::new(),
                expected_order: ExpectedOrder::Infinite,
                expected_coxeter: Some(CoxeterMatrix {
                    entries: vec![
                        vec![CoxeterEntry::M(1), CoxeterEntry::Infinity],
                        vec![CoxeterEntry::Infinity, CoxeterEntry::M(1)],
                    ],
                }),
                expected_chambers: None,
                relations: vec![Word(vec![1, 1]), Word(vec![2, 2])],
                quotient: Some(QuotientSpec {
                    description: format!(
                        "reduction of the translation index modulo {k} onto the {label} Weyl group"
                    ),
                    images: rs.weyl_generators(),
                    expected_shortest_kernel: Some(2 * k as usize),
                    kernel_is_translations: true,
                }),
                stabilizer: None,
                notes: vec![
                    "whether the reflection group splits over its translation subgroup is a \
                     universally quantified claim over all sections, not decidable at bounded \
                     word length; recorded as unverified"
                        .into(),
                ],
                base_point: Some(QVec::new(vec![rat(1, 2), rat(1, 4 * k)])),
            })
        }
    }
}

/// Exact interior point of the fundamental alcove.
fn fundamental_alcove_point(rs: &RootSystem) -> Result<QVec> {
    use crate::arrangement::{feasible_witness, LinCon};
    let r = rs.rank();
    let mut cons: Vec<LinCon> = Vec::new();
    for i in 0..r {
        // alpha_i(y) > 0
        let f = rs.simple_root_on_t(i);
        cons.push(LinCon {
            coeffs: f.iter().map(|&a| rat_int(-a)).collect(),
            rhs: rat_int(0),
            strict: true,
        });
    }
    for comp in rs.components() {
        let theta = rs.highest_root(&comp);
        let func: Vec<i64> = (0..r)
            .map(|j| (0..r).map(|i| theta[i] * rs.cartan().get(j, i)).sum())
            .collect();
        cons.push(LinCon {
            coeffs: func.iter().map(|&a| rat_int(a)).collect(),
            rhs: rat_int(1),
            strict: true,
        });
    }
    feasible_witness(&cons, r)
        .ok_or_else(|| Error::Integrity("fundamental alcove is empty".into()))
}

/// Status of one verification entry.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Info,
}

/// One verification entry of a model report.
#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// The claim this check instantiates.
    pub theorem: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl CheckResult {
    fn pass(name: &str, theorem: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            theorem: theorem.into(),
            status: CheckStatus::Pass,
            detail,
        }
    }

    fn fail(name: &str, theorem: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            theorem: theorem.into(),
            status: CheckStatus::Fail,
            detail,
        }
    }

    fn info(name: &str, theorem: &str, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            theorem: theorem.into(),
            status: CheckStatus::Info,
            detail,
        }
    }
}

/// Full verification report for a model.
#[derive(Clone, Debug, Serialize)]
pub struct ModelReport {
    pub model: String,
    pub bbox: Vec<(String, String)>,
    pub word_bound: usize,
    pub seed: u64,
    pub n_samples: usize,
    pub complete_group: bool,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

/// Verification options.
#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    pub word_bound: usize,
    pub n_samples: usize,
    pub seed: u64,
    pub closure_bound: usize,
    pub order_bound: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            word_bound: crate::reflection::DEFAULT_WORD_BOUND,
            n_samples: 200,
            seed: 0,
            closure_bound: DEFAULT_CLOSURE_BOUND,
            order_bound: DEFAULT_ORDER_BOUND,
        }
    }
}

/// Run every declared expectation of the model through the generic
/// machinery.
pub fn verify(model: &LeafSpaceModel, opts: &VerifyOptions) -> Result<ModelReport> {
    let mut checks: Vec<CheckResult> = Vec::new();
    let gens = &model.weyl_generators;

    // group order / closure
    let closure = generate_closure(gens, opts.closure_bound)?;
    let (elements, complete): (Vec<AffineMap>, bool) = match (&closure, model.expected_order) {
        (GroupClosure::Full(els), ExpectedOrder::Finite(n)) => {
            if els.len() == n {
                checks.push(CheckResult::pass(
                    "group_order",
                    "reflections_generate_weyl_group",
                    format!("closure has {} elements", els.len()),
                ));
            } else {
                checks.push(CheckResult::fail(
                    "group_order",
                    "reflections_generate_weyl_group",
                    format!("closure has {} elements, expected {n}", els.len()),
                ));
            }
            (els.clone(), true)
        }
        (GroupClosure::Full(els), ExpectedOrder::Infinite) => {
            checks.push(CheckResult::fail(
                "group_order",
                "reflections_generate_weyl_group",
                format!("expected an infinite group, closure stopped at {}", els.len()),
            ));
            (els.clone(), true)
        }
        (GroupClosure::Overflow { explored }, ExpectedOrder::Infinite) => {
            // certify infinity exactly via the translation criterion,
            // searching short words for an element of certified infinite
            // order
            let certified = word_ball(gens, 6)
                .into_iter()
                .find(|g| element_order(g, opts.order_bound) == ElementOrder::Infinite);
            match certified {
                Some(_) => checks.push(CheckResult::pass(
                    "group_order",
                    "reflections_generate_weyl_group",
                    format!(
                        "closure exceeds {explored} elements and a generator product is a \
                         certified translation of infinite order"
                    ),
                )),
                None => checks.push(CheckResult::fail(
                    "group_order",
                    "reflections_generate_weyl_group",
                    "closure overflowed but no infinite-order element was certified".into(),
                )),
            }
            (word_ball(gens, opts.word_bound), false)
        }
        (GroupClosure::Overflow { explored }, ExpectedOrder::Finite(n)) => {
            checks.push(CheckResult::fail(
                "group_order",
                "reflections_generate_weyl_group",
                format!("expected order {n}, closure exceeded {explored}"),
            ));
            (word_ball(gens, opts.word_bound), false)
        }
    };

    // chambers
    let decomp = enumerate_chambers(&model.arrangement)?;
    let base_index = model
        .base_point
        .as_ref()
        .and_then(|p| match decomp.locate(p) {
            crate::arrangement::Location::Chamber(i)
                if decomp.chamber_certified(&decomp.chambers[i]) =>
            {
                Some(i)
            }
            _ => None,
        })
        .or_else(|| {
            (0..decomp.chambers.len())
                .find(|&i| decomp.chamber_certified(&decomp.chambers[i]))
        })
        .ok_or_else(|| Error::Usage("box contains no certified chamber".into()))?;
    let certified = decomp
        .chambers
        .iter()
        .filter(|c| decomp.chamber_certified(c))
        .count();
    if certified < 3 && !complete {
        checks.push(CheckResult::fail(
            "chamber_count",
            "chambers_are_regular_components",
            format!("box certifies only {certified} chambers; it must cover at least 3"),
        ));
    }
    match model.expected_chambers {
        Some(n) if decomp.chambers.len() == n => checks.push(CheckResult::pass(
            "chamber_count",
            "chambers_are_regular_components",
            format!("{n} chambers"),
        )),
        Some(n) => checks.push(CheckResult::fail(
            "chamber_count",
            "chambers_are_regular_components",
            format!("{} chambers, expected {n}", decomp.chambers.len()),
        )),
        None => checks.push(CheckResult::info(
            "chamber_count",
            "chambers_are_regular_components",
            format!(
                "{} chambers in the box, {certified} certified",
                decomp.chambers.len()
            ),
        )),
    }

    // simple reflections of the base chamber and the Coxeter matrix
    let reflections: Vec<AffineMap> = elements
        .iter()
        .filter(|g| g.is_involution() && parity(g) == -1)
        .cloned()
        .collect();
    match simple_reflections(&decomp, &decomp.chambers[base_index], &reflections) {
        Ok(simple) => {
            let got = coxeter_matrix(&simple, opts.order_bound)?;
            match &model.expected_coxeter {
                Some(expected) if got.equivalent_to(expected) => {
                    checks.push(CheckResult::pass(
                        "coxeter_matrix",
                        "weyl_group_is_a_coxeter_system",
                        format!("{got}").replace('\n', " "),
                    ));
                }
                Some(expected) => checks.push(CheckResult::fail(
                    "coxeter_matrix",
                    "weyl_group_is_a_coxeter_system",
                    format!("got {got} expected {expected}").replace('\n', " "),
                )),
                None => checks.push(CheckResult::info(
                    "coxeter_matrix",
                    "weyl_group_is_a_coxeter_system",
                    format!("{got}").replace('\n', " "),
                )),
            }
        }
        Err(e) => checks.push(CheckResult::fail(
            "coxeter_matrix",
            "weyl_group_is_a_coxeter_system",
            format!("simple reflections: {e}"),
        )),
    }

    // Davis suite
    let t = check_free_transitive(&elements, &decomp, base_index, complete);
    checks.push(if t.pass {
        CheckResult::pass(
            "free_transitive",
            "free_transitive_chamber_action",
            format!(
                "{} of {} required chambers reached, action free",
                t.reached_chambers.min(t.required_chambers),
                t.required_chambers
            ),
        )
    } else {
        CheckResult::fail(
            "free_transitive",
            "free_transitive_chamber_action",
            t.violations.join("; "),
        )
    });
    let f = fundamental_domain_probe(
        &elements,
        &decomp,
        base_index,
        opts.n_samples,
        opts.seed,
        complete,
    );
    checks.push(if f.pass {
        CheckResult::pass(
            "fundamental_domain",
            "chamber_is_a_fundamental_domain",
            format!("{}/{} samples moved into the base chamber", f.covered, f.n_samples),
        )
    } else {
        CheckResult::fail(
            "fundamental_domain",
            "chamber_is_a_fundamental_domain",
            f.violations.join("; "),
        )
    });
    let reg = fixed_point_regularity_check(&elements, &decomp, opts.n_samples, opts.seed);
    checks.push(if reg.pass {
        CheckResult::pass(
            "fixed_point_regularity",
            "regular_locus_is_complement_of_hyperplanes",
            format!(
                "{} regular and {} singular samples consistent",
                reg.regular_samples, reg.singular_samples
            ),
        )
    } else {
        CheckResult::fail(
            "fixed_point_regularity",
            "regular_locus_is_complement_of_hyperplanes",
            reg.violations.join("; "),
        )
    });

    // parity character
    {
        let mut ok = true;
        let mut detail = String::new();
        for a in elements.iter().take(40) {
            for b in elements.iter().take(40) {
                if parity(&a.compose(b)) != parity(a) * parity(b) {
                    ok = false;
                    let _ = write!(detail, "parity fails multiplicativity; ");
                }
            }
        }
        if complete {
            let plus = elements.iter().filter(|g| parity(g) == 1).count();
            if 2 * plus != elements.len() {
                ok = false;
                let _ = write!(
                    detail,
                    "parity fibers unbalanced: {plus} of {}",
                    elements.len()
                );
            }
        }
        checks.push(if ok {
            CheckResult::pass(
                "parity_character",
                "parity_character_is_a_homomorphism",
                "multiplicative with balanced fibers".into(),
            )
        } else {
            CheckResult::fail(
                "parity_character",
                "parity_character_is_a_homomorphism",
                detail,
            )
        });
    }

    // declared relations
    let presentation = GroupPresentationCheck {
        generators: gens.clone(),
        relations: model.relations.clone(),
    };
    checks.push(match presentation.verify() {
        Ok(()) => CheckResult::pass(
            "relations",
            "declared_relations_hold",
            format!("{} relations verified", model.relations.len()),
        ),
        Err(e) => CheckResult::fail("relations", "declared_relations_hold", e.to_string()),
    });

    // declared quotient map
    if let Some(q) = &model.quotient {
        match hom_kernel_probe(gens, &q.images, opts.word_bound) {
            Ok(probe) => {
                let mut ok = true;
                let mut detail = format!(
                    "{} ({} words checked at bound {})",
                    q.description, probe.words_checked, probe.word_bound
                );
                match (q.expected_shortest_kernel, probe.shortest_kernel_word()) {
                    (Some(exp), Some(w)) if w.len() == exp => {
                        let _ = write!(detail, "; shortest kernel word length {exp}");
                    }
                    (Some(exp), Some(w)) => {
                        ok = false;
                        let _ = write!(
                            detail,
                            "; shortest kernel word has length {}, expected {exp}",
                            w.len()
                        );
                    }
                    (Some(exp), None) => {
                        ok = false;
                        let _ = write!(detail, "; no kernel word found, expected length {exp}");
                    }
                    (None, Some(_)) => {
                        ok = false;
                        let _ = write!(detail, "; unexpected kernel word");
                    }
                    (None, None) => {}
                }
                if q.kernel_is_translations {
                    for w in &probe.kernel_words {
                        let g = w.evaluate(gens)?;
                        if !g.linear().is_identity() {
                            ok = false;
                            let _ = write!(detail, "; kernel word {w} is not a translation");
                        }
                    }
                }
                checks.push(if ok {
                    CheckResult::pass("kernel_probe", "kernel_of_removal_quotient", detail)
                } else {
                    CheckResult::fail("kernel_probe", "kernel_of_removal_quotient", detail)
                });
            }
            Err(e) => checks.push(CheckResult::fail(
                "kernel_probe",
                "kernel_of_removal_quotient",
                e.to_string(),
            )),
        }
    }

    // extended-group translations must preserve the hyperplane family
    if !model.extra_translations.is_empty() {
        let mut ok = true;
        let mut detail = String::new();
        for (ti, t) in model.extra_translations.iter().enumerate() {
            if !t.linear().is_identity() {
                ok = false;
                let _ = write!(detail, "generator {ti} is not a translation; ");
                continue;
            }
            for h in model.arrangement.template() {
                let shifted = h.translate(t.translation());
                // the family offsets for this normal are the template
                // offsets plus the subgroup generated by the period shifts
                let step = {
                    use num_traits::Zero;
                    let shifts: Vec<Rat> = model
                        .arrangement
                        .period()
                        .iter()
                        .map(|v| {
                            h.normal()
                                .iter()
                                .zip(v.iter())
                                .map(|(&a, vi)| vi * &crate::exact::rat_int(a))
                                .sum::<Rat>()
                        })
                        .filter(|s| !s.is_zero())
                        .collect();
                    shifts
                };
                let in_family = model.arrangement.template().iter().any(|h2| {
                    if h2.normal() != h.normal() {
                        return false;
                    }
                    let diff = shifted.offset() - h2.offset();
                    if crate::exact::rat::is_zero(&diff) {
                        return true;
                    }
                    step.iter().any(|s| {
                        let q = &diff / s;
                        num_traits::One::is_one(q.denom())
                    })
                });
                if !in_family {
                    ok = false;
                    let _ = write!(
                        detail,
                        "translation {ti} moves {h} off the family; "
                    );
                }
            }
        }
        checks.push(if ok {
            CheckResult::pass(
                "extended_translations",
                "extended_group_preserves_hyperplane_family",
                format!(
                    "{} lattice translations preserve the family",
                    model.extra_translations.len()
                ),
            )
        } else {
            CheckResult::fail(
                "extended_translations",
                "extended_group_preserves_hyperplane_family",
                detail,
            )
        });
    }

    // invariant splitting of the finite linear-part action
    checks.push(invariant_splitting_check(&elements, model.dim));

    // declared stabilizer section
    if let Some(s) = &model.stabilizer {
        let mut ok = true;
        let mut detail = s.description.clone();
        let base = &decomp.chambers[base_index];
        for g in &s.generators {
            let img = g.apply(&base.witness);
            if !decomp.in_closed_chamber(base, &img) {
                ok = false;
                let _ = write!(detail, "; a declared stabilizer moves the base chamber");
            }
        }
        match generate_closure(&s.generators, opts.closure_bound)? {
            GroupClosure::Full(els) if els.len() == s.expected_order => {
                let _ = write!(detail, "; stabilizer order {}", els.len());
            }
            GroupClosure::Full(els) => {
                ok = false;
                let _ = write!(
                    detail,
                    "; stabilizer order {}, expected {}",
                    els.len(),
                    s.expected_order
                );
            }
            GroupClosure::Overflow { .. } => {
                ok = false;
                let _ = write!(detail, "; stabilizer closure overflowed");
            }
        }
        checks.push(if ok {
            CheckResult::pass("split_stabilizer", "split_exact_sequence_section", detail)
        } else {
            CheckResult::fail("split_stabilizer", "split_exact_sequence_section", detail)
        });
    }

    for note in &model.notes {
        checks.push(CheckResult::info(
            "note",
            "recorded_limitation",
            note.clone(),
        ));
    }

    let pass = checks.iter().all(|c| c.status != CheckStatus::Fail);
    let bbox = model
        .arrangement
        .bbox()
        .map(|b| {
            b.iter()
                .map(|(lo, hi)| (rat_str(lo), rat_str(hi)))
                .collect()
        })
        .unwrap_or_default();
    Ok(ModelReport {
        model: model.name.clone(),
        bbox,
        word_bound: opts.word_bound,
        seed: opts.seed,
        n_samples: opts.n_samples,
        complete_group: complete,
        checks,
        pass,
    })
}

/// The averaging operator `T(v) = sum_gamma gamma . v` of the finite
/// linear-part group must have image the fixed subspace and kernel the
/// annihilator of the fixed covectors, splitting the space.
fn invariant_splitting_check(elements: &[AffineMap], dim: usize) -> CheckResult {
    let theorem = "invariant_splitting_of_finite_actions";
    // finite group of linear parts
    let mut linear: Vec<IMat> = Vec::new();
    for g in elements {
        if !linear.contains(g.linear()) {
            linear.push(g.linear().clone());
        }
    }
    let qmats: Vec<QMat> = linear.iter().map(IMat::to_qmat).collect();
    // T = sum of the group elements
    let mut t = QMat::zero(dim, dim);
    for m in &qmats {
        for i in 0..dim {
            for j in 0..dim {
                let v = t.get(i, j) + m.get(i, j);
                t.set(i, j, v);
            }
        }
    }
    // fixed subspace: null space of stacked (gamma - I)
    let stack_minus_identity = |mats: &[QMat]| -> QMat {
        let mut rows = Vec::new();
        for m in mats {
            for i in 0..dim {
                let mut row = Vec::with_capacity(dim);
                for j in 0..dim {
                    let mut v = m.get(i, j).clone();
                    if i == j {
                        v -= Rat::one();
                    }
                    row.push(v);
                }
                rows.push(row);
            }
        }
        QMat::from_rows(rows)
    };
    let fixed = stack_minus_identity(&qmats).null_space();
    let transposed: Vec<QMat> = qmats.iter().map(QMat::transpose).collect();
    let fixed_covectors = stack_minus_identity(&transposed).null_space();
    // annihilator of the fixed covectors
    let annihilator = if fixed_covectors.is_empty() {
        // whole space
        (0..dim)
            .map(|j| {
                let mut v = QVec::zero(dim);
                v.set(j, Rat::one());
                v
            })
            .collect::<Vec<_>>()
    } else {
        QMat::from_rows(
            fixed_covectors
                .iter()
                .map(|v| v.as_slice().to_vec())
                .collect(),
        )
        .null_space()
    };
    let image: Vec<QVec> = (0..dim).map(|j| t.col(j)).collect();
    let kernel = t.null_space();
    let image_ok = same_span(&image, &fixed);
    let kernel_ok = same_span(&kernel, &annihilator);
    let split_ok = fixed.len() + kernel.len() == dim && {
        let mut all: Vec<Vec<Rat>> = fixed.iter().map(|v| v.as_slice().to_vec()).collect();
        all.extend(kernel.iter().map(|v| v.as_slice().to_vec()));
        all.is_empty() || QMat::from_rows(all).rank() == dim
    };
    if image_ok && kernel_ok && split_ok {
        CheckResult::pass(
            "invariant_splitting",
            theorem,
            format!(
                "averaging over {} linear parts splits the space into fixed part (dim {}) and \
                 annihilator (dim {})",
                linear.len(),
                fixed.len(),
                kernel.len()
            ),
        )
    } else {
        CheckResult::fail(
            "invariant_splitting",
            theorem,
            format!("image matches fixed space: {image_ok}; kernel matches annihilator: {kernel_ok}; direct sum: {split_ok}"),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verify_named(name: &str) -> ModelReport {
        let m = model(name).unwrap();
        verify(&m, &VerifyOptions::default()).unwrap()
    }

    #[test]
    fn registry_parses_all_names() {
        for name in registry_names() {
            let m = model(&name).unwrap();
            assert_eq!(m.name, name);
        }
        assert!(model("mystery").is_err());
        assert!(model("rank2_minus_origin(a3)").is_err());
    }

    #[test]
    fn su2_dual_all_pass() {
        let report = verify_named("su2_dual");
        assert!(report.pass, "{report:?}");
        assert!(report.complete_group);
    }

    #[test]
    fn gg_dual_models_pass() {
        for name in ["gg_dual(a1a1)", "gg_dual(a2)", "gg_dual(b2)"] {
            let report = verify_named(name);
            assert!(report.pass, "{name}: {report:?}");
        }
    }

    #[test]
    fn gg_dual_a2_has_three_hyperplanes_order_six() {
        let m = model("gg_dual(a2)").unwrap();
        assert_eq!(m.arrangement.template().len(), 3);
        assert_eq!(m.expected_order, ExpectedOrder::Finite(6));
    }

    #[test]
    fn gg_dual_g2_matches_dihedral_12() {
        let m = model("gg_dual(g2)").unwrap();
        assert_eq!(m.expected_order, ExpectedOrder::Finite(12));
        let report = verify(&m, &VerifyOptions::default()).unwrap();
        assert!(report.pass, "{report:?}");
        let cox = report
            .checks
            .iter()
            .find(|c| c.name == "coxeter_matrix")
            .unwrap();
        assert!(cox.detail.contains('6'), "{}", cox.detail);
    }

    #[test]
    fn su2_cartan_dirac_coxeter_infinity() {
        let report = verify_named("su2_cartan_dirac");
        assert!(report.pass, "{report:?}");
        assert!(!report.complete_group);
        let cox = report
            .checks
            .iter()
            .find(|c| c.name == "coxeter_matrix")
            .unwrap();
        assert_eq!(cox.status, CheckStatus::Pass);
    }

    #[test]
    fn su2_minus_minus_i_passes() {
        let report = verify_named("su2_minus_minusI");
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn strips_model_passes_with_kernel() {
        let report = verify_named("su2_plus_r_minus_origin");
        assert!(report.pass, "{report:?}");
        let kernel = report
            .checks
            .iter()
            .find(|c| c.name == "kernel_probe")
            .unwrap();
        assert_eq!(kernel.status, CheckStatus::Pass);
        assert!(kernel.detail.contains("length 2"), "{}", kernel.detail);
    }

    #[test]
    fn rank2_a2_kernel_probe_finds_translation_by_three() {
        let report = verify_named("rank2_minus_origin(a2)");
        assert!(report.pass, "{report:?}");
        let kernel = report
            .checks
            .iter()
            .find(|c| c.name == "kernel_probe")
            .unwrap();
        assert!(kernel.detail.contains("length 6"), "{}", kernel.detail);
        // the non-splitness note is recorded as information
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "note" && c.status == CheckStatus::Info));
    }

    #[test]
    fn cartan_dirac_a2_passes() {
        let report = verify_named("cartan_dirac(a2)");
        assert!(report.pass, "{report:?}");
    }

    #[test]
    fn registry_mismatch_is_reported() {
        // corrupt an expectation: the machinery must notice
        let mut m = model("gg_dual(a2)").unwrap();
        m.expected_order = ExpectedOrder::Finite(7);
        let report = verify(&m, &VerifyOptions::default()).unwrap();
        assert!(!report.pass);
        assert!(report
            .checks
            .iter()
            .any(|c| c.name == "group_order" && c.status == CheckStatus::Fail));
    }
}

#[cfg(test)]
mod adjoint_tests {
    use super::*;

    #[test]
    fn adjoint_cartan_dirac_models_pass_with_stabilizer() {
        for (name, z_order) in [("cartan_dirac(a1,adjoint)", 2), ("cartan_dirac(a2,adjoint)", 3)]
        {
            let m = model(name).unwrap();
            assert_eq!(m.extra_translations.len(), m.dim);
            let spec = m.stabilizer.as_ref().expect("stabilizer declared");
            assert_eq!(spec.expected_order, z_order);
            let report = verify(&m, &VerifyOptions::default()).unwrap();
            assert!(report.pass, "{name}: {report:?}");
            let stab = report
                .checks
                .iter()
                .find(|c| c.name == "split_stabilizer")
                .expect("stabilizer check ran");
            assert_eq!(stab.status, CheckStatus::Pass, "{}", stab.detail);
            assert!(report
                .checks
                .iter()
                .any(|c| c.name == "extended_translations" && c.status == CheckStatus::Pass));
        }
    }

    #[test]
    fn simply_connected_name_is_the_default() {
        let a: ModelName = "cartan_dirac(a1)".parse().unwrap();
        let b: ModelName = "cartan_dirac(a1,sc)".parse().unwrap();
        assert_eq!(a, b);
    }
}
