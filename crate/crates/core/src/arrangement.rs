//! Integral affine hyperplane arrangements with exact chamber enumeration.
//!
//! Feasibility of a sign vector is decided by recursive variable
//! elimination over the rationals, so there is no floating-point
//! tie-breaking near walls; every chamber carries an exact interior witness
//! point. Infinite periodic families (affine Weyl arrangements) are stored
//! as a finite template plus a periodicity lattice and are always queried
//! through a bounding box.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::affine::AffineMap;
use crate::error::{Error, Result};
use crate::exact::rat::sign;
use crate::exact::{parse_rat, rat, rat_int, rat_str, QMat, QVec, Rat};

/// An integral affine hyperplane `{x : a . x = c}` with primitive integer
/// normal `a` (gcd 1, first nonzero entry positive).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Hyperplane {
    normal: Vec<i64>,
    offset: Rat,
}

impl Hyperplane {
    pub fn new(normal: Vec<i64>, offset: Rat) -> Result<Self> {
        Hyperplane::from_rational(
            &normal.iter().map(|&a| rat_int(a)).collect::<Vec<_>>(),
            offset,
        )
    }

    /// Normalize an arbitrary rational functional `a . x = c` to the unique
    /// primitive representative.
    pub fn from_rational(normal: &[Rat], offset: Rat) -> Result<Self> {
        if normal.iter().all(Rat::is_zero) {
            return Err(Error::Usage("hyperplane normal must be nonzero".into()));
        }
        // clear denominators
        let mut lcm = num_bigint::BigInt::one();
        for a in normal {
            lcm = lcm.lcm(a.denom());
        }
        lcm = lcm.lcm(offset.denom());
        let scale = Rat::from_integer(lcm);
        let ints: Vec<num_bigint::BigInt> = normal
            .iter()
            .map(|a| (a * &scale).numer().clone())
            .collect();
        let mut g = num_bigint::BigInt::zero();
        for v in &ints {
            g = g.gcd(v);
        }
        let first = ints.iter().find(|v| !v.is_zero()).unwrap();
        if first.is_negative() {
            g = -g;
        }
        let normal: Vec<i64> = ints
            .iter()
            .map(|v| {
                (v / &g)
                    .to_i64()
                    .ok_or_else(|| Error::Usage("hyperplane coefficients overflow".into()))
            })
            .collect::<Result<_>>()?;
        let offset = offset * &scale / Rat::from_integer(g);
        Ok(Hyperplane { normal, offset })
    }

    pub fn normal(&self) -> &[i64] {
        &self.normal
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    /// Defining functional `l(x) = a . x - c`.
    pub fn eval(&self, x: &QVec) -> Rat {
        let dot: Rat = self
            .normal
            .iter()
            .zip(x.iter())
            .map(|(&a, xi)| xi * &rat_int(a))
            .sum();
        dot - &self.offset
    }

    /// Translate by `v`: the normal is unchanged, the offset moves by
    /// `a . v`.
    pub fn translate(&self, v: &QVec) -> Hyperplane {
        let shift: Rat = self
            .normal
            .iter()
            .zip(v.iter())
            .map(|(&a, vi)| vi * &rat_int(a))
            .sum();
        Hyperplane {
            normal: self.normal.clone(),
            offset: &self.offset + &shift,
        }
    }

    /// An exact rational point on the hyperplane plus a spanning set of
    /// direction vectors.
    pub fn parametrize(&self) -> (QVec, Vec<QVec>) {
        let n = self.dim();
        let j = self.normal.iter().position(|&a| a != 0).unwrap();
        let mut base = QVec::zero(n);
        base.set(j, &self.offset / &rat_int(self.normal[j]));
        let mut dirs = Vec::new();
        for k in 0..n {
            if k == j {
                continue;
            }
            let mut d = QVec::zero(n);
            d.set(k, Rat::one());
            d.set(j, rat(-self.normal[k], self.normal[j]));
            dirs.push(d);
        }
        (base, dirs)
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.normal.iter().map(|a| a.to_string()).collect();
        write!(f, "{} ; {}", terms.join(" "), rat_str(&self.offset))
    }
}

/// A rational box, as closed intervals per coordinate.
pub type BBox = Vec<(Rat, Rat)>;

pub fn box_from_i64(bounds: &[(i64, i64)]) -> BBox {
    bounds
        .iter()
        .map(|&(lo, hi)| (rat_int(lo), rat_int(hi)))
        .collect()
}

/// Hyperplane arrangement: a finite template, an optional periodicity
/// lattice under which the (infinite) family is invariant, and an optional
/// bounding box for enumeration.
#[derive(Clone, Debug)]
pub struct Arrangement {
    dim: usize,
    template: Vec<Hyperplane>,
    period: Vec<QVec>,
    bbox: Option<BBox>,
}

impl Arrangement {
    pub fn new(
        dim: usize,
        hyperplanes: Vec<Hyperplane>,
        period: Vec<QVec>,
        bbox: Option<BBox>,
    ) -> Result<Self> {
        if hyperplanes.is_empty() {
            return Err(Error::Usage(
                "arrangement needs at least one hyperplane".into(),
            ));
        }
        let mut seen = BTreeSet::new();
        for h in &hyperplanes {
            if h.dim() != dim {
                return Err(Error::Usage("hyperplane dimension mismatch".into()));
            }
            if !seen.insert((h.normal.clone(), h.offset.clone())) {
                return Err(Error::Usage(format!("duplicate hyperplane {h}")));
            }
        }
        for v in &period {
            if v.dim() != dim {
                return Err(Error::Usage("period vector dimension mismatch".into()));
            }
            if v.is_zero() {
                return Err(Error::Usage("zero period vector".into()));
            }
        }
        if let Some(b) = &bbox {
            check_box(b, dim)?;
        }
        Ok(Arrangement {
            dim,
            template: hyperplanes,
            period,
            bbox,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn template(&self) -> &[Hyperplane] {
        &self.template
    }

    pub fn period(&self) -> &[QVec] {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        !self.period.is_empty()
    }

    pub fn bbox(&self) -> Option<&BBox> {
        self.bbox.as_ref()
    }

    pub fn with_box(mut self, bbox: BBox) -> Result<Self> {
        check_box(&bbox, self.dim)?;
        self.bbox = Some(bbox);
        Ok(self)
    }

    /// Enumeration box: the declared one, or `[-2, 2]^dim` for finite
    /// arrangements. Periodic arrangements must declare a box.
    pub fn query_box(&self) -> Result<BBox> {
        if let Some(b) = &self.bbox {
            return Ok(b.clone());
        }
        if self.is_periodic() {
            return Err(Error::Usage(
                "periodic arrangement queried without a bounding box".into(),
            ));
        }
        Ok(vec![(rat_int(-2), rat_int(2)); self.dim])
    }

    /// All hyperplanes of the (possibly infinite) family meeting the box.
    pub fn materialize(&self, bbox: &BBox) -> Vec<Hyperplane> {
        self.materialize_with_bands(bbox).0
    }

    /// Materialized hyperplanes plus, per periodic direction, the band of
    /// offsets `[min, max]` that got materialized. A region staying inside
    /// every band cannot meet an unmaterialized member of the family.
    pub fn materialize_with_bands(&self, bbox: &BBox) -> (Vec<Hyperplane>, Vec<OffsetBand>) {
        if self.period.is_empty() {
            return (self.template.clone(), Vec::new());
        }
        let mut out: Vec<Hyperplane> = Vec::new();
        let mut bands: Vec<OffsetBand> = Vec::new();
        let mut seen = BTreeSet::new();
        for h in &self.template {
            // range of a . x over the box
            let (mut lo, mut hi) = (Rat::zero(), Rat::zero());
            for (j, &a) in h.normal.iter().enumerate() {
                let a = rat_int(a);
                let (bl, bh) = (&bbox[j].0 * &a, &bbox[j].1 * &a);
                if bl <= bh {
                    lo += bl;
                    hi += bh;
                } else {
                    lo += bh;
                    hi += bl;
                }
            }
            // offsets of translated copies: c + sum_i k_i (a . v_i)
            let shifts: Vec<Rat> = self
                .period
                .iter()
                .map(|v| {
                    h.normal
                        .iter()
                        .zip(v.iter())
                        .map(|(&a, vi)| vi * &rat_int(a))
                        .sum()
                })
                .collect();
            let ranges: Vec<std::ops::RangeInclusive<i64>> = shifts
                .iter()
                .map(|s| {
                    if s.is_zero() {
                        0..=0
                    } else {
                        let span = (&hi - &lo) / s.abs();
                        let k = span
                            .ceil()
                            .numer()
                            .to_i64()
                            .expect("box spans too many family translates")
                            .abs()
                            + 1;
                        -k..=k
                    }
                })
                .collect();
            let mut idx: Vec<i64> = ranges.iter().map(|r| *r.start()).collect();
            let mut offsets: Vec<Rat> = Vec::new();
            'combos: loop {
                let off: Rat = idx
                    .iter()
                    .zip(&shifts)
                    .map(|(&k, s)| s * &rat_int(k))
                    .fold(h.offset.clone(), |acc, t| acc + t);
                if off >= lo && off <= hi {
                    let cand = Hyperplane {
                        normal: h.normal.clone(),
                        offset: off.clone(),
                    };
                    if seen.insert((cand.normal.clone(), cand.offset.clone())) {
                        out.push(cand);
                        offsets.push(off);
                    }
                }
                let mut pos = 0;
                loop {
                    if pos == idx.len() {
                        break 'combos;
                    }
                    idx[pos] += 1;
                    if idx[pos] <= *ranges[pos].end() {
                        break;
                    }
                    idx[pos] = *ranges[pos].start();
                    pos += 1;
                }
            }
            if shifts.iter().any(|s| !s.is_zero()) && !offsets.is_empty() {
                bands.push(OffsetBand {
                    normal: h.normal.clone(),
                    min_offset: offsets.iter().min().unwrap().clone(),
                    max_offset: offsets.iter().max().unwrap().clone(),
                    step: rational_gcd(&shifts),
                });
            }
        }
        out.sort_by(|a, b| {
            (a.normal.clone(), a.offset.clone()).cmp(&(b.normal.clone(), b.offset.clone()))
        });
        (out, bands)
    }

    /// Parse the arrangement file format: header `dim n`, optional
    /// `period v1 ; v2 ; ...`, optional `box lo1 hi1 ... lon hin`, then one
    /// hyperplane per line `a1 a2 ... an ; c`.
    pub fn parse(text: &str) -> Result<Arrangement> {
        let mut dim: Option<usize> = None;
        let mut period = Vec::new();
        let mut bbox = None;
        let mut hyps = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Usage(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("dim ") {
                dim = Some(
                    rest.trim()
                        .parse()
                        .map_err(|_| err(format!("bad dimension `{rest}`")))?,
                );
                continue;
            }
            let n = dim.ok_or_else(|| err("`dim n` must come first".into()))?;
            if let Some(rest) = line.strip_prefix("period ") {
                for vec_str in rest.split(';') {
                    let coords: Vec<Rat> = vec_str
                        .split_whitespace()
                        .map(parse_rat)
                        .collect::<Result<_>>()?;
                    if coords.len() != n {
                        return Err(err("period vector has wrong dimension".into()));
                    }
                    period.push(QVec::new(coords));
                }
                continue;
            }
            if let Some(rest) = line.strip_prefix("box ") {
                let vals: Vec<Rat> = rest
                    .split_whitespace()
                    .map(parse_rat)
                    .collect::<Result<_>>()?;
                if vals.len() != 2 * n {
                    return Err(err("box needs 2n bounds".into()));
                }
                bbox = Some(
                    vals.chunks(2)
                        .map(|c| (c[0].clone(), c[1].clone()))
                        .collect(),
                );
                continue;
            }
            let (lhs, rhs) = line
                .split_once(';')
                .ok_or_else(|| err("hyperplane line needs `a1 ... an ; c`".into()))?;
            let normal: Vec<i64> = lhs
                .split_whitespace()
                .map(|f| {
                    f.parse()
                        .map_err(|_| err(format!("bad integer coefficient `{f}`")))
                })
                .collect::<Result<_>>()?;
            if normal.len() != n {
                return Err(err("hyperplane has wrong dimension".into()));
            }
            hyps.push(Hyperplane::new(normal, parse_rat(rhs)?)?);
        }
        let dim = dim.ok_or_else(|| Error::Usage("missing `dim n` header".into()))?;
        Arrangement::new(dim, hyps, period, bbox)
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        if !self.period.is_empty() {
            let vecs: Vec<String> = self
                .period
                .iter()
                .map(|v| v.iter().map(rat_str).collect::<Vec<_>>().join(" "))
                .collect();
            out.push_str(&format!("period {}\n", vecs.join(" ; ")));
        }
        if let Some(b) = &self.bbox {
            let bounds: Vec<String> = b
                .iter()
                .flat_map(|(lo, hi)| [rat_str(lo), rat_str(hi)])
                .collect();
            out.push_str(&format!("box {}\n", bounds.join(" ")));
        }
        for h in &self.template {
            out.push_str(&format!("{h}\n"));
        }
        out
    }
}

/// The range of offsets materialized for one periodic hyperplane family,
/// together with the offset step of the family. The nearest unmaterialized
/// members sit at `min_offset - step` and `max_offset + step`.
#[derive(Clone, Debug)]
pub struct OffsetBand {
    pub normal: Vec<i64>,
    pub min_offset: Rat,
    pub max_offset: Rat,
    pub step: Rat,
}

/// Smallest positive generator of the subgroup of (Q, +) generated by the
/// given rationals (zeros ignored).
fn rational_gcd(values: &[Rat]) -> Rat {
    use num_bigint::BigInt;
    let mut lcm_den = BigInt::one();
    for v in values {
        if !v.is_zero() {
            lcm_den = lcm_den.lcm(v.denom());
        }
    }
    let mut g = BigInt::zero();
    for v in values {
        if !v.is_zero() {
            let scaled = (v * &Rat::from_integer(lcm_den.clone())).numer().clone();
            g = g.gcd(&scaled);
        }
    }
    Rat::new(g, lcm_den)
}

fn check_box(b: &BBox, dim: usize) -> Result<()> {
    if b.len() != dim {
        return Err(Error::Usage("box dimension mismatch".into()));
    }
    if b.iter().any(|(lo, hi)| lo >= hi) {
        return Err(Error::Usage("empty box".into()));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exact feasibility by recursive variable elimination
// ---------------------------------------------------------------------------

/// `coeffs . x < rhs` (strict) or `<= rhs`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinCon {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

impl LinCon {
    fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    fn normalized(mut self) -> LinCon {
        if let Some(c) = self.coeffs.iter().find(|c| !c.is_zero()).cloned() {
            let s = c.abs();
            for v in &mut self.coeffs {
                *v = &*v / &s;
            }
            self.rhs = &self.rhs / &s;
        }
        self
    }
}

/// Exact witness of a system of strict/non-strict linear inequalities, or
/// `None` when infeasible. Eliminates the last variable, recurses, and
/// back-substitutes the midpoint of the residual interval.
pub fn feasible_witness(cons: &[LinCon], nvars: usize) -> Option<QVec> {
    debug_assert!(cons.iter().all(|c| c.nvars() == nvars));
    if nvars == 0 {
        for c in cons {
            let ok = if c.strict {
                Rat::zero() < c.rhs
            } else {
                Rat::zero() <= c.rhs
            };
            if !ok {
                return None;
            }
        }
        return Some(QVec::zero(0));
    }
    let v = nvars - 1;
    let mut lowers: Vec<(Vec<Rat>, Rat, bool)> = Vec::new(); // x_v >(=) beta + gamma . x'
    let mut uppers: Vec<(Vec<Rat>, Rat, bool)> = Vec::new();
    let mut reduced: BTreeSet<(Vec<Rat>, Rat, bool)> = BTreeSet::new();
    for c in cons {
        let a = &c.coeffs[v];
        if a.is_zero() {
            let r = LinCon {
                coeffs: c.coeffs[..v].to_vec(),
                rhs: c.rhs.clone(),
                strict: c.strict,
            }
            .normalized();
            reduced.insert((r.coeffs, r.rhs, r.strict));
        } else {
            // a x_v + a'.x' {<,<=} rhs  =>  x_v bounded by (rhs - a'.x')/a
            let gamma: Vec<Rat> = c.coeffs[..v].iter().map(|ai| -(ai / a)).collect();
            let beta = &c.rhs / a;
            if a.is_positive() {
                uppers.push((gamma, beta, c.strict));
            } else {
                lowers.push((gamma, beta, c.strict));
            }
        }
    }
    // lower (beta_l + gamma_l . x') vs upper (beta_u + gamma_u . x')
    for (gl, bl, sl) in &lowers {
        for (gu, bu, su) in &uppers {
            let coeffs: Vec<Rat> = gl.iter().zip(gu).map(|(l, u)| l - u).collect();
            let c = LinCon {
                coeffs,
                rhs: bu - bl,
                strict: *sl || *su,
            }
            .normalized();
            reduced.insert((c.coeffs, c.rhs, c.strict));
        }
    }
    let reduced: Vec<LinCon> = reduced
        .into_iter()
        .map(|(coeffs, rhs, strict)| LinCon {
            coeffs,
            rhs,
            strict,
        })
        .collect();
    let prefix = feasible_witness(&reduced, v)?;
    // residual interval for x_v
    let eval = |g: &[Rat], b: &Rat| -> Rat {
        g.iter()
            .zip(prefix.iter())
            .map(|(gi, xi)| gi * xi)
            .fold(b.clone(), |acc, t| acc + t)
    };
    let lo = lowers
        .iter()
        .map(|(g, b, s)| (eval(g, b), *s))
        .max_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));
    let hi = uppers
        .iter()
        .map(|(g, b, s)| (eval(g, b), *s))
        .min_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let x_v = match (&lo, &hi) {
        (None, None) => Rat::zero(),
        (Some((l, _)), None) => l + Rat::one(),
        (None, Some((h, _))) => h - Rat::one(),
        (Some((l, ls)), Some((h, hs))) => {
            if l == h {
                debug_assert!(!ls && !hs, "strict bounds collapsed; elimination bug");
                l.clone()
            } else {
                (l + h) / rat_int(2)
            }
        }
    };
    let mut coords: Vec<Rat> = prefix.iter().cloned().collect();
    coords.push(x_v);
    Some(QVec::new(coords))
}

fn open_box_constraints(bbox: &BBox) -> Vec<LinCon> {
    let n = bbox.len();
    let mut cons = Vec::new();
    for (j, (lo, hi)) in bbox.iter().enumerate() {
        let mut up = vec![Rat::zero(); n];
        up[j] = Rat::one();
        cons.push(LinCon {
            coeffs: up,
            rhs: hi.clone(),
            strict: true,
        });
        let mut down = vec![Rat::zero(); n];
        down[j] = -Rat::one();
        cons.push(LinCon {
            coeffs: down,
            rhs: -lo.clone(),
            strict: true,
        });
    }
    cons
}

fn sign_constraint(h: &Hyperplane, s: i8, strict: bool) -> LinCon {
    // s = +1: a.x - c > 0  <=>  -a.x < -c
    let coeffs: Vec<Rat> = h
        .normal
        .iter()
        .map(|&a| {
            let a = rat_int(a);
            if s > 0 {
                -a
            } else {
                a
            }
        })
        .collect();
    let rhs = if s > 0 {
        -h.offset.clone()
    } else {
        h.offset.clone()
    };
    LinCon {
        coeffs,
        rhs,
        strict,
    }
}

fn equality_constraints(h: &Hyperplane) -> [LinCon; 2] {
    [sign_constraint(h, 1, false), sign_constraint(h, -1, false)]
}

// ---------------------------------------------------------------------------
// Chambers
// ---------------------------------------------------------------------------

/// A full-dimensional sign region of the arrangement inside the query box.
#[derive(Clone, Debug)]
pub struct Chamber {
    /// Sign (+1/-1) per materialized hyperplane.
    pub signs: Vec<i8>,
    /// Exact rational interior point.
    pub witness: QVec,
    /// Indices of hyperplanes supporting codimension-one faces, with a
    /// certifying point per wall: on the wall, strictly off every other
    /// hyperplane, inside the box.
    pub walls: Vec<(usize, QVec)>,
}

impl Chamber {
    pub fn wall_indices(&self) -> Vec<usize> {
        self.walls.iter().map(|(i, _)| *i).collect()
    }
}

/// Chambers of the arrangement within its query box, together with the
/// materialized hyperplane list the sign vectors refer to.
#[derive(Clone, Debug)]
pub struct ChamberDecomposition {
    pub hyperplanes: Vec<Hyperplane>,
    pub chambers: Vec<Chamber>,
    pub bbox: BBox,
    /// Materialized offset bands of the periodic directions; empty for
    /// finite arrangements.
    pub bands: Vec<OffsetBand>,
}

pub fn enumerate_chambers(arr: &Arrangement) -> Result<ChamberDecomposition> {
    let bbox = arr.query_box()?;
    check_box(&bbox, arr.dim())?;
    let (hyperplanes, bands) = arr.materialize_with_bands(&bbox);
    let n = arr.dim();
    let base = open_box_constraints(&bbox);
    let mut chambers = Vec::new();
    // depth-first over sign prefixes with exact feasibility pruning
    let mut stack: Vec<(Vec<i8>, Vec<LinCon>)> = vec![(Vec::new(), base)];
    while let Some((signs, cons)) = stack.pop() {
        if signs.len() == hyperplanes.len() {
            let witness = feasible_witness(&cons, n).expect("pruned infeasible prefix");
            chambers.push(Chamber {
                signs,
                witness,
                walls: Vec::new(),
            });
            continue;
        }
        let h = &hyperplanes[signs.len()];
        for s in [-1i8, 1] {
            let mut cons2 = cons.clone();
            cons2.push(sign_constraint(h, s, true));
            if feasible_witness(&cons2, n).is_some() {
                let mut signs2 = signs.clone();
                signs2.push(s);
                stack.push((signs2, cons2));
            }
        }
    }
    // deterministic order: by sign vector
    chambers.sort_by(|a, b| a.signs.cmp(&b.signs));
    // walls
    for ch in &mut chambers {
        let mut walls = Vec::new();
        for (i, h) in hyperplanes.iter().enumerate() {
            let mut cons = open_box_constraints(&bbox);
            cons.extend(equality_constraints(h));
            for (j, (hj, &s)) in hyperplanes.iter().zip(&ch.signs).enumerate() {
                if j != i {
                    cons.push(sign_constraint(hj, s, true));
                }
            }
            if let Some(p) = feasible_witness(&cons, n) {
                walls.push((i, p));
            }
        }
        ch.walls = walls;
    }
    Ok(ChamberDecomposition {
        hyperplanes,
        chambers,
        bbox,
        bands,
    })
}

/// Where a point sits relative to a chamber decomposition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Location {
    Chamber(usize),
    /// On the hyperplanes with these indices.
    Singular(Vec<usize>),
    OutsideBox,
}

impl ChamberDecomposition {
    pub fn locate(&self, x: &QVec) -> Location {
        for (j, (lo, hi)) in self.bbox.iter().enumerate() {
            if x.get(j) <= lo || x.get(j) >= hi {
                return Location::OutsideBox;
            }
        }
        let mut signs = Vec::with_capacity(self.hyperplanes.len());
        let mut on = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            let s = sign(&h.eval(x));
            if s == 0 {
                on.push(i);
            }
            signs.push(s);
        }
        if !on.is_empty() {
            return Location::Singular(on);
        }
        match self.chambers.iter().position(|c| c.signs == signs) {
            Some(i) => Location::Chamber(i),
            None => Location::OutsideBox,
        }
    }

    /// Chamber whose sign vector the point realizes, ignoring the box.
    /// For certified chambers the sign region is the true chamber of the
    /// full arrangement, so this is sound even for points outside the box.
    pub fn chamber_of_signs(&self, x: &QVec) -> Option<usize> {
        let mut signs = Vec::with_capacity(self.hyperplanes.len());
        for h in &self.hyperplanes {
            let s = sign(&h.eval(x));
            if s == 0 {
                return None;
            }
            signs.push(s);
        }
        self.chambers.iter().position(|c| c.signs == signs)
    }

    /// Weak membership in the closed chamber: every hyperplane sign is the
    /// chamber's or zero. This is box-independent.
    pub fn in_closed_chamber(&self, chamber: &Chamber, x: &QVec) -> bool {
        self.hyperplanes.iter().zip(&chamber.signs).all(|(h, &s)| {
            let v = sign(&h.eval(x));
            v == 0 || v == s
        })
    }

    /// Strict membership in the open chamber.
    pub fn in_open_chamber(&self, chamber: &Chamber, x: &QVec) -> bool {
        self.hyperplanes
            .iter()
            .zip(&chamber.signs)
            .all(|(h, &s)| sign(&h.eval(x)) == s)
    }

    /// Is this box-restricted chamber certified to be a genuine chamber of
    /// the full (possibly infinite) arrangement?
    ///
    /// True when, for every periodic hyperplane direction, the unclipped
    /// sign region stays inside the band of materialized offsets, so no
    /// unmaterialized member of the family can cut it. Always true for
    /// finite arrangements.
    pub fn chamber_certified(&self, chamber: &Chamber) -> bool {
        let n = self.bbox.len();
        for band in &self.bands {
            // open sign region, without the box
            let open_signs = || -> Vec<LinCon> {
                self.hyperplanes
                    .iter()
                    .zip(&chamber.signs)
                    .map(|(h, &s)| sign_constraint(h, s, true))
                    .collect()
            };
            // crossing the next family member above: a . x >= max + step
            let mut cons = open_signs();
            let coeffs: Vec<Rat> = band.normal.iter().map(|&a| rat_int(-a)).collect();
            cons.push(LinCon {
                coeffs,
                rhs: -(&band.max_offset + &band.step),
                strict: false,
            });
            if feasible_witness(&cons, n).is_some() {
                return false;
            }
            // crossing the next family member below: a . x <= min - step
            let mut cons = open_signs();
            let coeffs: Vec<Rat> = band.normal.iter().map(|&a| rat_int(a)).collect();
            cons.push(LinCon {
                coeffs,
                rhs: &band.min_offset - &band.step,
                strict: false,
            });
            if feasible_witness(&cons, n).is_some() {
                return false;
            }
        }
        true
    }

    /// Walls of a chamber as hyperplanes.
    pub fn walls_of(&self, chamber: &Chamber) -> Vec<&Hyperplane> {
        chamber
            .walls
            .iter()
            .map(|(i, _)| &self.hyperplanes[*i])
            .collect()
    }
}

/// Fixed hyperplane of a reflection, in primitive form.
pub fn fixed_hyperplane(g: &AffineMap) -> Option<Hyperplane> {
    let (normal, offset) = g.fixed_hyperplane_raw()?;
    Hyperplane::from_rational(&normal, offset).ok()
}

/// Match each wall of the chamber with the unique reflection fixing it.
///
/// An `Integrity` error is raised when a wall has no matching reflection or
/// two distinct reflections fix it.
pub fn simple_reflections(
    decomp: &ChamberDecomposition,
    chamber: &Chamber,
    reflections: &[AffineMap],
) -> Result<Vec<AffineMap>> {
    let mut out = Vec::new();
    for (i, _) in &chamber.walls {
        let wall = &decomp.hyperplanes[*i];
        let mut found: Option<&AffineMap> = None;
        for r in reflections {
            let Some(as_hyp) = fixed_hyperplane(r) else {
                continue;
            };
            if &as_hyp == wall {
                if let Some(prev) = found {
                    if prev != r {
                        return Err(Error::Integrity(format!(
                            "two distinct reflections fix the wall {wall}"
                        )));
                    }
                } else {
                    found = Some(r);
                }
            }
        }
        match found {
            Some(r) => out.push(r.clone()),
            None => {
                return Err(Error::Integrity(format!(
                    "no reflection in the supplied set fixes the wall {wall}"
                )))
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Deterministic rational sampling
// ---------------------------------------------------------------------------

const HALTON_BASES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Radical-inverse of `k` in the given base, as an exact rational in [0,1).
fn radical_inverse(mut k: u64, base: u64) -> Rat {
    let mut num = Rat::zero();
    let mut f = rat(1, base as i64);
    while k > 0 {
        num += &f * &rat_int((k % base) as i64);
        f = &f / &rat_int(base as i64);
        k /= base;
    }
    num
}

/// Deterministic low-discrepancy rational points in the box, derived from
/// the seed.
pub fn sample_points(bbox: &BBox, n_samples: usize, seed: u64) -> Vec<QVec> {
    let start = 1 + seed.wrapping_mul(0x9E3779B9) % 8192;
    (0..n_samples as u64)
        .map(|k| {
            QVec::new(
                bbox.iter()
                    .enumerate()
                    .map(|(j, (lo, hi))| {
                        let u = radical_inverse(start + k, HALTON_BASES[j % HALTON_BASES.len()]);
                        lo + &(&(hi - lo) * &u)
                    })
                    .collect(),
            )
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Reflection-group verification reports
// ---------------------------------------------------------------------------

/// Report of the free-and-transitive chamber action check.
#[derive(Clone, Debug, Serialize)]
pub struct TransitivityReport {
    /// True when the supplied elements are a whole finite group rather than
    /// a word-bounded sample.
    pub complete_group: bool,
    pub n_elements: usize,
    pub n_chambers: usize,
    /// Chambers required to be reached: all of them for a complete group,
    /// the certified ones otherwise.
    pub required_chambers: usize,
    pub reached_chambers: usize,
    pub free: bool,
    pub transitive: bool,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Transitivity: the orbit of the base chamber under the supplied elements
/// must cover every certified chamber (all chambers, for a complete finite
/// group). Freeness: no non-identity element maps the base chamber to
/// itself.
pub fn check_free_transitive(
    elements: &[AffineMap],
    decomp: &ChamberDecomposition,
    base_index: usize,
    complete_group: bool,
) -> TransitivityReport {
    let mut violations = Vec::new();
    let base = &decomp.chambers[base_index];
    let mut reached = vec![false; decomp.chambers.len()];
    let mut free = true;
    let mut images_seen: BTreeSet<usize> = BTreeSet::new();
    for (gi, g) in elements.iter().enumerate() {
        let img = g.apply(&base.witness);
        match decomp.chamber_of_signs(&img) {
            Some(ci) => {
                reached[ci] = true;
                if !images_seen.insert(ci) && complete_group {
                    violations.push(format!(
                        "two elements map the base chamber to chamber {ci}"
                    ));
                }
                if ci == base_index && !g.is_identity() {
                    free = false;
                    violations.push(format!(
                        "non-identity element {gi} maps the base chamber to itself"
                    ));
                }
            }
            None => {
                // either on a hyperplane (a violation: interior points map
                // to interior points) or in a region beyond the box with
                // no materialized sign pattern
                if matches!(decomp.locate(&img), Location::Singular(_)) {
                    violations.push(format!(
                        "element {gi} maps the base witness onto a hyperplane"
                    ));
                } else if complete_group {
                    violations.push(format!(
                        "element {gi} maps the base chamber outside the arrangement box"
                    ));
                }
            }
        }
    }
    let required: Vec<usize> = (0..decomp.chambers.len())
        .filter(|&i| complete_group || decomp.chamber_certified(&decomp.chambers[i]))
        .collect();
    let mut transitive = true;
    for &ci in &required {
        if !reached[ci] {
            transitive = false;
            violations.push(format!("chamber {ci} not reached from the base chamber"));
        }
    }
    let pass = violations.is_empty() && free && transitive;
    TransitivityReport {
        complete_group,
        n_elements: elements.len(),
        n_chambers: decomp.chambers.len(),
        required_chambers: required.len(),
        reached_chambers: reached.iter().filter(|&&r| r).count(),
        free,
        transitive,
        violations,
        pass,
    }
}

/// Report of the fundamental-domain probe.
#[derive(Clone, Debug, Serialize)]
pub struct DomainReport {
    pub complete_group: bool,
    pub n_samples: usize,
    /// Samples some element maps into the closed base chamber.
    pub covered: usize,
    /// Samples no supplied element could move into the base chamber; a
    /// violation for complete groups, an uncertified remainder otherwise.
    pub uncovered: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Every sampled point must be mapped into the closed base chamber by some
/// element; regular samples must land in exactly one chamber-image
/// interior.
pub fn fundamental_domain_probe(
    elements: &[AffineMap],
    decomp: &ChamberDecomposition,
    base_index: usize,
    n_samples: usize,
    seed: u64,
    complete_group: bool,
) -> DomainReport {
    let base = &decomp.chambers[base_index];
    let samples = sample_points(&decomp.bbox, n_samples, seed);
    let mut covered = 0;
    let mut uncovered = 0;
    let mut violations = Vec::new();
    for (si, x) in samples.iter().enumerate() {
        let mut closed_hits = 0usize;
        let mut interior_hits = 0usize;
        for g in elements {
            let img = g.apply(x);
            if decomp.in_closed_chamber(base, &img) {
                closed_hits += 1;
                if decomp.in_open_chamber(base, &img) {
                    interior_hits += 1;
                }
            }
        }
        let regular = !matches!(decomp.locate(x), Location::Singular(_));
        if closed_hits > 0 {
            covered += 1;
        } else {
            uncovered += 1;
            if complete_group {
                violations.push(format!(
                    "sample {si} cannot be moved into the base chamber"
                ));
            }
        }
        if regular && interior_hits > 1 {
            violations.push(format!(
                "regular sample {si} lands in the open base chamber under {interior_hits} elements"
            ));
        }
        if regular && complete_group && interior_hits != 1 {
            violations.push(format!(
                "regular sample {si} has {interior_hits} interior images, expected exactly 1"
            ));
        }
    }
    let pass = violations.is_empty() && (!complete_group || uncovered == 0);
    DomainReport {
        complete_group,
        n_samples,
        covered,
        uncovered,
        violations,
        pass,
    }
}

/// Report of the fixed-point regularity check.
#[derive(Clone, Debug, Serialize)]
pub struct RegularityReport {
    pub n_samples: usize,
    pub regular_samples: usize,
    pub singular_samples: usize,
    /// Singular samples on a hyperplane with no matching reflection among
    /// the supplied elements (possible under word bounds, never for
    /// complete groups).
    pub unmatched_singular: usize,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Points off every hyperplane must be fixed by no non-identity element;
/// points on a hyperplane must be fixed by the corresponding reflection.
pub fn fixed_point_regularity_check(
    elements: &[AffineMap],
    decomp: &ChamberDecomposition,
    n_samples: usize,
    seed: u64,
) -> RegularityReport {
    let mut reflections: Vec<(usize, Hyperplane)> = Vec::new();
    for (gi, g) in elements.iter().enumerate() {
        if g.is_involution() {
            if let Some(h) = fixed_hyperplane(g) {
                reflections.push((gi, h));
            }
        }
    }
    let samples = sample_points(&decomp.bbox, n_samples, seed);
    let mut violations = Vec::new();
    let mut regular_samples = 0;
    let mut singular_samples = 0;
    let mut unmatched = 0;
    for (si, x) in samples.iter().enumerate() {
        match decomp.locate(x) {
            Location::Singular(on) => {
                singular_samples += 1;
                for i in on {
                    let hyp = &decomp.hyperplanes[i];
                    match reflections.iter().find(|(_, h)| h == hyp) {
                        Some((gi, _)) => {
                            if elements[*gi].apply(x) != *x {
                                violations.push(format!(
                                    "reflection {gi} does not fix sample {si} on its hyperplane"
                                ));
                            }
                        }
                        None => unmatched += 1,
                    }
                }
            }
            _ => {
                regular_samples += 1;
                for (gi, g) in elements.iter().enumerate() {
                    if !g.is_identity() && g.apply(x) == *x {
                        violations.push(format!(
                            "non-identity element {gi} fixes the regular sample {si}"
                        ));
                    }
                }
            }
        }
    }
    let pass = violations.is_empty();
    RegularityReport {
        n_samples,
        regular_samples,
        singular_samples,
        unmatched_singular: unmatched,
        violations,
        pass,
    }
}

/// Root hyperplane arrangement of a root system in t* coordinates.
pub fn root_arrangement(
    rs: &crate::roots::RootSystem,
    bbox: Option<BBox>,
) -> Result<Arrangement> {
    let hyps: Vec<Hyperplane> = rs
        .positive_roots()
        .iter()
        .map(|alpha| Hyperplane::new(rs.root_functional(alpha), Rat::zero()))
        .collect::<Result<_>>()?;
    Arrangement::new(rs.rank(), hyps, Vec::new(), bbox)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reflection::{coxeter_matrix, generate_closure, parity};
    use crate::roots::{Label, RootSystem};

    fn root_decomp(label: Label) -> (RootSystem, ChamberDecomposition) {
        let rs = RootSystem::build(label);
        let arr = root_arrangement(&rs, None).unwrap();
        let d = enumerate_chambers(&arr).unwrap();
        (rs, d)
    }

    #[test]
    fn single_hyperplane_two_chambers() {
        let arr = Arrangement::new(
            1,
            vec![Hyperplane::new(vec![1], Rat::zero()).unwrap()],
            Vec::new(),
            None,
        )
        .unwrap();
        let d = enumerate_chambers(&arr).unwrap();
        assert_eq!(d.chambers.len(), 2);
        for ch in &d.chambers {
            assert!(d.in_open_chamber(ch, &ch.witness));
        }
    }

    #[test]
    fn a2_chamber_count_and_walls() {
        let (_, d) = root_decomp(Label::A2);
        assert_eq!(d.chambers.len(), 6);
        for ch in &d.chambers {
            assert_eq!(ch.walls.len(), 2);
            for (i, p) in &ch.walls {
                assert!(d.hyperplanes[*i].eval(p).is_zero());
                for (j, h) in d.hyperplanes.iter().enumerate() {
                    if j != *i {
                        assert!(!h.eval(p).is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn chamber_counts_match_weyl_orders() {
        for (label, order) in [
            (Label::A1, 2),
            (Label::A1xA1, 4),
            (Label::A2, 6),
            (Label::B2, 8),
            (Label::G2, 12),
        ] {
            let (rs, d) = root_decomp(label);
            assert_eq!(d.chambers.len(), order, "{label}");
            let closure = generate_closure(&rs.weyl_generators(), 10_000).unwrap();
            assert_eq!(closure.order(), Some(order), "{label}");
        }
    }

    #[test]
    fn affine_strips_in_box() {
        // y = n/2 family, box [0,1] x [-5/4, 5/4] -> strips
        let arr = Arrangement::new(
            2,
            vec![Hyperplane::new(vec![0, 1], Rat::zero()).unwrap()],
            vec![QVec::new(vec![rat_int(0), rat(1, 2)])],
            Some(vec![(rat_int(0), rat_int(1)), (rat(-5, 4), rat(5, 4))]),
        )
        .unwrap();
        let d = enumerate_chambers(&arr).unwrap();
        assert_eq!(d.hyperplanes.len(), 5); // y = -1, -1/2, 0, 1/2, 1
        assert_eq!(d.chambers.len(), 6);
        let inside = d
            .chambers
            .iter()
            .filter(|c| d.chamber_certified(c))
            .count();
        assert_eq!(inside, 4);
    }

    #[test]
    fn rejects_duplicates_and_empty_box() {
        let h = Hyperplane::new(vec![2, 0], rat_int(2)).unwrap();
        // normalization makes 2x = 2 the same as x = 1
        let h2 = Hyperplane::new(vec![1, 0], rat_int(1)).unwrap();
        assert_eq!(h, h2);
        assert!(Arrangement::new(2, vec![h.clone(), h2], Vec::new(), None).is_err());
        assert!(Arrangement::new(
            2,
            vec![h],
            Vec::new(),
            Some(vec![(rat_int(1), rat_int(1)), (rat_int(0), rat_int(1))]),
        )
        .is_err());
    }

    #[test]
    fn chamber_from_wall_halfspaces() {
        // every chamber is the intersection of the half-spaces of its walls
        let (_, d) = root_decomp(Label::B2);
        for ch in &d.chambers {
            let mut cons = open_box_constraints(&d.bbox);
            for (i, _) in &ch.walls {
                cons.push(sign_constraint(&d.hyperplanes[*i], ch.signs[*i], true));
            }
            let w = feasible_witness(&cons, 2).unwrap();
            let signs: Vec<i8> = d.hyperplanes.iter().map(|h| sign(&h.eval(&w))).collect();
            assert_eq!(signs, ch.signs);
        }
    }

    #[test]
    fn reflecting_through_wall_gives_adjacent_chamber() {
        let (rs, d) = root_decomp(Label::A2);
        let closure = generate_closure(&rs.weyl_generators(), 100).unwrap();
        let elements = closure.elements().unwrap();
        for ch in &d.chambers {
            for (i, _) in &ch.walls {
                let wall = &d.hyperplanes[*i];
                let refl = elements
                    .iter()
                    .find(|g| fixed_hyperplane(g).as_ref() == Some(wall))
                    .expect("wall reflection exists");
                let img = refl.apply(&ch.witness);
                match d.locate(&img) {
                    Location::Chamber(ci) => {
                        let other = &d.chambers[ci];
                        let diff: Vec<usize> = (0..d.hyperplanes.len())
                            .filter(|&k| ch.signs[k] != other.signs[k])
                            .collect();
                        assert_eq!(diff, vec![*i]);
                    }
                    other => panic!("reflected witness not in a chamber: {other:?}"),
                }
            }
        }
    }

    #[test]
    fn coxeter_matrix_same_from_every_chamber() {
        let (rs, d) = root_decomp(Label::G2);
        let closure = generate_closure(&rs.weyl_generators(), 100).unwrap();
        let reflections: Vec<AffineMap> = closure
            .elements()
            .unwrap()
            .iter()
            .filter(|g| g.is_involution() && parity(g) == -1)
            .cloned()
            .collect();
        let reference = {
            let simple = simple_reflections(&d, &d.chambers[0], &reflections).unwrap();
            coxeter_matrix(&simple, 100).unwrap()
        };
        for ch in &d.chambers[1..] {
            let simple = simple_reflections(&d, ch, &reflections).unwrap();
            let m = coxeter_matrix(&simple, 100).unwrap();
            assert!(m.equivalent_to(&reference));
        }
    }

    #[test]
    fn davis_checks_a2() {
        let (rs, d) = root_decomp(Label::A2);
        let closure = generate_closure(&rs.weyl_generators(), 100).unwrap();
        let els = closure.elements().unwrap();
        let t = check_free_transitive(els, &d, 0, true);
        assert!(t.pass, "{:?}", t.violations);
        assert_eq!(t.reached_chambers, 6);
        let f = fundamental_domain_probe(els, &d, 0, 200, 0, true);
        assert!(f.pass, "{:?}", f.violations);
        assert_eq!(f.covered, 200);
        let r = fixed_point_regularity_check(els, &d, 200, 0);
        assert!(r.pass, "{:?}", r.violations);
    }

    #[test]
    fn file_format_roundtrip() {
        let text = "# strips\ndim 2\nperiod 0 1/2\nbox 0 1 -5/4 5/4\n0 1 ; 0\n";
        let arr = Arrangement::parse(text).unwrap();
        assert_eq!(arr.dim(), 2);
        assert!(arr.is_periodic());
        let text2 = arr.serialize();
        let arr2 = Arrangement::parse(&text2).unwrap();
        assert_eq!(arr.template(), arr2.template());
        assert_eq!(arr.period(), arr2.period());
        assert_eq!(arr.bbox(), arr2.bbox());
    }

    #[test]
    fn sample_points_are_deterministic_and_inside() {
        let b: BBox = vec![(rat_int(-2), rat_int(2)), (rat_int(0), rat_int(1))];
        let s1 = sample_points(&b, 50, 7);
        let s2 = sample_points(&b, 50, 7);
        assert_eq!(s1, s2);
        let s3 = sample_points(&b, 50, 8);
        assert_ne!(s1, s3);
        for p in &s1 {
            assert!(p.get(0) > &rat_int(-2) && p.get(0) < &rat_int(2));
            assert!(p.get(1) >= &rat_int(0) && p.get(1) < &rat_int(1));
        }
    }
}

/// Coxeter matrix of a chamber read off from the arrangement geometry
/// alone: `m_ij` is the number of hyperplanes through the codimension-two
/// intersection of walls i and j, and infinity when the walls do not meet.
/// For a reflection arrangement this equals the order of the product of
/// the two wall reflections.
pub fn coxeter_from_walls(
    decomp: &ChamberDecomposition,
    chamber: &Chamber,
) -> Result<crate::reflection::CoxeterMatrix> {
    use crate::reflection::{CoxeterEntry, CoxeterMatrix};
    let walls = chamber.wall_indices();
    let n = walls.len();
    let dim = decomp.bbox.len();
    let mut entries = vec![vec![CoxeterEntry::M(1); n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let hi = &decomp.hyperplanes[walls[a]];
            let hj = &decomp.hyperplanes[walls[b]];
            // solve the two wall equations exactly
            let mat = QMat::from_rows(vec![
                hi.normal().iter().map(|&v| rat_int(v)).collect(),
                hj.normal().iter().map(|&v| rat_int(v)).collect(),
            ]);
            let rhs_rows = [hi.offset().clone(), hj.offset().clone()];
            // consistency: rref of the augmented system
            let mut aug = QMat::zero(2, dim + 1);
            for (r, row) in [hi, hj].iter().enumerate() {
                for (c, &v) in row.normal().iter().enumerate() {
                    aug.set(r, c, rat_int(v));
                }
                aug.set(r, dim, rhs_rows[r].clone());
            }
            let pivots = aug.rref();
            let entry = if pivots.contains(&dim) {
                // inconsistent: parallel distinct walls
                CoxeterEntry::Infinity
            } else {
                // particular point and direction space of the intersection
                let mut point = QVec::zero(dim);
                for (r, &p) in pivots.iter().enumerate() {
                    point.set(p, aug.get(r, dim).clone());
                }
                let dirs = mat.null_space();
                let count = decomp
                    .hyperplanes
                    .iter()
                    .filter(|h| {
                        h.eval(&point).is_zero()
                            && dirs.iter().all(|d| {
                                h.normal()
                                    .iter()
                                    .zip(d.iter())
                                    .map(|(&a, x)| x * &rat_int(a))
                                    .sum::<Rat>()
                                    .is_zero()
                            })
                    })
                    .count();
                CoxeterEntry::M(count as u64)
            };
            entries[a][b] = entry;
            entries[b][a] = entry;
        }
    }
    Ok(CoxeterMatrix { entries })
}

#[cfg(test)]
mod wall_coxeter_tests {
    use super::*;
    use crate::reflection::{coxeter_matrix, generate_closure, parity, CoxeterEntry};
    use crate::roots::{Label, RootSystem};

    #[test]
    fn geometric_coxeter_matches_reflection_orders() {
        for label in [Label::A1xA1, Label::A2, Label::B2, Label::G2, Label::A3] {
            let rs = RootSystem::build(label);
            let arr = root_arrangement(&rs, None).unwrap();
            let d = enumerate_chambers(&arr).unwrap();
            let closure = generate_closure(&rs.weyl_generators(), 10_000).unwrap();
            let reflections: Vec<AffineMap> = closure
                .elements()
                .unwrap()
                .iter()
                .filter(|g| g.is_involution() && parity(g) == -1)
                .cloned()
                .collect();
            for ch in &d.chambers {
                let simple = simple_reflections(&d, ch, &reflections).unwrap();
                let algebraic = coxeter_matrix(&simple, 100).unwrap();
                let geometric = coxeter_from_walls(&d, ch).unwrap();
                assert_eq!(algebraic, geometric, "{label}");
            }
        }
    }

    #[test]
    fn parallel_walls_give_infinity() {
        let arr = Arrangement::new(
            1,
            vec![Hyperplane::new(vec![1], Rat::zero()).unwrap()],
            vec![QVec::new(vec![rat(1, 2)])],
            Some(vec![(rat(-5, 4), rat(5, 4))]),
        )
        .unwrap();
        let d = enumerate_chambers(&arr).unwrap();
        let base = d
            .chambers
            .iter()
            .find(|c| d.chamber_certified(c))
            .unwrap();
        let m = coxeter_from_walls(&d, base).unwrap();
        assert_eq!(m.entries[0][1], CoxeterEntry::Infinity);
    }
}
