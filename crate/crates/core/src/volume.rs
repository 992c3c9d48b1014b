//! Symplectic volume polynomials and primitive linear factorization.
//!
//! The volume polynomial of a root system is the product of the
//! positive-root linear forms on t*; its square descends to the chamber
//! quotient. Factor discovery enumerates primitive integer normals up to a
//! height bound and extracts rational offsets by root extraction along a
//! transversal line, so it is complete for the reported height.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::affine::AffineMap;
use crate::arrangement::Hyperplane;
use crate::error::{Error, Result};
use crate::exact::{rat_int, rat_str, MultiPoly, QVec, Rat};
use crate::reflection::parity;
use crate::roots::RootSystem;

/// `P = scale * prod_{alpha > 0} (alpha, .)` on t* in simple-root
/// coordinates. The sign convention makes P positive on the fundamental
/// chamber; the normalization scale is exposed and defaults to 1.
#[derive(Clone, Debug)]
pub struct VolumePolynomial {
    label: crate::roots::Label,
    poly: MultiPoly,
    scale: Rat,
}

impl VolumePolynomial {
    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn scale(&self) -> &Rat {
        &self.scale
    }

    pub fn label(&self) -> crate::roots::Label {
        self.label
    }

    pub fn eval(&self, xi: &QVec) -> Result<Rat> {
        self.poly.eval(xi.as_slice())
    }

    pub fn with_scale(mut self, scale: Rat) -> Self {
        let factor = &scale / &self.scale;
        self.poly = self.poly.scale(&factor);
        self.scale = scale;
        self
    }
}

/// Product of the positive-root linear forms.
pub fn volume_polynomial(rs: &RootSystem) -> VolumePolynomial {
    let n = rs.rank();
    let mut poly = MultiPoly::constant(n, Rat::one());
    for alpha in rs.positive_roots() {
        let coeffs: Vec<Rat> = rs
            .root_functional(alpha)
            .iter()
            .map(|&a| rat_int(a))
            .collect();
        poly = poly.mul(&MultiPoly::linear_form(&coeffs, &Rat::zero()));
    }
    VolumePolynomial {
        label: rs.label(),
        poly,
        scale: Rat::one(),
    }
}

/// Check the exact polynomial identity `P . w = det(w) P`.
///
/// On failure the difference polynomial is returned.
pub fn parity_covariance_check(vp: &VolumePolynomial, w: &AffineMap) -> Result<()> {
    let composed = vp.poly.compose_affine(w)?;
    let expected = if parity(w) == 1 {
        vp.poly.clone()
    } else {
        vp.poly.neg()
    };
    let diff = composed.sub(&expected);
    if diff.is_zero() {
        Ok(())
    } else {
        Err(Error::Integrity(format!(
            "parity covariance fails; difference polynomial {diff}"
        )))
    }
}

/// Report of the square-volume consistency check.
#[derive(Clone, Debug, Serialize)]
pub struct SquareVolumeReport {
    pub rows: Vec<SquareVolumeRow>,
    /// The common ratio, when constant.
    pub constant: Option<String>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SquareVolumeRow {
    pub point: Vec<String>,
    pub det_ad: String,
    pub p_squared: String,
    /// Absent at singular points, where both sides vanish.
    pub ratio: Option<String>,
}

/// Compare `|det(ad restricted to g/t)|`, computed from the root-space
/// description as the product of squared root pairings, against
/// `P(xi)^2 * c` across the given points. The constant `c` must not depend
/// on the point.
pub fn square_volume_check(
    rs: &RootSystem,
    vp: &VolumePolynomial,
    points: &[QVec],
) -> Result<SquareVolumeReport> {
    let mut rows = Vec::new();
    let mut ratios: Vec<Rat> = Vec::new();
    for xi in points {
        let mut det_ad = Rat::one();
        for alpha in rs.positive_roots() {
            let p = rs.pairing(alpha, xi);
            det_ad *= &p * &p;
        }
        let p2 = {
            let v = vp.eval(xi)?;
            &v * &v
        };
        let ratio = if p2.is_zero() {
            if !det_ad.is_zero() {
                return Err(Error::Integrity(
                    "P vanishes where |det ad| does not".into(),
                ));
            }
            None
        } else {
            Some(&det_ad / &p2)
        };
        if let Some(r) = &ratio {
            ratios.push(r.clone());
        }
        rows.push(SquareVolumeRow {
            point: xi.iter().map(rat_str).collect(),
            det_ad: rat_str(&det_ad),
            p_squared: rat_str(&p2),
            ratio: ratio.as_ref().map(rat_str),
        });
    }
    let constant = ratios.first().cloned();
    let pass = match &constant {
        Some(c) => ratios.iter().all(|r| r == c),
        None => false,
    };
    Ok(SquareVolumeReport {
        rows,
        constant: constant.as_ref().map(rat_str),
        pass,
    })
}

/// Deterministic generic rational test points for a rank-r system.
pub fn generic_points(rank: usize, count: usize) -> Vec<QVec> {
    let primes = [2i64, 3, 5, 7, 11, 13, 17, 19, 23, 29];
    (0..count)
        .map(|k| {
            QVec::new(
                (0..rank)
                    .map(|j| {
                        let p = primes[(k + j) % primes.len()];
                        crate::exact::rat(p + k as i64, 1 + j as i64)
                    })
                    .collect(),
            )
        })
        .collect()
}

/// A primitive degree-one factor: coprime integer linear coefficients with
/// positive leading sign, and a rational constant term. The polynomial is
/// `normal . x - offset`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearFactor {
    pub normal: Vec<i64>,
    pub offset: Rat,
}

impl LinearFactor {
    pub fn to_poly(&self, nvars: usize) -> MultiPoly {
        let coeffs: Vec<Rat> = self.normal.iter().map(|&a| rat_int(a)).collect();
        debug_assert_eq!(coeffs.len(), nvars);
        MultiPoly::linear_form(&coeffs, &self.offset)
    }
}

/// `P = (prod L_i) * Q` with every `L_i` primitive of degree one and `Q`
/// divisible by no primitive linear form of height <= `height`.
#[derive(Clone, Debug)]
pub struct PrimitiveFactorization {
    pub factors: Vec<LinearFactor>,
    pub cofactor: MultiPoly,
    pub height: i64,
}

impl PrimitiveFactorization {
    /// Multiply the factorization back together.
    pub fn product(&self, nvars: usize) -> MultiPoly {
        let mut p = self.cofactor.clone();
        for f in &self.factors {
            p = p.mul(&f.to_poly(nvars));
        }
        p
    }
}

/// Enumerate primitive integer normals with entries bounded by `height`,
/// first nonzero entry positive, gcd 1.
fn primitive_normals(nvars: usize, height: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![-height; nvars];
    'outer: loop {
        let first = v.iter().find(|&&a| a != 0);
        if let Some(&f) = first {
            if f > 0 {
                let g = v.iter().fold(0i64, |acc, &a| acc.gcd(&a));
                if g == 1 {
                    out.push(v.clone());
                }
            }
        }
        let mut pos = nvars;
        loop {
            if pos == 0 {
                break 'outer;
            }
            pos -= 1;
            v[pos] += 1;
            if v[pos] <= height {
                break;
            }
            v[pos] = -height;
        }
    }
    out.sort();
    out
}

/// Rational roots of a univariate polynomial with rational coefficients
/// (`coeffs[k]` is the coefficient of `t^k`), without multiplicity.
fn rational_roots(coeffs: &[Rat]) -> Result<Vec<Rat>> {
    let mut c: Vec<Rat> = coeffs.to_vec();
    while c.last().is_some_and(Rat::is_zero) {
        c.pop();
    }
    if c.is_empty() {
        return Err(Error::Usage(
            "zero polynomial has every rational as a root".into(),
        ));
    }
    if c.len() == 1 {
        return Ok(Vec::new());
    }
    // clear denominators to integer coefficients
    let mut lcm = num_bigint::BigInt::one();
    for ci in &c {
        lcm = lcm.lcm(ci.denom());
    }
    let scale = Rat::from_integer(lcm);
    let ints: Vec<num_bigint::BigInt> = c.iter().map(|ci| (ci * &scale).numer().clone()).collect();
    let mut roots = Vec::new();
    // factor out t^k
    let low = ints.iter().position(|v| !v.is_zero()).unwrap();
    if low > 0 {
        roots.push(Rat::zero());
    }
    let ints = &ints[low..];
    if ints.len() == 1 {
        return Ok(roots);
    }
    let a0 = ints.first().unwrap().abs();
    let an = ints.last().unwrap().abs();
    let a0 = a0
        .to_i128()
        .ok_or_else(|| Error::Usage("constant coefficient too large for root search".into()))?;
    let an = an
        .to_i128()
        .ok_or_else(|| Error::Usage("leading coefficient too large for root search".into()))?;
    let eval = |t: &Rat| -> Rat {
        let mut acc = Rat::zero();
        for ci in ints.iter().rev() {
            acc = acc * t + Rat::from_integer(ci.clone());
        }
        acc
    };
    for p in divisors(a0) {
        for q in divisors(an) {
            for s in [1i64, -1] {
                let cand = Rat::new(
                    num_bigint::BigInt::from(s) * num_bigint::BigInt::from(p),
                    num_bigint::BigInt::from(q),
                );
                if roots.contains(&cand) {
                    continue;
                }
                if eval(&cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    Ok(roots)
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    if n == 0 {
        return vec![1];
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            out.push(n / d);
        }
        d += 1;
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Extract every primitive degree-one factor of height at most `height`.
///
/// For each candidate normal `a`, the polynomial is restricted to a line
/// transversal to the direction (`a . e = 1`); the rational roots of the
/// restriction give the candidate offsets, which are then confirmed by
/// exact trial division, repeated to multiplicity.
pub fn primitive_linear_factors(p: &MultiPoly, height: i64) -> Result<PrimitiveFactorization> {
    if p.is_zero() {
        return Err(Error::Usage("cannot factor the zero polynomial".into()));
    }
    if height < 1 {
        return Err(Error::Usage("height bound must be at least 1".into()));
    }
    let n = p.nvars();
    let mut cofactor = p.clone();
    let mut factors: Vec<LinearFactor> = Vec::new();
    for normal in primitive_normals(n, height) {
        if cofactor.total_degree() == 0 {
            break;
        }
        let offsets = candidate_offsets(&cofactor, &normal)?;
        for c in offsets {
            let factor = LinearFactor {
                normal: normal.clone(),
                offset: c,
            };
            let l = factor.to_poly(n);
            while let Some(q) = cofactor.try_divide_linear(&l)? {
                factors.push(factor.clone());
                cofactor = q;
                if cofactor.total_degree() == 0 {
                    break;
                }
            }
        }
    }
    factors.sort_by(|a, b| {
        a.normal
            .cmp(&b.normal)
            .then_with(|| a.offset.cmp(&b.offset))
    });
    Ok(PrimitiveFactorization {
        factors,
        cofactor,
        height,
    })
}

/// Offsets `c` such that `normal . x = c` could support a factor: rational
/// roots of the restriction of `p` to a transversal line.
fn candidate_offsets(p: &MultiPoly, normal: &[i64]) -> Result<Vec<Rat>> {
    let n = p.nvars();
    let norm2: i64 = normal.iter().map(|&a| a * a).sum();
    // direction e = a / |a|^2 has a . e = 1
    let dir: Vec<Rat> = normal
        .iter()
        .map(|&a| crate::exact::rat(a, norm2))
        .collect();
    // deterministic base points until the restriction is nonzero
    let primes = [2i64, 3, 5, 7, 11, 13, 17, 19];
    for attempt in 0..32i64 {
        let base: Vec<Rat> = (0..n)
            .map(|j| crate::exact::rat(attempt, primes[j % primes.len()]))
            .collect();
        // univariate restriction g(t) = p(base + t dir)
        let deg = p.total_degree() as usize;
        let mut coeffs = vec![Rat::zero(); deg + 1];
        for (mono, c) in p.terms() {
            // expand prod_j (base_j + t dir_j)^{e_j}
            let mut uni = vec![Rat::one()];
            for (j, &e) in mono.0.iter().enumerate() {
                for _ in 0..e {
                    let mut next = vec![Rat::zero(); uni.len() + 1];
                    for (k, u) in uni.iter().enumerate() {
                        next[k] += u * &base[j];
                        next[k + 1] += u * &dir[j];
                    }
                    uni = next;
                }
            }
            for (k, u) in uni.iter().enumerate() {
                coeffs[k] += u * c;
            }
        }
        if coeffs.iter().all(Rat::is_zero) {
            continue;
        }
        let roots = rational_roots(&coeffs)?;
        // a . (base + t dir) = a . base + t
        let a_base: Rat = normal
            .iter()
            .zip(&base)
            .map(|(&a, b)| b * &rat_int(a))
            .sum();
        return Ok(roots.into_iter().map(|t| &a_base + &t).collect());
    }
    Err(Error::Integrity(
        "could not find a transversal line off the zero set".into(),
    ))
}

/// Outcome of auditing a polynomial against an integral hyperplane.
#[derive(Clone, Debug, Serialize)]
pub enum HyperplaneAudit {
    /// The polynomial does not vanish identically on the hyperplane; a
    /// witness point with nonzero value is recorded.
    NotVanishing { witness: Vec<String> },
    /// The polynomial vanishes on the hyperplane and, as required, the
    /// hyperplane functional divides it exactly.
    VanishesAndDivides,
}

/// Decide whether `p` vanishes identically on the hyperplane by exact
/// evaluation on a grid dense enough for the degree, and in that case
/// assert that the defining functional divides `p` exactly.
///
/// Vanishing without divisibility is an integrity error: it would
/// contradict the primitive factorization of polynomials on integral
/// affine space.
pub fn no_vanishing_hyperplane_audit(
    p: &MultiPoly,
    hyperplane: &Hyperplane,
) -> Result<HyperplaneAudit> {
    if p.is_zero() {
        return Err(Error::Usage("audit of the zero polynomial".into()));
    }
    let assert_divides = |p: &MultiPoly| -> Result<HyperplaneAudit> {
        let coeffs: Vec<Rat> = hyperplane.normal().iter().map(|&a| rat_int(a)).collect();
        let l = MultiPoly::linear_form(&coeffs, hyperplane.offset());
        match p.try_divide_linear(&l)? {
            Some(_) => Ok(HyperplaneAudit::VanishesAndDivides),
            None => Err(Error::Integrity(format!(
                "polynomial vanishes on {hyperplane} but its functional does not divide it"
            ))),
        }
    };
    let (base, dirs) = hyperplane.parametrize();
    if dirs.is_empty() {
        // dimension 1: the hyperplane is a single point
        return if p.eval(base.as_slice())?.is_zero() {
            assert_divides(p)
        } else {
            Ok(HyperplaneAudit::NotVanishing {
                witness: base.iter().map(rat_str).collect(),
            })
        };
    }
    // a (deg+1)-per-axis grid decides vanishing of a degree-deg polynomial
    let deg = p.total_degree() as i64;
    let mut idx = vec![0i64; dirs.len()];
    loop {
        let mut x = base.clone();
        for (k, d) in dirs.iter().enumerate() {
            x = &x + &d.scale(&rat_int(idx[k]));
        }
        if !p.eval(x.as_slice())?.is_zero() {
            return Ok(HyperplaneAudit::NotVanishing {
                witness: x.iter().map(rat_str).collect(),
            });
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return assert_divides(p);
            }
            idx[pos] += 1;
            if idx[pos] <= deg {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::reflection::generate_closure;
    use crate::roots::Label;

    #[test]
    fn a1_volume_polynomial_is_2z() {
        let rs = RootSystem::build(Label::A1);
        let vp = volume_polynomial(&rs);
        let two_z = MultiPoly::linear_form(&[rat_int(2)], &Rat::zero());
        assert_eq!(vp.poly(), &two_z);
        assert_eq!(vp.eval(&QVec::from_i64s(&[2])).unwrap(), rat_int(4));
    }

    #[test]
    fn degrees_match_positive_root_counts() {
        for (label, deg) in [(Label::A2, 3), (Label::B2, 4), (Label::G2, 6)] {
            let rs = RootSystem::build(label);
            let vp = volume_polynomial(&rs);
            assert_eq!(vp.poly().total_degree(), deg, "{label}");
        }
    }

    #[test]
    fn parity_covariance_all_elements() {
        for label in [Label::A1, Label::A1xA1, Label::A2, Label::B2, Label::G2] {
            let rs = RootSystem::build(label);
            let vp = volume_polynomial(&rs);
            let closure = generate_closure(&rs.weyl_generators(), 100).unwrap();
            for w in closure.elements().unwrap() {
                parity_covariance_check(&vp, w).unwrap();
            }
        }
    }

    #[test]
    fn p_squared_is_invariant() {
        for label in [Label::A2, Label::B2, Label::G2] {
            let rs = RootSystem::build(label);
            let vp = volume_polynomial(&rs);
            let p2 = vp.poly().mul(vp.poly());
            let closure = generate_closure(&rs.weyl_generators(), 100).unwrap();
            for w in closure.elements().unwrap() {
                assert_eq!(p2.compose_affine(w).unwrap(), p2, "{label}");
            }
        }
    }

    #[test]
    fn zero_set_is_the_root_hyperplanes() {
        let rs = RootSystem::build(Label::B2);
        let vp = volume_polynomial(&rs);
        for x in -4i64..=4 {
            for y in -4i64..=4 {
                let xi = QVec::from_i64s(&[x, y]);
                let vanishes = vp.eval(&xi).unwrap().is_zero();
                let on_wall = rs
                    .positive_roots()
                    .iter()
                    .any(|alpha| rs.pairing(alpha, &xi).is_zero());
                assert_eq!(vanishes, on_wall, "at ({x},{y})");
            }
        }
    }

    #[test]
    fn square_volume_reports_constant_ratio() {
        for label in [Label::A1, Label::A2, Label::G2] {
            let rs = RootSystem::build(label);
            let vp = volume_polynomial(&rs);
            let pts = generic_points(rs.rank(), 5);
            let report = square_volume_check(&rs, &vp, &pts).unwrap();
            assert!(report.pass, "{label}: {report:?}");
        }
        // the origin is singular: both sides vanish
        let rs = RootSystem::build(Label::A1);
        let vp = volume_polynomial(&rs);
        let report = square_volume_check(&rs, &vp, &[QVec::zero(1)]).unwrap();
        assert!(report.rows[0].ratio.is_none());
    }

    #[test]
    fn factor_extraction_example() {
        // x (x^2 + y^2 + 1) at height 3 -> [x], cofactor x^2 + y^2 + 1
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let inner = x
            .pow(2)
            .add(&y.pow(2))
            .add(&MultiPoly::constant(2, rat_int(1)));
        let p = x.mul(&inner);
        let f = primitive_linear_factors(&p, 3).unwrap();
        assert_eq!(f.factors.len(), 1);
        assert_eq!(f.factors[0].normal, vec![1, 0]);
        assert!(f.factors[0].offset.is_zero());
        assert_eq!(f.cofactor, inner);
        assert_eq!(f.product(2), p);
    }

    #[test]
    fn constant_polynomial_has_no_factors() {
        let p = MultiPoly::constant(2, rat_int(6));
        let f = primitive_linear_factors(&p, 2).unwrap();
        assert!(f.factors.is_empty());
        assert_eq!(f.cofactor, p);
        assert!(primitive_linear_factors(&MultiPoly::zero(2), 2).is_err());
    }

    #[test]
    fn volume_polynomial_factors_completely() {
        let rs = RootSystem::build(Label::A2);
        let vp = volume_polynomial(&rs);
        let f = primitive_linear_factors(vp.poly(), 2).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.cofactor.total_degree(), 0);
        assert_eq!(f.product(2), *vp.poly());
    }

    #[test]
    fn factors_with_multiplicity_and_rational_offsets() {
        // (x - 1/2)^2 (x + y), scaled
        let l1 = MultiPoly::linear_form(&[rat_int(1), rat_int(0)], &rat(1, 2));
        let l2 = MultiPoly::linear_form(&[rat_int(1), rat_int(1)], &Rat::zero());
        let p = l1.mul(&l1).mul(&l2).scale(&rat(3, 4));
        let f = primitive_linear_factors(&p, 1).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(
            f.factors
                .iter()
                .filter(|fac| fac.offset == rat(1, 2))
                .count(),
            2
        );
        assert_eq!(f.product(2), p);
        assert_eq!(f.cofactor, MultiPoly::constant(2, rat(3, 4)));
    }

    #[test]
    fn hyperplane_audit() {
        let rs = RootSystem::build(Label::A2);
        let vp = volume_polynomial(&rs);
        // P vanishes on each root hyperplane and sheds the factor
        for alpha in rs.positive_roots() {
            let h = Hyperplane::new(rs.root_functional(alpha), Rat::zero()).unwrap();
            match no_vanishing_hyperplane_audit(vp.poly(), &h).unwrap() {
                HyperplaneAudit::VanishesAndDivides => {}
                other => panic!("expected divisibility, got {other:?}"),
            }
        }
        // P does not vanish on a generic hyperplane
        let h = Hyperplane::new(vec![1, 1], rat_int(1)).unwrap();
        match no_vanishing_hyperplane_audit(vp.poly(), &h).unwrap() {
            HyperplaneAudit::NotVanishing { .. } => {}
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn scale_rides_through() {
        let rs = RootSystem::build(Label::A1);
        let vp = volume_polynomial(&rs).with_scale(rat(1, 3));
        assert_eq!(vp.eval(&QVec::from_i64s(&[3])).unwrap(), rat_int(2));
        let report = square_volume_check(&rs, &vp, &generic_points(1, 5)).unwrap();
        assert!(report.pass);
        assert_eq!(report.constant, Some("9".to_string()));
    }
}
