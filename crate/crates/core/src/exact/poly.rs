//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are kept in graded-lexicographic order; zero coefficients are never
//! stored. Volume polynomials are products of linear forms, so sparsity
//! dominates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::rat::{parse_rat, rat_str, Rat};
use crate::affine::AffineMap;
use crate::error::{Error, Result};

/// Exponent multi-index with graded-lexicographic ordering.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Mono) -> Mono {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial over the rationals.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Mono, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars);
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = MultiPoly::zero(nvars);
        p.terms.insert(Mono(e), Rat::one());
        p
    }

    /// Degree-one polynomial `coeffs . x - offset`.
    pub fn linear_form(coeffs: &[Rat], offset: &Rat) -> Self {
        let nvars = coeffs.len();
        let mut p = MultiPoly::zero(nvars);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; nvars];
                e[i] = 1;
                p.terms.insert(Mono(e), c.clone());
            }
        }
        if !offset.is_zero() {
            p.terms.insert(Mono(vec![0; nvars]), -offset.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero polynomial reports degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Mono::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    /// Coefficient of `x_var^k`, a polynomial in the remaining variables
    /// (the exponent of `var` is zeroed out).
    fn coeff_in_var(&self, var: usize, k: u32) -> MultiPoly {
        let mut p = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if m.0[var] == k {
                let mut e = m.0.clone();
                e[var] = 0;
                p.add_term(Mono(e), c.clone());
            }
        }
        p
    }

    fn add_term(&mut self, m: Mono, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other).expect("variable-count mismatch");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_vars(other).expect("variable-count mismatch");
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut out = MultiPoly::constant(self.nvars, Rat::one());
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &[Rat]) -> Result<Rat> {
        if x.len() != self.nvars {
            return Err(Error::Usage(format!(
                "eval: expected {} coordinates, got {}",
                self.nvars,
                x.len()
            )));
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t *= &x[i];
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute `images[i]` for variable `i`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.nvars {
            return Err(Error::Usage("substitute: wrong number of images".into()));
        }
        let out_vars = images.first().map_or(self.nvars, MultiPoly::nvars);
        // memoized powers of each image
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::constant(out_vars, Rat::one()), p.clone()])
            .collect();
        let power = |i: usize, e: u32, pw: &mut Vec<Vec<MultiPoly>>| -> MultiPoly {
            while pw[i].len() <= e as usize {
                let next = pw[i].last().unwrap().mul(&pw[i][1]);
                pw[i].push(next);
            }
            pw[i][e as usize].clone()
        };
        let mut out = MultiPoly::zero(out_vars);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(out_vars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&power(i, e, &mut powers));
                }
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// `p . m`: precompose with an affine map, substituting each variable by
    /// the corresponding affine-linear coordinate of `m`.
    pub fn compose_affine(&self, map: &AffineMap) -> Result<MultiPoly> {
        if map.dim() != self.nvars {
            return Err(Error::Usage(format!(
                "compose_affine: polynomial in {} variables, map on dimension {}",
                self.nvars,
                map.dim()
            )));
        }
        let images: Vec<MultiPoly> = (0..self.nvars)
            .map(|i| {
                let coeffs: Vec<Rat> = (0..self.nvars)
                    .map(|j| crate::exact::rat::rat_int(map.linear().get(i, j)))
                    .collect();
                MultiPoly::linear_form(&coeffs, &-map.translation().get(i).clone())
            })
            .collect();
        self.substitute(&images)
    }

    /// Exact division by a degree-one polynomial.
    ///
    /// Returns `Some(q)` with `self = l * q`, or `None` when `l` does not
    /// divide. Division runs along the pivot variable of `l` (the first one
    /// with a nonzero coefficient) and succeeds exactly when the remainder,
    /// a polynomial transversal to the hyperplane `l = 0`, vanishes.
    pub fn try_divide_linear(&self, l: &MultiPoly) -> Result<Option<MultiPoly>> {
        self.check_vars(l)?;
        if l.total_degree() != 1 {
            return Err(Error::Usage(
                "try_divide_linear: divisor must have total degree 1".into(),
            ));
        }
        let pivot = (0..self.nvars).find(|&v| l.degree_in(v) == 1).ok_or_else(|| {
            Error::Usage("try_divide_linear: divisor has no linear part".into())
        })?;
        let lead = {
            let mut e = vec![0; self.nvars];
            e[pivot] = 1;
            l.terms.get(&Mono(e)).cloned().unwrap()
        };
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while rem.degree_in(pivot) >= 1 {
            let d = rem.degree_in(pivot);
            let top = rem.coeff_in_var(pivot, d);
            // term of the quotient: (top / lead) * x_pivot^(d-1)
            let mut shift = MultiPoly::zero(self.nvars);
            for (m, c) in &top.terms {
                let mut e = m.0.clone();
                e[pivot] = d - 1;
                shift.add_term(Mono(e), c / &lead);
            }
            quot = quot.add(&shift);
            rem = rem.sub(&shift.mul(l));
        }
        if rem.is_zero() {
            Ok(Some(quot))
        } else {
            Ok(None)
        }
    }

    fn check_vars(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Usage(format!(
                "variable-count mismatch: {} vs {}",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    /// One term per line: `coeff e1 e2 ... en`, `#` comments, blank lines
    /// ignored.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (m, c) in &self.terms {
            out.push_str(&rat_str(c));
            for e in &m.0 {
                out.push(' ');
                out.push_str(&e.to_string());
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str, nvars: Option<usize>) -> Result<MultiPoly> {
        let mut poly: Option<MultiPoly> = nvars.map(MultiPoly::zero);
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut fields = line.split_whitespace();
            let coeff = parse_rat(fields.next().unwrap())?;
            let exps: Vec<u32> = fields
                .map(|f| {
                    f.parse().map_err(|_| {
                        Error::Usage(format!("line {}: bad exponent `{f}`", lineno + 1))
                    })
                })
                .collect::<Result<_>>()?;
            let p = poly.get_or_insert_with(|| MultiPoly::zero(exps.len()));
            if exps.len() != p.nvars {
                return Err(Error::Usage(format!(
                    "line {}: expected {} exponents, got {}",
                    lineno + 1,
                    p.nvars,
                    exps.len()
                )));
            }
            p.add_term(Mono(exps), coeff);
        }
        poly.ok_or_else(|| Error::Usage("empty polynomial file".into()))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let names = ["x", "y", "z", "w"];
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mut vars = String::new();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = names
                    .get(i)
                    .map(|s| s.to_string())
                    .unwrap_or_else(|| format!("x{i}"));
                if e == 1 {
                    vars.push_str(&format!("*{name}"));
                } else {
                    vars.push_str(&format!("*{name}^{e}"));
                }
            }
            write!(f, "{}{}", rat_str(c), vars)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat::{rat, rat_int};

    fn xy() -> (MultiPoly, MultiPoly) {
        (MultiPoly::var(2, 0), MultiPoly::var(2, 1))
    }

    #[test]
    fn eval_xy_plus_one() {
        let (x, y) = xy();
        let p = x.mul(&y).add(&MultiPoly::constant(2, rat_int(1)));
        assert_eq!(p.eval(&[rat_int(2), rat_int(3)]).unwrap(), rat_int(7));
    }

    #[test]
    fn divide_linear_examples() {
        let (x, y) = xy();
        // x * (x^2 + y^2 + 1) / x
        let inner = x
            .pow(2)
            .add(&y.pow(2))
            .add(&MultiPoly::constant(2, rat_int(1)));
        let p = x.mul(&inner);
        let q = p.try_divide_linear(&x).unwrap().unwrap();
        assert_eq!(q, inner);

        // x^2 + 1 not divisible by x
        let p = x.pow(2).add(&MultiPoly::constant(2, rat_int(1)));
        assert!(p.try_divide_linear(&x).unwrap().is_none());

        // 2x + 2y divided by x + y gives 2
        let p = x.scale(&rat_int(2)).add(&y.scale(&rat_int(2)));
        let l = x.add(&y);
        let q = p.try_divide_linear(&l).unwrap().unwrap();
        assert_eq!(q, MultiPoly::constant(2, rat_int(2)));

        // constant divisor is a usage error
        let c = MultiPoly::constant(2, rat_int(3));
        assert!(p.try_divide_linear(&c).is_err());
    }

    #[test]
    fn text_roundtrip() {
        let (x, y) = xy();
        let p = x
            .pow(3)
            .scale(&rat(1, 2))
            .add(&y.scale(&rat_int(-3)))
            .add(&MultiPoly::constant(2, rat(2, 7)));
        let text = p.to_text();
        let q = MultiPoly::parse_text(&text, Some(2)).unwrap();
        assert_eq!(p, q);
        let q = MultiPoly::parse_text("# nothing\n\n1 0 0\n-1 0 0\n2 1 1\n", None).unwrap();
        let (x, y) = xy();
        assert_eq!(q, x.mul(&y).scale(&rat_int(2)));
    }

    #[test]
    fn grlex_term_order() {
        let m1 = Mono(vec![2, 0]);
        let m2 = Mono(vec![0, 3]);
        assert!(m1 < m2); // lower total degree first
        let m3 = Mono(vec![1, 2]);
        assert!(m2 < m3 && m1 < m3); // ties broken lexicographically
    }
}
