//! Floating-point Monte-Carlo and quadrature layer: verification of the
//! Weyl integration formula, the Duistermaat-Heckman pushforward density,
//! and coadjoint-orbit symplectic volumes.
//!
//! Every estimate is a pure function of (group, integrand, seed, n,
//! workers): worker substreams are keyed deterministically and merged in
//! stream order, so results are bit-identical across reruns and do not
//! depend on scheduling.

pub mod haar;

use std::f64::consts::PI;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::rat_f64;
use crate::roots::{Label, RootSystem};
use haar::{
    conjugate_torus_element, haar_rotation, haar_su3, normal, stream_rng, uniform, GroupTag,
};

/// A Monte-Carlo value with its standard error and provenance.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub workers: u64,
    pub estimator: String,
    /// One-time normalization constant folded into the estimate, when the
    /// estimator carries one.
    pub calibration: Option<f64>,
}

impl MeasureEstimate {
    /// Combined standard error of the difference to another estimate.
    pub fn combined_se(&self, other: &MeasureEstimate) -> f64 {
        (self.std_error * self.std_error + other.std_error * other.std_error).sqrt()
    }
}

/// Integrable test densities on the Lie-algebra dual, all against a
/// Gaussian envelope with rational scale parameters.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum Integrand {
    /// `exp(-|X|^2 / s^2)`
    Gaussian { s2: f64 },
    /// `x1^{2k} exp(-|X|^2 / s^2)`, not radial: the first coordinate rides
    /// along, so the inner Haar average is exercised for real.
    PolyGaussian { k: u32, s2: f64 },
    /// `exp(-|X|^2 / s^2) / (1 + c |X|^2)`
    CauchyGaussian { c: f64, s2: f64 },
}

impl Integrand {
    /// Evaluate from the squared norm and the first orthonormal coordinate.
    pub fn eval(&self, norm2: f64, x1: f64) -> f64 {
        match self {
            Integrand::Gaussian { s2 } => (-norm2 / s2).exp(),
            Integrand::PolyGaussian { k, s2 } => x1.powi(2 * *k as i32) * (-norm2 / s2).exp(),
            Integrand::CauchyGaussian { c, s2 } => (-norm2 / s2).exp() / (1.0 + c * norm2),
        }
    }

    /// Gaussian envelope scale squared.
    pub fn scale2(&self) -> f64 {
        match self {
            Integrand::Gaussian { s2 }
            | Integrand::PolyGaussian { s2, .. }
            | Integrand::CauchyGaussian { s2, .. } => *s2,
        }
    }

    /// Exact value of the integral over R^dim, when known in closed form.
    pub fn exact_integral(&self, dim: usize) -> Option<f64> {
        match self {
            Integrand::Gaussian { s2 } => Some((PI * s2).powf(dim as f64 / 2.0)),
            Integrand::PolyGaussian { k, s2 } => {
                // int x1^{2k} e^{-|x|^2/s^2} = (pi s^2)^{d/2} s^{2k} (2k-1)!! / 2^k
                let mut dfact = 1.0;
                let mut m = 2 * i64::from(*k) - 1;
                while m > 1 {
                    dfact *= m as f64;
                    m -= 2;
                }
                Some(
                    (PI * s2).powf(dim as f64 / 2.0) * s2.powi(*k as i32) * dfact
                        / 2f64.powi(*k as i32),
                )
            }
            Integrand::CauchyGaussian { .. } => None,
        }
    }
}

impl FromStr for Integrand {
    type Err = Error;
    /// `gaussian:s`, `polygauss:k:s`, `cauchygauss:c:s` with rational
    /// parameters.
    fn from_str(sel: &str) -> Result<Self> {
        let parts: Vec<&str> = sel.split(':').collect();
        let rat_param = |p: &str| -> Result<f64> {
            Ok(rat_f64(&crate::exact::parse_rat(p)?))
        };
        match parts.as_slice() {
            ["gaussian", s] => {
                let s = rat_param(s)?;
                if s <= 0.0 {
                    return Err(Error::Usage("gaussian scale must be positive".into()));
                }
                Ok(Integrand::Gaussian { s2: s * s })
            }
            ["polygauss", k, s] => {
                let k: u32 = k
                    .parse()
                    .map_err(|_| Error::Usage(format!("bad exponent `{k}`")))?;
                let s = rat_param(s)?;
                if s <= 0.0 || k == 0 {
                    return Err(Error::Usage(
                        "polygauss needs a positive scale and exponent".into(),
                    ));
                }
                Ok(Integrand::PolyGaussian { k, s2: s * s })
            }
            ["cauchygauss", c, s] => {
                let c = rat_param(c)?;
                let s = rat_param(s)?;
                if s <= 0.0 || c < 0.0 {
                    return Err(Error::Usage("cauchygauss needs c >= 0, s > 0".into()));
                }
                Ok(Integrand::CauchyGaussian { c, s2: s * s })
            }
            _ => Err(Error::Usage(format!(
                "unknown integrand `{sel}` (expected gaussian:s, polygauss:k:s, cauchygauss:c:s)"
            ))),
        }
    }
}

/// One-time calibration constant per group, relating the torus-side
/// estimate to the ambient Lebesgue integral for the fixed conventions
/// used here (root pairings normalized so short roots have squared length
/// 2, Haar averages as probability means). Stability of the resulting
/// LHS/RHS ratio across integrands is the falsifiable check.
pub fn calibration(tag: GroupTag) -> f64 {
    match tag {
        GroupTag::Su2 | GroupTag::So3 => PI,
        GroupTag::Su3 => 4.0 * 3f64.sqrt() * PI.powi(3),
    }
}

struct ChunkStats {
    sum: f64,
    sumsq: f64,
    count: u64,
}

/// Split `n` into per-worker chunks, run them on their own deterministic
/// streams, and merge in stream order.
fn run_chunks<F>(n: u64, workers: u64, body: F) -> (f64, f64)
where
    F: Fn(u64, u64) -> ChunkStats + Sync + Send,
{
    let workers = workers.clamp(1, n.max(1));
    let mut chunks: Vec<(u64, u64)> = Vec::new();
    let base = n / workers;
    let extra = n % workers;
    for w in 0..workers {
        let size = base + u64::from(w < extra);
        if size > 0 {
            chunks.push((w, size));
        }
    }
    let stats: Vec<ChunkStats> = if chunks.len() == 1 {
        vec![body(chunks[0].0, chunks[0].1)]
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|&(w, size)| {
                    let body = &body;
                    scope.spawn(move || body(w, size))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        })
    };
    let mut sum = 0.0;
    let mut sumsq = 0.0;
    let mut count = 0u64;
    for s in &stats {
        sum += s.sum;
        sumsq += s.sumsq;
        count += s.count;
    }
    let mean = sum / count as f64;
    let var = if count > 1 {
        ((sumsq - sum * sum / count as f64) / (count as f64 - 1.0)).max(0.0)
    } else {
        0.0
    };
    (mean, (var / count as f64).sqrt())
}

/// Importance-sampled estimate of the ambient integral over the
/// Lie-algebra dual, with the Gaussian proposal matched to the integrand
/// scale.
pub fn weyl_integrate_lhs(
    f: &Integrand,
    tag: GroupTag,
    n: u64,
    seed: u64,
    workers: u64,
) -> Result<MeasureEstimate> {
    if n == 0 {
        return Err(Error::Usage("need at least one sample".into()));
    }
    let dim = tag.algebra_dim();
    let sigma2 = f.scale2() / 2.0;
    let sigma = sigma2.sqrt();
    let log_norm = -(dim as f64 / 2.0) * (2.0 * PI * sigma2).ln();
    let (value, se) = run_chunks(n, workers, |stream, size| {
        let mut rng = stream_rng(tag, seed, stream);
        let mut sum = 0.0;
        let mut sumsq = 0.0;
        for _ in 0..size {
            let mut norm2 = 0.0;
            let mut x1 = 0.0;
            for i in 0..dim {
                let x = sigma * normal(&mut rng);
                if i == 0 {
                    x1 = x;
                }
                norm2 += x * x;
            }
            let log_q = log_norm - norm2 / (2.0 * sigma2);
            let w = f.eval(norm2, x1) / log_q.exp();
            sum += w;
            sumsq += w * w;
        }
        ChunkStats {
            sum,
            sumsq,
            count: size,
        }
    });
    Ok(MeasureEstimate {
        value,
        std_error: se,
        n_samples: n,
        seed,
        workers,
        estimator: format!("weyl_lhs:{tag}"),
        calibration: None,
    })
}

/// Haar samples per outer torus point in the nested estimator.
const INNER_HAAR_SAMPLES: u64 = 8;

/// Nested estimate of the torus-side integral: an importance-sampled outer
/// integral over t* against the squared volume polynomial, with an inner
/// Haar average over the orbit direction, folded through the one-time
/// calibration constant.
pub fn weyl_integrate_rhs(
    f: &Integrand,
    tag: GroupTag,
    n: u64,
    seed: u64,
    workers: u64,
) -> Result<MeasureEstimate> {
    if n == 0 {
        return Err(Error::Usage("need at least one sample".into()));
    }
    let kappa = calibration(tag);
    let outer = (n / INNER_HAAR_SAMPLES).max(1);
    match tag {
        GroupTag::Su2 | GroupTag::So3 => {
            let sigma2 = f.scale2();
            let sigma = sigma2.sqrt();
            let log_norm = -0.5 * (2.0 * PI * sigma2).ln();
            let (value, se) = run_chunks(outer, workers, |stream, size| {
                let mut rng = stream_rng(tag, seed.wrapping_add(0x5151), stream);
                let mut sum = 0.0;
                let mut sumsq = 0.0;
                for _ in 0..size {
                    let z = sigma * normal(&mut rng);
                    let v2 = 4.0 * z * z;
                    let mut f_mean = 0.0;
                    for _ in 0..INNER_HAAR_SAMPLES {
                        let r = haar_rotation(&mut rng);
                        // Ad_g of the torus point (0, 0, z)
                        let x1 = z * r[0][2];
                        f_mean += f.eval(z * z, x1);
                    }
                    f_mean /= INNER_HAAR_SAMPLES as f64;
                    let q = (log_norm - z * z / (2.0 * sigma2)).exp();
                    let w = kappa * 0.5 * v2 * f_mean / q;
                    sum += w;
                    sumsq += w * w;
                }
                ChunkStats {
                    sum,
                    sumsq,
                    count: size,
                }
            });
            Ok(MeasureEstimate {
                value,
                std_error: se,
                n_samples: outer * INNER_HAAR_SAMPLES,
                seed,
                workers,
                estimator: format!("weyl_rhs:{tag}"),
                calibration: Some(kappa),
            })
        }
        GroupTag::Su3 => {
            // integer root functionals of a2 in simple-root coordinates
            let rs = RootSystem::build(Label::A2);
            let functionals: Vec<[f64; 2]> = rs
                .positive_roots()
                .iter()
                .map(|alpha| {
                    let f = rs.root_functional(alpha);
                    [f[0] as f64, f[1] as f64]
                })
                .collect();
            let sigma2 = f.scale2();
            let sigma = sigma2.sqrt();
            let log_norm = -(2.0 * PI * sigma2).ln();
            let (value, se) = run_chunks(outer, workers, |stream, size| {
                let mut rng = stream_rng(tag, seed.wrapping_add(0x5151), stream);
                let mut sum = 0.0;
                let mut sumsq = 0.0;
                for _ in 0..size {
                    let xi = [sigma * normal(&mut rng), sigma * normal(&mut rng)];
                    let mut v2 = 1.0;
                    for func in &functionals {
                        let p = func[0] * xi[0] + func[1] * xi[1];
                        v2 *= p * p;
                    }
                    let a = [xi[0], xi[1] - xi[0], -xi[1]];
                    let norm2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
                    let mut f_mean = 0.0;
                    for _ in 0..INNER_HAAR_SAMPLES {
                        let u = haar_su3(&mut rng);
                        let x = conjugate_torus_element(&u, a);
                        let x1 = std::f64::consts::SQRT_2 * x[0][1].re;
                        f_mean += f.eval(norm2, x1);
                    }
                    f_mean /= INNER_HAAR_SAMPLES as f64;
                    let q = (log_norm - (xi[0] * xi[0] + xi[1] * xi[1]) / (2.0 * sigma2)).exp();
                    let w = kappa * v2 * f_mean / (6.0 * q);
                    sum += w;
                    sumsq += w * w;
                }
                ChunkStats {
                    sum,
                    sumsq,
                    count: size,
                }
            });
            Ok(MeasureEstimate {
                value,
                std_error: se,
                n_samples: outer * INNER_HAAR_SAMPLES,
                seed,
                workers,
                estimator: format!("weyl_rhs:{tag}"),
                calibration: Some(kappa),
            })
        }
    }
}

/// One histogram bin of a pushforward report.
#[derive(Clone, Debug, Serialize)]
pub struct DhBin {
    pub lo: f64,
    pub hi: f64,
    pub count: u64,
    /// Count predicted by the fitted density `c * V^2`.
    pub fitted: f64,
}

/// Radial pushforward histogram for the rank-one model.
#[derive(Clone, Debug, Serialize)]
pub struct DhReport {
    pub group: GroupTag,
    pub radius: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub workers: u64,
    pub bins: Vec<DhBin>,
    /// Least-squares constant of the `c * z^2` fit.
    pub fit_constant: f64,
    /// Max relative deviation over bins whose fitted count reaches the
    /// threshold.
    pub max_rel_dev: f64,
    pub dev_threshold_count: f64,
    pub populated_bins: usize,
    /// Index of the lowest-count bin; the squared volume polynomial
    /// vanishes at the origin, so this must be the first bin.
    pub lowest_count_bin: usize,
}

/// Histogram of |X| for uniform samples in the radius-R ball of the
/// three-dimensional dual, fitted against the squared volume polynomial
/// density.
///
/// The ball is sampled by a stratified sequence in the volume measure (a
/// seed-shifted equidistributed grid pushed through the inverse transform
/// r = R u^{1/3}); the chamber coordinate |X| of a ball point depends only
/// on its radius, so the histogram is the exact radial pushforward with
/// O(1) per-bin discrepancy.
pub fn dh_pushforward_su2(
    n: u64,
    bins: usize,
    radius: f64,
    seed: u64,
    workers: u64,
) -> Result<DhReport> {
    if n == 0 || bins == 0 || radius <= 0.0 {
        return Err(Error::Usage(
            "dh pushforward needs n >= 1, bins >= 1, radius > 0".into(),
        ));
    }
    let tag = GroupTag::Su2;
    // seed-derived shift of the stratified sequence
    let shift = {
        let mut rng = stream_rng(tag, seed.wrapping_add(0xd4), 0);
        uniform(&mut rng)
    };
    let workers_eff = workers.clamp(1, n);
    let base = n / workers_eff;
    let extra = n % workers_eff;
    // chunks carry global index ranges so the sample set is independent of
    // the worker split
    let mut chunks: Vec<(u64, u64)> = Vec::new();
    let mut start = 0u64;
    for w in 0..workers_eff {
        let size = base + u64::from(w < extra);
        if size > 0 {
            chunks.push((start, size));
            start += size;
        }
    }
    let counts_per_chunk: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|&(start, size)| {
                scope.spawn(move || {
                    let mut counts = vec![0u64; bins];
                    for i in start..start + size {
                        let u = (i as f64 + shift) / n as f64;
                        let r = radius * u.powf(1.0 / 3.0);
                        let k = ((r / radius) * bins as f64) as usize;
                        counts[k.min(bins - 1)] += 1;
                    }
                    counts
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut counts = vec![0u64; bins];
    for c in &counts_per_chunk {
        for (k, v) in c.iter().enumerate() {
            counts[k] += v;
        }
    }
    // least-squares fit against the mass of c * (2z)^2 per bin
    let width = radius / bins as f64;
    let mass: Vec<f64> = (0..bins)
        .map(|k| {
            let lo = k as f64 * width;
            let hi = lo + width;
            hi.powi(3) - lo.powi(3)
        })
        .collect();
    let num: f64 = counts
        .iter()
        .zip(&mass)
        .map(|(&c, m)| c as f64 * m)
        .sum();
    let den: f64 = mass.iter().map(|m| m * m).sum();
    let fit_constant = num / den;
    let threshold = 200.0;
    let mut max_rel_dev: f64 = 0.0;
    let mut populated = 0;
    let mut out_bins = Vec::with_capacity(bins);
    for k in 0..bins {
        let fitted = fit_constant * mass[k];
        if fitted >= threshold {
            populated += 1;
            let dev = (counts[k] as f64 - fitted).abs() / fitted;
            max_rel_dev = max_rel_dev.max(dev);
        }
        out_bins.push(DhBin {
            lo: k as f64 * width,
            hi: (k + 1) as f64 * width,
            count: counts[k],
            fitted,
        });
    }
    let lowest = counts
        .iter()
        .enumerate()
        .min_by_key(|(_, &c)| c)
        .map(|(k, _)| k)
        .unwrap_or(0);
    Ok(DhReport {
        group: tag,
        radius,
        n_samples: n,
        seed,
        workers,
        bins: out_bins,
        fit_constant,
        max_rel_dev,
        dev_threshold_count: threshold,
        populated_bins: populated,
        lowest_count_bin: lowest,
    })
}

/// Two-dimensional pushforward report for su(3).
#[derive(Clone, Debug, Serialize)]
pub struct Dh2dReport {
    pub group: GroupTag,
    pub radius: f64,
    pub n_samples: u64,
    pub seed: u64,
    pub workers: u64,
    pub grid: usize,
    pub cell: f64,
    /// Pearson correlation of log bin density against log V^2 at cell
    /// centers, over populated cells safely inside the ball shadow.
    pub log_correlation: f64,
    pub cells_used: usize,
    pub min_count: u64,
}

/// Pushforward of the uniform ball measure on the eight-dimensional dual
/// to the dominant chamber via sorted torus eigenvalues, compared cellwise
/// against the squared volume polynomial.
pub fn dh_pushforward_su3(
    n: u64,
    grid: usize,
    radius: f64,
    seed: u64,
    workers: u64,
    min_count: u64,
) -> Result<Dh2dReport> {
    if n == 0 || grid == 0 || radius <= 0.0 {
        return Err(Error::Usage(
            "dh pushforward needs n >= 1, grid >= 1, radius > 0".into(),
        ));
    }
    let tag = GroupTag::Su3;
    // chamber coordinates (x, y) = (a1, -a3) with a1 >= a2 >= a3; both are
    // at most radius in magnitude
    let extent = radius;
    let cell = extent / grid as f64;
    let workers_eff = workers.clamp(1, n);
    let base = n / workers_eff;
    let extra = n % workers_eff;
    let chunks: Vec<(u64, u64)> = (0..workers_eff)
        .map(|w| (w, base + u64::from(w < extra)))
        .filter(|&(_, s)| s > 0)
        .collect();
    let counts_per_chunk: Vec<Vec<u64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|&(w, size)| {
                scope.spawn(move || {
                    let mut rng = stream_rng(tag, seed.wrapping_add(0xd4), w);
                    let mut counts = vec![0u64; grid * grid];
                    for _ in 0..size {
                        // uniform in the R^8 ball
                        let mut coords = [0.0f64; 8];
                        let mut norm2 = 0.0;
                        for c in &mut coords {
                            *c = normal(&mut rng);
                            norm2 += *c * *c;
                        }
                        let scale = radius * uniform(&mut rng).powf(1.0 / 8.0) / norm2.sqrt();
                        for c in &mut coords {
                            *c *= scale;
                        }
                        let a = torus_eigenvalues(&coords);
                        let (x, y) = (a[0], -a[2]);
                        if x < 0.0 || y < 0.0 || x >= extent || y >= extent {
                            continue;
                        }
                        let i = (x / cell) as usize;
                        let j = (y / cell) as usize;
                        counts[i.min(grid - 1) * grid + j.min(grid - 1)] += 1;
                    }
                    counts
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut counts = vec![0u64; grid * grid];
    for c in &counts_per_chunk {
        for (k, v) in c.iter().enumerate() {
            counts[k] += v;
        }
    }
    // correlate log density with log V^2 on safe cells
    let rs = RootSystem::build(Label::A2);
    let functionals: Vec<[f64; 2]> = rs
        .positive_roots()
        .iter()
        .map(|alpha| {
            let f = rs.root_functional(alpha);
            [f[0] as f64, f[1] as f64]
        })
        .collect();
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for i in 0..grid {
        for j in 0..grid {
            let count = counts[i * grid + j];
            if count < min_count {
                continue;
            }
            let cx = (i as f64 + 0.5) * cell;
            let cy = (j as f64 + 0.5) * cell;
            // the whole cell must be inside the ball shadow;
            // |X|^2 = 2(x^2 - xy + y^2) is convex, so its max over the
            // cell sits at a corner
            let corners = [
                (cx - 0.5 * cell, cy - 0.5 * cell),
                (cx - 0.5 * cell, cy + 0.5 * cell),
                (cx + 0.5 * cell, cy - 0.5 * cell),
                (cx + 0.5 * cell, cy + 0.5 * cell),
            ];
            let norm2_max = corners
                .iter()
                .map(|&(x, y)| 2.0 * (x * x - x * y + y * y))
                .fold(0.0f64, f64::max);
            if norm2_max > 0.95 * radius * radius {
                continue;
            }
            let mut v2 = 1.0;
            for f in &functionals {
                let p = f[0] * cx + f[1] * cy;
                v2 *= p * p;
            }
            if v2 <= 0.0 {
                continue;
            }
            pairs.push(((count as f64).ln(), v2.ln()));
        }
    }
    let log_correlation = pearson(&pairs);
    Ok(Dh2dReport {
        group: tag,
        radius,
        n_samples: n,
        seed,
        workers,
        grid,
        cell,
        log_correlation,
        cells_used: pairs.len(),
        min_count,
    })
}

fn pearson(pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len() as f64;
    if pairs.len() < 2 {
        return f64::NAN;
    }
    let mx = pairs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pairs.iter().map(|p| p.1).sum::<f64>() / n;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    let mut syy = 0.0;
    for (x, y) in pairs {
        sxy += (x - mx) * (y - my);
        sxx += (x - mx) * (x - mx);
        syy += (y - my) * (y - my);
    }
    sxy / (sxx * syy).sqrt()
}

/// Sorted (descending) eigenvalues `a` of the anti-Hermitian matrix with
/// the given orthonormal coordinates, i.e. `X = i H` with `H` Hermitian
/// and eigenvalues `a`.
fn torus_eigenvalues(coords: &[f64; 8]) -> [f64; 3] {
    use num_complex::Complex64 as C;
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let inv_sqrt6 = 1.0 / 6f64.sqrt();
    // orthonormal basis of su(3) under <A,B> = -tr(AB): three X-type,
    // three Y-type, two torus directions
    let mut x = [[C::new(0.0, 0.0); 3]; 3];
    let pairs = [(0usize, 1usize), (0, 2), (1, 2)];
    for (idx, &(j, k)) in pairs.iter().enumerate() {
        let cx = coords[idx] * inv_sqrt2;
        // X_jk = E_jk - E_kj
        x[j][k] += C::new(cx, 0.0);
        x[k][j] += C::new(-cx, 0.0);
        let cy = coords[3 + idx] * inv_sqrt2;
        // Y_jk = i(E_jk + E_kj)
        x[j][k] += C::new(0.0, cy);
        x[k][j] += C::new(0.0, cy);
    }
    // torus: diag(i,-i,0)/sqrt(2), diag(i,i,-2i)/sqrt(6)
    let t1 = coords[6] * inv_sqrt2;
    let t2 = coords[7] * inv_sqrt6;
    x[0][0] += C::new(0.0, t1 + t2);
    x[1][1] += C::new(0.0, -t1 + t2);
    x[2][2] += C::new(0.0, -2.0 * t2);
    // H = -iX is Hermitian with eigenvalues a_j
    let mut h = [[C::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            h[i][j] = C::new(0.0, -1.0) * x[i][j];
        }
    }
    hermitian3_eigenvalues(&h)
}

/// Eigenvalues of a traceless 3x3 Hermitian matrix, descending, by the
/// trigonometric solution of the characteristic cubic.
fn hermitian3_eigenvalues(h: &[[num_complex::Complex64; 3]; 3]) -> [f64; 3] {
    // lambda^3 + p lambda + q = 0 for traceless H
    let mut tr_h2 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            tr_h2 += (h[i][j] * h[j][i]).re;
        }
    }
    let p = -tr_h2 / 2.0;
    let det = {
        let d = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1])
            - h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0])
            + h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);
        d.re
    };
    let q = -det;
    let r = (-p / 3.0).max(0.0).sqrt();
    if r < 1e-300 {
        return [0.0, 0.0, 0.0];
    }
    let arg = (-q / (2.0 * r * r * r)).clamp(-1.0, 1.0);
    let theta = arg.acos() / 3.0;
    let mut vals = [
        2.0 * r * theta.cos(),
        2.0 * r * (theta - 2.0 * PI / 3.0).cos(),
        2.0 * r * (theta - 4.0 * PI / 3.0).cos(),
    ];
    vals.sort_by(|a, b| b.partial_cmp(a).unwrap());
    vals
}

/// Riemann sum of the orbit symplectic form over the radius-z sphere in
/// the three-dimensional dual, on a latitude-longitude midpoint mesh.
///
/// The two-form is evaluated from the bracket model: at p, on tangent
/// vectors t1 = u x p and t2 = v x p, its value is <p, u x v>. Converges
/// to 4 pi z.
pub fn kks_orbit_volume(z: f64, mesh_theta: usize, mesh_phi: usize) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Usage("orbit radius must be positive".into()));
    }
    if mesh_theta < 2 || mesh_phi < 2 {
        return Err(Error::Usage("mesh must be at least 2x2".into()));
    }
    let dt = PI / mesh_theta as f64;
    let dp = 2.0 * PI / mesh_phi as f64;
    let cross = |a: [f64; 3], b: [f64; 3]| -> [f64; 3] {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let dot = |a: [f64; 3], b: [f64; 3]| -> f64 { a[0] * b[0] + a[1] * b[1] + a[2] * b[2] };
    let mut total = 0.0;
    for i in 0..mesh_theta {
        let theta = (i as f64 + 0.5) * dt;
        for j in 0..mesh_phi {
            let phi = (j as f64 + 0.5) * dp;
            let p = [
                z * theta.sin() * phi.cos(),
                z * theta.sin() * phi.sin(),
                z * theta.cos(),
            ];
            let t_theta = [
                z * theta.cos() * phi.cos(),
                z * theta.cos() * phi.sin(),
                -z * theta.sin(),
            ];
            let t_phi = [
                -z * theta.sin() * phi.sin(),
                z * theta.sin() * phi.cos(),
                0.0,
            ];
            // solve u x p = t_theta, v x p = t_phi with u, v orthogonal
            // to p
            let z2 = z * z;
            let u = cross(p, t_theta).map(|c| c / z2);
            let v = cross(p, t_phi).map(|c| c / z2);
            let omega = dot(p, cross(u, v));
            total += omega * dt * dp;
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kks_volume_converges_to_4_pi_z() {
        for z in [0.5, 1.0, 3.0] {
            let v = kks_orbit_volume(z, 400, 800).unwrap();
            let exact = 4.0 * PI * z;
            assert!(
                (v - exact).abs() / exact < 1e-3,
                "z = {z}: {v} vs {exact}"
            );
        }
        assert!(kks_orbit_volume(-1.0, 10, 10).is_err());
    }

    #[test]
    fn kks_ratio_to_volume_polynomial_is_constant() {
        // both kks(z) and the rank-one volume polynomial 2z are linear
        let ratios: Vec<f64> = [0.5, 1.0, 2.0, 4.0]
            .iter()
            .map(|&z| kks_orbit_volume(z, 200, 400).unwrap() / (2.0 * z))
            .collect();
        for r in &ratios[1..] {
            assert!((r - ratios[0]).abs() / ratios[0] < 1e-3);
        }
    }

    #[test]
    fn integrand_parsing() {
        assert_eq!(
            "gaussian:1".parse::<Integrand>().unwrap(),
            Integrand::Gaussian { s2: 1.0 }
        );
        assert_eq!(
            "polygauss:2:1/2".parse::<Integrand>().unwrap(),
            Integrand::PolyGaussian { k: 2, s2: 0.25 }
        );
        assert!("gaussian:0".parse::<Integrand>().is_err());
        assert!("mystery:1".parse::<Integrand>().is_err());
    }

    #[test]
    fn lhs_matches_exact_gaussian_su2() {
        let f: Integrand = "gaussian:1".parse().unwrap();
        let est = weyl_integrate_lhs(&f, GroupTag::Su2, 200_000, 1, 1).unwrap();
        let exact = PI.powf(1.5);
        // matched proposal: zero-variance estimator
        assert!((est.value - exact).abs() < 1e-10, "{}", est.value);
    }

    #[test]
    fn lhs_matches_exact_polygaussian() {
        let f: Integrand = "polygauss:1:1".parse().unwrap();
        let est = weyl_integrate_lhs(&f, GroupTag::Su2, 400_000, 2, 2).unwrap();
        let exact = f.exact_integral(3).unwrap();
        assert!(
            (est.value - exact).abs() < 4.0 * est.std_error + 1e-9,
            "{} vs {exact} (se {})",
            est.value,
            est.std_error
        );
        let est = weyl_integrate_lhs(&f, GroupTag::Su3, 400_000, 2, 2).unwrap();
        let exact = f.exact_integral(8).unwrap();
        assert!(
            (est.value - exact).abs() < 4.0 * est.std_error,
            "{} vs {exact} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn rhs_matches_lhs_su2() {
        for sel in ["gaussian:1", "polygauss:1:1", "cauchygauss:1:1"] {
            let f: Integrand = sel.parse().unwrap();
            let lhs = weyl_integrate_lhs(&f, GroupTag::Su2, 200_000, 3, 2).unwrap();
            let rhs = weyl_integrate_rhs(&f, GroupTag::Su2, 200_000, 3, 2).unwrap();
            let tol = 4.0 * lhs.combined_se(&rhs) + 1e-9;
            assert!(
                (lhs.value - rhs.value).abs() < tol,
                "{sel}: lhs {} rhs {} tol {tol}",
                lhs.value,
                rhs.value
            );
        }
    }

    #[test]
    fn rhs_matches_lhs_su3_gaussian() {
        let f: Integrand = "gaussian:1".parse().unwrap();
        let lhs = weyl_integrate_lhs(&f, GroupTag::Su3, 300_000, 5, 2).unwrap();
        let rhs = weyl_integrate_rhs(&f, GroupTag::Su3, 300_000, 5, 2).unwrap();
        let tol = 4.0 * lhs.combined_se(&rhs);
        assert!(
            (lhs.value - rhs.value).abs() < tol,
            "lhs {} rhs {} se {}",
            lhs.value,
            rhs.value,
            lhs.combined_se(&rhs)
        );
        // and the exact value pi^4
        assert!((lhs.value - PI.powi(4)).abs() < 1e-9);
    }

    #[test]
    fn estimates_are_bit_deterministic() {
        let f: Integrand = "cauchygauss:1:1".parse().unwrap();
        let a = weyl_integrate_rhs(&f, GroupTag::Su2, 50_000, 9, 3).unwrap();
        let b = weyl_integrate_rhs(&f, GroupTag::Su2, 50_000, 9, 3).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
        // a different worker split changes the substreams but must stay
        // within statistical agreement
        let c = weyl_integrate_rhs(&f, GroupTag::Su2, 50_000, 9, 1).unwrap();
        assert!((a.value - c.value).abs() < 5.0 * a.combined_se(&c));
    }

    #[test]
    fn dh_su2_density_fits_z_squared() {
        let report = dh_pushforward_su2(300_000, 40, 2.0, 7, 2).unwrap();
        assert!(report.max_rel_dev < 0.08, "dev {}", report.max_rel_dev);
        assert_eq!(report.lowest_count_bin, 0);
        assert!(report.populated_bins > 30);
        // exact radial density: counts are n (hi^3 - lo^3) / R^3, so the
        // fitted constant must equal n / R^3
        let exact_c = 300_000.0 / 8.0;
        assert!(
            (report.fit_constant - exact_c).abs() / exact_c < 1e-3,
            "fit {} vs exact {exact_c}",
            report.fit_constant
        );
        // bit determinism
        let again = dh_pushforward_su2(300_000, 40, 2.0, 7, 2).unwrap();
        assert_eq!(report.fit_constant.to_bits(), again.fit_constant.to_bits());
    }

    #[test]
    fn dh_su3_log_density_tracks_v_squared() {
        let report = dh_pushforward_su3(400_000, 14, 2.0, 7, 2, 100).unwrap();
        assert!(
            report.log_correlation > 0.95,
            "correlation {} over {} cells",
            report.log_correlation,
            report.cells_used
        );
        assert!(report.cells_used >= 8);
    }

    #[test]
    fn torus_eigenvalues_recover_diagonal() {
        // coordinates purely along the torus directions give back the
        // diagonal entries
        let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
        let inv_sqrt6 = 1.0 / 6f64.sqrt();
        // want a = (3, -1, -2): t1/sqrt2*(1,-1,0) + t2/sqrt6*(1,1,-2) = a
        // => t1 = 2 sqrt2, t2 = sqrt6
        let mut coords = [0.0; 8];
        coords[6] = 2.0 / inv_sqrt2 / 2.0; // 2 sqrt2 / 2 ... set directly below
        coords[6] = 2.0 * (2.0f64).sqrt();
        coords[7] = 6.0f64.sqrt();
        let _ = (inv_sqrt2, inv_sqrt6);
        let a = torus_eigenvalues(&coords);
        assert!((a[0] - 3.0).abs() < 1e-9, "{a:?}");
        assert!((a[1] + 1.0).abs() < 1e-9, "{a:?}");
        assert!((a[2] + 2.0).abs() < 1e-9, "{a:?}");
    }
}

#[cfg(test)]
mod weyl_invariance_tests {
    use super::*;
    use haar::{conjugate_torus_element, haar_su3, stream_rng};

    /// Relabeling the torus point by a Weyl element (an eigenvalue
    /// permutation, for su(3)) must leave the inner Haar average
    /// statistically unchanged; the squared-volume factor is exactly
    /// invariant as a polynomial, which the volume module already checks.
    #[test]
    fn inner_haar_mean_is_weyl_invariant() {
        let f: Integrand = "polygauss:1:1".parse().unwrap();
        let a = [0.7f64, -0.2, -0.5];
        let w_a = [a[1], a[0], a[2]]; // simple-reflection relabeling
        let norm2: f64 = a.iter().map(|x| x * x).sum();
        let mean = |triple: [f64; 3], stream: u64| -> (f64, f64) {
            let mut rng = stream_rng(GroupTag::Su3, 99, stream);
            let m = 40_000;
            let mut sum = 0.0;
            let mut sumsq = 0.0;
            for _ in 0..m {
                let u = haar_su3(&mut rng);
                let x = conjugate_torus_element(&u, triple);
                let x1 = std::f64::consts::SQRT_2 * x[0][1].re;
                let v = f.eval(norm2, x1);
                sum += v;
                sumsq += v * v;
            }
            let mean = sum / m as f64;
            let var = (sumsq - sum * sum / m as f64) / (m as f64 - 1.0);
            (mean, (var / m as f64).sqrt())
        };
        let (m1, se1) = mean(a, 0);
        let (m2, se2) = mean(w_a, 1);
        let tol = 3.0 * (se1 * se1 + se2 * se2).sqrt();
        assert!((m1 - m2).abs() < tol, "{m1} vs {m2} (tol {tol})");
    }
}
