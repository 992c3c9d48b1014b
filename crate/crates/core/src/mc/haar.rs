//! Deterministic Haar sampling on SU(2), SO(3), and SU(3).
//!
//! Every sampler is a pure function of (group tag, seed, stream index):
//! the stream is a ChaCha8 generator keyed from those values, so identical
//! inputs reproduce identical samples on any platform.

use std::f64::consts::PI;
use std::str::FromStr;

use num_complex::Complex64;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Error;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupTag {
    Su2,
    So3,
    Su3,
}

impl GroupTag {
    /// Dimension of the Lie algebra (the ambient integration space).
    pub fn algebra_dim(self) -> usize {
        match self {
            GroupTag::Su2 | GroupTag::So3 => 3,
            GroupTag::Su3 => 8,
        }
    }

    /// Rank of the maximal torus.
    pub fn rank(self) -> usize {
        match self {
            GroupTag::Su2 | GroupTag::So3 => 1,
            GroupTag::Su3 => 2,
        }
    }

    pub fn weyl_order(self) -> usize {
        match self {
            GroupTag::Su2 | GroupTag::So3 => 2,
            GroupTag::Su3 => 6,
        }
    }
}

impl FromStr for GroupTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "su2" => Ok(GroupTag::Su2),
            "so3" => Ok(GroupTag::So3),
            "su3" => Ok(GroupTag::Su3),
            _ => Err(Error::Usage(format!(
                "unknown sampling group `{s}` (expected su2, so3, su3)"
            ))),
        }
    }
}

impl std::fmt::Display for GroupTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            GroupTag::Su2 => "su2",
            GroupTag::So3 => "so3",
            GroupTag::Su3 => "su3",
        };
        write!(f, "{s}")
    }
}

/// ChaCha8 stream keyed by (tag, seed, stream).
pub fn stream_rng(tag: GroupTag, seed: u64, stream: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(b"weylhaar");
    key[8] = match tag {
        GroupTag::Su2 => 1,
        GroupTag::So3 => 2,
        GroupTag::Su3 => 3,
    };
    key[16..24].copy_from_slice(&seed.to_le_bytes());
    key[24..32].copy_from_slice(&stream.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Uniform f64 in [0, 1) built from the top 53 bits of a u64.
pub fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Standard normal pair by Box-Muller.
pub fn normal_pair(rng: &mut ChaCha8Rng) -> (f64, f64) {
    let mut u1 = uniform(rng);
    while u1 == 0.0 {
        u1 = uniform(rng);
    }
    let u2 = uniform(rng);
    let r = (-2.0 * u1.ln()).sqrt();
    let t = 2.0 * PI * u2;
    (r * t.cos(), r * t.sin())
}

pub fn normal(rng: &mut ChaCha8Rng) -> f64 {
    normal_pair(rng).0
}

/// Haar-uniform unit quaternion.
pub fn unit_quaternion(rng: &mut ChaCha8Rng) -> [f64; 4] {
    loop {
        let (a, b) = normal_pair(rng);
        let (c, d) = normal_pair(rng);
        let n = (a * a + b * b + c * c + d * d).sqrt();
        if n > 1e-12 {
            return [a / n, b / n, c / n, d / n];
        }
    }
}

/// Rotation matrix of a unit quaternion. For SU(2) this is the adjoint
/// representation; for SO(3) it is a Haar sample of the group itself
/// (which is again its own adjoint).
pub fn quaternion_to_rotation(q: [f64; 4]) -> [[f64; 3]; 3] {
    let [w, x, y, z] = q;
    [
        [
            1.0 - 2.0 * (y * y + z * z),
            2.0 * (x * y - w * z),
            2.0 * (x * z + w * y),
        ],
        [
            2.0 * (x * y + w * z),
            1.0 - 2.0 * (x * x + z * z),
            2.0 * (y * z - w * x),
        ],
        [
            2.0 * (x * z - w * y),
            2.0 * (y * z + w * x),
            1.0 - 2.0 * (x * x + y * y),
        ],
    ]
}

pub fn haar_rotation(rng: &mut ChaCha8Rng) -> [[f64; 3]; 3] {
    quaternion_to_rotation(unit_quaternion(rng))
}

pub type CMat3 = [[Complex64; 3]; 3];

/// Haar-uniform SU(3) element: Gram-Schmidt of a complex Ginibre matrix
/// with the phase convention that makes the factorization unique, then a
/// global phase fix to land in the determinant-one slice.
pub fn haar_su3(rng: &mut ChaCha8Rng) -> CMat3 {
    // complex Ginibre
    let mut g = [[Complex64::new(0.0, 0.0); 3]; 3];
    for row in &mut g {
        for entry in row {
            let (re, im) = normal_pair(rng);
            *entry = Complex64::new(re, im);
        }
    }
    // Gram-Schmidt on columns with positive-real diagonal of R
    let mut q = g;
    for j in 0..3 {
        for k in 0..j {
            let mut dot = Complex64::new(0.0, 0.0);
            for i in 0..3 {
                dot += q[i][k].conj() * q[i][j];
            }
            for i in 0..3 {
                let sub = dot * q[i][k];
                q[i][j] -= sub;
            }
        }
        let mut norm = 0.0;
        for i in 0..3 {
            norm += q[i][j].norm_sqr();
        }
        let norm = norm.sqrt();
        for i in 0..3 {
            q[i][j] /= norm;
        }
        // phase correction: rotate the column so the pivot entry is real
        // positive (makes QR unique, hence Q Haar on U(3))
        let pivot = q[j][j];
        let phase = pivot / pivot.norm();
        for i in 0..3 {
            q[i][j] /= phase;
        }
    }
    // det(q) is now a phase; divide by its cube root to reach SU(3)
    let det = det3(&q);
    let cube_root = Complex64::from_polar(1.0, det.arg() / 3.0);
    for row in &mut q {
        for entry in row {
            *entry /= cube_root;
        }
    }
    q
}

pub fn det3(m: &CMat3) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat_mul3(a: &CMat3, b: &CMat3) -> CMat3 {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

pub fn dagger3(m: &CMat3) -> CMat3 {
    let mut out = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = m[j][i].conj();
        }
    }
    out
}

/// `U diag(i a) U^dagger` for a real triple `a`.
pub fn conjugate_torus_element(u: &CMat3, a: [f64; 3]) -> CMat3 {
    let mut y = [[Complex64::new(0.0, 0.0); 3]; 3];
    for (j, aj) in a.iter().enumerate() {
        y[j][j] = Complex64::new(0.0, *aj);
    }
    mat_mul3(&mat_mul3(u, &y), &dagger3(u))
}

/// Operator-norm distance from unitarity, `max |(U U* - I)_{ij}|`.
pub fn unitarity_defect(u: &CMat3) -> f64 {
    let p = mat_mul3(u, &dagger3(u));
    let mut worst: f64 = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let target = if i == j {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((p[i][j] - target).norm());
        }
    }
    worst
}
