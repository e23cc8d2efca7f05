//! Normalized homogeneous coordinates on complex projective spaces.
//!
//! Every point is stored by a canonical representative: unit Euclidean norm,
//! with the coordinate of largest modulus rotated to be real and positive
//! (ties broken by lowest index). This makes equality, hashing and file
//! output deterministic. The metric is the Fubini-Study sine ("chordal")
//! distance, which is bounded by 1 and chart-free.

use crate::error::{Error, Result};
use num_complex::Complex64;

pub type C64 = Complex64;

/// Hermitian inner product sum_i a_i conj(b_i).
pub fn hdot<const N: usize>(a: &[C64; N], b: &[C64; N]) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for i in 0..N {
        s += a[i] * b[i].conj();
    }
    s
}

pub fn norm<const N: usize>(a: &[C64; N]) -> f64 {
    hdot(a, a).re.sqrt()
}

fn scrub_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Canonical representative of the projective class of `v`, or `None` for
/// the zero vector. Idempotent bit for bit: an already canonical vector is
/// returned unchanged.
pub fn normalize<const N: usize>(v: &[C64; N]) -> Option<[C64; N]> {
    let n = norm(v);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    // Largest-modulus coordinate, lowest index on ties.
    let mut best = 0;
    let mut best_sq = 0.0f64;
    for (i, z) in v.iter().enumerate() {
        let m = z.norm_sqr();
        if m > best_sq {
            best_sq = m;
            best = i;
        }
    }
    let pivot = v[best];
    if pivot.im == 0.0 && pivot.re > 0.0 && (hdot(v, v).re - 1.0).abs() <= 32.0 * f64::EPSILON {
        return Some(*v);
    }
    let phase = pivot.conj() / pivot.norm();
    let mut out = [C64::new(0.0, 0.0); N];
    for i in 0..N {
        let w = v[i] * phase / n;
        out[i] = C64::new(scrub_zero(w.re), scrub_zero(w.im));
    }
    // The pivot must come out exactly real positive.
    out[best] = C64::new(out[best].re.abs(), 0.0);
    Some(out)
}

/// Fubini-Study sine distance between the projective classes of `a`, `b`.
///
/// For nearby points 1 - |<a, b>|^2 cancels catastrophically, so the
/// distance is rebuilt there from the explicitly aligned difference vector
/// (accurate down to machine precision).
pub fn chordal<const N: usize>(a: &[C64; N], b: &[C64; N]) -> f64 {
    let na = hdot(a, a).re.sqrt();
    let nb = hdot(b, b).re.sqrt();
    if na == 0.0 || nb == 0.0 {
        return 1.0;
    }
    let c = hdot(a, b) / (na * nb);
    let m2 = c.norm_sqr();
    if m2 < 0.5 {
        return (1.0 - m2).max(0.0).sqrt();
    }
    // sin(theta/2) from the phase-aligned difference, then sin(theta).
    let phase = c.conj() / m2.sqrt();
    let mut diff2 = 0.0;
    for i in 0..N {
        diff2 += (a[i] * phase / na - b[i] / nb).norm_sqr();
    }
    let s_half2 = (diff2 / 4.0).min(1.0);
    2.0 * s_half2.sqrt() * (1.0 - s_half2).max(0.0).sqrt()
}

/// A point of CP^{N-1} held by its canonical unit representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjPoint<const N: usize> {
    coords: [C64; N],
}

pub type PointCp1 = ProjPoint<2>;
pub type PointCp3 = ProjPoint<4>;
pub type PointCp4 = ProjPoint<5>;

impl<const N: usize> ProjPoint<N> {
    pub fn new(v: [C64; N]) -> Result<Self> {
        let coords = normalize(&v).ok_or(Error::ZeroVector)?;
        Ok(ProjPoint { coords })
    }

    /// Canonical unit representative.
    pub fn coords(&self) -> &[C64; N] {
        &self.coords
    }

    pub fn chordal(&self, other: &Self) -> f64 {
        chordal(&self.coords, &other.coords)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.chordal(other) < tol
    }

    /// i-th standard basis point.
    pub fn basis(i: usize) -> Self {
        let mut v = [C64::new(0.0, 0.0); N];
        v[i] = C64::new(1.0, 0.0);
        ProjPoint { coords: v }
    }
}

impl PointCp1 {
    /// Point with affine coordinate `z` in the chart [z : 1].
    pub fn from_affine(z: C64) -> Self {
        ProjPoint::new([z, C64::new(1.0, 0.0)]).expect("finite affine coordinate")
    }

    pub fn infinity() -> Self {
        ProjPoint::basis(0)
    }

    /// Affine coordinate z1/z2, or `None` at infinity (within `tol` of it).
    pub fn affine(&self, tol: f64) -> Option<C64> {
        let [z1, z2] = *self.coords();
        if z2.norm() <= tol {
            None
        } else {
            Some(z1 / z2)
        }
    }
}
