//! Circles on CP^1 as Hermitian 2x2 forms, with exact Mobius transport by
//! congruence and the spherical-cap geometry used for disjointness margins.
//!
//! A circle is the zero set of val(z) = A |z|^2 + 2 Re(B conj(z)) + D with
//! A, D real and det = A D - |B|^2 < 0. The chosen side (sign s with
//! interior = { s val < 0 }) travels with the circle under transport. The
//! same form evaluated at (z, t) with |z|^2 replaced by |z|^2 + t^2 cuts
//! out the hemisphere over the circle, which is how half-spaces of
//! H^3 union CP^1 are represented.

use crate::halfspace::HPoint;
use crate::proj::{C64, PointCp1};
use crate::sl2::Mat2;

#[derive(Debug, Clone, Copy)]
pub struct Circle {
    pub a: f64,
    pub b: C64,
    pub d: f64,
    /// +1 when the interior is { val < 0 }, -1 when it is { val > 0 }.
    pub side: f64,
}

impl Circle {
    pub fn from_center_radius(center: C64, radius: f64, inside: bool) -> Self {
        assert!(radius > 0.0, "degenerate circle");
        Circle {
            a: 1.0,
            b: -center,
            d: center.norm_sqr() - radius * radius,
            side: if inside { 1.0 } else { -1.0 },
        }
        .canonical()
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b.norm_sqr()
    }

    /// Scale so det = -1, with A >= 0 (sign pushed into `side`).
    pub fn canonical(&self) -> Circle {
        let det = self.det();
        debug_assert!(det < 0.0, "not a genuine circle (det = {det})");
        let s = (-det).sqrt();
        let mut c = Circle {
            a: self.a / s,
            b: self.b / s,
            d: self.d / s,
            side: self.side,
        };
        let flip = if c.a != 0.0 {
            c.a < 0.0
        } else {
            c.d < 0.0
        };
        if flip {
            c = Circle {
                a: -c.a,
                b: -c.b,
                d: -c.d,
                side: -c.side,
            };
        }
        c
    }

    /// Homogeneous evaluation at [p1 : p2]; the affine value scaled by
    /// |p2|^2, so only the sign and zero set are meaningful.
    pub fn eval_point(&self, p: &PointCp1) -> f64 {
        let [p1, p2] = *p.coords();
        self.a * p1.norm_sqr() + 2.0 * (self.b * p1.conj() * p2).re + self.d * p2.norm_sqr()
    }

    pub fn eval_affine(&self, z: C64) -> f64 {
        self.a * z.norm_sqr() + 2.0 * (self.b * z.conj()).re + self.d
    }

    /// Hemisphere form at an upper half-space point.
    pub fn eval_h3(&self, z: C64, t: f64) -> f64 {
        self.a * (z.norm_sqr() + t * t) + 2.0 * (self.b * z.conj()).re + self.d
    }

    pub fn eval_hpoint(&self, p: &HPoint) -> f64 {
        match p {
            HPoint::Interior { z, t } => self.eval_h3(*z, *t),
            HPoint::Boundary(x) => self.eval_point(x),
        }
    }

    /// Interior membership of a boundary point.
    pub fn contains(&self, p: &PointCp1) -> bool {
        self.side * self.eval_point(p) < 0.0
    }

    /// Interior membership in the closed half-space sense, with margin.
    pub fn halfspace_value(&self, p: &HPoint) -> f64 {
        self.side * self.eval_hpoint(p)
    }

    /// Exact transport: the image circle under the Mobius map of `g`, with
    /// the carried side (g maps our interior onto the image interior).
    pub fn transport(&self, g: &Mat2) -> Circle {
        let k = g.adjugate(); // g^{-1} for unimodular g
        // H' = k^* H k.
        let h11 = C64::new(self.a, 0.0);
        let h12 = self.b;
        let h21 = self.b.conj();
        let h22 = C64::new(self.d, 0.0);
        // Columns of k.
        let (k11, k12, k21, k22) = (k.a, k.b, k.c, k.d);
        // M = H k.
        let m11 = h11 * k11 + h12 * k21;
        let m12 = h11 * k12 + h12 * k22;
        let m21 = h21 * k11 + h22 * k21;
        let m22 = h21 * k12 + h22 * k22;
        // H' = k^* M.
        let a = (k11.conj() * m11 + k21.conj() * m21).re;
        let b = k11.conj() * m12 + k21.conj() * m22;
        let d = (k12.conj() * m12 + k22.conj() * m22).re;
        Circle {
            a,
            b,
            d,
            side: self.side,
        }
        .canonical()
    }

    /// Same circle with the same chosen side.
    pub fn approx_eq(&self, other: &Circle, tol: f64) -> bool {
        let x = self.canonical();
        let y = other.canonical();
        let mdist = ((x.a - y.a).powi(2) + (x.b - y.b).norm_sqr() + (x.d - y.d).powi(2)).sqrt();
        mdist <= tol && x.side == y.side
    }

    /// Spherical cap of the interior: (unit pole, angular radius).
    pub fn cap(&self) -> ([f64; 3], f64) {
        let c = self.canonical();
        let v = [c.b.re, c.b.im, (c.a - c.d) / 2.0];
        let vn = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let c0 = (c.a + c.d) / 2.0;
        let pole = [
            -c.side * v[0] / vn,
            -c.side * v[1] / vn,
            -c.side * v[2] / vn,
        ];
        let radius = (c.side * c0 / vn).clamp(-1.0, 1.0).acos();
        (pole, radius)
    }

    /// Point of CP^1 from a unit vector on the sphere.
    pub fn sphere_to_cp1(n: [f64; 3]) -> PointCp1 {
        // n = (2 Re z, 2 Im z, |z|^2 - 1) / (|z|^2 + 1).
        if n[2] > 0.0 {
            // z = (1 + n3) / (n1 - i n2), well conditioned near infinity.
            PointCp1::new([C64::new(1.0 + n[2], 0.0), C64::new(n[0], -n[1])]).unwrap()
        } else {
            PointCp1::new([C64::new(n[0], n[1]), C64::new(1.0 - n[2], 0.0)]).unwrap()
        }
    }
}

fn sphere_angle(u: &[f64; 3], v: &[f64; 3]) -> f64 {
    let dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    dot.clamp(-1.0, 1.0).acos()
}

/// Chordal gap between the closed interiors of two circles: positive iff
/// the closures are disjoint. Measured as the Fubini-Study sine of half
/// the angular gap between the spherical caps.
pub fn chordal_gap(c1: &Circle, c2: &Circle) -> f64 {
    let (p1, r1) = c1.cap();
    let (p2, r2) = c2.cap();
    let gap = sphere_angle(&p1, &p2) - r1 - r2;
    if gap <= 0.0 {
        gap / 2.0 // negative sentinel proportional to the overlap angle
    } else {
        (gap.min(std::f64::consts::PI) / 2.0).sin()
    }
}

/// A witness point inside both caps when they overlap (used to report
/// failing ping-pong configurations).
pub fn overlap_witness(c1: &Circle, c2: &Circle) -> Option<PointCp1> {
    let (p1, r1) = c1.cap();
    let (p2, r2) = c2.cap();
    let ang = sphere_angle(&p1, &p2);
    if ang - r1 - r2 > 0.0 {
        return None;
    }
    // Walk from pole 1 toward pole 2 to the balance angle.
    let t = if ang > 1e-12 {
        ((ang + r1 - r2) / 2.0).clamp(0.0, ang) / ang
    } else {
        0.0
    };
    let mut dir = [
        p1[0] + t * (p2[0] - p1[0]),
        p1[1] + t * (p2[1] - p1[1]),
        p1[2] + t * (p2[2] - p1[2]),
    ];
    let n = (dir[0] * dir[0] + dir[1] * dir[1] + dir[2] * dir[2]).sqrt();
    if n < 1e-12 {
        dir = p1;
    } else {
        for x in dir.iter_mut() {
            *x /= n;
        }
    }
    Some(Circle::sphere_to_cp1(dir))
}

/// Deterministic sample of the boundary circle, as CP^1 points.
pub fn boundary_samples(c: &Circle, count: usize) -> Vec<PointCp1> {
    let (pole, radius) = c.cap();
    // Orthonormal frame completing the pole.
    let reference = if pole[0].abs() < 0.9 {
        [1.0, 0.0, 0.0]
    } else {
        [0.0, 1.0, 0.0]
    };
    let mut u = [
        reference[1] * pole[2] - reference[2] * pole[1],
        reference[2] * pole[0] - reference[0] * pole[2],
        reference[0] * pole[1] - reference[1] * pole[0],
    ];
    let un = (u[0] * u[0] + u[1] * u[1] + u[2] * u[2]).sqrt();
    for x in u.iter_mut() {
        *x /= un;
    }
    let v = [
        pole[1] * u[2] - pole[2] * u[1],
        pole[2] * u[0] - pole[0] * u[2],
        pole[0] * u[1] - pole[1] * u[0],
    ];
    (0..count)
        .map(|k| {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / count as f64;
            let (sr, cr) = (radius.sin(), radius.cos());
            let n = [
                cr * pole[0] + sr * (phi.cos() * u[0] + phi.sin() * v[0]),
                cr * pole[1] + sr * (phi.cos() * u[1] + phi.sin() * v[1]),
                cr * pole[2] + sr * (phi.cos() * u[2] + phi.sin() * v[2]),
            ];
            Circle::sphere_to_cp1(n)
        })
        .collect()
}
