//! Seeded random generators for group elements and quadric points. Shared
//! by the dynamical-relation oracle and by the test suites; everything is
//! deterministic given the RNG.

use crate::mat5::Vec5;
use crate::proj::{C64, PointCp1};
use crate::quadric::{self, QuadricPoint};
use crate::sl2::Mat2;
use crate::tol::Tolerances;
use rand::Rng;
use rand_distr::StandardNormal;

pub fn random_c64<R: Rng>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

pub fn random_vec5<R: Rng>(rng: &mut R) -> Vec5 {
    [
        random_c64(rng),
        random_c64(rng),
        random_c64(rng),
        random_c64(rng),
        random_c64(rng),
    ]
}

pub fn random_cp1<R: Rng>(rng: &mut R) -> PointCp1 {
    loop {
        if let Ok(p) = PointCp1::new([random_c64(rng), random_c64(rng)]) {
            return p;
        }
    }
}

/// Haar-ish random SU(2) element.
pub fn random_su2<R: Rng>(rng: &mut R) -> Mat2 {
    loop {
        let a = random_c64(rng);
        let b = random_c64(rng);
        let n = (a.norm_sqr() + b.norm_sqr()).sqrt();
        if n < 1e-6 {
            continue;
        }
        let (a, b) = (a / n, b / n);
        return Mat2::new(a, -b.conj(), b, a.conj());
    }
}

/// Random SL(2, C) element with entries of unit scale.
pub fn random_sl2<R: Rng>(rng: &mut R) -> Mat2 {
    loop {
        let a = random_c64(rng);
        let b = random_c64(rng);
        let c = random_c64(rng);
        if a.norm() < 0.3 {
            continue;
        }
        let d = (C64::new(1.0, 0.0) + b * c) / a;
        return Mat2::new(a, b, c, d);
    }
}

/// Random SL(2, C) element with prescribed singular exponent sigma drawn
/// uniformly from [0, sigma_max].
pub fn random_sl2_sigma<R: Rng>(rng: &mut R, sigma_max: f64) -> Mat2 {
    let sigma: f64 = rng.gen_range(0.0..=sigma_max);
    let k1 = random_su2(rng);
    let k2 = random_su2(rng);
    k1 * Mat2::diag(C64::new(sigma.exp(), 0.0), C64::new((-sigma).exp(), 0.0)) * k2
}

/// Small deformation of the identity: exactly unimodular, with
/// ||u - I|| <= eps in Frobenius norm.
pub fn random_near_identity<R: Rng>(rng: &mut R, eps: f64) -> Mat2 {
    loop {
        let a = C64::new(1.0, 0.0) + random_c64(rng) * eps * 0.25;
        let b = random_c64(rng) * eps * 0.25;
        let c = random_c64(rng) * eps * 0.25;
        let d = (C64::new(1.0, 0.0) + b * c) / a;
        let m = Mat2::new(a, b, c, d);
        if m.dist_identity() <= eps {
            return m;
        }
    }
}

pub fn random_q2_point<R: Rng>(rng: &mut R) -> QuadricPoint {
    quadric::q2_join(&random_cp1(rng), &random_cp1(rng))
}

/// Random quadric point, biased toward the matrix chart Theta.
pub fn random_quadric_point<R: Rng>(rng: &mut R) -> QuadricPoint {
    if rng.gen_bool(0.15) {
        return random_q2_point(rng);
    }
    let m = random_sl2(rng);
    QuadricPoint::from_vec([m.a, m.b, C64::new(1.0, 0.0), m.c, m.d], &Tolerances::default())
        .expect("embedded unimodular matrices lie on the quadric")
}

/// Random point on the light cone of `vertex`, constructed directly from
/// the orthogonality condition (independent of the cone-family frame).
pub fn random_cone_point<R: Rng>(rng: &mut R, vertex: &QuadricPoint) -> QuadricPoint {
    let p = vertex.lift();
    // Reference vector with b(u, p) != 0.
    let mut u = [C64::new(0.0, 0.0); 5];
    let mut best = 0.0;
    for i in 0..5 {
        let mut e = [C64::new(0.0, 0.0); 5];
        e[i] = C64::new(1.0, 0.0);
        let bb = quadric::bilinear_b(&e, &p).norm();
        if bb > best {
            best = bb;
            u = e;
        }
    }
    let into_perp = |x: &Vec5| {
        let s = quadric::bilinear_b(x, &p) / quadric::bilinear_b(&u, &p);
        let mut out = *x;
        for i in 0..5 {
            out[i] -= s * u[i];
        }
        out
    };
    loop {
        let z1 = into_perp(&random_vec5(rng));
        let z2 = into_perp(&random_vec5(rng));
        let q1 = quadric::q_form(&z1);
        let q2 = quadric::q_form(&z2);
        let b12 = quadric::bilinear_b(&z1, &z2);
        if q2.norm() < 1e-9 {
            continue;
        }
        let disc = (b12 * b12 - q1 * q2).sqrt();
        let t = (-b12 + disc) / q2;
        let mut z = z1;
        for i in 0..5 {
            z[i] += t * z2[i];
        }
        let scale = crate::proj::hdot(&z, &z).re;
        if scale < 1e-12 || quadric::q_form(&z).norm() > 1e-10 * scale {
            continue;
        }
        if let Ok(pt) = QuadricPoint::from_vec(z, &Tolerances::default()) {
            return pt;
        }
    }
}

/// Gaussian perturbation of a quadric point at the given radius, projected
/// back onto the quadric.
pub fn perturb_on_quadric<R: Rng>(
    rng: &mut R,
    x: &QuadricPoint,
    radius: f64,
) -> Option<QuadricPoint> {
    let mut v = x.lift();
    let d = random_vec5(rng);
    let dn = crate::proj::norm(&d);
    for i in 0..5 {
        v[i] += d[i] * (radius / dn);
    }
    let z = quadric::project_to_quadric(&v)?;
    QuadricPoint::from_vec(z, &Tolerances::default()).ok()
}
