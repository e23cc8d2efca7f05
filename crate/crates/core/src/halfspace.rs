//! Upper half-space model of H^3, the Poincare extension of the Mobius
//! action, and the quotient map delta from the quadric to H^3 union CP^1.
//!
//! delta collapses the right SU(2) symmetry of the matrix chart: on Theta
//! it sends a matrix g to g(j), the quaternionic evaluation at the base
//! point j = (0, 1); on the z3 = 0 surface it keeps the first splitting
//! factor, which is the boundary limit of the chart values.

use crate::error::Result;
use crate::proj::{C64, PointCp1};
use crate::quadric::{q2_split, QuadricPoint};
use crate::rep::theta_extract;
use crate::sl2::{mobius_apply, Mat2};
use crate::tol::Tolerances;

/// A point of H^3 union its boundary CP^1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HPoint {
    /// (z, t) with t > 0 in the upper half-space model.
    Interior { z: C64, t: f64 },
    Boundary(PointCp1),
}

impl HPoint {
    pub fn base() -> Self {
        HPoint::Interior {
            z: C64::new(0.0, 0.0),
            t: 1.0,
        }
    }
}

/// Poincare extension of g to the half-space, by quaternion arithmetic on
/// w = z + t j; boundary points transform by the Mobius action.
pub fn poincare_apply(g: &Mat2, p: &HPoint) -> HPoint {
    match p {
        HPoint::Boundary(x) => HPoint::Boundary(mobius_apply(g, x)),
        HPoint::Interior { z, t } => {
            let cz_d = g.c * z + g.d;
            let den = cz_d.norm_sqr() + g.c.norm_sqr() * t * t;
            if den < 1e-300 {
                // The pole of g; its extension sends it to the boundary.
                return HPoint::Boundary(mobius_apply(g, &PointCp1::from_affine(*z)));
            }
            let az_b = g.a * z + g.b;
            let znew = (az_b * cz_d.conj() + g.a * g.c.conj() * (t * t)) / den;
            HPoint::Interior {
                z: znew,
                t: t / den,
            }
        }
    }
}

/// The SU(2)-quotient map Q3 -> H^3 union CP^1.
pub fn delta_map(x: &QuadricPoint, tol: &Tolerances) -> HPoint {
    if x.in_theta(tol) {
        let m = theta_extract(x, tol).expect("Theta point has a matrix chart");
        poincare_apply(&m, &HPoint::base())
    } else {
        let (first, _) = q2_split(x, tol).expect("non-Theta points lie on the slice");
        HPoint::Boundary(first)
    }
}

/// Fallible variant used where the input may be slightly off the quadric.
pub fn delta_map_checked(x: &QuadricPoint, tol: &Tolerances) -> Result<HPoint> {
    if x.in_theta(tol) {
        let m = theta_extract(x, tol)?;
        Ok(poincare_apply(&m, &HPoint::base()))
    } else {
        let (first, _) = q2_split(x, tol)?;
        Ok(HPoint::Boundary(first))
    }
}

/// Euclidean coordinates of the closed-ball model; the closure metric used
/// for convergence tests and margins is the Euclidean distance here.
pub fn ball_coords(p: &HPoint) -> [f64; 3] {
    match p {
        HPoint::Interior { z, t } => {
            let den = z.norm_sqr() + (t + 1.0) * (t + 1.0);
            [
                -2.0 * z.re / den,
                -2.0 * z.im / den,
                (z.norm_sqr() + t * t - 1.0) / den,
            ]
        }
        HPoint::Boundary(x) => {
            let [w1, w2] = *x.coords();
            let den = w1.norm_sqr() + w2.norm_sqr();
            let b = w1 * w2.conj() * (-2.0 / den);
            [b.re, b.im, (w1.norm_sqr() - w2.norm_sqr()) / den]
        }
    }
}

/// Distance in the closed-ball compactification.
pub fn closure_dist(a: &HPoint, b: &HPoint) -> f64 {
    let pa = ball_coords(a);
    let pb = ball_coords(b);
    ((pa[0] - pb[0]).powi(2) + (pa[1] - pb[1]).powi(2) + (pa[2] - pb[2]).powi(2)).sqrt()
}
