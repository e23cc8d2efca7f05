//! Complex 2x2 matrices, the Mobius action on CP^1, trace classification
//! and a closed-form singular value decomposition with special-unitary
//! outer factors.

use crate::error::{Error, Result};
use crate::proj::{C64, PointCp1};
use crate::tol::Tolerances;

/// A complex 2x2 matrix, the carrier of SL(2, C) elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub a: C64,
    pub b: C64,
    pub c: C64,
    pub d: C64,
}

impl Mat2 {
    pub const fn new(a: C64, b: C64, c: C64, d: C64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Self {
        Mat2::diag(C64::new(1.0, 0.0), C64::new(1.0, 0.0))
    }

    pub fn diag(a: C64, d: C64) -> Self {
        Mat2::new(a, C64::new(0.0, 0.0), C64::new(0.0, 0.0), d)
    }

    /// Real matrix from four entries, row major.
    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2::new(
            C64::new(a, 0.0),
            C64::new(b, 0.0),
            C64::new(c, 0.0),
            C64::new(d, 0.0),
        )
    }

    pub fn det(&self) -> C64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> C64 {
        self.a + self.d
    }

    /// Adjugate; equals the inverse for unimodular matrices.
    pub fn adjugate(&self) -> Self {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn inverse(&self) -> Self {
        let det = self.det();
        let adj = self.adjugate();
        Mat2::new(adj.a / det, adj.b / det, adj.c / det, adj.d / det)
    }

    pub fn transpose(&self) -> Self {
        Mat2::new(self.a, self.c, self.b, self.d)
    }

    pub fn conj_transpose(&self) -> Self {
        Mat2::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn scale(&self, s: C64) -> Self {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    pub fn frobenius(&self) -> f64 {
        (self.a.norm_sqr() + self.b.norm_sqr() + self.c.norm_sqr() + self.d.norm_sqr()).sqrt()
    }

    /// Largest singular value.
    pub fn op_norm(&self) -> f64 {
        let h11 = self.a.norm_sqr() + self.c.norm_sqr();
        let h22 = self.b.norm_sqr() + self.d.norm_sqr();
        let h12 = self.a.conj() * self.b + self.c.conj() * self.d;
        let t = h11 + h22;
        let disc = ((h11 - h22) * (h11 - h22) / 4.0 + h12.norm_sqr()).max(0.0);
        ((t / 2.0) + disc.sqrt()).max(0.0).sqrt()
    }

    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).frobenius()
    }

    /// |det - 1| defect of the unimodularity constraint.
    pub fn sl2_defect(&self) -> f64 {
        (self.det() - C64::new(1.0, 0.0)).norm()
    }

    /// Unimodularity check. The allowance grows with |a d| + |b c| because
    /// det = a d - b c cancels catastrophically for large entries (long word
    /// products are exactly unimodular in exact arithmetic but carry a
    /// rounding residue proportional to the products).
    pub fn check_sl2(&self, tol: f64) -> Result<()> {
        let defect = self.sl2_defect();
        let scale = self.a.norm() * self.d.norm() + self.b.norm() * self.c.norm();
        let allow = tol.max(1e3 * f64::EPSILON * scale.max(1.0));
        if defect <= allow {
            Ok(())
        } else {
            Err(Error::NotUnimodular { defect })
        }
    }

    /// Distance to the identity in Frobenius norm.
    pub fn dist_identity(&self) -> f64 {
        self.dist(&Mat2::identity())
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        Mat2::new(
            self.a * rhs.a + self.b * rhs.c,
            self.a * rhs.b + self.b * rhs.d,
            self.c * rhs.a + self.d * rhs.c,
            self.c * rhs.b + self.d * rhs.d,
        )
    }
}

impl std::ops::Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        Mat2::new(self.a - rhs.a, self.b - rhs.b, self.c - rhs.c, self.d - rhs.d)
    }
}

impl std::ops::Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        self.scale(C64::new(-1.0, 0.0))
    }
}

/// Homogeneous Mobius action on CP^1.
pub fn mobius_apply(g: &Mat2, x: &PointCp1) -> PointCp1 {
    let [x1, x2] = *x.coords();
    PointCp1::new([g.a * x1 + g.b * x2, g.c * x1 + g.d * x2])
        .expect("nonsingular matrix maps nonzero vectors to nonzero vectors")
}

/// Trace classification of an SL(2, C) element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MobiusClass {
    Identity,
    Elliptic,
    Parabolic,
    Loxodromic,
}

/// Classification outcome: class, fixed points on CP^1 and the translation
/// length surrogate log |larger eigenvalue| (zero unless loxodromic).
#[derive(Debug, Clone)]
pub struct ElementClass {
    pub class: MobiusClass,
    pub fixed: Vec<PointCp1>,
    pub tau_len: f64,
}

/// Eigenvalues of an SL(2, C) matrix, larger modulus first.
pub fn eigenvalues(g: &Mat2) -> (C64, C64) {
    let half_tr = g.trace() / 2.0;
    let disc = (half_tr * half_tr - g.det()).sqrt();
    let l1 = half_tr + disc;
    let l2 = half_tr - disc;
    if l1.norm() >= l2.norm() {
        (l1, l2)
    } else {
        (l2, l1)
    }
}

fn eigenvector(g: &Mat2, lambda: C64) -> PointCp1 {
    // Rows of g - lambda I annihilate the eigenvector; pick the better one.
    let r1 = (g.a - lambda, g.b);
    let r2 = (g.c, g.d - lambda);
    let n1 = r1.0.norm_sqr() + r1.1.norm_sqr();
    let n2 = r2.0.norm_sqr() + r2.1.norm_sqr();
    let v = if n1 >= n2 {
        [r1.1, -r1.0]
    } else {
        [r2.1, -r2.0]
    };
    PointCp1::new(v).unwrap_or_else(|_| PointCp1::basis(0))
}

const CLASSIFY_EPS: f64 = 1e-12;

pub fn classify_element(g: &Mat2) -> ElementClass {
    let id_dist = g.dist_identity().min((-*g).dist_identity());
    if id_dist <= CLASSIFY_EPS {
        return ElementClass {
            class: MobiusClass::Identity,
            fixed: vec![],
            tau_len: 0.0,
        };
    }
    let tr = g.trace();
    let (l1, l2) = eigenvalues(g);
    let tau = l1.norm().ln().max(0.0);
    if tau > CLASSIFY_EPS {
        return ElementClass {
            class: MobiusClass::Loxodromic,
            fixed: vec![eigenvector(g, l1), eigenvector(g, l2)],
            tau_len: tau,
        };
    }
    // |eigenvalues| = 1: parabolic iff trace = +-2 (single fixed point).
    if (tr - C64::new(2.0, 0.0)).norm() <= CLASSIFY_EPS
        || (tr + C64::new(2.0, 0.0)).norm() <= CLASSIFY_EPS
    {
        ElementClass {
            class: MobiusClass::Parabolic,
            fixed: vec![eigenvector(g, l1)],
            tau_len: 0.0,
        }
    } else {
        ElementClass {
            class: MobiusClass::Elliptic,
            fixed: vec![eigenvector(g, l1), eigenvector(g, l2)],
            tau_len: 0.0,
        }
    }
}

/// Attracting fixed point of a loxodromic element.
pub fn attracting_fixed_point(g: &Mat2) -> Option<PointCp1> {
    let cls = classify_element(g);
    if cls.class == MobiusClass::Loxodromic {
        Some(cls.fixed[0])
    } else {
        None
    }
}

/// g = k1 diag(e^sigma, e^-sigma) k2 with k1, k2 in SU(2), sigma >= 0.
#[derive(Debug, Clone, Copy)]
pub struct Svd2 {
    pub k1: Mat2,
    pub sigma: f64,
    pub k2: Mat2,
}

impl Svd2 {
    pub fn reconstruct(&self) -> Mat2 {
        self.k1 * Mat2::diag(C64::new(self.sigma.exp(), 0.0), C64::new((-self.sigma).exp(), 0.0))
            * self.k2
    }
}

/// Closed-form SVD of an SL(2, C) matrix through the eigendecomposition of
/// g* g; no iteration. The unimodularity of g forces the singular values
/// into the reciprocal pair (e^sigma, e^-sigma) and lets both outer factors
/// be chosen in SU(2).
pub fn svd2(g: &Mat2) -> Result<Svd2> {
    g.check_sl2(1e-9)?;
    let gs = g.conj_transpose();
    let h = gs * *g; // Hermitian, positive definite, det = 1.
    let h11 = h.a.re;
    let h22 = h.d.re;
    let h12 = h.b;
    let t = h11 + h22;
    let disc = ((t * t) / 4.0 - 1.0).max(0.0).sqrt();
    let s_plus = t / 2.0 + disc; // larger eigenvalue of g* g = e^{2 sigma}
    let sigma = 0.5 * s_plus.max(1.0).ln();
    if sigma <= 1e-15 {
        // g is (numerically) special unitary already.
        return Ok(Svd2 {
            k1: *g,
            sigma: 0.0,
            k2: Mat2::identity(),
        });
    }
    // Eigenvector of h for s_plus; two alternative formulas, pick the
    // better-conditioned row.
    let c1 = [h12, C64::new(s_plus - h11, 0.0)];
    let c2 = [C64::new(s_plus - h22, 0.0), h12.conj()];
    let n1 = c1[0].norm_sqr() + c1[1].norm_sqr();
    let n2 = c2[0].norm_sqr() + c2[1].norm_sqr();
    let v = if n1 >= n2 { c1 } else { c2 };
    let vn = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
    let (va, vb) = (v[0] / vn, v[1] / vn);
    // V = [v | v_perp] is special unitary by construction.
    let v_mat = Mat2::new(va, -vb.conj(), vb, va.conj());
    // First column of U: g v e^{-sigma}, which is well conditioned at any
    // sigma. The second column must not come from g V Sigma^{-1} (that
    // amplifies eigenvector rounding by e^{2 sigma}); det U = 1 forces it
    // to be the special-unitary completion of the first.
    let e_sig = sigma.exp();
    let u1 = [
        (g.a * va + g.b * vb) / e_sig,
        (g.c * va + g.d * vb) / e_sig,
    ];
    let un = (u1[0].norm_sqr() + u1[1].norm_sqr()).sqrt();
    let (ua, uc) = (u1[0] / un, u1[1] / un);
    let u = Mat2::new(ua, -uc.conj(), uc, ua.conj());
    Ok(Svd2 {
        k1: u,
        sigma,
        k2: v_mat.conj_transpose(),
    })
}

/// Log singular value spread; the displacement d(g, I) in the symmetric
/// space of SL(2, C) equals 2 sigma.
pub fn displacement(g: &Mat2) -> Result<f64> {
    Ok(2.0 * svd2(g)?.sigma)
}

/// Validated SL(2, C) wrapper for group-element input.
pub fn require_sl2(g: Mat2, tol: &Tolerances) -> Result<Mat2> {
    g.check_sl2(tol.quadric_membership.max(1e-9))?;
    Ok(g)
}
