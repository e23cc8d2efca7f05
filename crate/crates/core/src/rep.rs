//! The representation of SL(2, C) x SL(2, C) on the quadric.
//!
//! A pair (g, h) acts on the matrix chart by M -> g M h^{-1}; fixing z3 and
//! reading [[z1, z2], [z4, z5]] as M extends this action to all of CP^4,
//! which realizes the quotient by {(I, I), (-I, -I)} as SO(4, C) inside
//! PO(5, C). The Cartan split of an image element has axis
//! diag(e^l, e^m, 1, e^-m, e^-l) with exponents l = |sg - sh|, m = sg + sh
//! built from the singular exponents of the two factors; when sg < sh the
//! split needs the orientation-reversing involution M -> adj(M), which
//! exchanges the two CP^1 factors of the z3 = 0 surface.

use crate::error::{Error, Result};
use crate::mat5::{Mat4, Mat5, Vec5};
use crate::proj::{self, C64, PointCp3};
use crate::quadric::{self, LightGeodesic, QuadricPoint};
use crate::sl2::{svd2, Mat2};
use crate::tol::Tolerances;
use crate::word::Word;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// An element (g, h) of SL(2, C) x SL(2, C), optionally tagged with the
/// reduced word that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct PairElement {
    pub g: Mat2,
    pub h: Mat2,
    pub word: Option<Word>,
}

impl PairElement {
    pub fn new(g: Mat2, h: Mat2) -> Result<Self> {
        g.check_sl2(1e-9)?;
        h.check_sl2(1e-9)?;
        Ok(PairElement { g, h, word: None })
    }

    pub fn with_word(g: Mat2, h: Mat2, word: Word) -> Result<Self> {
        debug_assert!(word.is_reduced());
        let mut p = PairElement::new(g, h)?;
        p.word = Some(word);
        Ok(p)
    }

    pub fn identity() -> Self {
        PairElement {
            g: Mat2::identity(),
            h: Mat2::identity(),
            word: Some(Word::identity()),
        }
    }

    /// From a single SL(2, C) element through g -> (g, I).
    pub fn from_first(g: Mat2) -> Result<Self> {
        PairElement::new(g, Mat2::identity())
    }

    pub fn product(&self, other: &PairElement) -> PairElement {
        PairElement {
            g: self.g * other.g,
            h: self.h * other.h,
            word: match (&self.word, &other.word) {
                (Some(a), Some(b)) => Some(a.concat(b)),
                _ => None,
            },
        }
    }

    /// Inverse through the adjugate (exact for unimodular factors).
    pub fn inverse(&self) -> PairElement {
        PairElement {
            g: self.g.adjugate(),
            h: self.h.adjugate(),
            word: self.word.as_ref().map(|w| w.inverse()),
        }
    }

    pub fn pow(&self, n: u32) -> PairElement {
        let mut out = PairElement::identity();
        for _ in 0..n {
            out = out.product(self);
        }
        out
    }
}

/// Raw (unnormalized) 5x5 matrix of the action of (g, h).
pub fn psi_raw(p: &PairElement) -> Mat5 {
    let g = p.g;
    let k = p.h.adjugate(); // h^{-1}, exactly, when det h = 1
    let mut m = Mat5::zero();
    // Row order (z1, z2, z3, z4, z5); see module docs for the derivation.
    let rows = [
        (0usize, [g.a * k.a, g.a * k.c, g.b * k.a, g.b * k.c]),
        (1usize, [g.a * k.b, g.a * k.d, g.b * k.b, g.b * k.d]),
        (3usize, [g.c * k.a, g.c * k.c, g.d * k.a, g.d * k.c]),
        (4usize, [g.c * k.b, g.c * k.d, g.d * k.b, g.d * k.d]),
    ];
    let cols = [0usize, 1, 3, 4];
    for (i, row) in rows {
        for (jj, &j) in cols.iter().enumerate() {
            m.0[i][j] = row[jj];
        }
    }
    m.0[2][2] = c(1.0, 0.0);
    m
}

/// Inverse of the form matrix of q.
fn q_inverse() -> Mat5 {
    let mut m = Mat5::zero();
    m.0[0][4] = c(2.0, 0.0);
    m.0[4][0] = c(2.0, 0.0);
    m.0[1][3] = c(-2.0, 0.0);
    m.0[3][1] = c(-2.0, 0.0);
    m.0[2][2] = c(-1.0, 0.0);
    m
}

/// A projective orthogonal 5x5 matrix, stored with Frobenius norm one and
/// canonical phase so equality and averaging are deterministic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjMat5 {
    m: Mat5,
}

impl ProjMat5 {
    /// Validates M^T Q M = c Q for a single scalar c.
    pub fn new(raw: Mat5) -> Result<Self> {
        let normalized = Self::canonicalize(raw)?;
        let q = quadric::form_matrix();
        let r = normalized.transpose() * q * normalized;
        // Least-squares scalar and the residual against c Q.
        let mut num = c(0.0, 0.0);
        let mut den = 0.0;
        for i in 0..5 {
            for j in 0..5 {
                num += r.0[i][j] * q.0[i][j].conj();
                den += q.0[i][j].norm_sqr();
            }
        }
        let scalar = num / den;
        let mut err = 0.0f64;
        for i in 0..5 {
            for j in 0..5 {
                err += (r.0[i][j] - scalar * q.0[i][j]).norm_sqr();
            }
        }
        // After normalization ||M|| = 1, so rounding alone leaves a
        // residual of order eps even when c is denormally small (huge
        // dynamic range); the threshold floors at the matrix scale.
        if err.sqrt() > 1e-8 * r.frobenius().max(1.0) {
            return Err(Error::NotOnQuadric {
                residual: err.sqrt(),
            });
        }
        Ok(ProjMat5 { m: normalized })
    }

    fn canonicalize(raw: Mat5) -> Result<Mat5> {
        let flat = raw.flatten();
        let canon = proj::normalize(&flat).ok_or(Error::ZeroVector)?;
        let mut m = Mat5::zero();
        for i in 0..5 {
            for j in 0..5 {
                m.0[i][j] = canon[5 * i + j];
            }
        }
        Ok(m)
    }

    pub(crate) fn from_orthogonal(raw: Mat5) -> Self {
        ProjMat5 {
            m: Self::canonicalize(raw).expect("orthogonal matrices are nonzero"),
        }
    }

    pub fn identity() -> Self {
        ProjMat5::from_orthogonal(Mat5::identity())
    }

    pub fn matrix(&self) -> &Mat5 {
        &self.m
    }

    pub fn compose(&self, other: &ProjMat5) -> ProjMat5 {
        ProjMat5::from_orthogonal(self.m * other.m)
    }

    /// Closed-form inverse through the orthogonality relation:
    /// M^{-1} = c^{-1} Q^{-1} M^T Q.
    pub fn inverse(&self) -> ProjMat5 {
        let q = quadric::form_matrix();
        ProjMat5::from_orthogonal(q_inverse() * self.m.transpose() * q)
    }

    pub fn apply_vec(&self, v: &Vec5) -> Vec5 {
        self.m.apply(v)
    }

    pub fn apply_point(&self, x: &QuadricPoint) -> QuadricPoint {
        let v = self.m.apply(&x.lift());
        on_quadric(v)
    }

    pub fn apply_geodesic(&self, g: &LightGeodesic) -> LightGeodesic {
        g.map(&self.m, &Tolerances::default())
            .expect("orthogonal images of light geodesics are light geodesics")
    }

    /// Projective chordal distance (phase-insensitive).
    pub fn chordal(&self, other: &ProjMat5) -> f64 {
        proj::chordal(&self.m.flatten(), &other.m.flatten())
    }

    /// z3 row/column matches the O(4, C) embedding.
    pub fn fixes_slice(&self, tol: f64) -> bool {
        let scale = self.m.0[2][2].norm().max(1e-300);
        (0..5).all(|i| {
            i == 2 || (self.m.0[2][i].norm() / scale <= tol && self.m.0[i][2].norm() / scale <= tol)
        })
    }
}

/// The homomorphism into PO(5, C); the kernel is {(I, I), (-I, -I)}.
pub fn psi(p: &PairElement) -> Result<ProjMat5> {
    p.g.check_sl2(1e-9)?;
    p.h.check_sl2(1e-9)?;
    ProjMat5::new(psi_raw(p))
}

/// Wrap a vector that is on the quadric up to amplified input rounding; a
/// Newton projection absorbs the drift (the map itself preserves q
/// exactly, but an input residual scales with the Cartan exponents).
fn on_quadric(v: Vec5) -> QuadricPoint {
    match QuadricPoint::from_vec(v, &Tolerances::default()) {
        Ok(q) => q,
        Err(_) => {
            let z = quadric::project_to_quadric(&v).expect("near-quadric vectors project back");
            QuadricPoint::from_vec(z, &Tolerances::default())
                .expect("projected vectors are on the quadric")
        }
    }
}

/// Action of a pair on the quadric.
pub fn act(p: &PairElement, x: &QuadricPoint) -> QuadricPoint {
    let v = psi_raw(p).apply(&x.lift());
    on_quadric(v)
}

/// The embedding g -> [a : b : 1 : c : d] of SL(2, C) into the quadric.
pub fn embed_sl2(g: &Mat2) -> Result<QuadricPoint> {
    g.check_sl2(1e-9)?;
    QuadricPoint::from_vec([g.a, g.b, c(1.0, 0.0), g.c, g.d], &Tolerances::default())
}

/// Inverse chart of `embed_sl2` on Theta: rescale z3 to one and read the
/// 2x2 matrix.
pub fn theta_extract(p: &QuadricPoint, tol: &Tolerances) -> Result<Mat2> {
    let z = p.lift();
    if z[2].norm() <= tol.q2_slice {
        return Err(Error::OnQ2);
    }
    let s = z[2];
    Ok(Mat2::new(z[0] / s, z[1] / s, z[3] / s, z[4] / s))
}

/// The involution [z1 : z2 : z3 : z4 : z5] -> [-z1 : -z2 : z3 : -z4 : -z5].
pub fn involution_j(x: &QuadricPoint) -> QuadricPoint {
    let z = x.lift();
    QuadricPoint::from_vec([-z[0], -z[1], z[2], -z[3], -z[4]], &Tolerances::default())
        .expect("j preserves the quadric")
}

/// The 2:1 projection to CP^3 forgetting z3; f(x) = f(j(x)).
pub fn f_map(x: &QuadricPoint) -> PointCp3 {
    let z = x.lift();
    PointCp3::new([z[0], z[1], z[3], z[4]])
        .expect("quadric points never have all of z1, z2, z4, z5 zero")
}

/// Projective 4x4 matrices for the induced CP^3 action.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjMat4 {
    m: Mat4,
}

impl ProjMat4 {
    fn canonicalize(raw: Mat4) -> Mat4 {
        let flat = raw.flatten();
        let canon = proj::normalize(&flat).expect("nonzero");
        let mut m = Mat4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = canon[4 * i + j];
            }
        }
        m
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.m
    }

    pub fn apply(&self, x: &PointCp3) -> PointCp3 {
        PointCp3::new(self.m.apply(x.coords())).expect("invertible")
    }

    pub fn chordal(&self, other: &ProjMat4) -> f64 {
        proj::chordal(&self.m.flatten(), &other.m.flatten())
    }

    pub fn identity() -> Self {
        let mut m = Mat4::zero();
        for i in 0..4 {
            m.0[i][i] = c(1.0, 0.0);
        }
        ProjMat4 {
            m: Self::canonicalize(m),
        }
    }
}

/// The induced action on CP^3, intertwined with psi by f. The kernel is
/// {(I, I), (-I, I), (I, -I), (-I, -I)}.
pub fn tau(p: &PairElement) -> Result<ProjMat4> {
    p.g.check_sl2(1e-9)?;
    p.h.check_sl2(1e-9)?;
    let g = p.g;
    let k = p.h.adjugate();
    let m = Mat4([
        [g.a * k.a, g.a * k.c, g.b * k.a, g.b * k.c],
        [g.a * k.b, g.a * k.d, g.b * k.b, g.b * k.d],
        [g.c * k.a, g.c * k.c, g.d * k.a, g.d * k.c],
        [g.c * k.b, g.c * k.d, g.d * k.b, g.d * k.d],
    ]);
    Ok(ProjMat4 {
        m: ProjMat4::canonicalize(m),
    })
}

/// The Cartan axis diag(e^lambda, e^mu, 1, e^-mu, e^-lambda).
pub fn axis_matrix(lambda: f64, mu: f64) -> Mat5 {
    Mat5::from_diag([
        c(lambda.exp(), 0.0),
        c(mu.exp(), 0.0),
        c(1.0, 0.0),
        c((-mu).exp(), 0.0),
        c((-lambda).exp(), 0.0),
    ])
}

/// The orientation-reversing involution M -> adj(M), in coordinates
/// (z1, z2, z3, z4, z5) -> (z5, -z2, z3, -z4, z1). It lies in
/// O(4, C) - SO(4, C), swaps the two CP^1 factors of the z3 = 0 surface
/// ((x, y) -> (y, x)) and conjugates the axis by lambda -> -lambda.
pub fn flip_matrix() -> Mat5 {
    let mut m = Mat5::zero();
    m.0[0][4] = c(1.0, 0.0);
    m.0[1][1] = c(-1.0, 0.0);
    m.0[2][2] = c(1.0, 0.0);
    m.0[3][3] = c(-1.0, 0.0);
    m.0[4][0] = c(1.0, 0.0);
    m
}

/// Cartan data of psi(g, h): the exponents (lambda, mu) with
/// mu >= lambda >= 0, unitary outer pairs, and whether the flip involution
/// is needed (exactly when sigma(g) < sigma(h)).
#[derive(Debug, Clone)]
pub struct CartanData {
    pub lambda: f64,
    pub mu: f64,
    pub k1: PairElement,
    pub k2: PairElement,
    pub flip: bool,
}

impl CartanData {
    /// psi(k1) . i^flip . axis . i^flip . psi(k2), as a raw matrix.
    pub fn reconstruct_raw(&self) -> Mat5 {
        let mut mid = axis_matrix(self.lambda, self.mu);
        if self.flip {
            let i = flip_matrix();
            mid = i * mid * i;
        }
        psi_raw(&self.k1) * mid * psi_raw(&self.k2)
    }

    pub fn reconstruct(&self) -> ProjMat5 {
        ProjMat5::from_orthogonal(self.reconstruct_raw())
    }

    /// Frame psi(k1) . i^flip carrying the model attractor objects.
    pub fn frame_plus_raw(&self) -> Mat5 {
        if self.flip {
            psi_raw(&self.k1) * flip_matrix()
        } else {
            psi_raw(&self.k1)
        }
    }

    /// Frame i^flip . psi(k2) whose inverse carries the model repeller
    /// objects.
    pub fn frame_minus_raw(&self) -> Mat5 {
        if self.flip {
            flip_matrix() * psi_raw(&self.k2)
        } else {
            psi_raw(&self.k2)
        }
    }
}

/// KAK split of the image of a pair, from the closed-form SVDs of the two
/// factors.
pub fn cartan_kak(p: &PairElement) -> Result<CartanData> {
    let sg = svd2(&p.g)?;
    let sh = svd2(&p.h)?;
    let flip = sg.sigma < sh.sigma;
    let lambda = (sg.sigma - sh.sigma).abs();
    let mu = sg.sigma + sh.sigma;
    Ok(CartanData {
        lambda,
        mu,
        k1: PairElement {
            g: sg.k1,
            h: sh.k1,
            word: None,
        },
        k2: PairElement {
            g: sg.k2,
            h: sh.k2,
            word: None,
        },
        flip,
    })
}
