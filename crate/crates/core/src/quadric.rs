//! Geometry of the quadric Q3 in CP^4 cut out by q = z1 z5 - z2 z4 - z3^2:
//! membership, the z3 = 0 surface Q2 and its identification with
//! CP^1 x CP^1, light geodesics (projectivized isotropic planes) and light
//! cones.
//!
//! The splitting of Q2 reads a point [z1:z2:0:z4:z5] as the rank-one matrix
//! [[z1, z2], [z4, z5]]; the first CP^1 factor is its column space and the
//! second its kernel. Vertical geodesics fix the first factor, horizontal
//! ones fix the second.

use crate::error::{Error, Result};
use crate::mat5::{Mat5, Vec5};
use crate::proj::{self, C64, PointCp1, PointCp4};
use crate::tol::Tolerances;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// The quadratic form q(z) = z1 z5 - z2 z4 - z3^2.
pub fn q_form(v: &Vec5) -> C64 {
    v[0] * v[4] - v[1] * v[3] - v[2] * v[2]
}

/// The symmetric bilinear form with b(v, v) = q(v).
pub fn bilinear_b(v: &Vec5, w: &Vec5) -> C64 {
    (v[0] * w[4] + v[4] * w[0] - v[1] * w[3] - v[3] * w[1]) * 0.5 - v[2] * w[2]
}

/// Matrix of b in the canonical basis.
pub fn form_matrix() -> Mat5 {
    let mut q = Mat5::zero();
    q.0[0][4] = c(0.5, 0.0);
    q.0[4][0] = c(0.5, 0.0);
    q.0[1][3] = c(-0.5, 0.0);
    q.0[3][1] = c(-0.5, 0.0);
    q.0[2][2] = c(-1.0, 0.0);
    q
}

/// A point of Q3, held with its canonical projective representative and the
/// quadric residual |q| of that unit representative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadricPoint {
    point: PointCp4,
    residual: f64,
}

impl QuadricPoint {
    pub fn new(point: PointCp4, tol: &Tolerances) -> Result<Self> {
        let residual = q_form(point.coords()).norm();
        if residual > tol.quadric_membership {
            return Err(Error::NotOnQuadric { residual });
        }
        Ok(QuadricPoint { point, residual })
    }

    pub fn from_vec(v: Vec5, tol: &Tolerances) -> Result<Self> {
        QuadricPoint::new(PointCp4::new(v)?, tol)
    }

    /// Standard-basis point pi(e_i); valid for i in {0, 1, 3, 4}.
    pub fn basis(i: usize) -> Self {
        assert!(i != 2, "pi(e3) is not on the quadric");
        QuadricPoint {
            point: PointCp4::basis(i),
            residual: 0.0,
        }
    }

    pub fn point(&self) -> &PointCp4 {
        &self.point
    }

    /// Canonical unit lift.
    pub fn lift(&self) -> Vec5 {
        *self.point.coords()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn z3_abs(&self) -> f64 {
        self.point.coords()[2].norm()
    }

    /// True on the matrix chart Theta = Q3 - Q2.
    pub fn in_theta(&self, tol: &Tolerances) -> bool {
        self.z3_abs() > tol.q2_slice
    }

    pub fn chordal(&self, other: &Self) -> f64 {
        self.point.chordal(&other.point)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.chordal(other) < tol
    }
}

/// Splits a Q2 point into (column space, kernel) of its 2x2 matrix.
pub fn q2_split(p: &QuadricPoint, tol: &Tolerances) -> Result<(PointCp1, PointCp1)> {
    let z = p.lift();
    let z3 = z[2].norm();
    if z3 > tol.q2_slice || p.residual() > tol.quadric_membership {
        return Err(Error::NotOnQ2 {
            z3,
            residual: p.residual(),
        });
    }
    // Rank-one matrix [[z1, z2], [z4, z5]]; take the larger column for the
    // image and the larger row for the kernel annihilator.
    let col1 = [z[0], z[3]];
    let col2 = [z[1], z[4]];
    let n1 = col1[0].norm_sqr() + col1[1].norm_sqr();
    let n2 = col2[0].norm_sqr() + col2[1].norm_sqr();
    let x = if n1 >= n2 { col1 } else { col2 };
    let row1 = [z[0], z[1]];
    let row2 = [z[3], z[4]];
    let m1 = row1[0].norm_sqr() + row1[1].norm_sqr();
    let m2 = row2[0].norm_sqr() + row2[1].norm_sqr();
    let r = if m1 >= m2 { row1 } else { row2 };
    let y = [r[1], -r[0]]; // kernel direction annihilated by the row
    Ok((PointCp1::new(x)?, PointCp1::new(y)?))
}

/// Inverse of the splitting: the rank-one matrix with column space `x` and
/// kernel `y`, emitted as [z1 : z2 : 0 : z4 : z5].
pub fn q2_join(x: &PointCp1, y: &PointCp1) -> QuadricPoint {
    let [x1, x2] = *x.coords();
    let [y1, y2] = *y.coords();
    // w annihilates y: w . y = 0.
    let w = [y2, -y1];
    let v = [x1 * w[0], x1 * w[1], c(0.0, 0.0), x2 * w[0], x2 * w[1]];
    QuadricPoint::from_vec(v, &Tolerances::default())
        .expect("rank-one matrices satisfy q = 0 identically")
}

/// True iff `p` lies on the light cone of `vertex`, i.e. b(vertex, p) = 0.
pub fn cone_contains(vertex: &QuadricPoint, p: &QuadricPoint, tol: &Tolerances) -> bool {
    bilinear_b(&vertex.lift(), &p.lift()).norm() <= tol.isotropy
}

/// Orientation of a light geodesic contained in Q2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrientationTag {
    /// A leaf {x} x CP^1; the base point is the fixed first factor.
    Vertical,
    /// A leaf CP^1 x {y}; the base point is the fixed second factor.
    Horizontal,
    /// Not contained in Q2 (or numerically untaggable).
    Untagged,
}

/// A light geodesic: the projectivization of an isotropic plane, stored by
/// an orthonormal basis of the plane.
#[derive(Debug, Clone, Copy)]
pub struct LightGeodesic {
    basis: [Vec5; 2],
    tag: OrientationTag,
    base: Option<PointCp1>,
}

fn axpy(a: C64, x: &Vec5, y: &Vec5) -> Vec5 {
    let mut out = *y;
    for i in 0..5 {
        out[i] += a * x[i];
    }
    out
}

fn orthonormalize2(v: &Vec5, w: &Vec5) -> Option<[Vec5; 2]> {
    let nv = proj::norm(v);
    if nv == 0.0 {
        return None;
    }
    let mut q1 = *v;
    for z in q1.iter_mut() {
        *z /= nv;
    }
    let mut q2 = axpy(-proj::hdot(w, &q1), &q1, w);
    let nw = proj::norm(&q2);
    // The residual norm is the second singular value of the normalized
    // 5x2 span matrix.
    if nw <= 1e-9 * proj::norm(w).max(1.0) {
        return None;
    }
    for z in q2.iter_mut() {
        *z /= nw;
    }
    Some([q1, q2])
}

impl LightGeodesic {
    /// Geodesic spanned by two isotropic, b-orthogonal, independent vectors.
    pub fn from_span(v: Vec5, w: Vec5, tol: &Tolerances) -> Result<Self> {
        let (nv, nw) = (proj::norm(&v), proj::norm(&w));
        if nv == 0.0 || nw == 0.0 {
            return Err(Error::ZeroVector);
        }
        for (x, n) in [(&v, nv), (&w, nw)] {
            let residual = q_form(x).norm() / (n * n);
            if residual > tol.quadric_membership.max(tol.isotropy) {
                return Err(Error::NotOnQuadric { residual });
            }
        }
        let b_abs = bilinear_b(&v, &w).norm() / (nv * nw);
        if b_abs > tol.isotropy {
            return Err(Error::NotIsotropicPair { b_abs });
        }
        let basis = orthonormalize2(&v, &w).ok_or(Error::DegenerateSpan { sv: 0.0 })?;
        let (tag, base) = detect_tag(&basis, tol);
        Ok(LightGeodesic { basis, tag, base })
    }

    /// Geodesic through two distinct quadric points.
    pub fn through(p: &QuadricPoint, q: &QuadricPoint, tol: &Tolerances) -> Result<Self> {
        LightGeodesic::from_span(p.lift(), q.lift(), tol)
    }

    pub fn tag(&self) -> OrientationTag {
        self.tag
    }

    pub fn base_point(&self) -> Option<&PointCp1> {
        self.base.as_ref()
    }

    pub fn basis(&self) -> &[Vec5; 2] {
        &self.basis
    }

    /// The point t1 basis0 + t2 basis1.
    pub fn point_at(&self, t: &PointCp1) -> QuadricPoint {
        let [t1, t2] = *t.coords();
        let v = axpy(t1, &self.basis[0], &axpy(t2, &self.basis[1], &[c(0.0, 0.0); 5]));
        QuadricPoint::from_vec(v, &Tolerances::default())
            .expect("isotropic plane points satisfy q = 0")
    }

    /// Chordal distance from a point to the geodesic (sine of the principal
    /// angle between the lift and the plane).
    pub fn dist(&self, x: &QuadricPoint) -> f64 {
        let v = x.lift();
        let p1 = proj::hdot(&v, &self.basis[0]);
        let p2 = proj::hdot(&v, &self.basis[1]);
        let mut rest = v;
        for (i, r) in rest.iter_mut().enumerate() {
            *r -= p1 * self.basis[0][i] + p2 * self.basis[1][i];
        }
        proj::norm(&rest).min(1.0)
    }

    pub fn contains(&self, x: &QuadricPoint, tol: f64) -> bool {
        self.dist(x) <= tol
    }

    /// Both planes coincide.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let d = |g: &Self, v: &Vec5| {
            let p1 = proj::hdot(v, &g.basis[0]);
            let p2 = proj::hdot(v, &g.basis[1]);
            let mut rest = *v;
            for (i, r) in rest.iter_mut().enumerate() {
                *r -= p1 * g.basis[0][i] + p2 * g.basis[1][i];
            }
            proj::norm(&rest)
        };
        d(other, &self.basis[0]) < tol
            && d(other, &self.basis[1]) < tol
            && d(self, &other.basis[0]) < tol
    }

    /// Image by a linear map of C^5 (re-detects the orientation tag).
    pub fn map(&self, m: &Mat5, tol: &Tolerances) -> Result<Self> {
        LightGeodesic::from_span(m.apply(&self.basis[0]), m.apply(&self.basis[1]), tol)
    }

    /// Evenly spread sample points, deterministic in `count`.
    pub fn sample(&self, count: usize) -> Vec<QuadricPoint> {
        (0..count)
            .map(|k| {
                let theta = std::f64::consts::PI * (k as f64 + 0.5) / count as f64;
                let phi = 2.399963229728653 * k as f64; // golden angle
                let t = PointCp1::new([
                    c(theta.cos(), 0.0),
                    c(theta.sin() * phi.cos(), theta.sin() * phi.sin()),
                ])
                .unwrap();
                self.point_at(&t)
            })
            .collect()
    }
}

fn detect_tag(basis: &[Vec5; 2], tol: &Tolerances) -> (OrientationTag, Option<PointCp1>) {
    let slice = tol.q2_slice.max(1e-9);
    if basis[0][2].norm() > slice || basis[1][2].norm() > slice {
        return (OrientationTag::Untagged, None);
    }
    let tolp = tol.projective_eq.max(1e-7);
    let pts = [
        basis[0],
        basis[1],
        axpy(c(1.0, 0.0), &basis[0], &basis[1]),
    ];
    let mut splits = Vec::new();
    for v in pts.iter() {
        let p = match QuadricPoint::from_vec(*v, &Tolerances::default()) {
            Ok(p) => p,
            Err(_) => return (OrientationTag::Untagged, None),
        };
        match q2_split(&p, &Tolerances::default()) {
            Ok(s) => splits.push(s),
            Err(_) => return (OrientationTag::Untagged, None),
        }
    }
    let x_fixed = splits[0].0.approx_eq(&splits[1].0, tolp) && splits[0].0.approx_eq(&splits[2].0, tolp);
    let y_fixed = splits[0].1.approx_eq(&splits[1].1, tolp) && splits[0].1.approx_eq(&splits[2].1, tolp);
    if x_fixed && !y_fixed {
        (OrientationTag::Vertical, Some(splits[0].0))
    } else if y_fixed && !x_fixed {
        (OrientationTag::Horizontal, Some(splits[0].1))
    } else {
        (OrientationTag::Untagged, None)
    }
}

/// The vertical geodesic {x} x CP^1.
pub fn vertical_geodesic(x: &PointCp1) -> LightGeodesic {
    let p = q2_join(x, &PointCp1::basis(0));
    let q = q2_join(x, &PointCp1::basis(1));
    LightGeodesic::through(&p, &q, &Tolerances::default()).expect("leaves are light geodesics")
}

/// The horizontal geodesic CP^1 x {y}.
pub fn horizontal_geodesic(y: &PointCp1) -> LightGeodesic {
    let p = q2_join(&PointCp1::basis(0), y);
    let q = q2_join(&PointCp1::basis(1), y);
    LightGeodesic::through(&p, &q, &Tolerances::default()).expect("leaves are light geodesics")
}

/// The light cone of a point.
#[derive(Debug, Clone, Copy)]
pub struct LightCone {
    pub vertex: QuadricPoint,
}

impl LightCone {
    pub fn contains(&self, p: &QuadricPoint, tol: &Tolerances) -> bool {
        cone_contains(&self.vertex, p, tol)
    }
}

/// CP^1-family of the light geodesics through a vertex, realized by an
/// orthogonal frame carrying the model family at pi(e1).
#[derive(Debug, Clone, Copy)]
pub struct ConeFamily {
    vertex: QuadricPoint,
    frame: Mat5,
}

impl ConeFamily {
    /// The geodesic with Veronese parameter t on the model conic
    /// z2 z4 + z3^2 = 0 (t = [1:0] gives <e1, e2>, t = [0:1] gives <e1, e4>
    /// at the model vertex).
    pub fn at(&self, t: &PointCp1) -> LightGeodesic {
        let [t1, t2] = *t.coords();
        let dir_model = [c(0.0, 0.0), t1 * t1, t1 * t2, -t2 * t2, c(0.0, 0.0)];
        let dir = self.frame.apply(&dir_model);
        LightGeodesic::from_span(self.vertex.lift(), dir, &Tolerances::default())
            .expect("frame carries the model cone to the vertex cone")
    }

    pub fn vertex(&self) -> &QuadricPoint {
        &self.vertex
    }
}

/// The family of light geodesics through `vertex`.
pub fn cone_geodesics(vertex: &QuadricPoint) -> ConeFamily {
    ConeFamily {
        vertex: *vertex,
        frame: orthogonal_frame_at(&vertex.lift()),
    }
}

fn sqrt_c(z: C64) -> C64 {
    z.sqrt()
}

/// An element of O(5, C) (for the form q) whose first column is `v`.
///
/// Completes `v` to a basis (v, f2, f3, f4, w) whose Gram matrix under b
/// equals the canonical one: b(v, w) = 1/2, b(f2, f4) = -1/2,
/// b(f3, f3) = -1, all other pairings zero.
pub fn orthogonal_frame_at(v: &Vec5) -> Mat5 {
    let nv = proj::norm(v);
    let mut v1 = *v;
    for z in v1.iter_mut() {
        *z /= nv;
    }
    // Hyperbolic partner: isotropic w with b(v, w) = 1/2.
    let basis: [Vec5; 5] = [
        [c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
        [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
    ];
    let order = [4usize, 0, 1, 3, 2];
    let mut w0 = basis[4];
    let mut best = 0.0;
    for &i in order.iter() {
        let bb = bilinear_b(&v1, &basis[i]).norm();
        if bb > best {
            best = bb;
            w0 = basis[i];
        }
    }
    let bvw = bilinear_b(&v1, &w0);
    let mut w = axpy(-q_form(&w0) / (bvw * 2.0), &v1, &w0);
    let s = bilinear_b(&v1, &w) * 2.0;
    for z in w.iter_mut() {
        *z /= s;
    }
    // Projection onto the b-complement of span(v, w).
    let project = |x: &Vec5| {
        let bw = bilinear_b(x, &w);
        let bv = bilinear_b(x, &v1);
        let mut out = *x;
        for i in 0..5 {
            out[i] -= 2.0 * bw * v1[i] + 2.0 * bv * w[i];
        }
        out
    };
    // Three independent directions of the complement (Hermitian pivoting).
    let mut comp: Vec<Vec5> = Vec::new();
    for e in basis.iter() {
        if comp.len() == 3 {
            break;
        }
        let mut cand = project(e);
        for u in comp.iter() {
            cand = axpy(-proj::hdot(&cand, u), u, &cand);
        }
        let n = proj::norm(&cand);
        if n > 1e-8 {
            for z in cand.iter_mut() {
                *z /= n;
            }
            comp.push(cand);
        }
    }
    assert_eq!(comp.len(), 3, "complement of a hyperbolic pair is 3-dim");
    // Anisotropic f3 with q(f3) = -1.
    let combos = [
        comp[0],
        comp[1],
        comp[2],
        axpy(c(1.0, 0.0), &comp[0], &comp[1]),
        axpy(c(1.0, 0.0), &comp[0], &comp[2]),
        axpy(c(1.0, 0.0), &comp[1], &comp[2]),
    ];
    let mut f3 = combos[0];
    let mut best_q = 0.0;
    for cand in combos.iter() {
        let qn = q_form(cand).norm() / proj::hdot(cand, cand).re;
        if qn > best_q + 1e-12 {
            best_q = qn;
            f3 = *cand;
        }
    }
    let scale = sqrt_c(-q_form(&f3));
    for z in f3.iter_mut() {
        *z /= scale;
    }
    // Two directions b-orthogonal to f3.
    let project3 = |x: &Vec5| axpy(bilinear_b(x, &f3), &f3, x);
    let mut plane: Vec<Vec5> = Vec::new();
    for u in comp.iter() {
        if plane.len() == 2 {
            break;
        }
        let mut cand = project3(u);
        for p in plane.iter() {
            cand = axpy(-proj::hdot(&cand, p), p, &cand);
        }
        let n = proj::norm(&cand);
        if n > 1e-8 {
            for z in cand.iter_mut() {
                *z /= n;
            }
            plane.push(cand);
        }
    }
    assert_eq!(plane.len(), 2, "f3-complement inside the plane is 2-dim");
    let (u1, u2) = (plane[0], plane[1]);
    let (q1, q2v, b12) = (q_form(&u1), q_form(&u2), bilinear_b(&u1, &u2));
    let (f2, f4_raw);
    if q1.norm() <= 1e-12 {
        f2 = u1;
        f4_raw = axpy(-q2v / (bilinear_b(&u2, &f2) * 2.0), &f2, &u2);
    } else if q2v.norm() <= 1e-12 {
        f2 = u2;
        f4_raw = axpy(-q1 / (bilinear_b(&u1, &f2) * 2.0), &f2, &u1);
    } else {
        // Roots of q(u1 + t u2) = 0 give the two isotropic lines.
        let disc = sqrt_c(b12 * b12 - q1 * q2v);
        let t1 = (-b12 + disc) / q2v;
        let t2 = (-b12 - disc) / q2v;
        f2 = axpy(t1, &u2, &u1);
        f4_raw = axpy(t2, &u2, &u1);
    }
    let s = bilinear_b(&f2, &f4_raw) * -2.0;
    let mut f4 = f4_raw;
    for z in f4.iter_mut() {
        *z /= s;
    }
    let cols = [v1, f2, f3, f4, w];
    let mut m = Mat5::zero();
    for (j, col) in cols.iter().enumerate() {
        for (i, entry) in col.iter().enumerate() {
            m.0[i][j] = *entry;
        }
    }
    m
}

/// Newton projection of a nearby vector onto the affine cone q = 0.
pub fn project_to_quadric(v: &Vec5) -> Option<Vec5> {
    let mut z = *v;
    for _ in 0..4 {
        let q = q_form(&z);
        if q.norm() <= 1e-15 * proj::hdot(&z, &z).re.max(1e-300) {
            break;
        }
        // Step along the conjugate gradient direction.
        let grad = [z[4], -z[3], -2.0 * z[2], -z[1], z[0]];
        let w = [
            grad[0].conj(),
            grad[1].conj(),
            grad[2].conj(),
            grad[3].conj(),
            grad[4].conj(),
        ];
        let b = bilinear_b(&z, &w);
        if b.norm() < 1e-300 {
            return None;
        }
        let qw = q_form(&w);
        // Stable small root of qw t^2 + 2 b t + q = 0.
        let disc = sqrt_c(b * b - qw * q);
        let denom1 = b + disc;
        let denom2 = b - disc;
        let denom = if denom1.norm() >= denom2.norm() {
            denom1
        } else {
            denom2
        };
        let t = -q / denom;
        z = axpy(t, &w, &z);
    }
    let n = proj::norm(&z);
    if n == 0.0 || !n.is_finite() {
        return None;
    }
    if q_form(&z).norm() > 1e-10 * n * n {
        return None;
    }
    Some(z)
}
