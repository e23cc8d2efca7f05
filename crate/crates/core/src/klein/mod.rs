//! Classical Kleinian machinery: finitely generated free groups with a
//! deformation homomorphism, Schottky pairing circles, ping-pong
//! certificates on CP^1 and on the quadric through the half-space model,
//! classical limit sets, and membership tests for the invariant domain.

pub mod circle;
pub mod properness;
pub mod words;

pub use circle::Circle;

use crate::error::{Error, Result};
use crate::halfspace::{ball_coords, delta_map, poincare_apply, HPoint};
use crate::proj::{C64, PointCp1, PointCp3};
use crate::quadric::{q2_split, QuadricPoint};
use crate::rep::{act, PairElement};
use crate::sl2::{classify_element, Mat2, MobiusClass};
use crate::tol::Tolerances;
use crate::word::Word;

/// A Schottky pairing: the generator carries the complement of `c` onto
/// the closure of `d`.
#[derive(Debug, Clone, Copy)]
pub struct CirclePair {
    pub c: Circle,
    pub d: Circle,
}

/// A finitely generated free group with SL(2, C) generator matrices, a
/// deformation homomorphism u given on generators (default constant), and
/// optional Schottky pairing circles.
///
/// Torsion-freeness and convex-cocompactness are accepted as assertions of
/// the caller; the properness report raises flags instead of proofs.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    rank: usize,
    generators: Vec<Mat2>,
    deformation: Vec<Mat2>,
    schottky: Option<Vec<CirclePair>>,
}

impl GroupSpec {
    pub fn new(generators: Vec<Mat2>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::BadGroupSpec("rank must be at least one".into()));
        }
        for g in &generators {
            g.check_sl2(1e-9)?;
        }
        let rank = generators.len();
        Ok(GroupSpec {
            rank,
            generators,
            deformation: vec![Mat2::identity(); rank],
            schottky: None,
        })
    }

    pub fn with_deformation(mut self, u: Vec<Mat2>) -> Result<Self> {
        if u.len() != self.rank {
            return Err(Error::BadGroupSpec(format!(
                "deformation count {} != rank {}",
                u.len(),
                self.rank
            )));
        }
        for m in &u {
            m.check_sl2(1e-9)?;
        }
        self.deformation = u;
        Ok(self)
    }

    pub fn with_schottky(mut self, pairs: Vec<CirclePair>) -> Result<Self> {
        if pairs.len() != self.rank {
            return Err(Error::BadGroupSpec(format!(
                "schottky pair count {} != rank {}",
                pairs.len(),
                self.rank
            )));
        }
        self.schottky = Some(pairs);
        Ok(self)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn deformation(&self) -> &[Mat2] {
        &self.deformation
    }

    pub fn schottky(&self) -> Option<&[CirclePair]> {
        self.schottky.as_deref()
    }

    /// The pair (rho(letter), u(letter)) for a signed generator index.
    pub fn generator_pair(&self, letter: i8) -> PairElement {
        let idx = (letter.unsigned_abs() - 1) as usize;
        let (g, h) = (self.generators[idx], self.deformation[idx]);
        if letter > 0 {
            PairElement { g, h, word: None }
        } else {
            PairElement {
                g: g.adjugate(),
                h: h.adjugate(),
                word: None,
            }
        }
    }

    /// Left-to-right product over the letters of a reduced word.
    pub fn value_of(&self, w: &Word) -> PairElement {
        let mut p = PairElement::identity();
        for &letter in w.letters() {
            p = p.product(&self.generator_pair(letter));
        }
        p.word = Some(w.clone());
        p
    }
}

/// Max over generators of ||u(s) - I||; the size of the deformation in the
/// neighborhood-of-the-constant-morphism sense. Not conjugation invariant.
pub fn deformation_norm(spec: &GroupSpec) -> f64 {
    spec.deformation
        .iter()
        .map(|u| u.dist_identity())
        .fold(0.0, f64::max)
}

/// True iff `s` is loxodromic and carries the complement of `c` exactly
/// onto the closure of `d` (circle transport by Hermitian congruence plus
/// the orientation condition).
pub fn schottky_pair(s: &Mat2, c: &Circle, d: &Circle, tol: f64) -> bool {
    if classify_element(s).class != MobiusClass::Loxodromic {
        return false;
    }
    let tc = c.transport(s);
    let (x, y) = (tc.canonical(), d.canonical());
    let mdist = ((x.a - y.a).powi(2) + (x.b - y.b).norm_sqr() + (x.d - y.d).powi(2)).sqrt();
    // Boundary circles agree and the image of the interior of c is the
    // exterior of d, i.e. the carried side is opposite.
    mdist <= tol && x.side == -y.side
}

/// Certified ping-pong configuration: pairwise margins of the 2g disk
/// closures and the per-generator pairing checks.
#[derive(Debug, Clone)]
pub struct PingPongCertificate {
    pub pass: bool,
    /// Chordal gaps for disk pairs (i < j) in the flattened order
    /// C1, D1, C2, D2, ...; negative values measure overlap.
    pub margins: Vec<f64>,
    pub pairing_ok: Vec<bool>,
    pub witness: Option<PointCp1>,
    /// Max hemisphere transport residual; only set by the Q3 check.
    pub hemisphere_residual: Option<f64>,
}

fn flattened_disks(pairs: &[CirclePair]) -> Vec<Circle> {
    let mut disks = Vec::with_capacity(2 * pairs.len());
    for p in pairs {
        disks.push(p.c);
        disks.push(p.d);
    }
    disks
}

/// Ping-pong certificate on CP^1: disjoint closed disks plus the exact
/// pairing condition for every generator.
pub fn verify_ping_pong_cp1(spec: &GroupSpec, tol: &Tolerances) -> Result<PingPongCertificate> {
    let pairs = spec.schottky().ok_or(Error::MissingSchottkyData)?;
    let disks = flattened_disks(pairs);
    let mut margins = Vec::new();
    let mut witness = None;
    let mut disjoint = true;
    for i in 0..disks.len() {
        for j in (i + 1)..disks.len() {
            let gap = circle::chordal_gap(&disks[i], &disks[j]);
            if gap <= tol.projective_eq {
                disjoint = false;
                if witness.is_none() {
                    witness = circle::overlap_witness(&disks[i], &disks[j]);
                }
            }
            margins.push(gap);
        }
    }
    let pairing_ok: Vec<bool> = pairs
        .iter()
        .zip(spec.generators())
        .map(|(pair, s)| schottky_pair(s, &pair.c, &pair.d, 1e-9))
        .collect();
    let pass = disjoint && pairing_ok.iter().all(|&ok| ok);
    Ok(PingPongCertificate {
        pass,
        margins,
        pairing_ok,
        witness,
        hemisphere_residual: None,
    })
}

fn hemisphere_samples(c: &Circle, count: usize) -> Vec<(C64, f64)> {
    // Genuine circle: center and radius from the canonical form.
    let cc = c.canonical();
    if cc.a.abs() < 1e-12 {
        return Vec::new();
    }
    let center = -cc.b.conj() / cc.a;
    let radius = ((cc.b.norm_sqr() - cc.a * cc.d).max(0.0)).sqrt() / cc.a;
    let mut out = Vec::with_capacity(count);
    let rings = 8usize.min(count / 4).max(1);
    let per_ring = count / rings;
    for r in 0..rings {
        let theta = std::f64::consts::FRAC_PI_2 * (r as f64 + 0.5) / rings as f64;
        for k in 0..per_ring {
            let phi = 2.0 * std::f64::consts::PI * k as f64 / per_ring as f64;
            let z = center + C64::new(phi.cos(), phi.sin()) * (radius * theta.sin());
            out.push((z, radius * theta.cos()));
        }
    }
    out
}

/// Ping-pong certificate on the quadric through the half-space model: the
/// Schottky sets are delta-preimages of the half-spaces bounded by the
/// hemispheres over the circles. The boundary circles transport exactly
/// (the CP^1 certificate); the hemisphere statement is verified by mapping
/// sampled hemisphere points with the Poincare extension and the margins
/// are re-measured in the closed-ball metric.
pub fn verify_ping_pong_q3(spec: &GroupSpec, tol: &Tolerances) -> Result<PingPongCertificate> {
    let base = verify_ping_pong_cp1(spec, tol)?;
    if !base.pass {
        return Ok(base);
    }
    let pairs = spec.schottky().ok_or(Error::MissingSchottkyData)?;
    // Hemisphere transport residual: s maps the hemisphere over c onto the
    // hemisphere over the transported circle.
    let mut residual = 0.0f64;
    for (pair, s) in pairs.iter().zip(spec.generators()) {
        let image = pair.c.transport(s);
        for (z, t) in hemisphere_samples(&pair.c, 200) {
            let moved = poincare_apply(s, &HPoint::Interior { z, t });
            let v = match moved {
                HPoint::Interior { z, t } => image.eval_h3(z, t),
                HPoint::Boundary(ref x) => image.eval_point(x),
            };
            // Normalize by the hemisphere scale at the moved point.
            let scale = match moved {
                HPoint::Interior { z, t } => {
                    image.a.abs() * (z.norm_sqr() + t * t) + 2.0 * (image.b * z.conj()).norm() + image.d.abs()
                }
                HPoint::Boundary(_) => 1.0,
            };
            residual = residual.max(v.abs() / scale.max(1e-12));
        }
    }
    // Ball-metric margins between half-space closures, from boundary
    // surface samples (hemisphere shell plus equator circle).
    let disks = flattened_disks(pairs);
    let shells: Vec<Vec<[f64; 3]>> = disks
        .iter()
        .map(|c| {
            let mut pts: Vec<[f64; 3]> = hemisphere_samples(c, 160)
                .into_iter()
                .map(|(z, t)| ball_coords(&HPoint::Interior { z, t }))
                .collect();
            pts.extend(
                circle::boundary_samples(c, 64)
                    .into_iter()
                    .map(|p| ball_coords(&HPoint::Boundary(p))),
            );
            pts
        })
        .collect();
    let mut margins = Vec::new();
    for i in 0..shells.len() {
        for j in (i + 1)..shells.len() {
            let mut best = f64::INFINITY;
            for a in &shells[i] {
                for b in &shells[j] {
                    let d2 = (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2);
                    best = best.min(d2);
                }
            }
            margins.push(best.sqrt());
        }
    }
    let pass = residual < 1e-7 && margins.iter().all(|&m| m > tol.projective_eq);
    Ok(PingPongCertificate {
        pass,
        margins,
        pairing_ok: base.pairing_ok,
        witness: None,
        hemisphere_residual: Some(residual),
    })
}

/// Classical limit set approximation: attracting fixed points of every
/// loxodromic word of length <= max_len, deduplicated (first word wins,
/// breadth-first order).
#[derive(Debug, Clone)]
pub struct LimitCloud {
    pub points: Vec<(Word, PointCp1)>,
}

impl LimitCloud {
    pub fn positions(&self) -> Vec<PointCp1> {
        self.points.iter().map(|(_, p)| *p).collect()
    }

    pub fn min_dist(&self, x: &PointCp1) -> f64 {
        self.points
            .iter()
            .map(|(_, p)| p.chordal(x))
            .fold(f64::INFINITY, f64::min)
    }
}

pub fn limit_set_cp1(spec: &GroupSpec, max_len: usize) -> Result<LimitCloud> {
    const DEDUP: f64 = 1e-6;
    let mut points: Vec<(Word, PointCp1)> = Vec::new();
    words::for_each_word(spec, max_len, |w, p| {
        if w.is_empty() {
            return;
        }
        let cls = classify_element(&p.g);
        if cls.class != MobiusClass::Loxodromic {
            return;
        }
        let fix = cls.fixed[0];
        if points.iter().all(|(_, q)| q.chordal(&fix) > DEDUP) {
            points.push((w.clone(), fix));
        }
    });
    if points.is_empty() {
        return Err(Error::NoLoxodromic);
    }
    Ok(LimitCloud { points })
}

/// Approximate membership in U = Theta union (Omega x CP^1): true on the
/// matrix chart, and on the slice iff the first splitting factor stays
/// `eps` away from the limit cloud.
pub fn u_gamma_membership(
    x: &QuadricPoint,
    cloud: &LimitCloud,
    eps: f64,
    tol: &Tolerances,
) -> bool {
    if x.in_theta(tol) {
        return true;
    }
    match q2_split(x, tol) {
        Ok((first, _)) => cloud.min_dist(&first) > eps,
        Err(_) => true,
    }
}

/// Membership in V = f(U) in CP^3, by lifting z3 = sqrt(z1 z5 - z2 z4);
/// both lifts are j-equivalent so one suffices.
pub fn v_gamma_membership(
    p: &PointCp3,
    cloud: &LimitCloud,
    eps: f64,
    tol: &Tolerances,
) -> bool {
    let [w1, w2, w4, w5] = *p.coords();
    let z3 = (w1 * w5 - w2 * w4).sqrt();
    let lifted = QuadricPoint::from_vec([w1, w2, z3, w4, w5], tol)
        .expect("the lift satisfies q = 0 by construction");
    u_gamma_membership(&lifted, cloud, eps, tol)
}

/// Reduces a point into the fundamental cell of a certified Schottky
/// configuration: while delta(x) lies in some pairing half-space, apply
/// the matching generator or inverse. Returns the cell representative and
/// the total applied word.
pub fn schottky_reduce(
    x: &QuadricPoint,
    spec: &GroupSpec,
    max_iter: usize,
    tol: &Tolerances,
) -> Result<(QuadricPoint, Word)> {
    let pairs = spec.schottky().ok_or(Error::MissingSchottkyData)?;
    let mut current = *x;
    let mut applied = Word::identity();
    let cap = 10 * max_iter.max(1);
    for _ in 0..cap {
        let h = delta_map(&current, tol);
        let mut letter: Option<i8> = None;
        let mut depth = 0.0;
        for (i, pair) in pairs.iter().enumerate() {
            // Inside d_i: apply s_i^{-1}. Inside c_i: apply s_i.
            let vd = pair.d.halfspace_value(&h);
            if vd < -1e-13 && vd < depth {
                depth = vd;
                letter = Some(-(i as i8 + 1));
            }
            let vc = pair.c.halfspace_value(&h);
            if vc < -1e-13 && vc < depth {
                depth = vc;
                letter = Some(i as i8 + 1);
            }
        }
        match letter {
            None => return Ok((current, applied)),
            Some(l) => {
                // Entering d_i means the point is an s_i-image; peel with
                // the inverse letter.
                current = act(&spec.generator_pair(l), &current);
                let mut w = Word::from_letters(&[l]);
                w = w.concat(&applied);
                applied = w;
            }
        }
    }
    Err(Error::NoConvergence { steps: cap })
}
