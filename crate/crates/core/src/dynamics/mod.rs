//! Dynamics of divergent sequences on the quadric: distortion
//! classification from the Cartan exponents, closed-form limit light
//! geodesics, the dynamical-limit calculus for the three distortion
//! classes, and conjugation transport.
//!
//! With the canonical order mu >= lambda >= 0 the exponents of a pair are
//! lambda = |sigma_g - sigma_h| and mu = sigma_g + sigma_h, so a sequence
//! diverges iff mu does, and the class is read from s_min = min(sigma_g,
//! sigma_h) = (mu - lambda) / 2 and s_diff = lambda:
//! bounded s_diff with divergent mu is bounded distortion, bounded s_min
//! with divergent s_diff is balanced (delta = -2 lim s_min), both
//! divergent is mixed.

pub mod frances;
pub mod oracle;

use crate::error::{Error, Result};
use crate::klein::{words, GroupSpec};
use crate::mat5::{Mat5, Vec5};
use crate::proj::C64;
use crate::quadric::{
    cone_contains,LightCone, LightGeodesic, QuadricPoint,
};
use crate::rep::{cartan_kak, flip_matrix, psi, CartanData, PairElement, ProjMat5};
use crate::sl2::{classify_element, svd2, Mat2, MobiusClass};
use crate::tol::Tolerances;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A divergent sequence: an explicit list, the powers of one element, or a
/// word ball read in breadth-first order.
#[derive(Debug, Clone)]
pub enum SequenceSpec {
    Explicit(Vec<PairElement>),
    Cyclic(PairElement),
    WordBall { spec: GroupSpec, max_len: usize },
}

impl SequenceSpec {
    /// Concrete elements of the sequence. Cyclic powers are capped so the
    /// matrix entries stay within double range.
    pub fn materialize(&self, want: usize) -> Result<Vec<PairElement>> {
        match self {
            SequenceSpec::Explicit(v) => Ok(v.clone()),
            SequenceSpec::Cyclic(base) => {
                let d = cartan_kak(base)?;
                // Keep n mu below 150 so squared entries of the powers stay
                // finite in doubles.
                let cap = if d.mu < 1e-6 {
                    want
                } else {
                    ((150.0 / d.mu) as usize).clamp(4, want.max(4))
                };
                let n = want.min(cap).max(4);
                let mut out = Vec::with_capacity(n);
                let mut acc = base.clone();
                for _ in 0..n {
                    out.push(acc.clone());
                    acc = acc.product(base);
                }
                Ok(out)
            }
            SequenceSpec::WordBall { spec, max_len } => {
                let mut out = Vec::new();
                words::for_each_word(spec, *max_len, |_, p| out.push(p.clone()));
                Ok(out)
            }
        }
    }
}

/// Least-squares line fit diagnostics of one exponent series.
#[derive(Debug, Clone, Copy)]
pub struct LineFit {
    pub slope: f64,
    pub intercept: f64,
    /// Max absolute residual of the fit.
    pub residual: f64,
    /// Max - min of the fitted values.
    pub range: f64,
}

fn line_fit(ys: &[f64]) -> LineFit {
    let n = ys.len() as f64;
    if ys.len() < 2 {
        return LineFit {
            slope: 0.0,
            intercept: ys.first().copied().unwrap_or(0.0),
            residual: 0.0,
            range: 0.0,
        };
    }
    let sx: f64 = (0..ys.len()).map(|i| i as f64).sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = (0..ys.len()).map(|i| (i * i) as f64).sum();
    let sxy: f64 = ys.iter().enumerate().map(|(i, y)| i as f64 * y).sum();
    let denom = n * sxx - sx * sx;
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let residual = ys
        .iter()
        .enumerate()
        .map(|(i, y)| (y - (slope * i as f64 + intercept)).abs())
        .fold(0.0, f64::max);
    let range = ys.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - ys.iter().cloned().fold(f64::INFINITY, f64::min);
    LineFit {
        slope,
        intercept,
        residual,
        range,
    }
}

/// Distortion class of a divergent sequence.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistortionTag {
    /// delta = lim (lambda_n - mu_n) = -2 lim min(sigma_g, sigma_h).
    Balanced { delta: f64 },
    Bounded,
    Mixed,
    NotDivergent,
    Undetermined,
}

impl DistortionTag {
    pub fn name(&self) -> &'static str {
        match self {
            DistortionTag::Balanced { .. } => "Balanced",
            DistortionTag::Bounded => "Bounded",
            DistortionTag::Mixed => "Mixed",
            DistortionTag::NotDivergent => "NotDivergent",
            DistortionTag::Undetermined => "Undetermined",
        }
    }
}

/// Tail-fit evidence backing a classification.
#[derive(Debug, Clone)]
pub struct Evidence {
    pub n: usize,
    pub lambda: LineFit,
    pub mu: LineFit,
    /// Fit of mu - lambda = 2 min(sigma_g, sigma_h).
    pub gap: LineFit,
    pub smin_tail_mean: f64,
    pub sdiff_tail_mean: f64,
    pub flip_tail: bool,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub tag: DistortionTag,
    pub evidence: Evidence,
}

/// Thresholds of the finite-data classification policy: a series is
/// bounded when its tail slope and range are small, divergent when the
/// slope clearly grows; the band between is reported as undetermined.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyPolicy {
    pub bounded_slope: f64,
    pub bounded_range: f64,
    pub divergent_slope: f64,
    pub min_explicit: usize,
    pub cyclic_samples: usize,
}

impl Default for ClassifyPolicy {
    fn default() -> Self {
        ClassifyPolicy {
            bounded_slope: 1e-3,
            bounded_range: 1.0,
            divergent_slope: 1e-2,
            min_explicit: 8,
            cyclic_samples: 24,
        }
    }
}

fn tail<T>(v: &[T]) -> &[T] {
    let start = v.len() - (v.len() / 2).max(2).min(v.len());
    &v[start..]
}

/// Last quarter, used for frame averaging.
fn tail_quarter<T>(v: &[T]) -> &[T] {
    let count = v.len().div_ceil(4).max(2).min(v.len());
    &v[v.len() - count..]
}

fn evidence_from(cartans: &[CartanData]) -> Evidence {
    let lambda: Vec<f64> = cartans.iter().map(|d| d.lambda).collect();
    let mu: Vec<f64> = cartans.iter().map(|d| d.mu).collect();
    let gap: Vec<f64> = cartans.iter().map(|d| d.mu - d.lambda).collect();
    let smin_tail: Vec<f64> = tail(&gap).iter().map(|g| g / 2.0).collect();
    let sdiff_tail = tail(&lambda);
    let tail_flips = tail(cartans);
    Evidence {
        n: cartans.len(),
        lambda: line_fit(tail(&lambda)),
        mu: line_fit(tail(&mu)),
        gap: line_fit(tail(&gap)),
        smin_tail_mean: smin_tail.iter().sum::<f64>() / smin_tail.len() as f64,
        sdiff_tail_mean: sdiff_tail.iter().sum::<f64>() / sdiff_tail.len() as f64,
        flip_tail: tail_flips.iter().all(|d| d.flip == tail_flips[0].flip),
    }
}

fn classify_from_evidence(ev: &Evidence, policy: &ClassifyPolicy) -> DistortionTag {
    let bounded =
        |f: &LineFit| f.slope.abs() < policy.bounded_slope && f.range < policy.bounded_range;
    let divergent = |f: &LineFit| f.slope > policy.divergent_slope;
    let smin_fit = LineFit {
        slope: ev.gap.slope / 2.0,
        intercept: ev.gap.intercept / 2.0,
        residual: ev.gap.residual / 2.0,
        range: ev.gap.range / 2.0,
    };
    if bounded(&ev.mu) {
        DistortionTag::NotDivergent
    } else if !divergent(&ev.mu) {
        DistortionTag::Undetermined
    } else if bounded(&ev.lambda) {
        DistortionTag::Bounded
    } else if divergent(&ev.lambda) && bounded(&smin_fit) {
        DistortionTag::Balanced {
            delta: -2.0 * ev.smin_tail_mean,
        }
    } else if divergent(&ev.lambda) && divergent(&smin_fit) {
        DistortionTag::Mixed
    } else {
        DistortionTag::Undetermined
    }
}

/// Class of the power sequence of one pair, decided from the translation
/// lengths of the two factors (loxodromic powers grow like n tau, parabolic
/// ones like log n). Balanced tags carry delta = NaN here; `classify`
/// fills it from the tail evidence.
pub fn classify_cyclic_fast(base: &PairElement) -> DistortionTag {
    let cg = classify_element(&base.g);
    let ch = classify_element(&base.h);
    let (tg, th) = (cg.tau_len, ch.tau_len);
    let pg = cg.class == MobiusClass::Parabolic;
    let ph = ch.class == MobiusClass::Parabolic;
    let div_g = tg > 1e-12 || pg;
    let div_h = th > 1e-12 || ph;
    let balanced = DistortionTag::Balanced { delta: f64::NAN };
    if !div_g && !div_h {
        return DistortionTag::NotDivergent;
    }
    if tg > 1e-12 && th > 1e-12 {
        if (tg - th).abs() <= 1e-12 * tg.max(th) {
            return DistortionTag::Bounded;
        }
        return DistortionTag::Mixed;
    }
    if tg > 1e-12 {
        // Powers of h grow at most logarithmically.
        if ph {
            return DistortionTag::Mixed;
        }
        return balanced;
    }
    if th > 1e-12 {
        if pg {
            return DistortionTag::Mixed;
        }
        return balanced;
    }
    // Both translation lengths vanish; divergence is parabolic.
    if pg && ph {
        DistortionTag::Bounded
    } else {
        balanced
    }
}

fn cyclic_tag(base: &PairElement, ev: &Evidence) -> DistortionTag {
    match classify_cyclic_fast(base) {
        DistortionTag::Balanced { .. } => DistortionTag::Balanced {
            delta: -2.0 * ev.smin_tail_mean,
        },
        other => other,
    }
}

/// Distortion classification. Explicit sequences need at least
/// `policy.min_explicit` elements and are classified by tail line fits;
/// cyclic sequences are decided from the translation lengths of the two
/// factors, with the numeric evidence attached.
pub fn classify(seq: &SequenceSpec, policy: &ClassifyPolicy) -> Result<Classification> {
    match seq {
        SequenceSpec::Explicit(v) if v.len() < policy.min_explicit => Err(Error::TooShort {
            len: v.len(),
            min: policy.min_explicit,
        }),
        SequenceSpec::Cyclic(base) => {
            let elements = seq.materialize(policy.cyclic_samples)?;
            let cartans: Vec<CartanData> =
                elements.iter().map(cartan_kak).collect::<Result<_>>()?;
            let ev = evidence_from(&cartans);
            Ok(Classification {
                tag: cyclic_tag(base, &ev),
                evidence: ev,
            })
        }
        _ => {
            let elements = seq.materialize(usize::MAX)?;
            if elements.len() < policy.min_explicit {
                return Err(Error::TooShort {
                    len: elements.len(),
                    min: policy.min_explicit,
                });
            }
            let cartans: Vec<CartanData> =
                elements.iter().map(cartan_kak).collect::<Result<_>>()?;
            let ev = evidence_from(&cartans);
            Ok(Classification {
                tag: classify_from_evidence(&ev, policy),
                evidence: ev,
            })
        }
    }
}

/// Limit objects of a divergent sequence: the attractor/repeller light
/// geodesics, the cone vertices for the mixed and bounded classes, the
/// cone-space map for the bounded class, and the converged outer frames.
#[derive(Debug, Clone)]
pub struct LimitData {
    pub class: Classification,
    pub delta_plus: LightGeodesic,
    pub delta_minus: LightGeodesic,
    pub p_plus: Option<QuadricPoint>,
    pub p_minus: Option<QuadricPoint>,
    pub g_infinity: Option<ProjMat5>,
    pub flip: bool,
    /// Balanced shift delta, when applicable.
    pub delta: Option<f64>,
    /// Bounded-class limit of lambda, when applicable.
    pub lambda_inf: Option<f64>,
    frame_plus: ProjMat5,
    frame_minus: ProjMat5,
}

impl LimitData {
    pub fn frames(&self) -> (&ProjMat5, &ProjMat5) {
        (&self.frame_plus, &self.frame_minus)
    }
}

fn e_vec(i: usize) -> Vec5 {
    let mut v = [c(0.0, 0.0); 5];
    v[i] = c(1.0, 0.0);
    v
}

/// Model attractor plane span(e1, e2) and repeller plane span(e4, e5).
fn model_plus() -> LightGeodesic {
    LightGeodesic::from_span(e_vec(0), e_vec(1), &Tolerances::default()).unwrap()
}

fn model_minus() -> LightGeodesic {
    LightGeodesic::from_span(e_vec(3), e_vec(4), &Tolerances::default()).unwrap()
}

/// The balanced model limit map [z1 : z2 : ...] -> [z1 : e^-delta z2 : 0 : 0 : 0].
fn balanced_model(delta: f64) -> Mat5 {
    let mut m = Mat5::zero();
    m.0[0][0] = c(1.0, 0.0);
    m.0[1][1] = c((-delta).exp(), 0.0);
    m
}

/// The bounded model cone map: (z1, ..., z5) ->
/// (e^l z1, z4, z3, z2, e^-l z5); it exchanges the cones of the model
/// repeller and attractor vertices.
fn bounded_model(lambda_inf: f64) -> Mat5 {
    let mut m = Mat5::zero();
    m.0[0][0] = c(lambda_inf.exp(), 0.0);
    m.0[1][3] = c(1.0, 0.0);
    m.0[2][2] = c(1.0, 0.0);
    m.0[3][1] = c(1.0, 0.0);
    m.0[4][4] = c((-lambda_inf).exp(), 0.0);
    m
}

/// Re-unitarize a near-SU(2) average: Gram-Schmidt over the columns plus a
/// determinant phase correction.
fn to_su2(m: &Mat2) -> Mat2 {
    let n1 = (m.a.norm_sqr() + m.c.norm_sqr()).sqrt();
    let (a, cc) = (m.a / n1, m.c / n1);
    let inner = m.b * a.conj() + m.d * cc.conj();
    let (mut b, mut d) = (m.b - inner * a, m.d - inner * cc);
    let n2 = (b.norm_sqr() + d.norm_sqr()).sqrt();
    b /= n2;
    d /= n2;
    let det = a * d - b * cc;
    let phase = det / det.norm();
    Mat2::new(a, b / phase, cc, d / phase)
}

fn average_su2(mats: &[Mat2]) -> Mat2 {
    let reference = mats[mats.len() - 1];
    let mut sum = Mat2::new(c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0));
    for m in mats {
        let inner = m.a * reference.a.conj()
            + m.b * reference.b.conj()
            + m.c * reference.c.conj()
            + m.d * reference.d.conj();
        let sign = if inner.re >= 0.0 { 1.0 } else { -1.0 };
        sum = Mat2::new(
            sum.a + m.a * sign,
            sum.b + m.b * sign,
            sum.c + m.c * sign,
            sum.d + m.d * sign,
        );
    }
    to_su2(&sum)
}

fn converged_frames(
    cartans: &[CartanData],
    tol: &Tolerances,
) -> Result<(ProjMat5, ProjMat5, bool)> {
    let t = tail_quarter(cartans);
    let flip = t[0].flip;
    if !t.iter().all(|d| d.flip == flip) {
        return Err(Error::NotConvergentFrame { deviation: 1.0 });
    }
    let k1 = PairElement {
        g: average_su2(&t.iter().map(|d| d.k1.g).collect::<Vec<_>>()),
        h: average_su2(&t.iter().map(|d| d.k1.h).collect::<Vec<_>>()),
        word: None,
    };
    let k2 = PairElement {
        g: average_su2(&t.iter().map(|d| d.k2.g).collect::<Vec<_>>()),
        h: average_su2(&t.iter().map(|d| d.k2.h).collect::<Vec<_>>()),
        word: None,
    };
    let i = flip_matrix();
    let build_plus = |k: &PairElement| {
        let raw = crate::rep::psi_raw(k);
        if flip {
            ProjMat5::from_orthogonal(raw * i)
        } else {
            ProjMat5::from_orthogonal(raw)
        }
    };
    let build_minus = |k: &PairElement| {
        let raw = crate::rep::psi_raw(k);
        if flip {
            ProjMat5::from_orthogonal(i * raw)
        } else {
            ProjMat5::from_orthogonal(raw)
        }
    };
    let frame_plus = build_plus(&k1);
    let frame_minus = build_minus(&k2);
    // Every tail member must sit close to the average.
    let mut deviation = 0.0f64;
    for d in t {
        deviation = deviation.max(build_plus(&d.k1).chordal(&frame_plus));
        deviation = deviation.max(build_minus(&d.k2).chordal(&frame_minus));
    }
    if deviation > tol.frame_convergence {
        return Err(Error::NotConvergentFrame { deviation });
    }
    Ok((frame_plus, frame_minus, flip))
}

fn derive_limit_data(
    class: Classification,
    frame_plus: ProjMat5,
    frame_minus: ProjMat5,
    flip: bool,
) -> Result<LimitData> {
    let (delta, lambda_inf) = match class.tag {
        DistortionTag::Balanced { delta } => (Some(delta), None),
        DistortionTag::Bounded => (None, Some(class.evidence.sdiff_tail_mean)),
        DistortionTag::Mixed => (None, None),
        _ => {
            return Err(Error::WrongClass {
                found: class.tag.name(),
            })
        }
    };
    let bm = frame_minus.inverse();
    let delta_plus = frame_plus.apply_geodesic(&model_plus());
    let delta_minus = bm.apply_geodesic(&model_minus());
    let needs_vertices = !matches!(class.tag, DistortionTag::Balanced { .. });
    let p_plus = needs_vertices.then(|| frame_plus.apply_point(&QuadricPoint::basis(1)));
    let p_minus = needs_vertices.then(|| bm.apply_point(&QuadricPoint::basis(3)));
    let g_infinity = lambda_inf.map(|l| {
        frame_plus
            .compose(&ProjMat5::from_orthogonal(bounded_model(l)))
            .compose(&frame_minus)
    });
    Ok(LimitData {
        class,
        delta_plus,
        delta_minus,
        p_plus,
        p_minus,
        g_infinity,
        flip,
        delta,
        lambda_inf,
        frame_plus,
        frame_minus,
    })
}

/// Limit data for a classified sequence of any divergent class.
pub fn limit_data(
    seq: &SequenceSpec,
    class: &Classification,
    tol: &Tolerances,
) -> Result<LimitData> {
    match class.tag {
        DistortionTag::NotDivergent | DistortionTag::Undetermined => Err(Error::WrongClass {
            found: class.tag.name(),
        }),
        _ => {
            let elements = seq.materialize(ClassifyPolicy::default().cyclic_samples)?;
            let cartans: Vec<CartanData> =
                elements.iter().map(cartan_kak).collect::<Result<_>>()?;
            let (fp, fm, flip) = converged_frames(&cartans, tol)?;
            derive_limit_data(class.clone(), fp, fm, flip)
        }
    }
}

/// The attractor/repeller geodesics of a balanced or mixed sequence
/// (errors on the bounded class, whose limit objects are cones).
pub fn limit_geodesics(
    seq: &SequenceSpec,
    class: &Classification,
    tol: &Tolerances,
) -> Result<LimitData> {
    match class.tag {
        DistortionTag::Balanced { .. } | DistortionTag::Mixed => limit_data(seq, class, tol),
        _ => Err(Error::WrongClass {
            found: class.tag.name(),
        }),
    }
}

/// Value of the dynamical limit D(x) for a classified sequence.
#[derive(Debug, Clone)]
pub enum DynLimit {
    Point(QuadricPoint),
    Geodesic(LightGeodesic),
    Cone(LightCone),
}

/// D(x) from precomputed limit data.
pub fn dyn_limit_with(data: &LimitData, x: &QuadricPoint, tol: &Tolerances) -> Result<DynLimit> {
    let eps = tol.projective_eq;
    match data.class.tag {
        DistortionTag::Balanced { delta } => {
            if data.delta_minus.dist(x) <= eps {
                return Err(Error::UndefinedOnRepeller);
            }
            let y = data.frame_minus.apply_vec(&x.lift());
            let s = balanced_model(delta).apply(&y);
            let v = data.frame_plus.apply_vec(&s);
            Ok(DynLimit::Point(QuadricPoint::from_vec(v, tol)?))
        }
        DistortionTag::Mixed => {
            let p_minus = data.p_minus.as_ref().expect("mixed data has vertices");
            let p_plus = data.p_plus.as_ref().expect("mixed data has vertices");
            if x.approx_eq(p_minus, eps) {
                return Err(Error::UndefinedOnRepeller);
            }
            if !cone_contains(p_minus, x, tol) {
                return Ok(DynLimit::Point(*p_plus));
            }
            if data.delta_minus.dist(x) > eps {
                return Ok(DynLimit::Geodesic(data.delta_plus));
            }
            Ok(DynLimit::Cone(LightCone { vertex: *p_plus }))
        }
        DistortionTag::Bounded => {
            let p_minus = data.p_minus.as_ref().expect("bounded data has vertices");
            let p_plus = data.p_plus.as_ref().expect("bounded data has vertices");
            if !cone_contains(p_minus, x, tol) {
                return Ok(DynLimit::Point(*p_plus));
            }
            if x.approx_eq(p_minus, eps) {
                return Err(Error::UndefinedOnRepeller);
            }
            let through = LightGeodesic::through(p_minus, x, tol)?;
            let g_inf = data.g_infinity.as_ref().expect("bounded data has the cone map");
            Ok(DynLimit::Geodesic(g_inf.apply_geodesic(&through)))
        }
        _ => Err(Error::WrongClass {
            found: data.class.tag.name(),
        }),
    }
}

/// D(x) for a sequence, classifying on the way.
pub fn dyn_limit(seq: &SequenceSpec, x: &QuadricPoint, tol: &Tolerances) -> Result<DynLimit> {
    let class = classify(seq, &ClassifyPolicy::default())?;
    let data = limit_data(seq, &class, tol)?;
    dyn_limit_with(&data, x, tol)
}

/// The transversal geodesic l_q through a point q of the balanced
/// attractor: the fiber of the limit map over q. The family over all q
/// foliates the slice minus the repeller, and the base-point assignment is
/// a Mobius map (z -> -z e^delta in model coordinates).
pub fn lq_of(q: &QuadricPoint, data: &LimitData, tol: &Tolerances) -> Result<LightGeodesic> {
    let delta = match data.class.tag {
        DistortionTag::Balanced { delta } => delta,
        _ => {
            return Err(Error::WrongClass {
                found: data.class.tag.name(),
            })
        }
    };
    if data.delta_plus.dist(q) > 1e-6 {
        return Err(Error::WrongClass {
            found: "point off the attractor geodesic",
        });
    }
    let zq = data.frame_plus.inverse().apply_vec(&q.lift());
    let (z1, z2) = (zq[0], zq[1] * delta.exp());
    let v1 = [z1, z2, c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)];
    let v2 = [c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), z1, z2];
    let bm = data.frame_minus.inverse();
    LightGeodesic::from_span(bm.apply_vec(&v1), bm.apply_vec(&v2), tol)
}

/// Transport of limit data along h_n = post . g_n . pre: the attractor
/// side moves by psi(post) and the repeller side by psi(pre)^{-1}.
pub fn conjugate_limits(
    pre: &PairElement,
    data: &LimitData,
    post: &PairElement,
) -> Result<LimitData> {
    let mpre = psi(pre)?;
    let mpost = psi(post)?;
    derive_limit_data(
        data.class.clone(),
        mpost.compose(&data.frame_plus),
        data.frame_minus.compose(&mpre),
        data.flip,
    )
}

/// Translation-length data used by callers that scan word balls.
pub fn pair_translation_lengths(p: &PairElement) -> (f64, f64) {
    let sg = svd2(&p.g).map(|s| s.sigma).unwrap_or(f64::NAN);
    let sh = svd2(&p.h).map(|s| s.sigma).unwrap_or(f64::NAN);
    (sg, sh)
}

/// Aggregate Cartan classification of a full word ball, computed in
/// parallel with a deterministic merge. Used by the performance gate and
/// the CLI classify command on word-ball input.
#[derive(Debug, Clone, PartialEq)]
pub struct WordBallSummary {
    pub words: u64,
    pub balanced: u64,
    pub bounded: u64,
    pub mixed: u64,
    pub not_divergent: u64,
    pub flipped: u64,
    pub lambda_sum: f64,
    pub mu_sum: f64,
    pub max_mu: f64,
}

pub fn word_ball_summary(spec: &GroupSpec, max_len: usize) -> WordBallSummary {
    let zero = || WordBallSummary {
        words: 0,
        balanced: 0,
        bounded: 0,
        mixed: 0,
        not_divergent: 0,
        flipped: 0,
        lambda_sum: 0.0,
        mu_sum: 0.0,
        max_mu: 0.0,
    };
    words::par_word_fold(
        spec,
        max_len,
        zero,
        |acc, _w, p| {
            let d = match cartan_kak(p) {
                Ok(d) => d,
                Err(_) => return,
            };
            acc.words += 1;
            acc.lambda_sum += d.lambda;
            acc.mu_sum += d.mu;
            acc.max_mu = acc.max_mu.max(d.mu);
            if d.flip {
                acc.flipped += 1;
            }
            match classify_cyclic_fast(p) {
                DistortionTag::Balanced { .. } => acc.balanced += 1,
                DistortionTag::Bounded => acc.bounded += 1,
                DistortionTag::Mixed => acc.mixed += 1,
                DistortionTag::NotDivergent => acc.not_divergent += 1,
                DistortionTag::Undetermined => {}
            }
        },
        |mut a, b| {
            a.words += b.words;
            a.balanced += b.balanced;
            a.bounded += b.bounded;
            a.mixed += b.mixed;
            a.not_divergent += b.not_divergent;
            a.flipped += b.flipped;
            a.lambda_sum += b.lambda_sum;
            a.mu_sum += b.mu_sum;
            a.max_mu = a.max_mu.max(b.max_mu);
            a
        },
    )
}

#[cfg(test)]
mod tests;
