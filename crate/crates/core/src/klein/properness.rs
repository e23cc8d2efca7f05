//! Finite observables of proper discontinuity: which word translates of a
//! compact set can return to it, bounded-distortion symptoms, and the
//! quasi-isometry sandwich between word length and displacement.

use super::{words, GroupSpec};
use crate::sl2::{svd2, Mat2};
use crate::word::Word;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A compact subset of SL(2, C) given by a center, a Frobenius radius and
/// a deterministic finite sample.
#[derive(Debug, Clone)]
pub struct KSample {
    pub center: Mat2,
    pub radius: f64,
    pub points: Vec<Mat2>,
}

impl KSample {
    /// Ball around `center` with a seeded sample of interior points.
    pub fn ball(center: Mat2, radius: f64, count: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut points = vec![center];
        while points.len() < count {
            let n = crate::sample::random_near_identity(&mut rng, radius);
            points.push(center * n);
        }
        KSample {
            center,
            radius,
            points,
        }
    }
}

#[derive(Debug, Clone)]
pub struct WordEntry {
    pub word: Word,
    pub returns: bool,
    /// |sigma_g - sigma_h| of the pair value.
    pub sdiff: f64,
    /// sigma_g + sigma_h of the pair value.
    pub mu: f64,
}

/// Per-word translate flags for a compact set plus bounded-distortion
/// symptoms. The returning flag is a sound over-approximation: it can only
/// err by flagging a word whose translate merely comes near the set.
#[derive(Debug, Clone)]
pub struct PropernessReport {
    pub entries: Vec<WordEntry>,
    pub returning: Vec<Word>,
    pub max_returning_len: usize,
    pub suspect_bounded: bool,
}

impl PropernessReport {
    pub fn returning_set(&self) -> Vec<String> {
        self.returning.iter().map(|w| w.to_string()).collect()
    }
}

/// Flags each word (g, h) = (rho(w), u(w)) with |w| <= max_len whose
/// translate of K can intersect K: the distance from the moved sample to
/// the center must not exceed (||g|| ||h^{-1}|| + 1) radius.
pub fn properness_sl2_report(spec: &GroupSpec, k: &KSample, max_len: usize) -> PropernessReport {
    let mut entries = Vec::new();
    words::for_each_word(spec, max_len, |w, p| {
        let (sdiff, mu) = match (svd2(&p.g), svd2(&p.h)) {
            (Ok(sg), Ok(sh)) => ((sg.sigma - sh.sigma).abs(), sg.sigma + sh.sigma),
            _ => (f64::NAN, f64::NAN),
        };
        let hinv = p.h.adjugate();
        let lipschitz = p.g.op_norm() * hinv.op_norm();
        let mut d0 = f64::INFINITY;
        for x in &k.points {
            let moved = p.g * *x * hinv;
            d0 = d0.min(moved.dist(&k.center));
        }
        let returns = d0 <= (lipschitz + 1.0) * k.radius;
        entries.push(WordEntry {
            word: w.clone(),
            returns,
            sdiff,
            mu,
        });
    });
    let returning: Vec<Word> = entries
        .iter()
        .filter(|e| e.returns)
        .map(|e| e.word.clone())
        .collect();
    let max_returning_len = returning.iter().map(|w| w.len()).max().unwrap_or(0);
    let suspect_bounded = entries.iter().any(|e| e.mu >= 1.0 && e.sdiff <= 0.1);
    PropernessReport {
        entries,
        returning,
        max_returning_len,
        suspect_bounded,
    }
}

#[derive(Debug, Clone)]
pub struct QiFit {
    /// Multiplicative constant of the sandwich B^{-1} l - C <= d <= B l + C.
    pub b: f64,
    pub c: f64,
    /// Unit used to calibrate displacements (median generator displacement).
    pub unit: f64,
    /// Words on a sublinear lower envelope, the symptom of a non-loxodromic
    /// generator making displacement stall while length grows.
    pub violations: Vec<Word>,
}

/// Fits the smallest sandwich constants between word length and the
/// symmetric-space displacement d(w) = 2 sigma(rho(w)), calibrated so that
/// a single loxodromic generator gives exactly B = 1, C = 0.
pub fn quasi_isometry_fit(spec: &GroupSpec, max_len: usize) -> QiFit {
    let mut gen_disp: Vec<f64> = spec
        .generators()
        .iter()
        .map(|g| svd2(g).map(|s| 2.0 * s.sigma).unwrap_or(f64::NAN))
        .collect();
    gen_disp.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let unit = gen_disp[gen_disp.len() / 2].max(1e-9);

    // Per-length extremes of the calibrated displacement suffice for the
    // fit; the argmin words feed the violation report.
    #[derive(Clone)]
    struct Level {
        min_d: f64,
        max_d: f64,
        argmin: Option<Word>,
    }
    let levels = words::par_word_fold(
        spec,
        max_len,
        || {
            vec![
                Level {
                    min_d: f64::INFINITY,
                    max_d: f64::NEG_INFINITY,
                    argmin: None,
                };
                max_len + 1
            ]
        },
        |acc, w, p| {
            if w.is_empty() {
                return;
            }
            let d = svd2(&p.g).map(|s| 2.0 * s.sigma / unit).unwrap_or(f64::NAN);
            let lvl = &mut acc[w.len()];
            if d < lvl.min_d {
                lvl.min_d = d;
                lvl.argmin = Some(w.clone());
            }
            lvl.max_d = lvl.max_d.max(d);
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                if y.min_d < x.min_d {
                    x.min_d = y.min_d;
                    x.argmin = y.argmin;
                }
                x.max_d = x.max_d.max(y.max_d);
            }
            a
        },
    );

    // C(B) from per-length extremes; scan a log grid of B >= 1.
    let c_of_b = |b: f64| -> f64 {
        let mut c = 0.0f64;
        for (l, lvl) in levels.iter().enumerate().skip(1) {
            if lvl.max_d.is_finite() {
                c = c.max(lvl.max_d - b * l as f64);
                c = c.max(l as f64 / b - lvl.min_d);
            }
        }
        c
    };
    let mut best_b = 1.0;
    let mut best_c = c_of_b(1.0);
    for k in 0..=300 {
        let b = 10f64.powf(3.0 * k as f64 / 300.0);
        let c = c_of_b(b);
        if c < best_c - 1e-12 {
            best_b = b;
            best_c = c;
        }
    }

    // Sublinear lower envelope: fit the slope of min displacement against
    // length over the upper half of the range.
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let start = (max_len / 2).max(1);
    for (l, lvl) in levels.iter().enumerate().skip(start) {
        if lvl.min_d.is_finite() {
            xs.push(l as f64);
            ys.push(lvl.min_d);
        }
    }
    let mut violations = Vec::new();
    if xs.len() >= 2 {
        let n = xs.len() as f64;
        let sx: f64 = xs.iter().sum();
        let sy: f64 = ys.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
        let slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        if slope < 0.02 {
            for lvl in levels.iter().skip(start) {
                if let Some(w) = &lvl.argmin {
                    violations.push(w.clone());
                }
            }
        }
    }
    QiFit {
        b: best_b,
        c: best_c.max(0.0),
        unit,
        violations,
    }
}
