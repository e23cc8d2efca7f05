//! Approximation of the limit set built from attractor/repeller light
//! geodesics of the balanced and mixed cyclic sequences of a word ball.
//!
//! For a word w with pair value (g, h), the powers form a cyclic sequence
//! whose limit geodesics are leaves of the z3 = 0 surface: vertical with
//! bases at the fixed points of g when g dominates (tau(g) > tau(h)),
//! horizontal with bases at the fixed points of h when h dominates.
//! Words with tau(g) = tau(h) > 0 are of bounded distortion and contribute
//! no geodesics; they are counted and reported.

use crate::error::{Error, Result};
use crate::klein::{words, GroupSpec};
use crate::proj::PointCp1;
use crate::quadric::{horizontal_geodesic, vertical_geodesic, LightGeodesic, OrientationTag, QuadricPoint};
use crate::sl2::{classify_element, Mat2, MobiusClass};
use crate::tol::Tolerances;
use crate::word::Word;

#[derive(Debug, Clone)]
pub struct FrancesLimitSet {
    pub geodesics: Vec<LightGeodesic>,
    /// (orientation, base point, first word that produced it).
    pub bases: Vec<(OrientationTag, PointCp1, Word)>,
    /// Sampled points of the union of the geodesics.
    pub cloud: Vec<QuadricPoint>,
    /// Words of bounded distortion encountered (no geodesic contribution).
    pub bounded_words: usize,
    pub horizontal_count: usize,
}

impl FrancesLimitSet {
    pub fn base_points(&self) -> Vec<PointCp1> {
        self.bases.iter().map(|(_, p, _)| *p).collect()
    }

    pub fn all_vertical(&self) -> bool {
        self.horizontal_count == 0
    }
}

fn dominant_bases(m: &Mat2) -> Option<(PointCp1, PointCp1)> {
    let cls = classify_element(m);
    match cls.class {
        MobiusClass::Loxodromic => Some((cls.fixed[0], cls.fixed[1])),
        MobiusClass::Parabolic => Some((cls.fixed[0], cls.fixed[0])),
        _ => None,
    }
}

/// Collects the limit geodesics of all cyclic word sequences up to
/// max_len, deduplicated by base point, with a sampled point cloud.
pub fn frances_limit_set(
    spec: &GroupSpec,
    max_len: usize,
    samples_per_geodesic: usize,
    tol: &Tolerances,
) -> Result<FrancesLimitSet> {
    let mut bases: Vec<(OrientationTag, PointCp1, Word)> = Vec::new();
    let mut bounded_words = 0usize;
    words::for_each_word(spec, max_len, |w, p| {
        if w.is_empty() {
            return;
        }
        let cg = classify_element(&p.g);
        let ch = classify_element(&p.h);
        let pg = cg.class == MobiusClass::Parabolic;
        let ph = ch.class == MobiusClass::Parabolic;
        let div_g = cg.tau_len > 1e-12 || pg;
        let div_h = ch.tau_len > 1e-12 || ph;
        if !div_g && !div_h {
            return;
        }
        // Bounded distortion: equal growth on both factors.
        let equal_tau = (cg.tau_len - ch.tau_len).abs() <= 1e-12 * cg.tau_len.max(ch.tau_len);
        if (cg.tau_len > 1e-12 && ch.tau_len > 1e-12 && equal_tau)
            || (cg.tau_len <= 1e-12 && ch.tau_len <= 1e-12 && pg && ph)
        {
            bounded_words += 1;
            return;
        }
        let (tag, pair) = if cg.tau_len > ch.tau_len || (cg.tau_len <= 1e-12 && ch.tau_len <= 1e-12 && pg)
        {
            (OrientationTag::Vertical, dominant_bases(&p.g))
        } else {
            (OrientationTag::Horizontal, dominant_bases(&p.h))
        };
        let Some((plus, minus)) = pair else { return };
        for base in [plus, minus] {
            let dup = bases
                .iter()
                .any(|(t, b, _)| *t == tag && b.chordal(&base) <= tol.geodesic_dedup);
            if !dup {
                bases.push((tag, base, w.clone()));
            }
        }
    });
    if bases.is_empty() {
        return Err(Error::NoDivergentWords);
    }
    let geodesics: Vec<LightGeodesic> = bases
        .iter()
        .map(|(tag, base, _)| match tag {
            OrientationTag::Vertical => vertical_geodesic(base),
            _ => horizontal_geodesic(base),
        })
        .collect();
    let mut cloud = Vec::with_capacity(geodesics.len() * samples_per_geodesic);
    for g in &geodesics {
        cloud.extend(g.sample(samples_per_geodesic));
    }
    let horizontal_count = bases
        .iter()
        .filter(|(t, _, _)| *t == OrientationTag::Horizontal)
        .count();
    Ok(FrancesLimitSet {
        geodesics,
        bases,
        cloud,
        bounded_words,
        horizontal_count,
    })
}

/// Directed Hausdorff-style distances between CP^1 point clouds.
pub fn hausdorff_cp1(a: &[PointCp1], b: &[PointCp1]) -> f64 {
    let one_way = |xs: &[PointCp1], ys: &[PointCp1]| {
        xs.iter()
            .map(|x| {
                ys.iter()
                    .map(|y| x.chordal(y))
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
