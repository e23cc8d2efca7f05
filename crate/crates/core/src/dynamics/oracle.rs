//! Brute-force dynamical-relation oracle: a finite approximation of the
//! accumulation set D(x) by perturbed orbits.
//!
//! A point y lies in D(x) when some sequence x_k -> x has g_k x_k -> y.
//! The sampler draws perturbation directions on the quadric and approach
//! rates alpha, shrinks the perturbation like e^{-alpha mu_n} along the
//! tail of the sequence, and clusters the resulting images. Varying alpha
//! sweeps the transition regimes that produce the geodesic and cone limits
//! of the mixed and bounded classes.

use super::SequenceSpec;
use crate::error::Result;
use crate::mat5::Mat5;
use crate::quadric::{project_to_quadric, QuadricPoint};
use crate::rep::{cartan_kak, psi_raw};
use crate::sample;
use crate::tol::Tolerances;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy)]
pub struct OracleConfig {
    pub sample_count: usize,
    pub perturb_radius: f64,
    pub cluster_eps: f64,
    pub prefix_len: usize,
    pub rng_seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            sample_count: 64,
            perturb_radius: 1e-3,
            cluster_eps: 1e-2,
            prefix_len: 30,
            rng_seed: 0x5EED,
        }
    }
}

#[derive(Debug, Clone)]
pub struct OracleOutcome {
    /// Cluster representatives, in deterministic discovery order.
    pub clusters: Vec<QuadricPoint>,
    pub not_divergent: bool,
}

impl OracleOutcome {
    pub fn min_dist(&self, x: &QuadricPoint) -> f64 {
        self.clusters
            .iter()
            .map(|p| p.chordal(x))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Finite approximation of the dynamical relation D(x) of the sequence.
/// Deterministic given the seed.
pub fn oracle_dynrel(
    seq: &SequenceSpec,
    x: &QuadricPoint,
    cfg: &OracleConfig,
    tol: &Tolerances,
) -> Result<OracleOutcome> {
    let elements = seq.materialize(cfg.prefix_len)?;
    let elements = &elements[..elements.len().min(cfg.prefix_len.max(1))];
    let mut mus = Vec::with_capacity(elements.len());
    for p in elements {
        mus.push(cartan_kak(p)?.mu);
    }
    let last_mu = mus.last().copied().unwrap_or(0.0);
    if last_mu < 0.5 {
        return Ok(OracleOutcome {
            clusters: vec![*x],
            not_divergent: true,
        });
    }
    // Tail window of up to three elements carries the asymptotic images.
    let tail_start = elements.len().saturating_sub(3);
    let tail: Vec<(Mat5, f64)> = (tail_start..elements.len())
        .map(|n| (psi_raw(&elements[n]), mus[n]))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.rng_seed);
    let mut images: Vec<QuadricPoint> = Vec::new();
    let mut push_image = |m: &Mat5, v: &[num_complex::Complex64; 5]| {
        let w = m.apply(v);
        if let Some(z) = project_to_quadric(&w) {
            if let Ok(p) = QuadricPoint::from_vec(z, tol) {
                images.push(p);
            }
        }
    };
    // Unperturbed orbit tail.
    for (m, _) in &tail {
        push_image(m, &x.lift());
    }
    for _ in 0..cfg.sample_count {
        let alpha: f64 = rng.gen_range(0.0..1.6);
        let dir = sample::random_vec5(&mut rng);
        let dn = crate::proj::norm(&dir);
        for (m, mu) in &tail {
            let eps = cfg.perturb_radius * (-alpha * mu).exp();
            let mut v = x.lift();
            for i in 0..5 {
                v[i] += dir[i] * (eps / dn);
            }
            let Some(z) = project_to_quadric(&v) else {
                continue;
            };
            push_image(m, &z);
        }
    }
    // Greedy deterministic clustering.
    let mut clusters: Vec<QuadricPoint> = Vec::new();
    for p in images {
        if clusters.iter().all(|q| q.chordal(&p) > cfg.cluster_eps) {
            clusters.push(p);
        }
    }
    Ok(OracleOutcome {
        clusters,
        not_divergent: false,
    })
}
