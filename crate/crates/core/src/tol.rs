/// Numerical tolerances used throughout the crate.
///
/// Every tolerance is relative to the natural scale of the quantity it
/// guards (squared norms for quadric residuals, unit vectors for chordal
/// distances). The defaults leave roughly three decades of headroom over
/// accumulated double-precision rounding in the longest operation chains
/// (word products of length twelve followed by a Cartan split).
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    /// |q(z)| / |z|^2 below which a point counts as on the quadric.
    pub quadric_membership: f64,
    /// |z3| below which a normalized point counts as on the z3 = 0 slice.
    pub q2_slice: f64,
    /// |b(v, w)| / (|v| |w|) below which a pair counts as isotropic.
    pub isotropy: f64,
    /// Chordal distance below which two projective points are equal.
    pub projective_eq: f64,
    /// Projective reconstruction error allowed for a Cartan split.
    pub kak_reconstruction: f64,
    /// Chordal tail deviation above which outer Cartan frames are declared
    /// non-convergent.
    pub frame_convergence: f64,
    /// Chordal distance for deduplicating limit geodesics by base point.
    pub geodesic_dedup: f64,
    /// Epsilon for approximate discontinuity-domain membership.
    pub omega_membership: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            quadric_membership: 1e-9,
            q2_slice: 1e-9,
            isotropy: 1e-9,
            projective_eq: 1e-9,
            kak_reconstruction: 1e-8,
            frame_convergence: 1e-3,
            geodesic_dedup: 1e-4,
            omega_membership: 1e-3,
        }
    }
}

impl Tolerances {
    /// Tolerances with the membership knobs scaled by `factor`; used by the
    /// CLI `--tol` override.
    pub fn scaled(factor: f64) -> Self {
        let base = Tolerances::default();
        Tolerances {
            quadric_membership: base.quadric_membership * factor,
            q2_slice: base.q2_slice * factor,
            isotropy: base.isotropy * factor,
            projective_eq: base.projective_eq * factor,
            ..base
        }
    }
}
