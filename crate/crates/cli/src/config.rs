//! JSON experiment configuration. One document drives every subcommand;
//! unknown keys are rejected so typos fail loudly. Complex numbers are
//! [re, im] pairs and 2x2 matrices are row-major arrays of four pairs.

use orthoklein::dynamics::SequenceSpec;
use orthoklein::klein::{Circle, CirclePair, GroupSpec};
use orthoklein::{C64, Mat2, PairElement, QuadricPoint, Tolerances};
use serde::Deserialize;

pub type C2 = [f64; 2];
pub type MatEntries = [C2; 4];

fn c64(v: C2) -> C64 {
    C64::new(v[0], v[1])
}

pub fn mat2(entries: &MatEntries) -> Mat2 {
    Mat2::new(c64(entries[0]), c64(entries[1]), c64(entries[2]), c64(entries[3]))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CircleConfig {
    pub center: C2,
    pub radius: f64,
    /// "inside" or "outside".
    pub interior: String,
}

impl CircleConfig {
    fn build(&self) -> Result<Circle, String> {
        let inside = match self.interior.as_str() {
            "inside" => true,
            "outside" => false,
            other => return Err(format!("interior must be inside/outside, got {other:?}")),
        };
        if !self.radius.is_finite() || self.radius <= 0.0 {
            return Err("circle radius must be positive".into());
        }
        Ok(Circle::from_center_radius(c64(self.center), self.radius, inside))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchottkyPairConfig {
    pub c: CircleConfig,
    pub d: CircleConfig,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupConfig {
    pub rank: Option<usize>,
    pub generators: Vec<MatEntries>,
    pub deformation: Option<Vec<MatEntries>>,
    pub schottky: Option<Vec<SchottkyPairConfig>>,
}

impl GroupConfig {
    pub fn build(&self) -> Result<GroupSpec, String> {
        if let Some(rank) = self.rank {
            if rank != self.generators.len() {
                return Err(format!(
                    "rank {rank} does not match {} generators",
                    self.generators.len()
                ));
            }
        }
        let generators: Vec<Mat2> = self.generators.iter().map(mat2).collect();
        let mut spec = GroupSpec::new(generators).map_err(|e| e.to_string())?;
        if let Some(u) = &self.deformation {
            spec = spec
                .with_deformation(u.iter().map(mat2).collect())
                .map_err(|e| e.to_string())?;
        }
        if let Some(pairs) = &self.schottky {
            let mut built = Vec::with_capacity(pairs.len());
            for p in pairs {
                built.push(CirclePair {
                    c: p.c.build()?,
                    d: p.d.build()?,
                });
            }
            spec = spec.with_schottky(built).map_err(|e| e.to_string())?;
        }
        Ok(spec)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairConfig {
    pub g: MatEntries,
    pub h: MatEntries,
}

impl PairConfig {
    fn build(&self) -> Result<PairElement, String> {
        PairElement::new(mat2(&self.g), mat2(&self.h)).map_err(|e| e.to_string())
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, tag = "kind", rename_all = "snake_case")]
pub enum SequenceConfig {
    Cyclic { g: MatEntries, h: MatEntries },
    Explicit { elements: Vec<PairConfig> },
    WordBall { max_len: usize },
}

impl SequenceConfig {
    pub fn build(&self, group: Option<&GroupSpec>) -> Result<SequenceSpec, String> {
        match self {
            SequenceConfig::Cyclic { g, h } => Ok(SequenceSpec::Cyclic(
                PairConfig { g: *g, h: *h }.build()?,
            )),
            SequenceConfig::Explicit { elements } => {
                let v: Result<Vec<PairElement>, String> =
                    elements.iter().map(|p| p.build()).collect();
                Ok(SequenceSpec::Explicit(v?))
            }
            SequenceConfig::WordBall { max_len } => {
                let spec = group.ok_or("word_ball sequences need a group block")?;
                Ok(SequenceSpec::WordBall {
                    spec: spec.clone(),
                    max_len: *max_len,
                })
            }
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BasePointConfig {
    pub embed: Option<MatEntries>,
    pub coords: Option<[C2; 5]>,
}

impl BasePointConfig {
    pub fn build(&self, tol: &Tolerances) -> Result<QuadricPoint, String> {
        match (&self.embed, &self.coords) {
            (Some(m), None) => orthoklein::embed_sl2(&mat2(m)).map_err(|e| e.to_string()),
            (None, Some(z)) => {
                let v = [c64(z[0]), c64(z[1]), c64(z[2]), c64(z[3]), c64(z[4])];
                QuadricPoint::from_vec(v, tol).map_err(|e| e.to_string())
            }
            _ => Err("base_point needs exactly one of embed/coords".into()),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KSampleConfig {
    pub radius: f64,
    pub count: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: Option<GroupConfig>,
    pub sequence: Option<SequenceConfig>,
    pub max_len: Option<usize>,
    pub seed: Option<u64>,
    /// Approximate membership epsilon for the discontinuity domain.
    pub eps: Option<f64>,
    pub base_point: Option<BasePointConfig>,
    /// Deformation families compared by the properness command.
    pub deformations: Option<Vec<Vec<MatEntries>>>,
    pub k_sample: Option<KSampleConfig>,
    pub samples_per_geodesic: Option<usize>,
}

impl ExperimentConfig {
    pub fn parse(bytes: &[u8]) -> Result<Self, String> {
        serde_json::from_slice(bytes).map_err(|e| e.to_string())
    }
}
