//! Computational complex orthogonal Kleinian groups on the
//! three-dimensional quadric Q3 = { z1 z5 - z2 z4 - z3^2 = 0 } in CP^4.
//!
//! The crate builds deformed groups { (gamma, u(gamma)) } acting on the
//! quadric through pairs of SL(2, C) matrices, classifies divergent
//! sequences by their Cartan distortion, computes the limit light
//! geodesics and the associated limit set, certifies Schottky ping-pong
//! configurations on CP^1 and on the quadric via the half-space quotient,
//! and reports finite observables of proper discontinuity.
//!
//! Module map:
//! - [`proj`], [`quadric`]: projective points, the form q, the z3 = 0
//!   surface and its CP^1 x CP^1 splitting, light geodesics and cones;
//! - [`sl2`], [`rep`], [`halfspace`]: SL(2, C) elements, the 5x5
//!   representation, Cartan splits, the involution j, the 2:1 projection f
//!   and the induced CP^3 action, and the H^3 quotient map;
//! - [`dynamics`]: distortion classification, limit geodesics, the
//!   dynamical-limit calculus, the brute-force relation oracle, and the
//!   limit-set approximation;
//! - [`klein`]: group specs, word balls, Schottky certificates, classical
//!   limit sets, properness reports and domain membership.

pub mod dynamics;
pub mod error;
pub mod halfspace;
pub mod klein;
pub mod mat5;
pub mod proj;
pub mod quadric;
pub mod rep;
pub mod sample;
pub mod sl2;
pub mod tol;
pub mod word;

pub use error::{Error, Result};
pub use proj::{C64, PointCp1, PointCp3, PointCp4, ProjPoint};
pub use quadric::{
    bilinear_b, cone_contains, cone_geodesics, q2_join, q2_split, q_form, LightCone,
    LightGeodesic, OrientationTag, QuadricPoint,
};
pub use rep::{
    act, cartan_kak, embed_sl2, f_map, involution_j, psi, tau, theta_extract, CartanData,
    PairElement, ProjMat4, ProjMat5,
};
pub use sl2::{classify_element, mobius_apply, svd2, Mat2, MobiusClass};
pub use tol::Tolerances;
pub use word::Word;
