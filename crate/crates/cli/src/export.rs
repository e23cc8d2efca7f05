//! Deterministic exporters. Floats print in shortest round-trip form, rows
//! are emitted in the order the caller provides, and reruns with the same
//! config and seed are byte-identical.

use orthoklein::proj::PointCp1;
use orthoklein::quadric::q2_split;
use orthoklein::{QuadricPoint, Tolerances};
use std::io::Write;

fn scrub(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// Affine chart switch for CP^1 points: chart 0 holds z1/z2, chart 1 holds
/// z2/z1 for points at or near infinity.
pub fn chart_coords(p: &PointCp1) -> (u8, f64, f64) {
    let [z1, z2] = *p.coords();
    if z2.norm() >= 1e-6 {
        let z = z1 / z2;
        (0, scrub(z.re), scrub(z.im))
    } else {
        let z = z2 / z1;
        (1, scrub(z.re), scrub(z.im))
    }
}

pub struct CsvRow {
    pub index: usize,
    pub word: String,
    pub point: PointCp1,
    pub membership: bool,
}

/// Fixed-column CSV: index, word, re, im, chart, membership.
pub fn write_cp1_csv<W: Write>(mut w: W, rows: &[CsvRow]) -> std::io::Result<()> {
    writeln!(w, "index,word,re,im,chart,membership")?;
    for row in rows {
        let (chart, re, im) = chart_coords(&row.point);
        writeln!(
            w,
            "{},{},{},{},{},{}",
            row.index, row.word, re, im, chart, row.membership
        )?;
    }
    Ok(())
}

const CHART_CLAMP: f64 = 1e3;

fn clamp_coord(x: f64, clamped: &mut usize) -> f64 {
    if x.abs() > CHART_CLAMP {
        *clamped += 1;
        x.signum() * CHART_CLAMP
    } else {
        scrub(x)
    }
}

/// PLY cloud of z3 = 0 quadric points in the affine chart of
/// CP^1 x CP^1: x = Re z1, y = Im z1, z = Re z2, with overflow points
/// clamped and counted in the header comment.
pub fn write_q2_ply<W: Write>(
    mut w: W,
    points: &[QuadricPoint],
    tol: &Tolerances,
) -> std::io::Result<()> {
    let mut rows = Vec::with_capacity(points.len());
    let mut clamped = 0usize;
    for p in points {
        let Ok((first, second)) = q2_split(p, tol) else {
            continue;
        };
        let z1 = first.affine(1e-9).unwrap_or(num_complex::Complex64::new(CHART_CLAMP * 2.0, 0.0));
        let z2 = second.affine(1e-9).unwrap_or(num_complex::Complex64::new(CHART_CLAMP * 2.0, 0.0));
        rows.push([
            clamp_coord(z1.re, &mut clamped),
            clamp_coord(z1.im, &mut clamped),
            clamp_coord(z2.re, &mut clamped),
        ]);
    }
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "comment chart x = Re z1, y = Im z1, z = Re z2 of CP1 x CP1")?;
    writeln!(w, "comment clamped coordinates: {clamped} (at +-{CHART_CLAMP})")?;
    writeln!(w, "element vertex {}", rows.len())?;
    writeln!(w, "property double x")?;
    writeln!(w, "property double y")?;
    writeln!(w, "property double z")?;
    writeln!(w, "end_header")?;
    for r in rows {
        writeln!(w, "{} {} {}", r[0], r[1], r[2])?;
    }
    Ok(())
}

/// PLY cloud in the closed-ball model of H^3 union CP^1 (used for orbit
/// clouds, which live in the matrix chart); coordinates are bounded by one.
pub fn write_ball_ply<W: Write>(mut w: W, points: &[[f64; 3]]) -> std::io::Result<()> {
    writeln!(w, "ply")?;
    writeln!(w, "format ascii 1.0")?;
    writeln!(w, "comment closed-ball model of H3 and its boundary sphere")?;
    writeln!(w, "element vertex {}", points.len())?;
    writeln!(w, "property double x")?;
    writeln!(w, "property double y")?;
    writeln!(w, "property double z")?;
    writeln!(w, "end_header")?;
    for p in points {
        writeln!(w, "{} {} {}", p[0], p[1], p[2])?;
    }
    Ok(())
}
