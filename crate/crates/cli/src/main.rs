//! Experiment CLI: classify sequences, export limit sets, verify Schottky
//! certificates, report properness observables and orbit clouds.
//!
//! Every command is a pure function of (config bytes, seed): the report
//! and the exported files are byte-identical across reruns. Wall-clock
//! timings go to stderr only.

mod config;
mod export;
mod report;

use clap::{Parser, Subcommand};
use config::ExperimentConfig;
use orthoklein::dynamics::frances::frances_limit_set;
use orthoklein::dynamics::{
    classify, word_ball_summary, ClassifyPolicy, DistortionTag, SequenceSpec,
};
use orthoklein::halfspace::{ball_coords, delta_map};
use orthoklein::klein::properness::{properness_sl2_report, quasi_isometry_fit, KSample};
use orthoklein::klein::words::for_each_word;
use orthoklein::klein::{
    deformation_norm, limit_set_cp1, schottky_reduce, u_gamma_membership, verify_ping_pong_cp1,
    verify_ping_pong_q3, GroupSpec,
};
use orthoklein::{act, Error as CoreError, Mat2, Tolerances};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

/// Stable exit codes: 0 success, 2 schema, 3 insufficient data,
/// 4 degenerate group, 5 certificate failure, 6 numerical non-convergence.
struct CmdError {
    code: u8,
    message: String,
}

impl CmdError {
    fn schema(message: impl Into<String>) -> Self {
        CmdError {
            code: 2,
            message: message.into(),
        }
    }
}

fn from_core(e: CoreError) -> CmdError {
    let code = match e {
        CoreError::TooShort { .. } => 3,
        CoreError::NoLoxodromic | CoreError::NoDivergentWords => 4,
        CoreError::NoConvergence { .. } => 6,
        CoreError::MissingSchottkyData => 2,
        _ => 1,
    };
    CmdError {
        code,
        message: e.to_string(),
    }
}

type CmdResult = Result<serde_json::Value, CmdError>;

#[derive(Parser)]
#[command(name = "orthoklein", version, about = "Kleinian group experiments on the quadric")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Path to the JSON experiment configuration.
    #[arg(long, global = true, default_value = "config.json")]
    config: PathBuf,
    /// Output directory for the report and exported files.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// RNG seed (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Word-ball radius (overrides the config).
    #[arg(long, global = true)]
    max_len: Option<usize>,
    /// Membership epsilon (overrides the config).
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads; falls back to ORTHOKLEIN_THREADS, then all cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Distortion classification of the configured sequence.
    Classify,
    /// Classical limit set (CSV) and limit-geodesic cloud (PLY).
    Limitset,
    /// Schottky ping-pong certificates on CP^1 and the quadric.
    Verify,
    /// Returning-word table, bounded-distortion flags, quasi-isometry fit.
    Properness,
    /// Orbit cloud of a base point under the word ball.
    Orbit,
}

struct Ctx {
    config: ExperimentConfig,
    config_bytes: Vec<u8>,
    seed: u64,
    max_len: Option<usize>,
    eps: f64,
    out: PathBuf,
    tol: Tolerances,
}

impl Ctx {
    fn group(&self) -> Result<GroupSpec, CmdError> {
        self.config
            .group
            .as_ref()
            .ok_or_else(|| CmdError::schema("config has no group block"))?
            .build()
            .map_err(CmdError::schema)
    }

    fn sequence(&self) -> Result<SequenceSpec, CmdError> {
        let group = match &self.config.group {
            Some(g) => Some(g.build().map_err(CmdError::schema)?),
            None => None,
        };
        let mut seq = self
            .config
            .sequence
            .as_ref()
            .ok_or_else(|| CmdError::schema("config has no sequence block"))?
            .build(group.as_ref())
            .map_err(CmdError::schema)?;
        if let (SequenceSpec::WordBall { max_len, .. }, Some(m)) = (&mut seq, self.max_len) {
            *max_len = m;
        }
        Ok(seq)
    }

    fn max_len(&self, default: usize) -> usize {
        self.max_len.or(self.config.max_len).unwrap_or(default)
    }

    fn write(&self, name: &str, bytes: &[u8]) -> Result<PathBuf, CmdError> {
        std::fs::create_dir_all(&self.out).map_err(|e| CmdError {
            code: 1,
            message: format!("cannot create {}: {e}", self.out.display()),
        })?;
        let path = self.out.join(name);
        std::fs::write(&path, bytes).map_err(|e| CmdError {
            code: 1,
            message: format!("cannot write {}: {e}", path.display()),
        })?;
        Ok(path)
    }
}

fn cp1_json(p: &orthoklein::proj::PointCp1) -> serde_json::Value {
    let (chart, re, im) = export::chart_coords(p);
    json!({ "chart": chart, "re": re, "im": im })
}

fn tag_json(tag: &DistortionTag) -> serde_json::Value {
    match tag {
        DistortionTag::Balanced { delta } if delta.is_finite() => {
            let delta = if *delta == 0.0 { 0.0 } else { *delta };
            json!({ "tag": "Balanced", "delta": delta })
        }
        DistortionTag::Balanced { .. } => json!({ "tag": "Balanced", "delta": null }),
        other => json!({ "tag": other.name() }),
    }
}

fn cmd_classify(ctx: &Ctx) -> CmdResult {
    let seq = ctx.sequence()?;
    let class = classify(&seq, &ClassifyPolicy::default()).map_err(from_core)?;
    let ev = &class.evidence;
    let fit = |f: &orthoklein::dynamics::LineFit| {
        json!({ "slope": f.slope, "intercept": f.intercept, "residual": f.residual, "range": f.range })
    };
    let elements = seq.materialize(ClassifyPolicy::default().cyclic_samples).map_err(from_core)?;
    let tail: Vec<serde_json::Value> = elements
        .iter()
        .rev()
        .take(5)
        .rev()
        .map(|p| {
            let d = orthoklein::cartan_kak(p).expect("classified elements split");
            json!({ "lambda": d.lambda, "mu": d.mu, "flip": d.flip })
        })
        .collect();
    let mut results = json!({
        "classification": tag_json(&class.tag),
        "evidence": {
            "n": ev.n,
            "lambda": fit(&ev.lambda),
            "mu": fit(&ev.mu),
            "gap": fit(&ev.gap),
            "smin_tail_mean": ev.smin_tail_mean,
            "sdiff_tail_mean": ev.sdiff_tail_mean,
        },
        "cartan_tail": tail,
    });
    if let SequenceSpec::WordBall { spec, max_len } = &seq {
        let s = word_ball_summary(spec, *max_len);
        results["word_ball"] = json!({
            "words": s.words,
            "balanced": s.balanced,
            "bounded": s.bounded,
            "mixed": s.mixed,
            "not_divergent": s.not_divergent,
            "flipped": s.flipped,
        });
    }
    Ok(results)
}

fn cmd_limitset(ctx: &Ctx) -> CmdResult {
    let spec = ctx.group()?;
    let max_len = ctx.max_len(10);
    let cloud = limit_set_cp1(&spec, max_len).map_err(from_core)?;
    let rows: Vec<export::CsvRow> = cloud
        .points
        .iter()
        .enumerate()
        .map(|(index, (word, point))| export::CsvRow {
            index,
            word: word.to_string(),
            point: *point,
            membership: false,
        })
        .collect();
    let mut csv = Vec::new();
    export::write_cp1_csv(&mut csv, &rows).expect("in-memory write");
    let csv_path = ctx.write("limitset_cp1.csv", &csv)?;

    let samples = ctx.config.samples_per_geodesic.unwrap_or(64);
    let fr = frances_limit_set(&spec, max_len, samples, &ctx.tol).map_err(from_core)?;
    let mut ply = Vec::new();
    export::write_q2_ply(&mut ply, &fr.cloud, &ctx.tol).expect("in-memory write");
    let ply_path = ctx.write("limitset_q2.ply", &ply)?;

    let bases: Vec<serde_json::Value> = fr
        .bases
        .iter()
        .map(|(tag, base, word)| {
            json!({
                "orientation": format!("{tag:?}"),
                "base": cp1_json(base),
                "word": word.to_string(),
            })
        })
        .collect();
    Ok(json!({
        "classical_points": cloud.points.len(),
        "geodesics": fr.geodesics.len(),
        "all_vertical": fr.all_vertical(),
        "bounded_words": fr.bounded_words,
        "bases": bases,
        "files": {
            "csv": csv_path.file_name().unwrap().to_string_lossy(),
            "ply": ply_path.file_name().unwrap().to_string_lossy(),
        },
    }))
}

fn cmd_verify(ctx: &Ctx) -> CmdResult {
    let spec = ctx.group()?;
    let cp1 = verify_ping_pong_cp1(&spec, &ctx.tol).map_err(from_core)?;
    let q3 = verify_ping_pong_q3(&spec, &ctx.tol).map_err(from_core)?;
    Ok(json!({
        "cp1": {
            "pass": cp1.pass,
            "margins": cp1.margins,
            "pairing_ok": cp1.pairing_ok,
            "witness": cp1.witness.as_ref().map(cp1_json),
        },
        "q3": {
            "pass": q3.pass,
            "margins": q3.margins,
            "hemisphere_residual": q3.hemisphere_residual,
        },
        "pass": cp1.pass && q3.pass,
    }))
}

fn cmd_properness(ctx: &Ctx) -> CmdResult {
    let spec = ctx.group()?;
    let max_len = ctx.max_len(6);
    let (radius, count) = ctx
        .config
        .k_sample
        .as_ref()
        .map(|k| (k.radius, k.count.unwrap_or(24)))
        .unwrap_or((0.1, 24));
    let k = KSample::ball(Mat2::identity(), radius, count, ctx.seed);
    let report = properness_sl2_report(&spec, &k, max_len);
    let fit = quasi_isometry_fit(&spec, max_len);
    let reference = report.returning_set();

    let mut uniform = true;
    let mut family = Vec::new();
    if let Some(deformations) = &ctx.config.deformations {
        for (i, u) in deformations.iter().enumerate() {
            let mats: Vec<Mat2> = u.iter().map(config::mat2).collect();
            let deformed = GroupSpec::new(spec.generators().to_vec())
                .and_then(|s| s.with_deformation(mats))
                .map_err(from_core)?;
            let set = properness_sl2_report(&deformed, &k, max_len).returning_set();
            let identical = set == reference;
            uniform &= identical;
            family.push(json!({
                "index": i,
                "deformation_norm": deformation_norm(&deformed),
                "identical": identical,
                "returning": set.len(),
            }));
        }
    }
    Ok(json!({
        "returning": reference,
        "max_returning_len": report.max_returning_len,
        "suspect_bounded": report.suspect_bounded,
        "quasi_isometry": {
            "b": fit.b,
            "c": fit.c,
            "unit": fit.unit,
            "violations": fit.violations.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        },
        "uniformity": { "identical": uniform, "family": family },
    }))
}

fn cmd_orbit(ctx: &Ctx) -> CmdResult {
    let spec = ctx.group()?;
    let base = ctx
        .config
        .base_point
        .as_ref()
        .ok_or_else(|| CmdError::schema("orbit needs a base_point block"))?
        .build(&ctx.tol)
        .map_err(CmdError::schema)?;
    let max_len = ctx.max_len(4);
    let cloud = limit_set_cp1(&spec, ctx.config.max_len.unwrap_or(10).max(max_len))
        .map_err(from_core)?;

    // Reduce the base point first; a base too close to the limit set is
    // the documented non-convergence exit.
    let reduced = if spec.schottky().is_some() {
        let (rep, word) = schottky_reduce(&base, &spec, 50 * (max_len + 1), &ctx.tol)
            .map_err(from_core)?;
        Some((rep, word))
    } else {
        None
    };

    let mut points = Vec::new();
    let mut members = 0usize;
    let mut rows = Vec::new();
    for_each_word(&spec, max_len, |w, p| {
        let moved = act(p, &base);
        let inside = u_gamma_membership(&moved, &cloud, ctx.eps, &ctx.tol);
        members += inside as usize;
        points.push(ball_coords(&delta_map(&moved, &ctx.tol)));
        rows.push(json!({ "word": w.to_string(), "membership": inside }));
    });
    // Orbit coincidences would betray a relation; count distinct points.
    let mut distinct: Vec<[f64; 3]> = Vec::new();
    for p in &points {
        if distinct
            .iter()
            .all(|q| (p[0] - q[0]).abs() + (p[1] - q[1]).abs() + (p[2] - q[2]).abs() > 1e-9)
        {
            distinct.push(*p);
        }
    }
    let mut ply = Vec::new();
    export::write_ball_ply(&mut ply, &points).expect("in-memory write");
    let ply_path = ctx.write("orbit.ply", &ply)?;
    Ok(json!({
        "orbit_size": points.len(),
        "distinct_points": distinct.len(),
        "members": members,
        "base_reduction": reduced.map(|(rep, word)| json!({
            "word": word.to_string(),
            "in_theta": rep.in_theta(&ctx.tol),
        })),
        "points": rows,
        "files": { "ply": ply_path.file_name().unwrap().to_string_lossy() },
    }))
}

fn run(cli: &Cli) -> Result<(PathBuf, serde_json::Value), CmdError> {
    let config_bytes = std::fs::read(&cli.config).map_err(|e| {
        CmdError::schema(format!("cannot read {}: {e}", cli.config.display()))
    })?;
    let config = ExperimentConfig::parse(&config_bytes).map_err(CmdError::schema)?;
    let seed = cli.seed.or(config.seed).unwrap_or(0x5EED);
    let eps = cli.tol.or(config.eps).unwrap_or(1e-3);
    let ctx = Ctx {
        seed,
        max_len: cli.max_len,
        eps,
        out: cli.out.clone(),
        tol: Tolerances::default(),
        config,
        config_bytes,
    };
    let (name, results) = match cli.command {
        Command::Classify => ("classify", cmd_classify(&ctx)),
        Command::Limitset => ("limitset", cmd_limitset(&ctx)),
        Command::Verify => ("verify", cmd_verify(&ctx)),
        Command::Properness => ("properness", cmd_properness(&ctx)),
        Command::Orbit => ("orbit", cmd_orbit(&ctx)),
    };
    let results = results?;
    let report = report::Report::new(name, &ctx.config_bytes, ctx.seed, results.clone());
    let path = ctx.write("report.json", &report.to_bytes())?;
    // Certificate failures exit nonzero after the report is on disk.
    if name == "verify" && results["pass"] != json!(true) {
        let witness = results["cp1"]["witness"].clone();
        return Err(CmdError {
            code: 5,
            message: format!("certificate failed (witness {witness}); see report.json"),
        });
    }
    Ok((path, results))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads.or_else(|| {
        std::env::var("ORTHOKLEIN_THREADS")
            .ok()
            .and_then(|s| s.parse().ok())
    }) {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    let start = Instant::now();
    match run(&cli) {
        Ok((path, _)) => {
            eprintln!(
                "wrote {} in {:.1} ms",
                path.display(),
                start.elapsed().as_secs_f64() * 1e3
            );
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
