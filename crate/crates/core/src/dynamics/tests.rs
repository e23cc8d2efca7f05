use super::oracle::{oracle_dynrel, OracleConfig};
use super::*;
use crate::klein::GroupSpec;
use crate::proj::PointCp1;
use crate::quadric::{q2_split, OrientationTag};
use crate::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn tol() -> Tolerances {
    Tolerances::default()
}

fn diag2(a: f64, d: f64) -> Mat2 {
    Mat2::diag(c(a, 0.0), c(d, 0.0))
}

fn pair(g: Mat2, h: Mat2) -> PairElement {
    PairElement::new(g, h).unwrap()
}

/// The model balanced sequence psi(diag(e^n, e^-n), I) =
/// diag(e^n, e^n, 1, e^-n, e^-n).
fn balanced_model_seq() -> SequenceSpec {
    SequenceSpec::Explicit(
        (1..=12)
            .map(|n| {
                let s = (n as f64).exp();
                pair(diag2(s, 1.0 / s), Mat2::identity())
            })
            .collect(),
    )
}

/// A mixed model sequence with lambda-dominant axis diag(e^3n, e^n, 1, e^-n, e^-3n):
/// pairs (diag(e^2n, e^-2n), diag(e^-n, e^n)).
fn mixed_model_seq() -> SequenceSpec {
    SequenceSpec::Explicit(
        (1..=12)
            .map(|n| {
                let a = (2.0 * n as f64).exp();
                let b = (-(n as f64)).exp();
                pair(diag2(a, 1.0 / a), diag2(b, 1.0 / b))
            })
            .collect(),
    )
}

fn qp(v: [f64; 5]) -> QuadricPoint {
    QuadricPoint::from_vec(
        [c(v[0], 0.0), c(v[1], 0.0), c(v[2], 0.0), c(v[3], 0.0), c(v[4], 0.0)],
        &tol(),
    )
    .unwrap()
}

#[test]
fn classify_cyclic_examples() {
    let cls = classify(
        &SequenceSpec::Cyclic(pair(diag2(2.0, 0.5), Mat2::identity())),
        &ClassifyPolicy::default(),
    )
    .unwrap();
    match cls.tag {
        DistortionTag::Balanced { delta } => assert!(delta.abs() < 1e-12),
        other => panic!("expected balanced, got {other:?}"),
    }

    let cls = classify(
        &SequenceSpec::Cyclic(pair(diag2(4.0, 0.25), diag2(2.0, 0.5))),
        &ClassifyPolicy::default(),
    )
    .unwrap();
    assert_eq!(cls.tag, DistortionTag::Mixed);

    let cls = classify(
        &SequenceSpec::Cyclic(pair(diag2(2.0, 0.5), diag2(2.0, 0.5))),
        &ClassifyPolicy::default(),
    )
    .unwrap();
    assert_eq!(cls.tag, DistortionTag::Bounded);

    let cls = classify(
        &SequenceSpec::Cyclic(PairElement::identity()),
        &ClassifyPolicy::default(),
    )
    .unwrap();
    assert_eq!(cls.tag, DistortionTag::NotDivergent);
}

#[test]
fn classify_explicit_too_short() {
    let seq = SequenceSpec::Explicit(vec![PairElement::identity(); 4]);
    assert!(matches!(
        classify(&seq, &ClassifyPolicy::default()),
        Err(Error::TooShort { len: 4, min: 8 })
    ));
}

#[test]
fn limit_geodesics_cyclic_fixed_points() {
    let seq = SequenceSpec::Cyclic(pair(diag2(2.0, 0.5), Mat2::identity()));
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let data = limit_geodesics(&seq, &cls, &tol()).unwrap();
    assert_eq!(data.delta_plus.tag(), OrientationTag::Vertical);
    assert_eq!(data.delta_minus.tag(), OrientationTag::Vertical);
    assert!(data
        .delta_plus
        .base_point()
        .unwrap()
        .approx_eq(&PointCp1::basis(0), 1e-9));
    assert!(data
        .delta_minus
        .base_point()
        .unwrap()
        .approx_eq(&PointCp1::basis(1), 1e-9));
}

#[test]
fn limit_geodesics_model_sequence() {
    let seq = balanced_model_seq();
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    match cls.tag {
        DistortionTag::Balanced { delta } => assert!(delta.abs() < 1e-9),
        other => panic!("expected balanced, got {other:?}"),
    }
    let data = limit_geodesics(&seq, &cls, &tol()).unwrap();
    let nabla_plus = LightGeodesic::through(&QuadricPoint::basis(0), &QuadricPoint::basis(1), &tol())
        .unwrap();
    let nabla_minus =
        LightGeodesic::through(&QuadricPoint::basis(3), &QuadricPoint::basis(4), &tol()).unwrap();
    assert!(data.delta_plus.approx_eq(&nabla_plus, 1e-9));
    assert!(data.delta_minus.approx_eq(&nabla_minus, 1e-9));
}

#[test]
fn limit_geodesics_conjugated_sequence() {
    // Conjugating the model by fixed pairs moves the attractor by psi(post)
    // and the repeller by psi(pre)^{-1}.
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let post = pair(sample::random_sl2(&mut rng), sample::random_sl2(&mut rng));
    let pre = pair(sample::random_sl2(&mut rng), sample::random_sl2(&mut rng));
    let elements: Vec<PairElement> = (1..=12)
        .map(|n| {
            let s = (n as f64).exp();
            post.product(&pair(diag2(s, 1.0 / s), Mat2::identity()))
                .product(&pre)
        })
        .collect();
    let seq = SequenceSpec::Explicit(elements);
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let data = limit_geodesics(&seq, &cls, &tol()).unwrap();

    let mpost = psi(&post).unwrap();
    let mpre_inv = psi(&pre).unwrap().inverse();
    let want_plus = mpost.apply_geodesic(
        &LightGeodesic::through(&QuadricPoint::basis(0), &QuadricPoint::basis(1), &tol()).unwrap(),
    );
    let want_minus = mpre_inv.apply_geodesic(
        &LightGeodesic::through(&QuadricPoint::basis(3), &QuadricPoint::basis(4), &tol()).unwrap(),
    );
    assert!(data.delta_plus.approx_eq(&want_plus, 1e-6));
    assert!(data.delta_minus.approx_eq(&want_minus, 1e-6));
}

#[test]
fn dyn_limit_balanced_examples() {
    let seq = balanced_model_seq();
    let x = qp([1.0, 1.0, 1.0, 1.0, 2.0]);
    match dyn_limit(&seq, &x, &tol()).unwrap() {
        DynLimit::Point(p) => assert!(p.approx_eq(&qp([1.0, 1.0, 0.0, 0.0, 0.0]), 1e-9)),
        other => panic!("expected point, got {other:?}"),
    }
    // A fixed point on the attractor maps to itself.
    let x = QuadricPoint::basis(0);
    match dyn_limit(&seq, &x, &tol()).unwrap() {
        DynLimit::Point(p) => assert!(p.approx_eq(&QuadricPoint::basis(0), 1e-9)),
        other => panic!("expected point, got {other:?}"),
    }
    // On the repeller the limit is undefined.
    let x = QuadricPoint::basis(4);
    assert!(matches!(
        dyn_limit(&seq, &x, &tol()),
        Err(Error::UndefinedOnRepeller)
    ));
}

#[test]
fn dyn_limit_mixed_trichotomy_model() {
    let seq = mixed_model_seq();
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    assert_eq!(cls.tag, DistortionTag::Mixed);
    let data = limit_data(&seq, &cls, &tol()).unwrap();
    // Attractor/repeller vertices of the lambda-dominant model.
    assert!(data.p_plus.unwrap().approx_eq(&QuadricPoint::basis(0), 1e-9));
    assert!(data.p_minus.unwrap().approx_eq(&QuadricPoint::basis(4), 1e-9));

    // Generic point off the repeller cone: the attractor vertex.
    let x = qp([1.0, 1.0, 1.0, 1.0, 2.0]);
    match dyn_limit_with(&data, &x, &tol()).unwrap() {
        DynLimit::Point(p) => assert!(p.approx_eq(&QuadricPoint::basis(0), 1e-9)),
        other => panic!("expected point, got {other:?}"),
    }
    // On the cone of the repeller, off the repeller geodesic: the attractor
    // geodesic. q = [0 : 1 : 1 : -1 : 2] has z1 = 0 and q-form 0.
    let x = qp([0.0, 1.0, 1.0, -1.0, 2.0]);
    match dyn_limit_with(&data, &x, &tol()).unwrap() {
        DynLimit::Geodesic(g) => assert!(g.approx_eq(&data.delta_plus, 1e-9)),
        other => panic!("expected geodesic, got {other:?}"),
    }
    // On the repeller geodesic minus the vertex: the attractor cone.
    let x = qp([0.0, 0.0, 0.0, 1.0, 1.0]);
    match dyn_limit_with(&data, &x, &tol()).unwrap() {
        DynLimit::Cone(cone) => {
            assert!(cone.vertex.approx_eq(&data.p_plus.unwrap(), 1e-9))
        }
        other => panic!("expected cone, got {other:?}"),
    }
    // At the repeller vertex the limit is undefined.
    assert!(matches!(
        dyn_limit_with(&data, &QuadricPoint::basis(4), &tol()),
        Err(Error::UndefinedOnRepeller)
    ));
}

#[test]
fn dyn_limit_bounded_cone_map() {
    // (diag(2, 1/2), diag(2, 1/2)) is bounded; its limit sends the
    // repeller cone to the attractor cone through the model exchange map.
    let seq = SequenceSpec::Cyclic(pair(diag2(2.0, 0.5), diag2(2.0, 0.5)));
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    assert_eq!(cls.tag, DistortionTag::Bounded);
    let data = limit_data(&seq, &cls, &tol()).unwrap();
    assert!(data.g_infinity.is_some());
    let p_minus = data.p_minus.unwrap();

    // Off the repeller cone: the attractor vertex.
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut tested_point = false;
    let mut tested_geodesic = false;
    for _ in 0..40 {
        let x = sample::random_quadric_point(&mut rng);
        if let Ok(DynLimit::Point(p)) = dyn_limit_with(&data, &x, &tol()) {
            assert!(p.approx_eq(&data.p_plus.unwrap(), 1e-9));
            tested_point = true;
        }
    }
    // On the cone minus the vertex: a geodesic through the attractor
    // vertex, dynamically realized (oracle cross-check below).
    for _ in 0..20 {
        let x = sample::random_cone_point(&mut rng, &p_minus);
        if x.approx_eq(&p_minus, 1e-6) {
            continue;
        }
        match dyn_limit_with(&data, &x, &tol()) {
            Ok(DynLimit::Geodesic(g)) => {
                assert!(g.contains(&data.p_plus.unwrap(), 1e-7));
                tested_geodesic = true;
            }
            other => panic!("expected geodesic on the cone, got {other:?}"),
        }
    }
    assert!(tested_point && tested_geodesic);
}

#[test]
fn lq_transversal_family() {
    let seq = balanced_model_seq();
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let data = limit_geodesics(&seq, &cls, &tol()).unwrap();

    // Model delta = 0: q = pi(e1) gives the horizontal geodesic with base
    // [0:1] (affine 0); q = [1:1:0:0:0] gives base [-1:1] (affine -1).
    let l0 = lq_of(&QuadricPoint::basis(0), &data, &tol()).unwrap();
    assert_eq!(l0.tag(), OrientationTag::Horizontal);
    assert!(l0
        .base_point()
        .unwrap()
        .approx_eq(&PointCp1::basis(1), 1e-9));

    let q1 = qp([1.0, 1.0, 0.0, 0.0, 0.0]);
    let l1 = lq_of(&q1, &data, &tol()).unwrap();
    let want = PointCp1::from_affine(c(-1.0, 0.0));
    assert!(l1.base_point().unwrap().approx_eq(&want, 1e-9));

    // The family is pairwise disjoint: distinct base points.
    let mut bases = Vec::new();
    for k in 0..20 {
        let z = 0.3 * k as f64 - 2.7;
        let q = qp([1.0, z, 0.0, 0.0, 0.0]);
        let l = lq_of(&q, &data, &tol()).unwrap();
        bases.push(*l.base_point().unwrap());
    }
    for i in 0..bases.len() {
        for j in (i + 1)..bases.len() {
            assert!(bases[i].chordal(&bases[j]) > 1e-6);
        }
    }
    // Fiber property: every point of l_q maps to q under the limit.
    let q = qp([1.0, 0.5, 0.0, 0.0, 0.0]);
    let l = lq_of(&q, &data, &tol()).unwrap();
    for p in l.sample(8) {
        match dyn_limit_with(&data, &p, &tol()) {
            Ok(DynLimit::Point(s)) => assert!(s.approx_eq(&q, 1e-8)),
            Err(Error::UndefinedOnRepeller) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}

#[test]
fn oracle_balanced_single_cluster() {
    let seq = balanced_model_seq();
    let x = qp([1.0, 1.0, 1.0, 1.0, 2.0]);
    let out = oracle_dynrel(&seq, &x, &OracleConfig::default(), &tol()).unwrap();
    assert!(!out.not_divergent);
    let target = qp([1.0, 1.0, 0.0, 0.0, 0.0]);
    for cl in &out.clusters {
        assert!(cl.chordal(&target) < 1e-2, "stray cluster {:?}", cl);
    }
    assert!(out.min_dist(&target) < 1e-2);
}

#[test]
fn oracle_constant_sequence_flags_not_divergent() {
    let seq = SequenceSpec::Explicit(vec![PairElement::identity(); 16]);
    let x = QuadricPoint::basis(0);
    let out = oracle_dynrel(&seq, &x, &OracleConfig::default(), &tol()).unwrap();
    assert!(out.not_divergent);
    assert_eq!(out.clusters.len(), 1);
    assert!(out.clusters[0].approx_eq(&x, 1e-12));
}

#[test]
fn oracle_mixed_repeller_spreads_over_cone() {
    let seq = mixed_model_seq();
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let data = limit_data(&seq, &cls, &tol()).unwrap();
    let x = qp([0.0, 0.0, 0.0, 1.0, 1.0]); // on the repeller geodesic
    let cfg = OracleConfig {
        sample_count: 160,
        ..OracleConfig::default()
    };
    let out = oracle_dynrel(&seq, &x, &cfg, &tol()).unwrap();
    assert!(
        out.clusters.len() >= 10,
        "expected a spread, got {} clusters",
        out.clusters.len()
    );
    let p_plus = data.p_plus.unwrap();
    for cl in &out.clusters {
        assert!(
            cone_contains(&p_plus, cl, &Tolerances::scaled(1e3)),
            "cluster off the attractor cone"
        );
    }
}

#[test]
fn oracle_agrees_with_formula_on_random_cyclic_specs() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut balanced = 0;
    let mut mixed = 0;
    let cfg = OracleConfig {
        prefix_len: 40,
        ..OracleConfig::default()
    };
    while balanced < 50 || mixed < 50 {
        // Conjugates of diagonal elements keep the translation lengths
        // exact, so the class is controlled and the frames converge fast.
        let kg = sample::random_su2(&mut rng);
        let g = kg * diag2(3.0, 1.0 / 3.0) * kg.adjugate();
        let use_mixed = mixed < 50 && (balanced >= 50 || rng.gen::<bool>());
        let h = if use_mixed {
            let kh = sample::random_su2(&mut rng);
            kh * diag2(1.6, 1.0 / 1.6) * kh.adjugate()
        } else {
            Mat2::identity()
        };
        let base = pair(g, h);
        let seq = SequenceSpec::Cyclic(base);
        let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
        match cls.tag {
            DistortionTag::Balanced { .. } => balanced += 1,
            DistortionTag::Mixed => mixed += 1,
            _ => continue,
        }
        let data = limit_data(&seq, &cls, &tol()).unwrap();
        // Parallelism invariant: both limit geodesics carry the same
        // orientation.
        assert_eq!(data.delta_plus.tag(), data.delta_minus.tag());
        for _ in 0..10 {
            let x = sample::random_quadric_point(&mut rng);
            let out = oracle_dynrel(&seq, &x, &cfg, &tol()).unwrap();
            let formula = dyn_limit_with(&data, &x, &tol());
            match formula {
                Ok(DynLimit::Point(p)) => {
                    let allowance = 10.0 * cfg.cluster_eps;
                    for cl in &out.clusters {
                        assert!(
                            cl.chordal(&p) < allowance,
                            "cluster strayed {} from the formula point",
                            cl.chordal(&p)
                        );
                    }
                    assert!(out.min_dist(&p) < allowance);
                }
                Ok(DynLimit::Geodesic(geod)) => {
                    for cl in &out.clusters {
                        assert!(geod.dist(cl) < 10.0 * cfg.cluster_eps);
                    }
                }
                Ok(DynLimit::Cone(cone)) => {
                    for cl in &out.clusters {
                        assert!(cone_contains(&cone.vertex, cl, &Tolerances::scaled(1e4)));
                    }
                }
                Err(Error::UndefinedOnRepeller) => {}
                Err(e) => panic!("formula failed: {e}"),
            }
        }
    }
}

#[test]
fn balanced_delta_consistency() {
    // A nonzero shift: constant second factor diag(e^c, e^-c) gives
    // delta = -2c; recover it from the limit-map outputs.
    let shift = 0.35f64;
    let seq = SequenceSpec::Explicit(
        (1..=14)
            .map(|n| {
                let s = (n as f64).exp();
                pair(diag2(s, 1.0 / s), diag2(shift.exp(), (-shift).exp()))
            })
            .collect(),
    );
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let delta = match cls.tag {
        DistortionTag::Balanced { delta } => delta,
        other => panic!("expected balanced, got {other:?}"),
    };
    assert!((delta + 2.0 * shift).abs() < 1e-9, "delta {delta}");
    let data = limit_data(&seq, &cls, &tol()).unwrap();
    // Fit delta back from images of points with known model coordinates.
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    for _ in 0..20 {
        let x = sample::random_quadric_point(&mut rng);
        if data.delta_minus.dist(&x) < 1e-3 {
            continue;
        }
        let z = x.lift();
        if z[0].norm() < 0.1 || z[1].norm() < 0.1 {
            continue;
        }
        match dyn_limit_with(&data, &x, &tol()).unwrap() {
            DynLimit::Point(p) => {
                // Model ratio: out2/out1 = e^{-delta} z2/z1 after undoing
                // the frames (identity here up to Weyl factors).
                let w = p.lift();
                let ratio = (w[1] / w[0]) / (z[1] / z[0]);
                let recovered = -(ratio.norm()).ln();
                assert!(
                    (recovered - delta).abs() < 1e-6,
                    "recovered {recovered} vs {delta}"
                );
            }
            other => panic!("expected point, got {other:?}"),
        }
    }
}

#[test]
fn conjugate_limits_examples() {
    let seq = balanced_model_seq();
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let data = limit_geodesics(&seq, &cls, &tol()).unwrap();

    // Identity transport changes nothing.
    let same = conjugate_limits(&PairElement::identity(), &data, &PairElement::identity()).unwrap();
    assert!(same.delta_plus.approx_eq(&data.delta_plus, 1e-10));
    assert!(same.delta_minus.approx_eq(&data.delta_minus, 1e-10));

    // The attractor moves by psi(post): its vertical base moves by post.g.
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let post = pair(sample::random_sl2(&mut rng), sample::random_sl2(&mut rng));
    let moved = conjugate_limits(&PairElement::identity(), &data, &post).unwrap();
    let want_base = crate::sl2::mobius_apply(&post.g, &PointCp1::basis(0));
    let (x, _) = q2_split(&moved.delta_plus.point_at(&PointCp1::basis(0)), &tol()).unwrap();
    assert!(x.approx_eq(&want_base, 1e-9));
}

#[test]
fn conjugated_cyclic_oracle_agreement() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    let pre = pair(sample::random_sl2(&mut rng), sample::random_sl2(&mut rng));
    let post = pre.inverse();
    // post . base^n . pre is the powers of the conjugated element.
    let base = post.product(&pair(diag2(3.0, 1.0 / 3.0), Mat2::identity())).product(&pre);
    let seq = SequenceSpec::Cyclic(base);
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    let data = limit_data(&seq, &cls, &tol()).unwrap();

    // Same data by transporting the model limit data.
    let model = SequenceSpec::Cyclic(pair(diag2(3.0, 1.0 / 3.0), Mat2::identity()));
    let model_cls = classify(&model, &ClassifyPolicy::default()).unwrap();
    let model_data = limit_data(&model, &model_cls, &tol()).unwrap();
    let transported = conjugate_limits(&pre, &model_data, &post).unwrap();
    assert!(data.delta_plus.approx_eq(&transported.delta_plus, 1e-6));
    assert!(data.delta_minus.approx_eq(&transported.delta_minus, 1e-6));

    // And the oracle accumulates near the transported attractor.
    let x = sample::random_quadric_point(&mut rng);
    let out = oracle_dynrel(&seq, &x, &OracleConfig::default(), &tol()).unwrap();
    if let Ok(DynLimit::Point(p)) = dyn_limit_with(&data, &x, &tol()) {
        assert!(out.min_dist(&p) < 0.1);
    }
}

#[test]
fn frances_cyclic_group() {
    use super::frances::frances_limit_set;
    let spec = GroupSpec::new(vec![diag2(2.0, 0.5)]).unwrap();
    let out = frances_limit_set(&spec, 6, 8, &tol()).unwrap();
    assert_eq!(out.geodesics.len(), 2);
    assert!(out.all_vertical());
    let bases = out.base_points();
    assert!(bases.iter().any(|b| b.approx_eq(&PointCp1::basis(0), 1e-9)));
    assert!(bases.iter().any(|b| b.approx_eq(&PointCp1::basis(1), 1e-9)));
}

#[test]
fn frances_flip_case_flags_horizontal() {
    let spec = GroupSpec::new(vec![diag2(2.0, 0.5)])
        .unwrap()
        .with_deformation(vec![diag2(4.0, 0.25)])
        .unwrap();
    let out = super::frances::frances_limit_set(&spec, 4, 8, &tol()).unwrap();
    assert!(out.horizontal_count > 0);
    assert!(!out.all_vertical());
    // Flip confirmed on the generator pair itself.
    let d = cartan_kak(&spec.generator_pair(1)).unwrap();
    assert!(d.flip);
}

#[test]
fn frances_monotone_in_word_length() {
    use super::frances::frances_limit_set;
    let m = Mat2::new(
        c(1.0, 0.0) / c(2.0f64.sqrt(), 0.0),
        c(-1.0, 0.0) / c(2.0f64.sqrt(), 0.0),
        c(1.0, 0.0) / c(2.0f64.sqrt(), 0.0),
        c(1.0, 0.0) / c(2.0f64.sqrt(), 0.0),
    );
    let s1 = diag2(3.0, 1.0 / 3.0);
    let s2 = m * s1 * m.adjugate();
    let spec = GroupSpec::new(vec![s1, s2]).unwrap();
    let small = frances_limit_set(&spec, 3, 4, &tol()).unwrap();
    let large = frances_limit_set(&spec, 4, 4, &tol()).unwrap();
    for (_, b, _) in &small.bases {
        let near = large
            .bases
            .iter()
            .any(|(_, b2, _)| b.chordal(b2) <= tol().geodesic_dedup * 2.0);
        assert!(near, "base lost when the ball grew");
    }
    assert!(large.bases.len() >= small.bases.len());
}

#[test]
fn bounded_words_make_theta_points_dynamically_related() {
    // For the diagonal deformation every nontrivial word is bounded; the
    // oracle must exhibit a Theta cluster starting from a Theta point on
    // the repeller cone.
    let g = diag2(2.0, 0.5);
    let seq = SequenceSpec::Cyclic(pair(g, g));
    let cls = classify(&seq, &ClassifyPolicy::default()).unwrap();
    assert_eq!(cls.tag, DistortionTag::Bounded);
    let data = limit_data(&seq, &cls, &tol()).unwrap();
    let p_minus = data.p_minus.unwrap();

    // A Theta point on the repeller cone.
    let x = crate::rep::embed_sl2(&diag2(3.0, 1.0 / 3.0)).unwrap();
    assert!(cone_contains(&p_minus, &x, &Tolerances::scaled(10.0)));
    assert!(x.in_theta(&tol()));
    let out = oracle_dynrel(&seq, &x, &OracleConfig::default(), &tol()).unwrap();
    let theta_clusters = out
        .clusters
        .iter()
        .filter(|cl| cl.in_theta(&Tolerances::scaled(1e3)))
        .count();
    assert!(
        theta_clusters > 0,
        "no Theta cluster among {}",
        out.clusters.len()
    );
}
