//! Randomized verification of the involution relations on actual curves.
//!
//! Each marked line (cluster) carries one to three node sections
//! `E_1, …, E_k` on the elliptic fibration it defines. The suite
//! instantiates those sections on sample Weierstrass cubics and checks every
//! relation pointwise, exactly: zero tolerance, every failure counted.

use serde::Serialize;

use super::field::FieldCtx;
use super::{CubicPoint, PlaneCubic};
use crate::degree::Generator;
use crate::exec::{map_items, ExecMode};
use crate::incidence::{config, QuarticIncidence};
use crate::rng::Rng;
use crate::word::{cluster_normal_form, Word};
use crate::{Error, Result};

/// Outcome of one relation, over one cluster shape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub cluster: String,
    pub relation: String,
    pub samples: usize,
    pub failures: usize,
}

impl RelationCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

const CHUNK: usize = 64;

fn mix(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(17)
}

/// A random curve with a known rational base point: pick `a, x0, y0` and
/// set `b = y0² − x0³ − a·x0`.
pub fn sample_curve<C: FieldCtx>(ctx: &C, rng: &mut Rng) -> (PlaneCubic<C>, CubicPoint<C::Elem>) {
    loop {
        let a = ctx.sample(rng);
        let x0 = ctx.sample(rng);
        let y0 = ctx.sample(rng);
        let x0cube = ctx.mul(&x0, &ctx.mul(&x0, &x0));
        let b = ctx.sub(&ctx.sub(&ctx.mul(&y0, &y0), &x0cube), &ctx.mul(&a, &x0));
        let Ok(curve) = PlaneCubic::weierstrass(ctx.clone(), a, b) else {
            continue;
        };
        let base = curve
            .point([x0, y0, ctx.one()])
            .expect("base point on the curve by construction");
        if base == *curve.zero_point() {
            continue;
        }
        return (curve, base);
    }
}

fn distinct_sections<C: FieldCtx>(
    curve: &PlaneCubic<C>,
    base: &CubicPoint<C::Elem>,
    rng: &mut Rng,
    count: usize,
) -> Vec<CubicPoint<C::Elem>> {
    let mut sections: Vec<CubicPoint<C::Elem>> = Vec::with_capacity(count);
    let mut k = 0i64;
    while sections.len() < count {
        k += rng.range_i64(1, 7);
        let e = curve
            .scalar_mul(k, base)
            .expect("multiple of a curve point");
        if e != *curve.zero_point() && !sections.contains(&e) {
            sections.push(e);
        }
    }
    sections
}

/// The synthetic one-line configuration and generator pool for a cluster
/// with `shape` nodes.
pub fn shape_cluster(shape: usize) -> (QuarticIncidence, Vec<Generator>) {
    match shape {
        1 => (
            config(&[("P1", false)], &[("L1", &["P1"], false)]),
            vec![Generator::point("P1"), Generator::line("L1")],
        ),
        2 => (
            config(
                &[("P1", false), ("P2", false)],
                &[("L1", &["P1", "P2"], false)],
            ),
            vec![
                Generator::point("P1"),
                Generator::point("P2"),
                Generator::line("L1"),
                Generator::pair("P1", "P2", "L1"),
            ],
        ),
        3 => (
            config(
                &[("P1", false), ("P2", false), ("P3", false)],
                &[("L1", &["P1", "P2", "P3"], false)],
            ),
            vec![
                Generator::point("P1"),
                Generator::point("P2"),
                Generator::point("P3"),
            ],
        ),
        _ => panic!("a cluster has 1 to 3 nodes"),
    }
}

/// Applies one cluster letter on the curve. The sections slice holds
/// `E_1, …, E_k`; the line's own section is `−(E_1 + E_2)` when two or more
/// nodes are present.
fn apply_letter<C: FieldCtx>(
    curve: &PlaneCubic<C>,
    sections: &[CubicPoint<C::Elem>],
    g: &Generator,
    x: &CubicPoint<C::Elem>,
) -> CubicPoint<C::Elem> {
    match g {
        Generator::Point(p) => {
            let idx = match p.0.as_str() {
                "P1" => 0,
                "P2" => 1,
                "P3" => 2,
                other => panic!("unexpected synthetic point id {other}"),
            };
            curve.galois(&sections[idx], x).unwrap()
        }
        Generator::Line(_) => {
            if sections.len() == 1 {
                // Reflection in the single node section.
                curve.reflection(&sections[0], x).unwrap()
            } else {
                // Galois involution with respect to the line section −(E1+E2).
                let sum = curve.add_points(&sections[0], &sections[1]).unwrap();
                let el = curve.neg_point(&sum).unwrap();
                curve.galois(&el, x).unwrap()
            }
        }
        Generator::PairPoint { .. } => {
            // Reflection in the line section −(E1+E2).
            let sum = curve.add_points(&sections[0], &sections[1]).unwrap();
            let el = curve.neg_point(&sum).unwrap();
            curve.reflection(&el, x).unwrap()
        }
        Generator::Aut(_) => panic!("automorphisms are not cluster letters"),
    }
}

fn apply_word_on_curve<C: FieldCtx>(
    curve: &PlaneCubic<C>,
    sections: &[CubicPoint<C::Elem>],
    letters: &[Generator],
    x: &CubicPoint<C::Elem>,
) -> CubicPoint<C::Elem> {
    // Word [g1, …, gn] acts as g1 ∘ … ∘ gn.
    let mut out = x.clone();
    for g in letters.iter().rev() {
        out = apply_letter(curve, sections, g, &out);
    }
    out
}

/// Relation names checked for each cluster shape.
pub fn shape_relation_names(shape: usize) -> Vec<&'static str> {
    match shape {
        1 => vec![
            "tau_P squared is the identity",
            "tau_L squared is the identity",
            "tau_P equals the third-intersection involution",
            "tau_P tau_L translates by -3 E_P",
        ],
        2 => vec![
            "(tau_P1 tau_P2 tau_L) squared is the identity",
            "tau_P1P2 equals tau_P1 tau_L tau_P2",
        ],
        3 => vec![
            "(tau_P1 tau_P2 tau_P3) squared is the identity",
            "line involution through P1, P2 coincides with tau_P3",
        ],
        _ => panic!("a cluster has 1 to 3 nodes"),
    }
}

/// Runs every relation of one cluster shape over `samples` random points,
/// re-sampling the curve and sections every few dozen points.
pub fn shape_relation_suite<C: FieldCtx>(
    ctx: &C,
    shape: usize,
    cluster: &str,
    samples: usize,
    seed: u64,
    mode: ExecMode,
) -> Vec<RelationCheck> {
    let names = shape_relation_names(shape);
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<usize>> = map_items(mode, (0..chunks).collect(), |chunk| {
        let n = CHUNK.min(samples - chunk * CHUNK);
        let mut rng = Rng::seeded(mix(seed, chunk as u64 + 1));
        let (curve, base) = sample_curve(ctx, &mut rng);
        let sections = distinct_sections(&curve, &base, &mut rng, shape);
        let mut failures = vec![0usize; names.len()];
        for _ in 0..n {
            let x = curve
                .scalar_mul(rng.range_i64(1, ctx.scalar_bound()), &base)
                .unwrap();
            let results = check_shape_relations(&curve, &sections, shape, &x);
            for (f, ok) in failures.iter_mut().zip(results) {
                if !ok {
                    *f += 1;
                }
            }
        }
        failures
    });
    names
        .into_iter()
        .enumerate()
        .map(|(i, name)| RelationCheck {
            cluster: cluster.to_owned(),
            relation: name.to_owned(),
            samples,
            failures: per_chunk.iter().map(|f| f[i]).sum(),
        })
        .collect()
}

fn check_shape_relations<C: FieldCtx>(
    curve: &PlaneCubic<C>,
    sections: &[CubicPoint<C::Elem>],
    shape: usize,
    x: &CubicPoint<C::Elem>,
) -> Vec<bool> {
    match shape {
        1 => {
            let e = &sections[0];
            let tp = |y: &CubicPoint<C::Elem>| curve.galois(e, y).unwrap();
            let tl = |y: &CubicPoint<C::Elem>| curve.reflection(e, y).unwrap();
            let minus3e = curve.scalar_mul(-3, e).unwrap();
            vec![
                tp(&tp(x)) == *x,
                tl(&tl(x)) == *x,
                tp(x) == curve.third_intersection(e, x).unwrap(),
                tp(&tl(x)) == curve.add_points(x, &minus3e).unwrap(),
            ]
        }
        2 => {
            let (e1, e2) = (&sections[0], &sections[1]);
            let el = curve.neg_point(&curve.add_points(e1, e2).unwrap()).unwrap();
            let t1 = |y: &CubicPoint<C::Elem>| curve.galois(e1, y).unwrap();
            let t2 = |y: &CubicPoint<C::Elem>| curve.galois(e2, y).unwrap();
            let tl = |y: &CubicPoint<C::Elem>| curve.galois(&el, y).unwrap();
            let pair = |y: &CubicPoint<C::Elem>| curve.reflection(&el, y).unwrap();
            let once = t1(&t2(&tl(x)));
            let twice = t1(&t2(&tl(&once)));
            vec![twice == *x, pair(x) == t1(&tl(&t2(x)))]
        }
        3 => {
            let (e1, e2) = (&sections[0], &sections[1]);
            // Collinear triple: E3 = −(E1 + E2).
            let e3 = curve.neg_point(&curve.add_points(e1, e2).unwrap()).unwrap();
            let t = |e: &CubicPoint<C::Elem>, y: &CubicPoint<C::Elem>| curve.galois(e, y).unwrap();
            let once = t(e1, &t(e2, &t(&e3, x)));
            let twice = t(e1, &t(e2, &t(&e3, &once)));
            let sum12 = curve.add_points(e1, e2).unwrap();
            let line_inv = curve
                .add_points(&sum12, &curve.neg_point(x).unwrap())
                .unwrap();
            vec![twice == *x, line_inv == t(&e3, x)]
        }
        _ => panic!("a cluster has 1 to 3 nodes"),
    }
}

/// Checks that the formal `(parity, translation)` cluster model predicts the
/// pointwise action of random words on sample curves.
pub fn model_agreement_suite<C: FieldCtx>(
    ctx: &C,
    shape: usize,
    words: usize,
    max_len: usize,
    seed: u64,
    mode: ExecMode,
) -> RelationCheck {
    let (cfg, pool) = shape_cluster(shape);
    let failures: Vec<usize> = map_items(mode, (0..words).collect(), |w| {
        let mut rng = Rng::seeded(mix(seed, 0x5eed ^ w as u64));
        let (curve, base) = sample_curve(ctx, &mut rng);
        let need = if shape == 1 { 1 } else { 2 };
        let sections = distinct_sections(&curve, &base, &mut rng, need);
        let len = rng.below(max_len as u64 + 1) as usize;
        let letters: Vec<Generator> = (0..len).map(|_| rng.pick(&pool).clone()).collect();
        let (_, elem) = cluster_normal_form(&cfg, &Word::new(letters.clone()))
            .expect("synthetic single-cluster word");
        // Full section list for letter application (E3 derived when needed).
        let mut full = sections.clone();
        if shape == 3 {
            let sum = curve.add_points(&full[0], &full[1]).unwrap();
            full.push(curve.neg_point(&sum).unwrap());
        }
        let x = curve
            .scalar_mul(rng.range_i64(1, ctx.scalar_bound()), &base)
            .unwrap();
        let actual = apply_word_on_curve(&curve, &full, &letters, &x);
        // Predicted: x ↦ εx + Σ cᵢ Eᵢ over the reduced basis.
        let mut v = curve.zero_point().clone();
        for (i, coeff) in elem.translation.iter().enumerate() {
            let part = curve.scalar_mul(*coeff, &sections[i]).unwrap();
            v = curve.add_points(&v, &part).unwrap();
        }
        let predicted = if elem.parity == 1 {
            curve.add_points(&x, &v).unwrap()
        } else {
            curve.add_points(&v, &curve.neg_point(&x).unwrap()).unwrap()
        };
        usize::from(predicted != actual)
    });
    RelationCheck {
        cluster: format!("shape-{shape}"),
        relation: "cluster model matches pointwise evaluation".to_owned(),
        samples: words,
        failures: failures.iter().sum(),
    }
}

/// Randomized group-law axioms on sample curves.
pub fn group_law_suite<C: FieldCtx>(
    ctx: &C,
    samples: usize,
    seed: u64,
    mode: ExecMode,
) -> Vec<RelationCheck> {
    let names = [
        "addition is commutative",
        "addition is associative",
        "zero is neutral",
        "negation inverts",
        "odd reflection compositions square to the identity",
    ];
    let chunks = samples.div_ceil(CHUNK);
    let per_chunk: Vec<Vec<usize>> = map_items(mode, (0..chunks).collect(), |chunk| {
        let n = CHUNK.min(samples - chunk * CHUNK);
        let mut rng = Rng::seeded(mix(seed, 0xabcd ^ (chunk as u64 + 1)));
        let (curve, base) = sample_curve(ctx, &mut rng);
        let mut failures = vec![0usize; names.len()];
        for _ in 0..n {
            let a = curve
                .scalar_mul(rng.range_i64(1, ctx.scalar_bound()), &base)
                .unwrap();
            let b = curve
                .scalar_mul(rng.range_i64(1, ctx.scalar_bound()), &base)
                .unwrap();
            let c = curve
                .scalar_mul(rng.range_i64(1, ctx.scalar_bound()), &base)
                .unwrap();
            if curve.add_points(&a, &b).unwrap() != curve.add_points(&b, &a).unwrap() {
                failures[0] += 1;
            }
            let ab_c = curve
                .add_points(&curve.add_points(&a, &b).unwrap(), &c)
                .unwrap();
            let a_bc = curve
                .add_points(&a, &curve.add_points(&b, &c).unwrap())
                .unwrap();
            if ab_c != a_bc {
                failures[1] += 1;
            }
            if curve.add_points(&a, &curve.zero_point().clone()).unwrap() != a {
                failures[2] += 1;
            }
            let na = curve.neg_point(&a).unwrap();
            if curve.add_points(&a, &na).unwrap() != *curve.zero_point() {
                failures[3] += 1;
            }
            // Odd number of reflections/galois maps: an involution.
            let odd = |y: &CubicPoint<C::Elem>| {
                let y1 = curve.reflection(&a, y).unwrap();
                let y2 = curve.galois(&b, &y1).unwrap();
                curve.reflection(&c, &y2).unwrap()
            };
            let x = curve
                .scalar_mul(rng.range_i64(1, ctx.scalar_bound()), &base)
                .unwrap();
            if odd(&odd(&x)) != x {
                failures[4] += 1;
            }
        }
        failures
    });
    names
        .into_iter()
        .enumerate()
        .map(|(i, name)| RelationCheck {
            cluster: "group-law".to_owned(),
            relation: name.to_owned(),
            samples,
            failures: per_chunk.iter().map(|f| f[i]).sum(),
        })
        .collect()
}

/// Per-cluster relation verification driven by a configuration: every
/// cluster is instantiated with the shape given by its node count.
pub fn config_relation_suite<C: FieldCtx>(
    ctx: &C,
    cfg: &QuarticIncidence,
    samples: usize,
    seed: u64,
    mode: ExecMode,
) -> Result<Vec<RelationCheck>> {
    let clusters = cfg.clusters()?;
    if clusters.is_empty() {
        return Err(Error::InvalidConfig("no marked lines to verify".into()));
    }
    let mut out = Vec::new();
    for (i, cl) in clusters.iter().enumerate() {
        let shape = cl.points.len();
        out.extend(shape_relation_suite(
            ctx,
            shape,
            &cl.line.0,
            samples,
            mix(seed, i as u64),
            mode,
        ));
    }
    Ok(out)
}
