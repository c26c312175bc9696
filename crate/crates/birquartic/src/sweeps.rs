//! Batch verification sweeps: randomized descent round-trips, curve
//! relation suites, and the exhaustive lattice cross-validation. These are
//! the data-parallel workloads behind the test suites and the benches; each
//! runs identically in sequential or parallel mode.

use std::collections::BTreeSet;

use crate::degree::{apply_word, DegreeVector, Generator};
use crate::exec::{map_items, ExecMode};
use crate::incidence::{LineMark, QuarticIncidence, SingularPoint};
use crate::lattice::enumerate::connected_graphs_up_to;
use crate::lattice::{
    check_star, check_star_by_recognition, classify_dynkin, definiteness, Definiteness,
};
use crate::rng::Rng;
use crate::untwist::untwist;
use crate::word::{equal, Verdict, Word};

fn mix(seed: u64, salt: u64) -> u64 {
    seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15).rotate_left(23)
}

/// A random flag-free configuration with pairwise-disjoint marked lines:
/// up to six nodes and four lines, no node on two lines. Disjointness makes
/// the composite degree action a direct product over clusters, which is
/// what the round-trip sweep relies on.
pub fn sample_config(rng: &mut Rng) -> QuarticIncidence {
    loop {
        let n_points = rng.range_i64(1, 7) as usize;
        let points: Vec<SingularPoint> = (1..=n_points)
            .map(|i| SingularPoint {
                id: format!("P{i}").as_str().into(),
                eckardt: false,
            })
            .collect();
        // Candidate point sets of sizes 1..=3 in random order.
        let mut candidates: Vec<Vec<usize>> = Vec::new();
        for size in 1..=3.min(n_points) {
            candidates.extend(subsets_of_size(n_points, size));
        }
        for i in (1..candidates.len()).rev() {
            let j = rng.below(i as u64 + 1) as usize;
            candidates.swap(i, j);
        }
        let target_lines = rng.range_i64(1, 5) as usize;
        let mut chosen: Vec<Vec<usize>> = Vec::new();
        for cand in candidates {
            if chosen.len() >= target_lines {
                break;
            }
            let compatible = chosen.iter().all(|c| c.iter().all(|x| !cand.contains(x)));
            if compatible {
                chosen.push(cand);
            }
        }
        if chosen.is_empty() {
            continue;
        }
        let lines: Vec<LineMark> = chosen
            .iter()
            .enumerate()
            .map(|(i, pts)| LineMark {
                id: format!("L{}", i + 1).as_str().into(),
                points: pts
                    .iter()
                    .map(|&p| format!("P{}", p + 1).as_str().into())
                    .collect(),
                eckardt: false,
            })
            .collect();
        let cfg = QuarticIncidence::new(points, lines).expect("fresh ids");
        if cfg.validate().is_empty() {
            return cfg;
        }
    }
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack = vec![(0usize, Vec::new())];
    while let Some((start, cur)) = stack.pop() {
        if cur.len() == size {
            out.push(cur);
            continue;
        }
        for i in start..n {
            let mut next = cur.clone();
            next.push(i);
            stack.push((i + 1, next));
        }
    }
    out
}

/// All involution generators a configuration carries.
pub fn generator_pool(cfg: &QuarticIncidence) -> Vec<Generator> {
    let mut pool = Vec::new();
    for p in cfg.points() {
        if !p.eckardt {
            pool.push(Generator::Point(p.id.clone()));
        }
    }
    for l in cfg.lines() {
        if l.eckardt {
            continue;
        }
        match l.points.len() {
            1 => pool.push(Generator::Line(l.id.clone())),
            2 => {
                pool.push(Generator::Line(l.id.clone()));
                pool.push(Generator::PairPoint {
                    p1: l.points[0].clone(),
                    p2: l.points[1].clone(),
                    line: l.id.clone(),
                });
            }
            _ => {}
        }
    }
    // A line through an eckardt-flagged node carries no line involution
    // even when the line itself is unflagged; validation filters those.
    pool.retain(|g| g.validate(cfg).is_ok());
    pool
}

/// Generators attached to one line's cluster.
pub fn cluster_pool(_cfg: &QuarticIncidence, line: &LineMark) -> Vec<Generator> {
    let mut pool: Vec<Generator> = line
        .points
        .iter()
        .map(|p| Generator::Point(p.clone()))
        .collect();
    match line.points.len() {
        1 => pool.push(Generator::Line(line.id.clone())),
        2 => {
            pool.push(Generator::Line(line.id.clone()));
            pool.push(Generator::PairPoint {
                p1: line.points[0].clone(),
                p2: line.points[1].clone(),
                line: line.id.clone(),
            });
        }
        _ => {}
    }
    pool
}

/// A reduced word over the pool: no two adjacent letters are equal.
fn sample_reduced_word(rng: &mut Rng, pool: &[Generator], max_len: usize) -> Vec<Generator> {
    let len = rng.range_i64(1, max_len as i64 + 1) as usize;
    let mut word: Vec<Generator> = Vec::with_capacity(len);
    for _ in 0..len {
        let mut letter = rng.pick(pool).clone();
        let mut guard = 0;
        while word.last() == Some(&letter) {
            letter = rng.pick(pool).clone();
            guard += 1;
            if guard > 64 {
                break;
            }
        }
        if word.last() == Some(&letter) {
            break;
        }
        word.push(letter);
    }
    word
}

/// Result of the descent round-trip sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentSweep {
    pub words: usize,
    pub completed: usize,
    pub single_cluster_words: usize,
    pub single_cluster_recovered: usize,
    pub failures: Vec<String>,
}

impl DescentSweep {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty() && self.completed == self.words
    }
}

/// Applies random reduced words to the identity vector and checks that the
/// descent inverts them: every trace completes at the identity vector
/// within word-length many steps, and on single-cluster words the reversed
/// recovered word equals the input word in the cluster model.
pub fn descent_roundtrip_sweep(
    mode: ExecMode,
    words: usize,
    max_len: usize,
    single_cluster_share: usize,
    seed: u64,
) -> DescentSweep {
    let outcomes: Vec<(bool, Option<bool>, Option<String>)> =
        map_items(mode, (0..words).collect(), |i| {
            let mut rng = Rng::seeded(mix(seed, i as u64 + 1));
            // The first `single_cluster_share` words are single-cluster by
            // construction.
            let single = i < single_cluster_share;
            let (cfg, pool) = loop {
                let cfg = sample_config(&mut rng);
                let pool = if single {
                    let idx = rng.below(cfg.lines().len() as u64) as usize;
                    cluster_pool(&cfg, &cfg.lines()[idx])
                } else {
                    generator_pool(&cfg)
                };
                if pool.len() >= 2 {
                    break (cfg, pool);
                }
            };
            let word = sample_reduced_word(&mut rng, &pool, max_len);
            let start = DegreeVector::identity(&cfg);
            let v = match apply_word(&cfg, &word, &start) {
                Ok(v) => v,
                Err(e) => return (false, None, Some(format!("apply failed: {e}"))),
            };
            let trace = untwist(&cfg, &v);
            if !trace.is_complete() {
                return (
                    false,
                    None,
                    Some(format!("descent did not complete: {:?}", trace.status)),
                );
            }
            if !trace.ends_at_identity() {
                return (
                    false,
                    None,
                    Some("descent did not end at the identity vector".into()),
                );
            }
            // Pair letters expand to three elementary ones, so any
            // generating expression of the word has length at most 3·len.
            if trace.steps.len() > 3 * word.len() {
                return (
                    false,
                    None,
                    Some(format!(
                        "descent took {} steps for a length-{} word",
                        trace.steps.len(),
                        word.len()
                    )),
                );
            }
            let recovered_matches = if single {
                let mut rev = trace.generators();
                rev.reverse();
                // Both words live on one cluster, so the equality oracle
                // decides exactly through the reflection model.
                let verdict = equal(&cfg, &Word::new(rev), &Word::new(word), 0);
                Some(matches!(verdict, Ok(Verdict::Equal)))
            } else {
                None
            };
            (true, recovered_matches, None)
        });
    let mut sweep = DescentSweep {
        words,
        completed: 0,
        single_cluster_words: 0,
        single_cluster_recovered: 0,
        failures: Vec::new(),
    };
    for (i, (ok, recovered, failure)) in outcomes.into_iter().enumerate() {
        if ok {
            sweep.completed += 1;
        }
        if let Some(matched) = recovered {
            sweep.single_cluster_words += 1;
            if matched {
                sweep.single_cluster_recovered += 1;
            } else {
                sweep
                    .failures
                    .push(format!("word {i}: cluster normal forms differ"));
            }
        }
        if let Some(f) = failure {
            sweep.failures.push(format!("word {i}: {f}"));
        }
    }
    sweep
}

/// Result of the lattice cross-validation sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeSweep {
    pub graphs: usize,
    pub mismatches: Vec<String>,
}

impl LatticeSweep {
    pub fn all_passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Exhaustive cross-validation over every connected simply-laced (−2)
/// configuration with at most `max_n` vertices (one representative per
/// isomorphism class; both star implementations factor through connected
/// components, so this covers all configurations of that size):
///
/// * the definition-based and recognition-based star conditions agree;
/// * recognized finite diagrams are exactly the negative definite ones,
///   and recognized affine diagrams exactly the semidefinite ones with
///   one-dimensional kernel.
pub fn lattice_cross_validation_sweep(mode: ExecMode, max_n: usize) -> LatticeSweep {
    lattice_cross_validate(mode, connected_graphs_up_to(max_n))
}

/// Cross-validates an already-enumerated batch of connected graphs.
pub fn lattice_cross_validate(
    mode: ExecMode,
    graphs: Vec<crate::lattice::enumerate::SmallGraph>,
) -> LatticeSweep {
    let count = graphs.len();
    let mismatches: Vec<Option<String>> = map_items(mode, graphs, |g| {
        let cfg = g.to_curve_config();
        let by_def = check_star(&cfg, &BTreeSet::new()).unwrap().holds();
        let by_rec = check_star_by_recognition(&cfg, &BTreeSet::new()).unwrap();
        if by_def != by_rec {
            return Some(format!(
                "star disagreement on {:?}: definition {by_def}, recognition {by_rec}",
                g.adj
            ));
        }
        let classes = classify_dynkin(&cfg).unwrap();
        assert_eq!(classes.len(), 1, "enumerated graphs are connected");
        let label = &classes[0].label;
        let def = definiteness(&cfg.intersection_matrix());
        let consistent = match def {
            Definiteness::NegativeDefinite => label.is_finite(),
            Definiteness::NegativeSemidefinite { ref kernel } => {
                label.is_affine() && kernel.len() == 1
            }
            Definiteness::IndefiniteOrOther => !label.is_finite() && !label.is_affine(),
        };
        if !consistent {
            return Some(format!(
                "classification {label} inconsistent with {} on {:?}",
                def.kind(),
                g.adj
            ));
        }
        None
    });
    LatticeSweep {
        graphs: count,
        mismatches: mismatches.into_iter().flatten().collect(),
    }
}
