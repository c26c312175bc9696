//! Words in the involution generators modulo the relation presentation.
//!
//! The relations are: every `τ` squares to the identity, automorphisms
//! conjugate `τ_Z` to `τ_{w(Z)}`, and on each marked line (a *cluster*)
//! the triple relations `(τ_{P1}τ_{P2}τ_{P3})² = id` (three collinear
//! nodes) and `(τ_{P1}τ_{P2}τ_L)² = id` (two nodes plus the line).
//!
//! Within one cluster the group embeds faithfully into the affine maps
//! `x ↦ εx + v` of the fiber elliptic curve, with `ε = ±1` and `v` in the
//! lattice spanned by the node sections `E_i`: `τ_{P_i}` reflects as
//! `(−1, −E_i)`, the line involution as `(−1, 2E_P)` (one node) or
//! `(−1, E_1+E_2)` (two nodes), and the pair involution — the reflection in
//! the section cut out by the line itself — as `(−1, −2(E_1+E_2))`. On a
//! three-node line the sections satisfy `E_1+E_2+E_3 = 0`, which is exactly
//! why the would-be line involution coincides with `τ_{P_3}` there. This
//! `(parity, translation)` pair is the exact normal form used to decide
//! single-cluster word equality.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::degree::{compose, AutPerm, Coord, Generator, GeneratorWire};
use crate::incidence::{LineId, QuarticIncidence};
use crate::{Error, Result};

/// A word in the generators.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Word {
    pub letters: Vec<Generator>,
}

impl Word {
    pub fn new(letters: Vec<Generator>) -> Self {
        Word { letters }
    }

    pub fn validate(&self, config: &QuarticIncidence) -> Result<()> {
        for g in &self.letters {
            g.validate(config)?;
        }
        Ok(())
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            word: Vec<GeneratorWire>,
        }
        let wire: Wire = serde_json::from_str(json)?;
        Ok(Word {
            letters: wire.word.into_iter().map(Generator::from_wire).collect(),
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Wire {
            word: Vec<GeneratorWire>,
        }
        serde_json::to_value(Wire {
            word: self.letters.iter().map(Generator::to_wire).collect(),
        })
        .unwrap()
    }
}

fn letters_cancel(a: &Generator, b: &Generator) -> bool {
    match (a, b) {
        (Generator::Aut(x), Generator::Aut(y)) => x.compose_after(y).is_identity_action(),
        _ => a.is_involution_letter() && a == b,
    }
}

/// Deletes adjacent equal involution letters and adjacent mutually-inverse
/// automorphism letters until none remain. The result is the unique fully
/// reduced word.
pub fn free_reduce(w: &Word) -> Word {
    let mut stack: Vec<Generator> = Vec::with_capacity(w.letters.len());
    for g in &w.letters {
        if let Some(top) = stack.last() {
            if letters_cancel(top, g) {
                stack.pop();
                continue;
            }
        }
        stack.push(g.clone());
    }
    Word { letters: stack }
}

fn conjugate_by(perm: &AutPerm, g: &Generator) -> Generator {
    match g {
        Generator::Point(p) => Generator::Point(perm.apply_point(p)),
        Generator::Line(l) => Generator::Line(perm.apply_line(l)),
        Generator::PairPoint { p1, p2, line } => Generator::PairPoint {
            p1: perm.apply_point(p1),
            p2: perm.apply_point(p2),
            line: perm.apply_line(line),
        },
        Generator::Aut(a) => Generator::Aut(a.clone()),
    }
}

/// Rewrites a word as (automorphism prefix, involution tail) using
/// `τ_Z · w = w · τ_{w⁻¹(Z)}`.
pub fn push_auts_left(w: &Word) -> (Vec<AutPerm>, Vec<Generator>) {
    let mut auts: Vec<AutPerm> = Vec::new();
    let mut tail: Vec<Generator> = Vec::new();
    for g in &w.letters {
        match g {
            Generator::Aut(a) => {
                let inv = a.inverse();
                for t in tail.iter_mut() {
                    *t = conjugate_by(&inv, t);
                }
                auts.push(a.clone());
            }
            other => tail.push(other.clone()),
        }
    }
    (auts, tail)
}

/// An affine symmetry `x ↦ εx + v` of a cluster's fiber, over the integer
/// lattice spanned by the cluster's section symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClusterElement {
    /// +1 or −1.
    pub parity: i8,
    /// Coordinates over the reduced section basis: one coordinate for a
    /// 1-node line, two for 2- and 3-node lines (with `E_3 = −E_1−E_2`).
    pub translation: Vec<i64>,
}

impl ClusterElement {
    pub fn identity(dim: usize) -> Self {
        ClusterElement {
            parity: 1,
            translation: vec![0; dim],
        }
    }

    /// `(ε,v)·(ε′,v′) = (εε′, v + εv′)`: composition of affine maps.
    pub fn compose(&self, rhs: &ClusterElement) -> ClusterElement {
        assert_eq!(self.translation.len(), rhs.translation.len());
        ClusterElement {
            parity: self.parity * rhs.parity,
            translation: self
                .translation
                .iter()
                .zip(&rhs.translation)
                .map(|(a, b)| a + i64::from(self.parity) * b)
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.parity == 1 && self.translation.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for ClusterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.parity == 1 { "+" } else { "-" };
        write!(f, "({sign}1, {:?})", self.translation)
    }
}

/// Section basis vector of the `i`-th node on a `k`-node line, in the
/// reduced coordinates.
fn section(i: usize, k: usize) -> Vec<i64> {
    match (k, i) {
        (1, 0) => vec![1],
        (2, 0) => vec![1, 0],
        (2, 1) => vec![0, 1],
        (3, 0) => vec![1, 0],
        (3, 1) => vec![0, 1],
        (3, 2) => vec![-1, -1],
        _ => unreachable!("line carries 1 to 3 nodes"),
    }
}

fn neg(v: Vec<i64>) -> Vec<i64> {
    v.into_iter().map(|c| -c).collect()
}

fn scale(s: i64, v: Vec<i64>) -> Vec<i64> {
    v.into_iter().map(|c| s * c).collect()
}

fn add(a: Vec<i64>, b: Vec<i64>) -> Vec<i64> {
    a.into_iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Evaluates one letter as a reflection on the given cluster. `None` when
/// the letter is not attached to that line.
fn letter_on_cluster(
    config: &QuarticIncidence,
    line: &LineId,
    g: &Generator,
) -> Option<ClusterElement> {
    let lm = config.line(line)?;
    let k = lm.points.len();
    let dim = if k == 1 { 1 } else { 2 };
    match g {
        Generator::Point(p) => {
            let i = lm.points.iter().position(|q| q == p)?;
            Some(ClusterElement {
                parity: -1,
                translation: neg(section(i, k)),
            })
        }
        Generator::Line(l) if l == line => {
            let translation = match k {
                1 => scale(2, section(0, 1)),
                2 => add(section(0, 2), section(1, 2)),
                _ => return None,
            };
            Some(ClusterElement {
                parity: -1,
                translation,
            })
        }
        Generator::PairPoint { line: pl, .. } if pl == line => {
            // Reflection in the section cut by the line, which is
            // −(E_1+E_2): x ↦ −2(E_1+E_2) − x.
            Some(ClusterElement {
                parity: -1,
                translation: scale(-2, add(section(0, k), section(1, k))),
            })
        }
        _ => {
            let _ = dim;
            None
        }
    }
}

/// Lines whose cluster a letter is attached to.
fn letter_lines(config: &QuarticIncidence, g: &Generator) -> Option<BTreeSet<LineId>> {
    match g {
        Generator::Point(p) => Some(
            config
                .lines_through(p)
                .into_iter()
                .map(|l| l.id.clone())
                .collect(),
        ),
        Generator::Line(l) => Some([l.clone()].into()),
        Generator::PairPoint { line, .. } => Some([line.clone()].into()),
        Generator::Aut(_) => None,
    }
}

/// Evaluates a word supported on a single cluster to its exact
/// `(parity, translation)` normal form. Returns the chosen line and the
/// element. Errors when the letters do not share a cluster.
pub fn cluster_normal_form(
    config: &QuarticIncidence,
    word: &Word,
) -> Result<(LineId, ClusterElement)> {
    word.validate(config)?;
    let mut common: Option<BTreeSet<LineId>> = None;
    for g in &word.letters {
        let lines = letter_lines(config, g).ok_or_else(|| {
            Error::MixedClusterWord(format!("`{g}` is an automorphism, not a cluster letter"))
        })?;
        common = Some(match common {
            None => lines,
            Some(cur) => cur.intersection(&lines).cloned().collect(),
        });
    }
    let candidates = match common {
        // The empty word lives on every cluster; report it on the first line.
        None => config
            .lines()
            .iter()
            .map(|l| l.id.clone())
            .collect::<BTreeSet<_>>(),
        Some(c) => c,
    };
    let line = candidates.into_iter().next().ok_or_else(|| {
        Error::MixedClusterWord("letters are attached to distinct clusters".into())
    })?;
    Ok((
        line.clone(),
        evaluate_on_cluster(config, &line, &word.letters),
    ))
}

fn evaluate_on_cluster(
    config: &QuarticIncidence,
    line: &LineId,
    letters: &[Generator],
) -> ClusterElement {
    let k = config.line(line).map(|l| l.points.len()).unwrap_or(1);
    let dim = if k == 1 { 1 } else { 2 };
    let mut acc = ClusterElement::identity(dim);
    for g in letters {
        let e = letter_on_cluster(config, line, g)
            .expect("caller checked every letter is attached to the line");
        acc = acc.compose(&e);
    }
    acc
}

/// Projection of an involution word to one cluster's reflection model:
/// letters attached to the line act as their reflections, every other
/// letter acts trivially. Pair letters are expanded through their
/// point–line–point decomposition first, so the projection is a
/// homomorphism and word equality implies equal projections.
fn project_to_cluster(
    config: &QuarticIncidence,
    line: &LineId,
    letters: &[Generator],
) -> ClusterElement {
    let k = config.line(line).map(|l| l.points.len()).unwrap_or(1);
    let dim = if k == 1 { 1 } else { 2 };
    let mut acc = ClusterElement::identity(dim);
    for g in letters {
        if let Some(e) = letter_on_cluster(config, line, g) {
            acc = acc.compose(&e);
        }
    }
    acc
}

fn expand_pairs(letters: &[Generator]) -> Vec<Generator> {
    let mut out = Vec::with_capacity(letters.len());
    for g in letters {
        match g {
            Generator::PairPoint { p1, p2, line } => {
                out.push(Generator::Point(p1.clone()));
                out.push(Generator::Line(line.clone()));
                out.push(Generator::Point(p2.clone()));
            }
            other => out.push(other.clone()),
        }
    }
    out
}

/// Verdict of the word-equality oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equal,
    Distinct,
    Undecided,
}

/// Decides equality of two words modulo the presentation.
///
/// Single-cluster pairs are decided exactly through the reflection model.
/// Mixed-cluster pairs are compared through exact invariants (parity,
/// per-cluster projections, composed degree matrices) which can certify
/// `Distinct`, and through budget-capped rewriting which can certify
/// `Equal`; anything else is `Undecided`. Raising the budget can only turn
/// `Undecided` into a decided verdict, never flip one.
pub fn equal(config: &QuarticIncidence, w1: &Word, w2: &Word, budget: usize) -> Result<Verdict> {
    w1.validate(config)?;
    w2.validate(config)?;
    let r1 = free_reduce(w1);
    let r2 = free_reduce(w2);
    let (auts1, tail1) = push_auts_left(&r1);
    let (auts2, tail2) = push_auts_left(&r2);
    let perm1 = compose_perms(&auts1);
    let perm2 = compose_perms(&auts2);
    if !perm1.same_action(&perm2) {
        return Ok(Verdict::Distinct);
    }
    let tail1 = free_reduce(&Word::new(tail1)).letters;
    let tail2 = free_reduce(&Word::new(tail2)).letters;
    if tail1 == tail2 {
        return Ok(Verdict::Equal);
    }

    // Exact decision on a common cluster.
    let common1 = common_lines(config, &tail1);
    let common2 = common_lines(config, &tail2);
    if let (Some(c1), Some(c2)) = (&common1, &common2) {
        if let Some(line) = c1.intersection(c2).next() {
            let e1 = evaluate_on_cluster(config, line, &tail1);
            let e2 = evaluate_on_cluster(config, line, &tail2);
            return Ok(if e1 == e2 {
                Verdict::Equal
            } else {
                Verdict::Distinct
            });
        }
    }

    // Invariant mismatches certify distinctness.
    let x1 = expand_pairs(&tail1);
    let x2 = expand_pairs(&tail2);
    if x1.len() % 2 != x2.len() % 2 {
        return Ok(Verdict::Distinct);
    }
    for l in config.lines() {
        if project_to_cluster(config, &l.id, &x1) != project_to_cluster(config, &l.id, &x2) {
            return Ok(Verdict::Distinct);
        }
    }
    // The composed degree matrices are a sound invariant only when no node
    // lies on two marked lines: a point letter writes the coordinates of
    // every line through its node, so with shared nodes the cluster
    // relations do not hold on the full coordinate space and relation-equal
    // words could be separated spuriously.
    if config.lines_pairwise_disjoint() {
        if let (Ok(m1), Ok(m2)) = (compose(config, &tail1), compose(config, &tail2)) {
            let mut coords: BTreeSet<Coord> = m1.basis().iter().cloned().collect();
            coords.extend(m2.basis().iter().cloned());
            let basis: Vec<Coord> = coords.into_iter().collect();
            let e1 = m1.extend_to(&basis);
            let e2 = m2.extend_to(&basis);
            let opaque: BTreeSet<&Coord> = m1.untouched().iter().chain(m2.untouched()).collect();
            for (i, ci) in basis.iter().enumerate() {
                if opaque.contains(ci) {
                    continue;
                }
                for (j, cj) in basis.iter().enumerate() {
                    if opaque.contains(cj) {
                        continue;
                    }
                    if e1[(i, j)] != e2[(i, j)] {
                        return Ok(Verdict::Distinct);
                    }
                }
            }
        }
    }

    // Budget-capped rewriting search for a syntactic match.
    if rewrite_reachable(config, &x1, &x2, budget) {
        return Ok(Verdict::Equal);
    }
    Ok(Verdict::Undecided)
}

fn compose_perms(auts: &[AutPerm]) -> AutPerm {
    let mut acc = AutPerm::identity("id");
    for a in auts {
        acc = acc.compose_after(a);
    }
    acc
}

fn common_lines(config: &QuarticIncidence, letters: &[Generator]) -> Option<BTreeSet<LineId>> {
    let mut common: Option<BTreeSet<LineId>> = None;
    for g in letters {
        let lines = letter_lines(config, g)?;
        common = Some(match common {
            None => lines,
            Some(cur) => cur.intersection(&lines).cloned().collect(),
        });
    }
    match common {
        None => Some(config.lines().iter().map(|l| l.id.clone()).collect()),
        Some(c) if c.is_empty() => None,
        Some(c) => Some(c),
    }
}

/// Breadth-first search over words reachable from `start` by free
/// cancellation and by reversing any three consecutive letters that share a
/// cluster (each triple relation `(abc)² = id` rewrites `abc → cba`).
fn rewrite_reachable(
    config: &QuarticIncidence,
    start: &[Generator],
    target: &[Generator],
    budget: usize,
) -> bool {
    let canon = |w: &[Generator]| free_reduce(&Word::new(w.to_vec())).letters;
    let start = canon(start);
    let target = canon(target);
    if start == target {
        return true;
    }
    let mut seen: BTreeSet<Vec<String>> = BTreeSet::new();
    let key = |w: &[Generator]| w.iter().map(|g| format!("{g}")).collect::<Vec<_>>();
    let mut queue = VecDeque::new();
    seen.insert(key(&start));
    queue.push_back(start);
    let mut visited = 0usize;
    while let Some(cur) = queue.pop_front() {
        visited += 1;
        if visited > budget {
            return false;
        }
        for i in 0..cur.len().saturating_sub(2) {
            let window = &cur[i..i + 3];
            let share_cluster = window
                .iter()
                .map(|g| letter_lines(config, g))
                .try_fold(None::<BTreeSet<LineId>>, |acc, lines| {
                    let lines = lines?;
                    Some(Some(match acc {
                        None => lines,
                        Some(cur) => cur.intersection(&lines).cloned().collect(),
                    }))
                })
                .flatten()
                .map(|s| !s.is_empty())
                .unwrap_or(false);
            if !share_cluster {
                continue;
            }
            let mut next = cur.clone();
            next.swap(i, i + 2);
            let next = canon(&next);
            if next == target {
                return true;
            }
            if seen.insert(key(&next)) {
                queue.push_back(next);
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::incidence::{config, PointId};
    use std::collections::BTreeMap;

    fn three_node_line() -> QuarticIncidence {
        config(
            &[("P1", false), ("P2", false), ("P3", false)],
            &[("L1", &["P1", "P2", "P3"], false)],
        )
    }

    fn two_node_line() -> QuarticIncidence {
        config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1", "P2"], false)],
        )
    }

    fn one_node_line() -> QuarticIncidence {
        config(&[("P1", false)], &[("L1", &["P1"], false)])
    }

    #[test]
    fn free_reduction_examples() {
        let w = Word::new(vec![Generator::point("P1"), Generator::point("P1")]);
        assert!(free_reduce(&w).letters.is_empty());
        let w = Word::new(vec![
            Generator::point("P1"),
            Generator::line("L1"),
            Generator::line("L1"),
            Generator::point("P1"),
        ]);
        assert!(free_reduce(&w).letters.is_empty());
        let w = Word::new(vec![
            Generator::point("P1"),
            Generator::line("L1"),
            Generator::point("P2"),
        ]);
        assert_eq!(free_reduce(&w), w);
    }

    #[test]
    fn free_reduction_cancels_inverse_auts() {
        let a = AutPerm {
            label: "r".into(),
            points: [
                (PointId::from("P1"), PointId::from("P2")),
                (PointId::from("P2"), PointId::from("P3")),
                (PointId::from("P3"), PointId::from("P1")),
            ]
            .into(),
            lines: BTreeMap::new(),
        };
        let w = Word::new(vec![Generator::Aut(a.inverse()), Generator::Aut(a.clone())]);
        assert!(free_reduce(&w).letters.is_empty());
        // A 3-cycle does not cancel with itself.
        let w = Word::new(vec![Generator::Aut(a.clone()), Generator::Aut(a)]);
        assert_eq!(free_reduce(&w).letters.len(), 2);
    }

    #[test]
    fn three_reflections_squared_is_identity() {
        let c = three_node_line();
        let letters: Vec<Generator> = ["P1", "P2", "P3", "P1", "P2", "P3"]
            .iter()
            .map(|p| Generator::point(p))
            .collect();
        let (_, e) = cluster_normal_form(&c, &Word::new(letters)).unwrap();
        assert!(e.is_identity());
    }

    #[test]
    fn point_then_line_is_a_translation_by_minus_three_sections() {
        let c = one_node_line();
        let w = Word::new(vec![Generator::point("P1"), Generator::line("L1")]);
        let (_, e) = cluster_normal_form(&c, &w).unwrap();
        assert_eq!(
            e,
            ClusterElement {
                parity: 1,
                translation: vec![-3]
            }
        );
    }

    #[test]
    fn pair_equals_point_line_point_in_the_model() {
        let c = two_node_line();
        let pair = Word::new(vec![Generator::pair("P1", "P2", "L1")]);
        let plp = Word::new(vec![
            Generator::point("P1"),
            Generator::line("L1"),
            Generator::point("P2"),
        ]);
        let (_, e1) = cluster_normal_form(&c, &pair).unwrap();
        let (_, e2) = cluster_normal_form(&c, &plp).unwrap();
        assert_eq!(e1, e2);
        assert_eq!(e1.parity, -1);
        // Reflection in the section −(E1+E2): translation −2(E1+E2).
        assert_eq!(e1.translation, vec![-2, -2]);
    }

    #[test]
    fn line_involution_on_a_three_node_line_would_be_the_third_point() {
        // Not a generator, but the model shows the coincidence: the would-be
        // element (−1, E1+E2) equals τ_{P3} = (−1, −E3) modulo E1+E2+E3 = 0.
        let c = three_node_line();
        let (_, tau3) = cluster_normal_form(&c, &Word::new(vec![Generator::point("P3")])).unwrap();
        assert_eq!(
            tau3,
            ClusterElement {
                parity: -1,
                translation: vec![1, 1]
            }
        );
    }

    #[test]
    fn mixed_cluster_words_are_rejected_by_the_normal_form() {
        let c = config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1"], false), ("L2", &["P2"], false)],
        );
        let w = Word::new(vec![Generator::line("L1"), Generator::line("L2")]);
        assert!(matches!(
            cluster_normal_form(&c, &w),
            Err(Error::MixedClusterWord(_))
        ));
    }

    #[test]
    fn equality_of_reversed_triple() {
        let c = three_node_line();
        let w1 = Word::new(vec![
            Generator::point("P1"),
            Generator::point("P2"),
            Generator::point("P3"),
        ]);
        let w2 = Word::new(vec![
            Generator::point("P3"),
            Generator::point("P2"),
            Generator::point("P1"),
        ]);
        assert_eq!(equal(&c, &w1, &w2, 100).unwrap(), Verdict::Equal);
    }

    #[test]
    fn distinct_points_are_distinct() {
        let c = two_node_line();
        let w1 = Word::new(vec![Generator::point("P1")]);
        let w2 = Word::new(vec![Generator::point("P2")]);
        assert_eq!(equal(&c, &w1, &w2, 100).unwrap(), Verdict::Distinct);
    }

    #[test]
    fn translation_is_not_the_identity() {
        let c = one_node_line();
        let w1 = Word::new(vec![Generator::point("P1"), Generator::line("L1")]);
        let w2 = Word::new(vec![]);
        assert_eq!(equal(&c, &w1, &w2, 100).unwrap(), Verdict::Distinct);
    }

    #[test]
    fn reflexivity() {
        let c = two_node_line();
        for w in [
            Word::new(vec![]),
            Word::new(vec![Generator::point("P1"), Generator::line("L1")]),
            Word::new(vec![Generator::pair("P1", "P2", "L1")]),
        ] {
            assert_eq!(equal(&c, &w, &w, 10).unwrap(), Verdict::Equal);
        }
    }

    #[test]
    fn pair_decomposition_detected_by_rewriting() {
        let c = two_node_line();
        let w1 = Word::new(vec![Generator::pair("P1", "P2", "L1")]);
        let w2 = Word::new(vec![
            Generator::point("P1"),
            Generator::line("L1"),
            Generator::point("P2"),
        ]);
        assert_eq!(equal(&c, &w1, &w2, 100).unwrap(), Verdict::Equal);
    }

    #[test]
    fn aut_prefixes_decide() {
        let c = two_node_line();
        let swap = AutPerm {
            label: "s".into(),
            points: [
                (PointId::from("P1"), PointId::from("P2")),
                (PointId::from("P2"), PointId::from("P1")),
            ]
            .into(),
            lines: BTreeMap::new(),
        };
        // w·τ_{P1} = τ_{P2}·w.
        let w1 = Word::new(vec![Generator::Aut(swap.clone()), Generator::point("P1")]);
        let w2 = Word::new(vec![Generator::point("P2"), Generator::Aut(swap.clone())]);
        assert_eq!(equal(&c, &w1, &w2, 100).unwrap(), Verdict::Equal);
        // Different permutations are distinct.
        let w3 = Word::new(vec![Generator::Aut(swap)]);
        let w4 = Word::new(vec![]);
        assert_eq!(equal(&c, &w3, &w4, 100).unwrap(), Verdict::Distinct);
    }

    #[test]
    fn parities_and_projections_separate_cross_cluster_words() {
        let c = config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1"], false), ("L2", &["P2"], false)],
        );
        let w1 = Word::new(vec![Generator::line("L1")]);
        let w2 = Word::new(vec![Generator::line("L2")]);
        assert_eq!(equal(&c, &w1, &w2, 100).unwrap(), Verdict::Distinct);
        let w3 = Word::new(vec![Generator::line("L1"), Generator::line("L2")]);
        assert_eq!(equal(&c, &w1, &w3, 100).unwrap(), Verdict::Distinct);
    }

    #[test]
    fn budget_only_moves_undecided_to_decided() {
        let c = two_node_line();
        let w1 = Word::new(vec![Generator::pair("P1", "P2", "L1")]);
        let w2 = Word::new(vec![
            Generator::point("P1"),
            Generator::line("L1"),
            Generator::point("P2"),
        ]);
        let budgets = [0usize, 1, 5, 50, 500];
        let verdicts: Vec<Verdict> = budgets
            .iter()
            .map(|&b| equal(&c, &w1, &w2, b).unwrap())
            .collect();
        // Never both Equal and Distinct across budgets.
        assert!(!verdicts.contains(&Verdict::Distinct));
        assert!(verdicts
            .windows(2)
            .all(|w| w[0] != Verdict::Equal || w[1] == Verdict::Equal));
    }

    #[test]
    fn two_reflections_give_even_parity() {
        let c = three_node_line();
        let mut rng = crate::rng::Rng::seeded(99);
        let gens = [
            Generator::point("P1"),
            Generator::point("P2"),
            Generator::point("P3"),
        ];
        for _ in 0..100 {
            let g = rng.pick(&gens).clone();
            let h = rng.pick(&gens).clone();
            let w = Word::new(vec![g.clone(), h.clone(), g, h]);
            let (_, e) = cluster_normal_form(&c, &w).unwrap();
            assert_eq!(e.parity, 1);
        }
    }

    #[test]
    fn two_node_translation_lattice_has_rank_two() {
        let c = two_node_line();
        let ab = Word::new(vec![Generator::point("P1"), Generator::point("P2")]);
        let bl = Word::new(vec![Generator::point("P2"), Generator::line("L1")]);
        let (_, eab) = cluster_normal_form(&c, &ab).unwrap();
        let (_, ebl) = cluster_normal_form(&c, &bl).unwrap();
        assert_eq!(eab.parity, 1);
        assert_eq!(ebl.parity, 1);
        let det = eab.translation[0] * ebl.translation[1] - eab.translation[1] * ebl.translation[0];
        assert_ne!(
            det, 0,
            "translations of ab and bl must span a rank-2 lattice"
        );
    }
}
