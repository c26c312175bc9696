//! Non-canonical center detection and the degree-decreasing descent.
//!
//! A marked point or line is a non-canonical center of a vector when its
//! known multiplicity strictly exceeds `μ`. At most two centers can coexist
//! and only in two shapes (two nodes joined by a marked line, or a node plus
//! a line through it with exactly one more node); every other combination is
//! excluded, and [`check_admissible`] names the violated exclusion. The
//! descent repeatedly applies the untwisting generator of the current center
//! set, strictly decreasing `μ`, until no center remains.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::degree::{apply, DegreeVector, Generator, Multiplicity};
use crate::incidence::{LineId, PointId, QuarticIncidence};
use crate::{Error, Result};

/// Centers detected in a degree vector, plus the advisory categories.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CenterReport {
    /// Points with known `ν_P > μ`.
    pub points: Vec<PointId>,
    /// Lines with known `ν_L > μ`.
    pub lines: Vec<LineId>,
    /// Marked objects whose multiplicity is unknown; candidates, never centers.
    pub indeterminate_points: Vec<PointId>,
    pub indeterminate_lines: Vec<LineId>,
    /// Objects with `ν = μ` exactly: strictly canonical, reported but never
    /// untwisted.
    pub strictly_canonical_points: Vec<PointId>,
    pub strictly_canonical_lines: Vec<LineId>,
}

impl CenterReport {
    pub fn is_empty(&self) -> bool {
        self.points.is_empty() && self.lines.is_empty()
    }

    pub fn center_count(&self) -> usize {
        self.points.len() + self.lines.len()
    }
}

/// Admissibility verdict for a center set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Admissibility {
    Ok,
    Violation { rule: String },
}

impl Admissibility {
    pub fn is_ok(&self) -> bool {
        matches!(self, Admissibility::Ok)
    }

    fn violation(rule: impl Into<String>) -> Self {
        Admissibility::Violation { rule: rule.into() }
    }
}

/// Scans a degree vector for non-canonical centers.
pub fn detect_centers(config: &QuarticIncidence, v: &DegreeVector) -> CenterReport {
    let mu = v.mu();
    let mut report = CenterReport::default();
    for p in config.points() {
        match v.nu_point(&p.id) {
            Multiplicity::Known(nu) if &nu > mu => report.points.push(p.id.clone()),
            Multiplicity::Known(nu) if &nu == mu => {
                report.strictly_canonical_points.push(p.id.clone())
            }
            Multiplicity::Known(_) => {}
            Multiplicity::Unknown => report.indeterminate_points.push(p.id.clone()),
        }
    }
    for l in config.lines() {
        match v.nu_line(&l.id) {
            Multiplicity::Known(nu) if &nu > mu => report.lines.push(l.id.clone()),
            Multiplicity::Known(nu) if &nu == mu => {
                report.strictly_canonical_lines.push(l.id.clone())
            }
            Multiplicity::Known(_) => {}
            Multiplicity::Unknown => report.indeterminate_lines.push(l.id.clone()),
        }
    }
    report
}

/// Decides whether a center set is one of the allowed shapes.
pub fn check_admissible(config: &QuarticIncidence, centers: &CenterReport) -> Admissibility {
    let points = &centers.points;
    let lines = &centers.lines;
    if points.len() >= 3 {
        return Admissibility::violation("three points cannot appear simultaneously as centers");
    }
    if lines.len() >= 2 {
        return Admissibility::violation("two lines cannot appear simultaneously as centers");
    }
    if centers.center_count() > 2 {
        return Admissibility::violation("more than two simultaneous centers");
    }
    // Eckardt objects are never centers.
    for p in points {
        if config.point(p).map(|pt| pt.eckardt).unwrap_or(false) {
            return Admissibility::violation(format!("eckardt point `{p}` cannot be a center"));
        }
    }
    for l in lines {
        if config.line(l).map(|ln| ln.eckardt).unwrap_or(false) {
            return Admissibility::violation(format!("eckardt line `{l}` cannot be a center"));
        }
    }
    match (points.as_slice(), lines.as_slice()) {
        ([], []) | ([_], []) => Admissibility::Ok,
        ([], [l]) => {
            let line = config.line(l).expect("detected line exists");
            if line.points.len() == 3 {
                return Admissibility::violation(format!(
                    "line `{l}` carries three nodes and cannot be a center"
                ));
            }
            Admissibility::Ok
        }
        ([p1, p2], []) => {
            // The joining line must be marked and must itself be admissible.
            let Some(line) = config
                .lines()
                .iter()
                .find(|lm| lm.points.contains(p1) && lm.points.contains(p2))
            else {
                return Admissibility::violation(format!(
                    "points `{p1}`, `{p2}` are not joined by a marked line"
                ));
            };
            if line.eckardt {
                return Admissibility::violation(format!(
                    "joining line `{}` is an eckardt line",
                    line.id
                ));
            }
            if let Some(third) = line.points.iter().find(|q| *q != p1 && *q != p2) {
                if config.point(third).map(|pt| pt.eckardt).unwrap_or(false) {
                    return Admissibility::violation(format!(
                        "third node `{third}` on the joining line is an eckardt point"
                    ));
                }
            }
            Admissibility::Ok
        }
        ([p], [l]) => {
            let line = config.line(l).expect("detected line exists");
            if !line.points.contains(p) {
                return Admissibility::violation(format!(
                    "center line `{l}` does not pass through center point `{p}`"
                ));
            }
            if line.points.len() != 2 {
                return Admissibility::violation(format!(
                    "center line `{l}` must carry exactly one more node besides `{p}`"
                ));
            }
            Admissibility::Ok
        }
        _ => unreachable!("cardinalities covered above"),
    }
}

/// One descent step: the untwisting generator and the transformed vector.
pub fn untwist_step(
    config: &QuarticIncidence,
    v: &DegreeVector,
) -> Result<(Generator, DegreeVector)> {
    let centers = detect_centers(config, v);
    if centers.is_empty() {
        return Err(Error::InvalidConfig(
            "no non-canonical center to untwist".into(),
        ));
    }
    match check_admissible(config, &centers) {
        Admissibility::Ok => {}
        Admissibility::Violation { rule } => return Err(Error::InvalidConfig(rule)),
    }
    let g = choose_generator(config, &centers);
    let next = apply(config, &g, v)?;
    if next.mu() >= v.mu() {
        return Err(Error::InvalidConfig(format!(
            "untwisting `{g}` did not decrease the degree"
        )));
    }
    Ok((g, next))
}

fn choose_generator(config: &QuarticIncidence, centers: &CenterReport) -> Generator {
    match (centers.points.as_slice(), centers.lines.as_slice()) {
        // Point + line: untwist the line first, for deterministic traces.
        (_, [l]) => Generator::Line(l.clone()),
        ([p], []) => Generator::Point(p.clone()),
        ([p1, p2], []) => {
            let line = config
                .lines()
                .iter()
                .find(|lm| lm.points.contains(p1) && lm.points.contains(p2))
                .expect("admissible two-point center has a joining line");
            if line.points.len() == 2 {
                Generator::PairPoint {
                    p1: p1.clone(),
                    p2: p2.clone(),
                    line: line.id.clone(),
                }
            } else {
                // A third node sits on the joining line, so the pair
                // involution is not available; untwist the smaller point.
                Generator::Point(p1.min(p2).clone())
            }
        }
        _ => unreachable!("admissible center sets covered above"),
    }
}

/// Outcome of a descent run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum DescentStatus {
    /// No centers remain.
    Complete,
    /// A required multiplicity is unknown, or the descent exceeded the step
    /// budget without clearing all centers.
    Stuck { detail: String },
    /// The current center set violates an exclusion rule.
    Inadmissible { rule: String },
}

/// A full descent trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DescentTrace {
    pub steps: Vec<(Generator, DegreeVector)>,
    pub final_vector: DegreeVector,
    pub status: DescentStatus,
}

impl DescentTrace {
    pub fn generators(&self) -> Vec<Generator> {
        self.steps.iter().map(|(g, _)| g.clone()).collect()
    }

    pub fn is_complete(&self) -> bool {
        matches!(self.status, DescentStatus::Complete)
    }

    /// True when the final vector is the identity vector on all known data.
    pub fn ends_at_identity(&self) -> bool {
        self.final_vector.mu().is_one()
            && self.final_vector.known_points().values().all(Zero::is_zero)
            && self.final_vector.known_lines().values().all(Zero::is_zero)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "steps": self
                .steps
                .iter()
                .map(|(g, v)| serde_json::json!({
                    "generator": serde_json::to_value(g.to_wire()).unwrap(),
                    "vector": v.to_json(),
                }))
                .collect::<Vec<_>>(),
            "final": self.final_vector.to_json(),
            "status": serde_json::to_value(&self.status).unwrap(),
        })
    }
}

/// Step budget: descents of vectors reachable from the identity terminate
/// well before this; hand-built vectors that keep producing centers are cut
/// off instead of looping.
const MAX_DESCENT_STEPS: usize = 4096;

/// Runs the descent to completion, or to the first obstacle.
pub fn untwist(config: &QuarticIncidence, v: &DegreeVector) -> DescentTrace {
    let mut steps = Vec::new();
    let mut cur = v.clone();
    loop {
        let centers = detect_centers(config, &cur);
        if centers.is_empty() {
            return DescentTrace {
                steps,
                final_vector: cur,
                status: DescentStatus::Complete,
            };
        }
        if let Admissibility::Violation { rule } = check_admissible(config, &centers) {
            return DescentTrace {
                steps,
                final_vector: cur,
                status: DescentStatus::Inadmissible { rule },
            };
        }
        if steps.len() >= MAX_DESCENT_STEPS {
            return DescentTrace {
                steps,
                final_vector: cur,
                status: DescentStatus::Stuck {
                    detail: "step budget exhausted".into(),
                },
            };
        }
        let g = choose_generator(config, &centers);
        match apply(config, &g, &cur) {
            Ok(next) if next.mu() < cur.mu() => {
                cur = next.clone();
                steps.push((g, next));
            }
            Ok(_) => {
                return DescentTrace {
                    steps,
                    final_vector: cur,
                    status: DescentStatus::Stuck {
                        detail: format!("untwisting `{g}` did not decrease the degree"),
                    },
                };
            }
            Err(Error::UnknownMultiplicity(coord)) => {
                return DescentTrace {
                    steps,
                    final_vector: cur,
                    status: DescentStatus::Stuck {
                        detail: format!("unknown multiplicity at {coord}"),
                    },
                };
            }
            Err(e) => {
                return DescentTrace {
                    steps,
                    final_vector: cur,
                    status: DescentStatus::Stuck {
                        detail: e.to_string(),
                    },
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degree::apply_word;
    use crate::incidence::config;
    use crate::rat::rat;
    use std::collections::BTreeMap;

    fn two_node_line() -> QuarticIncidence {
        config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1", "P2"], false)],
        )
    }

    fn vector(mu: i64, points: &[(&str, i64)], lines: &[(&str, i64)]) -> DegreeVector {
        DegreeVector::new(
            rat(mu),
            points.iter().map(|&(id, v)| (id.into(), rat(v))).collect(),
            lines.iter().map(|&(id, v)| (id.into(), rat(v))).collect(),
        )
        .unwrap()
    }

    #[test]
    fn detects_pair_example() {
        let c = two_node_line();
        let v = vector(13, &[("P1", 14), ("P2", 14)], &[("L1", 8)]);
        let r = detect_centers(&c, &v);
        assert_eq!(r.points, vec![PointId::from("P1"), PointId::from("P2")]);
        assert!(r.lines.is_empty());
    }

    #[test]
    fn identity_vector_has_no_centers() {
        let c = two_node_line();
        let r = detect_centers(&c, &DegreeVector::identity(&c));
        assert!(r.is_empty());
        assert!(r.indeterminate_points.is_empty());
    }

    #[test]
    fn line_center_detected() {
        let c = config(&[("P", false)], &[("L", &["P"], false)]);
        let v = vector(11, &[("P", 6)], &[("L", 12)]);
        let r = detect_centers(&c, &v);
        assert!(r.points.is_empty());
        assert_eq!(r.lines, vec![LineId::from("L")]);
    }

    #[test]
    fn unknown_coordinates_are_indeterminate_not_centers() {
        let c = two_node_line();
        let v = DegreeVector::new(rat(5), BTreeMap::new(), BTreeMap::new()).unwrap();
        let r = detect_centers(&c, &v);
        assert!(r.is_empty());
        assert_eq!(r.indeterminate_points.len(), 2);
        assert_eq!(r.indeterminate_lines.len(), 1);
    }

    #[test]
    fn strictly_canonical_reported_separately() {
        let c = two_node_line();
        let v = vector(5, &[("P1", 5), ("P2", 0)], &[("L1", 0)]);
        let r = detect_centers(&c, &v);
        assert!(r.is_empty());
        assert_eq!(r.strictly_canonical_points, vec![PointId::from("P1")]);
        let t = untwist(&c, &v);
        assert!(t.is_complete());
        assert!(t.steps.is_empty());
    }

    #[test]
    fn admissibility_rules() {
        let c = config(
            &[("P1", false), ("P2", false), ("P3", false)],
            &[("L1", &["P1", "P2"], false), ("L2", &["P3"], false)],
        );
        let ok = CenterReport {
            points: vec!["P1".into(), "P2".into()],
            ..CenterReport::default()
        };
        assert!(check_admissible(&c, &ok).is_ok());

        let three = CenterReport {
            points: vec!["P1".into(), "P2".into(), "P3".into()],
            ..CenterReport::default()
        };
        assert!(matches!(
            check_admissible(&c, &three),
            Admissibility::Violation { rule } if rule.contains("three points")
        ));

        let two_lines = CenterReport {
            lines: vec!["L1".into(), "L2".into()],
            ..CenterReport::default()
        };
        assert!(matches!(
            check_admissible(&c, &two_lines),
            Admissibility::Violation { rule } if rule.contains("two lines")
        ));

        // Two points with no joining marked line.
        let disjoint = CenterReport {
            points: vec!["P1".into(), "P3".into()],
            ..CenterReport::default()
        };
        assert!(matches!(
            check_admissible(&c, &disjoint),
            Admissibility::Violation { rule } if rule.contains("not joined")
        ));

        // Point plus a line not through it.
        let off = CenterReport {
            points: vec!["P1".into()],
            lines: vec!["L2".into()],
            ..CenterReport::default()
        };
        assert!(matches!(
            check_admissible(&c, &off),
            Admissibility::Violation { rule } if rule.contains("does not pass through")
        ));

        // Point plus the 2-node line through it is fine.
        let pl = CenterReport {
            points: vec!["P1".into()],
            lines: vec!["L1".into()],
            ..CenterReport::default()
        };
        assert!(check_admissible(&c, &pl).is_ok());
    }

    #[test]
    fn eckardt_exclusions() {
        let c = config(
            &[("P1", true), ("P2", false), ("P3", false), ("P4", false)],
            &[
                ("L1", &["P1", "P2", "P3"], false),
                ("L2", &["P2", "P4"], true),
            ],
        );
        let p = CenterReport {
            points: vec!["P1".into()],
            ..CenterReport::default()
        };
        assert!(!check_admissible(&c, &p).is_ok());
        let l = CenterReport {
            lines: vec!["L2".into()],
            ..CenterReport::default()
        };
        assert!(!check_admissible(&c, &l).is_ok());
        // Two points collinear with an eckardt third point.
        let pair = CenterReport {
            points: vec!["P2".into(), "P3".into()],
            ..CenterReport::default()
        };
        assert!(matches!(
            check_admissible(&c, &pair),
            Admissibility::Violation { rule } if rule.contains("eckardt point")
        ));
    }

    #[test]
    fn three_node_center_line_is_inadmissible() {
        let c = config(
            &[("P1", false), ("P2", false), ("P3", false)],
            &[("L1", &["P1", "P2", "P3"], false)],
        );
        let r = CenterReport {
            lines: vec!["L1".into()],
            ..CenterReport::default()
        };
        assert!(matches!(
            check_admissible(&c, &r),
            Admissibility::Violation { rule } if rule.contains("three nodes")
        ));
    }

    #[test]
    fn untwist_step_recovers_pair_generator() {
        let c = two_node_line();
        let v = vector(13, &[("P1", 14), ("P2", 14)], &[("L1", 8)]);
        let (g, next) = untwist_step(&c, &v).unwrap();
        assert_eq!(g, Generator::pair("P1", "P2", "L1"));
        assert_eq!(next, DegreeVector::identity(&c));
    }

    #[test]
    fn untwist_step_recovers_point_and_line_generators() {
        let c = two_node_line();
        let v = vector(3, &[("P1", 4), ("P2", 1)], &[("L1", 1)]);
        let (g, next) = untwist_step(&c, &v).unwrap();
        assert_eq!(g, Generator::point("P1"));
        assert_eq!(next, DegreeVector::identity(&c));

        let c1 = config(&[("P", false)], &[("L", &["P"], false)]);
        let v = vector(11, &[("P", 6)], &[("L", 12)]);
        let (g, next) = untwist_step(&c1, &v).unwrap();
        assert_eq!(g, Generator::line("L"));
        assert_eq!(next, DegreeVector::identity(&c1));
    }

    #[test]
    fn descent_round_trips_a_word() {
        let c = config(
            &[("P1", false), ("P2", false)],
            &[("L1", &["P1", "P2"], false), ("L2", &["P1"], false)],
        );
        let word = vec![Generator::line("L2"), Generator::point("P1")];
        let v = apply_word(&c, &word, &DegreeVector::identity(&c)).unwrap();
        let trace = untwist(&c, &v);
        assert!(trace.is_complete(), "{:?}", trace.status);
        assert_eq!(trace.steps.len(), 2);
        assert!(trace.ends_at_identity());
        let mut recovered = trace.generators();
        recovered.reverse();
        assert_eq!(recovered, word);
    }

    #[test]
    fn identity_vector_descends_trivially() {
        let c = two_node_line();
        let trace = untwist(&c, &DegreeVector::identity(&c));
        assert!(trace.is_complete());
        assert!(trace.steps.is_empty());
    }

    #[test]
    fn inadmissible_three_point_vector_reports_rule() {
        let c = config(
            &[("P1", false), ("P2", false), ("P3", false)],
            &[
                ("L12", &["P1", "P2"], false),
                ("L13", &["P1", "P3"], false),
                ("L23", &["P2", "P3"], false),
            ],
        );
        let v = vector(2, &[("P1", 3), ("P2", 3), ("P3", 3)], &[]);
        let trace = untwist(&c, &v);
        assert!(matches!(
            &trace.status,
            DescentStatus::Inadmissible { rule } if rule.contains("three points")
        ));
    }

    #[test]
    fn unknown_multiplicity_blocks_with_stuck_status() {
        let c = two_node_line();
        let v = DegreeVector::new(
            rat(3),
            [(PointId::from("P1"), rat(4))].into(),
            BTreeMap::new(),
        )
        .unwrap();
        let trace = untwist(&c, &v);
        assert!(matches!(
            &trace.status,
            DescentStatus::Stuck { detail } if detail.contains("unknown multiplicity")
        ));
    }

    #[test]
    fn mu_strictly_decreases_along_traces() {
        let c = two_node_line();
        let word = vec![
            Generator::point("P1"),
            Generator::line("L1"),
            Generator::point("P2"),
            Generator::pair("P1", "P2", "L1"),
        ];
        let v = apply_word(&c, &word, &DegreeVector::identity(&c)).unwrap();
        let trace = untwist(&c, &v);
        assert!(trace.is_complete());
        let mut mu = v.mu().clone();
        for (_, step) in &trace.steps {
            assert!(step.mu() < &mu);
            mu = step.mu().clone();
        }
    }
}
