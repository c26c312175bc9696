//! Combinatorial incidence data of a factorial nodal quartic threefold:
//! singular points (nodes), marked lines with the nodes they carry, and
//! Eckardt flags. Every other module consumes this structure.
//!
//! The data is purely combinatorial. Whether a configuration is realized by
//! an actual quartic equation is a separate, optional question answered by
//! [`crate::quartic`].

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Identifier of a singular point.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointId(pub String);

/// Identifier of a marked line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineId(pub String);

impl fmt::Display for PointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for PointId {
    fn from(s: &str) -> Self {
        PointId(s.to_owned())
    }
}

impl From<&str> for LineId {
    fn from(s: &str) -> Self {
        LineId(s.to_owned())
    }
}

/// A node of the quartic, with its Eckardt flag.
///
/// Eckardt-ness (being the vertex of a two-dimensional cone of lines) is a
/// property of the equation, not of the incidence graph, so the flag is
/// always supplied by the caller or imported from `quartic` output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularPoint {
    pub id: PointId,
    #[serde(default)]
    pub eckardt: bool,
}

/// A marked line together with the nodes it carries (one to three of them).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineMark {
    pub id: LineId,
    pub points: Vec<PointId>,
    #[serde(default)]
    pub eckardt: bool,
}

/// The full incidence configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawIncidence", into = "RawIncidence")]
pub struct QuarticIncidence {
    points: Vec<SingularPoint>,
    lines: Vec<LineMark>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawIncidence {
    points: Vec<SingularPoint>,
    lines: Vec<LineMark>,
}

impl TryFrom<RawIncidence> for QuarticIncidence {
    type Error = Error;
    fn try_from(raw: RawIncidence) -> Result<Self> {
        QuarticIncidence::new(raw.points, raw.lines)
    }
}

impl From<QuarticIncidence> for RawIncidence {
    fn from(c: QuarticIncidence) -> Self {
        RawIncidence {
            points: c.points,
            lines: c.lines,
        }
    }
}

/// A single rule violation found by [`QuarticIncidence::validate`].
/// Violations are data, not failures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Offending point or line id.
    pub id: String,
    /// The violated rule.
    pub rule: String,
}

/// A marked line with its nodes, and which line generator (if any) it carries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cluster {
    pub line: LineId,
    pub points: Vec<PointId>,
    /// A `τ_L` generator exists iff the line has 1 or 2 nodes and is not an
    /// Eckardt line. On a 3-node line the would-be involution coincides with
    /// `τ_{P3}` and is no generator of its own.
    pub tau_line: bool,
    /// Eckardt lines carry only regular involutions.
    pub regular_only: bool,
}

impl QuarticIncidence {
    /// Builds a configuration, rejecting duplicate ids (a parse-level error;
    /// all other rule violations are reported by [`validate`](Self::validate)).
    pub fn new(points: Vec<SingularPoint>, lines: Vec<LineMark>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for p in &points {
            if p.id.0.is_empty() {
                return Err(Error::Parse("empty point id".into()));
            }
            if !seen.insert(&p.id.0) {
                return Err(Error::Parse(format!("duplicate point id `{}`", p.id)));
            }
        }
        let mut seen = BTreeSet::new();
        for l in &lines {
            if l.id.0.is_empty() {
                return Err(Error::Parse("empty line id".into()));
            }
            if !seen.insert(&l.id.0) {
                return Err(Error::Parse(format!("duplicate line id `{}`", l.id)));
            }
        }
        Ok(QuarticIncidence { points, lines })
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn points(&self) -> &[SingularPoint] {
        &self.points
    }

    pub fn lines(&self) -> &[LineMark] {
        &self.lines
    }

    pub fn point(&self, id: &PointId) -> Option<&SingularPoint> {
        self.points.iter().find(|p| &p.id == id)
    }

    pub fn line(&self, id: &LineId) -> Option<&LineMark> {
        self.lines.iter().find(|l| &l.id == id)
    }

    /// Marked lines through a given point, in id order.
    pub fn lines_through(&self, id: &PointId) -> Vec<&LineMark> {
        let mut out: Vec<&LineMark> = self
            .lines
            .iter()
            .filter(|l| l.points.contains(id))
            .collect();
        out.sort_by(|a, b| a.id.cmp(&b.id));
        out
    }

    /// Checks every incidence rule and reports all violations. Pure and
    /// idempotent; an empty report means the configuration is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let ids: BTreeSet<&PointId> = self.points.iter().map(|p| &p.id).collect();
        let eckardt: BTreeSet<&PointId> = self
            .points
            .iter()
            .filter(|p| p.eckardt)
            .map(|p| &p.id)
            .collect();

        for line in &self.lines {
            let n = line.points.len();
            if n == 0 {
                out.push(Violation {
                    id: line.id.0.clone(),
                    rule: "line with 0 points (a marked line carries at least one node)".into(),
                });
            }
            if n > 3 {
                out.push(Violation {
                    id: line.id.0.clone(),
                    rule: format!("line with {n} points (at most three collinear nodes)"),
                });
            }
            let mut seen = BTreeSet::new();
            for p in &line.points {
                if !seen.insert(p) {
                    out.push(Violation {
                        id: line.id.0.clone(),
                        rule: format!("repeated point `{p}` on line"),
                    });
                }
                if !ids.contains(p) {
                    out.push(Violation {
                        id: line.id.0.clone(),
                        rule: format!("unknown point `{p}` on line"),
                    });
                }
            }
            // A line through an Eckardt node carries one or three nodes.
            if (n == 2 || n > 3) && line.points.iter().any(|p| eckardt.contains(p)) {
                let p = line.points.iter().find(|p| eckardt.contains(p)).unwrap();
                out.push(Violation {
                    id: line.id.0.clone(),
                    rule: format!(
                        "eckardt point `{p}` on {n}-point line (lines through an eckardt point carry 1 or 3 nodes)"
                    ),
                });
            }
        }

        // Two distinct lines share at most one node.
        for (i, a) in self.lines.iter().enumerate() {
            for b in &self.lines[i + 1..] {
                let pa: BTreeSet<&PointId> = a.points.iter().collect();
                let shared: BTreeSet<&PointId> =
                    b.points.iter().filter(|p| pa.contains(p)).collect();
                if shared.len() > 1 {
                    out.push(Violation {
                        id: a.id.0.clone(),
                        rule: format!(
                            "lines `{}` and `{}` share {} points (two distinct lines meet in at most one)",
                            a.id,
                            b.id,
                            shared.len()
                        ),
                    });
                }
            }
        }
        out
    }

    /// One cluster per marked line. Errors on an invalid configuration.
    pub fn clusters(&self) -> Result<Vec<Cluster>> {
        let report = self.validate();
        if let Some(v) = report.first() {
            return Err(Error::InvalidConfig(format!("{} ({})", v.rule, v.id)));
        }
        Ok(self
            .lines
            .iter()
            .map(|l| Cluster {
                line: l.id.clone(),
                points: l.points.clone(),
                tau_line: (l.points.len() == 1 || l.points.len() == 2) && !l.eckardt,
                regular_only: l.eckardt,
            })
            .collect())
    }

    /// True when no node lies on two marked lines. On such configurations
    /// the involutions' degree actions on distinct clusters commute and the
    /// composite action factors as a direct product.
    pub fn lines_pairwise_disjoint(&self) -> bool {
        let mut seen: BTreeSet<&PointId> = BTreeSet::new();
        for l in &self.lines {
            for p in &l.points {
                if !seen.insert(p) {
                    return false;
                }
            }
        }
        true
    }

    /// Map from point id to the indices of the lines through it.
    pub fn point_line_index(&self) -> BTreeMap<&PointId, Vec<usize>> {
        let mut map: BTreeMap<&PointId, Vec<usize>> = BTreeMap::new();
        for (i, l) in self.lines.iter().enumerate() {
            for p in &l.points {
                map.entry(p).or_default().push(i);
            }
        }
        map
    }
}

/// Convenience constructor used extensively by tests: points are
/// `(id, eckardt)`, lines are `(id, point ids, eckardt)`.
pub fn config(points: &[(&str, bool)], lines: &[(&str, &[&str], bool)]) -> QuarticIncidence {
    QuarticIncidence::new(
        points
            .iter()
            .map(|&(id, e)| SingularPoint {
                id: id.into(),
                eckardt: e,
            })
            .collect(),
        lines
            .iter()
            .map(|&(id, pts, e)| LineMark {
                id: id.into(),
                points: pts.iter().map(|&p| p.into()).collect(),
                eckardt: e,
            })
            .collect(),
    )
    .expect("test configuration has duplicate ids")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_legal_configuration() {
        let c = config(&[("P1", false)], &[("L1", &["P1"], false)]);
        assert!(c.validate().is_empty());
    }

    #[test]
    fn line_with_four_points_is_rejected() {
        let c = config(
            &[("P1", false), ("P2", false), ("P3", false), ("P4", false)],
            &[("L1", &["P1", "P2", "P3", "P4"], false)],
        );
        let report = c.validate();
        assert_eq!(report.len(), 1);
        assert!(report[0].rule.contains("4 points"), "{report:?}");
    }

    #[test]
    fn eckardt_point_on_two_point_line_is_rejected() {
        let c = config(
            &[("P1", true), ("P2", false)],
            &[("L1", &["P1", "P2"], false)],
        );
        let report = c.validate();
        assert_eq!(report.len(), 1);
        assert!(report[0].rule.contains("eckardt point"), "{report:?}");
    }

    #[test]
    fn eckardt_point_on_one_or_three_point_line_is_fine() {
        let c = config(
            &[("P1", true), ("P2", false), ("P3", false)],
            &[("L1", &["P1"], true), ("L2", &["P1", "P2", "P3"], true)],
        );
        assert!(c.validate().is_empty());
    }

    #[test]
    fn two_lines_sharing_two_points_are_rejected() {
        let c = config(
            &[("P1", false), ("P2", false), ("P3", false)],
            &[
                ("L1", &["P1", "P2"], false),
                ("L2", &["P2", "P1", "P3"], false),
            ],
        );
        let report = c.validate();
        assert!(
            report.iter().any(|v| v.rule.contains("share 2 points")),
            "{report:?}"
        );
    }

    #[test]
    fn unknown_point_reference_is_reported() {
        let c = config(&[("P1", false)], &[("L1", &["P1", "PX"], false)]);
        assert!(c
            .validate()
            .iter()
            .any(|v| v.rule.contains("unknown point")));
    }

    #[test]
    fn validate_is_pure() {
        let c = config(&[("P1", true)], &[("L1", &["P1", "P1"], false)]);
        assert_eq!(c.validate(), c.validate());
    }

    #[test]
    fn clusters_follow_point_count_and_flags() {
        let c = config(
            &[
                ("P1", false),
                ("P2", false),
                ("P3", false),
                ("P4", false),
                ("P5", false),
            ],
            &[
                ("L1", &["P1"], false),
                ("L2", &["P2", "P3", "P4"], false),
                ("L3", &["P1", "P5"], true),
            ],
        );
        let cl = c.clusters().unwrap();
        assert_eq!(cl.len(), 3);
        assert!(cl[0].tau_line && !cl[0].regular_only);
        assert!(!cl[1].tau_line && !cl[1].regular_only);
        assert!(!cl[2].tau_line && cl[2].regular_only);
        // Every cluster point exists in the configuration.
        for cluster in &cl {
            for p in &cluster.points {
                assert!(c.point(p).is_some());
            }
        }
    }

    #[test]
    fn clusters_reject_invalid_configuration() {
        let c = config(
            &[("P1", true), ("P2", false)],
            &[("L1", &["P1", "P2"], false)],
        );
        assert!(c.clusters().is_err());
    }

    #[test]
    fn duplicate_ids_are_parse_errors() {
        assert!(QuarticIncidence::new(
            vec![
                SingularPoint {
                    id: "P1".into(),
                    eckardt: false
                },
                SingularPoint {
                    id: "P1".into(),
                    eckardt: true
                },
            ],
            vec![],
        )
        .is_err());
        let json = r#"{"points":[{"id":"P1"},{"id":"P1"}],"lines":[]}"#;
        assert!(QuarticIncidence::from_json(json).is_err());
    }

    #[test]
    fn json_round_trip() {
        let json = r#"{"points":[{"id":"P1","eckardt":false},{"id":"P2","eckardt":true}],"lines":[{"id":"L1","points":["P1"],"eckardt":false}]}"#;
        let c = QuarticIncidence::from_json(json).unwrap();
        let back = serde_json::to_string(&c).unwrap();
        let c2 = QuarticIncidence::from_json(&back).unwrap();
        assert_eq!(c, c2);
    }
}
