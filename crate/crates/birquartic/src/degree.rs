//! Degree vectors `(μ, ν_•)` and the exact linear action of every involution
//! generator on them.
//!
//! A birational selfmap `χ` carries a mobile linear system of degree `μ(χ)`
//! with multiplicities `ν_Z(χ)` at marked nodes and lines. Composing with a
//! generator transforms those numbers by a fixed integral matrix; the matrix
//! only covers the data attached to the generator's own lines, so each
//! [`ActionMatrix`] records which coordinates become unknown after
//! application. Everything else is carried through unchanged, which makes
//! the composite action of a word a plain matrix product over the union of
//! the tracked coordinates.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::incidence::{LineId, LineMark, PointId, QuarticIncidence};
use crate::linalg::QMatrix;
use crate::rat::{fmt_rat, parse_rat, rat, Rat};
use crate::{Error, Result};

/// A multiplicity is either an exact rational or unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplicity {
    Known(Rat),
    Unknown,
}

impl Multiplicity {
    pub fn known(&self) -> Option<&Rat> {
        match self {
            Multiplicity::Known(r) => Some(r),
            Multiplicity::Unknown => None,
        }
    }
}

/// A tracked coordinate: the degree, or a multiplicity at a point or line.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coord {
    Mu,
    Point(PointId),
    Line(LineId),
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Mu => f.write_str("mu"),
            Coord::Point(p) => write!(f, "{p}"),
            Coord::Line(l) => write!(f, "{l}"),
        }
    }
}

/// Degree `μ > 0` plus multiplicities at the configuration's marked objects.
/// Objects absent from the maps have unknown multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeVector {
    mu: Rat,
    nu_points: BTreeMap<PointId, Rat>,
    nu_lines: BTreeMap<LineId, Rat>,
}

impl DegreeVector {
    pub fn new(
        mu: Rat,
        nu_points: BTreeMap<PointId, Rat>,
        nu_lines: BTreeMap<LineId, Rat>,
    ) -> Result<Self> {
        if !mu.is_positive() {
            return Err(Error::NonPositiveDegree(fmt_rat(&mu)));
        }
        Ok(DegreeVector {
            mu,
            nu_points,
            nu_lines,
        })
    }

    /// The identity map's vector: `μ = 1`, every multiplicity known zero.
    pub fn identity(config: &QuarticIncidence) -> Self {
        DegreeVector {
            mu: Rat::one(),
            nu_points: config
                .points()
                .iter()
                .map(|p| (p.id.clone(), Rat::zero()))
                .collect(),
            nu_lines: config
                .lines()
                .iter()
                .map(|l| (l.id.clone(), Rat::zero()))
                .collect(),
        }
    }

    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    pub fn nu_point(&self, id: &PointId) -> Multiplicity {
        self.nu_points
            .get(id)
            .map_or(Multiplicity::Unknown, |r| Multiplicity::Known(r.clone()))
    }

    pub fn nu_line(&self, id: &LineId) -> Multiplicity {
        self.nu_lines
            .get(id)
            .map_or(Multiplicity::Unknown, |r| Multiplicity::Known(r.clone()))
    }

    pub fn coord(&self, c: &Coord) -> Multiplicity {
        match c {
            Coord::Mu => Multiplicity::Known(self.mu.clone()),
            Coord::Point(p) => self.nu_point(p),
            Coord::Line(l) => self.nu_line(l),
        }
    }

    pub fn known_points(&self) -> &BTreeMap<PointId, Rat> {
        &self.nu_points
    }

    pub fn known_lines(&self) -> &BTreeMap<LineId, Rat> {
        &self.nu_lines
    }

    /// Parses the wire form `{"mu":"13","nu":{"P1":"14","L1":"8"}}` against a
    /// configuration. Every `nu` key must name a marked object; values must
    /// be non-negative. Absent keys mean unknown.
    pub fn from_json(json: &str, config: &QuarticIncidence) -> Result<Self> {
        #[derive(Deserialize)]
        struct Wire {
            mu: String,
            #[serde(default)]
            nu: BTreeMap<String, String>,
        }
        let wire: Wire = serde_json::from_str(json)?;
        let mu = parse_rat(&wire.mu)?;
        let mut nu_points = BTreeMap::new();
        let mut nu_lines = BTreeMap::new();
        for (key, val) in wire.nu {
            let v = parse_rat(&val)?;
            if v.is_negative() {
                return Err(Error::Parse(format!("negative multiplicity at `{key}`")));
            }
            let pid = PointId(key.clone());
            let lid = LineId(key.clone());
            if config.point(&pid).is_some() {
                nu_points.insert(pid, v);
            } else if config.line(&lid).is_some() {
                nu_lines.insert(lid, v);
            } else {
                return Err(Error::Parse(format!(
                    "`{key}` names no marked point or line"
                )));
            }
        }
        DegreeVector::new(mu, nu_points, nu_lines)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut nu = serde_json::Map::new();
        for (k, v) in &self.nu_points {
            nu.insert(k.0.clone(), serde_json::Value::String(fmt_rat(v)));
        }
        for (k, v) in &self.nu_lines {
            nu.insert(k.0.clone(), serde_json::Value::String(fmt_rat(v)));
        }
        serde_json::json!({ "mu": fmt_rat(&self.mu), "nu": nu })
    }
}

/// A labelled automorphism, recorded by its permutation of marked points and
/// lines. Ids absent from the maps are fixed. Two `Aut` letters with the
/// same permutation are treated as the same generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutPerm {
    pub label: String,
    #[serde(default)]
    pub points: BTreeMap<PointId, PointId>,
    #[serde(default)]
    pub lines: BTreeMap<LineId, LineId>,
}

impl AutPerm {
    pub fn identity(label: &str) -> Self {
        AutPerm {
            label: label.to_owned(),
            points: BTreeMap::new(),
            lines: BTreeMap::new(),
        }
    }

    pub fn apply_point(&self, p: &PointId) -> PointId {
        self.points.get(p).cloned().unwrap_or_else(|| p.clone())
    }

    pub fn apply_line(&self, l: &LineId) -> LineId {
        self.lines.get(l).cloned().unwrap_or_else(|| l.clone())
    }

    pub fn inverse(&self) -> AutPerm {
        AutPerm {
            label: format!("{}^-1", self.label),
            points: self
                .points
                .iter()
                .map(|(k, v)| (v.clone(), k.clone()))
                .collect(),
            lines: self
                .lines
                .iter()
                .map(|(k, v)| (v.clone(), k.clone()))
                .collect(),
        }
    }

    /// `self` composed-after `other` as permutations.
    pub fn compose_after(&self, other: &AutPerm) -> AutPerm {
        let mut point_keys: BTreeSet<PointId> = self.points.keys().cloned().collect();
        point_keys.extend(other.points.keys().cloned());
        let mut line_keys: BTreeSet<LineId> = self.lines.keys().cloned().collect();
        line_keys.extend(other.lines.keys().cloned());
        AutPerm {
            label: format!("{}*{}", self.label, other.label),
            points: point_keys
                .into_iter()
                .map(|k| {
                    let img = self.apply_point(&other.apply_point(&k));
                    (k, img)
                })
                .filter(|(k, v)| k != v)
                .collect(),
            lines: line_keys
                .into_iter()
                .map(|k| {
                    let img = self.apply_line(&other.apply_line(&k));
                    (k, img)
                })
                .filter(|(k, v)| k != v)
                .collect(),
        }
    }

    /// Permutation equality, ignoring labels.
    pub fn same_action(&self, other: &AutPerm) -> bool {
        let norm = |m: &BTreeMap<PointId, PointId>| -> BTreeMap<PointId, PointId> {
            m.iter()
                .filter(|(k, v)| k != v)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect()
        };
        let norml = |m: &BTreeMap<LineId, LineId>| -> BTreeMap<LineId, LineId> {
            m.iter()
                .filter(|(k, v)| k != v)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect()
        };
        norm(&self.points) == norm(&other.points) && norml(&self.lines) == norml(&other.lines)
    }

    pub fn is_identity_action(&self) -> bool {
        self.points.iter().all(|(k, v)| k == v) && self.lines.iter().all(|(k, v)| k == v)
    }
}

/// A generator of the birational selfmap group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `τ_P`, the double-cover Galois involution of the projection from a
    /// non-Eckardt node `P`.
    Point(PointId),
    /// `τ_L`, the fiberwise reflection on the elliptic fibration from a
    /// non-Eckardt line with one or two nodes.
    Line(LineId),
    /// `τ_{P1P2}`, the fiberwise reflection in the section cut by the line
    /// itself; used for conjugate node pairs.
    PairPoint {
        p1: PointId,
        p2: PointId,
        line: LineId,
    },
    /// A biregular automorphism, acting by permutation of the marked data.
    Aut(AutPerm),
}

impl Generator {
    pub fn point(id: &str) -> Self {
        Generator::Point(id.into())
    }

    pub fn line(id: &str) -> Self {
        Generator::Line(id.into())
    }

    pub fn pair(p1: &str, p2: &str, line: &str) -> Self {
        Generator::PairPoint {
            p1: p1.into(),
            p2: p2.into(),
            line: line.into(),
        }
    }

    pub fn is_involution_letter(&self) -> bool {
        !matches!(self, Generator::Aut(_))
    }

    /// Checks the generator against a configuration.
    pub fn validate(&self, config: &QuarticIncidence) -> Result<()> {
        match self {
            Generator::Point(p) => {
                let pt = config
                    .point(p)
                    .ok_or_else(|| Error::InvalidGenerator(format!("unknown point `{p}`")))?;
                if pt.eckardt {
                    return Err(Error::InvalidGenerator(format!(
                        "`{p}` is eckardt-flagged: its involution is biregular, not a generator"
                    )));
                }
                Ok(())
            }
            Generator::Line(l) => {
                let line = config
                    .line(l)
                    .ok_or_else(|| Error::InvalidGenerator(format!("unknown line `{l}`")))?;
                Self::check_line_generator(config, line)
            }
            Generator::PairPoint { p1, p2, line } => {
                if p1 == p2 {
                    return Err(Error::InvalidGenerator("pair with repeated point".into()));
                }
                let l = config
                    .line(line)
                    .ok_or_else(|| Error::InvalidGenerator(format!("unknown line `{line}`")))?;
                Self::check_line_generator(config, l)?;
                let set: BTreeSet<&PointId> = l.points.iter().collect();
                let want: BTreeSet<&PointId> = [p1, p2].into_iter().collect();
                if l.points.len() != 2 || set != want {
                    return Err(Error::InvalidGenerator(format!(
                        "line `{line}` does not carry exactly the points `{p1}`, `{p2}`"
                    )));
                }
                Ok(())
            }
            Generator::Aut(perm) => {
                let point_ids: BTreeSet<&PointId> = config.points().iter().map(|p| &p.id).collect();
                let images: BTreeSet<PointId> =
                    point_ids.iter().map(|p| perm.apply_point(p)).collect();
                if images.len() != point_ids.len() || !images.iter().all(|i| point_ids.contains(i))
                {
                    return Err(Error::InvalidGenerator(format!(
                        "`{}` does not permute the marked points",
                        perm.label
                    )));
                }
                let line_ids: BTreeSet<&LineId> = config.lines().iter().map(|l| &l.id).collect();
                let limages: BTreeSet<LineId> =
                    line_ids.iter().map(|l| perm.apply_line(l)).collect();
                if limages.len() != line_ids.len() || !limages.iter().all(|i| line_ids.contains(i))
                {
                    return Err(Error::InvalidGenerator(format!(
                        "`{}` does not permute the marked lines",
                        perm.label
                    )));
                }
                for p in config.points() {
                    let img = config.point(&perm.apply_point(&p.id)).unwrap();
                    if img.eckardt != p.eckardt {
                        return Err(Error::InvalidGenerator(format!(
                            "`{}` does not preserve eckardt flags (`{}`)",
                            perm.label, p.id
                        )));
                    }
                }
                for l in config.lines() {
                    let img = config.line(&perm.apply_line(&l.id)).unwrap();
                    if img.eckardt != l.eckardt {
                        return Err(Error::InvalidGenerator(format!(
                            "`{}` does not preserve eckardt flags (`{}`)",
                            perm.label, l.id
                        )));
                    }
                    let mapped: BTreeSet<PointId> =
                        l.points.iter().map(|p| perm.apply_point(p)).collect();
                    let actual: BTreeSet<PointId> = img.points.iter().cloned().collect();
                    if mapped != actual {
                        return Err(Error::InvalidGenerator(format!(
                            "`{}` does not preserve incidence on line `{}`",
                            perm.label, l.id
                        )));
                    }
                }
                Ok(())
            }
        }
    }

    fn check_line_generator(config: &QuarticIncidence, line: &LineMark) -> Result<()> {
        if line.eckardt {
            return Err(Error::InvalidGenerator(format!(
                "`{}` is eckardt-flagged: its involution is biregular, not a generator",
                line.id
            )));
        }
        if line.points.is_empty() || line.points.len() > 2 {
            return Err(Error::InvalidGenerator(format!(
                "line `{}` carries {} nodes; a line generator needs 1 or 2",
                line.id,
                line.points.len()
            )));
        }
        for p in &line.points {
            let pt = config
                .point(p)
                .ok_or_else(|| Error::InvalidGenerator(format!("unknown point `{p}`")))?;
            if pt.eckardt {
                return Err(Error::InvalidGenerator(format!(
                    "line `{}` carries eckardt-flagged node `{p}`",
                    line.id
                )));
            }
        }
        Ok(())
    }

    /// Wire form used in word JSON documents.
    pub fn to_wire(&self) -> GeneratorWire {
        match self {
            Generator::Point(p) => GeneratorWire::Point { id: p.0.clone() },
            Generator::Line(l) => GeneratorWire::Line { id: l.0.clone() },
            Generator::PairPoint { p1, p2, line } => GeneratorWire::Pair {
                ids: [p1.0.clone(), p2.0.clone()],
                line: line.0.clone(),
            },
            Generator::Aut(a) => GeneratorWire::Aut {
                label: a.label.clone(),
                points: a
                    .points
                    .iter()
                    .map(|(k, v)| (k.0.clone(), v.0.clone()))
                    .collect(),
                lines: a
                    .lines
                    .iter()
                    .map(|(k, v)| (k.0.clone(), v.0.clone()))
                    .collect(),
            },
        }
    }

    pub fn from_wire(wire: GeneratorWire) -> Generator {
        match wire {
            GeneratorWire::Point { id } => Generator::Point(PointId(id)),
            GeneratorWire::Line { id } => Generator::Line(LineId(id)),
            GeneratorWire::Pair { ids: [a, b], line } => Generator::PairPoint {
                p1: PointId(a),
                p2: PointId(b),
                line: LineId(line),
            },
            GeneratorWire::Aut {
                label,
                points,
                lines,
            } => Generator::Aut(AutPerm {
                label,
                points: points
                    .into_iter()
                    .map(|(k, v)| (PointId(k), PointId(v)))
                    .collect(),
                lines: lines
                    .into_iter()
                    .map(|(k, v)| (LineId(k), LineId(v)))
                    .collect(),
            }),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Point(p) => write!(f, "tau[{p}]"),
            Generator::Line(l) => write!(f, "tau[{l}]"),
            Generator::PairPoint { p1, p2, .. } => write!(f, "tau[{p1},{p2}]"),
            Generator::Aut(a) => write!(f, "aut[{}]", a.label),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GeneratorWire {
    Point {
        id: String,
    },
    Line {
        id: String,
    },
    Pair {
        ids: [String; 2],
        line: String,
    },
    Aut {
        label: String,
        #[serde(default)]
        points: BTreeMap<String, String>,
        #[serde(default)]
        lines: BTreeMap<String, String>,
    },
}

/// The linear action of a generator on its tracked coordinates, together
/// with the coordinates it renders unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMatrix {
    basis: Vec<Coord>,
    entries: QMatrix,
    untouched: BTreeSet<Coord>,
}

impl ActionMatrix {
    pub fn basis(&self) -> &[Coord] {
        &self.basis
    }

    pub fn entries(&self) -> &QMatrix {
        &self.entries
    }

    pub fn untouched(&self) -> &BTreeSet<Coord> {
        &self.untouched
    }

    pub fn is_identity(&self) -> bool {
        self.entries.is_identity()
    }

    /// Extends the matrix to a larger basis, acting as the identity on the
    /// added coordinates.
    pub fn extend_to(&self, basis: &[Coord]) -> QMatrix {
        let index: BTreeMap<&Coord, usize> =
            basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut m = QMatrix::identity(basis.len());
        for (ri, rc) in self.basis.iter().enumerate() {
            let r = index[rc];
            for j in 0..basis.len() {
                m[(r, j)] = Rat::zero();
            }
            for (ci, cc) in self.basis.iter().enumerate() {
                m[(r, index[cc])] = self.entries[(ri, ci)].clone();
            }
        }
        m
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "basis": self.basis.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "rows": (0..self.entries.rows())
                .map(|i| self.entries.row(i).iter().map(fmt_rat).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "untouched": self.untouched.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// A line through `P` is usable for `τ_P`'s action formulas only when
/// neither the line nor any node on it is eckardt-flagged; otherwise the
/// fibration degenerates and the multiplicities on that line are not
/// expressible.
fn line_usable_for_point_action(config: &QuarticIncidence, line: &LineMark) -> bool {
    !line.eckardt
        && line
            .points
            .iter()
            .all(|p| config.point(p).map(|pt| !pt.eckardt).unwrap_or(false))
}

/// Builds the action matrix of a generator over its tracked basis.
pub fn action_matrix(config: &QuarticIncidence, g: &Generator) -> Result<ActionMatrix> {
    g.validate(config)?;
    let m = match g {
        Generator::Line(lid) => {
            let line = config.line(lid).unwrap();
            match line.points.as_slice() {
                [p] => {
                    let basis = vec![Coord::Mu, Coord::Point(p.clone()), Coord::Line(lid.clone())];
                    // μ' = 11μ - 10ν_L, ν_P' = 6μ - 6ν_L + ν_P, ν_L' = 12μ - 11ν_L
                    let entries =
                        QMatrix::from_int_rows(&[&[11, 0, -10], &[6, 1, -6], &[12, 0, -11]]);
                    ActionMatrix {
                        basis,
                        entries,
                        untouched: BTreeSet::new(),
                    }
                }
                [p1, p2] => {
                    let basis = vec![
                        Coord::Mu,
                        Coord::Point(p1.clone()),
                        Coord::Point(p2.clone()),
                        Coord::Line(lid.clone()),
                    ];
                    // μ' = 5μ - 4ν_L, ν_{P1}' = 3μ - 3ν_L + ν_{P2},
                    // ν_{P2}' = 3μ - 3ν_L + ν_{P1}, ν_L' = 6μ - 5ν_L
                    let entries = QMatrix::from_int_rows(&[
                        &[5, 0, 0, -4],
                        &[3, 0, 1, -3],
                        &[3, 1, 0, -3],
                        &[6, 0, 0, -5],
                    ]);
                    ActionMatrix {
                        basis,
                        entries,
                        untouched: BTreeSet::new(),
                    }
                }
                _ => unreachable!("validated line generator has 1 or 2 points"),
            }
        }
        Generator::PairPoint { p1, p2, line } => {
            let basis = vec![
                Coord::Mu,
                Coord::Point(p1.clone()),
                Coord::Point(p2.clone()),
                Coord::Line(line.clone()),
            ];
            // μ' = 13μ - 6ν1 - 6ν2, ν1' = 14μ - 7ν1 - 6ν2,
            // ν2' = 14μ - 6ν1 - 7ν2, ν_L' = 8μ - 4ν1 - 4ν2 + ν_L
            let entries = QMatrix::from_int_rows(&[
                &[13, -6, -6, 0],
                &[14, -7, -6, 0],
                &[14, -6, -7, 0],
                &[8, -4, -4, 1],
            ]);
            ActionMatrix {
                basis,
                entries,
                untouched: BTreeSet::new(),
            }
        }
        Generator::Point(p) => {
            let mut basis = vec![Coord::Mu, Coord::Point(p.clone())];
            let mut untouched = BTreeSet::new();
            let mut usable = Vec::new();
            for line in config.lines_through(p) {
                if line_usable_for_point_action(config, line) {
                    for q in &line.points {
                        if q != p {
                            basis.push(Coord::Point(q.clone()));
                        }
                    }
                    basis.push(Coord::Line(line.id.clone()));
                    usable.push(line);
                } else {
                    for q in &line.points {
                        if q != p {
                            untouched.insert(Coord::Point(q.clone()));
                        }
                    }
                    untouched.insert(Coord::Line(line.id.clone()));
                }
            }
            let index: BTreeMap<&Coord, usize> =
                basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let n = basis.len();
            let mut entries = QMatrix::zero(n, n);
            // Shared rows: μ' = 3μ - 2ν_P, ν_P' = 4μ - 3ν_P.
            entries[(0, 0)] = rat(3);
            entries[(0, 1)] = rat(-2);
            entries[(1, 0)] = rat(4);
            entries[(1, 1)] = rat(-3);
            for line in usable {
                let lcol = index[&Coord::Line(line.id.clone())];
                let others: Vec<usize> = line
                    .points
                    .iter()
                    .filter(|q| *q != p)
                    .map(|q| index[&Coord::Point(q.clone())])
                    .collect();
                match others.as_slice() {
                    [] => {
                        // ν_L' = μ - ν_P + ν_L
                        entries[(lcol, 0)] = rat(1);
                        entries[(lcol, 1)] = rat(-1);
                        entries[(lcol, lcol)] = rat(1);
                    }
                    [q] => {
                        // ν_{P1}' = μ - ν_P + ν_L, ν_L' = μ - ν_P + ν_{P1}
                        entries[(*q, 0)] = rat(1);
                        entries[(*q, 1)] = rat(-1);
                        entries[(*q, lcol)] = rat(1);
                        entries[(lcol, 0)] = rat(1);
                        entries[(lcol, 1)] = rat(-1);
                        entries[(lcol, *q)] = rat(1);
                    }
                    [q, r] => {
                        // ν_{P1}' = μ - ν_P + ν_{P2}, ν_{P2}' = μ - ν_P + ν_{P1},
                        // ν_L' = 2μ - 2ν_P + ν_L
                        entries[(*q, 0)] = rat(1);
                        entries[(*q, 1)] = rat(-1);
                        entries[(*q, *r)] = rat(1);
                        entries[(*r, 0)] = rat(1);
                        entries[(*r, 1)] = rat(-1);
                        entries[(*r, *q)] = rat(1);
                        entries[(lcol, 0)] = rat(2);
                        entries[(lcol, 1)] = rat(-2);
                        entries[(lcol, lcol)] = rat(1);
                    }
                    _ => unreachable!("validated configuration has at most 3 nodes per line"),
                }
            }
            ActionMatrix {
                basis,
                entries,
                untouched,
            }
        }
        Generator::Aut(perm) => {
            let mut basis = vec![Coord::Mu];
            basis.extend(config.points().iter().map(|p| Coord::Point(p.id.clone())));
            basis.extend(config.lines().iter().map(|l| Coord::Line(l.id.clone())));
            let index: BTreeMap<&Coord, usize> =
                basis.iter().enumerate().map(|(i, c)| (c, i)).collect();
            let n = basis.len();
            let mut entries = QMatrix::zero(n, n);
            entries[(0, 0)] = rat(1);
            // ν_Z(χ∘w) = ν_{w(Z)}(χ): the row of Z reads column w(Z).
            for p in config.points() {
                let r = index[&Coord::Point(p.id.clone())];
                let c = index[&Coord::Point(perm.apply_point(&p.id))];
                entries[(r, c)] = rat(1);
            }
            for l in config.lines() {
                let r = index[&Coord::Line(l.id.clone())];
                let c = index[&Coord::Line(perm.apply_line(&l.id))];
                entries[(r, c)] = rat(1);
            }
            ActionMatrix {
                basis,
                entries,
                untouched: BTreeSet::new(),
            }
        }
    };
    if g.is_involution_letter() {
        debug_assert!(
            m.entries.mul(&m.entries).is_identity(),
            "generator matrix not involutive"
        );
    }
    Ok(m)
}

/// Applies a generator to a degree vector. Tracked coordinates are set to
/// `M·v`, the matrix's untouched coordinates become unknown, everything
/// else keeps its prior multiplicity.
pub fn apply(config: &QuarticIncidence, g: &Generator, v: &DegreeVector) -> Result<DegreeVector> {
    let m = action_matrix(config, g)?;
    apply_matrix(&m, v)
}

/// Applies a prebuilt action matrix.
pub fn apply_matrix(m: &ActionMatrix, v: &DegreeVector) -> Result<DegreeVector> {
    let n = m.basis.len();
    // Columns actually read must be known.
    let mut input = Vec::with_capacity(n);
    for (j, coord) in m.basis.iter().enumerate() {
        let read = (0..n).any(|i| !m.entries[(i, j)].is_zero());
        match v.coord(coord) {
            Multiplicity::Known(val) => input.push(val),
            Multiplicity::Unknown if !read => input.push(Rat::zero()),
            Multiplicity::Unknown => {
                return Err(Error::UnknownMultiplicity(coord.to_string()));
            }
        }
    }
    let output = m.entries.mul_vec(&input);
    let mut nu_points = v.nu_points.clone();
    let mut nu_lines = v.nu_lines.clone();
    let mut mu = v.mu.clone();
    for (coord, val) in m.basis.iter().zip(output) {
        match coord {
            Coord::Mu => mu = val,
            Coord::Point(p) => {
                nu_points.insert(p.clone(), val);
            }
            Coord::Line(l) => {
                nu_lines.insert(l.clone(), val);
            }
        }
    }
    for coord in &m.untouched {
        match coord {
            Coord::Mu => unreachable!("mu is never untouched"),
            Coord::Point(p) => {
                nu_points.remove(p);
            }
            Coord::Line(l) => {
                nu_lines.remove(l);
            }
        }
    }
    DegreeVector::new(mu, nu_points, nu_lines)
}

/// Applies a word letter by letter, left to right.
pub fn apply_word(
    config: &QuarticIncidence,
    word: &[Generator],
    v: &DegreeVector,
) -> Result<DegreeVector> {
    let mut cur = v.clone();
    for g in word {
        cur = apply(config, g, &cur)?;
    }
    Ok(cur)
}

/// Composite action of a word over the union of the tracked bases.
///
/// The product is taken in application order: applying the composite to a
/// vector agrees with applying the word letter by letter. A coordinate read
/// by a later factor after an earlier factor rendered it unknown is an
/// error; coordinates merely carried through stay unknown.
pub fn compose(config: &QuarticIncidence, word: &[Generator]) -> Result<ActionMatrix> {
    let factors: Vec<ActionMatrix> = word
        .iter()
        .map(|g| action_matrix(config, g))
        .collect::<Result<_>>()?;
    let mut coords: BTreeSet<Coord> = BTreeSet::new();
    coords.insert(Coord::Mu);
    for f in &factors {
        coords.extend(f.basis.iter().cloned());
    }
    let basis: Vec<Coord> = coords.into_iter().collect();
    let mut total = QMatrix::identity(basis.len());
    let mut unknown: BTreeSet<Coord> = BTreeSet::new();
    for f in &factors {
        let n = f.basis.len();
        for j in 0..n {
            let read = (0..n).any(|i| !f.entries[(i, j)].is_zero());
            if read && unknown.contains(&f.basis[j]) {
                return Err(Error::UnknownMultiplicity(f.basis[j].to_string()));
            }
        }
        let ext = f.extend_to(&basis);
        total = ext.mul(&total);
        for c in &f.basis {
            unknown.remove(c);
        }
        unknown.extend(f.untouched.iter().cloned());
    }
    Ok(ActionMatrix {
        basis,
        entries: total,
        untouched: unknown,
    })
}
