//! Shape-based recognition of ADE and affine ADE diagrams, plus builders
//! for every diagram family (used by tests and by the corollary table).
//!
//! Recognition never touches the intersection form: it classifies each
//! connected component by edge count, degree sequence, and arm lengths.
//! Finite types are trees with at most one branch vertex; affine types are
//! cycles, the degree-4 star, double forks, and the three extended
//! exceptional trees.

use std::fmt;

use serde::Serialize;

use super::{CurveConfig, Vertex};
use crate::{Error, Result};

/// Label of a connected simply-laced (−2) component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum DynkinLabel {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    AffineA(usize),
    AffineD(usize),
    AffineE6,
    AffineE7,
    AffineE8,
    /// No ADE or affine ADE shape.
    None,
}

impl DynkinLabel {
    pub fn is_finite(&self) -> bool {
        matches!(
            self,
            DynkinLabel::A(_)
                | DynkinLabel::D(_)
                | DynkinLabel::E6
                | DynkinLabel::E7
                | DynkinLabel::E8
        )
    }

    pub fn is_affine(&self) -> bool {
        matches!(
            self,
            DynkinLabel::AffineA(_)
                | DynkinLabel::AffineD(_)
                | DynkinLabel::AffineE6
                | DynkinLabel::AffineE7
                | DynkinLabel::AffineE8
        )
    }

    /// Number of vertices of the diagram.
    pub fn rank(&self) -> usize {
        match self {
            DynkinLabel::A(n) | DynkinLabel::D(n) => *n,
            DynkinLabel::E6 => 6,
            DynkinLabel::E7 => 7,
            DynkinLabel::E8 => 8,
            DynkinLabel::AffineA(n) | DynkinLabel::AffineD(n) => *n + 1,
            DynkinLabel::AffineE6 => 7,
            DynkinLabel::AffineE7 => 8,
            DynkinLabel::AffineE8 => 9,
            DynkinLabel::None => 0,
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let affine = s.ends_with("^(1)");
        let core = s.strip_suffix("^(1)").unwrap_or(s);
        let bad = || Error::Parse(format!("unknown Dynkin label `{s}`"));
        let (family, num) = core.split_at(1);
        let n: usize = if num.is_empty() {
            0
        } else {
            num.parse().map_err(|_| bad())?
        };
        match (family, affine) {
            ("A", false) if n >= 1 => Ok(DynkinLabel::A(n)),
            ("D", false) if n >= 4 => Ok(DynkinLabel::D(n)),
            ("E", false) if n == 6 => Ok(DynkinLabel::E6),
            ("E", false) if n == 7 => Ok(DynkinLabel::E7),
            ("E", false) if n == 8 => Ok(DynkinLabel::E8),
            ("A", true) if n >= 2 => Ok(DynkinLabel::AffineA(n)),
            ("D", true) if n >= 4 => Ok(DynkinLabel::AffineD(n)),
            ("E", true) if n == 6 => Ok(DynkinLabel::AffineE6),
            ("E", true) if n == 7 => Ok(DynkinLabel::AffineE7),
            ("E", true) if n == 8 => Ok(DynkinLabel::AffineE8),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for DynkinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinLabel::A(n) => write!(f, "A{n}"),
            DynkinLabel::D(n) => write!(f, "D{n}"),
            DynkinLabel::E6 => write!(f, "E6"),
            DynkinLabel::E7 => write!(f, "E7"),
            DynkinLabel::E8 => write!(f, "E8"),
            DynkinLabel::AffineA(n) => write!(f, "A{n}^(1)"),
            DynkinLabel::AffineD(n) => write!(f, "D{n}^(1)"),
            DynkinLabel::AffineE6 => write!(f, "E6^(1)"),
            DynkinLabel::AffineE7 => write!(f, "E7^(1)"),
            DynkinLabel::AffineE8 => write!(f, "E8^(1)"),
            DynkinLabel::None => write!(f, "none"),
        }
    }
}

/// One classified connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentClass {
    pub vertices: Vec<String>,
    pub label: DynkinLabel,
}

/// Classifies every connected component of a simply-laced (−2)
/// configuration. Errors when self-intersections or edge multiplicities do
/// not qualify.
pub fn classify_dynkin(g: &CurveConfig) -> Result<Vec<ComponentClass>> {
    if !g.is_simply_laced() {
        return Err(Error::NotSimplyLaced(
            "classification needs all self-intersections -2 and unit edge multiplicities".into(),
        ));
    }
    let mut out = Vec::new();
    for comp in g.components() {
        let sub = g.induced(&comp);
        out.push(ComponentClass {
            vertices: sub.vertices().iter().map(|v| v.id.clone()).collect(),
            label: classify_component(&sub),
        });
    }
    Ok(out)
}

fn classify_component(g: &CurveConfig) -> DynkinLabel {
    let n = g.len();
    let m = g.edges().len();
    let mut deg = vec![0usize; n];
    let mut adj = vec![Vec::new(); n];
    for (a, b, _) in g.edges() {
        let i = g.vertices().iter().position(|v| &v.id == a).unwrap();
        let j = g.vertices().iter().position(|v| &v.id == b).unwrap();
        deg[i] += 1;
        deg[j] += 1;
        adj[i].push(j);
        adj[j].push(i);
    }
    if m == n && n >= 3 && deg.iter().all(|&d| d == 2) {
        return DynkinLabel::AffineA(n - 1);
    }
    if m != n.saturating_sub(1) {
        return DynkinLabel::None;
    }
    // It is a tree from here on.
    let maxdeg = deg.iter().copied().max().unwrap_or(0);
    if maxdeg <= 2 {
        return DynkinLabel::A(n);
    }
    if maxdeg == 4 {
        let fours = deg.iter().filter(|&&d| d == 4).count();
        if fours == 1 && n == 5 && deg.iter().filter(|&&d| d == 1).count() == 4 {
            return DynkinLabel::AffineD(4);
        }
        return DynkinLabel::None;
    }
    if maxdeg > 4 {
        return DynkinLabel::None;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] == 3).collect();
    match branch.as_slice() {
        [c] => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&s| arm_length(&adj, *c, s)).collect();
            arms.sort_unstable_by(|a, b| b.cmp(a));
            match arms.as_slice() {
                [a, 1, 1] => DynkinLabel::D(a + 3),
                [2, 2, 1] => DynkinLabel::E6,
                [2, 2, 2] => DynkinLabel::AffineE6,
                [3, 2, 1] => DynkinLabel::E7,
                [3, 3, 1] => DynkinLabel::AffineE7,
                [4, 2, 1] => DynkinLabel::E8,
                [5, 2, 1] => DynkinLabel::AffineE8,
                _ => DynkinLabel::None,
            }
        }
        [u, v] => {
            // Double fork: each branch vertex carries exactly two pendant
            // leaves, joined by a path.
            let pendant = |c: usize| adj[c].iter().filter(|&&s| deg[s] == 1).count() == 2;
            if pendant(*u) && pendant(*v) {
                DynkinLabel::AffineD(n - 1)
            } else {
                DynkinLabel::None
            }
        }
        _ => DynkinLabel::None,
    }
}

/// Length of the arm starting at branch vertex `c` towards `s` (number of
/// vertices on the arm, excluding `c`).
fn arm_length(adj: &[Vec<usize>], c: usize, s: usize) -> usize {
    let mut len = 1;
    let mut prev = c;
    let mut cur = s;
    loop {
        let next: Vec<usize> = adj[cur].iter().copied().filter(|&x| x != prev).collect();
        match next.as_slice() {
            [] => return len,
            [x] => {
                prev = cur;
                cur = *x;
                len += 1;
            }
            // Hitting another branch vertex: the arm ends here.
            _ => return len,
        }
    }
}

fn vertex(id: String) -> Vertex {
    Vertex { id, self_int: -2 }
}

/// Builds a finite ADE diagram. Panics on out-of-range ranks.
pub fn diagram(label: DynkinLabel) -> CurveConfig {
    match label {
        DynkinLabel::A(n) => {
            assert!(n >= 1);
            let vertices = (1..=n).map(|i| vertex(format!("v{i}"))).collect();
            let edges = (1..n)
                .map(|i| (format!("v{i}"), format!("v{}", i + 1), 1))
                .collect();
            CurveConfig::new(vertices, edges).unwrap()
        }
        DynkinLabel::D(n) => {
            assert!(n >= 4);
            star(&[n - 3, 1, 1])
        }
        DynkinLabel::E6 => star(&[2, 2, 1]),
        DynkinLabel::E7 => star(&[3, 2, 1]),
        DynkinLabel::E8 => star(&[4, 2, 1]),
        other => panic!("{other} is not a finite diagram"),
    }
}

/// Builds an affine diagram together with its imaginary-root mark vector
/// (aligned with vertex order); the marks span the kernel of the
/// intersection form.
pub fn affine_diagram(label: DynkinLabel) -> (CurveConfig, Vec<i64>) {
    match label {
        DynkinLabel::AffineA(n) => {
            assert!(n >= 2, "the simply-laced affine A series starts at rank 2");
            let k = n + 1;
            let vertices = (1..=k).map(|i| vertex(format!("v{i}"))).collect();
            let mut edges: Vec<(String, String, u32)> = (1..k)
                .map(|i| (format!("v{i}"), format!("v{}", i + 1), 1))
                .collect();
            edges.push((format!("v{k}"), "v1".into(), 1));
            (CurveConfig::new(vertices, edges).unwrap(), vec![1; k])
        }
        DynkinLabel::AffineD(4) => {
            let g = CurveConfig::simple(
                &["c", "l1", "l2", "l3", "l4"],
                &[("c", "l1"), ("c", "l2"), ("c", "l3"), ("c", "l4")],
            );
            (g, vec![2, 1, 1, 1, 1])
        }
        DynkinLabel::AffineD(n) => {
            assert!(n >= 5);
            // Spine s1..s_{n-3} with two leaves at each end.
            let spine = n - 3;
            let mut vertices: Vec<Vertex> = (1..=spine).map(|i| vertex(format!("s{i}"))).collect();
            vertices.extend(["u1", "u2", "w1", "w2"].iter().map(|s| vertex((*s).into())));
            let mut edges: Vec<(String, String, u32)> = (1..spine)
                .map(|i| (format!("s{i}"), format!("s{}", i + 1), 1))
                .collect();
            edges.push(("s1".into(), "u1".into(), 1));
            edges.push(("s1".into(), "u2".into(), 1));
            edges.push((format!("s{spine}"), "w1".into(), 1));
            edges.push((format!("s{spine}"), "w2".into(), 1));
            let mut marks = vec![2; spine];
            marks.extend([1, 1, 1, 1]);
            (CurveConfig::new(vertices, edges).unwrap(), marks)
        }
        DynkinLabel::AffineE6 => (
            star(&[2, 2, 2]),
            star_marks(3, &[&[2, 1], &[2, 1], &[2, 1]]),
        ),
        DynkinLabel::AffineE7 => (
            star(&[3, 3, 1]),
            star_marks(4, &[&[3, 2, 1], &[3, 2, 1], &[2]]),
        ),
        DynkinLabel::AffineE8 => (
            star(&[5, 2, 1]),
            star_marks(6, &[&[5, 4, 3, 2, 1], &[4, 2], &[3]]),
        ),
        other => panic!("{other} is not an affine diagram"),
    }
}

/// Star tree with a central vertex `c` and arms of the given lengths;
/// arm vertices are `a<arm>_<step>` with step 1 adjacent to the center.
fn star(arms: &[usize]) -> CurveConfig {
    let mut vertices = vec![vertex("c".into())];
    let mut edges = Vec::new();
    for (ai, &len) in arms.iter().enumerate() {
        let mut prev = "c".to_string();
        for step in 1..=len {
            let id = format!("a{}_{}", ai + 1, step);
            vertices.push(vertex(id.clone()));
            edges.push((prev.clone(), id.clone(), 1));
            prev = id;
        }
    }
    CurveConfig::new(vertices, edges).unwrap()
}

/// Marks for a star diagram in the vertex order produced by [`star`].
fn star_marks(center: i64, arms: &[&[i64]]) -> Vec<i64> {
    let mut out = vec![center];
    for arm in arms {
        out.extend_from_slice(arm);
    }
    out
}
