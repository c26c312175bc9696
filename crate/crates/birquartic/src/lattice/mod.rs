//! Exact analysis of (−2)-curve configurations: intersection matrices,
//! negative-(semi)definiteness, ADE / affine Dynkin recognition, the
//! delete-one-vertex star condition, and the Du Val chain arithmetic.
//!
//! Definiteness is decided by rational congruence diagonalization — no
//! eigenvalues, no floating point. Dynkin recognition works purely on graph
//! shape (degree sequences and arm lengths) so the two classifications
//! validate one another.

pub mod corollary;
pub mod dynkin;
pub mod enumerate;

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::linalg::{symmetric_inertia, QMatrix};
use crate::rat::{rat, ratio, Rat};
use crate::{Error, Result};

pub use dynkin::{classify_dynkin, ComponentClass, DynkinLabel};

/// A configuration of curves with self-intersections (default −2) and
/// pairwise intersection multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawCurveConfig", into = "RawCurveConfig")]
pub struct CurveConfig {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    #[serde(rename = "self", default = "default_self_intersection")]
    pub self_int: i64,
}

fn default_self_intersection() -> i64 {
    -2
}

pub type Edge = (String, String, u32);

#[derive(Clone, Serialize, Deserialize)]
struct RawCurveConfig {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
}

impl TryFrom<RawCurveConfig> for CurveConfig {
    type Error = Error;
    fn try_from(raw: RawCurveConfig) -> Result<Self> {
        CurveConfig::new(raw.vertices, raw.edges)
    }
}

impl From<CurveConfig> for RawCurveConfig {
    fn from(c: CurveConfig) -> Self {
        RawCurveConfig {
            vertices: c.vertices,
            edges: c.edges,
        }
    }
}

impl CurveConfig {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<Edge>) -> Result<Self> {
        let mut ids = BTreeSet::new();
        for v in &vertices {
            if v.id.is_empty() {
                return Err(Error::InvalidLattice("empty vertex id".into()));
            }
            if !ids.insert(v.id.clone()) {
                return Err(Error::InvalidLattice(format!(
                    "duplicate vertex id `{}`",
                    v.id
                )));
            }
        }
        let mut seen_pairs = BTreeSet::new();
        for (a, b, m) in &edges {
            if a == b {
                return Err(Error::InvalidLattice(format!("self-edge at `{a}`")));
            }
            if !ids.contains(a) || !ids.contains(b) {
                return Err(Error::InvalidLattice(format!(
                    "edge references unknown vertex `{}`",
                    if ids.contains(a) { b } else { a }
                )));
            }
            if *m < 1 {
                return Err(Error::InvalidLattice(format!(
                    "edge `{a}`-`{b}` with multiplicity 0"
                )));
            }
            let key = if a < b {
                (a.clone(), b.clone())
            } else {
                (b.clone(), a.clone())
            };
            if !seen_pairs.insert(key) {
                return Err(Error::InvalidLattice(format!("duplicate edge `{a}`-`{b}`")));
            }
        }
        Ok(CurveConfig { vertices, edges })
    }

    /// Convenience constructor: ids with self-intersection −2, unit edges.
    pub fn simple(ids: &[&str], edges: &[(&str, &str)]) -> Self {
        CurveConfig::new(
            ids.iter()
                .map(|id| Vertex {
                    id: (*id).into(),
                    self_int: -2,
                })
                .collect(),
            edges
                .iter()
                .map(|(a, b)| ((*a).into(), (*b).into(), 1))
                .collect(),
        )
        .expect("valid test configuration")
    }

    pub fn from_json(json: &str) -> Result<Self> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    /// True when every self-intersection is −2 and every edge is simple.
    pub fn is_simply_laced(&self) -> bool {
        self.vertices.iter().all(|v| v.self_int == -2) && self.edges.iter().all(|e| e.2 == 1)
    }

    /// The symmetric intersection matrix in vertex order.
    pub fn intersection_matrix(&self) -> QMatrix {
        let n = self.vertices.len();
        let mut m = QMatrix::zero(n, n);
        for (i, v) in self.vertices.iter().enumerate() {
            m[(i, i)] = rat(v.self_int);
        }
        for (a, b, mult) in &self.edges {
            let i = self.index(a).unwrap();
            let j = self.index(b).unwrap();
            m[(i, j)] = rat(*mult as i64);
            m[(j, i)] = rat(*mult as i64);
        }
        m
    }

    /// Connected components as sorted vertex-index lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for (a, b, _) in &self.edges {
            let i = self.index(a).unwrap();
            let j = self.index(b).unwrap();
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The induced sub-configuration on the given vertex indices.
    pub fn induced(&self, indices: &[usize]) -> CurveConfig {
        let kept_ids: BTreeSet<&str> = indices
            .iter()
            .map(|&i| self.vertices[i].id.as_str())
            .collect();
        CurveConfig {
            vertices: indices.iter().map(|&i| self.vertices[i].clone()).collect(),
            edges: self
                .edges
                .iter()
                .filter(|(a, b, _)| kept_ids.contains(a.as_str()) && kept_ids.contains(b.as_str()))
                .cloned()
                .collect(),
        }
    }
}

/// Exact definiteness classification of a symmetric matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Definiteness {
    NegativeDefinite,
    /// Kernel basis vectors satisfy `M·v = 0` exactly.
    NegativeSemidefinite {
        kernel: Vec<Vec<Rat>>,
    },
    IndefiniteOrOther,
}

impl Definiteness {
    pub fn kind(&self) -> &'static str {
        match self {
            Definiteness::NegativeDefinite => "negative_definite",
            Definiteness::NegativeSemidefinite { .. } => "negative_semidefinite",
            Definiteness::IndefiniteOrOther => "indefinite_or_other",
        }
    }

    pub fn kernel_dim(&self) -> usize {
        match self {
            Definiteness::NegativeSemidefinite { kernel } => kernel.len(),
            _ => 0,
        }
    }
}

/// Classifies a symmetric matrix by exact congruence diagonalization.
pub fn definiteness(m: &QMatrix) -> Definiteness {
    let (pos, _neg, zero) = symmetric_inertia(m);
    if pos > 0 {
        return Definiteness::IndefiniteOrOther;
    }
    if zero == 0 {
        return Definiteness::NegativeDefinite;
    }
    let kernel = m.nullspace();
    debug_assert_eq!(kernel.len(), zero);
    debug_assert!(kernel
        .iter()
        .all(|v| m.mul_vec(v).iter().all(Zero::is_zero)));
    Definiteness::NegativeSemidefinite { kernel }
}

/// Which clause of the star condition failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "clause", rename_all = "snake_case")]
pub enum StarClause {
    Semidefiniteness,
    DeleteOneDefiniteness { removed: String },
}

/// Star-condition verdict, with a witness component on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum StarVerdict {
    Holds,
    Fails {
        component: Vec<String>,
        #[serde(flatten)]
        clause: StarClause,
    },
}

impl StarVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, StarVerdict::Holds)
    }
}

/// Definition-based star condition: after removing the marked vertices,
/// every connected component must be negative semidefinite with every
/// delete-one-vertex submatrix negative definite. Components are pairwise
/// orthogonal automatically.
pub fn check_star(g: &CurveConfig, marked: &BTreeSet<String>) -> Result<StarVerdict> {
    for id in marked {
        if g.index(id).is_none() {
            return Err(Error::InvalidLattice(format!(
                "marked vertex `{id}` does not exist"
            )));
        }
    }
    let rest: Vec<usize> = (0..g.len())
        .filter(|&i| !marked.contains(&g.vertices[i].id))
        .collect();
    let sub = g.induced(&rest);
    for comp in sub.components() {
        let comp_cfg = sub.induced(&comp);
        let names: Vec<String> = comp_cfg.vertices.iter().map(|v| v.id.clone()).collect();
        let m = comp_cfg.intersection_matrix();
        let (pos, _, _) = symmetric_inertia(&m);
        if pos > 0 {
            return Ok(StarVerdict::Fails {
                component: names,
                clause: StarClause::Semidefiniteness,
            });
        }
        for drop_idx in 0..comp.len() {
            let sub_indices: Vec<usize> = (0..comp.len()).filter(|&i| i != drop_idx).collect();
            let minor = comp_cfg.induced(&sub_indices).intersection_matrix();
            let (p, _, z) = symmetric_inertia(&minor);
            if p > 0 || z > 0 {
                return Ok(StarVerdict::Fails {
                    component: names,
                    clause: StarClause::DeleteOneDefiniteness {
                        removed: comp_cfg.vertices[drop_idx].id.clone(),
                    },
                });
            }
        }
    }
    Ok(StarVerdict::Holds)
}

/// Recognition-based star condition for simply-laced (−2) configurations:
/// every component must be a finite or affine ADE diagram (equivalently, an
/// induced subgraph of an affine Dynkin diagram). Independent of the
/// definiteness route; the two are cross-validated exhaustively.
pub fn check_star_by_recognition(g: &CurveConfig, marked: &BTreeSet<String>) -> Result<bool> {
    for id in marked {
        if g.index(id).is_none() {
            return Err(Error::InvalidLattice(format!(
                "marked vertex `{id}` does not exist"
            )));
        }
    }
    let rest: Vec<usize> = (0..g.len())
        .filter(|&i| !marked.contains(&g.vertices[i].id))
        .collect();
    let sub = g.induced(&rest);
    let classes = classify_dynkin(&sub)?;
    Ok(classes.iter().all(|c| c.label != DynkinLabel::None))
}

/// Multiplicities `a_t` of the exceptional chain curves in the pull-back of
/// a curve meeting the end of an `A_{k'}` chain: the solution of
/// `2a_1 = a_2`, `a_{t+1} − 2a_t + a_{t−1} = 0`, `1 − 2a_{k'} + a_{k'−1} = 0`,
/// which is `a_t = t/(k'+1)`.
pub fn chain_pullback(k_prime: usize) -> Vec<Rat> {
    assert!(k_prime >= 1, "chain length must be positive");
    let n = k_prime;
    // Tridiagonal system: diag −2, off-diag 1, rhs = (0, …, 0, −1).
    let mut diag = vec![rat(-2); n];
    let mut rhs = vec![Rat::zero(); n];
    rhs[n - 1] = rat(-1);
    // Thomas elimination, exact.
    for t in 1..n {
        let w = rat(1) / diag[t - 1].clone();
        let nd = &diag[t] - &w;
        diag[t] = nd;
        let carry = &w * &rhs[t - 1];
        let nr = &rhs[t] - carry;
        rhs[t] = nr;
    }
    let mut a = vec![Rat::zero(); n];
    a[n - 1] = &rhs[n - 1] / &diag[n - 1];
    for t in (0..n - 1).rev() {
        let v = (&rhs[t] - &a[t + 1]) / &diag[t];
        a[t] = v;
    }
    for (t, at) in a.iter().enumerate() {
        debug_assert_eq!(*at, ratio(t as i64 + 1, k_prime as i64 + 1));
    }
    a
}

/// Divisibility criterion `(k'+1) | k` from pull-back integrality; when it
/// holds, `k ≥ k'+1`.
pub fn integrality_bound(k: u64, k_prime: u64) -> bool {
    let divides = k.is_multiple_of(k_prime + 1);
    if divides {
        debug_assert!(k > k_prime);
    }
    divides
}

/// Bound `d − n − 1` on the extra section singularities appearing on a line
/// with `n` nodes inside a degree-`d` hypersurface, when the section has
/// multiplicity ≥ 2 along the line. Errors when negative.
pub fn duval_point_bound(d: u64, n: u64) -> Result<u64> {
    if d < 1 {
        return Err(Error::InvalidLattice("degree must be positive".into()));
    }
    if n > 3 {
        return Err(Error::InvalidLattice(
            "a line carries at most three nodes".into(),
        ));
    }
    if d < n + 1 {
        return Err(Error::Degenerate("line multiplicity impossible".into()));
    }
    Ok(d - n - 1)
}

/// Printable summary of classified components.
pub fn summarize_components(
    classes: &[ComponentClass],
) -> Vec<BTreeMap<String, serde_json::Value>> {
    classes
        .iter()
        .map(|c| {
            let mut m = BTreeMap::new();
            m.insert("vertices".into(), serde_json::json!(c.vertices));
            m.insert("label".into(), serde_json::json!(c.label.to_string()));
            m
        })
        .collect()
}
