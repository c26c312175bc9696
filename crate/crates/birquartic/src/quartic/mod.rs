//! Exact polynomial verification of a quartic threefold against its
//! combinatorial incidence data: node tests, Eckardt normal form, line
//! containment, plane-section multiplicities, and tangent hyperplanes.
//!
//! Everything here verifies supplied coordinates; nothing is discovered by
//! solving polynomial systems. A singular point is a node when the local
//! 4×4 Hessian has full rank; a node is an Eckardt point when, after moving
//! it to `(0:0:0:0:1)`, the cubic-in-`w` part is a multiple of the quadric
//! `q2` and the substitution `w ↦ w − l/2` kills it, leaving the normal
//! form `w²q2 + q4`.

pub mod poly;

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use poly::{HomogPoly, ProjLine, ProjPoint};

use crate::incidence::QuarticIncidence;
use crate::linalg::QMatrix;
use crate::rat::{parse_rat, ratio, Rat};
use crate::{Error, Result};

/// True when all five partials vanish at `p`. Errors when `p` is off the
/// hypersurface.
pub fn is_singular(f: &HomogPoly, p: &ProjPoint) -> Result<bool> {
    assert_eq!(f.nvars(), p.dim());
    if !f.eval(p.coords()).is_zero() {
        return Err(Error::PointNotOnHypersurface);
    }
    Ok((0..f.nvars()).all(|v| f.partial(v).eval(p.coords()).is_zero()))
}

/// True when the singular point `p` is an ordinary double point: the local
/// Hessian (the second-derivative matrix with the pivot chart row and
/// column removed) has full rank. Errors when `p` is smooth or off the
/// hypersurface.
pub fn is_node(f: &HomogPoly, p: &ProjPoint) -> Result<bool> {
    if !is_singular(f, p)? {
        return Err(Error::Degenerate(
            "point is a smooth point, not a singularity".into(),
        ));
    }
    let n = f.nvars();
    let pivot = p.pivot();
    let mut rows = Vec::new();
    for i in 0..n {
        if i == pivot {
            continue;
        }
        let mut row = Vec::new();
        let fi = f.partial(i);
        for j in 0..n {
            if j == pivot {
                continue;
            }
            row.push(fi.partial(j).eval(p.coords()));
        }
        rows.push(row);
    }
    Ok(QMatrix::from_rows(rows).rank() == n - 1)
}

/// True when the restriction of `f` to the line vanishes identically.
pub fn line_contained(f: &HomogPoly, line: &ProjLine) -> bool {
    f.restrict_to_span(&[line.a.coords(), line.b.coords()])
        .is_zero()
}

/// A plane given by three independent spanning points.
#[derive(Clone, Debug)]
pub struct ProjPlane {
    points: [ProjPoint; 3],
}

impl ProjPlane {
    pub fn new(points: [ProjPoint; 3]) -> Result<Self> {
        let m = QMatrix::from_rows(points.iter().map(|p| p.coords().to_vec()).collect());
        if m.rank() != 3 {
            return Err(Error::Parse("plane points are not independent".into()));
        }
        Ok(ProjPlane { points })
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        let mut rows: Vec<Vec<Rat>> = self.points.iter().map(|q| q.coords().to_vec()).collect();
        rows.push(p.coords().to_vec());
        QMatrix::from_rows(rows).rank() == 3
    }
}

/// Largest `k` with `X|_Π = k·L + C`: the power of the line's linear form
/// dividing the restriction of `f` to the plane.
pub fn plane_section_line_multiplicity(
    f: &HomogPoly,
    plane: &ProjPlane,
    line: &ProjLine,
) -> Result<u32> {
    if !plane.contains(&line.a) || !plane.contains(&line.b) {
        return Err(Error::PlaneMissesLine);
    }
    if !line_contained(f, line) {
        return Err(Error::LineNotOnHypersurface);
    }
    // Re-span the plane as (a, b, q) with q a plane point off the line, so
    // the line becomes {y2 = 0} in plane coordinates.
    let q = plane
        .points
        .iter()
        .find(|p| !line.contains(p))
        .expect("three independent points cannot all lie on one line");
    let g = f.restrict_to_span(&[line.a.coords(), line.b.coords(), q.coords()]);
    if g.is_zero() {
        return Err(Error::Degenerate(
            "plane contained in the hypersurface".into(),
        ));
    }
    Ok(g.terms().keys().map(|e| e[2]).min().unwrap())
}

/// A hyperplane `h·x = 0`.
#[derive(Clone, Debug)]
pub struct Hyperplane {
    coeffs: Vec<Rat>,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Rat>) -> Result<Self> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::Parse("zero hyperplane".into()));
        }
        Ok(Hyperplane { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Hyperplane::new(coeffs.iter().map(|&c| crate::rat::rat(c)).collect()).unwrap()
    }

    pub fn contains(&self, p: &ProjPoint) -> bool {
        self.coeffs
            .iter()
            .zip(p.coords())
            .fold(Rat::zero(), |acc, (h, x)| acc + h * x)
            .is_zero()
    }

    /// A basis of the hyperplane as spanning points.
    fn spanning_points(&self) -> Vec<Vec<Rat>> {
        let n = self.coeffs.len();
        let pivot = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let inv = self.coeffs[pivot].clone();
        let mut out = Vec::new();
        for i in 0..n {
            if i == pivot {
                continue;
            }
            let mut v = vec![Rat::zero(); n];
            v[i] = crate::rat::rat(1);
            v[pivot] = -&self.coeffs[i] / &inv;
            out.push(v);
        }
        out
    }
}

/// True when the hyperplane is tangent to the hypersurface along the whole
/// line: all partials of the restriction `f|_H` vanish identically on the
/// line.
pub fn tangent_hyperplane_along_line(
    f: &HomogPoly,
    h: &Hyperplane,
    line: &ProjLine,
) -> Result<bool> {
    if !h.contains(&line.a) || !h.contains(&line.b) {
        return Err(Error::HyperplaneMissesLine);
    }
    if !line_contained(f, line) {
        return Err(Error::LineNotOnHypersurface);
    }
    let basis = h.spanning_points();
    let refs: Vec<&[Rat]> = basis.iter().map(|b| b.as_slice()).collect();
    let g = f.restrict_to_span(&refs);
    // Line coordinates within the hyperplane basis.
    let coord = |p: &ProjPoint| -> Vec<Rat> {
        let m = QMatrix::from_rows(
            (0..p.dim())
                .map(|i| basis.iter().map(|b| b[i].clone()).collect())
                .collect(),
        );
        m.solve(p.coords())
            .expect("line point lies in the hyperplane")
    };
    let la = coord(&line.a);
    let lb = coord(&line.b);
    Ok((0..g.nvars()).all(|v| g.partial(v).restrict_to_span(&[&la, &lb]).is_zero()))
}

/// Result of the Eckardt normal-form computation at a node.
#[derive(Clone, Debug)]
pub struct EckardtNormalForm {
    pub is_eckardt: bool,
    /// Normal-form parts `(q2, q4)` with `f∘transform = w²q2 + q4`, present
    /// when the point is an Eckardt point.
    pub q2: Option<HomogPoly>,
    pub q4: Option<HomogPoly>,
    /// The recorded coordinate change: an invertible matrix with
    /// `f(transform · y)` in normal form and the node at `(0:0:0:0:1)`.
    pub transform: QMatrix,
}

/// Moves a node to `(0:0:0:0:1)`, checks whether the odd part `q3` is a
/// multiple of the quadric `q2`, and if so completes the square in `w`.
pub fn eckardt_normal_form(f: &HomogPoly, p: &ProjPoint) -> Result<EckardtNormalForm> {
    if !is_node(f, p)? {
        return Err(Error::NotANode);
    }
    let n = f.nvars();
    // Columns: the standard basis without the pivot, then p last.
    let pivot = p.pivot();
    let mut m = QMatrix::zero(n, n);
    let mut col = 0;
    for j in 0..n {
        if j == pivot {
            continue;
        }
        m[(j, col)] = crate::rat::rat(1);
        col += 1;
    }
    for i in 0..n {
        m[(i, n - 1)] = p.coords()[i].clone();
    }
    let moved = f.substitute_matrix(&m);
    let split = moved.split_by_last_variable();
    let zero4 = HomogPoly::zero(n - 1, 4);
    let zero3 = HomogPoly::zero(n - 1, 3);
    // At a singular point the w⁴ and w³ parts vanish automatically.
    assert!(
        split.get(&4).is_none_or(HomogPoly::is_zero),
        "point is on the hypersurface"
    );
    assert!(
        split.get(&3).is_none_or(HomogPoly::is_zero),
        "point is singular"
    );
    let q2 = split
        .get(&2)
        .cloned()
        .unwrap_or_else(|| HomogPoly::zero(n - 1, 2));
    let q3 = split.get(&1).cloned().unwrap_or(zero3);
    let q4 = split.get(&0).cloned().unwrap_or(zero4);
    // Solve q3 = q2·l for a linear form l in the first n−1 variables.
    let cubics: Vec<Vec<u32>> = monomial_exponents(n - 1, 3);
    let mut rows = vec![vec![Rat::zero(); n - 1]; cubics.len()];
    for j in 0..n - 1 {
        let mut e = vec![0u32; n - 1];
        e[j] = 1;
        let xj = HomogPoly::monomial(n - 1, 1, &e, crate::rat::rat(1));
        let prod = q2.mul(&xj);
        for (row, exps) in rows.iter_mut().zip(&cubics) {
            if let Some(c) = prod.terms().get(exps) {
                row[j] = c.clone();
            }
        }
    }
    let rhs: Vec<Rat> = cubics
        .iter()
        .map(|e| q3.terms().get(e).cloned().unwrap_or_else(Rat::zero))
        .collect();
    let system = QMatrix::from_rows(rows);
    let Some(l) = system.solve(&rhs) else {
        return Ok(EckardtNormalForm {
            is_eckardt: false,
            q2: None,
            q4: None,
            transform: m,
        });
    };
    // Shear w ↦ w − l/2 in the moved coordinates.
    let mut shear = QMatrix::identity(n);
    for (j, lj) in l.iter().enumerate() {
        shear[(n - 1, j)] = -lj / ratio(2, 1);
    }
    let transform = m.mul(&shear);
    let l_form = HomogPoly::new(
        n - 1,
        1,
        l.iter()
            .enumerate()
            .map(|(j, c)| {
                let mut e = vec![0u32; n - 1];
                e[j] = 1;
                (e, c.clone())
            })
            .collect(),
    )?;
    let q4_new = q4.sub(&q2.mul(&l_form).mul(&l_form).scale(&ratio(1, 4)));
    // The re-expanded normal form must reproduce f in the new coordinates.
    debug_assert!({
        let full = f.substitute_matrix(&transform);
        let rebuilt = embed_with_w_power(&q2, 2, n).add(&embed_with_w_power(&q4_new, 0, n));
        full == rebuilt
    });
    Ok(EckardtNormalForm {
        is_eckardt: true,
        q2: Some(q2),
        q4: Some(q4_new),
        transform,
    })
}

/// Lifts a form in `n−1` variables to `n` variables times `w^k`.
pub fn embed_with_w_power(q: &HomogPoly, k: u32, nvars: usize) -> HomogPoly {
    HomogPoly::new(
        nvars,
        q.degree() + k,
        q.terms()
            .iter()
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne.push(k);
                (ne, c.clone())
            })
            .collect(),
    )
    .unwrap()
}

fn monomial_exponents(nvars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn rec(nvars: usize, degree: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if nvars == 1 {
            let mut e = prefix.clone();
            e.push(degree);
            out.push(e);
            return;
        }
        for d in 0..=degree {
            prefix.push(d);
            rec(nvars - 1, degree - d, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, degree, &mut Vec::new(), &mut out);
    out
}

/// Coordinates supplied for the incidence data.
#[derive(Clone, Debug)]
pub enum CoordEntry {
    Point(ProjPoint),
    Line(ProjLine),
}

/// Parses the coordinate map: point ids map to arrays of five rational
/// strings, line ids to pairs of such arrays.
pub fn coords_from_json(json: &str) -> Result<BTreeMap<String, CoordEntry>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Wire {
        Point(Vec<String>),
        Line([Vec<String>; 2]),
    }
    let wire: BTreeMap<String, Wire> = serde_json::from_str(json)?;
    let parse_point = |v: Vec<String>| -> Result<ProjPoint> {
        if v.len() != 5 {
            return Err(Error::Parse(
                "points have five homogeneous coordinates".into(),
            ));
        }
        ProjPoint::new(v.iter().map(|s| parse_rat(s)).collect::<Result<_>>()?)
    };
    wire.into_iter()
        .map(|(id, w)| {
            let entry = match w {
                Wire::Point(v) => CoordEntry::Point(parse_point(v)?),
                Wire::Line([a, b]) => {
                    CoordEntry::Line(ProjLine::new(parse_point(a)?, parse_point(b)?)?)
                }
            };
            Ok((id, entry))
        })
        .collect()
}

/// One discrepancy between the equation and the incidence data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IncidenceMismatch {
    pub id: String,
    pub check: String,
    pub detail: String,
}

/// Verifies that the supplied coordinates realize the incidence data on the
/// quartic: points are nodes with matching Eckardt flags, lines lie on the
/// quartic and pass exactly through their listed nodes. Global statements
/// ("no other singular points") are out of scope.
pub fn verify_incidence(
    f: &HomogPoly,
    config: &QuarticIncidence,
    coords: &BTreeMap<String, CoordEntry>,
) -> Vec<IncidenceMismatch> {
    let mut out = Vec::new();
    let mut push = |id: &str, check: &str, detail: String| {
        out.push(IncidenceMismatch {
            id: id.to_owned(),
            check: check.to_owned(),
            detail,
        });
    };
    let mut verified_points: BTreeMap<&str, &ProjPoint> = BTreeMap::new();
    for sp in config.points() {
        let Some(CoordEntry::Point(p)) = coords.get(&sp.id.0) else {
            push(
                &sp.id.0,
                "coordinates",
                "no point coordinates supplied".into(),
            );
            continue;
        };
        verified_points.insert(&sp.id.0, p);
        match is_node(f, p) {
            Ok(true) => {
                let nf = eckardt_normal_form(f, p).expect("node checked above");
                if nf.is_eckardt != sp.eckardt {
                    push(
                        &sp.id.0,
                        "eckardt-flag",
                        format!("flagged {} but computed {}", sp.eckardt, nf.is_eckardt),
                    );
                }
            }
            Ok(false) => push(
                &sp.id.0,
                "node",
                "singular point has degenerate Hessian".into(),
            ),
            Err(e) => push(&sp.id.0, "node", e.to_string()),
        }
    }
    for lm in config.lines() {
        let Some(CoordEntry::Line(l)) = coords.get(&lm.id.0) else {
            push(
                &lm.id.0,
                "coordinates",
                "no line coordinates supplied".into(),
            );
            continue;
        };
        if !line_contained(f, l) {
            push(
                &lm.id.0,
                "containment",
                "line is not contained in the quartic".into(),
            );
            continue;
        }
        for (pid, p) in &verified_points {
            let on_line = l.contains(p);
            let listed = lm.points.iter().any(|q| q.0 == *pid);
            if on_line != listed {
                push(
                    &lm.id.0,
                    "incidence",
                    format!("point `{pid}`: on line = {on_line}, listed = {listed}"),
                );
            }
        }
        // Cone criterion: a line through an eckardt node is an eckardt line.
        let through_eckardt = lm
            .points
            .iter()
            .any(|q| config.point(q).map(|sp| sp.eckardt).unwrap_or(false));
        if through_eckardt && !lm.eckardt {
            push(
                &lm.id.0,
                "eckardt-flag",
                "line through an eckardt point must be flagged as an eckardt line".into(),
            );
        }
    }
    out
}
