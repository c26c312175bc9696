//! Sparse exact-rational homogeneous polynomials in up to five variables,
//! with projective points and lines.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::rat::{fmt_rat, parse_rat, Rat};
use crate::{Error, Result};

/// A homogeneous polynomial: sparse term map from exponent vectors to
/// nonzero rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogPoly {
    nvars: usize,
    degree: u32,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl HomogPoly {
    pub fn zero(nvars: usize, degree: u32) -> Self {
        HomogPoly {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn new(nvars: usize, degree: u32, terms: Vec<(Vec<u32>, Rat)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (exps, coef) in terms {
            if exps.len() != nvars {
                return Err(Error::Parse(format!(
                    "exponent vector of length {} in a {nvars}-variable polynomial",
                    exps.len()
                )));
            }
            if exps.iter().sum::<u32>() != degree {
                return Err(Error::Parse(format!(
                    "term of degree {} in a degree-{degree} form",
                    exps.iter().sum::<u32>()
                )));
            }
            let entry = map.entry(exps).or_insert_with(Rat::zero);
            *entry += coef;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(HomogPoly {
            nvars,
            degree,
            terms: map,
        })
    }

    /// Monomial helper: variable indices with exponents.
    pub fn monomial(nvars: usize, degree: u32, exps: &[u32], coef: Rat) -> Self {
        HomogPoly::new(nvars, degree, vec![(exps.to_vec(), coef)]).unwrap()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &HomogPoly) -> HomogPoly {
        assert_eq!((self.nvars, self.degree), (rhs.nvars, rhs.degree));
        let mut terms = self.terms.clone();
        for (e, c) in &rhs.terms {
            let entry = terms.entry(e.clone()).or_insert_with(Rat::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        HomogPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms,
        }
    }

    pub fn sub(&self, rhs: &HomogPoly) -> HomogPoly {
        self.add(&rhs.scale(&-crate::rat::rat(1)))
    }

    pub fn scale(&self, s: &Rat) -> HomogPoly {
        if s.is_zero() {
            return HomogPoly::zero(self.nvars, self.degree);
        }
        HomogPoly {
            nvars: self.nvars,
            degree: self.degree,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, rhs: &HomogPoly) -> HomogPoly {
        assert_eq!(self.nvars, rhs.nvars);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = terms.entry(e).or_insert_with(Rat::zero);
                *entry += ca * cb;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        HomogPoly {
            nvars: self.nvars,
            degree: self.degree + rhs.degree,
            terms,
        }
    }

    pub fn eval(&self, at: &[Rat]) -> Rat {
        assert_eq!(at.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &k) in at.iter().zip(e) {
                for _ in 0..k {
                    term *= x;
                }
            }
            acc += term;
        }
        acc
    }

    pub fn partial(&self, var: usize) -> HomogPoly {
        assert!(var < self.nvars && self.degree > 0);
        let mut terms: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[var] -= 1;
            let entry = terms.entry(ne).or_insert_with(Rat::zero);
            *entry += c * crate::rat::rat(e[var] as i64);
        }
        terms.retain(|_, c| !c.is_zero());
        HomogPoly {
            nvars: self.nvars,
            degree: self.degree - 1,
            terms,
        }
    }

    /// Substitutes each variable by a linear form in `k` new variables:
    /// `x_i ↦ Σ_j images[j][i] · y_j` where `images[j]` is the point of the
    /// span corresponding to the new variable `y_j`.
    pub fn restrict_to_span(&self, images: &[&[Rat]]) -> HomogPoly {
        let k = images.len();
        assert!(images.iter().all(|p| p.len() == self.nvars));
        // Linear forms L_i(y) = Σ_j images[j][i] y_j, one per old variable.
        let forms: Vec<HomogPoly> = (0..self.nvars)
            .map(|i| {
                HomogPoly::new(
                    k,
                    1,
                    (0..k)
                        .map(|j| {
                            let mut e = vec![0u32; k];
                            e[j] = 1;
                            (e, images[j][i].clone())
                        })
                        .collect(),
                )
                .unwrap()
            })
            .collect();
        let mut acc = HomogPoly::zero(k, self.degree);
        for (e, c) in &self.terms {
            let mut term = HomogPoly::monomial(k, 0, &vec![0; k], crate::rat::rat(1));
            for (i, &exp) in e.iter().enumerate() {
                for _ in 0..exp {
                    term = term.mul(&forms[i]);
                }
            }
            acc = acc.add(&term.scale(c));
        }
        acc
    }

    /// Applies the invertible linear change `x = M·y` (same number of
    /// variables).
    pub fn substitute_matrix(&self, m: &crate::linalg::QMatrix) -> HomogPoly {
        assert_eq!(m.rows(), self.nvars);
        assert_eq!(m.cols(), self.nvars);
        let columns: Vec<Vec<Rat>> = (0..self.nvars)
            .map(|j| (0..self.nvars).map(|i| m[(i, j)].clone()).collect())
            .collect();
        let refs: Vec<&[Rat]> = columns.iter().map(|c| c.as_slice()).collect();
        self.restrict_to_span(&refs)
    }

    /// Groups terms by the exponent of the last variable: the result maps
    /// `k` to the polynomial `q_k` in the remaining variables with
    /// `F = Σ_k last^k · q_k`.
    pub fn split_by_last_variable(&self) -> BTreeMap<u32, HomogPoly> {
        let n = self.nvars - 1;
        let mut out: BTreeMap<u32, HomogPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let k = e[n];
            let rest = e[..n].to_vec();
            let q = out
                .entry(k)
                .or_insert_with(|| HomogPoly::zero(n, self.degree - k));
            *q = q.add(&HomogPoly::monomial(n, self.degree - k, &rest, c.clone()));
        }
        out
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct WireTerm {
            coef: String,
            exps: Vec<u32>,
        }
        #[derive(Deserialize)]
        struct Wire {
            vars: Vec<String>,
            terms: Vec<WireTerm>,
        }
        let wire: Wire = serde_json::from_str(json)?;
        let nvars = wire.vars.len();
        if nvars == 0 || wire.terms.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let degree = wire.terms[0].exps.iter().sum();
        HomogPoly::new(
            nvars,
            degree,
            wire.terms
                .into_iter()
                .map(|t| Ok((t.exps, parse_rat(&t.coef)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn to_json(&self, vars: &[&str]) -> serde_json::Value {
        #[derive(Serialize)]
        struct WireTerm {
            coef: String,
            exps: Vec<u32>,
        }
        serde_json::json!({
            "vars": vars,
            "terms": self
                .terms
                .iter()
                .map(|(e, c)| WireTerm { coef: fmt_rat(c), exps: e.clone() })
                .collect::<Vec<_>>(),
        })
    }
}

/// A projective point with five exact homogeneous coordinates, normalized
/// so the first nonzero coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self> {
        let pivot = coords
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Parse("projective point with all-zero coordinates".into()))?;
        let inv = coords[pivot].clone();
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c / &inv).collect(),
        })
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        ProjPoint::new(coords.iter().map(|&c| crate::rat::rat(c)).collect()).unwrap()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Index of the normalized leading 1.
    pub fn pivot(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).unwrap()
    }
}

/// A projective line spanned by two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjLine {
    pub a: ProjPoint,
    pub b: ProjPoint,
}

impl ProjLine {
    pub fn new(a: ProjPoint, b: ProjPoint) -> Result<Self> {
        if a == b {
            return Err(Error::Parse("line spanned by coincident points".into()));
        }
        Ok(ProjLine { a, b })
    }

    /// True when `p` lies on the line (the 3×n matrix has rank 2).
    pub fn contains(&self, p: &ProjPoint) -> bool {
        let m = crate::linalg::QMatrix::from_rows(vec![
            self.a.coords().to_vec(),
            self.b.coords().to_vec(),
            p.coords().to_vec(),
        ]);
        m.rank() == 2
    }
}
