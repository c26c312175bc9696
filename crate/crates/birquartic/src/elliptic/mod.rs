//! Chord–tangent group law on plane cubic curves over exact fields.
//!
//! A [`PlaneCubic`] is a nonsingular homogeneous cubic in `(x:y:z)` with a
//! designated rational inflection point as zero element. Nonsingularity is
//! decided exactly: the designated zero is moved to `(0:1:0)` with its
//! tangent at `z = 0`, the equation is scaled to a Weierstrass form, and
//! the standard discriminant is required to be nonzero. The group-law
//! operations themselves work on the original coordinates via line
//! intersections, so no Weierstrass form is ever exposed.
//!
//! `reflection(p, ·)` is `x ↦ 2p − x`; `galois(p, ·)` is the involution of
//! the projection from `p`, that is `x ↦ −(p + x)`, which coincides with
//! taking the third intersection of the line through `p` and `x`.

pub mod field;
pub mod relations;

use field::FieldCtx;

use crate::{Error, Result};

/// Dense homogeneous polynomial in three variables.
#[derive(Clone, Debug, PartialEq)]
pub struct TernaryPoly<E> {
    degree: u32,
    /// Coefficients in the monomial order of [`monomials`].
    coeffs: Vec<E>,
}

/// Exponent triples `(i, j, k)` with `i + j + k = d`, lexicographic with
/// `x` heaviest: `x^3, x^2y, x^2z, xy^2, xyz, xz^2, y^3, y^2z, yz^2, z^3`
/// for a cubic.
pub fn monomials(d: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for i in (0..=d).rev() {
        for j in (0..=d - i).rev() {
            out.push((i, j, d - i - j));
        }
    }
    out
}

impl<E: Clone + PartialEq> TernaryPoly<E> {
    pub fn from_coeffs(degree: u32, coeffs: Vec<E>) -> Self {
        assert_eq!(coeffs.len(), monomials(degree).len(), "coefficient count");
        TernaryPoly { degree, coeffs }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn coeff(&self, exps: (u32, u32, u32)) -> &E {
        let idx = monomials(self.degree)
            .iter()
            .position(|m| *m == exps)
            .expect("exponents match degree");
        &self.coeffs[idx]
    }
}

fn poly_zero<C: FieldCtx>(ctx: &C, degree: u32) -> TernaryPoly<C::Elem> {
    TernaryPoly {
        degree,
        coeffs: vec![ctx.zero(); monomials(degree).len()],
    }
}

fn poly_is_zero<C: FieldCtx>(ctx: &C, p: &TernaryPoly<C::Elem>) -> bool {
    p.coeffs.iter().all(|c| ctx.is_zero(c))
}

fn poly_add<C: FieldCtx>(
    ctx: &C,
    a: &TernaryPoly<C::Elem>,
    b: &TernaryPoly<C::Elem>,
) -> TernaryPoly<C::Elem> {
    assert_eq!(a.degree, b.degree);
    TernaryPoly {
        degree: a.degree,
        coeffs: a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| ctx.add(x, y))
            .collect(),
    }
}

fn poly_scale<C: FieldCtx>(ctx: &C, s: &C::Elem, p: &TernaryPoly<C::Elem>) -> TernaryPoly<C::Elem> {
    TernaryPoly {
        degree: p.degree,
        coeffs: p.coeffs.iter().map(|c| ctx.mul(s, c)).collect(),
    }
}

fn poly_mul<C: FieldCtx>(
    ctx: &C,
    a: &TernaryPoly<C::Elem>,
    b: &TernaryPoly<C::Elem>,
) -> TernaryPoly<C::Elem> {
    let d = a.degree + b.degree;
    let out_mons = monomials(d);
    let mut out = vec![ctx.zero(); out_mons.len()];
    let a_mons = monomials(a.degree);
    let b_mons = monomials(b.degree);
    for (ai, am) in a_mons.iter().enumerate() {
        if ctx.is_zero(&a.coeffs[ai]) {
            continue;
        }
        for (bi, bm) in b_mons.iter().enumerate() {
            if ctx.is_zero(&b.coeffs[bi]) {
                continue;
            }
            let m = (am.0 + bm.0, am.1 + bm.1, am.2 + bm.2);
            let idx = out_mons.iter().position(|x| *x == m).unwrap();
            let add = ctx.mul(&a.coeffs[ai], &b.coeffs[bi]);
            out[idx] = ctx.add(&out[idx], &add);
        }
    }
    TernaryPoly {
        degree: d,
        coeffs: out,
    }
}

fn poly_eval<C: FieldCtx>(ctx: &C, p: &TernaryPoly<C::Elem>, at: &[C::Elem; 3]) -> C::Elem {
    let mut acc = ctx.zero();
    for (m, c) in monomials(p.degree).iter().zip(&p.coeffs) {
        if ctx.is_zero(c) {
            continue;
        }
        let mut term = c.clone();
        for _ in 0..m.0 {
            term = ctx.mul(&term, &at[0]);
        }
        for _ in 0..m.1 {
            term = ctx.mul(&term, &at[1]);
        }
        for _ in 0..m.2 {
            term = ctx.mul(&term, &at[2]);
        }
        acc = ctx.add(&acc, &term);
    }
    acc
}

fn poly_partial<C: FieldCtx>(
    ctx: &C,
    p: &TernaryPoly<C::Elem>,
    var: usize,
) -> TernaryPoly<C::Elem> {
    assert!(p.degree > 0);
    let d = p.degree - 1;
    let out_mons = monomials(d);
    let mut out = vec![ctx.zero(); out_mons.len()];
    for (m, c) in monomials(p.degree).iter().zip(&p.coeffs) {
        let e = [m.0, m.1, m.2][var];
        if e == 0 || ctx.is_zero(c) {
            continue;
        }
        let mut nm = [m.0, m.1, m.2];
        nm[var] -= 1;
        let idx = out_mons
            .iter()
            .position(|x| *x == (nm[0], nm[1], nm[2]))
            .unwrap();
        let scaled = ctx.mul(&ctx.from_i64(e as i64), c);
        out[idx] = ctx.add(&out[idx], &scaled);
    }
    TernaryPoly {
        degree: d,
        coeffs: out,
    }
}

/// Substitutes the linear change `old = M · new` (columns of `m` are the
/// images of the new basis vectors).
fn poly_substitute<C: FieldCtx>(
    ctx: &C,
    p: &TernaryPoly<C::Elem>,
    m: &[[C::Elem; 3]; 3],
) -> TernaryPoly<C::Elem> {
    // Linear forms for the old coordinates in terms of the new ones.
    let lin = |row: usize| TernaryPoly {
        degree: 1,
        coeffs: vec![m[row][0].clone(), m[row][1].clone(), m[row][2].clone()],
    };
    let lx = lin(0);
    let ly = lin(1);
    let lz = lin(2);
    let mut acc = poly_zero(ctx, p.degree);
    for (mon, c) in monomials(p.degree).iter().zip(&p.coeffs) {
        if ctx.is_zero(c) {
            continue;
        }
        let mut term = TernaryPoly {
            degree: 0,
            coeffs: vec![ctx.one()],
        };
        for _ in 0..mon.0 {
            term = poly_mul(ctx, &term, &lx);
        }
        for _ in 0..mon.1 {
            term = poly_mul(ctx, &term, &ly);
        }
        for _ in 0..mon.2 {
            term = poly_mul(ctx, &term, &lz);
        }
        acc = poly_add(ctx, &acc, &poly_scale(ctx, c, &term));
    }
    acc
}

/// A projective point on a cubic, normalized so its first nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicPoint<E> {
    pub coords: [E; 3],
}

fn normalize<C: FieldCtx>(ctx: &C, coords: [C::Elem; 3]) -> Result<CubicPoint<C::Elem>> {
    let pivot = coords
        .iter()
        .position(|c| !ctx.is_zero(c))
        .ok_or_else(|| Error::Degenerate("zero projective vector".into()))?;
    let inv = ctx.inv(&coords[pivot]).expect("nonzero pivot");
    Ok(CubicPoint {
        coords: [
            ctx.mul(&inv, &coords[0]),
            ctx.mul(&inv, &coords[1]),
            ctx.mul(&inv, &coords[2]),
        ],
    })
}

/// A nonsingular plane cubic with a designated inflection point as zero.
#[derive(Clone, Debug)]
pub struct PlaneCubic<C: FieldCtx> {
    ctx: C,
    f: TernaryPoly<C::Elem>,
    zero: CubicPoint<C::Elem>,
}

impl<C: FieldCtx> PlaneCubic<C> {
    /// Builds and fully validates a cubic: the zero point must lie on the
    /// curve and be a smooth inflection point, and the curve must be
    /// nonsingular (exact Weierstrass discriminant test).
    pub fn new(ctx: C, coeffs: Vec<C::Elem>, zero: [C::Elem; 3]) -> Result<Self> {
        let f = TernaryPoly::from_coeffs(3, coeffs);
        if poly_is_zero(&ctx, &f) {
            return Err(Error::SingularCubic("zero polynomial".into()));
        }
        let zero = normalize(&ctx, zero)?;
        if !ctx.is_zero(&poly_eval(&ctx, &f, &zero.coords)) {
            return Err(Error::PointNotOnHypersurface);
        }
        let curve = PlaneCubic { ctx, f, zero };
        curve.certify_smooth_with_inflection()?;
        Ok(curve)
    }

    /// The Weierstrass cubic `y²z = x³ + a·xz² + b·z³` with zero `(0:1:0)`.
    pub fn weierstrass(ctx: C, a: C::Elem, b: C::Elem) -> Result<Self> {
        let mons = monomials(3);
        let mut coeffs = vec![ctx.zero(); mons.len()];
        let minus_one = ctx.neg(&ctx.one());
        for (i, m) in mons.iter().enumerate() {
            coeffs[i] = match *m {
                (0, 2, 1) => ctx.one(),         // y²z
                (3, 0, 0) => minus_one.clone(), // -x³
                (1, 0, 2) => ctx.neg(&a),       // -a·xz²
                (0, 0, 3) => ctx.neg(&b),       // -b·z³
                _ => ctx.zero(),
            };
        }
        let zero = [ctx.zero(), ctx.one(), ctx.zero()];
        PlaneCubic::new(ctx, coeffs, zero)
    }

    pub fn ctx(&self) -> &C {
        &self.ctx
    }

    pub fn zero_point(&self) -> &CubicPoint<C::Elem> {
        &self.zero
    }

    pub fn contains(&self, p: &CubicPoint<C::Elem>) -> bool {
        self.ctx.is_zero(&poly_eval(&self.ctx, &self.f, &p.coords))
    }

    pub fn point(&self, coords: [C::Elem; 3]) -> Result<CubicPoint<C::Elem>> {
        let p = normalize(&self.ctx, coords)?;
        if !self.contains(&p) {
            return Err(Error::PointNotOnHypersurface);
        }
        Ok(p)
    }

    fn gradient(&self, at: &[C::Elem; 3]) -> [C::Elem; 3] {
        [
            poly_eval(&self.ctx, &poly_partial(&self.ctx, &self.f, 0), at),
            poly_eval(&self.ctx, &poly_partial(&self.ctx, &self.f, 1), at),
            poly_eval(&self.ctx, &poly_partial(&self.ctx, &self.f, 2), at),
        ]
    }

    /// A point on the tangent hyperplane `λ·v = 0` independent of `base`.
    fn tangent_companion(
        &self,
        lambda: &[C::Elem; 3],
        base: &[C::Elem; 3],
    ) -> Result<[C::Elem; 3]> {
        let ctx = &self.ctx;
        let m = lambda
            .iter()
            .position(|c| !ctx.is_zero(c))
            .ok_or_else(|| Error::SingularCubic("vanishing gradient".into()))?;
        let minv = ctx.inv(&lambda[m]).unwrap();
        for i in 0..3 {
            if i == m {
                continue;
            }
            let mut v = [ctx.zero(), ctx.zero(), ctx.zero()];
            v[i] = ctx.one();
            v[m] = ctx.neg(&ctx.mul(&lambda[i], &minv));
            // Reject v proportional to base: all 2x2 minors vanish.
            let cross = [
                ctx.sub(&ctx.mul(&base[1], &v[2]), &ctx.mul(&base[2], &v[1])),
                ctx.sub(&ctx.mul(&base[2], &v[0]), &ctx.mul(&base[0], &v[2])),
                ctx.sub(&ctx.mul(&base[0], &v[1]), &ctx.mul(&base[1], &v[0])),
            ];
            if cross.iter().any(|c| !ctx.is_zero(c)) {
                return Ok(v);
            }
        }
        Err(Error::Degenerate("tangent line collapsed".into()))
    }

    fn combine(
        &self,
        s: &C::Elem,
        a: &[C::Elem; 3],
        u: &C::Elem,
        b: &[C::Elem; 3],
    ) -> [C::Elem; 3] {
        let ctx = &self.ctx;
        [
            ctx.add(&ctx.mul(s, &a[0]), &ctx.mul(u, &b[0])),
            ctx.add(&ctx.mul(s, &a[1]), &ctx.mul(u, &b[1])),
            ctx.add(&ctx.mul(s, &a[2]), &ctx.mul(u, &b[2])),
        ]
    }

    /// Coefficients `(c21, c12, c03)` of `f(s·a + u·b)` given `f(a) = 0`,
    /// recovered from four evaluations (char ≠ 2).
    fn restrict_to_line(&self, a: &[C::Elem; 3], b: &[C::Elem; 3]) -> (C::Elem, C::Elem, C::Elem) {
        let ctx = &self.ctx;
        let c03 = poly_eval(ctx, &self.f, b);
        let one = ctx.one();
        let minus_one = ctx.neg(&one);
        let s = poly_eval(ctx, &self.f, &self.combine(&one, a, &one, b));
        let d = poly_eval(ctx, &self.f, &self.combine(&one, a, &minus_one, b));
        let half = ctx.inv(&ctx.from_i64(2)).expect("char != 2");
        // s = c21 + c12 + c03, d = -c21 + c12 - c03.
        let c12 = ctx.mul(&half, &ctx.add(&s, &d));
        let c21 = ctx.sub(&ctx.mul(&half, &ctx.sub(&s, &d)), &c03);
        (c21, c12, c03)
    }

    /// The third point of the curve on the line through `a` and `b`
    /// (tangent line when `a = b`), with multiplicity.
    pub fn third_intersection(
        &self,
        a: &CubicPoint<C::Elem>,
        b: &CubicPoint<C::Elem>,
    ) -> Result<CubicPoint<C::Elem>> {
        if !self.contains(a) || !self.contains(b) {
            return Err(Error::PointNotOnHypersurface);
        }
        let ctx = &self.ctx;
        if a == b {
            let lambda = self.gradient(&a.coords);
            let r = self.tangent_companion(&lambda, &a.coords)?;
            let (_c21, c12, c03) = self.restrict_to_line(&a.coords, &r);
            // f restricted is u²(c12·s + c03·u); the residual root is
            // (s : u) = (c03 : -c12).
            let mc12 = ctx.neg(&c12);
            return normalize(ctx, self.combine(&c03, &a.coords, &mc12, &r));
        }
        let (c21, c12, _c03) = self.restrict_to_line(&a.coords, &b.coords);
        // f restricted is s·u·(c21·s + c12·u); residual root (c12 : -c21).
        if ctx.is_zero(&c21) && ctx.is_zero(&c12) {
            return Err(Error::SingularCubic("line contained in the cubic".into()));
        }
        let mc21 = ctx.neg(&c21);
        normalize(ctx, self.combine(&c12, &a.coords, &mc21, &b.coords))
    }

    pub fn neg_point(&self, a: &CubicPoint<C::Elem>) -> Result<CubicPoint<C::Elem>> {
        self.third_intersection(&self.zero.clone(), a)
    }

    pub fn add_points(
        &self,
        a: &CubicPoint<C::Elem>,
        b: &CubicPoint<C::Elem>,
    ) -> Result<CubicPoint<C::Elem>> {
        let t = self.third_intersection(a, b)?;
        self.neg_point(&t)
    }

    /// `R_p(x) = 2p − x`.
    pub fn reflection(
        &self,
        p: &CubicPoint<C::Elem>,
        x: &CubicPoint<C::Elem>,
    ) -> Result<CubicPoint<C::Elem>> {
        let twice = self.add_points(p, p)?;
        let mx = self.neg_point(x)?;
        self.add_points(&twice, &mx)
    }

    /// `τ_p(x) = −(p + x)`, the Galois involution of the projection from
    /// `p`; equals `third_intersection(p, x)`.
    pub fn galois(
        &self,
        p: &CubicPoint<C::Elem>,
        x: &CubicPoint<C::Elem>,
    ) -> Result<CubicPoint<C::Elem>> {
        let s = self.add_points(p, x)?;
        self.neg_point(&s)
    }

    pub fn scalar_mul(&self, k: i64, p: &CubicPoint<C::Elem>) -> Result<CubicPoint<C::Elem>> {
        if k < 0 {
            let m = self.scalar_mul(-k, p)?;
            return self.neg_point(&m);
        }
        let mut acc = self.zero.clone();
        let mut base = p.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_points(&acc, &base)?;
            }
            k >>= 1;
            if k > 0 {
                base = self.add_points(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Moves the zero to `(0:1:0)` with tangent `z = 0`, scales to a
    /// Weierstrass form, and requires its discriminant to be nonzero.
    fn certify_smooth_with_inflection(&self) -> Result<()> {
        let ctx = &self.ctx;
        let lambda = self.gradient(&self.zero.coords);
        if lambda.iter().all(|c| ctx.is_zero(c)) {
            return Err(Error::SingularCubic(
                "the designated zero point is singular".into(),
            ));
        }
        let r = self.tangent_companion(&lambda, &self.zero.coords)?;
        let (c21, c12, c03) = self.restrict_to_line(&self.zero.coords, &r);
        debug_assert!(
            ctx.is_zero(&c21),
            "tangency forces the s²u coefficient to vanish"
        );
        if !ctx.is_zero(&c12) {
            return Err(Error::Degenerate(
                "the designated zero point is not an inflection point".into(),
            ));
        }
        if ctx.is_zero(&c03) {
            return Err(Error::SingularCubic(
                "tangent line lies on the cubic".into(),
            ));
        }
        // New coordinates (X, Y, Z) with old = X·r + Y·zero + Z·w.
        let m_col = lambda.iter().position(|c| !ctx.is_zero(c)).unwrap();
        let mut w = [ctx.zero(), ctx.zero(), ctx.zero()];
        w[m_col] = ctx.one();
        let o = &self.zero.coords;
        let m = [
            [r[0].clone(), o[0].clone(), w[0].clone()],
            [r[1].clone(), o[1].clone(), w[1].clone()],
            [r[2].clone(), o[2].clone(), w[2].clone()],
        ];
        let g = poly_substitute(ctx, &self.f, &m);
        debug_assert!(ctx.is_zero(g.coeff((0, 3, 0))));
        debug_assert!(ctx.is_zero(g.coeff((1, 2, 0))));
        debug_assert!(ctx.is_zero(g.coeff((2, 1, 0))));
        let e = g.coeff((0, 2, 1)).clone();
        debug_assert!(
            !ctx.is_zero(&e),
            "zero point smooth, so the y²z coefficient is nonzero"
        );
        let einv = ctx.inv(&e).unwrap();
        let cprime = ctx.neg(&ctx.mul(&einv, g.coeff((3, 0, 0))));
        debug_assert!(!ctx.is_zero(&cprime));
        let alpha1 = ctx.mul(&einv, g.coeff((1, 1, 1)));
        let alpha3 = ctx.mul(&einv, g.coeff((0, 1, 2)));
        let alpha2 = ctx.neg(&ctx.mul(&einv, g.coeff((2, 0, 1))));
        let alpha4 = ctx.neg(&ctx.mul(&einv, g.coeff((1, 0, 2))));
        let alpha6 = ctx.neg(&ctx.mul(&einv, g.coeff((0, 0, 3))));
        // Monic rescaling X ↦ X/c', Y ↦ Y/c'.
        let a1 = alpha1;
        let a2 = alpha2;
        let a3 = ctx.mul(&alpha3, &cprime);
        let a4 = ctx.mul(&alpha4, &cprime);
        let a6 = ctx.mul(&alpha6, &ctx.mul(&cprime, &cprime));
        let four = ctx.from_i64(4);
        let b2 = ctx.add(&ctx.mul(&a1, &a1), &ctx.mul(&four, &a2));
        let b4 = ctx.add(&ctx.mul(&ctx.from_i64(2), &a4), &ctx.mul(&a1, &a3));
        let b6 = ctx.add(&ctx.mul(&a3, &a3), &ctx.mul(&four, &a6));
        // b8 = a1²a6 + 4a2a6 − a1a3a4 + a2a3² − a4²
        let b8 = {
            let t1 = ctx.mul(&ctx.mul(&a1, &a1), &a6);
            let t2 = ctx.mul(&four, &ctx.mul(&a2, &a6));
            let t3 = ctx.mul(&a1, &ctx.mul(&a3, &a4));
            let t4 = ctx.mul(&a2, &ctx.mul(&a3, &a3));
            let t5 = ctx.mul(&a4, &a4);
            ctx.sub(&ctx.add(&ctx.sub(&ctx.add(&t1, &t2), &t3), &t4), &t5)
        };
        // Δ = −b2²b8 − 8b4³ − 27b6² + 9b2b4b6
        let delta = {
            let t1 = ctx.neg(&ctx.mul(&ctx.mul(&b2, &b2), &b8));
            let t2 = ctx.mul(&ctx.from_i64(-8), &ctx.mul(&ctx.mul(&b4, &b4), &b4));
            let t3 = ctx.mul(&ctx.from_i64(-27), &ctx.mul(&b6, &b6));
            let t4 = ctx.mul(&ctx.from_i64(9), &ctx.mul(&b2, &ctx.mul(&b4, &b6)));
            ctx.add(&ctx.add(&ctx.add(&t1, &t2), &t3), &t4)
        };
        if ctx.is_zero(&delta) {
            return Err(Error::SingularCubic("discriminant vanishes".into()));
        }
        Ok(())
    }
}
