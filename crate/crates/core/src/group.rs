//! The real Jacobi group SL(2,ℝ) ⋉ H₁: elements (M, λ, μ, κ), their 4×4
//! symplectic embedding, composition/inverse, the Iwasawa decomposition of the
//! SL(2) part and the S-coordinates (x, y, θ, p, q, κ).

use crate::error::{Error, Result};
use crate::numerics::{expm4, symplectic_defect, Mat2, Mat4, Scalar};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub const DET_TOL: f64 = 1e-12;

/// An SL(2,ℝ) matrix [[a,b],[c,d]]; construction fails unless |ad−bc−1| ≤ 1e-12.
/// No silent renormalization: a bad determinant is a caller bug.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Sl2Json", into = "Sl2Json")]
pub struct Sl2Element {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

#[derive(Serialize, Deserialize)]
struct Sl2Json {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
}

impl From<Sl2Element> for Sl2Json {
    fn from(m: Sl2Element) -> Self {
        Sl2Json { a: m.a, b: m.b, c: m.c, d: m.d }
    }
}

impl TryFrom<Sl2Json> for Sl2Element {
    type Error = Error;
    fn try_from(j: Sl2Json) -> Result<Self> {
        Sl2Element::new(j.a, j.b, j.c, j.d)
    }
}

impl Sl2Element {
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let defect = (a * d - b * c - 1.0).abs();
        if !defect.is_finite() || defect > DET_TOL {
            return Err(Error::NotUnimodular { defect });
        }
        Ok(Sl2Element { a, b, c, d })
    }

    pub fn identity() -> Self {
        Sl2Element { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn mat(&self) -> Mat2<f64> {
        Mat2::new(self.a, self.b, self.c, self.d)
    }

    pub fn inverse(&self) -> Sl2Element {
        Sl2Element { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }
}

/// Iwasawa data of an SL(2,ℝ) element: M = N(x) A(y) K(θ) with y > 0 and
/// θ normalized to (−π, π].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IwasawaCoords {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
}

/// Group element (M, λ, μ, κ).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GroupElementJson", into = "GroupElementJson")]
pub struct GroupElement {
    pub m: Sl2Element,
    pub lambda: f64,
    pub mu: f64,
    pub kappa: f64,
}

/// Flat JSON form {a,b,c,d,lambda,mu,kappa}.
#[derive(Serialize, Deserialize)]
struct GroupElementJson {
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    lambda: f64,
    mu: f64,
    kappa: f64,
}

impl From<GroupElement> for GroupElementJson {
    fn from(g: GroupElement) -> Self {
        GroupElementJson {
            a: g.m.a,
            b: g.m.b,
            c: g.m.c,
            d: g.m.d,
            lambda: g.lambda,
            mu: g.mu,
            kappa: g.kappa,
        }
    }
}

impl TryFrom<GroupElementJson> for GroupElement {
    type Error = Error;
    fn try_from(j: GroupElementJson) -> Result<Self> {
        Ok(GroupElement {
            m: Sl2Element::new(j.a, j.b, j.c, j.d)?,
            lambda: j.lambda,
            mu: j.mu,
            kappa: j.kappa,
        })
    }
}

/// S-coordinates (x, y, θ, p, q, κ) with y > 0.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SCoords {
    pub x: f64,
    pub y: f64,
    pub theta: f64,
    pub p: f64,
    pub q: f64,
    pub kappa: f64,
}

// ---------------------------------------------------------------------------
// Generic internals: the same formulas evaluated over any scalar, so group
// operations can be differentiated with dual numbers.
// ---------------------------------------------------------------------------

/// Unvalidated element over a generic scalar.
#[derive(Clone, Copy, Debug)]
pub struct RawElement<S> {
    pub m: Mat2<S>,
    pub lambda: S,
    pub mu: S,
    pub kappa: S,
}

impl<S: Scalar> RawElement<S> {
    pub fn identity() -> Self {
        RawElement {
            m: Mat2::identity(),
            lambda: S::zero(),
            mu: S::zero(),
            kappa: S::zero(),
        }
    }

    pub fn lift(g: &GroupElement) -> Self {
        RawElement {
            m: Mat2::new(
                S::from_f64(g.m.a),
                S::from_f64(g.m.b),
                S::from_f64(g.m.c),
                S::from_f64(g.m.d),
            ),
            lambda: S::from_f64(g.lambda),
            mu: S::from_f64(g.mu),
            kappa: S::from_f64(g.kappa),
        }
    }

    /// Y = (p, q) = X·M⁻¹ = (λd − μc, −λb + μa).
    pub fn pq(&self) -> [S; 2] {
        let [[a, b], [c, d]] = self.m.m;
        [self.lambda * d - self.mu * c, -self.lambda * b + self.mu * a]
    }

    /// The 4×4 symplectic embedding.
    pub fn embed(&self) -> Mat4<S> {
        let [[a, b], [c, d]] = self.m.m;
        let [p, q] = self.pq();
        let z = S::zero();
        let o = S::one();
        Mat4::from_rows([
            [a, z, b, q],
            [self.lambda, o, self.mu, self.kappa],
            [c, z, d, -p],
            [z, z, z, o],
        ])
    }

    /// Reads an element off a matrix with the embedding's sparsity pattern.
    pub fn from_embed(m: &Mat4<S>) -> Self {
        RawElement {
            m: Mat2::new(m.m[0][0], m.m[0][2], m.m[2][0], m.m[2][2]),
            lambda: m.m[1][0],
            mu: m.m[1][2],
            kappa: m.m[1][3],
        }
    }

    /// Composition law: M₁ = M M′, X₁ = X M′ + X′, κ₁ = κ + κ′ + λq′ − μp′.
    pub fn compose(&self, other: &Self) -> Self {
        let m1 = self.m.mul(&other.m);
        let xm = other.m.row_mul([self.lambda, self.mu]);
        let [p2, q2] = other.pq();
        RawElement {
            m: m1,
            lambda: xm[0] + other.lambda,
            mu: xm[1] + other.mu,
            kappa: self.kappa + other.kappa + self.lambda * q2 - self.mu * p2,
        }
    }

    /// (M, X, κ)⁻¹ = (M⁻¹, −Y, −κ).
    pub fn inverse(&self) -> Self {
        let minv = self.m.inv_unimodular();
        let [p, q] = self.pq();
        RawElement { m: minv, lambda: -p, mu: -q, kappa: -self.kappa }
    }

    /// Iwasawa data (x, y, θ) of the SL(2) part:
    /// x = (ac+bd)/(c²+d²), y = 1/(c²+d²), θ = atan2(−c, d).
    pub fn iwasawa_xyt(&self) -> [S; 3] {
        let [[a, b], [c, d]] = self.m.m;
        let den = c * c + d * d;
        let x = (a * c + b * d) / den;
        let y = S::one() / den;
        let theta = (-c).atan2(d);
        [x, y, theta]
    }

    /// Full S-coordinates (x, y, θ, p, q, κ).
    pub fn s_coords(&self) -> [S; 6] {
        let [x, y, theta] = self.iwasawa_xyt();
        let [p, q] = self.pq();
        [x, y, theta, p, q, self.kappa]
    }

    pub fn from_s_coords(s: &[S; 6]) -> Self {
        let m = sl2_from_iwasawa(s[0], s[1], s[2]);
        // (λ, μ) = (p, q) M
        let lm = m.row_mul([s[3], s[4]]);
        RawElement { m, lambda: lm[0], mu: lm[1], kappa: s[5] }
    }
}

/// N(x)A(y)K(θ) product:
/// a = √y cosθ − x sinθ/√y, b = √y sinθ + x cosθ/√y, c = −sinθ/√y, d = cosθ/√y.
pub fn sl2_from_iwasawa<S: Scalar>(x: S, y: S, theta: S) -> Mat2<S> {
    let ry = y.sqrt();
    let (s, c) = (theta.sin(), theta.cos());
    Mat2::new(ry * c - x * s / ry, ry * s + x * c / ry, -s / ry, c / ry)
}

// ---------------------------------------------------------------------------
// Public f64 API
// ---------------------------------------------------------------------------

impl GroupElement {
    pub fn new(m: Sl2Element, lambda: f64, mu: f64, kappa: f64) -> Self {
        GroupElement { m, lambda, mu, kappa }
    }

    pub fn identity() -> Self {
        GroupElement::new(Sl2Element::identity(), 0.0, 0.0, 0.0)
    }

    /// Pure Heisenberg element (λ, μ, κ).
    pub fn heisenberg(lambda: f64, mu: f64, kappa: f64) -> Self {
        GroupElement::new(Sl2Element::identity(), lambda, mu, kappa)
    }

    pub fn from_sl2(m: Sl2Element) -> Self {
        GroupElement::new(m, 0.0, 0.0, 0.0)
    }

    fn raw(&self) -> RawElement<f64> {
        RawElement::lift(self)
    }

    /// (p, q) = X M⁻¹.
    pub fn pq(&self) -> (f64, f64) {
        let [p, q] = self.raw().pq();
        (p, q)
    }

    pub fn embed(&self) -> Mat4<f64> {
        self.raw().embed()
    }

    /// ‖gᵀJg − J‖∞ for the embedded matrix.
    pub fn symplectic_defect(&self) -> f64 {
        symplectic_defect(&self.embed())
    }
}

pub fn compose(g: &GroupElement, g2: &GroupElement) -> GroupElement {
    let r = g.raw().compose(&g2.raw());
    GroupElement {
        m: Sl2Element {
            a: r.m.m[0][0],
            b: r.m.m[0][1],
            c: r.m.m[1][0],
            d: r.m.m[1][1],
        },
        lambda: r.lambda,
        mu: r.mu,
        kappa: r.kappa,
    }
}

pub fn inverse(g: &GroupElement) -> GroupElement {
    let r = g.raw().inverse();
    GroupElement {
        m: Sl2Element {
            a: r.m.m[0][0],
            b: r.m.m[0][1],
            c: r.m.m[1][0],
            d: r.m.m[1][1],
        },
        lambda: r.lambda,
        mu: r.mu,
        kappa: r.kappa,
    }
}

fn normalize_angle(theta: f64) -> f64 {
    let mut t = theta.rem_euclid(2.0 * PI); // [0, 2π)
    if t > PI {
        t -= 2.0 * PI;
    }
    t
}

pub fn iwasawa(m: &Sl2Element) -> IwasawaCoords {
    let r = RawElement {
        m: m.mat(),
        lambda: 0.0,
        mu: 0.0,
        kappa: 0.0,
    };
    let [x, y, theta] = r.iwasawa_xyt();
    IwasawaCoords { x, y, theta: normalize_angle(theta) }
}

pub fn from_iwasawa(iw: &IwasawaCoords) -> Result<Sl2Element> {
    if !(iw.y > 0.0) {
        return Err(Error::DomainViolation(format!("Iwasawa y must be > 0, got {}", iw.y)));
    }
    let m = sl2_from_iwasawa(iw.x, iw.y, iw.theta);
    Sl2Element::new(m.m[0][0], m.m[0][1], m.m[1][0], m.m[1][1])
}

pub fn ez_to_s(g: &GroupElement) -> SCoords {
    let [x, y, theta, p, q, kappa] = g.raw().s_coords();
    SCoords { x, y, theta: normalize_angle(theta), p, q, kappa }
}

pub fn s_to_ez(s: &SCoords) -> Result<GroupElement> {
    if !(s.y > 0.0) {
        return Err(Error::DomainViolation(format!("S-coordinate y must be > 0, got {}", s.y)));
    }
    let r = RawElement::from_s_coords(&[s.x, s.y, s.theta, s.p, s.q, s.kappa]);
    Ok(GroupElement {
        m: Sl2Element::new(r.m.m[0][0], r.m.m[0][1], r.m.m[1][0], r.m.m[1][1])?,
        lambda: r.lambda,
        mu: r.mu,
        kappa: r.kappa,
    })
}

/// exp of an algebra matrix, read back as a group element.
pub fn exp_matrix(x: &Mat4<f64>) -> GroupElement {
    let e = expm4(x);
    let r = RawElement::<f64>::from_embed(&e);
    GroupElement {
        m: Sl2Element {
            a: r.m.m[0][0],
            b: r.m.m[0][1],
            c: r.m.m[1][0],
            d: r.m.m[1][1],
        },
        lambda: r.lambda,
        mu: r.mu,
        kappa: r.kappa,
    }
}
