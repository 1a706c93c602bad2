//! Group actions on the Siegel–Jacobi upper half-plane, its 5-dimensional
//! extension and the group itself, together with the fundamental vector
//! fields of those actions: closed forms, numeric flow derivatives, and the
//! bracket (anti-)homomorphism audit.

use crate::algebra::{generator_matrix, AlgebraElement, Generator, StructureConstants, GENERATORS};
use crate::charts::Chart;
use crate::error::{Error, Result};
use crate::group::{GroupElement, RawElement};
use crate::numerics::{expm4, Complex, Dual, Scalar, D1};

pub const MOBIUS_GUARD: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Space {
    /// 4-dimensional (x, y, p, q); the reduced group acts, κ is ignored.
    Xj1,
    /// 5-dimensional (x, y, p, q, κ).
    Xj1Ext,
    /// The group itself in S-coordinates (x, y, θ, p, q, κ).
    Group,
}

impl Space {
    pub fn dim(&self) -> usize {
        match self {
            Space::Xj1 => 4,
            Space::Xj1Ext => 5,
            Space::Group => 6,
        }
    }

    pub fn chart(&self) -> Chart {
        match self {
            Space::Xj1 => Chart::Xypq,
            Space::Xj1Ext => Chart::XypqK,
            Space::Group => Chart::GroupS,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Space::Xj1 => "xj1",
            Space::Xj1Ext => "xj1ext",
            Space::Group => "group",
        }
    }

    pub fn parse(s: &str) -> Result<Space> {
        Ok(match s {
            "xj1" => Space::Xj1,
            "xj1ext" => Space::Xj1Ext,
            "group" => Space::Group,
            other => return Err(Error::Unsupported(format!("space {other}"))),
        })
    }
}

/// Left action in coordinates, generic over the scalar so it can be
/// differentiated with duals (both in the point and in the group element).
pub fn act_coords<S: Scalar>(space: Space, g: &RawElement<S>, pt: &[S]) -> Result<Vec<S>> {
    match space {
        Space::Xj1 => {
            let out = act_xj1(g, pt[0], pt[1], pt[2], pt[3])?;
            Ok(out.to_vec())
        }
        Space::Xj1Ext => {
            let [x1, y1, p1, q1] = act_xj1(g, pt[0], pt[1], pt[2], pt[3])?;
            // κ₁ = κ + κ′ + λ q′ − μ p′ with (λ, μ) of the acting element
            let k1 = g.kappa + pt[4] + g.lambda * pt[3] - g.mu * pt[2];
            Ok(vec![x1, y1, p1, q1, k1])
        }
        Space::Group => {
            let elem = RawElement::from_s_coords(&[pt[0], pt[1], pt[2], pt[3], pt[4], pt[5]]);
            let composed = g.compose(&elem);
            Ok(composed.s_coords().to_vec())
        }
    }
}

/// τ₁ = (aτ+b)/(cτ+d) and (p₁,q₁) = (p,q)_g + (p′,q′)M⁻¹.
fn act_xj1<S: Scalar>(g: &RawElement<S>, x: S, y: S, p: S, q: S) -> Result<[S; 4]> {
    let [[a, b], [c, d]] = g.m.m;
    let tau = Complex::new(x, y);
    let denom = tau.scale(c) + Complex::real(d);
    if denom.norm_sqr().value() < MOBIUS_GUARD * MOBIUS_GUARD {
        return Err(Error::DomainViolation("cτ + d vanished".into()));
    }
    let tau1 = (tau.scale(a) + Complex::real(b)) / denom;
    let [pg, qg] = g.pq();
    let p1 = pg + d * p - c * q;
    let q1 = qg - b * p + a * q;
    Ok([tau1.re, tau1.im, p1, q1])
}

/// Action on tagged f64 coordinates.
pub fn act(space: Space, g: &GroupElement, pt: &[f64]) -> Result<Vec<f64>> {
    assert_eq!(pt.len(), space.dim());
    act_coords(space, &RawElement::lift(g), pt)
}

// ---------------------------------------------------------------------------
// Fundamental vector fields
// ---------------------------------------------------------------------------

/// The published self-action fields versus the fields obtained from the flow
/// definition. The two differ only in the ∂p slot of G* on the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FvfVariant {
    Printed,
    Definitional,
}

/// Closed-form vector field on a chart: a linear combination of the
/// generators' fundamental fields.
#[derive(Clone, Debug)]
pub struct VectorFieldExpr {
    pub space: Space,
    pub chart: Chart,
    pub variant: FvfVariant,
    pub terms: Vec<(f64, Generator)>,
}

fn supported(space: Space, chart: Chart) -> bool {
    matches!(
        (space, chart),
        (Space::Xj1, Chart::Xypq)
            | (Space::Xj1, Chart::Xyxr)
            | (Space::Xj1Ext, Chart::XypqK)
            | (Space::Xj1Ext, Chart::XyxrK)
            | (Space::Group, Chart::GroupS)
    )
}

/// The fundamental vector field of one generator, as printed (or, for the
/// self-action G*, optionally the definitional variant).
pub fn fvf_closed_form(
    space: Space,
    chart: Chart,
    gen: Generator,
    variant: FvfVariant,
) -> Result<VectorFieldExpr> {
    if !supported(space, chart) {
        return Err(Error::Unsupported(format!(
            "no fundamental fields for space {} in chart {}",
            space.name(),
            chart.name()
        )));
    }
    Ok(VectorFieldExpr { space, chart, variant, terms: vec![(1.0, gen)] })
}

/// Fundamental field of an arbitrary algebra element (linearity of X ↦ X*).
pub fn fvf_of_element(
    space: Space,
    chart: Chart,
    x: &AlgebraElement,
    variant: FvfVariant,
) -> Result<VectorFieldExpr> {
    if !supported(space, chart) {
        return Err(Error::Unsupported(format!(
            "no fundamental fields for space {} in chart {}",
            space.name(),
            chart.name()
        )));
    }
    let terms = GENERATORS
        .iter()
        .zip(x.coeffs)
        .filter(|(_, c)| *c != 0.0)
        .map(|(g, c)| (c, *g))
        .collect();
    Ok(VectorFieldExpr { space, chart, variant, terms })
}

impl VectorFieldExpr {
    pub fn eval<S: Scalar>(&self, pt: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.chart.dim()];
        for (c, gen) in &self.terms {
            let comp = generator_components(self.space, self.chart, *gen, self.variant, pt);
            for (o, v) in out.iter_mut().zip(comp) {
                *o = *o + v * S::from_f64(*c);
            }
        }
        out
    }
}

/// F*₁ = ∂x, G*₁ = (y²−x²)∂x − 2xy∂y, H*₁ = 2(x∂x + y∂y) — the SL(2) fields on
/// the upper half-plane — extended per chart by the published formulas.
fn generator_components<S: Scalar>(
    space: Space,
    chart: Chart,
    gen: Generator,
    variant: FvfVariant,
    pt: &[S],
) -> Vec<S> {
    let zero = S::zero();
    let one = S::one();
    let two = S::from_f64(2.0);
    match (space, chart) {
        (Space::Xj1, Chart::Xypq) => {
            let [x, y, p, q] = [pt[0], pt[1], pt[2], pt[3]];
            match gen {
                Generator::F => vec![one, zero, zero, -p],
                Generator::G => vec![y * y - x * x, -two * x * y, -q, zero],
                Generator::H => vec![two * x, two * y, -p, q],
                Generator::P => vec![zero, zero, one, zero],
                Generator::Q => vec![zero, zero, zero, one],
                Generator::R => vec![zero; 4],
            }
        }
        (Space::Xj1, Chart::Xyxr) => {
            let [x, y, xi, rho] = [pt[0], pt[1], pt[2], pt[3]];
            match gen {
                Generator::F => vec![one, zero, zero, zero],
                Generator::G => vec![
                    y * y - x * x,
                    -two * x * y,
                    rho * y - xi * x,
                    -(xi * y + x * rho),
                ],
                Generator::H => vec![two * x, two * y, xi, rho],
                Generator::P => vec![zero, zero, x, y],
                Generator::Q => vec![zero, zero, one, zero],
                Generator::R => vec![zero; 4],
            }
        }
        (Space::Xj1Ext, Chart::XypqK) => {
            let [x, y, p, q] = [pt[0], pt[1], pt[2], pt[3]];
            match gen {
                Generator::F => vec![one, zero, zero, -p, zero],
                Generator::G => vec![y * y - x * x, -two * x * y, -q, zero, zero],
                Generator::H => vec![two * x, two * y, -p, q, zero],
                Generator::P => vec![zero, zero, one, zero, q],
                Generator::Q => vec![zero, zero, zero, one, -p],
                Generator::R => vec![zero, zero, zero, zero, one],
            }
        }
        (Space::Xj1Ext, Chart::XyxrK) => {
            let [x, y, xi, rho] = [pt[0], pt[1], pt[2], pt[3]];
            let p = rho / y;
            let q = xi - x * p;
            match gen {
                Generator::F => vec![one, zero, zero, zero, zero],
                Generator::G => vec![
                    y * y - x * x,
                    -two * x * y,
                    rho * y - xi * x,
                    -(xi * y + x * rho),
                    zero,
                ],
                Generator::H => vec![two * x, two * y, xi, rho, zero],
                Generator::P => vec![zero, zero, x, y, q],
                Generator::Q => vec![zero, zero, one, zero, -p],
                Generator::R => vec![zero, zero, zero, zero, one],
            }
        }
        (Space::Group, Chart::GroupS) => {
            let [x, y, p, q] = [pt[0], pt[1], pt[3], pt[4]];
            match gen {
                Generator::F => vec![one, zero, zero, zero, -p, zero],
                Generator::G => {
                    let mut v = vec![y * y - x * x, -two * x * y, -y, zero, zero, zero];
                    if variant == FvfVariant::Definitional {
                        // the flow of exp(tG) also drifts p: ṗ = −q
                        v[3] = -q;
                    }
                    v
                }
                Generator::H => vec![two * x, two * y, zero, -p, q, zero],
                Generator::P => vec![zero, zero, zero, one, zero, q],
                Generator::Q => vec![zero, zero, zero, zero, one, -p],
                Generator::R => vec![zero, zero, zero, zero, zero, one],
            }
        }
        _ => unreachable!("constructors reject unsupported combinations"),
    }
}

/// Holomorphic form of the 4-dimensional fields in (τ, z): coefficients of
/// (∂τ, ∂z). Their real/imaginary parts are the (x,y,ξ,ρ) fields.
pub fn fvf_holomorphic(
    gen: Generator,
    v: crate::numerics::C64,
    u: crate::numerics::C64,
) -> (crate::numerics::C64, crate::numerics::C64) {
    use crate::numerics::C64;
    let zero = C64::zero();
    match gen {
        Generator::F => (C64::one(), zero),
        Generator::G => (-(v * v), -(u * v)),
        Generator::H => (v.scale(2.0), u),
        Generator::P => (zero, v),
        Generator::Q => (zero, C64::one()),
        Generator::R => (zero, zero),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlowDiff {
    DualNumber,
    CentralDifference,
}

/// Flow-definition fundamental field: d/dt (exp(tX)·pt) at t = 0.
pub fn fvf_numeric(
    space: Space,
    gen: Generator,
    pt: &[f64],
    mode: FlowDiff,
) -> Result<Vec<f64>> {
    let xmat = generator_matrix(gen);
    match mode {
        FlowDiff::DualNumber => {
            let t = D1::variable(0.0, 0);
            let mut lifted = crate::numerics::Mat4::<D1>::zeros();
            for i in 0..4 {
                for j in 0..4 {
                    lifted.m[i][j] = Dual::constant(xmat.m[i][j]) * t;
                }
            }
            let e = expm4(&lifted);
            let g = RawElement::from_embed(&e);
            let args: Vec<D1> = pt.iter().map(|&v| D1::constant(v)).collect();
            let out = act_coords(space, &g, &args)?;
            Ok(out.into_iter().map(|v| v.d[0]).collect())
        }
        FlowDiff::CentralDifference => {
            let h = 1e-6;
            let at = |t: f64| -> Result<Vec<f64>> {
                let e = expm4(&xmat.scale(t));
                let g = RawElement::<f64>::from_embed(&e);
                act_coords(space, &g, pt)
            };
            let plus = at(h)?;
            let minus = at(-h)?;
            Ok(plus
                .iter()
                .zip(minus)
                .map(|(p, m)| (p - m) / (2.0 * h))
                .collect())
        }
    }
}

/// Lie bracket of two fields at a point, by dual-number differentiation of
/// their coefficient functions: [X,Y]ᵏ = Xʲ∂ⱼYᵏ − Yʲ∂ⱼXᵏ.
pub fn field_bracket_at(
    xf: &VectorFieldExpr,
    yf: &VectorFieldExpr,
    pt: &[f64],
) -> Vec<f64> {
    assert_eq!(xf.chart, yf.chart);
    let n = pt.len();
    let x0 = xf.eval(pt);
    let y0 = yf.eval(pt);
    let mut out = vec![0.0; n];
    for j in 0..n {
        let args: Vec<D1> = pt
            .iter()
            .enumerate()
            .map(|(k, &v)| if k == j { D1::variable(v, 0) } else { D1::constant(v) })
            .collect();
        let dy = yf.eval(&args);
        let dx = xf.eval(&args);
        for k in 0..n {
            out[k] += x0[j] * dy[k].d[0] - y0[j] * dx[k].d[0];
        }
    }
    out
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct BracketAuditReport {
    pub space: Space,
    pub variant: FvfVariant,
    /// +1 if [X*,Y*] = +[X,Y]*, −1 for the anti-homomorphism convention.
    pub sign: i8,
    pub max_residual: f64,
    /// Pairs exceeding the tolerance under the best sign.
    pub outliers: Vec<(Generator, Generator, f64)>,
}

/// Checks [Xᵢ*, Xⱼ*] = ±[Xᵢ, Xⱼ]* over sample points and reports the
/// consistent global sign (left actions give the − sign).
pub fn fvf_bracket_audit(
    space: Space,
    variant: FvfVariant,
    points: &[Vec<f64>],
    tol: f64,
) -> Result<BracketAuditReport> {
    let chart = space.chart();
    let sc = StructureConstants::generators();
    let mut err_plus: f64 = 0.0;
    let mut err_minus: f64 = 0.0;
    let mut per_pair = Vec::new();
    for i in 0..6 {
        for j in (i + 1)..6 {
            let xi = fvf_closed_form(space, chart, GENERATORS[i], variant)?;
            let xj = fvf_closed_form(space, chart, GENERATORS[j], variant)?;
            // [Xi, Xj] in the algebra, as a fundamental field
            let mut bc = [0.0; 6];
            for (k, b) in bc.iter_mut().enumerate() {
                *b = sc.get(i, j, k);
            }
            let bracket_field = fvf_of_element(
                space,
                chart,
                &AlgebraElement::from_coeffs(bc),
                variant,
            )?;
            let mut pair_plus: f64 = 0.0;
            let mut pair_minus: f64 = 0.0;
            for pt in points {
                let lhs = field_bracket_at(&xi, &xj, pt);
                let rhs = bracket_field.eval(pt);
                for (l, r) in lhs.iter().zip(&rhs) {
                    pair_plus = pair_plus.max((l - r).abs());
                    pair_minus = pair_minus.max((l + r).abs());
                }
            }
            err_plus = err_plus.max(pair_plus);
            err_minus = err_minus.max(pair_minus);
            per_pair.push((GENERATORS[i], GENERATORS[j], pair_plus, pair_minus));
        }
    }
    let sign: i8 = if err_minus <= err_plus { -1 } else { 1 };
    let max_residual = err_plus.min(err_minus);
    let outliers = per_pair
        .into_iter()
        .filter_map(|(a, b, ep, em)| {
            let e = if sign == 1 { ep } else { em };
            (e > tol).then_some((a, b, e))
        })
        .collect();
    Ok(BracketAuditReport { space, variant, sign, max_residual, outliers })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{compose, ez_to_s};
    use crate::sample::{
        random_group_element, random_reduced_element, random_s_coords, random_xypq,
        random_xypqk, rng_from_seed,
    };
    use approx::assert_relative_eq;

    #[test]
    fn identity_acts_trivially_on_all_spaces() {
        let mut rng = rng_from_seed(31);
        let e = GroupElement::identity();
        let p4 = random_xypq(&mut rng);
        assert_eq!(act(Space::Xj1, &e, &p4).unwrap(), p4.to_vec());
        let p5 = random_xypqk(&mut rng);
        assert_eq!(act(Space::Xj1Ext, &e, &p5).unwrap(), p5.to_vec());
        let p6 = random_s_coords(&mut rng);
        let moved = act(Space::Group, &e, &p6).unwrap();
        for (a, b) in moved.iter().zip(p6) {
            assert_relative_eq!(*a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn action_is_a_homomorphism() {
        let mut rng = rng_from_seed(32);
        for _ in 0..200 {
            let g = random_group_element(&mut rng);
            let h = random_group_element(&mut rng);
            let gh = compose(&g, &h);

            let p4 = random_xypq(&mut rng);
            let lhs = act(Space::Xj1, &g, &act(Space::Xj1, &h, &p4).unwrap()).unwrap();
            let rhs = act(Space::Xj1, &gh, &p4).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                assert_relative_eq!(*a, *b, epsilon = 1e-11);
            }

            let p5 = random_xypqk(&mut rng);
            let lhs = act(Space::Xj1Ext, &g, &act(Space::Xj1Ext, &h, &p5).unwrap()).unwrap();
            let rhs = act(Space::Xj1Ext, &gh, &p5).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                assert_relative_eq!(*a, *b, epsilon = 1e-11);
            }

            let p6 = random_s_coords(&mut rng);
            let lhs = act(Space::Group, &g, &act(Space::Group, &h, &p6).unwrap()).unwrap();
            let rhs = act(Space::Group, &gh, &p6).unwrap();
            for (a, b) in lhs.iter().zip(&rhs) {
                assert_relative_eq!(*a, *b, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn pq_action_formula() {
        // (p₁,q₁) = (p + dp′ − cq′, q − bp′ + aq′)
        let mut rng = rng_from_seed(33);
        for _ in 0..100 {
            let g = random_reduced_element(&mut rng);
            let pt = random_xypq(&mut rng);
            let out = act(Space::Xj1, &g, &pt).unwrap();
            let (pg, qg) = g.pq();
            let m = g.m;
            assert_relative_eq!(out[2], pg + m.d * pt[2] - m.c * pt[3], epsilon = 1e-12);
            assert_relative_eq!(out[3], qg - m.b * pt[2] + m.a * pt[3], epsilon = 1e-12);
        }
    }

    #[test]
    fn group_action_is_composition_in_s_coordinates() {
        let mut rng = rng_from_seed(34);
        for _ in 0..50 {
            let g = random_group_element(&mut rng);
            let h = random_group_element(&mut rng);
            let s = ez_to_s(&h);
            let acted = act(Space::Group, &g, &[s.x, s.y, s.theta, s.p, s.q, s.kappa]).unwrap();
            let want = ez_to_s(&compose(&g, &h));
            for (a, b) in acted.iter().zip([want.x, want.y, want.theta, want.p, want.q, want.kappa])
            {
                assert_relative_eq!(*a, b, epsilon = 1e-11);
            }
        }
    }

    #[test]
    fn numeric_fvf_matches_closed_forms() {
        let mut rng = rng_from_seed(35);
        for _ in 0..200 {
            for (space, pt) in [
                (Space::Xj1, random_xypq(&mut rng).to_vec()),
                (Space::Xj1Ext, random_xypqk(&mut rng).to_vec()),
                (Space::Group, random_s_coords(&mut rng).to_vec()),
            ] {
                for gen in GENERATORS {
                    let closed =
                        fvf_closed_form(space, space.chart(), gen, FvfVariant::Definitional)
                            .unwrap()
                            .eval(&pt);
                    let dual = fvf_numeric(space, gen, &pt, FlowDiff::DualNumber).unwrap();
                    let fd = fvf_numeric(space, gen, &pt, FlowDiff::CentralDifference).unwrap();
                    for k in 0..pt.len() {
                        assert!(
                            (closed[k] - dual[k]).abs() <= 1e-10,
                            "{space:?} {gen:?} slot {k}: closed {} vs dual {}",
                            closed[k],
                            dual[k]
                        );
                        assert!((closed[k] - fd[k]).abs() <= 1e-6);
                    }
                }
            }
        }
    }

    #[test]
    fn printed_self_action_g_star_misses_the_p_drift() {
        // the published G* on the group omits −q∂p; the flow derivative has it
        let mut rng = rng_from_seed(36);
        for _ in 0..20 {
            let pt = random_s_coords(&mut rng);
            let numeric = fvf_numeric(Space::Group, Generator::G, &pt, FlowDiff::DualNumber)
                .unwrap();
            let printed =
                fvf_closed_form(Space::Group, Chart::GroupS, Generator::G, FvfVariant::Printed)
                    .unwrap()
                    .eval(&pt);
            let diff: Vec<f64> = numeric.iter().zip(&printed).map(|(n, p)| n - p).collect();
            // difference is exactly −q in the p slot, zero elsewhere
            assert_relative_eq!(diff[3], -pt[4], epsilon = 1e-10);
            for k in [0, 1, 2, 4, 5] {
                assert!(diff[k].abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn r_star_vanishes_on_xj1_and_h_star_at_base() {
        let pt = [0.0, 1.0, 0.0, 0.0];
        let r = fvf_numeric(Space::Xj1, Generator::R, &pt, FlowDiff::DualNumber).unwrap();
        assert!(r.iter().all(|v| v.abs() <= 1e-14));
        let h = fvf_numeric(Space::Xj1Ext, Generator::H, &[0.0, 1.0, 0.0, 0.0, 0.0],
            FlowDiff::DualNumber)
        .unwrap();
        assert_relative_eq!(h[1], 2.0, epsilon = 1e-12); // 2∂y at y = 1
        assert!(h[0].abs() <= 1e-12);
    }

    #[test]
    fn holomorphic_fields_realify_to_xyxr_components() {
        let mut rng = rng_from_seed(37);
        for _ in 0..50 {
            let c = random_xypq(&mut rng);
            let (v, u) = crate::charts::s_to_complex(c[0], c[1], c[2], c[3]);
            let pt_xr = [v.re, v.im, u.re, u.im];
            for gen in GENERATORS {
                let (ct, cz) = fvf_holomorphic(gen, v, u);
                let real = fvf_closed_form(Space::Xj1, Chart::Xyxr, gen, FvfVariant::Printed)
                    .unwrap()
                    .eval(&pt_xr);
                assert_relative_eq!(real[0], ct.re, epsilon = 1e-12);
                assert_relative_eq!(real[1], ct.im, epsilon = 1e-12);
                assert_relative_eq!(real[2], cz.re, epsilon = 1e-12);
                assert_relative_eq!(real[3], cz.im, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn pq_extraction_commutes_with_the_action() {
        // act on (x,y,p,q) then form u = pv+q, versus act on (τ,z) directly
        let mut rng = rng_from_seed(38);
        for _ in 0..100 {
            let g = random_reduced_element(&mut rng);
            let c = random_xypq(&mut rng);
            let moved = act(Space::Xj1, &g, &c).unwrap();
            let (v1, u1) = crate::charts::s_to_complex(moved[0], moved[1], moved[2], moved[3]);
            // complex route: τ₁ = (aτ+b)/(cτ+d), z₁ = (z + λτ + μ)/(cτ+d)
            let (v, u) = crate::charts::s_to_complex(c[0], c[1], c[2], c[3]);
            use crate::numerics::C64;
            let m = g.m;
            let den = v.scale(m.c) + C64::new(m.d, 0.0);
            let v2 = (v.scale(m.a) + C64::new(m.b, 0.0)) / den;
            let u2 = (u + v.scale(g.lambda) + C64::new(g.mu, 0.0)) / den;
            assert!(v1.abs_diff(v2) <= 1e-11);
            assert!(u1.abs_diff(u2) <= 1e-11);
        }
    }

    #[test]
    fn bracket_audit_finds_the_anti_homomorphism() {
        let mut rng = rng_from_seed(39);
        for space in [Space::Xj1, Space::Xj1Ext, Space::Group] {
            let points: Vec<Vec<f64>> = (0..20)
                .map(|_| match space {
                    Space::Xj1 => random_xypq(&mut rng).to_vec(),
                    Space::Xj1Ext => random_xypqk(&mut rng).to_vec(),
                    Space::Group => random_s_coords(&mut rng).to_vec(),
                })
                .collect();
            let report =
                fvf_bracket_audit(space, FvfVariant::Definitional, &points, 1e-8).unwrap();
            assert_eq!(report.sign, -1, "space {space:?}");
            assert!(report.max_residual <= 1e-8, "residual {}", report.max_residual);
            assert!(report.outliers.is_empty());
        }
    }

    #[test]
    fn printed_self_action_fails_the_audit() {
        let mut rng = rng_from_seed(40);
        let points: Vec<Vec<f64>> = (0..10).map(|_| random_s_coords(&mut rng).to_vec()).collect();
        let report = fvf_bracket_audit(Space::Group, FvfVariant::Printed, &points, 1e-8).unwrap();
        assert!(!report.outliers.is_empty());
    }

    #[test]
    fn pq_bracket_is_minus_two_kappa_direction() {
        // [P*, Q*] = −2∂κ = −[P,Q]* on the extended space
        let pt = [0.3, 1.2, -0.4, 0.8, 0.1];
        let p = fvf_closed_form(Space::Xj1Ext, Chart::XypqK, Generator::P, FvfVariant::Printed)
            .unwrap();
        let q = fvf_closed_form(Space::Xj1Ext, Chart::XypqK, Generator::Q, FvfVariant::Printed)
            .unwrap();
        let b = field_bracket_at(&p, &q, &pt);
        assert_relative_eq!(b[4], -2.0, epsilon = 1e-12);
        for k in 0..4 {
            assert!(b[k].abs() <= 1e-12);
        }
    }

    #[test]
    fn unsupported_combination_rejected() {
        assert!(fvf_closed_form(Space::Xj1, Chart::GroupS, Generator::F, FvfVariant::Printed)
            .is_err());
    }

    #[test]
    fn field_values_stay_finite_on_random_probes() {
        let mut rng = rng_from_seed(41);
        for _ in 0..1000 {
            for (space, pt) in [
                (Space::Xj1, random_xypq(&mut rng).to_vec()),
                (Space::Xj1Ext, random_xypqk(&mut rng).to_vec()),
                (Space::Group, random_s_coords(&mut rng).to_vec()),
            ] {
                for gen in GENERATORS {
                    let v = fvf_closed_form(space, space.chart(), gen, FvfVariant::Definitional)
                        .unwrap()
                        .eval(&pt);
                    assert!(v.iter().all(|x| x.is_finite()));
                }
            }
        }
    }

    #[test]
    fn field_values_serialize_as_coordinate_ordered_arrays() {
        let pt = [0.3, 1.2, -0.4, 0.8, 0.1];
        let field =
            fvf_closed_form(Space::Xj1Ext, Chart::XypqK, Generator::P, FvfVariant::Printed)
                .unwrap();
        let json = serde_json::json!(field.eval(&pt));
        assert_eq!(json, serde_json::json!([0.0, 0.0, 1.0, 0.0, 0.8]));
    }
}
